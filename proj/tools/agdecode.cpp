// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/cli.hpp"

int main(int argc, char** argv)
{
    return agkey::cli::run(argc, argv);
}
