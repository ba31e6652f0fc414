// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line plumbing: JSON configs, word files, decode traces,
// seeded simulations and the two bundled worked examples.

#pragma once

#include "agkey/decoder.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace agkey::cli {

using json = nlohmann::ordered_json;
using curve::CurvePtr;
using curve::Divisor;
using gf::Element;
using gf::Field;
using linalg::Vector;

enum ExitCode : int { kOk = 0, kDecodeFailure = 2, kConfigError = 3, kInvariantViolation = 4 };

struct SimSpec {
    std::vector<int> weights;
    int trials = 100;
    std::uint64_t seed = 1;
};

struct RunConfig {
    CurvePtr curve;
    std::vector<std::size_t> D;
    Divisor G;
    std::size_t P_inf = 0;
    decoder::PlanOptions plan;
    std::size_t strassen_crossover = linalg::kDefaultStrassenCrossover;
    SimSpec sim;
};

// Throws ConfigError naming the line (syntax) or the JSON path (schema).
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

Divisor parse_divisor(const curve::PlaneCurve& c, const json& j, const std::string& where);
json divisor_json(const curve::PlaneCurve& c, const Divisor& d);

// One symbol per line, "0" or "a^k". Blank lines and '#' comments skipped.
Vector parse_vector(const Field& f, const std::string& text);
Vector read_vector(const Field& f, const std::filesystem::path& path);
std::string format_vector(const Field& f, std::span<const Element> v);
json vector_json(const Field& f, std::span<const Element> v);
Vector vector_from_json(const Field& f, const json& j);

json trace_json(const Field& f, const decoder::DecodeResult& res);
json info_json(const decoder::DecoderPlan& plan);
std::string info_line(const decoder::DecoderPlan& plan);

// splitmix64 of (seed, weight, trial); one RNG stream per trial.
std::uint64_t trial_seed(std::uint64_t seed, int weight, int trial);

struct SimCounts {
    int successes = 0;
    int failures = 0;
    int miscorrections = 0;
    double mean_ms = 0;
};

struct SimRow {
    int weight = 0;
    int trials = 0;
    SimCounts full;
    std::optional<SimCounts> ke_only;
};

struct SimReport {
    json environment;
    std::vector<SimRow> rows;
};

// Trials run in an OpenMP loop; results do not depend on the thread count.
SimReport simulate(const decoder::DecoderPlan& plan, const SimSpec& spec, bool ke_only);
json report_json(const SimReport& r, bool timing);
std::string report_table(const SimReport& r, bool timing);

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ExampleReport {
    int which = 0;
    std::vector<Check> checks;
    json trace;
    bool decoded = false;
};

// Runs the bundled worked example against data_dir/{config, golden}.
ExampleReport reproduce_example(int which, const std::filesystem::path& data_dir);
json example_json(const ExampleReport& r);

// Entry point of the agdecode tool; returns the exit code.
int run(int argc, char** argv);

} // namespace agkey::cli
