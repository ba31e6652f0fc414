// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

// Rounds r = 0..g over the ladder G_r = G + r P_inf. Each round first tries
// two key equations, then falls back to a majority-voted coset step that
// moves the received word into the next, smaller code.

#pragma once

#include "agkey/agcode.hpp"
#include "agkey/funcspace.hpp"
#include "agkey/keyeq.hpp"
#include "agkey/mcd.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace agkey::decoder {

using agcode::CodePtr;
using curve::CurvePtr;
using curve::Divisor;
using gf::Element;
using linalg::Vector;

// Code divisor of the first key equation in round r: the base G, or G_r.
enum class BranchIDivisor { G, Gr };

struct PlanOptions {
    std::optional<Divisor> F0;     // default t P_inf
    std::optional<Divisor> G_star; // default -P_inf
    BranchIDivisor branch_i = BranchIDivisor::G;
};

struct RoundTrace {
    int r = 0;
    std::string branch; // "KE-i", "KE-ii", "vote", "fail"
    std::string ke_i, ke_ii;
    std::vector<int> I_A;
    std::vector<mcd::CosetStepReport> reports;
    std::optional<mcd::VoteResult> vote;
    std::optional<Element> lambda;
};

struct DecodeResult {
    bool decoded = false;
    Vector e;
    Vector codeword;
    int rounds = 0;
    std::vector<RoundTrace> trace;
    std::string failure;
};

class DecoderPlan {
public:
    // Throws NoExtraPoint, GenusZero, CapacityZero and the code/context
    // construction errors.
    DecoderPlan(CurvePtr c, std::vector<std::size_t> D, Divisor G, std::size_t P_inf, PlanOptions opts = {});

    const agcode::AGCode& code() const noexcept { return *code_; }
    const CodePtr& code_ptr() const noexcept { return code_; }
    const funcspace::DifferentialContext& context() const noexcept { return *ctx_; }
    int t() const noexcept { return code_->t(); }
    int genus() const noexcept { return code_->genus(); }
    std::size_t P_inf() const noexcept { return P_inf_; }
    const Divisor& F(int i) const { return F_.at(static_cast<std::size_t>(i)); }
    const mcd::CosetContext& round(int r) const { return *rounds_.at(static_cast<std::size_t>(r)); }
    mcd::CosetContext& round_mut(int r) { return *rounds_.at(static_cast<std::size_t>(r)); }
    const keyeq::KeyEquation& ke_i(int r) const;
    const keyeq::KeyEquation& ke_ii(int r) const { return *ke_ii_.at(static_cast<std::size_t>(r)); }

    DecodeResult decode(std::span<const Element> y) const;

    // Round r alone on y1: returns the word handed to round r + 1, or the
    // final result when a key equation fires or the round fails.
    struct RoundOutcome {
        RoundTrace trace;
        std::optional<Vector> e;    // set when a key equation succeeded
        std::optional<Vector> next; // set when the vote moved the word on
        std::string failure;
    };
    RoundOutcome run_round(int r, std::span<const Element> y1) const;

private:
    CurvePtr curve_;
    std::size_t P_inf_;
    CodePtr code_;
    std::unique_ptr<funcspace::DifferentialContext> ctx_;
    PlanOptions opts_;
    std::vector<Divisor> F_;
    std::vector<std::unique_ptr<mcd::CosetContext>> rounds_;
    std::vector<std::unique_ptr<keyeq::KeyEquation>> ke_i_, ke_ii_;
};

// The key equation alone, with deg F = nu + g where
// nu = floor((d* - g - 1) / 2), F supported at P_inf.
class KeyOnlyDecoder {
public:
    explicit KeyOnlyDecoder(const DecoderPlan& plan);
    DecodeResult decode(std::span<const Element> y) const;
    const Divisor& F() const noexcept { return ke_->F(); }

private:
    std::unique_ptr<keyeq::KeyEquation> ke_;
};

} // namespace agkey::decoder
