// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/decoder.hpp"

#include "agkey/errors.hpp"

#include <string>

namespace agkey::decoder {

namespace {

Vector minus(const gf::Field& f, std::span<const Element> a, std::span<const Element> b)
{
    Vector out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j)
        out[j] = f.sub(a[j], b[j]);
    return out;
}

} // namespace

DecoderPlan::DecoderPlan(CurvePtr c, std::vector<std::size_t> D, Divisor G, std::size_t P_inf, PlanOptions opts)
    : curve_(std::move(c)), P_inf_(P_inf), opts_(std::move(opts))
{
    const int g = curve_->genus();
    if (g == 0)
        throw GenusZero("genus 0: the key equation alone reaches half the Goppa distance");
    for (const std::size_t p : D)
        if (p == P_inf_)
            throw NoExtraPoint("P_inf lies in D");
    if (curve_->points().size() < D.size() + 1)
        throw NoExtraPoint("the curve needs a rational point outside D");

    ctx_ = std::make_unique<funcspace::DifferentialContext>(curve_, D, G, P_inf_, opts_.G_star);
    code_ = agcode::AGCode::build(curve_, std::move(D), std::move(G), agcode::Bounds::Strong, &ctx_->spaces());
    const int t = code_->t();
    if (t <= 0)
        throw CapacityZero("t = floor((d* - 1) / 2) is 0");

    const Divisor P = Divisor::point(P_inf_);
    const Divisor F0 = opts_.F0 ? *opts_.F0 : t * P;
    if (F0.degree() != t)
        throw BadDivisorRange("deg F0 must equal t = " + std::to_string(t));
    for (int i = 0; i <= 2 * g - 1; ++i)
        F_.push_back(F0 + i * P);

    const Divisor& base = code_->G();
    for (int r = 0; r <= g; ++r) {
        auto rc = std::make_unique<mcd::CosetContext>(*ctx_, base + r * P);
        if (2 * t + r + 1 > rc->d1star())
            throw InvariantViolation("2t + r + 1 > d1* in round " + std::to_string(r));
        ke_ii_.push_back(std::make_unique<keyeq::KeyEquation>(rc->C1_ptr(), *ctx_, F_[static_cast<std::size_t>(r)], t));
        if (opts_.branch_i == BranchIDivisor::Gr || r == 0) {
            const auto& C = opts_.branch_i == BranchIDivisor::Gr ? rc->C1_ptr() : code_;
            ke_i_.push_back(std::make_unique<keyeq::KeyEquation>(C, *ctx_, C->G() - F_.back(), t));
        }
        rounds_.push_back(std::move(rc));
    }
}

const keyeq::KeyEquation& DecoderPlan::ke_i(int r) const
{
    return opts_.branch_i == BranchIDivisor::Gr ? *ke_i_.at(static_cast<std::size_t>(r)) : *ke_i_.front();
}

DecoderPlan::RoundOutcome DecoderPlan::run_round(int r, std::span<const Element> y1) const
{
    const auto& f = ctx_->field();
    const auto& rc = round(r);
    RoundOutcome out;
    out.trace.r = r;

    const auto k1 = ke_i(r).solve(y1);
    out.trace.ke_i = keyeq::to_string(k1.status);
    if (k1.status == keyeq::KeyStatus::Accepted) {
        // The word y1 - e must also sit in the round's code.
        if (rc.C1().in_code(k1.solution->codeword)) {
            out.trace.branch = "KE-i";
            out.e = k1.solution->e;
            return out;
        }
        out.trace.ke_i = "rejected: y1 - e not in C(G_r)";
    }
    const auto k2 = ke_ii(r).solve(y1);
    out.trace.ke_ii = keyeq::to_string(k2.status);
    if (k2.status == keyeq::KeyStatus::Accepted) {
        out.trace.branch = "KE-ii";
        out.e = k2.solution->e;
        return out;
    }
    const int g = genus();
    if (r == g) {
        out.trace.branch = "fail";
        out.failure = "both key equations rejected in the last round";
        return out;
    }

    for (int i = r; i <= 2 * g - 2; ++i)
        if (rc.condition_A(y1, F(i)).holds())
            out.trace.I_A.push_back(i);
    out.trace.branch = "vote";
    if (!rc.c0()) {
        out.next = Vector(y1.begin(), y1.end());
        return out;
    }
    if (out.trace.I_A.empty()) {
        out.trace.branch = "fail";
        out.failure = "I_A is empty in round " + std::to_string(r);
        return out;
    }
    for (const int i : out.trace.I_A)
        out.trace.reports.push_back(rc.coset_step(y1, F(i), i));
    try {
        out.trace.vote = mcd::vote(out.trace.reports);
    } catch (const EmptyVote&) {
        out.trace.branch = "fail";
        out.failure = "every candidate abstained in round " + std::to_string(r);
        return out;
    }
    if (out.trace.vote->tie) {
        out.trace.branch = "fail";
        out.failure = "tied vote in round " + std::to_string(r);
        return out;
    }
    const Element lambda = out.trace.vote->lambda;
    out.trace.lambda = lambda;
    Vector next(y1.begin(), y1.end());
    f.axpy(next, f.neg(lambda), *rc.c0());
    out.next = std::move(next);
    return out;
}

DecodeResult DecoderPlan::decode(std::span<const Element> y) const
{
    if (y.size() != code_->n())
        throw LengthMismatch("word length " + std::to_string(y.size()) + " != n = " + std::to_string(code_->n()));
    const auto& f = ctx_->field();
    DecodeResult res;
    Vector y1(y.begin(), y.end());
    for (int r = 0; r <= genus(); ++r) {
        auto out = run_round(r, y1);
        res.trace.push_back(std::move(out.trace));
        res.rounds = r + 1;
        if (out.e) {
            res.e = std::move(*out.e);
            res.codeword = minus(f, y, res.e);
            if (agcode::weight(res.e) > t() || !code_->in_code(res.codeword)) {
                res.failure = "accepted error does not translate back to C";
                return res;
            }
            res.decoded = true;
            return res;
        }
        if (!out.next) {
            res.failure = out.failure;
            return res;
        }
        y1 = std::move(*out.next);
    }
    res.failure = "no key equation succeeded";
    return res;
}

KeyOnlyDecoder::KeyOnlyDecoder(const DecoderPlan& plan)
{
    const auto& code = plan.code();
    const int g = code.genus();
    const int nu = (code.dstar() - g - 1) / 2;
    const Divisor F = Divisor::point(plan.P_inf(), nu + g);
    ke_ = std::make_unique<keyeq::KeyEquation>(plan.code_ptr(), plan.context(), F, code.t());
}

DecodeResult KeyOnlyDecoder::decode(std::span<const Element> y) const
{
    DecodeResult res;
    res.rounds = 1;
    const auto k = ke_->solve(y);
    RoundTrace tr;
    tr.branch = k.status == keyeq::KeyStatus::Accepted ? "KE" : "fail";
    tr.ke_ii = keyeq::to_string(k.status);
    res.trace.push_back(tr);
    if (k.status == keyeq::KeyStatus::Accepted) {
        res.decoded = true;
        res.e = k.solution->e;
        res.codeword = k.solution->codeword;
    } else {
        res.failure = k.reason.empty() ? keyeq::to_string(k.status) : k.reason;
    }
    return res;
}

} // namespace agkey::decoder
