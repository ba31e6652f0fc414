// Copyright 2026 The agkey Authors
// SPDX-License-Identifier: Apache-2.0

#include "agkey/cli.hpp"

#include "agkey/errors.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <random>

#ifndef AGKEY_DATA_DIR
#define AGKEY_DATA_DIR "data"
#endif

namespace agkey::cli {

namespace {

struct Options {
    std::string config;
    std::string input;
    std::string error;
    std::string out;
    std::string data_dir = AGKEY_DATA_DIR;
    std::string branch_i;
    std::optional<std::uint64_t> seed;
    std::optional<int> weight;
    std::optional<int> trials;
    std::optional<std::size_t> crossover;
    bool ke_only = false;
    bool timing = false;
    int example = 0;
};

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw ConfigError("cannot write " + path);
    out << text;
}

struct Loaded {
    RunConfig cfg;
    std::unique_ptr<decoder::DecoderPlan> plan;
};

// Everything that can go wrong here is a configuration problem, except a
// broken internal invariant.
Loaded load(const Options& o)
{
    if (o.config.empty())
        throw ConfigError("--config is required");
    Loaded l;
    try {
        l.cfg = load_config(o.config);
        if (!o.branch_i.empty())
            l.cfg.plan.branch_i = o.branch_i == "Gr" ? decoder::BranchIDivisor::Gr : decoder::BranchIDivisor::G;
        if (o.crossover)
            l.cfg.strassen_crossover = *o.crossover;
        linalg::set_strassen_crossover(l.cfg.strassen_crossover);
        l.plan = std::make_unique<decoder::DecoderPlan>(l.cfg.curve, l.cfg.D, l.cfg.G, l.cfg.P_inf, l.cfg.plan);
    } catch (const ConfigError&) {
        throw;
    } catch (const InvariantViolation&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(o.config + ": " + e.what());
    }
    return l;
}

Vector input_vector(const Field& f, const std::string& path, std::size_t want, const char* what)
{
    if (path.empty())
        throw ConfigError(std::string("--input is required for the ") + what);
    Vector v;
    try {
        v = read_vector(f, path);
    } catch (const ParseError& e) {
        throw ConfigError(e.what());
    }
    if (v.size() != want)
        throw LengthMismatch(path + ": " + std::to_string(v.size()) + " symbols, expected " + std::to_string(want));
    return v;
}

int cmd_info(const Options& o)
{
    const auto l = load(o);
    std::cout << info_line(*l.plan) << "\n";
    if (!o.out.empty())
        write_text(o.out, info_json(*l.plan).dump(2) + "\n");
    return kOk;
}

int cmd_encode(const Options& o)
{
    const auto l = load(o);
    const auto& C = l.plan->code();
    const Field& f = C.curve()->field();
    const Vector msg = input_vector(f, o.input, C.k(), "message");
    write_text(o.out, format_vector(f, C.encode(msg)));
    return kOk;
}

int cmd_corrupt(const Options& o)
{
    const auto l = load(o);
    const auto& C = l.plan->code();
    const Field& f = C.curve()->field();
    const Vector c = input_vector(f, o.input, C.n(), "word");
    Vector e;
    if (!o.error.empty()) {
        e = input_vector(f, o.error, C.n(), "error");
    } else {
        if (!o.weight)
            throw ConfigError("corrupt needs --weight or --error");
        if (*o.weight < 0 || static_cast<std::size_t>(*o.weight) > C.n())
            throw ConfigError("--weight must lie in [0, n]");
        std::mt19937_64 rng(trial_seed(o.seed.value_or(l.cfg.sim.seed), *o.weight, 0));
        e = Vector(C.n());
        std::vector<std::size_t> pos(C.n());
        for (std::size_t i = 0; i < pos.size(); ++i)
            pos[i] = i;
        for (int k = 0; k < *o.weight; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            std::swap(pos[ku], pos[ku + rng() % (C.n() - ku)]);
            e[pos[ku]] = Element{static_cast<std::uint32_t>(1 + rng() % (f.size() - 1))};
        }
    }
    Vector y(C.n());
    for (std::size_t j = 0; j < y.size(); ++j)
        y[j] = f.add(c[j], e[j]);
    write_text(o.out, format_vector(f, y));
    if (!o.out.empty() && o.out != "-") {
        json j;
        j["weight"] = agcode::weight(e);
        j["error"] = vector_json(f, e);
        std::cout << j.dump(2) << "\n";
    }
    return kOk;
}

int cmd_decode(const Options& o)
{
    const auto l = load(o);
    const auto& C = l.plan->code();
    const Field& f = C.curve()->field();
    const Vector y = input_vector(f, o.input, C.n(), "received word");
    decoder::DecodeResult res;
    if (o.ke_only)
        res = decoder::KeyOnlyDecoder(*l.plan).decode(y);
    else
        res = l.plan->decode(y);
    std::cout << trace_json(f, res).dump(2) << "\n";
    if (res.decoded && !o.out.empty())
        write_text(o.out, format_vector(f, res.codeword));
    return res.decoded ? kOk : kDecodeFailure;
}

int cmd_simulate(const Options& o)
{
    const auto l = load(o);
    SimSpec spec = l.cfg.sim;
    if (o.seed)
        spec.seed = *o.seed;
    if (o.trials)
        spec.trials = *o.trials;
    if (o.weight)
        spec.weights = {*o.weight};
    if (spec.weights.empty())
        for (int w = 0; w <= l.plan->t(); ++w)
            spec.weights.push_back(w);
    if (spec.trials < 1)
        throw ConfigError("--trials must be at least 1");
    const auto rep = simulate(*l.plan, spec, o.ke_only);
    std::cout << report_table(rep, o.timing);
    if (!o.out.empty())
        write_text(o.out, report_json(rep, o.timing).dump(2) + "\n");
    return kOk;
}

int cmd_reproduce(const Options& o)
{
    const auto rep = reproduce_example(o.example, o.data_dir);
    for (const auto& c : rep.checks)
        std::cout << (c.pass ? "match    " : "MISMATCH ") << c.name << " (" << c.detail << ")\n";
    if (!o.out.empty())
        write_text(o.out, example_json(rep).dump(2) + "\n");
    return rep.decoded ? kOk : kDecodeFailure;
}

} // namespace

int run(int argc, char** argv)
{
    CLI::App app{"Decoding of algebraic-geometry codes by a key equation with majority coset voting"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "code configuration (JSON)");
        sub->add_option("--strassen-crossover", o.crossover, "Strassen recursion cutoff")->check(CLI::PositiveNumber);
        sub->add_option("--branch-i-divisor", o.branch_i, "code divisor of the first key equation")
            ->check(CLI::IsMember({"G", "Gr"}));
        sub->add_option("--out", o.out, "output path");
    };

    auto* info = app.add_subcommand("info", "print code parameters");
    common(info);
    auto* encode = app.add_subcommand("encode", "encode a message file");
    common(encode);
    encode->add_option("--input", o.input, "message, one symbol per line");
    auto* corrupt = app.add_subcommand("corrupt", "add a random or explicit error");
    common(corrupt);
    corrupt->add_option("--input", o.input, "codeword, one symbol per line");
    corrupt->add_option("--error", o.error, "explicit error vector file");
    corrupt->add_option("--weight", o.weight, "random error weight");
    corrupt->add_option("--seed", o.seed, "random seed");
    auto* decode = app.add_subcommand("decode", "decode a received word");
    common(decode);
    decode->add_option("--input", o.input, "received word, one symbol per line");
    decode->add_flag("--ke-only", o.ke_only, "key equation only, no voting");
    auto* simulate_cmd = app.add_subcommand("simulate", "seeded decoding simulation");
    common(simulate_cmd);
    simulate_cmd->add_option("--seed", o.seed, "random seed");
    simulate_cmd->add_option("--weight", o.weight, "single error weight");
    simulate_cmd->add_option("--trials", o.trials, "trials per weight");
    simulate_cmd->add_flag("--ke-only", o.ke_only, "add key-equation-only columns");
    simulate_cmd->add_flag("--timing", o.timing, "include mean decode times");
    auto* repro = app.add_subcommand("reproduce-example", "rerun a bundled worked example");
    repro->add_option("example", o.example, "1 (Klein quartic) or 2 (Hermitian curve)")
        ->required()
        ->check(CLI::IsMember({1, 2}));
    repro->add_option("--data-dir", o.data_dir, "directory with the bundled configs");
    repro->add_option("--out", o.out, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (*info)
            return cmd_info(o);
        if (*encode)
            return cmd_encode(o);
        if (*corrupt)
            return cmd_corrupt(o);
        if (*decode)
            return cmd_decode(o);
        if (*simulate_cmd)
            return cmd_simulate(o);
        return cmd_reproduce(o);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const LengthMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInvariantViolation;
    }
}

} // namespace agkey::cli
