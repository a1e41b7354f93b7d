// Copyright 2026 the scfec authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "scfec/report.hpp"
#include "scfec/util.hpp"

namespace scfec {

struct HelpRequested {
    std::string text;
};

struct CliConfig {
    CodeParams code;
    int mod_order = 2;
    DecoderConfig decoder;  // mode field unused; see modes
    std::vector<DecodeMode> modes;
    std::vector<double> snr_db;
    StopRule stop;
    unsigned workers = 0;
    uint64_t seed = 1;
    bool count_info_bits_only = false;
    int blocks_per_stream = 200;
    std::string out = "-";
    std::string format = "csv";
    std::string replay;
};

namespace detail {

inline std::vector<double> expand_snr_token(const std::string& token) {
    // either a plain value or an inclusive range "start:step:stop"
    const size_t c1 = token.find(':');
    if (c1 == std::string::npos) {
        size_t used = 0;
        double v = std::stod(token, &used);
        if (used != token.size()) throw UsageError("--snr-db: cannot parse value '" + token + "'");
        return {v};
    }
    const size_t c2 = token.find(':', c1 + 1);
    if (c2 == std::string::npos) throw UsageError("--snr-db: range must be start:step:stop");
    double start = std::stod(token.substr(0, c1));
    double step = std::stod(token.substr(c1 + 1, c2 - c1 - 1));
    double stop = std::stod(token.substr(c2 + 1));
    if (!(step > 0.0)) throw UsageError("--snr-db: range step must be > 0");
    if (stop < start) throw UsageError("--snr-db: range stop must be >= start");
    const int n = static_cast<int>(std::lround((stop - start) / step)) + 1;
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(start + i * step);
    return out;
}

inline std::vector<double> expand_snr_list(const std::vector<std::string>& tokens) {
    std::vector<double> out;
    for (const std::string& t : tokens) {
        std::string rest = t;
        size_t pos = 0;
        while ((pos = rest.find(',')) != std::string::npos) {
            auto vals = expand_snr_token(rest.substr(0, pos));
            out.insert(out.end(), vals.begin(), vals.end());
            rest.erase(0, pos + 1);
        }
        if (!rest.empty()) {
            auto vals = expand_snr_token(rest);
            out.insert(out.end(), vals.begin(), vals.end());
        }
    }
    return out;
}

}  // namespace detail

/// Parses command-line arguments (program name excluded) into a CliConfig.
/// Throws UsageError on invalid input, HelpRequested for --help.
inline CliConfig parse_args(std::vector<std::string> args) {
    CLI::App app{"staircase FEC Monte Carlo simulator"};
    app.set_version_flag("--version", kVersion);

    std::string code_str = "256,239,2";
    int shorten = 0;
    int mod = 2;
    std::vector<std::string> snr_tokens;
    std::vector<std::string> mode_strs;
    std::string delta_str = "10";
    int window = 9;
    int iters = 7;
    int quant_bits = 5;
    bool exact_marks = false;
    uint64_t seed = 1;
    uint64_t min_errors = 500;
    uint64_t max_bits = 1000000000ull;
    unsigned workers = 0;
    int blocks_per_stream = 200;
    bool info_only = false;
    bool no_bf = false;
    bool no_zs = false;
    std::string out = "-";
    std::string format = "csv";
    std::string replay;

    app.add_option("--code", code_str, "mother extended BCH code as n,k,t (e.g. 512,493,2)");
    app.add_option("--shorten", shorten, "bits to shorten the mother code by")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--mod", mod, "PAM order: 2, 4 or 8");
    app.add_option("--snr-db", snr_tokens,
                   "SNR points in dB: comma list and/or start:step:stop ranges");
    app.add_option("--mode", mode_strs,
                   "decoder mode (repeatable): standard, smith, marked, genie-mcf, genie-lb");
    app.add_option("--delta", delta_str, "HRB threshold on |LLR| (or 'inf')");
    app.add_option("--window", window, "decoding window size L");
    app.add_option("--iters", iters, "max iterations per window position");
    app.add_option("--quant-bits", quant_bits, "reliability quantization bits");
    app.add_flag("--exact-marks", exact_marks, "store exact |LLR| magnitudes (ablation)");
    app.add_option("--seed", seed, "base seed for reproducible runs");
    app.add_option("--min-errors", min_errors, "stop a point after this many bit errors");
    app.add_option("--max-bits", max_bits, "stop a point after this many counted bits");
    app.add_option("--workers", workers, "worker threads (0 = hardware)");
    app.add_option("--blocks-per-stream", blocks_per_stream, "counted blocks per stream");
    app.add_flag("--count-info-bits-only", info_only, "count only information bits in BER");
    app.add_flag("--no-bit-flipping", no_bf, "disable HUB bit flipping (ablation)");
    app.add_flag("--no-zero-syndrome-rule", no_zs, "disable the MD crossing rule (ablation)");
    app.add_option("--out", out, "output path ('-' = stdout)");
    app.add_option("--format", format, "output format: csv or json");
    app.add_option("--replay", replay, "rerun the configuration of an emitted JSON manifest");

    std::reverse(args.begin(), args.end());  // CLI11 consumes the vector as a stack
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForVersion&) {
        throw HelpRequested{std::string(kVersion) + "\n"};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    CliConfig cfg;
    cfg.replay = replay;
    cfg.out = out;
    cfg.format = format;
    if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
    if (!replay.empty()) return cfg;  // remaining fields come from the manifest

    int n = 0, k = 0, t = 0;
    if (std::sscanf(code_str.c_str(), "%d,%d,%d", &n, &k, &t) != 3)
        throw UsageError("--code must be n,k,t (e.g. 256,239,2)");
    if (n < 16 || n > 1024 || (n & (n - 1)) != 0)
        throw UsageError("--code: mother length must be a power of two in [16, 1024]");
    if (t != 2) throw UsageError("--code: only t=2 component codes are supported");
    if (k <= 0 || k >= n) throw UsageError("--code: dimension must be in (0, n)");
    cfg.code = CodeParams{n, k, t, shorten, 0};
    if (mod != 2 && mod != 4 && mod != 8) throw UsageError("--mod must be one of 2, 4, 8");
    cfg.mod_order = mod;

    if (snr_tokens.empty()) throw UsageError("--snr-db is required");
    cfg.snr_db = detail::expand_snr_list(snr_tokens);
    if (cfg.snr_db.empty()) throw UsageError("--snr-db produced no points");

    if (mode_strs.empty()) mode_strs.push_back("standard");
    for (const std::string& s : mode_strs) {
        auto md = parse_mode(s);
        if (!md) throw UsageError("--mode: unknown mode '" + s + "'");
        cfg.modes.push_back(*md);
    }

    double delta;
    if (delta_str == "inf" || delta_str == "INF" || delta_str == "Inf")
        delta = std::numeric_limits<double>::infinity();
    else {
        try {
            size_t used = 0;
            delta = std::stod(delta_str, &used);
            if (used != delta_str.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw UsageError("--delta: cannot parse '" + delta_str + "'");
        }
    }
    if (!(delta > 0.0)) throw UsageError("--delta must be > 0");

    if (window < 3) throw UsageError("--window must be at least 3");
    if (iters < 1) throw UsageError("--iters must be at least 1");
    if (quant_bits < 1 || quant_bits > 16) throw UsageError("--quant-bits must be in [1, 16]");
    if (min_errors < 1) throw UsageError("--min-errors must be >= 1");
    if (max_bits < 1) throw UsageError("--max-bits must be >= 1");
    if (blocks_per_stream < 1) throw UsageError("--blocks-per-stream must be >= 1");

    cfg.decoder.window_len = window;
    cfg.decoder.max_iters = iters;
    cfg.decoder.hrb_threshold = delta;
    cfg.decoder.quant_bits = exact_marks ? 0 : quant_bits;
    cfg.decoder.bit_flipping = !no_bf;
    cfg.decoder.zero_syndrome_rule = !no_zs;
    cfg.stop.min_errors = min_errors;
    cfg.stop.max_bits = max_bits;
    cfg.workers = workers;
    cfg.seed = seed;
    cfg.count_info_bits_only = info_only;
    cfg.blocks_per_stream = blocks_per_stream;
    return cfg;
}

inline CliConfig config_from_manifest(const RunManifest& m) {
    CliConfig cfg;
    cfg.code = m.code;
    cfg.mod_order = m.mod_order;
    cfg.decoder = m.decoder;
    cfg.modes = m.modes;
    cfg.snr_db = m.snr_db;
    cfg.stop = m.stop;
    cfg.workers = m.workers;
    cfg.seed = m.base_seed;
    cfg.count_info_bits_only = m.count_info_bits_only;
    cfg.blocks_per_stream = m.blocks_per_stream;
    return cfg;
}

inline RunManifest manifest_from_config(const CliConfig& cfg) {
    RunManifest m;
    m.created_utc = utc_timestamp();
    m.code = cfg.code;
    m.mod_order = cfg.mod_order;
    m.decoder = cfg.decoder;
    m.modes = cfg.modes;
    m.snr_db = cfg.snr_db;
    m.stop = cfg.stop;
    m.workers = cfg.workers;
    m.base_seed = cfg.seed;
    m.count_info_bits_only = cfg.count_info_bits_only;
    m.blocks_per_stream = cfg.blocks_per_stream;
    return m;
}

/// Runs every configured mode over the SNR list; one SimPoint per
/// (mode, SNR) with common random numbers across modes.
template <typename Progress>
RunManifest run_configured(const CliConfig& cfg, Progress&& progress) {
    RunManifest manifest = manifest_from_config(cfg);
    auto code = cfg.code.build();
    const int total = static_cast<int>(cfg.modes.size() * cfg.snr_db.size());
    int done = 0;
    for (DecodeMode mode : cfg.modes) {
        SweepConfig sc;
        sc.code = code;
        sc.channel.mod_order = cfg.mod_order;
        sc.decoder = cfg.decoder;
        sc.decoder.mode = mode;
        sc.snr_db = cfg.snr_db;
        sc.stop = cfg.stop;
        sc.workers = cfg.workers;
        sc.base_seed = cfg.seed;
        sc.count_info_bits_only = cfg.count_info_bits_only;
        sc.blocks_per_stream = cfg.blocks_per_stream;
        for (int i = 0; i < static_cast<int>(cfg.snr_db.size()); ++i) {
            SimPoint pt = run_point(sc, i);
            manifest.results.push_back(pt);
            progress(++done, total, pt);
        }
    }
    return manifest;
}

}  // namespace scfec
