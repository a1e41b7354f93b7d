// Copyright 2026 the scfec authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "scfec/montecarlo.hpp"
#include "scfec/version.hpp"
#include "scfec/window.hpp"

namespace scfec {

/// Serializable component-code parameters; build() reconstructs the code.
struct CodeParams {
    int mother_n = 256;
    int mother_k = 239;
    int t = 2;
    int shorten = 0;
    uint32_t primitive_poly = 0;  // 0: default for the field degree

    std::shared_ptr<const ComponentCode> build() const {
        return std::make_shared<const ComponentCode>(
            ComponentCode::from_params(mother_n, mother_k, t, shorten, primitive_poly));
    }
    friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// Everything needed to reproduce a run bit-identically, plus its results.
struct RunManifest {
    std::string tool = kToolName;
    std::string version = kVersion;
    std::string created_utc;
    CodeParams code;
    int mod_order = 2;
    DecoderConfig decoder;             // mode field unused; see modes
    std::vector<DecodeMode> modes;
    std::vector<double> snr_db;
    StopRule stop;
    unsigned workers = 0;
    uint64_t base_seed = 1;
    bool count_info_bits_only = false;
    int blocks_per_stream = 200;
    std::vector<SimPoint> results;
};

inline std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline nlohmann::json delta_to_json(double delta) {
    if (std::isinf(delta)) return "inf";
    return delta;
}

inline double delta_from_json(const nlohmann::json& j) {
    if (j.is_string()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

inline nlohmann::json to_json(const RunManifest& m) {
    nlohmann::json j;
    j["tool"] = m.tool;
    j["version"] = m.version;
    j["created_utc"] = m.created_utc;
    auto& cfg = j["config"];
    cfg["code"] = {{"mother_n", m.code.mother_n}, {"mother_k", m.code.mother_k},
                   {"t", m.code.t},               {"shorten", m.code.shorten},
                   {"primitive_poly", m.code.primitive_poly}};
    cfg["channel"] = {{"mod_order", m.mod_order}};
    cfg["decoder"] = {{"window", m.decoder.window_len},
                      {"iters", m.decoder.max_iters},
                      {"delta", delta_to_json(m.decoder.hrb_threshold)},
                      {"quant_bits", m.decoder.quant_bits},
                      {"bit_flipping", m.decoder.bit_flipping},
                      {"zero_syndrome_rule", m.decoder.zero_syndrome_rule}};
    cfg["modes"] = nlohmann::json::array();
    for (DecodeMode md : m.modes) cfg["modes"].push_back(to_string(md));
    cfg["sweep"] = {{"snr_db", m.snr_db},
                    {"seed", m.base_seed},
                    {"min_errors", m.stop.min_errors},
                    {"max_bits", m.stop.max_bits},
                    {"workers", m.workers},
                    {"count_info_bits_only", m.count_info_bits_only},
                    {"blocks_per_stream", m.blocks_per_stream}};
    j["results"] = nlohmann::json::array();
    for (const SimPoint& p : m.results) {
        auto [lo, hi] = p.bits ? wilson_interval(p.bit_errors, p.bits) : std::pair{0.0, 1.0};
        char digest[24];
        std::snprintf(digest, sizeof digest, "%016llx",
                      static_cast<unsigned long long>(p.digest));
        j["results"].push_back({{"snr_db", p.snr_db},
                                {"mode", to_string(p.mode)},
                                {"bits", p.bits},
                                {"bit_errors", p.bit_errors},
                                {"ber", p.ber()},
                                {"ci_low", lo},
                                {"ci_high", hi},
                                {"blocks", p.blocks},
                                {"streams", p.streams},
                                {"miscorrections_logged", p.miscorrections},
                                {"pre_fec_bits", p.pre_fec_bits},
                                {"pre_fec_errors", p.pre_fec_errors},
                                {"seconds", p.seconds},
                                {"digest", digest}});
    }
    return j;
}

inline RunManifest manifest_from_json(const nlohmann::json& j) {
    RunManifest m;
    m.tool = j.value("tool", m.tool);
    m.version = j.value("version", m.version);
    m.created_utc = j.value("created_utc", "");
    const auto& cfg = j.at("config");
    const auto& code = cfg.at("code");
    m.code.mother_n = code.at("mother_n").get<int>();
    m.code.mother_k = code.at("mother_k").get<int>();
    m.code.t = code.at("t").get<int>();
    m.code.shorten = code.at("shorten").get<int>();
    m.code.primitive_poly = code.at("primitive_poly").get<uint32_t>();
    m.mod_order = cfg.at("channel").at("mod_order").get<int>();
    const auto& dec = cfg.at("decoder");
    m.decoder.window_len = dec.at("window").get<int>();
    m.decoder.max_iters = dec.at("iters").get<int>();
    m.decoder.hrb_threshold = delta_from_json(dec.at("delta"));
    m.decoder.quant_bits = dec.at("quant_bits").get<int>();
    m.decoder.bit_flipping = dec.at("bit_flipping").get<bool>();
    m.decoder.zero_syndrome_rule = dec.at("zero_syndrome_rule").get<bool>();
    for (const auto& s : cfg.at("modes")) {
        auto md = parse_mode(s.get<std::string>());
        if (!md) throw UsageError("unknown mode in manifest: " + s.get<std::string>());
        m.modes.push_back(*md);
    }
    const auto& sw = cfg.at("sweep");
    m.snr_db = sw.at("snr_db").get<std::vector<double>>();
    m.base_seed = sw.at("seed").get<uint64_t>();
    m.stop.min_errors = sw.at("min_errors").get<uint64_t>();
    m.stop.max_bits = sw.at("max_bits").get<uint64_t>();
    m.workers = sw.at("workers").get<unsigned>();
    m.count_info_bits_only = sw.at("count_info_bits_only").get<bool>();
    m.blocks_per_stream = sw.at("blocks_per_stream").get<int>();
    return m;
}

inline void write_json(std::ostream& os, const RunManifest& m) { os << to_json(m).dump(2) << "\n"; }

inline void write_csv(std::ostream& os, const RunManifest& m) {
    const int n_eff = m.code.mother_n - m.code.shorten;
    const int k_eff = m.code.mother_k - m.code.shorten;
    char codebuf[48];
    std::snprintf(codebuf, sizeof codebuf, "%d/%d/%d", n_eff, k_eff, m.code.t);
    os << kCsvSchemaLine << "\n";
    os << "snr_db,mode,code,modulation,bits,bit_errors,ber,ci_low,ci_high,blocks,"
          "miscorrections_logged,seconds\n";
    for (const SimPoint& p : m.results) {
        auto [lo, hi] = p.bits ? wilson_interval(p.bit_errors, p.bits) : std::pair{0.0, 1.0};
        os << format_double(p.snr_db) << ',' << to_string(p.mode) << ',' << codebuf << ','
           << m.mod_order << "-PAM," << p.bits << ',' << p.bit_errors << ','
           << format_double(p.ber()) << ',' << format_double(lo) << ',' << format_double(hi)
           << ',' << p.blocks << ',' << p.miscorrections << ',' << format_double(p.seconds)
           << "\n";
    }
}

/// Writes the manifest to `path` ("-" for stdout) as csv or json.
inline void emit_results(const RunManifest& m, const std::string& format,
                         const std::string& path) {
    if (format != "csv" && format != "json") throw UsageError("--format must be csv or json");
    auto write = [&](std::ostream& os) {
        if (format == "csv") write_csv(os, m);
        else write_json(os, m);
        if (!os) throw IoError("write failed: " + path);
    };
    if (path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream f(path);
    if (!f) throw IoError("cannot open output file: " + path);
    write(f);
}

}  // namespace scfec
