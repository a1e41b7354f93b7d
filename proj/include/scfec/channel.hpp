// Copyright 2026 the scfec authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "scfec/util.hpp"

namespace scfec {

/// M-PAM over AWGN: y = sqrt(rho) * x + z with unit-variance noise, so the
/// SNR knob is the linear transmit power rho.
struct ChannelConfig {
    int mod_order = 2;     // M in {2, 4, 8}
    double snr = 1.0;      // linear power ratio rho
};

inline int bits_per_symbol(int mod_order) {
    switch (mod_order) {
        case 2: return 1;
        case 4: return 2;
        case 8: return 3;
        default: throw UsageError("--mod must be one of 2, 4, 8");
    }
}

/// Equally spaced PAM points normalized to unit average energy, labeled with
/// the binary reflected Gray code (point order 00, 01, 11, 10 for 4-PAM).
struct PamMapping {
    int M;
    int m;
    std::array<double, 8> points{};     // ascending amplitude
    std::array<uint8_t, 8> label_of{};  // point index -> label
    std::array<uint8_t, 8> index_of{};  // label -> point index

    explicit PamMapping(int mod_order) : M(mod_order), m(bits_per_symbol(mod_order)) {
        const double delta = std::sqrt(3.0 / (static_cast<double>(M) * M - 1.0));
        for (int i = 0; i < M; ++i) {
            points[i] = (2 * i - M + 1) * delta;
            label_of[i] = static_cast<uint8_t>(i ^ (i >> 1));
            index_of[label_of[i] & 7u] = static_cast<uint8_t>(i);
        }
    }

    uint8_t label_bit(int point, int bit) const {  // bit 0 = MSB of the label
        return (label_of[point] >> (m - 1 - bit)) & 1u;
    }
};

/// Maps bits (MSB of each label first) to unit-energy PAM amplitudes; the
/// sqrt(rho) scale is applied by transmit().
inline std::vector<double> map_symbols(std::span<const uint8_t> bits, const ChannelConfig& cfg) {
    PamMapping map(cfg.mod_order);
    if (bits.size() % map.m != 0) throw UsageError("bit count must be divisible by bits per symbol");
    std::vector<double> out(bits.size() / map.m);
    for (size_t s = 0; s < out.size(); ++s) {
        uint8_t label = 0;
        for (int b = 0; b < map.m; ++b) label = static_cast<uint8_t>((label << 1) | (bits[s * map.m + b] & 1u));
        out[s] = map.points[map.index_of[label]];
    }
    return out;
}

inline std::vector<double> transmit(std::span<const double> symbols, const ChannelConfig& cfg,
                                    NormalSampler& rng) {
    const double scale = std::sqrt(cfg.snr);
    std::vector<double> y(symbols.size());
    for (size_t i = 0; i < y.size(); ++i) y[i] = scale * symbols[i] + rng.normal();
    return y;
}

namespace detail {
// log sum_i exp(-(y - a_i)^2 / 2) over the listed points, max-subtracted.
inline double log_sum_exp(std::span<const double> exponents) {
    double mx = exponents[0];
    for (double e : exponents) mx = std::max(mx, e);
    double acc = 0.0;
    for (double e : exponents) acc += std::exp(e - mx);
    return mx + std::log(acc);
}
}  // namespace detail

/// Exact bitwise LLRs; positive means bit 1 is more likely. For 2-PAM this
/// reduces to 2*sqrt(rho)*y.
inline std::vector<double> compute_llrs(std::span<const double> y, const ChannelConfig& cfg) {
    PamMapping map(cfg.mod_order);
    const double scale = std::sqrt(cfg.snr);
    std::vector<double> llrs(y.size() * map.m);
    std::array<double, 8> ex{};
    std::array<double, 4> set0{}, set1{};
    for (size_t l = 0; l < y.size(); ++l) {
        for (int i = 0; i < map.M; ++i) {
            double d = y[l] - scale * map.points[i];
            ex[i] = -0.5 * d * d;
        }
        for (int b = 0; b < map.m; ++b) {
            int n0 = 0, n1 = 0;
            for (int i = 0; i < map.M; ++i) {
                if (map.label_bit(i, b)) set1[n1++] = ex[i];
                else set0[n0++] = ex[i];
            }
            llrs[l * map.m + b] = detail::log_sum_exp({set1.data(), static_cast<size_t>(n1)}) -
                                  detail::log_sum_exp({set0.data(), static_cast<size_t>(n0)});
        }
    }
    return llrs;
}

inline std::vector<uint8_t> hard_bits_from_llrs(std::span<const double> llrs) {
    std::vector<uint8_t> bits(llrs.size());
    for (size_t i = 0; i < llrs.size(); ++i) bits[i] = llrs[i] > 0.0 ? 1 : 0;  // ties to 0
    return bits;
}

inline std::vector<uint8_t> hd_demap(std::span<const double> y, const ChannelConfig& cfg) {
    return hard_bits_from_llrs(compute_llrs(y, cfg));
}

/// Per-bit reliability marks for one staircase block, made once at demapping
/// and never updated afterwards. A bit is an HRB when |llr| >= delta; the
/// level field is a monotone quantization of |llr| used to rank HUB
/// candidates (quant_bits <= 0 keeps exact magnitudes, for ablation runs).
struct MarkPlane {
    int side = 0;
    std::vector<uint8_t> hrb;
    std::vector<float> level;

    static MarkPlane none(int side) {
        MarkPlane mp;
        mp.side = side;
        mp.hrb.assign(static_cast<size_t>(side) * side, 0);
        mp.level.assign(static_cast<size_t>(side) * side, 0.0f);
        return mp;
    }

    bool is_hrb(int r, int c) const { return hrb[static_cast<size_t>(r) * side + c] != 0; }
    float level_at(int r, int c) const { return level[static_cast<size_t>(r) * side + c]; }
};

inline MarkPlane mark_bits(std::span<const double> llrs, double delta, int quant_bits, int side) {
    if (!(delta > 0.0)) throw UsageError("--delta must be > 0");
    if (static_cast<int>(llrs.size()) != side * side)
        throw UsageError("mark plane needs side^2 LLRs");
    MarkPlane mp = MarkPlane::none(side);
    const double top = quant_bits > 0 ? static_cast<double>((1u << quant_bits) - 1) : 0.0;
    for (size_t i = 0; i < llrs.size(); ++i) {
        const double mag = std::abs(llrs[i]);
        mp.hrb[i] = mag >= delta ? 1 : 0;
        if (quant_bits > 0) {
            double q = std::floor(mag * top / delta);
            mp.level[i] = static_cast<float>(std::clamp(q, 0.0, top));
        } else {
            mp.level[i] = static_cast<float>(mag);
        }
    }
    return mp;
}

}  // namespace scfec
