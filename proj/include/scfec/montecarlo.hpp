// Copyright 2026 the scfec authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <memory>
#include <thread>
#include <tuple>
#include <vector>

#include "scfec/channel.hpp"
#include "scfec/staircase.hpp"
#include "scfec/util.hpp"
#include "scfec/window.hpp"

namespace scfec {

struct StopRule {
    uint64_t min_errors = 500;
    uint64_t max_bits = 1000000000ull;
};

struct SweepConfig {
    std::shared_ptr<const ComponentCode> code;
    ChannelConfig channel;   // snr field is overwritten per sweep point
    DecoderConfig decoder;
    std::vector<double> snr_db;
    StopRule stop;
    unsigned workers = 0;    // 0: hardware concurrency
    uint64_t base_seed = 1;
    bool count_info_bits_only = false;
    int blocks_per_stream = 200;  // counted deliveries per stream, after burn-in
};

struct SimPoint {
    double snr_db = 0.0;
    DecodeMode mode = DecodeMode::standard;
    uint64_t bits = 0;
    uint64_t bit_errors = 0;
    uint64_t blocks = 0;
    uint64_t streams = 0;
    uint64_t miscorrections = 0;
    uint64_t pre_fec_bits = 0;
    uint64_t pre_fec_errors = 0;
    uint64_t digest = 0;  // FNV-1a over counted delivered bits, stream order
    double seconds = 0.0;
    uint64_t base_seed = 0;

    double ber() const { return bits ? static_cast<double>(bit_errors) / bits : 0.0; }
    double pre_fec_ber() const {
        return pre_fec_bits ? static_cast<double>(pre_fec_errors) / pre_fec_bits : 0.0;
    }
};

/// Wilson score interval at 95% on an error proportion.
inline std::pair<double, double> wilson_interval(uint64_t errors, uint64_t trials) {
    if (trials == 0) throw UsageError("confidence interval requires trials > 0");
    const double z = 1.96;
    const double z2 = z * z;
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(errors) / n;
    const double denom = 1.0 + z2 / n;
    const double center = (ph + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(ph * (1.0 - ph) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

inline uint64_t stream_seed(uint64_t base_seed, int snr_index, uint64_t stream_index) {
    return derive_seed(base_seed, static_cast<uint64_t>(snr_index), stream_index);
}

namespace detail {

struct StreamTally {
    uint64_t bits = 0;
    uint64_t errors = 0;
    uint64_t blocks = 0;
    uint64_t prefec_bits = 0;
    uint64_t prefec_errors = 0;
    uint64_t miscorrections = 0;
    uint64_t digest = 0;
};

/// One independent stream: encode, transmit, window-decode, count delivered
/// blocks after a burn-in of L deliveries. All randomness comes from the
/// stream seed, so a stream is reproducible regardless of scheduling, and
/// the mode never changes the draw sequence (common random numbers).
inline StreamTally run_stream(const std::shared_ptr<const ComponentCode>& code,
                              const ChannelConfig& ch, const DecoderConfig& dc, uint64_t seed,
                              int counted_blocks, bool info_bits_only) {
    const int w = code->block_size();
    const int p = code->parity_len();
    const int L = dc.window_len;
    NormalSampler rng(seed);
    StaircaseEncoder enc(*code);
    WindowDecoder win(code, dc);
    std::deque<Block> truth_q;
    std::deque<uint32_t> prefec_q;
    win.push(Block::zeros(w), MarkPlane::none(w), Block::zeros(w), /*frozen=*/true);
    truth_q.push_back(Block::zeros(w));
    prefec_q.push_back(0);

    auto generate = [&]() {
        std::vector<uint8_t> info(static_cast<size_t>(w) * (w - p));
        uint64_t word = 0;
        for (size_t i = 0; i < info.size(); ++i) {
            if (i % 64 == 0) word = rng.raw();
            info[i] = static_cast<uint8_t>((word >> (i % 64)) & 1u);
        }
        Block tx = enc.next(info);
        auto symbols = map_symbols(tx.bits, ch);
        auto y = transmit(symbols, ch, rng);
        auto llrs = compute_llrs(y, ch);
        Block rx = deserialize_bits(hard_bits_from_llrs(llrs), w);
        MarkPlane mp = mark_bits(llrs, dc.hrb_threshold, dc.quant_bits, w);
        uint32_t channel_errors = 0;
        for (size_t i = 0; i < rx.bits.size(); ++i) channel_errors += rx.bits[i] != tx.bits[i];
        return std::tuple<Block, MarkPlane, Block, uint32_t>{std::move(rx), std::move(mp),
                                                             std::move(tx), channel_errors};
    };

    for (int i = 1; i < L; ++i) {
        auto [rx, mp, tx, pe] = generate();
        truth_q.push_back(tx);
        prefec_q.push_back(pe);
        win.push(std::move(rx), std::move(mp), std::move(tx));
    }

    StreamTally tally;
    Fnv64 digest;
    const int burn_in = L;
    for (int d = 0; d < burn_in + counted_blocks; ++d) {
        win.run_iterations();
        auto [rx, mp, tx, pe] = generate();
        Block delivered = win.slide(std::move(rx), std::move(mp), tx);
        Block dtruth = std::move(truth_q.front());
        truth_q.pop_front();
        truth_q.push_back(std::move(tx));
        uint32_t dpre = prefec_q.front();
        prefec_q.pop_front();
        prefec_q.push_back(pe);
        if (d < burn_in) continue;
        uint64_t errs = 0, nbits = 0;
        if (info_bits_only) {
            for (int r = 0; r < w; ++r)
                for (int c = 0; c < w - p; ++c) errs += delivered.at(r, c) != dtruth.at(r, c);
            nbits = static_cast<uint64_t>(w) * (w - p);
        } else {
            for (size_t i = 0; i < delivered.bits.size(); ++i)
                errs += delivered.bits[i] != dtruth.bits[i];
            nbits = static_cast<uint64_t>(w) * w;
        }
        tally.bits += nbits;
        tally.errors += errs;
        tally.blocks += 1;
        tally.prefec_bits += static_cast<uint64_t>(w) * w;
        tally.prefec_errors += dpre;
        uint8_t packed = 0;
        for (size_t i = 0; i < delivered.bits.size(); ++i) {
            packed = static_cast<uint8_t>((packed << 1) | delivered.bits[i]);
            if (i % 8 == 7) {
                digest.update(packed);
                packed = 0;
            }
        }
        if (delivered.bits.size() % 8) digest.update(packed);
    }
    tally.miscorrections = win.stats().miscorrections_logged;
    tally.digest = digest.h;
    return tally;
}

}  // namespace detail

/// Simulates one SNR point until the stop rule is met. Streams are processed
/// in fixed-size batches; results are aggregated in stream-index order and
/// the stop rule is evaluated at stream boundaries, so the outcome does not
/// depend on the worker count.
inline SimPoint run_point(const SweepConfig& cfg, int snr_index) {
    if (snr_index < 0 || snr_index >= static_cast<int>(cfg.snr_db.size()))
        throw UsageError("SNR index out of range");
    const int w = cfg.code->block_size();
    const int m = bits_per_symbol(cfg.channel.mod_order);
    if ((w * w) % m != 0)
        throw UsageError("block bit count w^2 must be divisible by bits per symbol (--mod)");
    if (cfg.blocks_per_stream < 1) throw UsageError("blocks per stream must be >= 1");
    const uint64_t window_bits = static_cast<uint64_t>(cfg.decoder.window_len) * w * w;
    if (cfg.stop.max_bits < window_bits)
        throw UsageError("--max-bits must cover at least one decoding window");
    if (cfg.stop.min_errors < 1) throw UsageError("--min-errors must be >= 1");

    const double snr_db = cfg.snr_db[snr_index];
    ChannelConfig ch = cfg.channel;
    ch.snr = std::pow(10.0, snr_db / 10.0);

    unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    constexpr int kBatch = 16;  // fixed batch size keeps results worker-invariant

    SimPoint pt;
    pt.snr_db = snr_db;
    pt.mode = cfg.decoder.mode;
    pt.base_seed = cfg.base_seed;
    Fnv64 agg_digest;

    auto t0 = std::chrono::steady_clock::now();
    bool done = false;
    for (uint64_t batch_base = 0; !done; batch_base += kBatch) {
        std::vector<detail::StreamTally> results(kBatch);
        auto work = [&](int first) {
            for (int i = first; i < kBatch; i += static_cast<int>(workers)) {
                uint64_t seed = stream_seed(cfg.base_seed, snr_index, batch_base + i);
                results[i] = detail::run_stream(cfg.code, ch, cfg.decoder, seed,
                                                cfg.blocks_per_stream, cfg.count_info_bits_only);
            }
        };
        if (workers <= 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < std::min<unsigned>(workers, kBatch); ++t)
                pool.emplace_back(work, static_cast<int>(t));
            for (auto& th : pool) th.join();
        }
        for (int i = 0; i < kBatch; ++i) {
            const auto& r = results[i];
            pt.bits += r.bits;
            pt.bit_errors += r.errors;
            pt.blocks += r.blocks;
            pt.miscorrections += r.miscorrections;
            pt.pre_fec_bits += r.prefec_bits;
            pt.pre_fec_errors += r.prefec_errors;
            pt.streams += 1;
            agg_digest.update_u64(r.digest);
            if (pt.bit_errors >= cfg.stop.min_errors || pt.bits >= cfg.stop.max_bits) {
                done = true;
                break;
            }
        }
    }
    pt.digest = agg_digest.h;
    pt.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return pt;
}

inline std::vector<SimPoint> run_sweep(const SweepConfig& cfg) {
    if (cfg.snr_db.empty()) throw UsageError("--snr-db list must not be empty");
    std::vector<SimPoint> points;
    points.reserve(cfg.snr_db.size());
    for (int i = 0; i < static_cast<int>(cfg.snr_db.size()); ++i)
        points.push_back(run_point(cfg, i));
    return points;
}

}  // namespace scfec
