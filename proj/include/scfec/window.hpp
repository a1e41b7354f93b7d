// Copyright 2026 the scfec authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scfec/bch.hpp"
#include "scfec/channel.hpp"
#include "scfec/staircase.hpp"
#include "scfec/util.hpp"

namespace scfec {

enum class DecodeMode { standard, smith_md, marked, genie_mcf, genie_lb };

inline const char* to_string(DecodeMode m) {
    switch (m) {
        case DecodeMode::standard: return "standard";
        case DecodeMode::smith_md: return "smith";
        case DecodeMode::marked: return "marked";
        case DecodeMode::genie_mcf: return "genie-mcf";
        case DecodeMode::genie_lb: return "genie-lb";
    }
    return "?";
}

inline std::optional<DecodeMode> parse_mode(const std::string& s) {
    if (s == "standard") return DecodeMode::standard;
    if (s == "smith") return DecodeMode::smith_md;
    if (s == "marked") return DecodeMode::marked;
    if (s == "genie-mcf") return DecodeMode::genie_mcf;
    if (s == "genie-lb") return DecodeMode::genie_lb;
    return std::nullopt;
}

struct DecoderConfig {
    DecodeMode mode = DecodeMode::standard;
    int window_len = 9;
    int max_iters = 7;
    double hrb_threshold = 10.0;   // delta; may be infinity
    int quant_bits = 5;            // <= 0: exact magnitudes
    bool bit_flipping = true;      // ablation switch for the BF stage
    bool zero_syndrome_rule = true;  // ablation switch for the MD crossing rule

    bool needs_truth() const {
        return mode == DecodeMode::genie_mcf || mode == DecodeMode::genie_lb;
    }
};

/// Sliding-window iterative staircase decoder.
///
/// The window holds L blocks; pairs are decoded newest to oldest, rows in
/// ascending order. Plain BDD acceptance applies everywhere except the
/// newest pair, where the configured mode may add miscorrection detection
/// (zero-syndrome crossings, HRB protection) and HUB bit flipping, or the
/// genie rules. Per-codeword syndromes are cached and updated on every flip.
class WindowDecoder {
  public:
    struct DecodeResult {
        bool accepted = false;
        int bf_flips = 0;                // HUBs flipped by an accepted recovery
        std::vector<uint16_t> net;       // net bit flips applied to the window
    };

    struct Stats {
        uint64_t decode_calls = 0;
        uint64_t flips_applied = 0;
        uint64_t md_rejects = 0;
        uint64_t bf_attempts = 0;
        uint64_t bf_accepted = 0;
        uint64_t miscorrections_logged = 0;
    };

    WindowDecoder(std::shared_ptr<const ComponentCode> code, DecoderConfig cfg)
        : code_(std::move(code)), cfg_(cfg), w_(code_->block_size()) {
        if (cfg_.window_len < 3) throw UsageError("--window must be at least 3");
        if (cfg_.max_iters < 1) throw UsageError("--iters must be at least 1");
        if (!(cfg_.hrb_threshold > 0.0)) throw UsageError("--delta must be > 0");
        slots_.reserve(cfg_.window_len);
        pair_syn_.resize(cfg_.window_len);  // [0] unused; pairs are 1..L-1
        marks_ = MarkPlane::none(w_);
    }

    int window_len() const { return cfg_.window_len; }
    int block_size() const { return w_; }
    const DecoderConfig& config() const { return cfg_; }
    bool ready() const { return static_cast<int>(slots_.size()) == cfg_.window_len; }

    /// Fills the window during stream startup. The first block of a stream
    /// is the all-zero block, pushed with frozen=true: it is known a priori
    /// and no correction may land in it.
    void push(Block received, MarkPlane marks, std::optional<Block> truth = std::nullopt,
              bool frozen = false) {
        check(!ready(), "push on a full window; use slide");
        check(received.side == w_, "block side mismatch");
        if (cfg_.needs_truth() && !truth) throw UsageError("genie modes require transmitted blocks");
        slots_.push_back(Slot{std::move(received), std::move(truth), frozen});
        marks_ = std::move(marks);
        int pair = static_cast<int>(slots_.size()) - 1;
        if (pair >= 1) pair_syn_[pair] = compute_pair_syndromes(pair);
    }

    /// Runs one decoding pass over the window; returns true if any bit changed.
    bool run_iteration() {
        check(ready(), "window not full");
        bool changed = false;
        const int newest = cfg_.window_len - 1;
        for (int pair = newest; pair >= 1; --pair) {
            for (int row = 0; row < w_; ++row) {
                if (pair_syn_[pair][row].is_zero()) continue;
                CodewordAddress addr{pair, row};
                switch (cfg_.mode) {
                    case DecodeMode::standard:
                        changed |= plain_decode(addr);
                        break;
                    case DecodeMode::smith_md:
                    case DecodeMode::marked:
                        changed |= pair == newest ? decode_codeword_enhanced(addr).accepted
                                                  : plain_decode(addr);
                        break;
                    case DecodeMode::genie_mcf:
                        changed |= genie_mcf_decode(addr).accepted;
                        break;
                    case DecodeMode::genie_lb:
                        changed |= pair == newest ? genie_lb_decode(addr).accepted
                                                  : plain_decode(addr);
                        break;
                }
            }
        }
        return changed;
    }

    /// Up to max_iters passes, stopping early at a fixed point.
    void run_iterations() {
        for (int i = 0; i < cfg_.max_iters; ++i)
            if (!run_iteration()) break;
    }

    /// Delivers the oldest block and admits the next one with its marks.
    Block slide(Block next, MarkPlane marks, std::optional<Block> truth = std::nullopt) {
        check(ready(), "slide on a partially filled window");
        check(next.side == w_, "block side mismatch");
        if (cfg_.needs_truth() && !truth) throw UsageError("genie modes require transmitted blocks");
        Block delivered = std::move(slots_.front().bits);
        slots_.erase(slots_.begin());
        slots_.push_back(Slot{std::move(next), std::move(truth), false});
        pair_syn_.erase(pair_syn_.begin() + 1);  // old pair 1 leaves with the block
        pair_syn_.push_back(compute_pair_syndromes(cfg_.window_len - 1));
        marks_ = std::move(marks);
        return delivered;
    }

    const Block& block(int slot) const { return slots_[slot].bits; }
    const Block* truth(int slot) const {
        return slots_[slot].truth ? &*slots_[slot].truth : nullptr;
    }
    const MarkPlane& marks() const { return marks_; }
    void set_marks(MarkPlane mp) {
        check(mp.side == w_, "mark plane side mismatch");
        marks_ = std::move(mp);
    }

    Syndrome syndrome(const CodewordAddress& a) const { return pair_syn_[a.pair][a.row]; }

    uint8_t bit(const CodewordAddress& a, int k) const {
        BitLocation loc = locate_bit(a, k, w_);
        return slots_[loc.block].bits.at(loc.row, loc.col);
    }

    /// Flips one physical bit and keeps both touching syndrome caches
    /// consistent. Also the test hook for error injection.
    void flip_bit(int slot, int r, int c) {
        slots_[slot].bits.flip(r, c);
        if (slot >= 1)  // newer half of pair `slot`, codeword row r, bit w+c
            pair_syn_[slot][r] ^= code_->bit_contribution(w_ + c);
        if (slot + 1 <= cfg_.window_len - 1)  // older half of pair slot+1, codeword row c, bit r
            pair_syn_[slot + 1][c] ^= code_->bit_contribution(r);
    }

    /// Miscorrection detection on a proposed flip set for a newest-pair
    /// codeword: reject if a flip in the second-newest block lands on a
    /// zero-syndrome crossing codeword of the previous pair, or (marked mode)
    /// if a flip in the newest block lands on an HRB.
    bool md_check(const CodewordAddress& a, std::span<const uint16_t> flips) const {
        require_newest(a);
        for (uint16_t k : flips) {
            if (k < w_) {
                if (cfg_.zero_syndrome_rule && pair_syn_[a.pair - 1][k].is_zero()) return true;
            } else if (cfg_.mode == DecodeMode::marked) {
                if (marks_.is_hrb(a.row, k - w_)) return true;
            }
        }
        return false;
    }

    /// HUB bit-flipping recovery: one lowest-level HUB for a BDD failure,
    /// d0 - wH(e) - t lowest-level HUBs for a detected miscorrection, always
    /// restricted to the codeword's newest-block half, then BDD again and
    /// the final success + MD checks. Anything short of full acceptance
    /// reverts to the received bits.
    DecodeResult bit_flip_recover(const CodewordAddress& a, const DecodeOutcome& first) {
        require_newest(a);
        ++stats_.bf_attempts;
        const int need = first.corrected
                             ? code_->min_distance() - static_cast<int>(first.weight) - code_->t()
                             : 1;
        auto pool = hub_pool(a);
        if (static_cast<int>(pool.size()) < need) return {};
        Syndrome syn = pair_syn_[a.pair][a.row];
        for (int i = 0; i < need; ++i) syn ^= code_->bit_contribution(pool[i]);
        ++stats_.decode_calls;
        DecodeOutcome again = code_->decode_syndrome(syn);
        if (!again.corrected) return {};
        std::vector<uint16_t> net = symmetric_difference({pool.data(), static_cast<size_t>(need)},
                                                         again.pattern());
        if (net.empty()) return {};
        if (touches_frozen(a, net)) return {};
        if (md_check(a, net)) return {};
        verify_hrb_inviolate(a, net);
        apply_flips(a, net);
        ++stats_.bf_accepted;
        return DecodeResult{true, need, std::move(net)};
    }

    /// Full enhanced path for one newest-pair codeword: BDD, then MD on
    /// success or bit flipping on failure/detected miscorrection. Bit
    /// flipping belongs to marked mode only; smith runs MD alone.
    DecodeResult decode_codeword_enhanced(const CodewordAddress& a) {
        require_newest(a);
        Syndrome syn = pair_syn_[a.pair][a.row];
        if (syn.is_zero()) return {};
        ++stats_.decode_calls;
        const bool bf = cfg_.bit_flipping && cfg_.mode == DecodeMode::marked;
        DecodeOutcome out = code_->decode_syndrome(syn);
        if (out.corrected) {
            if (!md_check(a, out.pattern())) {
                std::vector<uint16_t> net(out.pattern().begin(), out.pattern().end());
                if (touches_frozen(a, net)) return {};
                verify_hrb_inviolate(a, net);
                apply_flips(a, net);
                return DecodeResult{true, 0, std::move(net)};
            }
            ++stats_.md_rejects;
            if (bf) return bit_flip_recover(a, out);
            return {};
        }
        if (bf) return bit_flip_recover(a, out);
        return {};
    }

    /// Miscorrection-free reference decoder: accept the BDD result only when
    /// it reproduces the transmitted codeword, i.e. at most t true errors.
    DecodeResult genie_mcf_decode(const CodewordAddress& a) {
        const Block* tr = slots_[a.pair].truth ? &*slots_[a.pair].truth : nullptr;
        if (!tr || !slots_[a.pair - 1].truth) throw UsageError("genie decoding requires truth blocks");
        Syndrome syn = pair_syn_[a.pair][a.row];
        if (syn.is_zero()) return {};
        ++stats_.decode_calls;
        DecodeOutcome out = code_->decode_syndrome(syn);
        if (!out.corrected) return {};
        std::vector<uint16_t> errs = true_errors(a);
        std::vector<uint16_t> net(out.pattern().begin(), out.pattern().end());
        if (net != errs) return {};
        apply_flips(a, net);
        return DecodeResult{true, 0, std::move(net)};
    }

    /// Idealized lower-bound decoder for the marked-bit structure: perfect
    /// miscorrection detection plus a genie BF that flips true errors in the
    /// newest block (j = 1 after a failure, d0 - wH(e) - t after a detected
    /// miscorrection), declaring failure when the newest block holds fewer
    /// than j errors.
    DecodeResult genie_lb_decode(const CodewordAddress& a) {
        require_newest(a);
        if (!slots_[a.pair].truth || !slots_[a.pair - 1].truth)
            throw UsageError("genie decoding requires truth blocks");
        Syndrome syn = pair_syn_[a.pair][a.row];
        if (syn.is_zero()) return {};
        ++stats_.decode_calls;
        DecodeOutcome out = code_->decode_syndrome(syn);
        std::vector<uint16_t> errs = true_errors(a);
        if (out.corrected) {
            std::vector<uint16_t> net(out.pattern().begin(), out.pattern().end());
            if (net == errs) {
                apply_flips(a, net);
                return DecodeResult{true, 0, std::move(net)};
            }
        }
        const int j = out.corrected
                          ? code_->min_distance() - static_cast<int>(out.weight) - code_->t()
                          : 1;
        std::vector<uint16_t> in_newest;
        for (uint16_t k : errs)
            if (k >= w_) in_newest.push_back(k);
        if (static_cast<int>(in_newest.size()) < j) return {};
        Syndrome syn2 = syn;
        for (int i = 0; i < j; ++i) syn2 ^= code_->bit_contribution(in_newest[i]);
        ++stats_.decode_calls;
        DecodeOutcome again = code_->decode_syndrome(syn2);
        if (!again.corrected) return {};
        std::vector<uint16_t> net =
            symmetric_difference({in_newest.data(), static_cast<size_t>(j)}, again.pattern());
        if (net != errs) return {};  // ideal MD also rejects any post-BF miscorrection
        apply_flips(a, net);
        return DecodeResult{true, j, std::move(net)};
    }

    const Stats& stats() const { return stats_; }
    void reset_stats() { stats_ = {}; }

    /// True error set of a codeword against the stored transmitted blocks.
    std::vector<uint16_t> true_errors(const CodewordAddress& a) const {
        std::vector<uint16_t> errs;
        for (int k = 0; k < 2 * w_; ++k) {
            BitLocation loc = locate_bit(a, k, w_);
            const Block& tr = *slots_[loc.block].truth;
            if (slots_[loc.block].bits.at(loc.row, loc.col) != tr.at(loc.row, loc.col))
                errs.push_back(static_cast<uint16_t>(k));
        }
        return errs;
    }

  private:
    struct Slot {
        Block bits;
        std::optional<Block> truth;
        bool frozen = false;
    };

    std::vector<Syndrome> compute_pair_syndromes(int pair) const {
        std::vector<Syndrome> syn(w_);
        const Block& older = slots_[pair - 1].bits;
        const Block& newer = slots_[pair].bits;
        for (int row = 0; row < w_; ++row) {
            Syndrome s;
            for (int k = 0; k < w_; ++k)
                if (older.at(k, row)) s ^= code_->bit_contribution(k);
            for (int k = 0; k < w_; ++k)
                if (newer.at(row, k)) s ^= code_->bit_contribution(w_ + k);
            syn[row] = s;
        }
        return syn;
    }

    void require_newest(const CodewordAddress& a) const {
        check(a.pair == cfg_.window_len - 1, "operation applies to the newest pair only");
    }

    bool plain_decode(const CodewordAddress& a) {
        ++stats_.decode_calls;
        DecodeOutcome out = code_->decode_syndrome(pair_syn_[a.pair][a.row]);
        if (!out.corrected) return false;
        std::vector<uint16_t> net(out.pattern().begin(), out.pattern().end());
        if (touches_frozen(a, net)) return false;
        apply_flips(a, net);
        return true;
    }

    bool touches_frozen(const CodewordAddress& a, std::span<const uint16_t> flips) const {
        for (uint16_t k : flips)
            if (slots_[locate_bit(a, k, w_).block].frozen) return true;
        return false;
    }

    /// The t+2 lowest-level non-HRB bits of the codeword's newest-block
    /// half, ties broken by bit index.
    std::vector<uint16_t> hub_pool(const CodewordAddress& a) const {
        const int cap = code_->t() + 2;
        std::vector<std::pair<float, uint16_t>> best;
        best.reserve(cap + 1);
        for (int c = 0; c < w_; ++c) {
            if (marks_.is_hrb(a.row, c)) continue;
            std::pair<float, uint16_t> cand{marks_.level_at(a.row, c),
                                            static_cast<uint16_t>(w_ + c)};
            auto it = std::upper_bound(best.begin(), best.end(), cand);
            if (it == best.end() && static_cast<int>(best.size()) >= cap) continue;
            best.insert(it, cand);
            if (static_cast<int>(best.size()) > cap) best.pop_back();
        }
        std::vector<uint16_t> pool;
        pool.reserve(best.size());
        for (auto& [lvl, k] : best) pool.push_back(k);
        return pool;
    }

    static std::vector<uint16_t> symmetric_difference(std::span<const uint16_t> a,
                                                      std::span<const uint16_t> b) {
        std::vector<uint16_t> sa(a.begin(), a.end()), sb(b.begin(), b.end());
        std::sort(sa.begin(), sa.end());
        std::sort(sb.begin(), sb.end());
        std::vector<uint16_t> out;
        std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                      std::back_inserter(out));
        return out;
    }

    void verify_hrb_inviolate(const CodewordAddress& a, std::span<const uint16_t> flips) const {
        if (cfg_.mode != DecodeMode::marked) return;
        for (uint16_t k : flips)
            check(k < w_ || !marks_.is_hrb(a.row, k - w_), "accepted flip lands on an HRB");
    }

    void apply_flips(const CodewordAddress& a, std::span<const uint16_t> flips) {
        bool count_mis = slots_[a.pair].truth && slots_[a.pair - 1].truth;
        std::vector<uint16_t> errs_before;
        if (count_mis) errs_before = true_errors(a);
        for (uint16_t k : flips) {
            BitLocation loc = locate_bit(a, k, w_);
            flip_bit(loc.block, loc.row, loc.col);
        }
        stats_.flips_applied += flips.size();
        if (count_mis) {
            std::vector<uint16_t> fl(flips.begin(), flips.end());
            std::sort(fl.begin(), fl.end());
            if (fl != errs_before) ++stats_.miscorrections_logged;
        }
    }

    std::shared_ptr<const ComponentCode> code_;
    DecoderConfig cfg_;
    int w_;
    std::vector<Slot> slots_;
    std::vector<std::vector<Syndrome>> pair_syn_;
    MarkPlane marks_;
    Stats stats_;
};

}  // namespace scfec
