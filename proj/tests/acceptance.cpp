// Copyright 2026 the scfec authors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one self-contained check per release criterion, one
// PASS/FAIL line each, nonzero exit if anything fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "scenario.hpp"
#include "scfec/cli.hpp"

using namespace scfec;
using namespace scfec_test;

namespace {

int g_failures = 0;

class Criterion {
  public:
    Criterion(int id, std::string name) : id_(id), name_(std::move(name)) {
        start_ = std::chrono::steady_clock::now();
    }

    void require(bool cond, const std::string& detail) {
        if (!cond) {
            ok_ = false;
            notes_ += (notes_.empty() ? "" : "; ") + detail;
        }
    }

    void note(const std::string& s) { notes_ += (notes_.empty() ? "" : "; ") + s; }

    ~Criterion() {
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::printf("[%s] criterion %d: %s%s%s (%.1f s)\n", ok_ ? "PASS" : "FAIL", id_,
                    name_.c_str(), notes_.empty() ? "" : " -- ", notes_.c_str(), secs);
        std::fflush(stdout);
        if (!ok_) ++g_failures;
    }

  private:
    int id_;
    std::string name_;
    bool ok_ = true;
    std::string notes_;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

// ---------------------------------------------------------------------------
// criterion 1: syndrome BDD equals the brute-force sphere oracle

void criterion1() {
    Criterion c(1, "BDD matches the brute-force sphere oracle on (26,13,2)");
    auto t0 = std::chrono::steady_clock::now();
    ComponentCode code(6, 38);  // extended (64,51,2) over GF(2^6), shortened by 38
    c.require(code.n() == 26 && code.k() == 13, "small code dimensions wrong");
    SphereOracle oracle(code);
    c.require(oracle.min_distance() == 6, "small code minimum distance is not 6");

    std::mt19937 rng(1001);
    const int n = code.n();
    uint64_t checked = 0, mismatches = 0;
    auto check_word = [&](uint32_t word) {
        DecodeOutcome mine = code.bdd_decode(unpack_word(word, n));
        DecodeOutcome want = oracle.decode(word);
        ++checked;
        if (!(mine == want)) ++mismatches;
    };

    std::vector<uint8_t> msg(code.k());
    for (int cw_i = 0; cw_i < 50; ++cw_i) {
        for (auto& b : msg) b = rng() & 1u;
        uint32_t cw = pack_word(code.encode(msg));
        check_word(cw);
        for (int a = 0; a < n; ++a) {
            check_word(cw ^ (1u << a));
            for (int b = a + 1; b < n; ++b) {
                check_word(cw ^ (1u << a) ^ (1u << b));
                for (int d = b + 1; d < n; ++d)
                    check_word(cw ^ (1u << a) ^ (1u << b) ^ (1u << d));
            }
        }
    }
    for (int i = 0; i < 100000; ++i) check_word(rng() & ((1u << n) - 1));

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(mismatches == 0, std::to_string(mismatches) + " oracle mismatches");
    c.require(secs < 120.0, "runtime over 2 minutes");
    c.note(std::to_string(checked) + " words checked");
}

// ---------------------------------------------------------------------------
// criterion 2: constructed code parameters and rates

void criterion2() {
    Criterion c(2, "code parameters reproduce the quoted geometry and rates");
    ComponentCode r87 = ComponentCode::from_params(256, 239, 2);
    c.require(r87.n() == 256 && r87.k() == 239 && r87.block_size() == 128 &&
                  r87.parity_len() == 17,
              "(256,239,2) geometry wrong");
    ComponentCode mother = ComponentCode::from_params(512, 493, 2);
    ComponentCode r83 = mother.shortened(284);
    ComponentCode r92 = mother.shortened(8);
    c.require(r83.n() == 228 && r83.k() == 209 && r83.t() == 2, "(228,209,2) geometry wrong");
    c.require(r92.n() == 504 && r92.k() == 485 && r92.t() == 2, "(504,485,2) geometry wrong");
    c.require(std::abs(r87.rate() - 0.8672) < 5e-5, "rate(256,239) != 0.8672");
    c.require(std::abs(r83.rate() - 0.8333) < 5e-5, "rate(228,209) != 0.8333");
    c.require(std::abs(r92.rate() - 0.9246) < 5e-5, "rate(504,485) != 0.9246");
    for (const ComponentCode* cc : {&r87, &r83, &r92}) {
        long lhs = static_cast<long>(2 * cc->k() - cc->n()) * cc->block_size();
        long rhs = static_cast<long>(cc->block_size() - cc->parity_len()) * cc->n();
        c.require(lhs == rhs, "rate identities disagree");
    }
}

// ---------------------------------------------------------------------------
// criterion 3: exact 2-PAM LLR closed form

void criterion3() {
    Criterion c(3, "2-PAM LLRs equal 2*sqrt(rho)*y within 1e-9");
    std::mt19937 rng(1003);
    std::normal_distribution<double> dist(0.0, 4.0);
    double worst = 0.0;
    for (double rho : {1.0, 4.0, 10.0}) {
        ChannelConfig cfg{2, rho};
        std::vector<double> y(10000);
        for (auto& v : y) v = dist(rng);
        auto llrs = compute_llrs(y, cfg);
        for (size_t i = 0; i < y.size(); ++i)
            worst = std::max(worst, std::abs(llrs[i] - 2.0 * std::sqrt(rho) * y[i]));
    }
    c.require(worst < 1e-9, "max deviation " + fmt(worst));
    c.note("max deviation " + fmt(worst));
}

// ---------------------------------------------------------------------------
// criterion 4: the marked-decoding scenario suite at (256,239,2)

std::shared_ptr<const ComponentCode> big_code() {
    static auto code = std::make_shared<const ComponentCode>(8);
    return code;
}

DecoderConfig big_cfg() {
    DecoderConfig cfg;
    cfg.mode = DecodeMode::marked;
    cfg.window_len = 9;
    cfg.max_iters = 7;
    return cfg;
}

void criterion4() {
    Criterion c(4, "scenario suite on a (256,239,2) window");
    auto code = big_code();
    const int w = code->block_size();
    DecoderConfig cfg = big_cfg();
    const int newest = cfg.window_len - 1;

    {  // (a) success flipping into a zero-syndrome crossing codeword is rejected
        std::mt19937 rng(2001);
        DecoderConfig nobf = cfg;
        nobf.bit_flipping = false;
        CleanWindow cw = make_clean_window(code, nobf, 2001);
        CodewordAddress addr{newest, 40};
        auto g = find_weight6_split(*code, 2, rng);
        std::vector<int> older, newer;
        for (int p : g) (p < w ? older : newer).push_back(p);
        inject_errors(cw.win, addr, {older[1], newer[1], newer[2], newer[3]});
        DecodeOutcome out = code->decode_syndrome(cw.win.syndrome(addr));
        c.require(out.corrected && out.weight == 2, "(a) staged miscorrection did not decode");
        c.require(cw.win.md_check(addr, out.pattern()), "(a) zero-syndrome conflict not flagged");
        auto before = snapshot(cw.win);
        c.require(!cw.win.decode_codeword_enhanced(addr).accepted, "(a) decode was accepted");
        c.require(window_equals(cw.win, before), "(a) window changed");
    }
    {  // (b) success flipping an HRB in the newest block is rejected
        std::mt19937 rng(2002);
        DecoderConfig nobf = cfg;
        nobf.bit_flipping = false;
        CleanWindow cw = make_clean_window(code, nobf, 2002);
        CodewordAddress addr{newest, 77};
        auto g = find_weight6_split(*code, 2, rng);
        std::vector<int> older, newer;
        for (int p : g) (p < w ? older : newer).push_back(p);
        inject_errors(cw.win, addr, {older[0], older[1], newer[2], newer[3]});
        MarkPlane marks = uniform_marks(w, 31.0f);
        marks.hrb[static_cast<size_t>(addr.row) * w + (newer[0] - w)] = 1;
        cw.win.set_marks(marks);
        DecodeOutcome out = code->decode_syndrome(cw.win.syndrome(addr));
        c.require(out.corrected && out.weight == 2, "(b) staged miscorrection did not decode");
        for (uint16_t k : out.pattern()) c.require(k >= w, "(b) flips not in the newest block");
        c.require(cw.win.md_check(addr, out.pattern()), "(b) HRB flip not flagged");
        auto before = snapshot(cw.win);
        c.require(!cw.win.decode_codeword_enhanced(addr).accepted, "(b) decode was accepted");
        c.require(window_equals(cw.win, before), "(b) window changed");
    }
    {  // (c) three-error failure, lowest-level HUB is a true error: Case-1 corrects
        CleanWindow cw = make_clean_window(code, cfg, 2003);
        CodewordAddress addr{newest, 101};
        const int hub_col = 64;
        inject_errors(cw.win, addr, {33, 90, w + hub_col});
        MarkPlane marks = uniform_marks(w, 31.0f);
        marks.level[static_cast<size_t>(addr.row) * w + hub_col] = 0.0f;
        cw.win.set_marks(marks);
        c.require(!code->decode_syndrome(cw.win.syndrome(addr)).corrected,
                  "(c) three errors unexpectedly decoded");
        auto res = cw.win.decode_codeword_enhanced(addr);
        c.require(res.accepted && res.bf_flips == 1, "(c) Case-1 recovery did not run");
        c.require(window_equals(cw.win, cw.truth), "(c) window not fully corrected");
    }
    {  // (d) detected miscorrection, wH(e)=1: exactly 3 HUBs flipped, full correction
        std::mt19937 rng(2004);
        CleanWindow cw = make_clean_window(code, cfg, 2004);
        CodewordAddress addr{newest, 9};
        auto g = find_weight6_split(*code, 3, rng);
        std::vector<int> older, newer;
        for (int p : g) (p < w ? older : newer).push_back(p);
        inject_errors(cw.win, addr, {older[1], older[2], newer[0], newer[1], newer[2]});
        MarkPlane marks = uniform_marks(w, 31.0f);
        for (int i = 0; i < 3; ++i)
            marks.level[static_cast<size_t>(addr.row) * w + (newer[i] - w)] =
                static_cast<float>(i + 1);
        cw.win.set_marks(marks);
        DecodeOutcome out = code->decode_syndrome(cw.win.syndrome(addr));
        c.require(out.corrected && out.weight == 1, "(d) staged wH(e)=1 miscorrection failed");
        c.require(cw.win.md_check(addr, out.pattern()), "(d) miscorrection not detected");
        auto res = cw.win.decode_codeword_enhanced(addr);
        c.require(res.accepted, "(d) recovery rejected");
        c.require(res.bf_flips == 3, "(d) flipped " + std::to_string(res.bf_flips) + " HUBs");
        c.require(window_equals(cw.win, cw.truth), "(d) window not fully corrected");
    }
    {  // (d') detected miscorrection, wH(e)=2: exactly 2 HUBs flipped
        std::mt19937 rng(2005);
        CleanWindow cw = make_clean_window(code, cfg, 2005);
        CodewordAddress addr{newest, 120};
        auto g = find_weight6_split(*code, 2, rng);
        std::vector<int> older, newer;
        for (int p : g) (p < w ? older : newer).push_back(p);
        inject_errors(cw.win, addr, {older[1], newer[1], newer[2], newer[3]});
        MarkPlane marks = uniform_marks(w, 31.0f);
        marks.level[static_cast<size_t>(addr.row) * w + (newer[1] - w)] = 1.0f;
        marks.level[static_cast<size_t>(addr.row) * w + (newer[2] - w)] = 2.0f;
        cw.win.set_marks(marks);
        DecodeOutcome out = code->decode_syndrome(cw.win.syndrome(addr));
        c.require(out.corrected && out.weight == 2, "(d') staged wH(e)=2 miscorrection failed");
        c.require(cw.win.md_check(addr, out.pattern()), "(d') miscorrection not detected");
        auto res = cw.win.decode_codeword_enhanced(addr);
        c.require(res.accepted && res.bf_flips == 2, "(d') did not flip exactly 2 HUBs");
        c.require(window_equals(cw.win, cw.truth), "(d') window not fully corrected");
    }
    {  // (e) rejected recovery leaves the window bit-identical
        std::mt19937 rng(2006);
        CleanWindow cw = make_clean_window(code, cfg, 2006);
        CodewordAddress addr{newest, 55};
        auto g = find_weight6_split(*code, 2, rng);
        std::vector<int> older, newer;
        for (int p : g) (p < w ? older : newer).push_back(p);
        inject_errors(cw.win, addr, {older[1], newer[1], newer[2], newer[3]});
        // point the two lowest HUB levels at wrong bits whose flip provably
        // cannot decode, so the Case-2 attempt must revert
        Syndrome syn = cw.win.syndrome(addr);
        int wrong1 = -1, wrong2 = -1;
        for (int c1 = 0; c1 < w && wrong2 < 0; ++c1) {
            if (std::count(g.begin(), g.end(), w + c1)) continue;
            for (int c2 = c1 + 1; c2 < w; ++c2) {
                if (std::count(g.begin(), g.end(), w + c2)) continue;
                Syndrome s2 = syn ^ code->bit_contribution(w + c1) ^ code->bit_contribution(w + c2);
                if (!code->decode_syndrome(s2).corrected) {
                    wrong1 = c1;
                    wrong2 = c2;
                    break;
                }
            }
        }
        c.require(wrong1 >= 0, "(e) no provably failing flip pair found");
        MarkPlane marks = uniform_marks(w, 31.0f);
        marks.level[static_cast<size_t>(addr.row) * w + wrong1] = 1.0f;
        marks.level[static_cast<size_t>(addr.row) * w + wrong2] = 2.0f;
        cw.win.set_marks(marks);
        auto before = snapshot(cw.win);
        auto res = cw.win.decode_codeword_enhanced(addr);
        c.require(!res.accepted, "(e) recovery unexpectedly accepted");
        c.require(window_equals(cw.win, before), "(e) window changed after a rejected recovery");
        for (int r = 0; r < w; ++r) {
            std::vector<uint8_t> word(code->n());
            CodewordAddress a{newest, r};
            for (int k = 0; k < code->n(); ++k) word[k] = cw.win.bit(a, k);
            c.require(cw.win.syndrome(a) == code->syndrome_of(word),
                      "(e) syndrome cache diverged");
        }
    }
}

// ---------------------------------------------------------------------------
// criteria 5-8: full-scale simulation properties

constexpr double kWaterfallSnrDb = 7.23;  // standard-mode BER sits in 1e-4..1e-3 here
constexpr uint64_t kSeed = 20260808;

SweepConfig sim_config(DecodeMode mode, uint64_t min_errors, uint64_t max_bits,
                       unsigned workers) {
    SweepConfig cfg;
    cfg.code = big_code();
    cfg.channel.mod_order = 2;
    cfg.decoder = big_cfg();
    cfg.decoder.mode = mode;
    cfg.snr_db = {kWaterfallSnrDb};
    cfg.stop.min_errors = min_errors;
    cfg.stop.max_bits = max_bits;
    cfg.workers = workers;
    cfg.base_seed = kSeed;
    return cfg;
}

void criterion5() {
    Criterion c(5, "mode degeneracy: ablated marked equals smith, then standard");
    // three streams of 200 counted blocks each: 1.07e7 transmitted channel bits
    const uint64_t budget = 9800000;
    auto run = [&](DecodeMode mode, bool zs_rule) {
        SweepConfig cfg = sim_config(mode, ~0ull, budget, 2);
        cfg.decoder.hrb_threshold =
            mode == DecodeMode::marked ? std::numeric_limits<double>::infinity() : 10.0;
        cfg.decoder.bit_flipping = mode != DecodeMode::marked;
        cfg.decoder.zero_syndrome_rule = zs_rule;
        return run_point(cfg, 0);
    };
    SimPoint marked_abl = run(DecodeMode::marked, true);
    SimPoint smith = run(DecodeMode::smith_md, true);
    c.require(marked_abl.streams == 3 && marked_abl.bits >= budget, "unexpected stream count");
    c.require(marked_abl.bit_errors == smith.bit_errors && marked_abl.digest == smith.digest,
              "delta=inf + BF-off marked differs from smith");
    SimPoint marked_abl2 = run(DecodeMode::marked, false);
    SimPoint standard = run(DecodeMode::standard, true);
    c.require(marked_abl2.bit_errors == standard.bit_errors &&
                  marked_abl2.digest == standard.digest,
              "fully ablated marked differs from standard");
    c.note("streams=" + std::to_string(marked_abl.streams) +
           " errors=" + std::to_string(marked_abl.bit_errors) + "/" +
           std::to_string(standard.bit_errors));
}

struct WaterfallRuns {
    SimPoint standard, marked, mcf, lb;
};

WaterfallRuns run_waterfall(unsigned workers) {
    WaterfallRuns r;
    r.standard = run_point(sim_config(DecodeMode::standard, 500, 600000000ull, workers), 0);
    r.marked = run_point(sim_config(DecodeMode::marked, 500, 600000000ull, workers), 0);
    r.mcf = run_point(sim_config(DecodeMode::genie_mcf, 500, 150000000ull, workers), 0);
    r.lb = run_point(sim_config(DecodeMode::genie_lb, 500, 150000000ull, workers), 0);
    return r;
}

WaterfallRuns g_runs8;  // shared between criteria 6, 7 and 8

void criterion6() {
    Criterion c(6, "desk-scale waterfall ordering at 7.23 dB");
    auto t0 = std::chrono::steady_clock::now();
    g_runs8 = run_waterfall(8);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < 1800.0, "runtime over 30 minutes");
    const SimPoint& s = g_runs8.standard;
    const SimPoint& m = g_runs8.marked;
    const SimPoint& mcf = g_runs8.mcf;
    const SimPoint& lb = g_runs8.lb;

    c.require(s.ber() >= 1e-4 && s.ber() <= 1e-3,
              "standard BER " + fmt(s.ber()) + " outside 1e-4..1e-3");
    c.require(s.bit_errors >= 500, "standard under 500 errors");
    c.require(m.bit_errors >= 500, "marked under 500 errors");

    auto [s_lo, s_hi] = wilson_interval(s.bit_errors, s.bits);
    auto [m_lo, m_hi] = wilson_interval(m.bit_errors, m.bits);
    auto [f_lo, f_hi] = wilson_interval(mcf.bit_errors, mcf.bits);
    double s_hw = (s_hi - s_lo) / 2.0, m_hw = (m_hi - m_lo) / 2.0, f_hw = (f_hi - f_lo) / 2.0;

    c.require(lb.ber() <= m.ber(), "genie-lb above marked");
    c.require(m.ber() < s.ber() && s.ber() - m.ber() > s_hw + m_hw,
              "marked not separated below standard");
    c.require(mcf.ber() < s.ber() && s.ber() - mcf.ber() > s_hw + f_hw,
              "genie-mcf not separated below standard");
    c.note("ber std=" + fmt(s.ber()) + " marked=" + fmt(m.ber()) + " mcf=" + fmt(mcf.ber()) +
           " lb=" + fmt(lb.ber()));
}

void criterion7() {
    Criterion c(7, "genie-mcf accepts zero miscorrections");
    c.require(g_runs8.mcf.miscorrections == 0,
              std::to_string(g_runs8.mcf.miscorrections) + " miscorrections logged");
    c.note("checked over " + std::to_string(g_runs8.mcf.bits) + " bits");
}

void criterion8() {
    Criterion c(8, "worker counts 1 and 8 give identical counts");
    WaterfallRuns r1 = run_waterfall(1);
    auto same = [&](const SimPoint& a, const SimPoint& b) {
        return a.bits == b.bits && a.bit_errors == b.bit_errors && a.blocks == b.blocks &&
               a.digest == b.digest;
    };
    c.require(same(r1.standard, g_runs8.standard), "standard differs");
    c.require(same(r1.marked, g_runs8.marked), "marked differs");
    c.require(same(r1.mcf, g_runs8.mcf), "genie-mcf differs");
    c.require(same(r1.lb, g_runs8.lb), "genie-lb differs");
}

}  // namespace

int main() {
    std::printf("scfec acceptance suite (%s)\n", kVersion);
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
