// Copyright 2026 the scfec authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "scfec/gf.hpp"
#include "scfec/util.hpp"

namespace scfec {

/// Running syndrome of one component codeword: the two BCH power sums
/// plus the overall parity of the word (extension bit included).
struct Syndrome {
    uint32_t s1 = 0;
    uint32_t s3 = 0;
    uint8_t parity = 0;

    bool is_zero() const { return s1 == 0 && s3 == 0 && parity == 0; }

    Syndrome& operator^=(const Syndrome& o) {
        s1 ^= o.s1;
        s3 ^= o.s3;
        parity ^= o.parity;
        return *this;
    }
    friend Syndrome operator^(Syndrome a, const Syndrome& b) { return a ^= b; }
    friend bool operator==(const Syndrome&, const Syndrome&) = default;
};

/// Bounded-distance decoding result. `positions` lists the bits to flip,
/// sorted ascending; a failure carries no pattern and leaves the word as is.
struct DecodeOutcome {
    bool corrected = false;
    uint8_t weight = 0;
    std::array<uint16_t, 3> positions{};

    std::span<const uint16_t> pattern() const { return {positions.data(), weight}; }

    static DecodeOutcome failure() { return {}; }
    static DecodeOutcome success(std::initializer_list<uint16_t> pos) {
        DecodeOutcome o;
        o.corrected = true;
        for (uint16_t p : pos) o.positions[o.weight++] = p;
        std::sort(o.positions.begin(), o.positions.begin() + o.weight);
        return o;
    }
    friend bool operator==(const DecodeOutcome&, const DecodeOutcome&) = default;
};

/// Extended, optionally shortened, 2-error-correcting BCH component code.
///
/// Codeword layout (transmitted order): k message bits, then the BCH parity
/// bits, then one overall-parity bit. Shortening removes the leading
/// information positions of the mother code; they are implicit zeros and
/// never appear on the wire.
class ComponentCode {
  public:
    explicit ComponentCode(int field_degree, int shorten = 0, uint32_t primitive_poly = 0)
        : gf_(field_degree, primitive_poly ? primitive_poly : GaloisField::default_poly(field_degree)),
          shorten_(shorten) {
        build_generator();
        const int nm = static_cast<int>(gf_.size());         // extended mother length
        const int km = nm - 1 - gen_deg_;                     // mother dimension
        if (shorten_ < 0 || shorten_ >= km) throw UsageError("shortening must be in [0, k_mother)");
        n_ = nm - shorten_;
        k_ = km - shorten_;
        if (n_ % 2 != 0) throw UsageError("shortened length must be even (w = n/2)");
        build_position_tables();
    }

    /// Validates caller-supplied (n, k, t) mother parameters against the
    /// generator actually constructed for the field.
    static ComponentCode from_params(int mother_n, int mother_k, int t, int shorten = 0,
                                     uint32_t primitive_poly = 0) {
        if (t != 2) throw UsageError("only t=2 component codes are supported (--code)");
        int degree = 0;
        while ((1 << degree) < mother_n) ++degree;
        if ((1 << degree) != mother_n) throw UsageError("mother code length must be 2^m (--code)");
        ComponentCode code(degree, shorten, primitive_poly);
        if (code.mother_k() != mother_k)
            throw UsageError("mother code dimension does not match a t=2 extended BCH code (--code)");
        return code;
    }

    ComponentCode shortened(int s) const {
        check(shorten_ == 0, "shortened() applies to the mother code");
        return ComponentCode(gf_.degree(), s, gf_.poly());
    }

    const GaloisField& field() const { return gf_; }
    int n() const { return n_; }
    int k() const { return k_; }
    static constexpr int t() { return 2; }
    int shorten() const { return shorten_; }
    int mother_n() const { return static_cast<int>(gf_.size()); }
    int mother_k() const { return mother_n() - 1 - gen_deg_; }
    uint32_t generator_poly() const { return gen_low_ | (1u << gen_deg_); }
    int min_distance() const { return 2 * t() + 2; }  // d0 of the extended code
    int block_size() const { return n_ / 2; }         // staircase w
    int parity_len() const { return n_ - k_; }        // staircase p
    double rate() const { return 2.0 * k_ / n_ - 1.0; }

    void encode(std::span<const uint8_t> message, std::span<uint8_t> out) const {
        if (static_cast<int>(message.size()) != k_) throw UsageError("message length must be k");
        if (static_cast<int>(out.size()) != n_) throw UsageError("codeword buffer must be length n");
        // Systematic LFSR division by the generator; shortened leading zeros
        // contribute nothing and are skipped entirely.
        uint32_t reg = 0;
        const uint32_t mask = (1u << gen_deg_) - 1;
        for (int j = 0; j < k_; ++j) {
            uint32_t fb = (message[j] & 1u) ^ ((reg >> (gen_deg_ - 1)) & 1u);
            reg = ((reg << 1) & mask) ^ (fb ? gen_low_ : 0u);
            out[j] = message[j] & 1u;
        }
        uint8_t acc = 0;
        for (int j = 0; j < k_; ++j) acc ^= out[j];
        for (int i = 0; i < gen_deg_; ++i) {
            uint8_t bit = static_cast<uint8_t>((reg >> (gen_deg_ - 1 - i)) & 1u);
            out[k_ + i] = bit;
            acc ^= bit;
        }
        out[n_ - 1] = acc;  // extension bit: even overall parity
    }

    std::vector<uint8_t> encode(std::span<const uint8_t> message) const {
        std::vector<uint8_t> out(n_);
        encode(message, out);
        return out;
    }

    /// XOR-contribution of flipping bit `pos` to a running syndrome.
    Syndrome bit_contribution(int pos) const { return contrib_[pos]; }

    Syndrome syndrome_of(std::span<const uint8_t> word) const {
        if (static_cast<int>(word.size()) != n_) throw UsageError("word length must be n");
        Syndrome s;
        for (int i = 0; i < n_; ++i)
            if (word[i] & 1u) s ^= contrib_[i];
        return s;
    }

    /// Strict radius-t BDD from a syndrome. Success covers both genuine
    /// corrections and miscorrections; the decoder cannot tell them apart.
    /// The extension bit resolves the parity of the claimed pattern: any
    /// claim whose weight disagrees with the received word's parity would
    /// exceed radius t and is declared a failure instead.
    DecodeOutcome decode_syndrome(const Syndrome& syn) const {
        const uint16_t ext = static_cast<uint16_t>(n_ - 1);
        if (syn.s1 == 0 && syn.s3 == 0) {
            if (syn.parity == 0) return DecodeOutcome::success({});
            return DecodeOutcome::success({ext});
        }
        if (syn.s1 != 0 && syn.s3 == gf_.cube(syn.s1)) {
            int pos = position_of(syn.s1);
            if (pos < 0) return DecodeOutcome::failure();
            if (syn.parity) return DecodeOutcome::success({static_cast<uint16_t>(pos)});
            return DecodeOutcome::success({static_cast<uint16_t>(pos), ext});
        }
        if (syn.s1 == 0) return DecodeOutcome::failure();  // s3 != 0: >= 3 errors
        // Two errors: locators are the roots of x^2 + s1*x + (s1^3+s3)/s1.
        uint32_t d = gf_.mul(syn.s3, gf_.inv(gf_.cube(syn.s1))) ^ 1u;
        auto u = gf_.solve_quadratic(d);
        if (!u) return DecodeOutcome::failure();
        uint32_t x1 = gf_.mul(syn.s1, *u);
        uint32_t x2 = x1 ^ syn.s1;
        if (x1 == 0 || x2 == 0) return DecodeOutcome::failure();
        int p1 = position_of(x1);
        int p2 = position_of(x2);
        if (p1 < 0 || p2 < 0) return DecodeOutcome::failure();
        if (syn.parity) return DecodeOutcome::failure();  // two flips need even parity
        return DecodeOutcome::success({static_cast<uint16_t>(p1), static_cast<uint16_t>(p2)});
    }

    DecodeOutcome bdd_decode(std::span<const uint8_t> word) const {
        return decode_syndrome(syndrome_of(word));
    }

  private:
    void build_generator() {
        // g = minpoly(alpha) * minpoly(alpha^3), narrow-sense t=2.
        auto minimal_poly = [&](uint32_t root_exp) {
            std::vector<uint32_t> cls;
            uint32_t e = root_exp;
            do {
                cls.push_back(e);
                e = (2 * e) % gf_.order();
            } while (e != root_exp);
            std::vector<uint32_t> poly{1};  // GF(2^m) coefficients, index = degree
            for (uint32_t ex : cls) {
                uint32_t r = gf_.alpha_pow(ex);
                std::vector<uint32_t> next(poly.size() + 1, 0);
                for (size_t i = 0; i < poly.size(); ++i) {
                    next[i + 1] ^= poly[i];
                    next[i] ^= gf_.mul(poly[i], r);
                }
                poly = std::move(next);
            }
            uint32_t bits = 0;
            for (size_t i = 0; i < poly.size(); ++i) {
                check(poly[i] <= 1, "minimal polynomial has non-binary coefficient");
                bits |= poly[i] << i;
            }
            return bits;
        };
        auto poly_mul_gf2 = [](uint32_t a, uint32_t b) {
            uint32_t r = 0;
            for (int i = 0; a >> i; ++i)
                if ((a >> i) & 1u) r ^= b << i;
            return r;
        };
        uint32_t g = poly_mul_gf2(minimal_poly(1), minimal_poly(3));
        gen_deg_ = 0;
        while (g >> (gen_deg_ + 1)) ++gen_deg_;
        gen_low_ = g & ((1u << gen_deg_) - 1);
    }

    void build_position_tables() {
        const uint32_t nb = gf_.order();  // mother BCH length 2^m - 1
        contrib_.resize(n_);
        pos_of_log_.assign(nb, -1);
        for (int pos = 0; pos < n_ - 1; ++pos) {
            uint32_t deg = nb - 1 - shorten_ - pos;  // polynomial degree of this bit
            contrib_[pos] = Syndrome{gf_.alpha_pow(deg), gf_.alpha_pow(3 * deg), 1};
            pos_of_log_[deg] = pos;
        }
        contrib_[n_ - 1] = Syndrome{0, 0, 1};  // extension bit has no locator
    }

    int position_of(uint32_t locator) const { return pos_of_log_[gf_.log(locator)]; }

    GaloisField gf_;
    int shorten_;
    int n_ = 0;
    int k_ = 0;
    int gen_deg_ = 0;
    uint32_t gen_low_ = 0;
    std::vector<Syndrome> contrib_;
    std::vector<int> pos_of_log_;
};

}  // namespace scfec
