// Copyright 2026 the scfec authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "scfec/util.hpp"

namespace scfec {

/// GF(2^m) arithmetic backed by log/antilog tables, m in [4, 10].
///
/// The table generator doubles as a primitivity check: if the supplied
/// polynomial is not primitive the generator element cycles early and
/// construction fails.
class GaloisField {
  public:
    static constexpr uint32_t kNoSolution = 0xffffffffu;

    GaloisField(int degree, uint32_t primitive_poly) : degree_(degree), poly_(primitive_poly) {
        if (degree < 4 || degree > 10) throw UsageError("field degree must be in [4, 10]");
        if ((poly_ >> degree) != 1u) throw UsageError("primitive polynomial degree mismatch");

        const uint32_t n = order();
        alog_.assign(2 * n, 0);
        log_.assign(size(), 0);
        std::vector<uint8_t> seen(size(), 0);
        uint32_t x = 1;
        for (uint32_t i = 0; i < n; ++i) {
            if (seen[x]) throw UsageError("polynomial is not primitive (generator order < 2^m - 1)");
            seen[x] = 1;
            alog_[i] = x;
            alog_[i + n] = x;  // doubled table, saves a mod in mul()
            log_[x] = i;
            x <<= 1;
            if (x >> degree) x ^= poly_;
        }
        if (x != 1) throw UsageError("polynomial is not primitive (alpha^(2^m-1) != 1)");

        // Solutions of u^2 + u = d, keyed by d. Exactly half the field is
        // solvable; the stored root is the one with bit 0 clear (the other
        // root is u ^ 1).
        qsolve_.assign(size(), kNoSolution);
        for (uint32_t u = 0; u < size(); ++u) {
            uint32_t d = mul(u, u) ^ u;
            if (qsolve_[d] == kNoSolution) qsolve_[d] = u & ~1u;
        }
    }

    static uint32_t default_poly(int degree) {
        switch (degree) {
            case 4: return 0x13;    // x^4+x+1
            case 5: return 0x25;    // x^5+x^2+1
            case 6: return 0x43;    // x^6+x+1
            case 7: return 0x89;    // x^7+x^3+1
            case 8: return 0x11d;   // x^8+x^4+x^3+x^2+1
            case 9: return 0x211;   // x^9+x^4+1
            case 10: return 0x409;  // x^10+x^3+1
            default: throw UsageError("no default primitive polynomial for this degree");
        }
    }

    int degree() const { return degree_; }
    uint32_t poly() const { return poly_; }
    uint32_t size() const { return 1u << degree_; }
    uint32_t order() const { return size() - 1; }  // multiplicative group order

    uint32_t mul(uint32_t a, uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return alog_[log_[a] + log_[b]];
    }

    uint32_t cube(uint32_t a) const {
        if (a == 0) return 0;
        return alog_[(3 * log_[a]) % order()];
    }

    uint32_t inv(uint32_t a) const {
        check(a != 0, "inverse of zero");
        return alog_[order() - log_[a]];
    }

    uint32_t alpha_pow(uint32_t e) const { return alog_[e % order()]; }
    uint32_t log(uint32_t a) const {
        check(a != 0, "log of zero");
        return log_[a];
    }

    /// Roots of u^2 + u = d, if any; the companion root is the result ^ 1.
    std::optional<uint32_t> solve_quadratic(uint32_t d) const {
        uint32_t u = qsolve_[d];
        if (u == kNoSolution) return std::nullopt;
        return u;
    }

  private:
    int degree_;
    uint32_t poly_;
    std::vector<uint32_t> alog_;
    std::vector<uint32_t> log_;
    std::vector<uint32_t> qsolve_;
};

}  // namespace scfec
