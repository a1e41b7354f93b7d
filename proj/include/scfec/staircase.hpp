// Copyright 2026 the scfec authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "scfec/bch.hpp"
#include "scfec/util.hpp"

namespace scfec {

/// One w-by-w staircase block of hard bits, row-major.
struct Block {
    int side = 0;
    std::vector<uint8_t> bits;

    Block() = default;
    static Block zeros(int side) {
        Block b;
        b.side = side;
        b.bits.assign(static_cast<size_t>(side) * side, 0);
        return b;
    }

    uint8_t at(int r, int c) const { return bits[static_cast<size_t>(r) * side + c]; }
    void set(int r, int c, uint8_t v) { bits[static_cast<size_t>(r) * side + c] = v & 1u; }
    void flip(int r, int c) { bits[static_cast<size_t>(r) * side + c] ^= 1u; }

    friend bool operator==(const Block&, const Block&) = default;
};

/// Row-major bit stream of a block; deserialize_bits inverts it.
inline std::vector<uint8_t> serialize_bits(const Block& b) { return b.bits; }

inline Block deserialize_bits(std::span<const uint8_t> stream, int side) {
    if (static_cast<int>(stream.size()) != side * side)
        throw UsageError("bit stream length must be side^2");
    Block b;
    b.side = side;
    b.bits.assign(stream.begin(), stream.end());
    return b;
}

/// Component codeword address within a decoding window: pair i couples
/// window blocks i-1 (transposed, the older) and i (the newer); row j picks
/// one of the w codewords of that pair.
struct CodewordAddress {
    int pair = 1;   // in [1, L-1]
    int row = 0;    // in [0, w)
    friend bool operator==(const CodewordAddress&, const CodewordAddress&) = default;
};

struct BitLocation {
    int block;  // window slot index
    int row;
    int col;
    friend bool operator==(const BitLocation&, const BitLocation&) = default;
};

/// Maps codeword bit k of address (pair, row) onto a physical block bit.
/// Bits k < w read column `row` of the older block top to bottom; bits
/// k >= w read row `row` of the newer block left to right.
inline BitLocation locate_bit(const CodewordAddress& a, int k, int w) {
    if (k < w) return BitLocation{a.pair - 1, k, a.row};
    return BitLocation{a.pair, a.row, k - w};
}

/// Inverse of locate_bit for a bit known to belong to pair `pair`.
inline std::pair<CodewordAddress, int> address_of_bit(int pair, const BitLocation& loc, int w) {
    if (loc.block == pair - 1) return {CodewordAddress{pair, loc.col}, loc.row};
    check(loc.block == pair, "bit does not belong to this pair");
    return {CodewordAddress{pair, loc.row}, w + loc.col};
}

/// Encodes the next staircase block: every row j of [prev^T | out] is a
/// component codeword. Information bits fill columns [0, w-p) of `out`
/// row-major, parity lands in the trailing p columns.
inline Block encode_block(const ComponentCode& code, const Block& prev,
                          std::span<const uint8_t> info) {
    const int w = code.block_size();
    const int p = code.parity_len();
    if (prev.side != w) throw UsageError("previous block has wrong dimensions");
    if (static_cast<int>(info.size()) != w * (w - p))
        throw UsageError("info payload must be w x (w-p) bits");

    Block out = Block::zeros(w);
    std::vector<uint8_t> message(static_cast<size_t>(code.k()));
    std::vector<uint8_t> codeword(static_cast<size_t>(code.n()));
    for (int j = 0; j < w; ++j) {
        for (int r = 0; r < w; ++r) message[r] = prev.at(r, j);           // column j of prev
        for (int c = 0; c < w - p; ++c) message[w + c] = info[j * (w - p) + c];
        code.encode(message, codeword);
        for (int c = 0; c < w; ++c) out.set(j, c, codeword[w + c]);
    }
    return out;
}

/// Streaming staircase encoder; block 0 is the all-zero block.
class StaircaseEncoder {
  public:
    explicit StaircaseEncoder(const ComponentCode& code)
        : code_(&code), prev_(Block::zeros(code.block_size())) {}

    const Block& previous() const { return prev_; }

    Block next(std::span<const uint8_t> info) {
        Block b = encode_block(*code_, prev_, info);
        prev_ = b;
        return b;
    }

  private:
    const ComponentCode* code_;
    Block prev_;
};

}  // namespace scfec
