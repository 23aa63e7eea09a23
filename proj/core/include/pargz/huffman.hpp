#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pargz/bit_reader.hpp"

namespace pargz {

/// Canonical Huffman decoder with a root lookup table plus per-prefix
/// subtables for codes longer than the root width (codeword length in
/// DEFLATE is at most 15 bits).
///
/// Codewords are transmitted MSB-first while the bit reader hands bits out
/// LSB-first, so tables are indexed by the bit-reversed codeword.
class HuffmanTable {
  public:
    static constexpr unsigned kMaxCodeLen = 15;

    /// Build a decode table from symbol code lengths (0 = unused symbol),
    /// assigning codewords in canonical RFC 1951 order.
    ///
    /// Returns false for an over-subscribed set of lengths, or for an
    /// incomplete set, with two exceptions matching common validator
    /// behavior: exactly one symbol of length 1 when
    /// `allow_single_incomplete` is set, and an all-unused alphabet, which
    /// builds a table that rejects every input (a distance table is allowed
    /// to exist and never be used).
    bool build(std::span<const std::uint8_t> lengths, unsigned root_bits, bool allow_single_incomplete);

    /// Decode one symbol, consuming its bits. Returns -1 on an invalid
    /// codeword, consuming nothing. The caller must have refilled the
    /// reader since the last consume (at most 15 bits are examined).
    int decode(BitReader& br) const
    {
        const Entry* e = &slots_[br.peek(root_bits_)];
        if (e->kind == kLink) {
            br.consume(root_bits_);
            e = &slots_[e->payload + br.peek(e->bits)];
        }
        if (e->kind != kSymbol) [[unlikely]]
            return -1;
        br.consume(e->bits);
        return e->payload;
    }

  private:
    static constexpr std::uint8_t kInvalid = 0;
    static constexpr std::uint8_t kSymbol = 1;
    static constexpr std::uint8_t kLink = 2;

    struct Entry {
        std::uint16_t payload; // symbol value, or subtable offset for links
        std::uint8_t bits;     // bits consumed by this entry (for links: subtable index width)
        std::uint8_t kind;
    };

    std::vector<Entry> slots_;
    std::vector<std::uint8_t> sub_width_;  // build scratch, per root prefix
    std::vector<std::uint32_t> sub_base_;  // build scratch, per root prefix
    unsigned root_bits_ = 0;
};

} // namespace pargz
