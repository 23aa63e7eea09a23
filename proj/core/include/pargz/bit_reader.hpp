#pragma once

#include <cassert>
#include <cstdint>
#include <cstring>
#include <span>

namespace pargz {

/// LSB-first bit reader over an in-memory buffer, as DEFLATE packs its
/// streams: bits fill each byte starting at the least significant bit, and
/// multi-bit fields are read low bit first.
///
/// Positions are absolute bit offsets into the buffer, so block start
/// positions can be exchanged with the sync search and the chunk planner.
/// Reads past the end of the buffer yield zero bits instead of failing;
/// callers detect that after the fact through overrun(). This keeps the
/// decode loops branch-light while still making truncation detectable at
/// every block boundary.
class BitReader {
  public:
    explicit BitReader(std::span<const std::uint8_t> data, std::uint64_t start_bit = 0)
      : data_(data.data())
      , size_(data.size())
    {
        seek(start_bit);
    }

    /// Reposition to an absolute bit offset. Cheap; used heavily by the
    /// block-start search.
    void seek(std::uint64_t bit_pos)
    {
        next_byte_ = bit_pos >> 3;
        acc_ = 0;
        acc_bits_ = 0;
        refill();
        const unsigned skip = static_cast<unsigned>(bit_pos & 7);
        acc_ >>= skip;
        acc_bits_ -= static_cast<int>(skip);
    }

    /// Absolute bit offset of the next unread bit (may exceed the buffer
    /// once phantom zero bits have been consumed).
    std::uint64_t bit_pos() const { return (next_byte_ << 3) - static_cast<std::uint64_t>(acc_bits_); }

    std::uint64_t total_bits() const { return static_cast<std::uint64_t>(size_) << 3; }

    /// True once more bits were consumed than the buffer holds.
    bool overrun() const { return bit_pos() > total_bits(); }

    std::int64_t bits_remaining() const
    {
        return static_cast<std::int64_t>(total_bits()) - static_cast<std::int64_t>(bit_pos());
    }

    /// Top up the accumulator to at least 57 available bits (phantom zeros
    /// past the end). One refill covers a full literal/length + distance
    /// token in the worst case.
    void refill()
    {
        while (acc_bits_ <= 56) {
            const std::uint64_t b = next_byte_ < size_ ? data_[next_byte_] : 0;
            acc_ |= b << acc_bits_;
            acc_bits_ += 8;
            ++next_byte_;
        }
    }

    /// Low `n` bits of the accumulator without consuming. Requires a prior
    /// refill() since the last consume of more than 7 bits.
    std::uint32_t peek(unsigned n) const
    {
        assert(n >= 1 && n <= 32 && static_cast<int>(n) <= acc_bits_);
        return static_cast<std::uint32_t>(acc_) & ((UINT32_C(1) << n) - 1);
    }

    void consume(unsigned n)
    {
        assert(static_cast<int>(n) <= acc_bits_);
        acc_ >>= n;
        acc_bits_ -= static_cast<int>(n);
    }

    /// Refill, peek and consume in one step. n <= 32.
    std::uint32_t pop(unsigned n)
    {
        refill();
        if (n == 0)
            return 0;
        const std::uint32_t v = peek(n);
        consume(n);
        return v;
    }

    /// Discard bits up to the next byte boundary (stored-block alignment).
    void align_to_byte()
    {
        const unsigned rem = static_cast<unsigned>(bit_pos() & 7);
        if (rem != 0)
            consume(8 - rem);
    }

    /// Byte-aligned bulk read for stored blocks. Returns false when fewer
    /// than `n` real bytes remain. Must be called on a byte boundary.
    bool read_aligned_bytes(std::uint8_t* dst, std::size_t n)
    {
        assert((bit_pos() & 7) == 0);
        std::uint64_t byte_pos = bit_pos() >> 3;
        if (byte_pos + n > size_)
            return false;
        std::memcpy(dst, data_ + byte_pos, n);
        seek((byte_pos + n) << 3);
        return true;
    }

    /// Pointer into the underlying buffer at the current (byte-aligned)
    /// position, or nullptr when fewer than `n` bytes remain.
    const std::uint8_t* aligned_view(std::size_t n)
    {
        assert((bit_pos() & 7) == 0);
        const std::uint64_t byte_pos = bit_pos() >> 3;
        if (byte_pos + n > size_)
            return nullptr;
        const std::uint8_t* p = data_ + byte_pos;
        seek((byte_pos + n) << 3);
        return p;
    }

  private:
    const std::uint8_t* data_;
    std::size_t size_;
    std::uint64_t next_byte_ = 0; // next byte index to load (counts phantom bytes too)
    std::uint64_t acc_ = 0;
    int acc_bits_ = 0;
};

} // namespace pargz
