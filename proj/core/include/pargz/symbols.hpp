#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "pargz/tokens.hpp"

namespace pargz {

/// A decoded position that is either a known byte or a placeholder naming
/// position j of an unknown 32 KB initial context. Decoding over SymByte
/// instead of bytes is what lets a chunk be decompressed before its context
/// is known: back-references copy the placeholders along, and a later pass
/// substitutes the real bytes.
///
/// Encoding: 0..255 resolved byte, 256..33023 reference to context slot
/// (value - 256).
class SymByte {
  public:
    SymByte() = default;

    static SymByte resolved(std::uint8_t b) { return SymByte(b); }
    static SymByte context_ref(std::uint32_t j)
    {
        assert(j < kWindowSize);
        return SymByte(static_cast<std::uint16_t>(256 + j));
    }

    bool is_resolved() const { return v_ < 256; }
    std::uint8_t byte() const
    {
        assert(is_resolved());
        return static_cast<std::uint8_t>(v_);
    }
    std::uint32_t ref_index() const
    {
        assert(!is_resolved());
        return static_cast<std::uint32_t>(v_) - 256;
    }

    std::uint16_t raw() const { return v_; }

    friend bool operator==(SymByte a, SymByte b) { return a.v_ == b.v_; }

  private:
    explicit SymByte(std::uint16_t v)
      : v_(v)
    {}

    std::uint16_t v_ = 0;
};

static_assert(sizeof(SymByte) == 2);

/// A full 32 KB context of SymBytes; slot 0 is the oldest byte (32768
/// positions back), slot 32767 the most recent.
struct SymContext {
    std::vector<SymByte> cells;

    /// All-placeholder context [U_0 .. U_32767]: the starting state of
    /// every chunk but the first.
    static SymContext fresh_refs()
    {
        SymContext c;
        c.cells.resize(kWindowSize);
        for (std::uint32_t j = 0; j < kWindowSize; ++j)
            c.cells[j] = SymByte::context_ref(j);
        return c;
    }

    /// Fully known context (e.g. carried over from an already-resolved
    /// upstream section).
    static SymContext resolved(std::span<const std::uint8_t> bytes)
    {
        assert(bytes.size() == kWindowSize);
        SymContext c;
        c.cells.resize(kWindowSize);
        for (std::uint32_t j = 0; j < kWindowSize; ++j)
            c.cells[j] = SymByte::resolved(bytes[j]);
        return c;
    }

    bool fully_resolved() const
    {
        for (const SymByte s : cells)
            if (!s.is_resolved())
                return false;
        return true;
    }
};

/// Byte classes admitted by the block search's "decompressed text must be
/// plausible" check. Defaults to printable ASCII plus tab/LF/CR, which
/// covers FASTQ and ordinary text.
class AsciiPolicy {
  public:
    static AsciiPolicy printable_text()
    {
        AsciiPolicy p;
        p.allow_[0x09] = true;
        p.allow_[0x0A] = true;
        p.allow_[0x0D] = true;
        for (unsigned c = 0x20; c <= 0x7E; ++c)
            p.allow_[c] = true;
        return p;
    }

    static AsciiPolicy any_byte()
    {
        AsciiPolicy p;
        p.allow_.fill(true);
        return p;
    }

    void set(std::uint8_t c, bool allowed) { allow_[c] = allowed; }
    bool allows(std::uint8_t c) const { return allow_[c]; }

  private:
    std::array<bool, 256> allow_{};
};

} // namespace pargz
