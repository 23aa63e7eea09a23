#include "pargz/huffman.hpp"

#include <array>
#include <cassert>

namespace pargz {

namespace {

constexpr std::array<std::uint8_t, 256> make_rev8()
{
    std::array<std::uint8_t, 256> t{};
    for (unsigned i = 0; i < 256; ++i) {
        unsigned v = i;
        v = ((v & 0x55) << 1) | ((v >> 1) & 0x55);
        v = ((v & 0x33) << 2) | ((v >> 2) & 0x33);
        v = ((v & 0x0F) << 4) | ((v >> 4) & 0x0F);
        t[i] = static_cast<std::uint8_t>(v);
    }
    return t;
}

constexpr std::array<std::uint8_t, 256> kRev8 = make_rev8();

std::uint32_t reverse_code(std::uint32_t code, unsigned len)
{
    const std::uint32_t r = (static_cast<std::uint32_t>(kRev8[code & 0xFF]) << 8) | kRev8[(code >> 8) & 0xFF];
    return r >> (16 - len);
}

} // namespace

bool HuffmanTable::build(std::span<const std::uint8_t> lengths, unsigned root_bits, bool allow_single_incomplete)
{
    assert(root_bits >= 1 && root_bits <= kMaxCodeLen);
    root_bits_ = root_bits;
    const std::uint32_t root_size = 1u << root_bits;

    std::array<std::uint32_t, kMaxCodeLen + 1> count{};
    for (const std::uint8_t len : lengths) {
        assert(len <= kMaxCodeLen);
        ++count[len];
    }
    const std::size_t used = lengths.size() - count[0];

    if (used == 0) {
        // No symbols: a structurally valid but unusable code.
        slots_.assign(root_size, Entry{0, 0, kInvalid});
        return true;
    }

    // Kraft check: over-subscribed sets are always invalid; incomplete sets
    // only pass as the degenerate one-symbol code.
    std::int64_t left = 1;
    unsigned max_len = 0;
    for (unsigned len = 1; len <= kMaxCodeLen; ++len) {
        left <<= 1;
        left -= count[len];
        if (left < 0)
            return false;
        if (count[len] != 0)
            max_len = len;
    }
    if (left > 0 && !(allow_single_incomplete && max_len == 1 && used == 1))
        return false;

    // First canonical codeword per length.
    std::array<std::uint32_t, kMaxCodeLen + 2> next_code{};
    std::uint32_t code = 0;
    for (unsigned len = 1; len <= max_len; ++len) {
        code = (code + count[len - 1]) << 1;
        next_code[len] = code;
    }

    // Symbols in canonical order: by length, then by symbol value. Unused
    // symbols (length 0) take no slot.
    std::array<std::uint32_t, kMaxCodeLen + 1> offs{};
    for (unsigned len = 2; len <= max_len; ++len)
        offs[len] = offs[len - 1] + count[len - 1];
    std::array<std::uint16_t, 320> sorted; // 288 litlen + 32 dist is the largest caller
    assert(lengths.size() <= sorted.size());
    for (std::size_t sym = 0; sym < lengths.size(); ++sym)
        if (lengths[sym] != 0)
            sorted[offs[lengths[sym]]++] = static_cast<std::uint16_t>(sym);

    // Size the subtables: codes longer than the root share one subtable per
    // root-sized received prefix, wide enough for the longest code in it.
    sub_width_.assign(root_size, 0);
    std::uint32_t total = root_size;
    if (max_len > root_bits) {
        for (unsigned len = root_bits + 1; len <= max_len; ++len) {
            std::uint32_t c = next_code[len];
            for (std::uint32_t i = 0; i < count[len]; ++i, ++c) {
                const std::uint32_t prefix = reverse_code(c, len) & (root_size - 1);
                const std::uint8_t need = static_cast<std::uint8_t>(len - root_bits);
                if (need > sub_width_[prefix])
                    sub_width_[prefix] = need;
            }
        }
    }
    sub_base_.assign(root_size, 0);
    for (std::uint32_t p = 0; p < root_size; ++p) {
        if (sub_width_[p] != 0) {
            sub_base_[p] = total;
            total += 1u << sub_width_[p];
        }
    }
    assert(total <= UINT16_MAX); // payload of a link entry must reach every subtable

    slots_.assign(total, Entry{0, 0, kInvalid});
    for (std::uint32_t p = 0; p < root_size; ++p)
        if (sub_width_[p] != 0)
            slots_[p] = Entry{static_cast<std::uint16_t>(sub_base_[p]), sub_width_[p], kLink};

    // Fill: each codeword owns every table index whose low bits equal its
    // reversed codeword.
    std::size_t pos = 0;
    for (unsigned len = 1; len <= max_len; ++len) {
        std::uint32_t c = next_code[len];
        for (std::uint32_t i = 0; i < count[len]; ++i, ++c, ++pos) {
            const std::uint16_t sym = sorted[pos];
            const std::uint32_t r = reverse_code(c, len);
            if (len <= root_bits) {
                for (std::uint32_t idx = r; idx < root_size; idx += 1u << len)
                    slots_[idx] = Entry{sym, static_cast<std::uint8_t>(len), kSymbol};
            } else {
                const std::uint32_t prefix = r & (root_size - 1);
                const std::uint32_t sub_size = 1u << sub_width_[prefix];
                const std::uint8_t sub_len = static_cast<std::uint8_t>(len - root_bits);
                for (std::uint32_t idx = r >> root_bits; idx < sub_size; idx += 1u << sub_len)
                    slots_[sub_base_[prefix] + idx] = Entry{sym, sub_len, kSymbol};
            }
        }
    }

    return true;
}

} // namespace pargz
