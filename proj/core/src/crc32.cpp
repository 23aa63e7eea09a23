#include "pargz/crc32.hpp"

#include <array>

namespace pargz {

namespace {

// Slice-by-8 tables. table[0] is the classic byte-at-a-time table; the
// higher tables fold 8 input bytes per iteration.
struct Tables {
    std::uint32_t t[8][256];
};

Tables make_tables()
{
    Tables tb{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k)
            c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
        tb.t[0][i] = c;
    }
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = tb.t[0][i];
        for (int k = 1; k < 8; ++k) {
            c = tb.t[0][c & 0xFF] ^ (c >> 8);
            tb.t[k][i] = c;
        }
    }
    return tb;
}

const Tables& tables()
{
    static const Tables tb = make_tables();
    return tb;
}

// GF(2) arithmetic on 32x32 bit matrices: applying the "advance by N zero
// bytes" operator to crc_a lets two checksums be merged without re-reading
// the data.
std::uint32_t gf2_matrix_times(const std::array<std::uint32_t, 32>& mat, std::uint32_t vec)
{
    std::uint32_t sum = 0;
    for (int i = 0; vec != 0; ++i, vec >>= 1)
        if (vec & 1)
            sum ^= mat[static_cast<std::size_t>(i)];
    return sum;
}

void gf2_matrix_square(std::array<std::uint32_t, 32>& dst, const std::array<std::uint32_t, 32>& src)
{
    for (std::size_t i = 0; i < 32; ++i)
        dst[i] = gf2_matrix_times(src, src[i]);
}

} // namespace

std::uint32_t crc32(std::uint32_t crc, std::span<const std::uint8_t> data)
{
    const Tables& tb = tables();
    std::uint32_t c = ~crc;
    const std::uint8_t* p = data.data();
    std::size_t n = data.size();

    while (n >= 8) {
        c ^= static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
             (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
        const std::uint32_t hi = static_cast<std::uint32_t>(p[4]) | (static_cast<std::uint32_t>(p[5]) << 8) |
                                 (static_cast<std::uint32_t>(p[6]) << 16) | (static_cast<std::uint32_t>(p[7]) << 24);
        c = tb.t[7][c & 0xFF] ^ tb.t[6][(c >> 8) & 0xFF] ^ tb.t[5][(c >> 16) & 0xFF] ^ tb.t[4][c >> 24] ^
            tb.t[3][hi & 0xFF] ^ tb.t[2][(hi >> 8) & 0xFF] ^ tb.t[1][(hi >> 16) & 0xFF] ^ tb.t[0][hi >> 24];
        p += 8;
        n -= 8;
    }
    while (n-- > 0)
        c = tb.t[0][(c ^ *p++) & 0xFF] ^ (c >> 8);
    return ~c;
}

std::uint32_t crc32_combine(std::uint32_t crc_a, std::uint32_t crc_b, std::uint64_t len_b)
{
    if (len_b == 0)
        return crc_a;

    // odd = the operator that advances a CRC by one zero bit.
    std::array<std::uint32_t, 32> odd{};
    std::array<std::uint32_t, 32> even{};
    odd[0] = 0xEDB88320u;
    std::uint32_t row = 1;
    for (std::size_t i = 1; i < 32; ++i, row <<= 1)
        odd[i] = row;

    gf2_matrix_square(even, odd); // 2 zero bits
    gf2_matrix_square(odd, even); // 4 zero bits

    // Apply len_b * 8 zero bits to crc_a by repeated squaring.
    std::uint64_t len = len_b;
    std::uint32_t crc = crc_a;
    do {
        gf2_matrix_square(even, odd);
        if (len & 1)
            crc = gf2_matrix_times(even, crc);
        len >>= 1;
        if (len == 0)
            break;
        gf2_matrix_square(odd, even);
        if (len & 1)
            crc = gf2_matrix_times(odd, crc);
        len >>= 1;
    } while (len != 0);

    return crc ^ crc_b;
}

} // namespace pargz
