#include <doctest.h>

#include <array>
#include <vector>

#include "pargz/bit_reader.hpp"

using pargz::BitReader;

TEST_CASE("bit reader hands out bits LSB first")
{
    const std::array<std::uint8_t, 2> data = {0x5A, 0xA5}; // 01011010 10100101

    BitReader br({data.data(), data.size()});
    CHECK(br.pop(16) == 0xA55A);

    br.seek(0);
    CHECK(br.pop(8) == 0x5A);
    CHECK(br.pop(8) == 0xA5);

    br.seek(0);
    CHECK(br.pop(4) == 0xA);
    CHECK(br.pop(4) == 0x5);

    br.seek(0);
    const int expected[8] = {0, 1, 0, 1, 1, 0, 1, 0};
    for (int i = 0; i < 8; ++i)
        CHECK(br.pop(1) == static_cast<std::uint32_t>(expected[i]));
}

TEST_CASE("seek to arbitrary bit offsets")
{
    std::vector<std::uint8_t> data(16);
    for (std::size_t i = 0; i < data.size(); ++i)
        data[i] = static_cast<std::uint8_t>(i * 37 + 11);

    BitReader whole({data.data(), data.size()});
    const std::uint32_t all = whole.pop(32);

    for (unsigned off = 0; off < 24; ++off) {
        BitReader br({data.data(), data.size()}, off);
        CHECK(br.bit_pos() == off);
        BitReader ref({data.data(), data.size()});
        ref.pop(off == 0 ? 1 : off); // consume off bits (1 then re-seek for off=0)
        if (off == 0) {
            CHECK(br.pop(32) == all);
        } else {
            CHECK(br.pop(8) == ref.pop(8));
        }
    }
}

TEST_CASE("position tracking and byte alignment")
{
    std::vector<std::uint8_t> data(8, 0xFF);
    BitReader br({data.data(), data.size()});
    br.pop(3);
    CHECK(br.bit_pos() == 3);
    br.align_to_byte();
    CHECK(br.bit_pos() == 8);
    br.align_to_byte();
    CHECK(br.bit_pos() == 8);
    br.pop(13);
    CHECK(br.bit_pos() == 21);
}

TEST_CASE("reads past the end pad with zeros and flag overrun")
{
    const std::array<std::uint8_t, 1> data = {0xFF};
    BitReader br({data.data(), data.size()});
    CHECK(!br.overrun());
    CHECK(br.pop(8) == 0xFF);
    CHECK(!br.overrun());
    CHECK(br.bits_remaining() == 0);
    CHECK(br.pop(5) == 0); // phantom zeros
    CHECK(br.overrun());
    CHECK(br.bits_remaining() == -5);
}

TEST_CASE("aligned byte reads for stored payloads")
{
    std::vector<std::uint8_t> data = {1, 2, 3, 4, 5};
    BitReader br({data.data(), data.size()});
    br.pop(8);
    std::array<std::uint8_t, 3> dst{};
    CHECK(br.read_aligned_bytes(dst.data(), 3));
    CHECK(dst == std::array<std::uint8_t, 3>{2, 3, 4});
    CHECK(br.bit_pos() == 32);
    CHECK_FALSE(br.read_aligned_bytes(dst.data(), 2)); // only 1 byte left
}
