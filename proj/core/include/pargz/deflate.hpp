#pragma once

#include <array>
#include <cstdint>

#include "pargz/bit_reader.hpp"
#include "pargz/errors.hpp"
#include "pargz/huffman.hpp"
#include "pargz/tokens.hpp"

namespace pargz {

/// Outcome of parsing or decoding one block. The block search treats these
/// as rejection reasons in a hot loop; the decompression entry points
/// convert anything but `ok` into a FormatError.
enum class DecodeStatus : std::uint8_t {
    ok = 0,
    truncated,
    invalid_block_type,
    invalid_code_description,
    stored_length_mismatch,
    bad_symbol,
    offset_too_far,
    non_ascii,         // sink rejected a byte outside its allowed set
    output_limit,      // sink refused to grow past its configured bound
    bit_limit_overrun, // a block ran past the requested stop bit
};

const char* decode_status_name(DecodeStatus s);

[[noreturn]] void throw_decode_error(DecodeStatus s);

struct BlockHeaderInfo {
    bool bfinal = false;
    BlockType type = BlockType::stored;
    std::uint32_t stored_len = 0;
};

namespace detail {

inline std::uint32_t take_bits(BitReader& br, unsigned n)
{
    if (n == 0)
        return 0;
    const std::uint32_t v = br.peek(n);
    br.consume(n);
    return v;
}

// Length codes 257..285 (RFC 1951 3.2.5). Code 284 with all extra bits set
// also decodes to 258; both encodings are accepted, as common decoders do.
inline constexpr std::array<std::uint16_t, 29> kLengthBase = {3,  4,  5,  6,  7,  8,  9,  10, 11,  13,
                                                              15, 17, 19, 23, 27, 31, 35, 43, 51,  59,
                                                              67, 83, 99, 115,131,163,195,227, 258};
inline constexpr std::array<std::uint8_t, 29> kLengthExtra = {0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 2, 2, 2,
                                                              2, 3, 3, 3, 3, 4, 4, 4, 4, 5, 5, 5, 5, 0};

// Distance codes 0..29; 30 and 31 never appear in valid data.
inline constexpr std::array<std::uint16_t, 30> kDistBase = {1,    2,    3,    4,    5,    7,     9,    13,
                                                            17,   25,   33,   49,   65,   97,    129,  193,
                                                            257,  385,  513,  769,  1025, 1537,  2049, 3073,
                                                            4097, 6145, 8193, 12289,16385,24577};
inline constexpr std::array<std::uint8_t, 30> kDistExtra = {0, 0, 0, 0, 1, 1, 2, 2, 3, 3, 4,  4,  5,  5,  6,
                                                            6, 7, 7, 8, 8, 9, 9, 10, 10, 11, 11, 12, 12, 13, 13};

} // namespace detail

/// Parses block headers (including full dynamic code descriptions) and runs
/// the token decode loop against a caller-provided sink. Holds the Huffman
/// tables as reusable scratch so the block search never allocates.
///
/// Sink concept:
///   bool push_literal(uint8_t)                 — false aborts with sink.error()
///   bool copy_match(uint32_t len, uint32_t off)
///   bool push_stored(const uint8_t* p, size_t n)
///   DecodeStatus error() const
///   const BlockStats& counters() const
class BlockCodec {
  public:
    /// Read one block header; after `ok`, decode_block() may be called once.
    /// For dynamic blocks this parses and validates the whole code
    /// description; for stored blocks it consumes LEN/NLEN.
    DecodeStatus read_header(BitReader& br, BlockHeaderInfo& out)
    {
        br.refill();
        if (br.bits_remaining() < 3)
            return DecodeStatus::truncated;
        out.bfinal = detail::take_bits(br, 1) != 0;
        return read_header_body(br, out);
    }

    /// Same, with BFINAL already consumed by the caller (the block search
    /// screens that bit before paying for any parsing).
    DecodeStatus read_header_body(BitReader& br, BlockHeaderInfo& out);

    template<class Sink>
    DecodeStatus decode_block(BitReader& br, const BlockHeaderInfo& hdr, Sink& sink)
    {
        if (hdr.type == BlockType::stored) {
            const std::uint8_t* p = br.aligned_view(hdr.stored_len);
            if (p == nullptr)
                return DecodeStatus::truncated;
            if (!sink.push_stored(p, hdr.stored_len))
                return sink.error();
            return DecodeStatus::ok;
        }

        const HuffmanTable& litlen = *cur_litlen_;
        const HuffmanTable& dist = *cur_dist_;

        // One refill covers the longest possible token: 15-bit litlen code,
        // 5 length extra bits, 15-bit distance code, 13 distance extra bits.
        for (;;) {
            br.refill();
            if (br.overrun()) [[unlikely]]
                return DecodeStatus::truncated;

            const int sym = litlen.decode(br);
            if (sym < 0) [[unlikely]]
                return DecodeStatus::bad_symbol;

            if (sym < 256) {
                if (!sink.push_literal(static_cast<std::uint8_t>(sym))) [[unlikely]]
                    return sink.error();
                continue;
            }
            if (sym == 256)
                return br.overrun() ? DecodeStatus::truncated : DecodeStatus::ok;
            if (sym > 285) [[unlikely]]
                return DecodeStatus::bad_symbol;

            const unsigned li = static_cast<unsigned>(sym) - 257;
            const std::uint32_t length = detail::kLengthBase[li] + detail::take_bits(br, detail::kLengthExtra[li]);

            const int dsym = dist.decode(br);
            if (dsym < 0 || dsym > 29) [[unlikely]]
                return DecodeStatus::bad_symbol;
            const std::uint32_t offset =
              detail::kDistBase[static_cast<unsigned>(dsym)] +
              detail::take_bits(br, detail::kDistExtra[static_cast<unsigned>(dsym)]);

            if (!sink.copy_match(length, offset)) [[unlikely]]
                return sink.error();
        }
    }

  private:
    DecodeStatus read_dynamic_tables(BitReader& br);

    HuffmanTable litlen_;
    HuffmanTable dist_;
    HuffmanTable precode_;
    std::array<std::uint8_t, 288 + 32> lens_{};
    const HuffmanTable* cur_litlen_ = nullptr;
    const HuffmanTable* cur_dist_ = nullptr;
};

} // namespace pargz
