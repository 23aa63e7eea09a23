#include "pargz/deflate.hpp"

namespace pargz {

namespace {

struct FixedTables {
    HuffmanTable litlen;
    HuffmanTable dist;
};

const FixedTables& fixed_tables()
{
    static const FixedTables t = [] {
        FixedTables ft;
        std::array<std::uint8_t, 288> ll{};
        for (unsigned i = 0; i < 144; ++i)
            ll[i] = 8;
        for (unsigned i = 144; i < 256; ++i)
            ll[i] = 9;
        for (unsigned i = 256; i < 280; ++i)
            ll[i] = 7;
        for (unsigned i = 280; i < 288; ++i)
            ll[i] = 8;
        std::array<std::uint8_t, 32> dd{};
        dd.fill(5);
        const bool ok1 = ft.litlen.build(ll, 10, false);
        const bool ok2 = ft.dist.build(dd, 8, false);
        (void)ok1;
        (void)ok2;
        return ft;
    }();
    return t;
}

} // namespace

const char* decode_status_name(DecodeStatus s)
{
    switch (s) {
        case DecodeStatus::ok: return "ok";
        case DecodeStatus::truncated: return "truncated";
        case DecodeStatus::invalid_block_type: return "invalid_block_type";
        case DecodeStatus::invalid_code_description: return "invalid_code_description";
        case DecodeStatus::stored_length_mismatch: return "stored_length_mismatch";
        case DecodeStatus::bad_symbol: return "bad_symbol";
        case DecodeStatus::offset_too_far: return "offset_too_far";
        case DecodeStatus::non_ascii: return "non_ascii";
        case DecodeStatus::output_limit: return "output_limit";
        case DecodeStatus::bit_limit_overrun: return "bit_limit_overrun";
    }
    return "unknown";
}

void throw_decode_error(DecodeStatus s)
{
    Errc c;
    switch (s) {
        case DecodeStatus::truncated: c = Errc::truncated; break;
        case DecodeStatus::invalid_block_type: c = Errc::invalid_block_type; break;
        case DecodeStatus::invalid_code_description: c = Errc::invalid_code_description; break;
        case DecodeStatus::stored_length_mismatch: c = Errc::stored_length_mismatch; break;
        case DecodeStatus::bad_symbol: c = Errc::bad_symbol; break;
        case DecodeStatus::offset_too_far: c = Errc::offset_too_far; break;
        default: c = Errc::truncated; break;
    }
    throw_format_error(c, std::string("decode failed: ") + decode_status_name(s));
}

DecodeStatus BlockCodec::read_header_body(BitReader& br, BlockHeaderInfo& out)
{
    switch (detail::take_bits(br, 2)) {
        case 0: {
            out.type = BlockType::stored;
            br.align_to_byte();
            if (br.bits_remaining() < 32)
                return DecodeStatus::truncated;
            br.refill();
            const std::uint32_t len = detail::take_bits(br, 16);
            const std::uint32_t nlen = detail::take_bits(br, 16);
            if ((len ^ nlen) != 0xFFFF)
                return DecodeStatus::stored_length_mismatch;
            out.stored_len = len;
            return DecodeStatus::ok;
        }
        case 1:
            out.type = BlockType::fixed_huffman;
            cur_litlen_ = &fixed_tables().litlen;
            cur_dist_ = &fixed_tables().dist;
            return DecodeStatus::ok;
        case 2: {
            out.type = BlockType::dynamic_huffman;
            const DecodeStatus st = read_dynamic_tables(br);
            if (st != DecodeStatus::ok)
                return st;
            cur_litlen_ = &litlen_;
            cur_dist_ = &dist_;
            return DecodeStatus::ok;
        }
        default:
            return DecodeStatus::invalid_block_type;
    }
}

DecodeStatus BlockCodec::read_dynamic_tables(BitReader& br)
{
    static constexpr std::array<std::uint8_t, 19> kPrecodeOrder = {16, 17, 18, 0, 8,  7, 9,  6, 10, 5,
                                                                   11, 4,  12, 3, 13, 2, 14, 1, 15};

    br.refill();
    if (br.overrun())
        return DecodeStatus::truncated;
    const unsigned num_litlen = 257 + detail::take_bits(br, 5);
    const unsigned num_dist = 1 + detail::take_bits(br, 5);
    const unsigned num_precode = 4 + detail::take_bits(br, 4);
    if (num_litlen > 286 || num_dist > 30)
        return DecodeStatus::invalid_code_description;

    std::array<std::uint8_t, 19> pre_lens{};
    for (unsigned i = 0; i < num_precode; ++i)
        pre_lens[kPrecodeOrder[i]] = static_cast<std::uint8_t>(br.pop(3));
    if (br.overrun())
        return DecodeStatus::truncated;
    if (!precode_.build(pre_lens, 7, false))
        return DecodeStatus::invalid_code_description;

    const unsigned total = num_litlen + num_dist;
    unsigned i = 0;
    while (i < total) {
        br.refill();
        if (br.overrun())
            return DecodeStatus::truncated;
        const int sym = precode_.decode(br);
        if (sym < 0)
            return DecodeStatus::invalid_code_description;
        if (sym < 16) {
            lens_[i++] = static_cast<std::uint8_t>(sym);
            continue;
        }
        unsigned repeat;
        std::uint8_t val = 0;
        if (sym == 16) {
            if (i == 0)
                return DecodeStatus::invalid_code_description;
            repeat = 3 + detail::take_bits(br, 2);
            val = lens_[i - 1];
        } else if (sym == 17) {
            repeat = 3 + detail::take_bits(br, 3);
        } else {
            repeat = 11 + detail::take_bits(br, 7);
        }
        if (i + repeat > total)
            return DecodeStatus::invalid_code_description;
        while (repeat-- > 0)
            lens_[i++] = val;
    }

    if (!litlen_.build(std::span<const std::uint8_t>(lens_.data(), num_litlen), 10, true))
        return DecodeStatus::invalid_code_description;
    if (!dist_.build(std::span<const std::uint8_t>(lens_.data() + num_litlen, num_dist), 8, true))
        return DecodeStatus::invalid_code_description;
    return DecodeStatus::ok;
}

} // namespace pargz
