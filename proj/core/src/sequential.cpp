#include "pargz/sequential.hpp"

#include "pargz/bit_reader.hpp"
#include "pargz/crc32.hpp"
#include "pargz/deflate.hpp"
#include "pargz/sinks.hpp"
#include "pargz/stream.hpp"

namespace pargz {

SequentialResult decompress_sequential(std::span<const std::uint8_t> file)
{
    SequentialResult res;
    res.header = parse_gzip_header(file);

    BitReader br(file, static_cast<std::uint64_t>(res.header.deflate_start) * 8);
    BlockCodec codec;
    ByteSink sink(res.data);

    // ISIZE is only a hint, but reserving it avoids most regrowth.
    if (file.size() >= res.header.deflate_start + 8) {
        const GzipTrailer hint = parse_gzip_trailer(file);
        res.data.reserve(hint.isize);
    }

    const StreamResult sr = decode_stream(br, codec, sink, StopRule::at_final_block(), &res.blocks);
    if (sr.status != DecodeStatus::ok)
        throw_decode_error(sr.status);
    res.deflate_end_bit = sr.end_bit;

    const std::size_t trailer_at = static_cast<std::size_t>((sr.end_bit + 7) / 8);
    res.trailer = parse_gzip_trailer_at(file, trailer_at);
    check_single_member(file, trailer_at + 8);

    const std::uint32_t actual = crc32(0, res.data);
    if (actual != res.trailer.crc32)
        throw CrcError(res.trailer.crc32, actual);
    res.isize_mismatch = res.trailer.isize != static_cast<std::uint32_t>(res.data.size());

    return res;
}

TokenStatsReport measure_token_stats(std::span<const std::uint8_t> file)
{
    SequentialResult seq = decompress_sequential(file);

    TokenStatsReport rep;
    rep.blocks = std::move(seq.blocks);
    for (const BlockInfo& b : rep.blocks)
        rep.totals += b.stats;
    rep.decompressed_size = seq.data.size();
    if (rep.totals.matches > 0) {
        rep.mean_match_offset =
          static_cast<double>(rep.totals.match_offset_sum) / static_cast<double>(rep.totals.matches);
        rep.mean_match_length =
          static_cast<double>(rep.totals.match_length_sum) / static_cast<double>(rep.totals.matches);
    }
    return rep;
}

double literal_fraction(const BlockStats& s)
{
    const std::uint64_t tokens = s.literals + s.matches;
    if (tokens == 0)
        return 0.0;
    return static_cast<double>(s.literals) / static_cast<double>(tokens);
}

} // namespace pargz
