#pragma once

#include <cstdint>
#include <vector>

#include "pargz/deflate.hpp"
#include "pargz/tokens.hpp"

namespace pargz {

/// When a multi-block decode should stop. Stops are block-granular: the
/// byte and bit variants take effect at the end of the block that reaches
/// them, and `at_bit_limit` expects the limit to be a block boundary.
struct StopRule {
    enum class Kind : std::uint8_t { at_final_block, after_n_bytes, at_bit_limit };

    Kind kind = Kind::at_final_block;
    std::uint64_t value = 0;

    static StopRule at_final_block() { return {Kind::at_final_block, 0}; }
    static StopRule after_n_bytes(std::uint64_t n) { return {Kind::after_n_bytes, n}; }
    static StopRule at_bit_limit(std::uint64_t bit) { return {Kind::at_bit_limit, bit}; }
};

struct StreamResult {
    DecodeStatus status = DecodeStatus::ok;
    bool reached_final = false;
    std::uint64_t end_bit = 0;
};

inline BlockStats stats_delta(const BlockStats& before, const BlockStats& after)
{
    BlockStats d;
    d.literals = after.literals - before.literals;
    d.matches = after.matches - before.matches;
    d.match_offset_sum = after.match_offset_sum - before.match_offset_sum;
    d.match_length_sum = after.match_length_sum - before.match_length_sum;
    d.bytes_out = after.bytes_out - before.bytes_out;
    return d;
}

/// Decode whole blocks until the stop rule, the final block, or an error.
/// Optionally records one BlockInfo per block decoded.
template<class Sink>
StreamResult decode_stream(BitReader& br, BlockCodec& codec, Sink& sink, StopRule stop,
                           std::vector<BlockInfo>* blocks = nullptr)
{
    StreamResult res;
    for (;;) {
        res.end_bit = br.bit_pos();
        if (stop.kind == StopRule::Kind::at_bit_limit) {
            if (br.bit_pos() == stop.value)
                return res;
            if (br.bit_pos() > stop.value) {
                res.status = DecodeStatus::bit_limit_overrun;
                return res;
            }
        }

        BlockInfo info;
        info.start_bit = br.bit_pos();
        info.data_offset = sink.counters().bytes_out;

        BlockHeaderInfo hdr;
        DecodeStatus st = codec.read_header(br, hdr);
        if (st != DecodeStatus::ok) {
            res.status = st;
            return res;
        }

        const BlockStats before = sink.counters();
        st = codec.decode_block(br, hdr, sink);
        if (st != DecodeStatus::ok) {
            res.status = st;
            return res;
        }

        info.end_bit = br.bit_pos();
        info.type = hdr.type;
        info.bfinal = hdr.bfinal;
        info.stats = stats_delta(before, sink.counters());
        if (blocks != nullptr)
            blocks->push_back(info);

        res.end_bit = br.bit_pos();
        if (hdr.bfinal) {
            res.reached_final = true;
            return res;
        }
        if (stop.kind == StopRule::Kind::after_n_bytes && sink.counters().bytes_out >= stop.value)
            return res;
    }
}

} // namespace pargz
