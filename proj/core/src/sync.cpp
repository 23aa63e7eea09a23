#include "pargz/sync.hpp"

#include "pargz/bit_reader.hpp"
#include "pargz/deflate.hpp"

namespace pargz {

namespace {

/// Validates a block without keeping any of it. Content is never needed:
/// every resolved byte traces back to a literal or stored byte that was
/// checked when it was produced, and bytes copied from the unknown initial
/// context are undetermined and exempt.
class ProbeSink {
  public:
    explicit ProbeSink(const AsciiPolicy& ascii)
      : ascii_(ascii)
    {}

    void begin_block(std::uint64_t max_block_bytes)
    {
        block_start_ = counters_.bytes_out;
        limit_ = block_start_ + max_block_bytes;
    }

    std::uint64_t block_bytes() const { return counters_.bytes_out - block_start_; }

    bool push_literal(std::uint8_t b)
    {
        if (!ascii_.allows(b)) {
            err_ = DecodeStatus::non_ascii;
            return false;
        }
        ++counters_.literals;
        ++counters_.bytes_out;
        return counters_.bytes_out < limit_ || fail_limit();
    }

    bool copy_match(std::uint32_t length, std::uint32_t offset)
    {
        if (offset > kWindowSize) {
            err_ = DecodeStatus::offset_too_far;
            return false;
        }
        ++counters_.matches;
        counters_.match_offset_sum += offset;
        counters_.match_length_sum += length;
        counters_.bytes_out += length;
        return counters_.bytes_out < limit_ || fail_limit();
    }

    bool push_stored(const std::uint8_t* p, std::size_t n)
    {
        for (std::size_t i = 0; i < n; ++i) {
            if (!ascii_.allows(p[i])) {
                err_ = DecodeStatus::non_ascii;
                return false;
            }
        }
        counters_.literals += n;
        counters_.bytes_out += n;
        return counters_.bytes_out < limit_ || fail_limit();
    }

    DecodeStatus error() const { return err_; }
    const BlockStats& counters() const { return counters_; }

  private:
    bool fail_limit()
    {
        err_ = DecodeStatus::output_limit;
        return false;
    }

    const AsciiPolicy& ascii_;
    BlockStats counters_;
    std::uint64_t limit_ = UINT64_MAX;
    std::uint64_t block_start_ = 0;
    DecodeStatus err_ = DecodeStatus::ok;
};

RejectReason reject_from_status(DecodeStatus st)
{
    switch (st) {
        case DecodeStatus::truncated: return RejectReason::truncated;
        case DecodeStatus::invalid_block_type: return RejectReason::invalid_block_type;
        case DecodeStatus::invalid_code_description: return RejectReason::invalid_code_description;
        case DecodeStatus::stored_length_mismatch: return RejectReason::stored_length_mismatch;
        case DecodeStatus::bad_symbol: return RejectReason::bad_symbol;
        case DecodeStatus::offset_too_far: return RejectReason::bad_symbol;
        case DecodeStatus::non_ascii: return RejectReason::non_ascii;
        case DecodeStatus::output_limit: return RejectReason::block_too_large;
        default: return RejectReason::truncated;
    }
}

} // namespace

const char* reject_reason_name(RejectReason r)
{
    switch (r) {
        case RejectReason::none: return "none";
        case RejectReason::final_block: return "final_block";
        case RejectReason::invalid_block_type: return "invalid_block_type";
        case RejectReason::stored_length_mismatch: return "stored_length_mismatch";
        case RejectReason::invalid_code_description: return "invalid_code_description";
        case RejectReason::bad_symbol: return "bad_symbol";
        case RejectReason::non_ascii: return "non_ascii";
        case RejectReason::block_too_small: return "block_too_small";
        case RejectReason::block_too_large: return "block_too_large";
        case RejectReason::truncated: return "truncated";
        case RejectReason::confirmation_failed: return "confirmation_failed";
    }
    return "unknown";
}

CandidateResult try_candidate(std::span<const std::uint8_t> bits, std::uint64_t bit_pos,
                              const SyncConfig& cfg, SyncScratch& scratch)
{
    CandidateResult res;

    BitReader br(bits, bit_pos);
    br.refill();
    if (br.bits_remaining() < 3) {
        res.reason = RejectReason::truncated;
        return res;
    }
    if (br.peek(1) != 0) {
        res.reason = RejectReason::final_block;
        return res;
    }
    br.consume(1);

    BlockHeaderInfo hdr;
    DecodeStatus st = scratch.codec.read_header_body(br, hdr);
    if (st != DecodeStatus::ok) {
        res.reason = reject_from_status(st);
        return res;
    }

    ProbeSink probe(cfg.ascii);
    probe.begin_block(cfg.max_block_size);
    st = scratch.codec.decode_block(br, hdr, probe);
    if (st != DecodeStatus::ok) {
        res.reason = reject_from_status(st);
        return res;
    }
    if (probe.block_bytes() <= cfg.min_block_size) {
        res.reason = RejectReason::block_too_small;
        return res;
    }

    res.accepted = true;
    res.next_bit = br.bit_pos();
    res.block_bytes = probe.block_bytes();
    return res;
}

std::optional<SyncResult> find_next_block(std::span<const std::uint8_t> bits, std::uint64_t start_bit,
                                          const SyncConfig& cfg)
{
    const std::uint64_t total_bits = static_cast<std::uint64_t>(bits.size()) * 8;
    SyncScratch scratch;

    std::uint64_t trials = 0;
    for (std::uint64_t bit = start_bit; bit < total_bits; ++bit) {
        ++trials;
        const CandidateResult cand = try_candidate(bits, bit, cfg, scratch);
        if (!cand.accepted)
            continue;

        // Confirm by decoding further blocks with the same checks. Reaching
        // the final block cleanly ends the stream and also confirms; it is
        // exempt from the minimum-size bound since last blocks are
        // routinely short.
        BitReader br(bits, cand.next_bit);
        ProbeSink probe(cfg.ascii);
        unsigned confirmed = 0;
        bool ok = true;
        for (unsigned c = 0; c < cfg.confirm_blocks; ++c) {
            BlockHeaderInfo hdr;
            DecodeStatus st = scratch.codec.read_header(br, hdr);
            if (st != DecodeStatus::ok) {
                ok = false;
                break;
            }
            probe.begin_block(cfg.max_block_size);
            st = scratch.codec.decode_block(br, hdr, probe);
            if (st != DecodeStatus::ok) {
                ok = false;
                break;
            }
            if (hdr.bfinal) {
                ++confirmed;
                break;
            }
            if (probe.block_bytes() <= cfg.min_block_size) {
                ok = false;
                break;
            }
            ++confirmed;
        }
        if (ok)
            return SyncResult{bit, confirmed, trials};
        // Backtrack to the bit after the candidate's start; the loop
        // increment does exactly that.
    }
    return std::nullopt;
}

} // namespace pargz
