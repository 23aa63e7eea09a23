#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "pargz/deflate.hpp"
#include "pargz/symbols.hpp"

namespace pargz {

struct SyncConfig {
    /// A candidate block must decompress to more than min_block_size and
    /// fewer than max_block_size bytes.
    std::uint32_t min_block_size = 1024;
    std::uint32_t max_block_size = 4u << 20;
    /// Blocks decoded after the candidate before declaring sync.
    unsigned confirm_blocks = 5;
    AsciiPolicy ascii = AsciiPolicy::printable_text();
};

enum class RejectReason : std::uint8_t {
    none = 0,
    final_block,      // BFINAL set: never sync onto the last block
    invalid_block_type,
    stored_length_mismatch,
    invalid_code_description,
    bad_symbol,
    non_ascii,
    block_too_small,
    block_too_large,
    truncated,
    confirmation_failed, // only from find_next_block internals
};

const char* reject_reason_name(RejectReason r);

struct CandidateResult {
    bool accepted = false;
    RejectReason reason = RejectReason::none;
    std::uint64_t next_bit = 0;    // first bit after the candidate block (accepted only)
    std::uint64_t block_bytes = 0; // decompressed size of the candidate block
};

/// Reusable scratch for candidate trials; rejection is a value, never an
/// exception, so the caller can hammer this at every bit offset without
/// allocating.
struct SyncScratch {
    BlockCodec codec;
};

/// Attempt to read one block at `bit_pos`, applying the early-fail checks
/// in order: BFINAL must be 0, the type must be valid, a dynamic code
/// description must parse, every decoded literal and stored byte must be in
/// the allowed set, and the decompressed size must fall inside the
/// configured bounds. Back-references into the unknown context are fine:
/// the decode is symbolic, and bytes copied from it are undetermined, which
/// exempts them from the byte-set check.
CandidateResult try_candidate(std::span<const std::uint8_t> bits, std::uint64_t bit_pos,
                              const SyncConfig& cfg, SyncScratch& scratch);

struct SyncResult {
    std::uint64_t block_start_bit = 0;
    unsigned blocks_confirmed = 0; // blocks decoded after the candidate
    std::uint64_t trials = 0;      // bit positions attempted
};

/// Scan bit positions ascending from `start_bit` until a candidate block
/// decodes and `confirm_blocks` further blocks confirm it (reaching the
/// stream's final block cleanly also confirms). On confirmation failure the
/// scan resumes at candidate + 1. Returns nullopt when the stream ends
/// without a confirmed start — including the legitimate case where only
/// the final block remains.
std::optional<SyncResult> find_next_block(std::span<const std::uint8_t> bits, std::uint64_t start_bit,
                                          const SyncConfig& cfg);

} // namespace pargz
