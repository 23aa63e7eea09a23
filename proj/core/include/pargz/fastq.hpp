#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "pargz/symbols.hpp"
#include "pargz/sync.hpp"

namespace pargz {

struct ExtractConfig {
    std::uint32_t min_read_len = 32;           // shorter grammar matches are discarded
    std::uint32_t resolved_block_min_seqs = 10; // "sufficiently many sequences" threshold
    bool allow_lowercase = false;               // accept acgtn as nucleotides too
};

/// One extracted DNA-like segment. The span covers the grammar body with
/// its flanking terminators trimmed; interior undetermined runs make it
/// ambiguous.
struct ExtractedSeq {
    std::uint64_t start = 0; // [start, end) into the SymByte stream
    std::uint64_t end = 0;
    bool ambiguous = false;
    bool spans_block_boundary = false;
};

/// All maximal non-overlapping matches of  T D+ (U+ D+)* T  where T is a
/// newline or undetermined character, D a nucleotide (A,C,G,T,N) and U an
/// undetermined character. Flanks are trimmed from the reported span but
/// required to be present, which is what rejects DNA-looking runs inside
/// quality strings. Single left-to-right pass.
///
/// `block_boundaries` are decoded-stream offsets of block starts (ascending,
/// first usually 0), used only to flag boundary-spanning sequences.
std::vector<ExtractedSeq> extract_sequences(std::span<const SymByte> data,
                                            std::span<const std::uint64_t> block_boundaries,
                                            const ExtractConfig& cfg);

struct BlockClassification {
    std::uint64_t block_index = 0;
    std::uint64_t block_offset = 0; // decoded-stream offset of the block start
    std::uint32_t seq_count = 0;    // sequences starting in this block
    std::uint32_t ambiguous_count = 0;
    bool sequence_resolved = false;
};

/// Per-block verdicts: a block is sequence-resolved when it yields at least
/// resolved_block_min_seqs sequences and none of them is ambiguous.
/// Sequences spanning a boundary count toward the block where they start.
std::vector<BlockClassification> classify_blocks(std::span<const SymByte> data,
                                                 std::span<const std::uint64_t> block_boundaries,
                                                 const ExtractConfig& cfg);

struct SeekReportRow {
    std::uint64_t seek_offset = 0; // compressed byte offset the seek targeted
    std::uint64_t sync_bit = 0;    // confirmed block start the decode began at
    bool resolved_block_found = false;
    std::uint64_t delay_bytes = 0; // decompressed bytes before the first sequence-resolved block
    std::uint64_t seq_total = 0;   // sequences from that block on
    std::uint64_t seq_ambiguous = 0;
    double percent_unambiguous = 0.0;
};

/// One seek, fully materialized: the decoded stream, its extracted
/// sequences, and the summary row. `row` is only meaningful when
/// `sync_found`.
struct SeekProbe {
    bool sync_found = false;
    SeekReportRow row;
    std::vector<SymByte> data;
    std::vector<std::uint64_t> block_offsets;
    std::vector<ExtractedSeq> seqs;
};

SeekProbe run_seek_probe(std::span<const std::uint8_t> file, std::uint64_t byte_offset,
                         const ExtractConfig& cfg, const SyncConfig& sync_cfg,
                         std::optional<std::uint64_t> byte_budget = std::nullopt);

/// Random access probe: for each fraction f, sync at byte f * size, decode
/// symbolically to the end of the stream (or `byte_budget` decompressed
/// bytes), and measure how soon sequences become trustworthy. Seeks that
/// find no block boundary are omitted from the result (the caller can tell
/// from the row count).
std::vector<SeekReportRow> random_access_report(std::span<const std::uint8_t> file,
                                                std::span<const double> fractions,
                                                const ExtractConfig& cfg, const SyncConfig& sync_cfg,
                                                std::optional<std::uint64_t> byte_budget = std::nullopt);

void write_seek_csv(std::ostream& os, std::span<const SeekReportRow> rows);

/// FASTA-like dump of extracted sequences; undetermined positions print '?'.
void write_sequences_fasta(std::ostream& os, std::span<const SymByte> data,
                           std::span<const ExtractedSeq> seqs);

} // namespace pargz
