#include "pargz/fastq.hpp"

#include <algorithm>
#include <array>
#include <ostream>

#include "pargz/stream.hpp"
#include "pargz/tracked.hpp"

namespace pargz {

namespace {

struct CharTable {
    std::array<bool, 256> is_nuc{};

    explicit CharTable(bool lowercase)
    {
        for (const char c : {'A', 'C', 'G', 'T', 'N'})
            is_nuc[static_cast<unsigned char>(c)] = true;
        if (lowercase)
            for (const char c : {'a', 'c', 'g', 't', 'n'})
                is_nuc[static_cast<unsigned char>(c)] = true;
    }
};

inline bool is_undetermined(SymByte s)
{
    return !s.is_resolved();
}

inline bool is_newline(SymByte s)
{
    return s.is_resolved() && s.byte() == '\n';
}

inline bool is_terminator(SymByte s)
{
    return is_newline(s) || is_undetermined(s);
}

bool crosses_boundary(std::span<const std::uint64_t> boundaries, std::uint64_t start, std::uint64_t end)
{
    // A body [start, end) crosses when some boundary falls strictly inside.
    auto it = std::upper_bound(boundaries.begin(), boundaries.end(), start);
    return it != boundaries.end() && *it < end;
}

} // namespace

std::vector<ExtractedSeq> extract_sequences(std::span<const SymByte> data,
                                            std::span<const std::uint64_t> block_boundaries,
                                            const ExtractConfig& cfg)
{
    const CharTable tbl(cfg.allow_lowercase);
    const auto is_nuc = [&](SymByte s) { return s.is_resolved() && tbl.is_nuc[s.byte()]; };

    std::vector<ExtractedSeq> seqs;
    const std::size_t n = data.size();
    std::size_t i = 0;

    while (i < n) {
        if (!is_terminator(data[i])) {
            ++i;
            continue;
        }

        // data[i] is a candidate leading T; the body must open with a
        // nucleotide run.
        std::size_t j = i + 1;
        if (j >= n || !is_nuc(data[j])) {
            ++i;
            continue;
        }

        bool ambiguous_so_far = false;  // interior undetermined runs seen up to j
        bool ambiguous_at_end = false;  // snapshot taken with body_end
        std::ptrdiff_t body_end = -1;   // position of the trailing T once found
        for (;;) {
            while (j < n && is_nuc(data[j]))
                ++j;
            // After a nucleotide run: newline closes, an undetermined run
            // may close here or continue the body if nucleotides follow.
            if (j >= n)
                break;
            if (is_newline(data[j])) {
                body_end = static_cast<std::ptrdiff_t>(j);
                ambiguous_at_end = ambiguous_so_far;
                break;
            }
            if (is_undetermined(data[j])) {
                body_end = static_cast<std::ptrdiff_t>(j);
                ambiguous_at_end = ambiguous_so_far;
                std::size_t k = j;
                while (k < n && is_undetermined(data[k]))
                    ++k;
                if (k < n && is_nuc(data[k])) {
                    ambiguous_so_far = true; // this undetermined run joins the body
                    j = k;
                    continue;
                }
            }
            break;
        }

        if (body_end < 0) {
            // No trailing terminator; nothing between i and j can host one.
            i = j;
            continue;
        }

        const std::uint64_t start = static_cast<std::uint64_t>(i) + 1;
        const std::uint64_t end = static_cast<std::uint64_t>(body_end);
        if (end - start >= cfg.min_read_len) {
            ExtractedSeq s;
            s.start = start;
            s.end = end;
            s.ambiguous = ambiguous_at_end;
            s.spans_block_boundary = crosses_boundary(block_boundaries, start, end);
            seqs.push_back(s);
        }
        // The trailing terminator may serve as the next leading one.
        i = static_cast<std::size_t>(body_end);
    }
    return seqs;
}

std::vector<BlockClassification> classify_blocks(std::span<const SymByte> data,
                                                 std::span<const std::uint64_t> block_boundaries,
                                                 const ExtractConfig& cfg)
{
    const std::vector<ExtractedSeq> seqs = extract_sequences(data, block_boundaries, cfg);

    std::vector<BlockClassification> blocks(block_boundaries.size());
    for (std::size_t b = 0; b < block_boundaries.size(); ++b) {
        blocks[b].block_index = b;
        blocks[b].block_offset = block_boundaries[b];
    }

    for (const ExtractedSeq& s : seqs) {
        // The owning block is the last boundary at or before the start.
        auto it = std::upper_bound(block_boundaries.begin(), block_boundaries.end(), s.start);
        if (it == block_boundaries.begin())
            continue; // before the first block boundary: unattributable
        const std::size_t b = static_cast<std::size_t>(it - block_boundaries.begin()) - 1;
        ++blocks[b].seq_count;
        if (s.ambiguous)
            ++blocks[b].ambiguous_count;
    }

    for (BlockClassification& b : blocks)
        b.sequence_resolved = b.seq_count >= cfg.resolved_block_min_seqs && b.ambiguous_count == 0;
    return blocks;
}

SeekProbe run_seek_probe(std::span<const std::uint8_t> file, std::uint64_t byte_offset,
                         const ExtractConfig& cfg, const SyncConfig& sync_cfg,
                         std::optional<std::uint64_t> byte_budget)
{
    SeekProbe probe;
    probe.row.seek_offset = byte_offset;

    const std::optional<SyncResult> sync = find_next_block(file, byte_offset * 8, sync_cfg);
    if (!sync.has_value())
        return probe; // no boundary from here (final-block region or not text)
    probe.sync_found = true;
    probe.row.sync_bit = sync->block_start_bit;

    const StopRule stop =
      byte_budget.has_value() ? StopRule::after_n_bytes(*byte_budget) : StopRule::at_final_block();
    const SymContext fresh = SymContext::fresh_refs();
    TrackedOutput out = decompress_tracked(file, sync->block_start_bit, &fresh, stop);

    probe.block_offsets.reserve(out.blocks.size());
    for (const BlockInfo& b : out.blocks)
        probe.block_offsets.push_back(b.data_offset);
    probe.data = std::move(out.data);
    probe.seqs = extract_sequences(probe.data, probe.block_offsets, cfg);

    const std::vector<BlockClassification> blocks =
      classify_blocks(probe.data, probe.block_offsets, cfg);
    const auto resolved = std::find_if(blocks.begin(), blocks.end(),
                                       [](const BlockClassification& b) { return b.sequence_resolved; });
    if (resolved != blocks.end()) {
        probe.row.resolved_block_found = true;
        probe.row.delay_bytes = resolved->block_offset;
        // Trustworthiness of everything from the resolved block on.
        for (const ExtractedSeq& s : probe.seqs) {
            if (s.start < resolved->block_offset)
                continue;
            ++probe.row.seq_total;
            if (s.ambiguous)
                ++probe.row.seq_ambiguous;
        }
        probe.row.percent_unambiguous =
          probe.row.seq_total == 0
            ? 0.0
            : 100.0 * static_cast<double>(probe.row.seq_total - probe.row.seq_ambiguous) /
                static_cast<double>(probe.row.seq_total);
    }
    return probe;
}

std::vector<SeekReportRow> random_access_report(std::span<const std::uint8_t> file,
                                                std::span<const double> fractions,
                                                const ExtractConfig& cfg, const SyncConfig& sync_cfg,
                                                std::optional<std::uint64_t> byte_budget)
{
    std::vector<SeekReportRow> rows;
    for (const double f : fractions) {
        const std::uint64_t offset = static_cast<std::uint64_t>(f * static_cast<double>(file.size()));
        const SeekProbe probe = run_seek_probe(file, offset, cfg, sync_cfg, byte_budget);
        if (probe.sync_found)
            rows.push_back(probe.row);
    }
    return rows;
}

void write_seek_csv(std::ostream& os, std::span<const SeekReportRow> rows)
{
    os << "# pargz-csv-v1 random-access-report\n";
    os << "seek_offset,delay_bytes,seq_total,seq_ambiguous,percent_unambiguous,resolved_block_found\n";
    for (const SeekReportRow& r : rows) {
        os << r.seek_offset << ',' << r.delay_bytes << ',' << r.seq_total << ',' << r.seq_ambiguous << ','
           << r.percent_unambiguous << ',' << (r.resolved_block_found ? 1 : 0) << '\n';
    }
}

void write_sequences_fasta(std::ostream& os, std::span<const SymByte> data,
                           std::span<const ExtractedSeq> seqs)
{
    std::size_t id = 0;
    for (const ExtractedSeq& s : seqs) {
        os << ">seq" << id++ << " span=" << s.start << '-' << s.end
           << (s.ambiguous ? " ambiguous" : "") << (s.spans_block_boundary ? " spans-blocks" : "") << '\n';
        for (std::uint64_t p = s.start; p < s.end; ++p)
            os.put(data[p].is_resolved() ? static_cast<char>(data[p].byte()) : '?');
        os.put('\n');
    }
}

} // namespace pargz
