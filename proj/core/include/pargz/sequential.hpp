#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pargz/gzip.hpp"
#include "pargz/tokens.hpp"

namespace pargz {

struct SequentialResult {
    std::vector<std::uint8_t> data;
    std::vector<BlockInfo> blocks;
    GzipHeader header;
    GzipTrailer trailer;
    bool isize_mismatch = false; // ISIZE is mod 2^32 and weak: surfaced, not fatal
    std::uint64_t deflate_end_bit = 0;
};

/// Fully decompress a single-member gzip file, verifying the trailer CRC.
///
/// Throws FormatError on malformed input (including multi_member when a
/// second member follows the trailer) and CrcError on checksum mismatch.
SequentialResult decompress_sequential(std::span<const std::uint8_t> file);

struct TokenStatsReport {
    std::optional<double> mean_match_offset; // o_a; absent when the stream has no matches
    std::optional<double> mean_match_length; // l_a
    BlockStats totals;
    std::vector<BlockInfo> blocks;
    std::uint64_t decompressed_size = 0;
};

/// Whole-stream token statistics (drives the window-size choice for the
/// undetermined-character experiments).
TokenStatsReport measure_token_stats(std::span<const std::uint8_t> file);

/// Per-block literal fraction, over token counts.
double literal_fraction(const BlockStats& s);

} // namespace pargz
