#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pargz/io.hpp"
#include "pargz/symbols.hpp"
#include "pargz/sync.hpp"
#include "pargz/tracked.hpp"

namespace pargz {

struct EngineOptions {
    unsigned threads = 0; // 0 = hardware concurrency
    bool ordered = true;
    bool verify_crc = false; // off by default in parallel mode; exactness stays checkable
    /// When set, decompress roughly this many output bytes per section,
    /// bounding memory by O(section + threads * 32 KB) instead of the whole
    /// file.
    std::optional<std::uint64_t> section_size;
    std::uint64_t min_chunk_size = 4ull << 20; // compressed bytes; block search costs ~0.1 s per boundary
    SyncConfig sync;
};

struct ChunkPlan {
    struct Chunk {
        std::uint64_t start_bit = 0;
        /// Exclusive end (a confirmed block boundary); kToFinalBlock for the
        /// last chunk, which runs to the stream's final block.
        std::uint64_t end_bit = kToFinalBlock;
    };

    static constexpr std::uint64_t kToFinalBlock = ~std::uint64_t{0};

    std::vector<Chunk> chunks;
    std::size_t deflate_start = 0; // byte offset of the DEFLATE stream
    unsigned requested = 0;        // chunk count asked for before merging
};

/// Split the whole DEFLATE stream of a gzip file into up to `n` chunks at
/// confirmed block boundaries near the n-quantile byte offsets. Chunks that
/// would undershoot min_chunk_size merge with their neighbor; boundary
/// searches that fail drop their boundary. Throws SyncError only when n >= 2
/// and every boundary search failed (binary payloads, typically).
ChunkPlan plan_chunks(std::span<const std::uint8_t> file, unsigned n, const EngineOptions& opts);

struct ChunkResult {
    std::size_t index = 0;
    std::vector<SymByte> data;  // D_i
    SymContext final_context;   // w_{i+1}
    std::uint64_t start_bit = 0;
    std::uint64_t end_bit = 0;
    bool reached_final = false;
};

/// Pass 1: decode every chunk concurrently. Chunk 0 uses the true stream
/// start (or `first_context` when continuing a section); chunks i >= 1 use
/// fresh all-placeholder contexts. Throws ChunkError naming the failing
/// chunk.
std::vector<ChunkResult> pass1(std::span<const std::uint8_t> file, const ChunkPlan& plan, unsigned threads,
                               const SymContext* first_context = nullptr);

using ResolvedContext = std::array<std::uint8_t, kWindowSize>;

/// Pass 2a: sequentially substitute placeholders so every chunk's initial
/// context becomes plain bytes. Entry i is the resolved initial context of
/// chunk i; entry 0 is meaningful only when `first_context` was used.
std::vector<ResolvedContext> pass2_resolve(const std::vector<ChunkResult>& results,
                                           const ResolvedContext* first_initial = nullptr);

struct TranslateReport {
    std::uint64_t bytes = 0;
    std::uint32_t crc = 0;
    bool crc_computed = false;
};

/// Pass 2b: map every chunk's SymBytes to bytes concurrently and hand them
/// to the sink: in index order when `ordered`, else as chunks finish
/// (whole chunks never interleave). Frees each chunk's symbolic data as it
/// is written.
TranslateReport pass2_translate(std::vector<ChunkResult>& results,
                                const std::vector<ResolvedContext>& contexts, OutputSink& sink,
                                bool ordered, unsigned threads, bool compute_crc);

struct ParallelReport {
    std::uint64_t bytes_out = 0;
    unsigned sections = 0;
    unsigned chunks = 0; // across all sections
    bool crc_verified = false;
    bool isize_mismatch = false;
    /// High-water mark of engine-held buffers (symbolic data, contexts,
    /// translation buffers), for the section-mode memory bound.
    std::uint64_t peak_buffer_bytes = 0;
};

/// Whole-file parallel decompression in two passes. Exact for any worker
/// count; with `verify_crc` the trailer CRC is checked from per-chunk
/// checksums. Requires text-like content for the boundary search when more
/// than one chunk is used.
ParallelReport decompress_parallel(std::span<const std::uint8_t> file, OutputSink& sink,
                                   const EngineOptions& opts);

} // namespace pargz
