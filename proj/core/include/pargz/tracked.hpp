#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pargz/stream.hpp"
#include "pargz/symbols.hpp"
#include "pargz/tokens.hpp"

namespace pargz {

/// Result of decoding a stream region over SymBytes.
struct TrackedOutput {
    std::vector<SymByte> data;           // D_i
    std::vector<BlockInfo> blocks;       // boundaries and per-block stats
    SymContext final_context;            // last 32 KB, front-padded from the initial context
    std::uint64_t start_bit = 0;
    std::uint64_t end_bit = 0;
    bool reached_final = false;
};

/// Decode from `start_bit` (a block boundary) with a symbolic initial
/// context. `initial == nullptr` means the true stream start: no context
/// exists and out-of-range references are errors, which makes this decode
/// byte-equivalent to the plain one.
///
/// Literals decode to resolved bytes; matches copy SymBytes verbatim, so a
/// copied ContextRef stays a ContextRef. That propagation is the whole
/// mechanism: output positions still referencing the initial context are
/// exactly the undetermined characters.
TrackedOutput decompress_tracked(std::span<const std::uint8_t> bits, std::uint64_t start_bit,
                                 const SymContext* initial, StopRule stop);

struct WindowStat {
    std::uint64_t index = 0;
    std::uint32_t size = 0;
    std::uint32_t undetermined = 0;
    double percent = 0.0;
};

/// Undetermined counts over non-overlapping windows; the last window may be
/// partial and reports its actual size.
std::vector<WindowStat> count_undetermined_windows(std::span<const SymByte> data, std::uint32_t window);

void write_window_csv(std::ostream& os, std::span<const WindowStat> rows);

enum class CharClass : std::uint8_t {
    dna = 0,
    quality = 1,
    seq_header = 2,
    qual_header = 3,
};

constexpr std::size_t kNumCharClasses = 4;
const char* char_class_name(CharClass c);

struct ClassWindowStat {
    std::uint64_t window_start = 0;
    std::uint32_t window_size = 0;
    std::array<std::uint32_t, kNumCharClasses> counts{}; // undetermined positions per class
};

/// For each sliding window, how many still-undetermined positions fall in
/// each character class of the true (oracle) stream. `classes` must label
/// every truth byte; throws FormatError(length_mismatch) when the tracked
/// data and truth disagree in length.
std::vector<ClassWindowStat> annotate_propagation(std::span<const SymByte> data,
                                                  std::span<const std::uint8_t> truth,
                                                  std::span<const CharClass> classes,
                                                  std::uint32_t window = kWindowSize,
                                                  std::uint32_t stride = 4096);

void write_class_csv(std::ostream& os, std::span<const ClassWindowStat> rows);

/// Label each byte of a FASTQ stream by line type. The stream may begin
/// mid-record: the phase is recovered from the first '+' line that follows
/// a plausible sequence line. Newlines take the class of their line.
std::vector<CharClass> classify_fastq_bytes(std::span<const std::uint8_t> truth);

} // namespace pargz
