#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pargz::fixtures {

/// Deterministic test-data generators. Bytes are derived straight from
/// mt19937_64 output (no std::distributions) so identical seeds give
/// identical files on every platform.

/// Uniform random A/C/G/T.
std::vector<std::uint8_t> random_dna(std::size_t size, std::uint64_t seed);

/// The FASTQ-like shape: 150 fresh random DNA characters followed by 300
/// 'x' characters, repeated to size.
std::vector<std::uint8_t> fastq_like(std::size_t size, std::uint64_t seed);

/// Four-line FASTQ records with counter headers, random DNA reads and
/// run-structured quality strings.
std::vector<std::uint8_t> synthetic_fastq(std::size_t size, std::uint64_t seed, unsigned read_len = 150);

/// Compressible ASCII prose sampled from a small lexicon.
std::vector<std::uint8_t> word_text(std::size_t size, std::uint64_t seed);

/// Incompressible printable ASCII (forces stored blocks).
std::vector<std::uint8_t> random_text(std::size_t size, std::uint64_t seed);

/// Reference gzip compression (zlib, windowBits 15+16). `level` 1..9.
std::vector<std::uint8_t> gzip_compress(std::span<const std::uint8_t> data, int level);

/// Reference decompressor — the oracle byte stream for exactness checks.
std::vector<std::uint8_t> gzip_decompress_ref(std::span<const std::uint8_t> gz);

} // namespace pargz::fixtures
