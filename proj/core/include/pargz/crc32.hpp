#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace pargz {

/// CRC-32 as used by the gzip trailer (reflected, polynomial 0xEDB88320,
/// initial value and final xor 0xFFFFFFFF). `crc` chains calls: pass the
/// previous return value to continue a running checksum, 0 to start.
std::uint32_t crc32(std::uint32_t crc, std::span<const std::uint8_t> data);

/// Checksum of the concatenation A||B given crc(A), crc(B) and |B|.
/// Lets the parallel engine verify a whole file from per-chunk checksums
/// without a second pass over the output.
std::uint32_t crc32_combine(std::uint32_t crc_a, std::uint32_t crc_b, std::uint64_t len_b);

} // namespace pargz
