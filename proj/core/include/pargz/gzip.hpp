#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "pargz/errors.hpp"

namespace pargz {

/// Parsed gzip member header (RFC 1952). Only single-member files are
/// supported downstream; the header itself is the same either way.
struct GzipHeader {
    static constexpr std::uint8_t kFlagText = 1u << 0;
    static constexpr std::uint8_t kFlagHcrc = 1u << 1;
    static constexpr std::uint8_t kFlagExtra = 1u << 2;
    static constexpr std::uint8_t kFlagName = 1u << 3;
    static constexpr std::uint8_t kFlagComment = 1u << 4;

    std::uint8_t compression_method = 8;
    std::uint8_t flags = 0;
    std::uint32_t mtime = 0;
    std::uint8_t xfl = 0;
    std::uint8_t os = 255;
    std::optional<std::string> name;

    /// Byte offset of the first DEFLATE bit.
    std::size_t deflate_start = 10;
};

/// The 8 trailing bytes of a member: CRC-32 then length mod 2^32.
struct GzipTrailer {
    std::uint32_t crc32 = 0;
    std::uint32_t isize = 0;
};

/// Parse the member header at the start of `bytes`, skipping the optional
/// FEXTRA/FNAME/FCOMMENT/FHCRC fields.
///
/// Throws FormatError: bad_magic, unsupported_method (CM != 8), bad_header
/// (reserved flag bits), truncated.
GzipHeader parse_gzip_header(std::span<const std::uint8_t> bytes);

/// Read the trailer occupying the last 8 bytes of a single-member file.
GzipTrailer parse_gzip_trailer(std::span<const std::uint8_t> file);

/// Trailer starting at `offset`.
GzipTrailer parse_gzip_trailer_at(std::span<const std::uint8_t> file, std::size_t offset);

/// Verify nothing meaningful follows a member's trailer: throws multi_member
/// when another member starts at `pos` (refused by design), trailing_garbage
/// for anything else but zero padding.
void check_single_member(std::span<const std::uint8_t> file, std::size_t pos);

} // namespace pargz
