#include "pargz/gzip.hpp"

namespace pargz {

namespace {

std::uint16_t read_u16le(const std::uint8_t* p)
{
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32le(const std::uint8_t* p)
{
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

} // namespace

const char* errc_name(Errc c)
{
    switch (c) {
        case Errc::bad_magic: return "bad_magic";
        case Errc::bad_header: return "bad_header";
        case Errc::unsupported_method: return "unsupported_method";
        case Errc::truncated: return "truncated";
        case Errc::invalid_block_type: return "invalid_block_type";
        case Errc::invalid_code_description: return "invalid_code_description";
        case Errc::stored_length_mismatch: return "stored_length_mismatch";
        case Errc::bad_symbol: return "bad_symbol";
        case Errc::offset_too_far: return "offset_too_far";
        case Errc::multi_member: return "multi_member";
        case Errc::trailing_garbage: return "trailing_garbage";
        case Errc::length_mismatch: return "length_mismatch";
    }
    return "unknown";
}

void throw_format_error(Errc code, const std::string& detail)
{
    std::string msg = errc_name(code);
    if (!detail.empty()) {
        msg += ": ";
        msg += detail;
    }
    throw FormatError(code, msg);
}

CrcError::CrcError(std::uint32_t expected, std::uint32_t actual)
  : Error("crc32 mismatch: trailer says " + std::to_string(expected) + ", data gives " + std::to_string(actual))
  , expected_(expected)
  , actual_(actual)
{}

GzipHeader parse_gzip_header(std::span<const std::uint8_t> bytes)
{
    if (bytes.size() < 10)
        throw_format_error(Errc::truncated, "gzip header needs 10 bytes");
    if (bytes[0] != 0x1F || bytes[1] != 0x8B)
        throw_format_error(Errc::bad_magic, "not a gzip file");
    if (bytes[2] != 8)
        throw_format_error(Errc::unsupported_method, "compression method " + std::to_string(bytes[2]));

    GzipHeader h;
    h.compression_method = bytes[2];
    h.flags = bytes[3];
    if (h.flags & 0xE0)
        throw_format_error(Errc::bad_header, "reserved header flag bits set");
    h.mtime = read_u32le(bytes.data() + 4);
    h.xfl = bytes[8];
    h.os = bytes[9];

    std::size_t pos = 10;
    const auto need = [&](std::size_t n) {
        if (pos + n > bytes.size())
            throw_format_error(Errc::truncated, "gzip header optional fields");
    };

    if (h.flags & GzipHeader::kFlagExtra) {
        need(2);
        const std::uint16_t xlen = read_u16le(bytes.data() + pos);
        pos += 2;
        need(xlen);
        pos += xlen;
    }
    if (h.flags & GzipHeader::kFlagName) {
        std::string name;
        for (;;) {
            need(1);
            const std::uint8_t c = bytes[pos++];
            if (c == 0)
                break;
            name.push_back(static_cast<char>(c));
        }
        h.name = std::move(name);
    }
    if (h.flags & GzipHeader::kFlagComment) {
        for (;;) {
            need(1);
            if (bytes[pos++] == 0)
                break;
        }
    }
    if (h.flags & GzipHeader::kFlagHcrc) {
        need(2);
        pos += 2; // stored header CRC16, skipped
    }

    h.deflate_start = pos;
    return h;
}

GzipTrailer parse_gzip_trailer(std::span<const std::uint8_t> file)
{
    if (file.size() < 8)
        throw_format_error(Errc::truncated, "gzip trailer needs 8 bytes");
    return parse_gzip_trailer_at(file, file.size() - 8);
}

GzipTrailer parse_gzip_trailer_at(std::span<const std::uint8_t> file, std::size_t offset)
{
    if (offset + 8 > file.size())
        throw_format_error(Errc::truncated, "gzip trailer needs 8 bytes");
    GzipTrailer t;
    t.crc32 = read_u32le(file.data() + offset);
    t.isize = read_u32le(file.data() + offset + 4);
    return t;
}

void check_single_member(std::span<const std::uint8_t> file, std::size_t pos)
{
    if (pos >= file.size())
        return;
    if (file.size() - pos >= 2 && file[pos] == 0x1F && file[pos + 1] == 0x8B)
        throw_format_error(Errc::multi_member, "second gzip member at byte " + std::to_string(pos));
    for (std::size_t i = pos; i < file.size(); ++i)
        if (file[i] != 0)
            throw_format_error(Errc::trailing_garbage,
                               std::to_string(file.size() - pos) + " bytes after gzip trailer");
}

} // namespace pargz
