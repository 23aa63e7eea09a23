#include "pargz/io.hpp"

#include <cerrno>
#include <cstring>

#include "pargz/errors.hpp"

namespace pargz {

namespace {

[[noreturn]] void throw_errno(const std::string& what, const std::string& path)
{
    throw IoError(what + " " + path + ": " + std::strerror(errno));
}

} // namespace

std::vector<std::uint8_t> read_file(const std::string& path)
{
    std::FILE* f = std::fopen(path.c_str(), "rb");
    if (f == nullptr)
        throw_errno("cannot open", path);

    std::vector<std::uint8_t> data;
    if (std::fseek(f, 0, SEEK_END) == 0) {
        const long size = std::ftell(f);
        if (size > 0)
            data.reserve(static_cast<std::size_t>(size));
        std::fseek(f, 0, SEEK_SET);
    }

    std::uint8_t buf[1 << 16];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0)
        data.insert(data.end(), buf, buf + n);
    const bool bad = std::ferror(f) != 0;
    std::fclose(f);
    if (bad)
        throw_errno("read error on", path);
    return data;
}

void write_file(const std::string& path, std::span<const std::uint8_t> data)
{
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f == nullptr)
        throw_errno("cannot create", path);
    const std::size_t n = std::fwrite(data.data(), 1, data.size(), f);
    const bool bad = n != data.size() || std::fclose(f) != 0;
    if (bad)
        throw_errno("write error on", path);
}

std::vector<std::uint8_t> read_stream(std::FILE* f)
{
    std::vector<std::uint8_t> data;
    std::uint8_t buf[1 << 16];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, f)) > 0)
        data.insert(data.end(), buf, buf + n);
    if (std::ferror(f) != 0)
        throw IoError("read error on input stream");
    return data;
}

void FileSink::write(std::span<const std::uint8_t> data)
{
    if (std::fwrite(data.data(), 1, data.size(), f_) != data.size())
        throw IoError("write failed: " + std::string(std::strerror(errno)));
}

} // namespace pargz
