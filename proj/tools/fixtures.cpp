#include "fixtures.hpp"

#include <cstring>
#include <random>
#include <stdexcept>
#include <string>

#include <zlib.h>

namespace pargz::fixtures {

namespace {

constexpr char kNucs[4] = {'A', 'C', 'G', 'T'};

void append_dna(std::vector<std::uint8_t>& out, std::size_t n, std::mt19937_64& rng)
{
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(static_cast<std::uint8_t>(kNucs[rng() & 3]));
}

} // namespace

std::vector<std::uint8_t> random_dna(std::size_t size, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out;
    out.reserve(size);
    append_dna(out, size, rng);
    return out;
}

std::vector<std::uint8_t> fastq_like(std::size_t size, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out;
    out.reserve(size);
    while (out.size() < size) {
        append_dna(out, std::min<std::size_t>(150, size - out.size()), rng);
        for (std::size_t i = 0; i < 300 && out.size() < size; ++i)
            out.push_back('x');
    }
    return out;
}

std::vector<std::uint8_t> synthetic_fastq(std::size_t size, std::uint64_t seed, unsigned read_len)
{
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out;
    out.reserve(size + 512);

    // Reads resequence a small reference with occasional errors instead of
    // being fresh randomness: overlapping reads give the compressor long
    // matches, the way real sequencing data does. Quality strings use a
    // small run-structured alphabet chosen to share no character with the
    // nucleotides, so juxtaposition alone cannot look like a read.
    static constexpr std::size_t kGenomeSize = 600;
    static constexpr char kQuals[8] = {'#', ',', ':', 'F', '*', '<', '7', 'I'};
    std::vector<char> genome(kGenomeSize);
    for (char& c : genome)
        c = kNucs[rng() & 3];

    std::uint64_t rec = 0;
    while (out.size() < size) {
        const std::string header = "@SIM:1:FC01:" + std::to_string(rec) + " 1:N:0:ACGTAC\n";
        out.insert(out.end(), header.begin(), header.end());
        const std::size_t pos = read_len < kGenomeSize ? rng() % (kGenomeSize - read_len) : 0;
        for (unsigned i = 0; i < read_len; ++i) {
            char c = genome[(pos + i) % kGenomeSize];
            if ((rng() & 0x3FF) < 10) // ~1% sequencing error
                c = kNucs[rng() & 3];
            out.push_back(static_cast<std::uint8_t>(c));
        }
        out.push_back('\n');
        out.push_back('+');
        out.push_back('\n');
        char q = kQuals[rng() & 7];
        for (unsigned i = 0; i < read_len; ++i) {
            if ((rng() & 0xFF) < 77) // switch bins with probability ~0.3
                q = kQuals[rng() & 7];
            out.push_back(static_cast<std::uint8_t>(q));
        }
        out.push_back('\n');
        ++rec;
    }
    out.resize(size);
    return out;
}

std::vector<std::uint8_t> word_text(std::size_t size, std::uint64_t seed)
{
    static const char* kWords[] = {
        "the",     "quick",  "brown",   "fox",     "jumps",   "over",    "lazy",   "dog",
        "stream",  "buffer", "window",  "context", "block",   "symbol",  "length", "offset",
        "archive", "record", "thread",  "chunk",   "parser",  "decoder", "output", "input",
        "binary",  "little", "endian",  "header",  "trailer", "caught",  "signal", "memory",
    };
    constexpr std::size_t kNumWords = sizeof(kWords) / sizeof(kWords[0]);

    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out;
    out.reserve(size + 16);
    std::size_t col = 0;
    while (out.size() < size) {
        const char* w = kWords[rng() % kNumWords];
        const std::size_t len = std::strlen(w);
        for (std::size_t i = 0; i < len; ++i)
            out.push_back(static_cast<std::uint8_t>(w[i]));
        col += len + 1;
        if (col > 70) {
            out.push_back('\n');
            col = 0;
        } else {
            out.push_back(' ');
        }
    }
    out.resize(size);
    return out;
}

std::vector<std::uint8_t> random_text(std::size_t size, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::uint8_t> out;
    out.reserve(size);
    for (std::size_t i = 0; i < size; ++i) {
        if ((i + 1) % 80 == 0) {
            out.push_back('\n');
            continue;
        }
        out.push_back(static_cast<std::uint8_t>(0x20 + rng() % 95));
    }
    return out;
}

std::vector<std::uint8_t> gzip_compress(std::span<const std::uint8_t> data, int level)
{
    if (level < 1 || level > 9)
        throw std::invalid_argument("compression level must be 1..9");

    z_stream zs{};
    if (deflateInit2(&zs, level, Z_DEFLATED, 15 + 16, 8, Z_DEFAULT_STRATEGY) != Z_OK)
        throw std::runtime_error("deflateInit2 failed");

    std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(data.size())) + 32);
    zs.next_in = const_cast<Bytef*>(data.data());
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());

    const int rc = deflate(&zs, Z_FINISH);
    if (rc != Z_STREAM_END) {
        deflateEnd(&zs);
        throw std::runtime_error("deflate failed: " + std::to_string(rc));
    }
    out.resize(zs.total_out);
    deflateEnd(&zs);
    return out;
}

std::vector<std::uint8_t> gzip_decompress_ref(std::span<const std::uint8_t> gz)
{
    z_stream zs{};
    if (inflateInit2(&zs, 15 + 16) != Z_OK)
        throw std::runtime_error("inflateInit2 failed");

    std::vector<std::uint8_t> out;
    out.resize(std::max<std::size_t>(gz.size() * 4, 1 << 16));
    zs.next_in = const_cast<Bytef*>(gz.data());
    zs.avail_in = static_cast<uInt>(gz.size());

    std::size_t produced = 0;
    for (;;) {
        zs.next_out = out.data() + produced;
        zs.avail_out = static_cast<uInt>(out.size() - produced);
        const int rc = inflate(&zs, Z_NO_FLUSH);
        produced = out.size() - zs.avail_out;
        if (rc == Z_STREAM_END)
            break;
        if (rc == Z_OK || rc == Z_BUF_ERROR) {
            if (zs.avail_out == 0) {
                out.resize(out.size() * 2);
                continue;
            }
            if (rc == Z_BUF_ERROR) {
                inflateEnd(&zs);
                throw std::runtime_error("inflate: truncated input");
            }
            continue;
        }
        inflateEnd(&zs);
        throw std::runtime_error("inflate failed: " + std::to_string(rc));
    }
    out.resize(produced);
    inflateEnd(&zs);
    return out;
}

} // namespace pargz::fixtures
