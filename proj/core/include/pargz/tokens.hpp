#pragma once

#include <cstdint>

namespace pargz {

constexpr unsigned kWindowSize = 32768; // DEFLATE context size W
constexpr unsigned kMinMatchLen = 3;
constexpr unsigned kMaxMatchLen = 258;

enum class BlockType : std::uint8_t {
    stored = 0,
    fixed_huffman = 1,
    dynamic_huffman = 2,
};

/// One DEFLATE phrase: a literal byte or a back-reference.
struct Token {
    enum class Kind : std::uint8_t { literal, match };

    Kind kind;
    std::uint8_t literal = 0;  // kind == literal
    std::uint32_t offset = 0;  // kind == match, 1..32768
    std::uint32_t length = 0;  // kind == match, 3..258

    static Token make_literal(std::uint8_t b) { return Token{Kind::literal, b, 0, 0}; }
    static Token make_match(std::uint32_t offset, std::uint32_t length)
    {
        return Token{Kind::match, 0, offset, length};
    }
};

/// Token-level tallies for one block (or a whole stream when summed).
struct BlockStats {
    std::uint64_t literals = 0;
    std::uint64_t matches = 0;
    std::uint64_t match_offset_sum = 0;
    std::uint64_t match_length_sum = 0;
    std::uint64_t bytes_out = 0;

    BlockStats& operator+=(const BlockStats& o)
    {
        literals += o.literals;
        matches += o.matches;
        match_offset_sum += o.match_offset_sum;
        match_length_sum += o.match_length_sum;
        bytes_out += o.bytes_out;
        return *this;
    }
};

/// Where a block sits in the bitstream and in the decoded output.
struct BlockInfo {
    std::uint64_t start_bit = 0;
    std::uint64_t end_bit = 0;
    std::uint64_t data_offset = 0; // offset of the block's first byte in the decoded stream
    BlockType type = BlockType::stored;
    bool bfinal = false;
    BlockStats stats;
};

} // namespace pargz
