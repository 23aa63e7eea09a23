#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pargz {

/// Reasons a gzip container or DEFLATE stream fails to parse. The hot paths
/// (block search, block decode) report these as values; the public
/// decompression entry points wrap them in FormatError.
enum class Errc {
    bad_magic,
    bad_header,
    unsupported_method,
    truncated,
    invalid_block_type,
    invalid_code_description,
    stored_length_mismatch,
    bad_symbol,
    offset_too_far,
    multi_member,
    trailing_garbage,
    length_mismatch,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public Error {
  public:
    using Error::Error;
};

class FormatError : public Error {
  public:
    FormatError(Errc code, const std::string& what)
      : Error(what)
      , code_(code)
    {}

    Errc code() const { return code_; }

  private:
    Errc code_;
};

class CrcError : public Error {
  public:
    CrcError(std::uint32_t expected, std::uint32_t actual);

    std::uint32_t expected() const { return expected_; }
    std::uint32_t actual() const { return actual_; }

  private:
    std::uint32_t expected_;
    std::uint32_t actual_;
};

/// No confirmed block start exists at or after the requested bit offset.
class SyncError : public Error {
  public:
    using Error::Error;
};

/// A worker failed while decoding one chunk of a parallel plan.
class ChunkError : public Error {
  public:
    ChunkError(std::size_t chunk_index, const std::string& what)
      : Error("chunk " + std::to_string(chunk_index) + ": " + what)
      , chunk_index_(chunk_index)
    {}

    std::size_t chunk_index() const { return chunk_index_; }

  private:
    std::size_t chunk_index_;
};

[[noreturn]] void throw_format_error(Errc code, const std::string& detail = "");

} // namespace pargz
