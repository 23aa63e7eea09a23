#pragma once

#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

namespace pargz {

/// Whole-file slurp; throws IoError.
std::vector<std::uint8_t> read_file(const std::string& path);

void write_file(const std::string& path, std::span<const std::uint8_t> data);

/// Read everything from a stdio stream (used for `-` inputs).
std::vector<std::uint8_t> read_stream(std::FILE* f);

/// Byte sink for decompressed output.
class OutputSink {
  public:
    virtual ~OutputSink() = default;
    virtual void write(std::span<const std::uint8_t> data) = 0;
};

class VectorSink final : public OutputSink {
  public:
    explicit VectorSink(std::vector<std::uint8_t>& target)
      : target_(target)
    {}

    void write(std::span<const std::uint8_t> data) override
    {
        target_.insert(target_.end(), data.begin(), data.end());
    }

  private:
    std::vector<std::uint8_t>& target_;
};

/// Writes to an already-open stdio stream (does not own it).
class FileSink final : public OutputSink {
  public:
    explicit FileSink(std::FILE* f)
      : f_(f)
    {}

    void write(std::span<const std::uint8_t> data) override;

  private:
    std::FILE* f_;
};

/// Discards bytes, keeping only the count — the benchmark sink.
class NullSink final : public OutputSink {
  public:
    void write(std::span<const std::uint8_t> data) override { bytes_ += data.size(); }

    std::uint64_t bytes() const { return bytes_; }

  private:
    std::uint64_t bytes_ = 0;
};

} // namespace pargz
