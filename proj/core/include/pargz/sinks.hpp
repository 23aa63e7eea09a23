#pragma once

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <vector>

#include "pargz/deflate.hpp"
#include "pargz/symbols.hpp"
#include "pargz/tokens.hpp"

namespace pargz {

/// Decodes into a growing byte buffer which doubles as the back-reference
/// window. Bytes already in `out` when the sink is constructed act as known
/// history (at most 32 KB is ever reachable); counters only cover bytes
/// pushed through the sink.
class ByteSink {
  public:
    explicit ByteSink(std::vector<std::uint8_t>& out)
      : out_(out)
    {}

    bool push_literal(std::uint8_t b)
    {
        out_.push_back(b);
        ++counters_.literals;
        ++counters_.bytes_out;
        return true;
    }

    bool copy_match(std::uint32_t length, std::uint32_t offset)
    {
        if (offset > out_.size()) {
            err_ = DecodeStatus::offset_too_far;
            return false;
        }
        std::size_t src = out_.size() - offset;
        for (std::uint32_t k = 0; k < length; ++k)
            out_.push_back(out_[src + k]); // overlapping copies self-extend
        ++counters_.matches;
        counters_.match_offset_sum += offset;
        counters_.match_length_sum += length;
        counters_.bytes_out += length;
        return true;
    }

    bool push_stored(const std::uint8_t* p, std::size_t n)
    {
        out_.insert(out_.end(), p, p + n);
        counters_.literals += n; // bytes in clear count as literals
        counters_.bytes_out += n;
        return true;
    }

    DecodeStatus error() const { return err_; }
    const BlockStats& counters() const { return counters_; }

  private:
    std::vector<std::uint8_t>& out_;
    BlockStats counters_;
    DecodeStatus err_ = DecodeStatus::ok;
};

/// Symbolic decoding: the output and the back-reference window hold
/// SymBytes, so copies from the unknown initial context drag ContextRef
/// placeholders along instead of failing.
///
/// With `initial == nullptr` the sink models the true stream start: there
/// is no context at all and any reference past the produced bytes is an
/// error, exactly as in plain decoding.
class SymSink {
  public:
    SymSink(std::vector<SymByte>& out, const SymContext* initial)
      : out_(out)
      , initial_(initial)
    {}

    bool push_literal(std::uint8_t b)
    {
        out_.push_back(SymByte::resolved(b));
        ++counters_.literals;
        ++counters_.bytes_out;
        return true;
    }

    bool copy_match(std::uint32_t length, std::uint32_t offset)
    {
        const std::size_t produced = out_.size();
        std::uint32_t k = 0;
        if (offset > produced) {
            if (initial_ == nullptr) {
                err_ = DecodeStatus::offset_too_far;
                return false;
            }
            // Front part of the copy reads the initial context; the format
            // caps offsets at 32768 so the index below stays in range.
            const std::uint32_t behind = static_cast<std::uint32_t>(offset - produced);
            const std::uint32_t from_ctx = std::min(length, behind);
            const std::uint32_t ctx_start = kWindowSize - behind;
            for (; k < from_ctx; ++k)
                out_.push_back(initial_->cells[ctx_start + k]);
        }
        if (k < length) {
            std::size_t src = out_.size() - offset;
            for (; k < length; ++k)
                out_.push_back(out_[src++]); // overlapping copies self-extend
        }
        ++counters_.matches;
        counters_.match_offset_sum += offset;
        counters_.match_length_sum += length;
        counters_.bytes_out += length;
        return true;
    }

    bool push_stored(const std::uint8_t* p, std::size_t n)
    {
        for (std::size_t k = 0; k < n; ++k)
            out_.push_back(SymByte::resolved(p[k]));
        counters_.literals += n;
        counters_.bytes_out += n;
        return true;
    }

    DecodeStatus error() const { return err_; }
    const BlockStats& counters() const { return counters_; }

  private:
    std::vector<SymByte>& out_;
    const SymContext* initial_;
    BlockStats counters_;
    DecodeStatus err_ = DecodeStatus::ok;
};

} // namespace pargz
