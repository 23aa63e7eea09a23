#include "pargz/tracked.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

#include "pargz/bit_reader.hpp"
#include "pargz/deflate.hpp"
#include "pargz/sinks.hpp"

namespace pargz {

namespace {

SymContext make_final_context(const std::vector<SymByte>& data, const SymContext* initial)
{
    SymContext ctx;
    ctx.cells.resize(kWindowSize);
    const std::size_t from_data = std::min<std::size_t>(data.size(), kWindowSize);
    const std::size_t pad = kWindowSize - from_data;
    for (std::size_t j = 0; j < pad; ++j)
        ctx.cells[j] = initial != nullptr ? initial->cells[j + from_data] : SymByte::resolved(0);
    for (std::size_t j = 0; j < from_data; ++j)
        ctx.cells[pad + j] = data[data.size() - from_data + j];
    return ctx;
}

} // namespace

TrackedOutput decompress_tracked(std::span<const std::uint8_t> bits, std::uint64_t start_bit,
                                 const SymContext* initial, StopRule stop)
{
    TrackedOutput out;
    out.start_bit = start_bit;

    BitReader br(bits, start_bit);
    BlockCodec codec;
    SymSink sink(out.data, initial);

    const StreamResult sr = decode_stream(br, codec, sink, stop, &out.blocks);
    if (sr.status != DecodeStatus::ok)
        throw_decode_error(sr.status);

    out.end_bit = sr.end_bit;
    out.reached_final = sr.reached_final;
    out.final_context = make_final_context(out.data, initial);
    return out;
}

std::vector<WindowStat> count_undetermined_windows(std::span<const SymByte> data, std::uint32_t window)
{
    assert(window > 0);
    std::vector<WindowStat> rows;
    rows.reserve(data.size() / window + 1);

    std::size_t pos = 0;
    std::uint64_t index = 0;
    while (pos < data.size()) {
        const std::uint32_t size = static_cast<std::uint32_t>(std::min<std::size_t>(window, data.size() - pos));
        std::uint32_t undet = 0;
        for (std::uint32_t k = 0; k < size; ++k)
            if (!data[pos + k].is_resolved())
                ++undet;
        rows.push_back(WindowStat{index, size, undet, 100.0 * static_cast<double>(undet) / static_cast<double>(size)});
        pos += size;
        ++index;
    }
    return rows;
}

void write_window_csv(std::ostream& os, std::span<const WindowStat> rows)
{
    os << "# pargz-csv-v1 undetermined-windows\n";
    os << "window_index,size,undetermined_count,percent\n";
    for (const WindowStat& r : rows)
        os << r.index << ',' << r.size << ',' << r.undetermined << ',' << r.percent << '\n';
}

const char* char_class_name(CharClass c)
{
    switch (c) {
        case CharClass::dna: return "dna";
        case CharClass::quality: return "quality";
        case CharClass::seq_header: return "seq_header";
        case CharClass::qual_header: return "qual_header";
    }
    return "unknown";
}

std::vector<ClassWindowStat> annotate_propagation(std::span<const SymByte> data,
                                                  std::span<const std::uint8_t> truth,
                                                  std::span<const CharClass> classes, std::uint32_t window,
                                                  std::uint32_t stride)
{
    if (data.size() != truth.size() || classes.size() != truth.size())
        throw_format_error(Errc::length_mismatch,
                           "tracked data, truth and classes must have equal length");
    assert(window > 0 && stride > 0);

    std::vector<ClassWindowStat> rows;
    if (data.empty())
        return rows;

    for (std::size_t start = 0;; start += stride) {
        const std::size_t end = std::min<std::size_t>(start + window, data.size());
        ClassWindowStat row;
        row.window_start = start;
        row.window_size = static_cast<std::uint32_t>(end - start);
        for (std::size_t i = start; i < end; ++i)
            if (!data[i].is_resolved())
                ++row.counts[static_cast<std::size_t>(classes[i])];
        rows.push_back(row);
        if (end == data.size())
            break;
    }
    return rows;
}

void write_class_csv(std::ostream& os, std::span<const ClassWindowStat> rows)
{
    os << "# pargz-csv-v1 undetermined-by-class\n";
    os << "window_start,size,dna,quality,seq_header,qual_header\n";
    for (const ClassWindowStat& r : rows) {
        os << r.window_start << ',' << r.window_size;
        for (const std::uint32_t c : r.counts)
            os << ',' << c;
        os << '\n';
    }
}

std::vector<CharClass> classify_fastq_bytes(std::span<const std::uint8_t> truth)
{
    // Split into lines, then find the 4-line phase: a '+' line whose
    // predecessor looks like sequence data anchors the pattern
    // header/sequence/'+'/quality. Positions before the anchor get classes
    // by walking the phase backwards.
    struct Line {
        std::size_t begin;
        std::size_t end; // one past the newline (or buffer end)
    };
    std::vector<Line> lines;
    std::size_t pos = 0;
    while (pos < truth.size()) {
        std::size_t nl = pos;
        while (nl < truth.size() && truth[nl] != '\n')
            ++nl;
        lines.push_back(Line{pos, std::min(nl + 1, truth.size())});
        pos = nl + 1;
    }

    const auto looks_like_dna = [&](const Line& l) {
        if (l.end <= l.begin)
            return false;
        std::size_t n = 0;
        for (std::size_t i = l.begin; i < l.end; ++i) {
            const std::uint8_t c = truth[i];
            if (c == '\n')
                continue;
            if (c != 'A' && c != 'C' && c != 'G' && c != 'T' && c != 'N')
                return false;
            ++n;
        }
        return n > 0;
    };

    // Anchor: line i starts with '+', line i-1 is DNA-like => line i-1 has
    // phase 1 (sequence).
    std::ptrdiff_t anchor = -1;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (truth[lines[i].begin] == '+' && looks_like_dna(lines[i - 1])) {
            anchor = static_cast<std::ptrdiff_t>(i - 1);
            break;
        }
    }

    static constexpr CharClass kPhase[4] = {CharClass::seq_header, CharClass::dna, CharClass::qual_header,
                                            CharClass::quality};

    std::vector<CharClass> classes(truth.size(), CharClass::quality);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        CharClass cls;
        if (anchor < 0) {
            cls = CharClass::quality; // no anchor found: not FASTQ-shaped
        } else {
            // phase of line i, with the anchor line at phase 1
            const std::ptrdiff_t ph = ((static_cast<std::ptrdiff_t>(i) - anchor + 1) % 4 + 4) % 4;
            cls = kPhase[static_cast<std::size_t>(ph)];
        }
        for (std::size_t p = lines[i].begin; p < lines[i].end; ++p)
            classes[p] = cls;
    }
    return classes;
}

} // namespace pargz
