#include "pargz/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "pargz/crc32.hpp"
#include "pargz/gzip.hpp"

namespace pargz {

namespace {

unsigned effective_threads(unsigned requested)
{
    if (requested != 0)
        return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw != 0 ? hw : 1;
}

/// High-water mark of buffers the engine holds at once; what the
/// section-mode memory bound is checked against.
class BufferAccountant {
  public:
    void add(std::uint64_t n)
    {
        const std::uint64_t cur = current_.fetch_add(n, std::memory_order_relaxed) + n;
        std::uint64_t p = peak_.load(std::memory_order_relaxed);
        while (p < cur && !peak_.compare_exchange_weak(p, cur, std::memory_order_relaxed)) {
        }
    }

    void sub(std::uint64_t n) { current_.fetch_sub(n, std::memory_order_relaxed); }

    std::uint64_t peak() const { return peak_.load(std::memory_order_relaxed); }

  private:
    std::atomic<std::uint64_t> current_{0};
    std::atomic<std::uint64_t> peak_{0};
};

constexpr std::uint64_t kChunkContextBytes = kWindowSize * sizeof(SymByte);

struct PlanOutcome {
    ChunkPlan plan;
    unsigned searches_attempted = 0;
    unsigned searches_succeeded = 0;
};

/// Plan up to n chunks covering compressed bytes [start_bit/8,
/// region_begin + region_size). The region end, when it is not the end of
/// the stream, is itself refined to a confirmed boundary which becomes the
/// exclusive end of the last chunk (and the next section's start).
PlanOutcome plan_range(std::span<const std::uint8_t> file, std::uint64_t start_bit,
                       std::uint64_t region_size, unsigned n, const EngineOptions& opts)
{
    PlanOutcome out;
    out.plan.requested = n;
    out.plan.deflate_start = static_cast<std::size_t>(start_bit / 8);

    const std::uint64_t region_begin = start_bit / 8;
    // The stream certainly ends before the trailer; good enough for targets.
    const std::uint64_t stream_end = file.size() >= 8 ? file.size() - 8 : 0;
    const std::uint64_t region_end = std::min<std::uint64_t>(stream_end, region_begin + region_size);

    std::vector<std::uint64_t> starts{start_bit};
    std::uint64_t end_bit = ChunkPlan::kToFinalBlock;

    // Interior targets that would undershoot min_chunk_size merge into
    // their predecessor; failed searches do the same.
    for (unsigned i = 1; i < n; ++i) {
        const std::uint64_t target = region_begin + (region_size * i) / n;
        if (target >= stream_end)
            break; // remainder of the stream joins the last chunk
        if (target - starts.back() / 8 < opts.min_chunk_size)
            continue;
        const std::uint64_t search_from = std::max<std::uint64_t>(target * 8, starts.back() + 1);
        ++out.searches_attempted;
        const std::optional<SyncResult> sync = find_next_block(file, search_from, opts.sync);
        if (!sync.has_value())
            continue; // no boundary before EOF: merge forward
        ++out.searches_succeeded;
        starts.push_back(sync->block_start_bit);
    }

    // The region end becomes the exclusive bound of the last chunk (and the
    // next section's start). A too-close end target is pushed out rather
    // than dropped, so a section never silently swallows the whole rest of
    // the stream.
    if (region_end < stream_end) {
        const std::uint64_t end_target =
          std::max<std::uint64_t>(region_end, starts.back() / 8 + opts.min_chunk_size);
        if (end_target < stream_end) {
            const std::uint64_t search_from = std::max<std::uint64_t>(end_target * 8, starts.back() + 1);
            ++out.searches_attempted;
            const std::optional<SyncResult> sync = find_next_block(file, search_from, opts.sync);
            if (sync.has_value()) {
                ++out.searches_succeeded;
                end_bit = sync->block_start_bit;
            }
        }
    }

    for (std::size_t i = 0; i < starts.size(); ++i) {
        ChunkPlan::Chunk c;
        c.start_bit = starts[i];
        c.end_bit = i + 1 < starts.size() ? starts[i + 1] : end_bit;
        out.plan.chunks.push_back(c);
    }
    return out;
}

[[noreturn]] void report_unchunkable(std::uint64_t after_byte)
{
    throw SyncError("no DEFLATE block boundary confirmed after byte " + std::to_string(after_byte) +
                    "; non-text payloads cannot be chunked (ASCII checks fail) — use sequential mode");
}

std::vector<ChunkResult> pass1_impl(std::span<const std::uint8_t> file, const ChunkPlan& plan,
                                    unsigned threads, const SymContext* first_context,
                                    BufferAccountant* acct)
{
    const std::size_t n = plan.chunks.size();
    std::vector<ChunkResult> results(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                const ChunkPlan::Chunk& ck = plan.chunks[i];
                const bool to_final = ck.end_bit == ChunkPlan::kToFinalBlock;
                const StopRule stop = to_final ? StopRule::at_final_block() : StopRule::at_bit_limit(ck.end_bit);

                SymContext fresh;
                const SymContext* initial = nullptr;
                if (i == 0) {
                    initial = first_context; // nullptr = true stream start
                } else {
                    fresh = SymContext::fresh_refs();
                    initial = &fresh;
                }

                TrackedOutput out = decompress_tracked(file, ck.start_bit, initial, stop);
                if (out.reached_final && !to_final)
                    throw_format_error(Errc::multi_member,
                                       "final block before the planned chunk end — concatenated members?");

                ChunkResult r;
                r.index = i;
                r.data = std::move(out.data);
                r.final_context = std::move(out.final_context);
                r.start_bit = out.start_bit;
                r.end_bit = out.end_bit;
                r.reached_final = out.reached_final;
                if (acct != nullptr)
                    acct->add(r.data.size() * sizeof(SymByte) + kChunkContextBytes);
                results[i] = std::move(r);
            } catch (...) {
                errors[i] = std::current_exception();
                next.store(n); // stop handing out further chunks
            }
        }
    };

    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (std::thread& t : pool)
            t.join();
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i] != nullptr) {
            try {
                std::rethrow_exception(errors[i]);
            } catch (const std::exception& e) {
                throw ChunkError(i, e.what());
            }
        }
    }
    return results;
}

ResolvedContext resolve_context(const SymContext& sym, const ResolvedContext& initial)
{
    ResolvedContext out;
    for (std::size_t j = 0; j < kWindowSize; ++j) {
        const SymByte s = sym.cells[j];
        out[j] = s.is_resolved() ? s.byte() : initial[s.ref_index()];
    }
    return out;
}

TranslateReport translate_impl(std::vector<ChunkResult>& results,
                               const std::vector<ResolvedContext>& contexts, OutputSink& sink,
                               bool ordered, unsigned threads, bool compute_crc, BufferAccountant* acct)
{
    const std::size_t n = results.size();

    struct Slot {
        std::vector<std::uint8_t> bytes;
        std::uint32_t crc = 0;
        std::uint64_t len = 0;
        bool ready = false;
    };
    std::vector<Slot> slots(n);
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};

    auto translate_one = [&](std::size_t i) {
        const std::vector<SymByte>& data = results[i].data;
        const ResolvedContext& ctx = contexts[i];
        std::vector<std::uint8_t> bytes(data.size());
        for (std::size_t k = 0; k < data.size(); ++k) {
            const SymByte s = data[k];
            bytes[k] = s.is_resolved() ? s.byte() : ctx[s.ref_index()];
        }
        if (acct != nullptr) {
            acct->add(bytes.size());
            acct->sub(data.size() * sizeof(SymByte));
        }
        std::vector<SymByte>().swap(results[i].data); // symbolic copy no longer needed
        if (compute_crc)
            slots[i].crc = crc32(0, bytes);
        slots[i].len = bytes.size();
        slots[i].bytes = std::move(bytes);
    };

    auto release_slot = [&](std::size_t i) {
        if (acct != nullptr)
            acct->sub(slots[i].bytes.size());
        std::vector<std::uint8_t>().swap(slots[i].bytes);
    };

    TranslateReport rep;

    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            translate_one(i);
            rep.bytes += slots[i].bytes.size();
            sink.write(slots[i].bytes);
            release_slot(i);
        }
    } else if (ordered) {
        // Workers translate; this thread writes chunks strictly in order.
        auto work = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                translate_one(i);
                {
                    std::lock_guard<std::mutex> lk(mu);
                    slots[i].ready = true;
                }
                cv.notify_all();
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (std::size_t i = 0; i < n; ++i) {
            std::unique_lock<std::mutex> lk(mu);
            cv.wait(lk, [&] { return slots[i].ready; });
            lk.unlock();
            rep.bytes += slots[i].bytes.size();
            sink.write(slots[i].bytes);
            release_slot(i);
        }
        for (std::thread& t : pool)
            t.join();
    } else {
        // Unordered: whole chunks go out as they finish, under a sink lock.
        std::mutex sink_mu;
        std::atomic<std::uint64_t> bytes{0};
        auto work = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                translate_one(i);
                {
                    std::lock_guard<std::mutex> lk(sink_mu);
                    sink.write(slots[i].bytes);
                }
                bytes += slots[i].bytes.size();
                release_slot(i);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (std::thread& t : pool)
            t.join();
        rep.bytes = bytes.load();
    }

    if (compute_crc) {
        // Per-chunk checksums fold into the stream checksum in index order,
        // independent of the order chunks were written.
        std::uint32_t crc = 0;
        for (std::size_t i = 0; i < n; ++i)
            crc = i == 0 ? slots[i].crc : crc32_combine(crc, slots[i].crc, slots[i].len);
        rep.crc = crc;
        rep.crc_computed = true;
    }
    return rep;
}

} // namespace

ChunkPlan plan_chunks(std::span<const std::uint8_t> file, unsigned n, const EngineOptions& opts)
{
    const GzipHeader hdr = parse_gzip_header(file);
    if (file.size() < hdr.deflate_start + 8)
        throw_format_error(Errc::truncated, "no room for a DEFLATE stream and trailer");
    const std::uint64_t start_bit = static_cast<std::uint64_t>(hdr.deflate_start) * 8;
    const std::uint64_t region = file.size() - 8 - hdr.deflate_start;

    PlanOutcome out = plan_range(file, start_bit, region, std::max(1u, n), opts);
    if (n >= 2 && out.searches_attempted >= 1 && out.searches_succeeded == 0)
        report_unchunkable(hdr.deflate_start);
    return std::move(out.plan);
}

std::vector<ChunkResult> pass1(std::span<const std::uint8_t> file, const ChunkPlan& plan, unsigned threads,
                               const SymContext* first_context)
{
    return pass1_impl(file, plan, effective_threads(threads), first_context, nullptr);
}

std::vector<ResolvedContext> pass2_resolve(const std::vector<ChunkResult>& results,
                                           const ResolvedContext* first_initial)
{
    std::vector<ResolvedContext> ctxs(results.size());
    if (results.empty())
        return ctxs;
    if (first_initial != nullptr)
        ctxs[0] = *first_initial;
    else
        ctxs[0].fill(0);
    assert(results[0].final_context.fully_resolved());
    for (std::size_t i = 1; i < results.size(); ++i)
        ctxs[i] = resolve_context(results[i - 1].final_context, ctxs[i - 1]);
    return ctxs;
}

TranslateReport pass2_translate(std::vector<ChunkResult>& results,
                                const std::vector<ResolvedContext>& contexts, OutputSink& sink,
                                bool ordered, unsigned threads, bool compute_crc)
{
    return translate_impl(results, contexts, sink, ordered, effective_threads(threads), compute_crc,
                          nullptr);
}

ParallelReport decompress_parallel(std::span<const std::uint8_t> file, OutputSink& sink,
                                   const EngineOptions& opts)
{
    ParallelReport rep;
    const GzipHeader hdr = parse_gzip_header(file);
    if (file.size() < hdr.deflate_start + 8)
        throw_format_error(Errc::truncated, "no room for a DEFLATE stream and trailer");

    const unsigned threads = effective_threads(opts.threads);
    const std::uint64_t stream_bytes = file.size() - 8 - hdr.deflate_start;

    BufferAccountant acct;

    std::uint32_t crc = 0;
    std::uint64_t total_bytes = 0;
    std::optional<ResolvedContext> carry;
    std::optional<SymContext> carry_sym;
    std::uint64_t section_start_bit = static_cast<std::uint64_t>(hdr.deflate_start) * 8;
    std::uint64_t compressed_done = 0;
    bool finished = false;
    std::uint64_t last_end_bit = 0;

    while (!finished) {
        ++rep.sections;

        std::uint64_t region;
        if (!opts.section_size.has_value()) {
            region = stream_bytes;
        } else {
            // Estimate how much compressed data yields section_size output;
            // adapts as sections complete.
            const double ratio = total_bytes > 0 && compressed_done > 0
                                   ? static_cast<double>(total_bytes) / static_cast<double>(compressed_done)
                                   : 3.0;
            region = static_cast<std::uint64_t>(static_cast<double>(*opts.section_size) / ratio);
            region = std::max<std::uint64_t>(region, 1u << 16);
        }

        PlanOutcome planned = plan_range(file, section_start_bit, region, threads, opts);
        if (rep.sections == 1 && threads >= 2 && planned.searches_attempted >= 1 &&
            planned.searches_succeeded == 0)
            report_unchunkable(section_start_bit / 8);

        std::vector<ChunkResult> results =
          pass1_impl(file, planned.plan, threads, carry_sym.has_value() ? &*carry_sym : nullptr, &acct);

        std::vector<ResolvedContext> ctxs =
          pass2_resolve(results, carry.has_value() ? &*carry : nullptr);
        for ([[maybe_unused]] const ResolvedContext& c : ctxs)
            acct.add(sizeof(ResolvedContext));

        // Carry the section's trailing 32 KB, resolved, into the next section.
        const ChunkResult& last = results.back();
        ResolvedContext next_carry = resolve_context(last.final_context, ctxs.back());
        finished = last.reached_final;
        last_end_bit = last.end_bit;
        section_start_bit = last.end_bit;

        // The symbolic trailing contexts are spent once resolved.
        for (ChunkResult& r : results) {
            r.final_context.cells.clear();
            r.final_context.cells.shrink_to_fit();
            acct.sub(kChunkContextBytes);
        }

        const TranslateReport tr =
          translate_impl(results, ctxs, sink, opts.ordered, threads, opts.verify_crc, &acct);
        for ([[maybe_unused]] const ResolvedContext& c : ctxs)
            acct.sub(sizeof(ResolvedContext));

        if (opts.verify_crc)
            crc = total_bytes == 0 ? tr.crc : crc32_combine(crc, tr.crc, tr.bytes);
        total_bytes += tr.bytes;
        compressed_done = section_start_bit / 8 - hdr.deflate_start;
        rep.chunks += static_cast<unsigned>(planned.plan.chunks.size());

        carry = next_carry;
        carry_sym = SymContext::resolved(next_carry);
    }

    const std::size_t trailer_at = static_cast<std::size_t>((last_end_bit + 7) / 8);
    const GzipTrailer trailer = parse_gzip_trailer_at(file, trailer_at);
    check_single_member(file, trailer_at + 8);

    if (opts.verify_crc) {
        if (crc != trailer.crc32)
            throw CrcError(trailer.crc32, crc);
        rep.crc_verified = true;
    }
    rep.isize_mismatch = trailer.isize != static_cast<std::uint32_t>(total_bytes);
    rep.bytes_out = total_bytes;
    rep.peak_buffer_bytes = acct.peak();
    return rep;
}

} // namespace pargz
