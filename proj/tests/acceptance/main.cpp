// Acceptance suite: one criterion per function, one PASS/FAIL line each,
// nonzero exit if anything failed. Run a subset by naming criteria on the
// command line (e.g. "pargz_acceptance C3 C6").

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fixtures.hpp"
#include "pargz/fastq.hpp"
#include "pargz/io.hpp"
#include "pargz/models.hpp"
#include "pargz/parallel.hpp"
#include "pargz/sequential.hpp"
#include "pargz/sync.hpp"
#include "pargz/tracked.hpp"

using namespace pargz;
namespace fx = pargz::fixtures;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = false;
    std::string detail;
};

// ---------------------------------------------------------------------------
// Fixture corpus shared by C1 and C2.

struct Fixture {
    std::string name;
    int level;
    std::vector<std::uint8_t> raw;
    std::vector<std::uint8_t> gz;
};

std::vector<std::uint8_t> make_kind(const std::string& kind, std::size_t size, std::uint64_t seed)
{
    if (kind == "dna")
        return fx::random_dna(size, seed);
    if (kind == "fastq-like")
        return fx::fastq_like(size, seed);
    if (kind == "fastq")
        return fx::synthetic_fastq(size, seed);
    if (kind == "text")
        return fx::word_text(size, seed);
    return fx::random_text(size, seed); // "noise": incompressible, stored blocks
}

const std::vector<Fixture>& corpus()
{
    static const std::vector<Fixture> fixtures = [] {
        std::vector<Fixture> out;
        std::uint64_t seed = 1000;
        const auto add = [&](const std::string& kind, std::size_t size, int level) {
            Fixture f;
            f.name = kind + "-" + std::to_string(size) + "-l" + std::to_string(level);
            f.level = level;
            f.raw = make_kind(kind, size, ++seed);
            f.gz = fx::gzip_compress(f.raw, level);
            out.push_back(std::move(f));
        };

        for (const char* kind : {"text", "noise", "dna", "fastq-like", "fastq"})
            for (const int level : {1, 6, 9})
                for (const std::size_t size : {100u << 10, 300u << 10, 1u << 20})
                    add(kind, size, level);
        // A few larger files stretch the size range up to 50 MB.
        add("dna", 8u << 20, 6);
        add("fastq", 20u << 20, 1);
        add("text", 50u << 20, 1);
        add("fastq-like", 10u << 20, 9);
        add("fastq", 3u << 20, 9);
        add("dna", 3u << 20, 1);
        add("text", 3u << 20, 6);
        return out;
    }();
    return fixtures;
}

// ---------------------------------------------------------------------------

Outcome c1_exactness()
{
    const auto t0 = Clock::now();
    std::size_t files = 0;
    std::uint64_t bytes = 0;

    for (const Fixture& f : corpus()) {
        ++files;
        bytes += f.raw.size();

        const std::vector<std::uint8_t> oracle = fx::gzip_decompress_ref(f.gz);
        if (oracle != f.raw)
            return {false, "reference decompressor disagrees on " + f.name};

        const SequentialResult seq = decompress_sequential(f.gz);
        if (seq.data != f.raw)
            return {false, "sequential decode differs on " + f.name};

        for (const unsigned n : {2u, 4u, 8u}) {
            EngineOptions opts;
            opts.threads = n;
            opts.min_chunk_size = 8 * 1024;
            opts.verify_crc = true;
            std::vector<std::uint8_t> out;
            VectorSink sink(out);
            decompress_parallel(f.gz, sink, opts);
            if (out != f.raw)
                return {false, "parallel n=" + std::to_string(n) + " differs on " + f.name};
        }
    }

    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << files << " fixtures, " << (bytes >> 20) << " MB decompressed 5 ways each, 0 differing bytes, "
       << std::fixed << std::setprecision(1) << dt << " s";
    if (files < 50)
        return {false, "corpus too small: " + std::to_string(files)};
    if (dt > 600.0)
        return {false, "over the 10 minute budget: " + os.str()};
    return {true, os.str()};
}

Outcome c2_sync_soundness()
{
    std::mt19937_64 rng(20240801);
    std::size_t files = 0, trials = 0;
    double sync_seconds = 0;

    for (const Fixture& f : corpus()) {
        if (f.level != 6)
            continue;
        const SequentialResult seq = decompress_sequential(f.gz);
        std::vector<std::uint64_t> bounds;
        for (const BlockInfo& b : seq.blocks)
            bounds.push_back(b.start_bit);
        if (bounds.size() < 3)
            continue; // soundness is only claimed when enough blocks remain
        ++files;

        // Sample below the second-to-last block so the expected boundary is
        // never the final block (which the search must refuse by design).
        const std::uint64_t lo = seq.header.deflate_start * 8;
        const std::uint64_t hi = bounds[bounds.size() - 2];
        for (int t = 0; t < 20; ++t) {
            const std::uint64_t start = lo + rng() % (hi - lo);
            const auto expect = std::lower_bound(bounds.begin(), bounds.end(), start);

            const auto t1 = Clock::now();
            const std::optional<SyncResult> got = find_next_block(f.gz, start, SyncConfig{});
            sync_seconds += seconds_since(t1);
            ++trials;

            if (!got.has_value())
                return {false, f.name + ": no sync from bit " + std::to_string(start)};
            if (got->block_start_bit != *expect)
                return {false, f.name + ": bit " + std::to_string(start) + " gave " +
                                 std::to_string(got->block_start_bit) + ", oracle " +
                                 std::to_string(*expect)};
        }
    }

    std::ostringstream os;
    os << files << " level-6 fixtures x 20 offsets = " << trials << " trials, 100% exact; mean "
       << std::fixed << std::setprecision(1) << (1000.0 * sync_seconds / std::max<std::size_t>(trials, 1))
       << " ms/sync (informational)";
    return {trials >= 200, os.str()};
}

struct WindowRun {
    std::vector<WindowStat> rows;
    std::uint32_t window = 0;
    // First index from which every window has zero undetermined characters,
    // or -1 if that never happens.
    std::ptrdiff_t zero_from = -1;
};

WindowRun tracked_windows(std::span<const std::uint8_t> gz, const char* csv_name)
{
    const TokenStatsReport stats = measure_token_stats(gz);
    WindowRun run;
    run.window = static_cast<std::uint32_t>(std::lround(stats.mean_match_offset.value_or(3600.0)));

    const SymContext fresh = SymContext::fresh_refs();
    const TrackedOutput out =
      decompress_tracked(gz, stats.blocks.at(1).start_bit, &fresh, StopRule::at_final_block());
    run.rows = count_undetermined_windows(out.data, run.window);

    for (std::size_t i = 0; i < run.rows.size(); ++i) {
        if (run.rows[i].undetermined == 0) {
            if (run.zero_from < 0)
                run.zero_from = static_cast<std::ptrdiff_t>(i);
        } else {
            run.zero_from = -1;
        }
    }

    if (csv_name != nullptr) {
        std::ofstream os(csv_name);
        write_window_csv(os, run.rows);
    }
    return run;
}

Outcome c3_fig2_top()
{
    const auto dna = fx::random_dna(1 << 20, 42);
    const auto gz = fx::gzip_compress(dna, 6);
    const WindowRun run = tracked_windows(gz, "acceptance-c3-windows.csv");

    std::ostringstream os;
    os << "o_a window " << run.window << ", " << run.rows.size() << " windows, zero from index "
       << run.zero_from << " (gate: 0 < index <= 500); csv: acceptance-c3-windows.csv";
    return {run.zero_from >= 0 && run.zero_from <= 500, os.str()};
}

Outcome c4_level1_pathology()
{
    const auto dna = fx::random_dna(1 << 20, 42);
    const auto gz = fx::gzip_compress(dna, 1);
    const WindowRun run = tracked_windows(gz, nullptr);

    double min_pct = 100.0;
    for (const WindowStat& r : run.rows)
        min_pct = std::min(min_pct, r.percent);

    std::ostringstream os;
    os << run.rows.size() << " windows, minimum undetermined " << std::fixed << std::setprecision(2)
       << min_pct << "% (gate: never below 90%)";
    return {min_pct >= 90.0, os.str()};
}

Outcome c5_fig2_bottom()
{
    const auto data = fx::fastq_like(30u << 20, 7);
    const auto gz = fx::gzip_compress(data, 1);
    const WindowRun run = tracked_windows(gz, "acceptance-c5-windows.csv");

    double min_pct = 100.0;
    for (const WindowStat& r : run.rows)
        min_pct = std::min(min_pct, r.percent);

    std::ostringstream os;
    os << run.rows.size() << " windows of " << run.window << ", zero from index " << run.zero_from
       << " (gate: exists and >= 1000); minimum undetermined " << std::fixed << std::setprecision(2)
       << min_pct << "%; csv: acceptance-c5-windows.csv";
    return {run.zero_from >= 1000, os.str()};
}

Outcome c6_model_values()
{
    const ModelParams defaults;
    const LiteralEstimate e = expected_literals(defaults);
    const double l10 = log10_one_minus_match_prob(3, 32768);

    bool ok = std::abs(e.expected_literals - 1283.0) <= 0.05 * 1283.0;
    ok = ok && e.l1 >= 0.037 && e.l1 <= 0.042;
    ok = ok && l10 <= -200.0;

    const auto curve = literal_fraction_curve(e.l1, 10000);
    double rec = e.l1;
    double worst = 0.0;
    for (const CurvePoint& p : curve) {
        worst = std::max(worst, std::abs(p.literal_fraction - rec));
        rec = e.l1 + (1.0 - e.l1) * rec;
    }
    ok = ok && worst <= 1e-12;

    std::ostringstream os;
    os << "E_l = " << std::fixed << std::setprecision(2) << e.expected_literals
       << " (1283 +-5%), L_1 = " << std::setprecision(5) << e.l1 << " in [0.037, 0.042], log10(1-p_3) = "
       << std::setprecision(1) << l10 << " <= -200, recurrence vs closed form worst |diff| = "
       << std::scientific << std::setprecision(2) << worst;
    return {ok, os.str()};
}

Outcome c7_substitution_soundness()
{
    std::mt19937_64 rng(777);
    int tested = 0;
    int attempts = 0;

    while (tested < 100 && attempts < 500) {
        ++attempts;
        // Large enough that most levels give a non-final block with a full
        // window of history, still within the <= 256 KB instance bound.
        const std::size_t size = (150u << 10) + rng() % ((256u << 10) - (150u << 10));
        const int level = 1 + static_cast<int>(rng() % 9);
        static const char* kinds[] = {"dna", "fastq", "fastq-like", "text"};
        const std::string kind = kinds[rng() % 4];

        const auto raw = make_kind(kind, size, rng());
        const auto gz = fx::gzip_compress(raw, level);
        const SequentialResult seq = decompress_sequential(gz);

        const BlockInfo* pivot = nullptr;
        for (const BlockInfo& b : seq.blocks)
            if (b.data_offset >= kWindowSize && !b.bfinal) {
                pivot = &b;
                break;
            }
        if (pivot == nullptr)
            continue; // too few blocks at this size/level; try another instance

        const SymContext fresh = SymContext::fresh_refs();
        const TrackedOutput out =
          decompress_tracked(gz, pivot->start_bit, &fresh, StopRule::at_final_block());

        const std::uint8_t* ctx = seq.data.data() + pivot->data_offset - kWindowSize;
        const std::uint8_t* expect = seq.data.data() + pivot->data_offset;
        const std::size_t expect_len = seq.data.size() - pivot->data_offset;
        if (out.data.size() != expect_len)
            return {false, "length mismatch on instance " + std::to_string(attempts)};
        for (std::size_t i = 0; i < expect_len; ++i) {
            const SymByte s = out.data[i];
            const std::uint8_t b = s.is_resolved() ? s.byte() : ctx[s.ref_index()];
            if (b != expect[i])
                return {false, "byte " + std::to_string(i) + " differs on instance " +
                                 std::to_string(attempts)};
        }
        ++tested;
    }

    return {tested >= 100,
            std::to_string(tested) + " randomized instances byte-exact after substitution"};
}

// Independent regex oracle over the projected text (ContextRef -> '?').
std::vector<std::pair<std::size_t, std::size_t>> regex_spans(const std::string& projected,
                                                             std::size_t min_len)
{
    static const std::regex re("[\n?][ACGTN]+(\\?+[ACGTN]+)*[\n?]");
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t from = 0;
    while (from < projected.size()) {
        std::smatch m;
        const std::string tail = projected.substr(from);
        if (!std::regex_search(tail, m, re))
            break;
        const std::size_t body_start = from + static_cast<std::size_t>(m.position(0)) + 1;
        const std::size_t body_end = from + static_cast<std::size_t>(m.position(0)) +
                                     static_cast<std::size_t>(m.length(0)) - 1;
        if (body_end - body_start >= min_len)
            out.emplace_back(body_start, body_end);
        from = body_end;
    }
    return out;
}

Outcome c8_grammar_extraction()
{
    // Synthetic FASTQ text with planted undetermined runs.
    std::mt19937_64 rng(88);
    const auto raw = fx::synthetic_fastq(200000, 88);
    std::vector<SymByte> data;
    data.reserve(raw.size());
    std::uint32_t ref = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const bool plant = (rng() & 0x3F) == 0; // ~1.6% undetermined
        if (plant)
            data.push_back(SymByte::context_ref(ref++ % kWindowSize));
        else
            data.push_back(SymByte::resolved(raw[i]));
    }

    ExtractConfig cfg;
    cfg.min_read_len = 16;
    const auto got = extract_sequences(data, {}, cfg);

    std::string projected;
    projected.reserve(data.size());
    for (const SymByte s : data)
        projected.push_back(s.is_resolved() ? static_cast<char>(s.byte()) : '?');
    const auto expected = regex_spans(projected, cfg.min_read_len);

    if (got.size() != expected.size())
        return {false, "span count " + std::to_string(got.size()) + " vs oracle " +
                         std::to_string(expected.size())};
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (got[i].start != expected[i].first || got[i].end != expected[i].second)
            return {false, "span " + std::to_string(i) + " differs from the oracle"};
        const std::string body = projected.substr(got[i].start, got[i].end - got[i].start);
        const bool amb = body.find('?') != std::string::npos;
        if (amb != got[i].ambiguous)
            return {false, "ambiguity flag differs on span " + std::to_string(i)};
    }

    // Hand-computed truth table across constructed blocks.
    ExtractConfig bcfg;
    bcfg.min_read_len = 4;
    bcfg.resolved_block_min_seqs = 2;
    std::string s = "\n";
    std::vector<std::uint64_t> boundaries;
    std::vector<bool> truth;
    for (int b = 0; b < 24; ++b) {
        boundaries.push_back(s.size() - 1);
        const int nseqs = b % 4;
        const bool amb = (b / 4) % 2 == 1;
        for (int q = 0; q < nseqs; ++q) {
            s += "ACGTACGT";
            if (amb && q == 0)
                s += "?ACGT";
            s += '\n';
        }
        s += "junk\n";
        truth.push_back(nseqs >= 2 && !amb);
    }
    std::vector<SymByte> bdata;
    std::uint32_t r2 = 0;
    for (const char c : s)
        bdata.push_back(c == '?' ? SymByte::context_ref(r2++) : SymByte::resolved(static_cast<std::uint8_t>(c)));
    const auto blocks = classify_blocks(bdata, boundaries, bcfg);
    for (std::size_t b = 0; b < truth.size(); ++b)
        if (blocks[b].sequence_resolved != truth[b])
            return {false, "block " + std::to_string(b) + " verdict differs from the truth table"};

    return {true, std::to_string(got.size()) + " spans match the regex oracle exactly; 24-block truth table exact"};
}

Outcome c9_table1_directional()
{
    const auto data = fx::synthetic_fastq(32u << 20, 909);
    const std::vector<double> fracs = {0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0};
    const ExtractConfig cfg;
    const SyncConfig sync_cfg;

    const auto gz1 = fx::gzip_compress(data, 1);
    const auto rows1 = random_access_report(gz1, fracs, cfg, sync_cfg);
    if (rows1.size() != fracs.size())
        return {false, "level 1: a seek failed to sync"};
    double min1 = 100.0, mean1 = 0.0;
    for (const SeekReportRow& r : rows1) {
        const double pct = r.resolved_block_found ? r.percent_unambiguous : 0.0;
        min1 = std::min(min1, pct);
        mean1 += pct / rows1.size();
    }

    const auto gz9 = fx::gzip_compress(data, 9);
    const auto rows9 = random_access_report(gz9, fracs, cfg, sync_cfg);
    double mean9 = 0.0;
    std::size_t unresolved9 = 0;
    for (const SeekReportRow& r : rows9) {
        mean9 += (r.resolved_block_found ? r.percent_unambiguous : 0.0) / std::max<std::size_t>(rows9.size(), 1);
        unresolved9 += r.resolved_block_found ? 0 : 1;
    }

    std::ostringstream os;
    os << "level 1: min " << std::fixed << std::setprecision(2) << min1 << "% (gate >= 99.9); level 9: mean "
       << mean9 << "% with " << unresolved9 << "/" << rows9.size()
       << " seeks finding no sequence-resolved block (gate: strictly below level 1)";
    return {min1 >= 99.9 && mean9 < mean1, os.str()};
}

Outcome c10_throughput()
{
    const std::size_t size = 200u << 20;
    const auto data = fx::synthetic_fastq(size, 2025);
    const auto gz = fx::gzip_compress(data, 6);

    const auto run = [&](unsigned workers) {
        EngineOptions opts;
        opts.threads = workers;
        opts.ordered = false; // the benchmark mode: no output synchronization
        NullSink sink;
        const auto t0 = Clock::now();
        decompress_parallel(gz, sink, opts);
        return seconds_since(t0);
    };

    std::ofstream csv("acceptance-c10-speedup.csv");
    csv << "# pargz-csv-v1 speedup-curve\nworkers,seconds,mb_per_s\n";
    std::map<unsigned, double> t;
    for (const unsigned w : {1u, 2u, 4u, 8u}) {
        t[w] = run(w);
        csv << w << ',' << t[w] << ',' << (static_cast<double>(size) / (1 << 20)) / t[w] << '\n';
    }

    const double ratio = t[8] / t[1];
    std::ostringstream os;
    os << "200 MB level-6 fixture, unordered: t1 = " << std::fixed << std::setprecision(2) << t[1]
       << " s, t8 = " << t[8] << " s, ratio " << ratio << " (gate <= 0.6); host has "
       << std::thread::hardware_concurrency()
       << " hardware thread(s); csv: acceptance-c10-speedup.csv";
    return {ratio <= 0.6, os.str()};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"C1 exactness (sequential vs reference; parallel vs sequential)", c1_exactness},
        {"C2 sync soundness (random offsets land on oracle boundaries)", c2_sync_soundness},
        {"C3 level-6 random DNA: undetermined windows vanish by index 500", c3_fig2_top},
        {"C4 level-1 random DNA: undetermined never drops below 90%", c4_level1_pathology},
        {"C5 level-1 FASTQ-like 30 MB: undetermined reaches 0 after >= 1000 windows", c5_fig2_bottom},
        {"C6 model values (E_l, L_1, log10(1-p_3), recurrence identity)", c6_model_values},
        {"C7 substitution soundness on 100 randomized instances", c7_substitution_soundness},
        {"C8 grammar extraction vs regex oracle + block truth table", c8_grammar_extraction},
        {"C9 Table-I directional: level-1 seeks >= 99.9%, level-9 lower", c9_table1_directional},
        {"C10 throughput: 8 workers <= 0.6x of 1 worker, unordered", c10_throughput},
    };

    std::vector<std::string> only;
    for (int i = 1; i < argc; ++i)
        only.emplace_back(argv[i]);

    int failures = 0;
    for (const auto& [name, fn] : criteria) {
        const std::string tag = name.substr(0, name.find(' '));
        if (!only.empty() && std::find(only.begin(), only.end(), tag) == only.end())
            continue;
        const auto t0 = Clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("[%s] %s\n        %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name.c_str(),
                    o.detail.c_str(), seconds_since(t0));
        std::fflush(stdout);
        failures += o.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
