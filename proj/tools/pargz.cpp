// pargz — parallel gzip decompression, random access into DEFLATE streams,
// DNA sequence recovery from partially decoded FASTQ, and the compression
// model calculators.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "fixtures.hpp"
#include "pargz/fastq.hpp"
#include "pargz/io.hpp"
#include "pargz/models.hpp"
#include "pargz/parallel.hpp"
#include "pargz/sequential.hpp"
#include "pargz/sync.hpp"
#include "pargz/tracked.hpp"

namespace {

// Exit codes, also documented in the README.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitFormat = 3;
constexpr int kExitSync = 4;
constexpr int kExitCrc = 5;

std::vector<std::uint8_t> read_input(const std::string& path)
{
    if (path == "-")
        return pargz::read_stream(stdin);
    return pargz::read_file(path);
}

std::ofstream open_or_die(const std::string& path)
{
    std::ofstream os(path);
    if (!os)
        throw pargz::IoError("cannot create " + path);
    return os;
}

struct DecompressArgs {
    std::string file;
    unsigned threads = 0;
    bool unordered = false;
    bool verify_crc = false;
    std::optional<std::uint64_t> section_size;
    std::string output = "-";
};

int cmd_decompress(const DecompressArgs& a)
{
    const std::vector<std::uint8_t> file = read_input(a.file);

    unsigned threads = a.threads;
    if (a.file == "-" && threads != 1) {
        if (threads > 1)
            std::fprintf(stderr, "pargz: stdin input forces sequential mode\n");
        threads = 1;
    }
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());

    std::FILE* out = stdout;
    if (a.output != "-") {
        out = std::fopen(a.output.c_str(), "wb");
        if (out == nullptr)
            throw pargz::IoError("cannot create " + a.output);
    }

    bool isize_mismatch = false;
    if (threads == 1) {
        const pargz::SequentialResult res = pargz::decompress_sequential(file);
        isize_mismatch = res.isize_mismatch;
        if (!res.data.empty() && std::fwrite(res.data.data(), 1, res.data.size(), out) != res.data.size())
            throw pargz::IoError("short write");
    } else {
        pargz::EngineOptions opts;
        opts.threads = threads;
        opts.ordered = !a.unordered;
        opts.verify_crc = a.verify_crc;
        opts.section_size = a.section_size;
        pargz::FileSink sink(out);
        const pargz::ParallelReport rep = pargz::decompress_parallel(file, sink, opts);
        isize_mismatch = rep.isize_mismatch;
    }

    if (out != stdout)
        std::fclose(out);
    else
        std::fflush(out);
    if (isize_mismatch)
        std::fprintf(stderr, "pargz: warning: trailer ISIZE does not match the output length\n");
    return kExitOk;
}

struct SeekArgs {
    std::string file;
    std::vector<std::uint64_t> offsets;
    std::vector<double> fractions;
    std::string csv;
    std::string seqs;
    std::uint32_t min_read_len = 32;
    std::uint32_t min_seqs = 10;
    std::optional<std::uint64_t> budget;
};

int cmd_seek(const SeekArgs& a)
{
    const std::vector<std::uint8_t> file = read_input(a.file);

    std::vector<std::uint64_t> targets = a.offsets;
    std::vector<double> fractions = a.fractions;
    if (targets.empty() && fractions.empty())
        fractions = {0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0};
    for (const double f : fractions) {
        if (f < 0.0 || f > 1.0)
            throw std::invalid_argument("--frac must be in [0, 1]");
        targets.push_back(static_cast<std::uint64_t>(f * static_cast<double>(file.size())));
    }
    for (const std::uint64_t off : targets)
        if (off > file.size())
            throw std::invalid_argument("--at offset beyond end of file");
    if (!a.seqs.empty() && targets.size() != 1)
        throw std::invalid_argument("--seqs needs exactly one seek target");

    pargz::ExtractConfig cfg;
    cfg.min_read_len = a.min_read_len;
    cfg.resolved_block_min_seqs = a.min_seqs;
    const pargz::SyncConfig sync_cfg;

    std::vector<pargz::SeekReportRow> rows;
    for (const std::uint64_t off : targets) {
        const pargz::SeekProbe probe = pargz::run_seek_probe(file, off, cfg, sync_cfg, a.budget);
        if (!probe.sync_found) {
            std::fprintf(stderr, "pargz: no confirmed block start after byte %llu\n",
                         static_cast<unsigned long long>(off));
            continue;
        }
        rows.push_back(probe.row);
        if (!a.seqs.empty()) {
            std::ofstream os = open_or_die(a.seqs);
            pargz::write_sequences_fasta(os, probe.data, probe.seqs);
        }
    }

    if (rows.empty())
        throw pargz::SyncError("no seek target found a confirmed block start");

    if (a.csv.empty()) {
        pargz::write_seek_csv(std::cout, rows);
    } else {
        std::ofstream os = open_or_die(a.csv);
        pargz::write_seek_csv(os, rows);
    }
    return kExitOk;
}

struct AnalyzeArgs {
    std::string file;
    std::uint32_t window = 0; // 0 = use the stream's mean match offset
    unsigned from_block = 2;  // 1-based; the experiments start at block 2
    std::string truth;
    std::string csv;
    std::string class_csv;
    std::uint32_t stride = 4096;
};

int cmd_analyze(const AnalyzeArgs& a)
{
    const std::vector<std::uint8_t> file = read_input(a.file);
    if (a.from_block < 1)
        throw std::invalid_argument("--from-block is 1-based");

    const pargz::SequentialResult seq = pargz::decompress_sequential(file);
    if (seq.blocks.size() < a.from_block)
        throw std::invalid_argument("stream has only " + std::to_string(seq.blocks.size()) + " blocks");

    pargz::BlockStats totals;
    for (const pargz::BlockInfo& b : seq.blocks)
        totals += b.stats;
    std::uint32_t window = a.window;
    if (window == 0) {
        window = totals.matches > 0
                   ? static_cast<std::uint32_t>(totals.match_offset_sum / totals.matches)
                   : 4096;
        window = std::max<std::uint32_t>(window, 16);
    }

    const pargz::BlockInfo& start = seq.blocks[a.from_block - 1];
    const pargz::SymContext fresh = pargz::SymContext::fresh_refs();
    const pargz::TrackedOutput out =
      pargz::decompress_tracked(file, start.start_bit, &fresh, pargz::StopRule::at_final_block());

    const auto windows = pargz::count_undetermined_windows(out.data, window);
    if (a.csv.empty()) {
        pargz::write_window_csv(std::cout, windows);
    } else {
        std::ofstream os = open_or_die(a.csv);
        pargz::write_window_csv(os, windows);
    }

    std::fprintf(stderr, "pargz: decoded %zu bytes from block %u (window %u)\n", out.data.size(),
                 a.from_block, window);

    if (!a.truth.empty()) {
        const std::vector<std::uint8_t> truth = pargz::read_file(a.truth);
        if (truth.size() != seq.data.size())
            pargz::throw_format_error(pargz::Errc::length_mismatch,
                                      "--truth file length does not match the decompressed stream");
        const std::span<const std::uint8_t> tail{truth.data() + start.data_offset, out.data.size()};
        const auto classes = pargz::classify_fastq_bytes(tail);
        const auto rows = pargz::annotate_propagation(out.data, tail, classes, pargz::kWindowSize,
                                                      a.stride);
        std::string path = a.class_csv;
        if (path.empty()) {
            if (a.csv.empty())
                throw std::invalid_argument("--truth needs --class-csv (or --csv to derive a name)");
            path = a.csv + ".classes";
        }
        std::ofstream os = open_or_die(path);
        pargz::write_class_csv(os, rows);
    }
    return kExitOk;
}

struct ModelArgs {
    unsigned window = pargz::kWindowSize;
    double la = 7.6;
    unsigned blocks = 300;
    std::string csv;
};

int cmd_model(const ModelArgs& a)
{
    pargz::ModelParams params;
    params.window = a.window;
    params.mean_match_length = a.la;

    std::printf("match probabilities, W=%u:\n", params.window);
    std::printf("  %3s  %-22s  %s\n", "k", "p_k", "log10(1-p_k)");
    for (unsigned k = 3; k <= 15; ++k)
        std::printf("  %3u  %-22.16g  %.4f\n", k, pargz::match_prob(k, params.window),
                    pargz::log10_one_minus_match_prob(k, params.window));

    const double pl = pargz::literal_prob(params);
    const pargz::LiteralEstimate e = pargz::expected_literals(params);
    std::printf("literal probability p_l     = %.6f\n", pl);
    std::printf("expected literals   E_l     = %.2f  (W=%u, l_a=%.2f)\n", e.expected_literals,
                params.window, params.mean_match_length);
    std::printf("first-block share   L_1     = %.6f\n", e.l1);

    if (!a.csv.empty()) {
        const auto curve = pargz::literal_fraction_curve(e.l1, a.blocks);
        std::ofstream os = open_or_die(a.csv);
        pargz::write_model_csv(os, curve);
    }
    return kExitOk;
}

struct GenArgs {
    std::string kind;
    std::uint64_t size = 0;
    std::uint64_t seed = 42;
    int level = 6;
    unsigned read_len = 150;
    std::string output;
};

int cmd_gen_fixtures(const GenArgs& a)
{
    std::vector<std::uint8_t> data;
    if (a.kind == "dna")
        data = pargz::fixtures::random_dna(a.size, a.seed);
    else if (a.kind == "fastq-like")
        data = pargz::fixtures::fastq_like(a.size, a.seed);
    else if (a.kind == "fastq")
        data = pargz::fixtures::synthetic_fastq(a.size, a.seed, a.read_len);
    else
        throw std::invalid_argument("unknown fixture kind: " + a.kind);

    std::string base = a.output;
    if (base.empty())
        base = "fixture-" + a.kind + "-" + std::to_string(a.size) + "-" + std::to_string(a.seed);

    pargz::write_file(base, data);
    const std::vector<std::uint8_t> gz = pargz::fixtures::gzip_compress(data, a.level);
    pargz::write_file(base + ".gz", gz);
    std::printf("%s (%llu bytes)\n%s.gz (%zu bytes, level %d)\n", base.c_str(),
                static_cast<unsigned long long>(data.size()), base.c_str(), gz.size(), a.level);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"parallel gzip decompression and random access for text streams"};
    app.require_subcommand(1);

    DecompressArgs dec;
    CLI::App* cdec = app.add_subcommand("decompress", "decompress a gzip file (exact, optionally parallel)");
    cdec->add_option("file", dec.file, "input file, or - for stdin (sequential only)")->required();
    cdec->add_option("-t,--threads", dec.threads, "worker count (default: all cores; 1 = sequential with CRC)");
    CLI::Option* unordered_flag =
      cdec->add_flag("--unordered", dec.unordered, "let chunks reach the output as they finish");
    cdec->add_flag("--ordered", "keep output in stream order (default)")->excludes(unordered_flag);
    cdec->add_flag("--verify-crc", dec.verify_crc, "check the trailer CRC32 in parallel mode");
    cdec->add_option("--section-size", dec.section_size,
                     "decompress roughly this many output bytes per section, bounding memory");
    cdec->add_option("-o,--output", dec.output, "output path (default: stdout)");

    SeekArgs seek;
    CLI::App* cseek = app.add_subcommand("seek", "random access: sync, decode symbolically, extract sequences");
    cseek->add_option("file", seek.file, "input gzip file")->required();
    cseek->add_option("--at", seek.offsets, "absolute byte offset to seek to (repeatable)");
    cseek->add_option("--frac", seek.fractions,
                      "fractional offset in [0,1] (repeatable; default 1/4 1/3 1/2 2/3)");
    cseek->add_option("--csv", seek.csv, "write the per-seek report CSV here (default: stdout)");
    cseek->add_option("--seqs", seek.seqs, "write extracted sequences as FASTA ('?' = undetermined)");
    cseek->add_option("--min-read-len", seek.min_read_len, "discard shorter grammar matches");
    cseek->add_option("--min-seqs", seek.min_seqs, "sequences needed to call a block sequence-resolved");
    cseek->add_option("--budget", seek.budget, "stop after this many decompressed bytes per seek");

    AnalyzeArgs ana;
    CLI::App* cana = app.add_subcommand("analyze", "undetermined-context propagation experiment");
    cana->add_option("file", ana.file, "input gzip file")->required();
    cana->add_option("--window", ana.window, "window size in bytes (default: the stream's mean match offset)");
    cana->add_option("--from-block", ana.from_block, "1-based block to start the tracked decode at (default 2)");
    cana->add_option("--truth", ana.truth, "original uncompressed file, for per-class annotation");
    cana->add_option("--csv", ana.csv, "undetermined-per-window CSV (default: stdout)");
    cana->add_option("--class-csv", ana.class_csv, "per-class CSV (with --truth)");
    cana->add_option("--stride", ana.stride, "sliding-window stride for the per-class counts");

    ModelArgs model;
    CLI::App* cmodel = app.add_subcommand("model", "closed-form compression model for random DNA");
    cmodel->add_option("--W", model.window, "window size W");
    cmodel->add_option("--la", model.la, "mean match length l_a");
    cmodel->add_option("--blocks", model.blocks, "curve length in blocks");
    cmodel->add_option("--csv", model.csv, "write the literal-fraction curve CSV here");

    GenArgs gen;
    CLI::App* cgen = app.add_subcommand("gen-fixtures", "deterministic test data (raw + reference-compressed)");
    cgen->add_option("--kind", gen.kind, "dna | fastq-like | fastq")->required();
    cgen->add_option("--size", gen.size, "uncompressed size in bytes")->required();
    cgen->add_option("--seed", gen.seed, "random seed (identical seeds give identical bytes)");
    cgen->add_option("--level", gen.level, "reference compression level 1..9 (default 6)");
    cgen->add_option("--read-len", gen.read_len, "read length for the fastq kind");
    cgen->add_option("-o,--output", gen.output, "output base path (writes BASE and BASE.gz)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cdec->parsed())
            return cmd_decompress(dec);
        if (cseek->parsed())
            return cmd_seek(seek);
        if (cana->parsed())
            return cmd_analyze(ana);
        if (cmodel->parsed())
            return cmd_model(model);
        if (cgen->parsed())
            return cmd_gen_fixtures(gen);
    } catch (const pargz::CrcError& e) {
        std::fprintf(stderr, "pargz: %s\n", e.what());
        return kExitCrc;
    } catch (const pargz::SyncError& e) {
        std::fprintf(stderr, "pargz: %s\n", e.what());
        return kExitSync;
    } catch (const pargz::IoError& e) {
        std::fprintf(stderr, "pargz: %s\n", e.what());
        return kExitIo;
    } catch (const pargz::FormatError& e) {
        std::fprintf(stderr, "pargz: %s\n", e.what());
        return kExitFormat;
    } catch (const pargz::ChunkError& e) {
        std::fprintf(stderr, "pargz: %s\n", e.what());
        return kExitFormat;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "pargz: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "pargz: %s\n", e.what());
        return kExitFormat;
    }
    return kExitUsage;
}
