// roarctl: build, inspect, query, combine, and benchmark .rrb bitmap files.
//
// Exit codes: 0 success, 1 usage, 2 validation/parse failure, 3 I/O failure.

#include <cstdio>
#include <cstring>
#include <deque>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "roaring/bench.hpp"
#include "roaring/dataset.hpp"
#include "roaring/serialize.hpp"
#include "roaring/stats.hpp"
#include "roaring/util.hpp"
#include "json.hpp"

namespace {

using namespace roaring;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInvalid = 2;
constexpr int kIo = 3;

// Concatenated-archive layout (--single): "RRBA" | u32 version=1 | u32 count
// | count u64 absolute offsets | the .rrb images back to back.
constexpr char kArchiveMagic[4] = {'R', 'R', 'B', 'A'};

std::vector<uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                               std::istreambuf_iterator<char>());
    if (in.bad()) throw std::ios_base::failure("cannot read " + path);
    return bytes;
}

void write_file(const std::string& path, std::span<const uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::ios_base::failure("cannot write " + path);
}

bool is_archive(std::span<const uint8_t> bytes) {
    return bytes.size() >= 4 && std::memcmp(bytes.data(), kArchiveMagic, 4) == 0;
}

std::vector<uint8_t> pack_archive(const std::vector<std::vector<uint8_t>>& images) {
    const uint64_t count = images.size();
    uint64_t total = 12 + 8 * count;
    std::vector<uint8_t> out(total);
    std::memcpy(out.data(), kArchiveMagic, 4);
    store_u32le(out.data() + 4, 1);
    store_u32le(out.data() + 8, static_cast<uint32_t>(count));
    for (uint64_t i = 0; i < count; ++i) {
        store_u64le(out.data() + 12 + 8 * i, total);
        total += images[i].size();
    }
    for (const auto& img : images) out.insert(out.end(), img.begin(), img.end());
    return out;
}

// Spans into `bytes`; the buffer must stay alive.
std::vector<std::span<const uint8_t>> unpack_archive(const std::string& path,
                                                     std::span<const uint8_t> bytes) {
    auto fail = [&](const std::string& why) {
        throw std::runtime_error(path + ": " + why);
    };
    if (bytes.size() < 12) fail("archive shorter than its header");
    if (load_u32le(bytes.data() + 4) != 1) fail("unsupported archive version");
    const uint64_t count = load_u32le(bytes.data() + 8);
    if (bytes.size() < 12 + 8 * count) fail("archive offset table cut short");
    std::vector<std::span<const uint8_t>> images;
    images.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
        const uint64_t off = load_u64le(bytes.data() + 12 + 8 * i);
        const uint64_t end =
            i + 1 < count ? load_u64le(bytes.data() + 12 + 8 * (i + 1)) : bytes.size();
        if (off > end || end > bytes.size() || off < 12 + 8 * count)
            fail("archive member " + std::to_string(i) + " offsets out of order");
        images.push_back(bytes.subspan(off, end - off));
    }
    return images;
}

// All inputs (.rrb files and archives), attached frozen or fully parsed.
struct LoadedInputs {
    std::vector<std::vector<uint8_t>> buffers;
    std::deque<FrozenBitmap> frozen;
    std::deque<RoaringBitmap> heap;
    std::vector<BitmapView> views;
};

LoadedInputs load_inputs(const std::vector<std::string>& paths, bool heap_mode) {
    LoadedInputs in;
    for (const auto& path : paths) {
        in.buffers.push_back(read_file(path));
        const std::span<const uint8_t> bytes = in.buffers.back();
        std::vector<std::span<const uint8_t>> images;
        if (is_archive(bytes))
            images = unpack_archive(path, bytes);
        else
            images.push_back(bytes);
        for (auto img : images) {
            try {
                if (heap_mode) {
                    in.heap.push_back(deserialize(img));
                    in.views.emplace_back(in.heap.back());
                } else {
                    in.frozen.push_back(FrozenBitmap::attach(img));
                    in.views.emplace_back(in.frozen.back());
                }
            } catch (const FormatException& e) {
                throw std::runtime_error(path + ": " + e.what());
            }
        }
    }
    return in;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open " + out_path + " for writing");
    out << text;
    if (!out) throw std::ios_base::failure("cannot write " + out_path);
}

// --- subcommands ------------------------------------------------------------

int cmd_build(const std::string& input, const std::string& outdir, const std::string& single,
              bool optimize) {
    std::vector<RoaringBitmap> bitmaps;
    try {
        bitmaps = load_dataset(input);
    } catch (const DatasetException& e) {
        std::cerr << "error: " << input << ": " << e.what() << " [" << to_string(e.error())
                  << "]\n";
        return kInvalid;
    }
    std::vector<std::vector<uint8_t>> images;
    images.reserve(bitmaps.size());
    uint64_t total = 0;
    for (auto& bm : bitmaps) {
        if (optimize) bm.run_optimize();
        images.push_back(serialize(bm));
        total += images.back().size();
    }
    if (!single.empty()) {
        const auto archive = pack_archive(images);
        write_file(single, archive);
        std::cout << single << " " << archive.size() << " bytes (" << images.size()
                  << " bitmaps, " << total << " payload bytes)\n";
        return kOk;
    }
    std::filesystem::create_directories(outdir);
    for (size_t i = 0; i < images.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, "%06zu.rrb", i);
        write_file((std::filesystem::path(outdir) / name).string(), images[i]);
        std::cout << name << " " << images[i].size() << " bytes\n";
    }
    std::cout << "total " << images.size() << " files " << total << " bytes\n";
    return kOk;
}

int cmd_stats(const std::vector<std::string>& paths, bool heap_mode, const std::string& format,
              const std::string& out_path) {
    const auto in = load_inputs(paths, heap_mode);
    const auto stats = container_stats(in.views);
    const auto total = stats.total();
    std::optional<double> bpi;
    if (total.cardinality > 0) bpi = bits_per_int(in.views);

    std::string text;
    if (format == "json") {
        nlohmann::json j;
        for (auto [name, t] : {std::pair{"array", ContainerType::Array},
                               {"bitmap", ContainerType::Bitmap},
                               {"run", ContainerType::Run}}) {
            const TypeStats& ts = stats.of(t);
            j["containers"][name] = {{"count", ts.containers},
                                     {"cardinality", ts.cardinality},
                                     {"payload_bytes", ts.payload_bytes},
                                     {"count_pct", stats.container_share(t)},
                                     {"cardinality_pct", stats.cardinality_share(t)},
                                     {"bytes_pct", stats.bytes_share(t)}};
        }
        j["total"] = {{"count", total.containers},
                      {"cardinality", total.cardinality},
                      {"payload_bytes", total.payload_bytes}};
        j["bitmaps"] = in.views.size();
        if (bpi)
            j["bits_per_int"] = *bpi;
        else
            j["bits_per_int"] = nullptr;
        text = j.dump(2) + "\n";
    } else if (format == "csv") {
        std::ostringstream out;
        out << "type,count,count_pct,cardinality,cardinality_pct,payload_bytes,bytes_pct\n";
        for (auto [name, t] : {std::pair{"array", ContainerType::Array},
                               {"bitmap", ContainerType::Bitmap},
                               {"run", ContainerType::Run}}) {
            const TypeStats& ts = stats.of(t);
            out << name << ',' << ts.containers << ',' << stats.container_share(t) << ','
                << ts.cardinality << ',' << stats.cardinality_share(t) << ','
                << ts.payload_bytes << ',' << stats.bytes_share(t) << '\n';
        }
        out << "total," << total.containers << ",100," << total.cardinality << ",100,"
            << total.payload_bytes << ",100\n";
        if (bpi) out << "bits_per_int," << *bpi << ",,,,,\n";
        text = out.str();
    } else {
        std::ostringstream out;
        out << in.views.size() << " bitmaps, " << total.containers << " containers, "
            << total.cardinality << " values\n";
        for (auto [name, t] : {std::pair{"array", ContainerType::Array},
                               {"bitmap", ContainerType::Bitmap},
                               {"run", ContainerType::Run}}) {
            const TypeStats& ts = stats.of(t);
            char line[160];
            std::snprintf(line, sizeof line,
                          "%-7s %8llu containers (%5.1f%%)  %12llu values (%5.1f%%)  %12llu "
                          "bytes (%5.1f%%)\n",
                          name, static_cast<unsigned long long>(ts.containers),
                          stats.container_share(t),
                          static_cast<unsigned long long>(ts.cardinality),
                          stats.cardinality_share(t),
                          static_cast<unsigned long long>(ts.payload_bytes),
                          stats.bytes_share(t));
            out << line;
        }
        if (bpi)
            out << "bits per int: " << *bpi << "\n";
        else
            out << "bits per int: n/a (no values)\n";
        text = out.str();
    }
    emit(text, out_path);
    return kOk;
}

int cmd_query(const std::string& path, bool heap_mode, std::optional<uint64_t> contains_v,
              std::optional<uint64_t> rank_v, std::optional<uint64_t> select_i) {
    const int given = !!contains_v + !!rank_v + !!select_i;
    if (given != 1) {
        std::cerr << "error: give exactly one of --contains, --rank, --select\n";
        return kUsage;
    }
    for (auto v : {contains_v, rank_v}) {
        if (v && *v > 0xFFFFFFFFull) {
            std::cerr << "error: value " << *v << " does not fit in 32 bits\n";
            return kUsage;
        }
    }
    const auto bytes = read_file(path);
    if (is_archive(bytes)) {
        std::cerr << "error: " << path << " is an archive; query works on single .rrb files\n";
        return kInvalid;
    }
    try {
        RoaringBitmap heap_bm;
        FrozenBitmap fz;
        if (heap_mode)
            heap_bm = deserialize(bytes);
        else
            fz = FrozenBitmap::attach(bytes);
        auto contains = [&](uint32_t v) { return heap_mode ? heap_bm.contains(v) : fz.contains(v); };
        auto rank = [&](uint32_t v) { return heap_mode ? heap_bm.rank(v) : fz.rank(v); };
        auto select = [&](uint64_t i) { return heap_mode ? heap_bm.select(i) : fz.select(i); };
        if (contains_v) {
            std::cout << (contains(static_cast<uint32_t>(*contains_v)) ? "true" : "false")
                      << "\n";
        } else if (rank_v) {
            std::cout << rank(static_cast<uint32_t>(*rank_v)) << "\n";
        } else {
            try {
                std::cout << select(*select_i) << "\n";
            } catch (const std::out_of_range&) {
                std::cerr << "error: select index " << *select_i << " is out of range\n";
                return kInvalid;
            }
        }
    } catch (const FormatException& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        return kInvalid;
    }
    return kOk;
}

int cmd_op(const std::string& op, const std::string& path_a, const std::string& path_b,
           const std::string& out_path, bool heap_mode, bool optimize) {
    const auto in = load_inputs({path_a, path_b}, heap_mode);
    if (in.views.size() != 2) {
        std::cerr << "error: op takes exactly two single-bitmap files\n";
        return kInvalid;
    }
    RoaringBitmap result;
    if (op == "and")
        result = view_and(in.views[0], in.views[1]);
    else if (op == "or")
        result = view_or(in.views[0], in.views[1]);
    else if (op == "xor")
        result = view_xor(in.views[0], in.views[1]);
    else
        result = view_andnot(in.views[0], in.views[1]);
    if (optimize) result.run_optimize();
    const auto img = serialize(result);
    write_file(out_path, img);
    std::cout << out_path << ": cardinality " << result.cardinality() << ", " << img.size()
              << " bytes\n";
    return kOk;
}

int cmd_bench(const std::vector<std::string>& paths, const std::string& suite,
              const std::string& strategy_name, bool heap_mode, uint32_t repeat, uint32_t warmup,
              const std::string& format, const std::string& out_path,
              const std::string& dataset_name) {
    const auto in = load_inputs(paths, heap_mode);
    BenchConfig cfg;
    cfg.repetitions = repeat;
    cfg.warmup = warmup;
    cfg.dataset = dataset_name.empty() ? (paths.empty() ? "none" : paths.front()) : dataset_name;

    AggregationStrategy strategy = AggregationStrategy::Naive;
    if (strategy_name == "heap")
        strategy = AggregationStrategy::Heap;
    else if (strategy_name == "lazy")
        strategy = AggregationStrategy::LazyNaive;

    BenchReport report;
    if (suite == "access") {
        report = bench_random_access(in.views, cfg);
    } else if (suite == "pairwise-and" || suite == "pairwise-or") {
        if (in.views.size() < 2) {
            std::cerr << "error: pairwise suites need at least two bitmaps\n";
            return kInvalid;
        }
        report = bench_pairwise(suite == "pairwise-and" ? PairOp::And : PairOp::Or, in.views,
                                cfg);
    } else {
        report = bench_wide_union(strategy, in.views, cfg);
    }

    emit(format == "json"  ? report.to_json() + "\n"
         : format == "csv" ? report.to_csv()
                           : report.to_text(),
         out_path);
    if (!report.stable) {
        std::cerr << "error: checksum varied across repetitions\n";
        return kInvalid;
    }
    return kOk;
}

int cmd_gen(const std::string& kind, uint64_t seed, size_t count, uint32_t universe,
            const std::string& out_path) {
    std::vector<RoaringBitmap> corpus;
    if (kind == "sparse")
        corpus = gen_uniform_sparse(seed, count, universe, universe / 1000 + 64);
    else if (kind == "dense")
        corpus = gen_dense(seed, count, universe, 0.3);
    else if (kind == "runs")
        corpus = gen_clustered_runs(seed, count, universe, 48, 700);
    else
        corpus = gen_quartile_mix(seed, count, universe);
    std::ostringstream out;
    write_dataset(out, corpus);
    emit(out.str(), out_path);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"roaring bitmap toolkit"};
    app.require_subcommand(1);

    // build
    std::string build_input, build_outdir, build_single;
    bool build_optimize = false;
    auto* build = app.add_subcommand("build", "serialize a text dataset into .rrb files");
    build->add_option("input", build_input, "dataset file, one comma-separated set per line")
        ->required();
    auto* out_opt = build->add_option("-o,--out", build_outdir, "output directory");
    auto* single_opt =
        build->add_option("--single", build_single, "write one concatenated archive instead");
    build->add_flag("--optimize-runs", build_optimize, "run_optimize before serializing");
    out_opt->excludes(single_opt);

    // stats
    std::vector<std::string> stats_paths;
    std::string stats_format = "text", stats_out;
    bool stats_heap = false;
    auto* stats = app.add_subcommand("stats", "container census and bits-per-int");
    stats->add_option("inputs", stats_paths, ".rrb files or archives")->required();
    stats->add_option("--format", stats_format, "text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    stats->add_option("-o,--out", stats_out, "write the report here instead of stdout");
    stats->add_flag("--heap", stats_heap, "deserialize instead of the frozen view");

    // query
    std::string query_path;
    bool query_heap = false;
    std::optional<uint64_t> q_contains, q_rank, q_select;
    auto* query = app.add_subcommand("query", "point queries against one .rrb file");
    query->add_option("file", query_path, ".rrb file")->required();
    query->add_option("--contains", q_contains, "membership probe");
    query->add_option("--rank", q_rank, "count of values <= N");
    query->add_option("--select", q_select, "0-based i-th smallest value");
    query->add_flag("--heap", query_heap, "deserialize instead of the frozen view");

    // op
    std::string op_a, op_b, op_out;
    bool op_heap = false, op_optimize = false;
    bool op_and = false, op_or = false, op_xor = false, op_andnot = false;
    auto* op = app.add_subcommand("op", "combine two .rrb files");
    op->add_option("fileA", op_a)->required();
    op->add_option("fileB", op_b)->required();
    op->add_option("-o,--out", op_out, "result file")->required();
    auto* f_and = op->add_flag("--and", op_and, "intersection");
    auto* f_or = op->add_flag("--or", op_or, "union");
    auto* f_xor = op->add_flag("--xor", op_xor, "symmetric difference");
    auto* f_andnot = op->add_flag("--andnot", op_andnot, "difference");
    op->add_flag("--optimize-runs", op_optimize, "run_optimize the result");
    op->add_flag("--heap", op_heap, "deserialize operands instead of frozen views");
    f_and->excludes(f_or, f_xor, f_andnot);
    f_or->excludes(f_xor, f_andnot);
    f_xor->excludes(f_andnot);

    // bench
    std::vector<std::string> bench_paths;
    std::string bench_suite, bench_strategy = "naive", bench_format = "text", bench_out,
                             bench_dataset;
    bool bench_heap = false;
    uint32_t bench_repeat = 5, bench_warmup = 3;
    auto* bench = app.add_subcommand("bench", "timed query suites over .rrb inputs");
    bench->add_option("inputs", bench_paths, ".rrb files or archives")->required();
    bench->add_option("--suite", bench_suite, "access|pairwise-and|pairwise-or|wide-union")
        ->required()
        ->check(CLI::IsMember({"access", "pairwise-and", "pairwise-or", "wide-union"}));
    bench->add_option("--strategy", bench_strategy, "wide-union strategy: naive|heap|lazy")
        ->check(CLI::IsMember({"naive", "heap", "lazy"}));
    bench->add_option("--repeat", bench_repeat, "measured repetitions (default 5)");
    bench->add_option("--warmup", bench_warmup, "warmup repetitions (default 3)");
    bench->add_option("--format", bench_format, "text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    bench->add_option("-o,--out", bench_out, "write the report here instead of stdout");
    bench->add_option("--dataset-name", bench_dataset, "label for the report");
    bench->add_flag("--heap", bench_heap, "deserialize instead of frozen views");

    // gen
    std::string gen_kind = "mix", gen_out;
    uint64_t gen_seed = 42;
    size_t gen_count = 20;
    uint32_t gen_universe = 1u << 20;
    auto* gen = app.add_subcommand("gen", "write a synthetic text dataset");
    gen->add_option("--kind", gen_kind, "sparse|dense|runs|mix")
        ->check(CLI::IsMember({"sparse", "dense", "runs", "mix"}));
    gen->add_option("--seed", gen_seed, "PRNG seed (default 42)");
    gen->add_option("--count", gen_count, "number of sets (default 20)");
    gen->add_option("--universe", gen_universe, "exclusive value bound (default 2^20)");
    gen->add_option("-o,--out", gen_out, "output file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return kUsage;
    }

    try {
        if (app.got_subcommand(build)) {
            if (build_outdir.empty() && build_single.empty()) {
                std::cerr << "error: build needs -o <dir> or --single <file>\n";
                return kUsage;
            }
            return cmd_build(build_input, build_outdir, build_single, build_optimize);
        }
        if (app.got_subcommand(stats))
            return cmd_stats(stats_paths, stats_heap, stats_format, stats_out);
        if (app.got_subcommand(query))
            return cmd_query(query_path, query_heap, q_contains, q_rank, q_select);
        if (app.got_subcommand(op)) {
            if (!op_and && !op_or && !op_xor && !op_andnot) {
                std::cerr << "error: give one of --and, --or, --xor, --andnot\n";
                return kUsage;
            }
            const std::string name = op_and ? "and" : op_or ? "or" : op_xor ? "xor" : "andnot";
            return cmd_op(name, op_a, op_b, op_out, op_heap, op_optimize);
        }
        if (app.got_subcommand(bench))
            return cmd_bench(bench_paths, bench_suite, bench_strategy, bench_heap, bench_repeat,
                             bench_warmup, bench_format, bench_out, bench_dataset);
        if (app.got_subcommand(gen))
            return cmd_gen(gen_kind, gen_seed, gen_count, gen_universe, gen_out);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kUsage;
}
