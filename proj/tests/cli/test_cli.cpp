#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "roaring/dataset.hpp"
#include "roaring/serialize.hpp"

namespace fs = std::filesystem;
using namespace roaring;

namespace {

struct CmdResult {
    int exit_code;
    std::string output;  // stdout and stderr interleaved
};

CmdResult roarctl(const std::string& args) {
    const std::string cmd = std::string(ROARCTL_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

// Fresh scratch directory per test case.
struct Scratch {
    fs::path dir;
    Scratch() {
        dir = fs::temp_directory_path() /
              ("roarctl-test-" + std::to_string(::getpid()) + "-" +
               std::to_string(counter()++));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string operator/(const std::string& name) const { return (dir / name).string(); }
    static int& counter() {
        static int n = 0;
        return n;
    }
};

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::vector<uint8_t> read_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("build writes one zero-padded file per line that parses back") {
    Scratch tmp;
    write_text(tmp / "corpus.txt", "10,11,12\n\n7,900000\n");
    const auto r = roarctl("build " + (tmp / "corpus.txt") + " -o " + (tmp / "out"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("000000.rrb") != std::string::npos);
    CHECK(r.output.find("total 3 files") != std::string::npos);

    REQUIRE(fs::exists(tmp / "out/000000.rrb"));
    REQUIRE(fs::exists(tmp / "out/000001.rrb"));
    REQUIRE(fs::exists(tmp / "out/000002.rrb"));
    const auto first = deserialize(read_bytes(tmp / "out/000000.rrb"));
    CHECK(first.to_vector() == std::vector<uint32_t>{10, 11, 12});
    const auto second = read_bytes(tmp / "out/000001.rrb");
    CHECK(second.size() == 12);  // empty line -> bare header
    const auto third = deserialize(read_bytes(tmp / "out/000002.rrb"));
    CHECK(third.contains(900000));
    CHECK(third.cardinality() == 2);
}

TEST_CASE("build --single packs an archive equivalent to the loose files") {
    Scratch tmp;
    const auto gen = roarctl("gen --kind mix --count 5 --seed 11 --universe 131072 -o " +
                             (tmp / "corpus.txt"));
    REQUIRE(gen.exit_code == 0);
    REQUIRE(roarctl("build " + (tmp / "corpus.txt") + " -o " + (tmp / "loose")).exit_code == 0);
    REQUIRE(roarctl("build " + (tmp / "corpus.txt") + " --single " + (tmp / "all.rrba"))
                .exit_code == 0);

    const auto loose = roarctl("stats " + (tmp / "loose") + "/*.rrb --format json");
    const auto packed = roarctl("stats " + (tmp / "all.rrba") + " --format json");
    CHECK(loose.exit_code == 0);
    CHECK(packed.exit_code == 0);
    CHECK(nlohmann::json::parse(loose.output) == nlohmann::json::parse(packed.output));
}

TEST_CASE("build with a malformed dataset names the line and exits 2") {
    Scratch tmp;
    write_text(tmp / "bad.txt", "1,2,3\n9,9\n");
    const auto r = roarctl("build " + (tmp / "bad.txt") + " -o " + (tmp / "out"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("line 2") != std::string::npos);
    CHECK(r.output.find("NonMonotone") != std::string::npos);
}

TEST_CASE("query answers membership, rank, and select from the frozen file") {
    Scratch tmp;
    write_text(tmp / "one.txt", "10,11,12,500\n");
    REQUIRE(roarctl("build " + (tmp / "one.txt") + " -o " + (tmp / "out")).exit_code == 0);
    const std::string rrb = tmp / "out/000000.rrb";

    for (const std::string mode : {"", " --heap"}) {
        CAPTURE(mode);
        auto r = roarctl("query " + rrb + " --contains 11" + mode);
        CHECK(r.exit_code == 0);
        CHECK(r.output == "true\n");
        r = roarctl("query " + rrb + " --contains 13" + mode);
        CHECK(r.exit_code == 0);
        CHECK(r.output == "false\n");
        r = roarctl("query " + rrb + " --rank 12" + mode);
        CHECK(r.output == "3\n");
        r = roarctl("query " + rrb + " --rank 4294967295" + mode);
        CHECK(r.output == "4\n");
        r = roarctl("query " + rrb + " --select 1" + mode);
        CHECK(r.output == "11\n");
        r = roarctl("query " + rrb + " --select 4" + mode);
        CHECK(r.exit_code == 2);
        CHECK(r.output.find("out of range") != std::string::npos);
    }

    CHECK(roarctl("query " + rrb).exit_code == 1);  // no probe flag
    CHECK(roarctl("query " + rrb + " --contains 1 --rank 2").exit_code == 1);
    CHECK(roarctl("query " + rrb + " --contains 4294967296").exit_code == 1);
}

TEST_CASE("op combines two files and reports the result") {
    Scratch tmp;
    write_text(tmp / "ab.txt", "1,2,3,4\n3,4,5\n");
    REQUIRE(roarctl("build " + (tmp / "ab.txt") + " -o " + (tmp / "out")).exit_code == 0);
    const std::string a = tmp / "out/000000.rrb", b = tmp / "out/000001.rrb";

    auto check_result = [&](const std::string& flag, const std::vector<uint32_t>& want) {
        CAPTURE(flag);
        const std::string out = tmp / ("r-" + flag + ".rrb");
        const auto r = roarctl("op --" + flag + " " + a + " " + b + " -o " + out);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("cardinality " + std::to_string(want.size()) + ",") !=
              std::string::npos);
        CHECK(deserialize(read_bytes(out)).to_vector() == want);
    };
    check_result("and", {3, 4});
    check_result("or", {1, 2, 3, 4, 5});
    check_result("xor", {1, 2, 5});
    check_result("andnot", {1, 2});

    CHECK(roarctl("op " + a + " " + b + " -o " + (tmp / "x.rrb")).exit_code == 1);
    CHECK(roarctl("op --and --or " + a + " " + b + " -o " + (tmp / "x.rrb")).exit_code == 1);

    // Disjoint intersection writes a valid empty file.
    write_text(tmp / "cd.txt", "1\n2\n");
    REQUIRE(roarctl("build " + (tmp / "cd.txt") + " -o " + (tmp / "cd")).exit_code == 0);
    const auto r = roarctl("op --and " + (tmp / "cd/000000.rrb") + " " +
                           (tmp / "cd/000001.rrb") + " -o " + (tmp / "empty.rrb"));
    CHECK(r.exit_code == 0);
    CHECK(read_bytes(tmp / "empty.rrb").size() == 12);
}

TEST_CASE("optimize-runs shrinks a runny corpus") {
    Scratch tmp;
    REQUIRE(roarctl("gen --kind runs --count 8 --seed 3 --universe 4194304 -o " +
                    (tmp / "runny.txt"))
                .exit_code == 0);
    REQUIRE(roarctl("build " + (tmp / "runny.txt") + " -o " + (tmp / "plain")).exit_code == 0);
    REQUIRE(roarctl("build " + (tmp / "runny.txt") + " -o " + (tmp / "opt") + " --optimize-runs")
                .exit_code == 0);
    uint64_t plain = 0, opt = 0;
    for (const auto& e : fs::directory_iterator(tmp / "plain")) plain += fs::file_size(e);
    for (const auto& e : fs::directory_iterator(tmp / "opt")) opt += fs::file_size(e);
    CHECK(opt < plain);
    CHECK(2 * opt <= plain);  // runny data compresses sharply

    // The optimized files still hold the same sets.
    const auto p0 = deserialize(read_bytes(tmp / "plain/000000.rrb"));
    const auto o0 = deserialize(read_bytes(tmp / "opt/000000.rrb"));
    CHECK(p0 == o0);
}

TEST_CASE("stats reports the census in every format") {
    Scratch tmp;
    write_text(tmp / "corpus.txt", "10,11,12\n");
    REQUIRE(roarctl("build " + (tmp / "corpus.txt") + " -o " + (tmp / "out")).exit_code == 0);
    const std::string rrb = tmp / "out/000000.rrb";

    const auto text = roarctl("stats " + rrb);
    CHECK(text.exit_code == 0);
    CHECK(text.output.find("1 bitmaps, 1 containers, 3 values") != std::string::npos);
    CHECK(text.output.find("bits per int") != std::string::npos);

    const auto j = nlohmann::json::parse(roarctl("stats " + rrb + " --format json").output);
    CHECK(j["containers"]["array"]["count"] == 1);
    CHECK(j["containers"]["array"]["cardinality"] == 3);
    CHECK(j["containers"]["array"]["payload_bytes"] == 6);
    // 12 header + 1 flag + 4 descriptor + 4 offset + 6 payload = 27 bytes
    CHECK(j["bits_per_int"] == doctest::Approx(8.0 * 27 / 3));

    const auto csv = roarctl("stats " + rrb + " --format csv");
    CHECK(csv.output.find("type,count,count_pct") == 0);
    CHECK(csv.output.find("array,1,") != std::string::npos);

    const auto heap = roarctl("stats " + rrb + " --heap --format json");
    CHECK(nlohmann::json::parse(heap.output) == j);
}

TEST_CASE("bench runs every suite and stays stable") {
    Scratch tmp;
    REQUIRE(roarctl("gen --kind mix --count 6 --seed 21 --universe 131072 -o " +
                    (tmp / "corpus.txt"))
                .exit_code == 0);
    REQUIRE(roarctl("build " + (tmp / "corpus.txt") + " --single " + (tmp / "all.rrba"))
                .exit_code == 0);
    const std::string archive = tmp / "all.rrba";

    for (const std::string suite : {"access", "pairwise-and", "pairwise-or", "wide-union"}) {
        CAPTURE(suite);
        const auto r = roarctl("bench " + archive + " --suite " + suite +
                               " --repeat 3 --warmup 1 --format json");
        REQUIRE(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.output);
        CHECK(j["suite"].get<std::string>().find(suite == "wide-union" ? "wide-union" : suite) !=
              std::string::npos);
        CHECK(j["stable"] == true);
        CHECK(j["times_ms"].size() == 3);
    }

    // Strategies agree on the wide-union checksum, heap mode agrees with frozen.
    auto checksum = [&](const std::string& extra) {
        const auto r = roarctl("bench " + archive + " --suite wide-union --repeat 2 --warmup 0 " +
                               extra + " --format json");
        REQUIRE(r.exit_code == 0);
        return nlohmann::json::parse(r.output)["checksum"].get<uint64_t>();
    };
    const auto naive = checksum("--strategy naive");
    CHECK(checksum("--strategy heap") == naive);
    CHECK(checksum("--strategy lazy") == naive);
    CHECK(checksum("--strategy heap --heap") == naive);

    CHECK(roarctl("bench " + archive + " --suite nope").exit_code == 1);
}

TEST_CASE("missing and malformed inputs use distinct exit codes") {
    Scratch tmp;
    CHECK(roarctl("stats " + (tmp / "absent.rrb")).exit_code == 3);
    CHECK(roarctl("query " + (tmp / "absent.rrb") + " --contains 5").exit_code == 3);

    write_text(tmp / "junk.rrb", "this is not a bitmap image at all");
    const auto r = roarctl("stats " + (tmp / "junk.rrb"));
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("BadMagic") != std::string::npos);

    write_text(tmp / "short.rrb", "xy");
    CHECK(roarctl("stats " + (tmp / "short.rrb")).exit_code == 2);

    CHECK(roarctl("").exit_code == 1);
    CHECK(roarctl("build").exit_code == 1);
    write_text(tmp / "c.txt", "1\n");
    CHECK(roarctl("build " + (tmp / "c.txt")).exit_code == 1);  // no -o / --single
}
