#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include "zerosum/cache.hpp"
#include "zerosum/cli.hpp"

using namespace zerosum;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("zs-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

struct RunResult {
    int status;
    std::string out, err;
};

RunResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int status = cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

std::string strip_timing(const std::string& s) {
    static const std::regex timing("\"timing_ms\":[0-9.e+-]+");
    return std::regex_replace(s, timing, "\"timing_ms\":0");
}

}  // namespace

TEST_CASE("subset syntax") {
    auto c4 = parse_group("C4");
    auto s = cli::parse_subset(c4, "g,3g");
    REQUIRE(s.size() == 2);
    CHECK(s[0] == c4.make({1}));
    CHECK(s[1] == c4.make({3}));
    CHECK(cli::parse_subset(c4, "1,2,3").size() == 3);
    CHECK(cli::parse_subset(c4, "g,1").size() == 1);  // duplicates collapse

    auto g24 = parse_group("C2xC4");
    auto t = cli::parse_subset(g24, "(1,0),(0,3)");
    REQUIRE(t.size() == 2);
    CHECK(t[0] == g24.make({1, 0}));
    CHECK(t[1] == g24.make({0, 3}));

    CHECK_THROWS_AS(cli::parse_subset(g24, "g"), parse_error);
    CHECK_THROWS_AS(cli::parse_subset(c4, "(1,"), parse_error);
    CHECK_THROWS_AS(cli::parse_subset(c4, "x"), parse_error);
    CHECK_THROWS_AS(cli::parse_subset(c4, "g,,3g"), parse_error);
}

TEST_CASE("cache round-trips bit-identically") {
    TempDir dir;
    auto g = parse_group("C2xC4");
    GroupTables t(g);
    uint64_t mask = 0b11111110;
    auto fresh = enumerate_atoms(t, mask);
    store_atoms(dir.path, fresh);
    auto loaded = load_cached_atoms(cache_path(dir.path, g, mask), t, mask);
    REQUIRE(loaded.has_value());
    CHECK(loaded->elements == fresh.elements);
    CHECK(loaded->atoms == fresh.atoms);
    CHECK(loaded->lengths == fresh.lengths);
    CHECK(loaded->support_masks == fresh.support_masks);
    CHECK(loaded->davenport == fresh.davenport);
    for (size_t i = 0; i < fresh.size(); ++i)
        CHECK(loaded->cross_numbers[i] == fresh.cross_numbers[i]);
}

TEST_CASE("cache rejects corruption, wrong keys and stale versions") {
    TempDir dir;
    auto g = parse_group("C4");
    GroupTables t(g);
    uint64_t mask = 0b1010;
    auto fresh = enumerate_atoms(t, mask);
    store_atoms(dir.path, fresh);
    auto file = cache_path(dir.path, g, mask);

    CHECK(load_cached_atoms(file, t, mask).has_value());
    CHECK(!load_cached_atoms(file, t, 0b0110).has_value());  // wrong key

    json rec;
    {
        std::ifstream in(file);
        in >> rec;
    }
    json tampered = rec;
    tampered["atoms"][0][0] = 2;
    {
        std::ofstream out(file);
        out << tampered.dump();
    }
    CHECK(!load_cached_atoms(file, t, mask).has_value());  // checksum mismatch

    json stale = rec;
    stale["format_version"] = 0;
    {
        std::ofstream out(file);
        out << stale.dump();
    }
    CHECK(!load_cached_atoms(file, t, mask).has_value());

    {
        std::ofstream out(file);
        out << "not json at all";
    }
    std::ostringstream warn;
    auto recovered = load_or_compute(dir.path, t, mask, {}, &warn);
    CHECK(recovered.atoms == fresh.atoms);
    CHECK(warn.str().find("recomputing") != std::string::npos);
    CHECK(load_cached_atoms(file, t, mask).has_value());  // rewritten clean
}

TEST_CASE("warm cache equals cold cache through the CLI") {
    TempDir dir;
    auto cold = run_cli({"atoms", "C2xC4", "--format", "machine", "--cache",
                         dir.path.string()});
    REQUIRE(cold.status == 0);
    auto warm = run_cli({"atoms", "C2xC4", "--format", "machine", "--cache",
                         dir.path.string()});
    REQUIRE(warm.status == 0);
    CHECK(strip_timing(cold.out) == strip_timing(warm.out));
    CHECK(warm.err.empty());
}

TEST_CASE("machine reports are deterministic modulo timing") {
    for (auto args : {std::vector<std::string>{"delta-star", "C6", "--format", "machine"},
                      std::vector<std::string>{"min-delta", "C4", "--subset", "g,3g",
                                               "--format", "machine"},
                      std::vector<std::string>{"census", "--max-order", "6", "--format",
                                               "machine"},
                      std::vector<std::string>{"verify", "lemma3.1", "--max-order", "4",
                                               "--format", "machine"}}) {
        auto a = run_cli(args), b = run_cli(args);
        CHECK(a.status == b.status);
        CHECK(strip_timing(a.out) == strip_timing(b.out));
    }
}

TEST_CASE("worked CLI examples") {
    auto atoms = run_cli({"atoms", "C4", "--subset", "g,3g"});
    CHECK(atoms.status == 0);
    CHECK(atoms.out.find("atom_count = 3") != std::string::npos);

    auto ds = run_cli({"delta-star", "C5"});
    CHECK(ds.status == 0);
    CHECK(ds.out.find("delta_star = [1,3]") != std::string::npos);

    auto verify = run_cli({"verify", "thm1.1", "--max-order", "12"});
    CHECK(verify.status == 0);

    auto dist = run_cli({"distinguish", "C5", "C5"});
    CHECK(dist.status == 0);
    CHECK(dist.out.find("iso_concluded = true") != std::string::npos);

    auto rep = run_cli({"report", "C6"});
    CHECK(rep.status == 0);
    CHECK(rep.out.find("delta_star = [1,2,4]") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run_cli({"atoms", "notagroup"}).status == 2);       // usage
    CHECK(run_cli({"atoms", "C4", "--subset", "zz"}).status == 2);
    CHECK(run_cli({"delta-star", "C2"}).status == 2);         // order < 3
    CHECK(run_cli({"delta-star", "C2^5"}).status == 2);       // sweep limit
    CHECK(run_cli({"nonsense"}).status == 2);
    CHECK(run_cli({"min-delta", "C4", "--subset", "g,3g", "--budget", "3"}).status == 2);
    CHECK(run_cli({"--help"}).status == 0);
    CHECK(run_cli({"verify", "prop3.7", "--max-order", "8"}).status == 0);
}

TEST_CASE("environment variables mirror the flags") {
    TempDir dir;
    ::setenv("ZEROSUM_CACHE", dir.path.string().c_str(), 1);
    auto r = run_cli({"davenport", "C4"});
    ::unsetenv("ZEROSUM_CACHE");
    CHECK(r.status == 0);
    CHECK(fs::exists(dir.path / "C4"));

    ::setenv("ZEROSUM_BUDGET", "3", 1);
    auto limited = run_cli({"davenport", "C8"});
    ::unsetenv("ZEROSUM_BUDGET");
    CHECK(limited.status == 2);
}

TEST_CASE("machine report schema fields") {
    auto r = run_cli({"min-delta", "C4", "--subset", "g,2g", "--format", "machine"});
    REQUIRE(r.status == 0);
    std::istringstream lines(r.out);
    std::string line;
    bool saw_meta = false, saw_null_delta = false, saw_summary = false;
    while (std::getline(lines, line)) {
        auto rec = json::parse(line);
        REQUIRE(rec.contains("record"));
        if (rec["record"] == "meta") {
            saw_meta = true;
            CHECK(rec["schema"] == 1);
        }
        if (rec["record"] == "value" && rec["name"] == "min_delta")
            saw_null_delta = rec["value"].is_null();
        if (rec["record"] == "summary") {
            saw_summary = true;
            CHECK(rec.contains("timing_ms"));
        }
    }
    CHECK(saw_meta);
    CHECK(saw_null_delta);  // half-factorial subset
    CHECK(saw_summary);
}
