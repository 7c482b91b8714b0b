#include "doctest.h"

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "botdna/errors.hpp"
#include "botdna/io_utils.hpp"
#include "botdna/rng.hpp"
#include "botdna/time_utils.hpp"
#include "test_support.hpp"

using namespace botdna;
using botdna::testing::fixture_dir;
using botdna::testing::write_text_file;

TEST_SUITE("util") {

TEST_CASE("timestamp parsing handles both wire formats") {
    CHECK(parse_timestamp("2020-01-01T00:00:00Z") == 1577836800);
    CHECK(parse_timestamp("1970-01-01T00:00:00Z") == 0);
    CHECK(parse_timestamp("Wed Oct 10 20:19:24 +0000 2018") ==
          parse_timestamp("2018-10-10T20:19:24Z"));
    CHECK(parse_timestamp("2018-10-10T22:19:24+02:00") ==
          parse_timestamp("2018-10-10T20:19:24Z"));
    CHECK(parse_timestamp("2018-10-10 20:19:24") ==
          parse_timestamp("2018-10-10T20:19:24Z"));
    CHECK_THROWS_AS(parse_timestamp("next tuesday"), ParseError);
}

TEST_CASE("format_iso8601 round-trips through parse_timestamp") {
    for (std::int64_t t : {0LL, 1577836800LL, 951868800LL, 4102444799LL}) {
        CHECK(parse_timestamp(format_iso8601(t)) == t);
    }
    CHECK(format_iso8601(1577836800) == "2020-01-01T00:00:00Z");
}

TEST_CASE("split_csv_line trims whitespace around fields") {
    CHECK(split_csv_line("a, b ,c") ==
          std::vector<std::string>{"a", "b", "c"});
    CHECK(split_csv_line("x") == std::vector<std::string>{"x"});
    CHECK(split_csv_line(",") == std::vector<std::string>{"", ""});
}

TEST_CASE("format_double writes shortest round-trip representation") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.1");
    for (double v : {1.0 / 3.0, 1e-17, 123456.789, -0.0625}) {
        CHECK(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("atomic_write replaces content without leaving temp files") {
    auto dir = fixture_dir("io");
    auto path = dir / "out.txt";
    atomic_write(path, "first");
    atomic_write(path, "second");
    CHECK(read_file(path) == "second");
    std::size_t files = 0;
    for ([[maybe_unused]] auto& entry : std::filesystem::directory_iterator(dir))
        ++files;
    CHECK(files == 1);
}

TEST_CASE("for_each_line strips trailing carriage returns") {
    auto dir = fixture_dir("io_lines");
    write_text_file(dir / "crlf.txt", "one\r\ntwo\nthree");
    CHECK(read_lines(dir / "crlf.txt") ==
          std::vector<std::string>{"one", "two", "three"});
}

TEST_CASE("rng streams are deterministic and seed-sensitive") {
    Rng a(42), b(42), c(43);
    bool diverged = false;
    for (int i = 0; i < 100; ++i) {
        auto x = a.next_u64();
        CHECK(x == b.next_u64());
        if (x != c.next_u64()) diverged = true;
    }
    CHECK(diverged);
}

TEST_CASE("rng fork gives independent labeled streams") {
    Rng a(42), b(42);
    a.next_u64();
    CHECK(a.fork("grid") == b.fork("grid"));
    CHECK(a.fork("grid") != a.fork("other"));
    CHECK(Rng(42).fork("grid") != Rng(43).fork("grid"));
    CHECK(Rng(a.fork("grid")).next_u64() == Rng(b.fork("grid")).next_u64());
}

TEST_CASE("rng uniform stays in range and covers it") {
    Rng rng(7);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
        double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("rng below is bounded and hits every residue") {
    Rng rng(11);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        auto v = rng.below(7);
        CHECK(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
}

TEST_CASE("rng normal has roughly standard moments") {
    Rng rng(5);
    double sum = 0.0, sq = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    double mean = sum / n;
    double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.03);
    CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("rng shuffle permutes without loss") {
    Rng rng(9);
    std::vector<int> v = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    auto orig = v;
    rng.shuffle(v);
    CHECK(v != orig);
    std::sort(v.begin(), v.end());
    CHECK(v == orig);
}

}
