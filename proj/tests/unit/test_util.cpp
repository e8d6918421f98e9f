#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mfa/csv.hpp"
#include "mfa/errors.hpp"
#include "mfa/parallel.hpp"
#include "mfa/rng.hpp"
#include "mfa/sha256.hpp"
#include "mfa/stats_util.hpp"

using namespace mfa;

TEST_CASE("average ranks give tied runs their mean position") {
    const std::vector<double> x = {10.0, 20.0, 20.0, 30.0, 20.0};
    const std::vector<double> r = average_ranks(x);
    CHECK(r == std::vector<double>({1.0, 3.0, 3.0, 5.0, 3.0}));

    const std::vector<double> all_tied = {7.0, 7.0, 7.0};
    CHECK(average_ranks(all_tied) == std::vector<double>({2.0, 2.0, 2.0}));
}

TEST_CASE("pearson handles perfect, inverse and degenerate association") {
    const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
    const std::vector<double> y = {2.0, 4.0, 6.0, 8.0};
    CHECK(pearson(x, y) == doctest::Approx(1.0).epsilon(1e-12));
    std::vector<double> neg = y;
    std::reverse(neg.begin(), neg.end());
    CHECK(pearson(x, neg) == doctest::Approx(-1.0).epsilon(1e-12));
    const std::vector<double> flat = {5.0, 5.0, 5.0, 5.0};
    CHECK(pearson(x, flat) == 0.0);
}

TEST_CASE("distribution tails match published reference values") {
    // classic table entries
    CHECK(normal_sf(1.959963985) == doctest::Approx(0.025).epsilon(1e-7));
    CHECK(normal_sf(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(chi_squared_sf(3.841458821, 1.0) == doctest::Approx(0.05).epsilon(1e-7));
    CHECK(chi_squared_sf(5.991464547, 2.0) == doctest::Approx(0.05).epsilon(1e-7));
    CHECK(student_t_p_two_sided(2.228138852, 10.0) == doctest::Approx(0.05).epsilon(1e-7));
    CHECK(student_t_p_two_sided(0.0, 5.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("population and sample variance differ by the bessel factor") {
    const std::vector<double> x = {2.0, 4.0, 6.0};
    CHECK(variance_population(x) == doctest::Approx(8.0 / 3.0).epsilon(1e-12));
    CHECK(variance_sample(x) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(stddev_population(x) == doctest::Approx(std::sqrt(8.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("percentile interpolates linearly between order statistics") {
    const std::vector<double> x = {4.0, 1.0, 3.0, 2.0};
    CHECK(percentile(x, 0.0) == 1.0);
    CHECK(percentile(x, 100.0) == 4.0);
    CHECK(percentile(x, 50.0) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(percentile(x, 95.0) == doctest::Approx(3.85).epsilon(1e-12));
}

TEST_CASE("ks statistic is tiny for a uniform grid and large for clumped data") {
    std::vector<double> grid(1000);
    for (std::size_t i = 0; i < grid.size(); ++i)
        grid[i] = (static_cast<double>(i) + 0.5) / 1000.0;
    CHECK(ks_statistic_uniform(grid) < 0.005);

    std::vector<double> clump(100, 0.9);
    CHECK(ks_statistic_uniform(clump) > 0.8);
}

TEST_CASE("rng streams are deterministic and derivation is order-free") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    // deriving a stream does not depend on what the parent consumed
    Rng parent1(7), parent2(7);
    (void)parent1.next_u64();
    (void)parent1.next_normal();
    Rng c1 = parent1.derive("stream");
    Rng c2 = parent2.derive("stream");
    CHECK(c1.next_u64() == c2.next_u64());

    // distinct names and indices give distinct streams
    Rng base(7);
    CHECK(base.derive("x").next_u64() != base.derive("y").next_u64());
    CHECK(base.derive("x", 0).next_u64() != base.derive("x", 1).next_u64());
}

TEST_CASE("rng helpers respect their ranges and produce valid permutations") {
    Rng rng(11);
    for (int i = 0; i < 1000; ++i) CHECK(rng.next_below(7) < 7);

    const std::vector<std::size_t> perm = rng.permutation(20);
    std::vector<std::size_t> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < 20; ++i) CHECK(sorted[i] == i);

    const std::vector<std::size_t> sample = rng.sample_without_replacement(50, 10);
    CHECK(sample.size() == 10);
    const std::set<std::size_t> unique(sample.begin(), sample.end());
    CHECK(unique.size() == 10);
    for (const std::size_t v : sample) CHECK(v < 50);
}

TEST_CASE("rng deviates have sane first moments") {
    Rng rng(2024);
    double sum = 0.0, sumsq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double v = rng.next_normal();
        sum += v;
        sumsq += v * v;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(std::abs(sumsq / n - 1.0) < 0.02);

    double usum = 0.0;
    for (int i = 0; i < n; ++i) usum += rng.next_double();
    CHECK(std::abs(usum / n - 0.5) < 0.01);
}

TEST_CASE("parallel_for covers every index exactly once at any thread count") {
    const unsigned saved = worker_threads();
    for (const unsigned workers : {1u, 3u, 8u}) {
        set_worker_threads(workers);
        std::vector<std::atomic<int>> hits(257);
        for (auto& h : hits) h.store(0);
        parallel_for(hits.size(), [&](std::size_t i) { hits[i].fetch_add(1); });
        for (const auto& h : hits) CHECK(h.load() == 1);
    }
    set_worker_threads(saved);
}

TEST_CASE("csv round-trips quotes, commas and embedded newlines") {
    std::ostringstream out;
    write_csv_row(out, {"plain", "with,comma", "with\"quote", "multi\nline", ""});
    const std::string line = out.str();
    const CsvTable parsed = read_csv_string("a,b,c,d,e\n" + line, "test");
    REQUIRE(parsed.rows.size() == 1);
    const auto& f = parsed.rows[0].fields;
    REQUIRE(f.size() == 5);
    CHECK(f[0] == "plain");
    CHECK(f[1] == "with,comma");
    CHECK(f[2] == "with\"quote");
    CHECK(f[3] == "multi\nline");
    CHECK(f[4] == "");
}

TEST_CASE("csv accepts crlf endings and tracks line numbers") {
    const CsvTable t = read_csv_string("h1,h2\r\nv1,v2\r\nv3,v4\r\n", "test");
    REQUIRE(t.rows.size() == 2);
    CHECK(t.header == std::vector<std::string>({"h1", "h2"}));
    CHECK(t.rows[0].fields[1] == "v2");
    CHECK(t.rows[0].line == 2);
    CHECK(t.rows[1].line == 3);
}

TEST_CASE("csv column lookup names the file in its error") {
    const CsvTable t = read_csv_string("x,y\n1,2\n", "things.csv");
    CHECK(t.column("y", "things.csv") == 1);
    CHECK(t.has_column("x"));
    CHECK_FALSE(t.has_column("z"));
    CHECK_THROWS_WITH_AS(t.column("z", "things.csv"),
                         doctest::Contains("things.csv"), ValidationError);
}

TEST_CASE("format_double is stable and precise to twelve significant digits") {
    CHECK(format_double(0.0) == "0");
    CHECK(format_double(1.5) == "1.5");
    CHECK(format_double(1.0 / 3.0) == "0.333333333333");
    const double v = 0.1234567890123456;
    CHECK(std::abs(std::stod(format_double(v)) - v) < 1e-12);
}

TEST_CASE("sha256 matches the fips reference vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(sha256_hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
          "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");

    // one million 'a' exercises multi-block streaming
    Sha256 hasher;
    const std::string chunk(10000, 'a');
    for (int i = 0; i < 100; ++i) hasher.update(chunk);
    CHECK(hasher.hex_digest() ==
          "cdc76e5c9914fb9281a1c7e284d73e67f1809a48a497200e046d39ccc7112cd0");
}

TEST_CASE("file digests agree with in-memory digests") {
    const auto path = std::filesystem::temp_directory_path() / "mfa_sha_probe.bin";
    std::ofstream(path, std::ios::binary) << "taste the music\n";
    CHECK(sha256_file_hex(path) == sha256_hex("taste the music\n"));
    std::filesystem::remove(path);
}
