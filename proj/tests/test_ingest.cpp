#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "vep/csv.hpp"
#include "vep/rng.hpp"
#include "vep/synth.hpp"

using namespace vep;

namespace {

std::filesystem::path temp_file(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "vep_ingest_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("load_csv parses a small two-bus file") {
    const auto path = temp_file("small.csv");
    write_text(path,
               "timestamp,bus_1,bus_2\n"
               "0,1.01,0.99\n"
               "900,1.02,0.98\n"
               "1800,1.03,0.97\n");
    const auto dataset = load_csv(path);
    CHECK(dataset.bus_count() == 2);
    CHECK(dataset.sample_count() == 3);
    CHECK(dataset.buses[0].bus_id == 1);
    CHECK(dataset.buses[1].values[2] == doctest::Approx(0.97));
    CHECK(dataset.buses[0].timestamps[1] == 900);
}

TEST_CASE("load_csv accepts ISO-8601 timestamps") {
    const auto path = temp_file("iso.csv");
    write_text(path,
               "timestamp,bus_1\n"
               "2021-01-01T00:00:00Z,1.01\n"
               "2021-01-01 00:15:00,1.02\n");
    const auto dataset = load_csv(path);
    CHECK(dataset.buses[0].timestamps[0] == 1609459200);
    CHECK(dataset.buses[0].timestamps[1] == 1609460100);
}

TEST_CASE("load_csv handles CRLF line endings") {
    const auto path = temp_file("crlf.csv");
    write_text(path, "timestamp,bus_1\r\n0,1.01\r\n900,1.02\r\n");
    const auto dataset = load_csv(path);
    CHECK(dataset.sample_count() == 2);
    CHECK(dataset.buses[0].values[1] == 1.02);
}

TEST_CASE("load_csv rejects non-increasing timestamps naming the row") {
    const auto path = temp_file("nonmono.csv");
    write_text(path,
               "timestamp,bus_1\n"
               "900,1.01\n"
               "900,1.02\n");
    CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("non-increasing timestamps at row 2"),
                         DataError);
}

TEST_CASE("load_csv rejects NaN naming row and column") {
    const auto path = temp_file("nan.csv");
    write_text(path,
               "timestamp,bus_1,bus_2\n"
               "0,1.01,0.99\n"
               "900,1.02,NaN\n");
    CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("row 2, column bus_2"), DataError);
}

TEST_CASE("load_csv rejects missing files and malformed rows") {
    CHECK_THROWS_AS(load_csv(temp_file("missing.csv")), DataError);

    const auto path = temp_file("short_row.csv");
    write_text(path,
               "timestamp,bus_1,bus_2\n"
               "0,1.01\n");
    CHECK_THROWS_WITH_AS(load_csv(path), doctest::Contains("row 1"), DataError);
}

TEST_CASE("split honours the 3:1 geometry") {
    SynthSpec spec;
    spec.n_buses = 2;
    spec.n_samples = 28934;
    spec.noise_std = 0;
    spec.wind_surge_rate = 0;
    spec.diurnal_amplitude = 0;
    const auto dataset = generate(spec);
    const auto [train, test] = split(dataset, SplitSpec{0.75});
    CHECK(train.sample_count() == 21700);
    CHECK(test.sample_count() == 7234);
}

TEST_CASE("split of four samples is exactly 3:1 and one sample fails") {
    SynthSpec spec;
    spec.n_buses = 1;
    spec.n_samples = 4;
    const auto dataset = generate(spec);
    const auto [train, test] = split(dataset, SplitSpec{0.75});
    CHECK(train.sample_count() == 3);
    CHECK(test.sample_count() == 1);

    SynthSpec one = spec;
    one.n_samples = 1;
    CHECK_THROWS_WITH_AS(split(generate(one), SplitSpec{0.75}),
                         doctest::Contains("empty partition"), DataError);
}

TEST_CASE("split preserves count, order and chronology") {
    SynthSpec spec;
    spec.n_buses = 3;
    spec.n_samples = 257;
    auto rng = Rng::stream(99, 1);
    const auto dataset = generate(spec);
    for (int trial = 0; trial < 20; ++trial) {
        const double fraction = 0.05 + 0.9 * rng.next_double();
        const auto [train, test] = split(dataset, SplitSpec{fraction});
        REQUIRE(train.sample_count() + test.sample_count() == dataset.sample_count());
        CHECK(train.buses[1].timestamps.back() < test.buses[1].timestamps.front());
        for (std::size_t b = 0; b < dataset.bus_count(); ++b) {
            std::vector<double> joined = train.buses[b].values;
            joined.insert(joined.end(), test.buses[b].values.begin(),
                          test.buses[b].values.end());
            CHECK(joined == dataset.buses[b].values);
        }
    }
}

TEST_CASE("generate with all stochastic terms off is the configured ramp") {
    SynthSpec spec;
    spec.n_buses = 3;
    spec.n_samples = 10;
    spec.noise_std = 0;
    spec.wind_surge_rate = 0;
    spec.diurnal_amplitude = 0;
    spec.base_level = 1.0;
    spec.per_bus_offset = 0.01;
    const auto dataset = generate(spec);
    for (int b = 0; b < 3; ++b)
        for (double v : dataset.buses[static_cast<std::size_t>(b)].values)
            CHECK(v == doctest::Approx(1.0 + 0.01 * b).epsilon(1e-12));
}

TEST_CASE("generate is bit-reproducible for an identical spec") {
    SynthSpec spec;
    spec.n_buses = 4;
    spec.n_samples = 512;
    spec.seed = 1234;
    const auto a = generate(spec);
    const auto b = generate(spec);
    REQUIRE(a.bus_count() == b.bus_count());
    for (std::size_t i = 0; i < a.bus_count(); ++i) CHECK(a.buses[i].values == b.buses[i].values);

    spec.seed = 1235;
    const auto c = generate(spec);
    CHECK(a.buses[0].values != c.buses[0].values);
}

TEST_CASE("generate rejects bad parameters") {
    SynthSpec spec;
    spec.n_buses = 0;
    CHECK_THROWS_AS(generate(spec), DataError);
    spec.n_buses = 1;
    spec.noise_std = -1;
    CHECK_THROWS_AS(generate(spec), DataError);
}

TEST_CASE("csv round-trip reproduces the dataset exactly") {
    SynthSpec spec;
    spec.n_buses = 5;
    spec.n_samples = 300;
    spec.seed = 77;
    const auto dataset = generate(spec);
    const auto path = temp_file("roundtrip.csv");
    save_csv(dataset, path);
    const auto reloaded = load_csv(path);
    REQUIRE(reloaded.bus_count() == dataset.bus_count());
    for (std::size_t b = 0; b < dataset.bus_count(); ++b) {
        CHECK(reloaded.buses[b].bus_id == dataset.buses[b].bus_id);
        CHECK(reloaded.buses[b].timestamps == dataset.buses[b].timestamps);
        CHECK(reloaded.buses[b].values == dataset.buses[b].values);
    }
}

TEST_CASE("default synthetic spec hits the target event ratios") {
    // targets: ~48.7% of bus 1 samples above 1.05, ~1.0% of bus 6 above 1.08
    const auto dataset = generate(SynthSpec{});
    const auto over = [&](const VoltageSeries& bus, double bound) {
        std::size_t n = 0;
        for (double v : bus.values) n += v > bound;
        return static_cast<double>(n) / static_cast<double>(bus.size());
    };
    const double balanced = over(dataset.buses[0], 1.05);
    CHECK(balanced >= 0.467);
    CHECK(balanced <= 0.507);
    const double rare = over(dataset.buses[5], 1.08);
    CHECK(rare <= 0.03);
    CHECK(rare > 0.001);
}

}  // TEST_SUITE
