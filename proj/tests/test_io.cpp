#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "spreadopt/config.hpp"
#include "spreadopt/csv.hpp"
#include "spreadopt/grid.hpp"

using namespace spreadopt;

namespace {

std::vector<GridCell> sample_cells() {
    GridSpec spec = default_grid_spec();
    spec.strikes = {0.0, 5.0, 10.0};
    spec.rhos = {0.9, 0.999};
    spec.maturities = {0.5};
    spec.mc.n_pairs = 5000;
    spec.mc.batch_size = 1024;
    return run_grid(spec);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos - start));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

// A streambuf that fails after a fixed number of bytes.
struct ChokedBuf : std::streambuf {
    explicit ChokedBuf(std::size_t limit) : remaining(limit) {}
    int_type overflow(int_type ch) override {
        if (remaining == 0) return traits_type::eof();
        --remaining;
        return ch;
    }
    std::size_t remaining;
};

}  // namespace

TEST_CASE("number formatting is stable and round-trips") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(0.999) == "0.999");
    CHECK(format_number(20.0) == "20");
    const double values[] = {2.3647227574, 0.000123456789, 9.87654321e-7, 1234567.891,
                             -0.5413066515};
    for (double v : values) {
        const std::string text = format_number(v);
        double parsed = 0.0;
        std::from_chars(text.data(), text.data() + text.size(), parsed);
        CHECK(format_number(parsed) == text);
        CHECK(std::fabs(parsed - v) <= std::fabs(v) * 1e-8);
    }
}

TEST_CASE("grid csv header and shape") {
    std::ostringstream out;
    CHECK(write_grid_csv({}, out) == 0);
    CHECK(out.str() == std::string(grid_csv_header) + "\n");

    const auto cells = sample_cells();
    std::ostringstream full;
    CHECK(write_grid_csv(cells, full) == cells.size());
    const auto lines = split(full.str(), '\n');
    REQUIRE(lines.size() == cells.size() + 2);  // header + rows + trailing empty
    CHECK(lines[0] == grid_csv_header);
    CHECK(lines.back().empty());
}

TEST_CASE("grid csv is byte-deterministic and parses back to the cells") {
    const auto cells = sample_cells();
    std::ostringstream a, b;
    write_grid_csv(cells, a);
    write_grid_csv(cells, b);
    CHECK(a.str() == b.str());

    const auto lines = split(a.str(), '\n');
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto fields = split(lines[i + 1], ',');
        REQUIRE(fields.size() == 12);
        CHECK(fields[0] == format_number(cells[i].maturity));
        CHECK(fields[1] == format_number(cells[i].rho));
        CHECK(fields[2] == format_number(cells[i].strike));
        CHECK(fields[3] == format_number(cells[i].mc_mean));
        CHECK(fields[4] == format_number(cells[i].mc_std_error));
        CHECK(fields[7] == format_number(cells[i].kirk));
        CHECK(fields[8] == format_number(*cells[i].modified_kirk));
        CHECK(fields[9] == format_number(*cells[i].err_kirk_pct));
        CHECK(fields[11].empty());
    }
}

TEST_CASE("undefined errors leave empty fields and a flag token") {
    GridCell cell;
    cell.maturity = 0.1;
    cell.rho = 0.9;
    cell.strike = 200.0;
    cell.mc_mean = 0.0;
    cell.mc_std_error = 0.0;
    cell.kirk = 1e-9;
    cell.modified_kirk = 1e-9;
    cell.flags = cell_zero_benchmark;
    std::ostringstream out;
    write_grid_csv({cell}, out);
    const auto fields = split(split(out.str(), '\n')[1], ',');
    CHECK(fields[9].empty());
    CHECK(fields[10].empty());
    CHECK(fields[11] == "zero_benchmark");
}

TEST_CASE("figure data extracts one slice") {
    const auto cells = sample_cells();
    std::ostringstream out;
    CHECK(write_figure_data(cells, 0.999, 0.5, out) == 3);
    const auto lines = split(out.str(), '\n');
    CHECK(lines[0] == "K,err_kirk_pct,err_modified_pct");
    // strike-zero row: both error series coincide
    const auto zero_row = split(lines[1], ',');
    CHECK(zero_row[0] == "0");
    CHECK(zero_row[1] == zero_row[2]);
    std::ostringstream unused;
    CHECK_THROWS_AS(write_figure_data(cells, 0.95, 0.5, unused), std::domain_error);
}

TEST_CASE("sink failure raises an io error carrying progress") {
    const auto cells = sample_cells();
    ChokedBuf buf(200);
    std::ostream sink(&buf);
    CHECK_THROWS_AS(write_grid_csv(cells, sink), IoError);
    try {
        ChokedBuf buf2(200);
        std::ostream sink2(&buf2);
        write_grid_csv(cells, sink2);
    } catch (const IoError& e) {
        CHECK(e.rows_written() < cells.size());
    }
}

TEST_CASE("config parsing") {
    std::istringstream in(
        "# sweep configuration\n"
        "strikes = 0, 2, 4\n"
        "rhos = 0.9, 0.999   # high correlations\n"
        "maturities = 0.5\n"
        "s1 = 110\n"
        "s2 = 90\n"
        "sigma1 = 0.25\n"
        "sigma2 = 0.15\n"
        "r = 0.01\n"
        "pairs = 1234\n"
        "seed = 99\n"
        "antithetic = true\n"
        "batch_size = 256\n"
        "reuse_draws = false\n");
    const GridSpec spec = parse_grid_config(in);
    CHECK(spec.strikes == std::vector<double>{0.0, 2.0, 4.0});
    CHECK(spec.rhos == std::vector<double>{0.9, 0.999});
    CHECK(spec.maturities == std::vector<double>{0.5});
    CHECK(spec.base_market.s1_0 == 110.0);
    CHECK(spec.base_market.s2_0 == 90.0);
    CHECK(spec.base_market.sigma1 == 0.25);
    CHECK(spec.base_market.sigma2 == 0.15);
    CHECK(spec.base_market.r == 0.01);
    CHECK(spec.mc.n_pairs == 1234);
    CHECK(spec.mc.seed == 99);
    CHECK(spec.mc.antithetic);
    CHECK(spec.mc.batch_size == 256);
    CHECK_FALSE(spec.reuse_draws);
}

TEST_CASE("config keeps defaults for absent keys") {
    std::istringstream in("pairs = 777\n");
    const GridSpec spec = parse_grid_config(in);
    CHECK(spec.mc.n_pairs == 777);
    CHECK(spec.strikes.size() == 21);
    CHECK(spec.rhos.size() == 5);
    CHECK(spec.reuse_draws);
}

TEST_CASE("config rejects malformed input") {
    const char* bad[] = {
        "strikes = 0, 1\nunknown_key = 3\n",
        "pairs\n",
        "pairs = twelve\n",
        "rhos = 0.9, 0.8\n",       // not increasing
        "antithetic = maybe\n",
        "strikes =\n",
        "pairs = 0\n",             // violates mc invariants
    };
    for (const char* text : bad) {
        std::istringstream in(text);
        CHECK_THROWS_AS(parse_grid_config(in), std::domain_error);
    }
}
