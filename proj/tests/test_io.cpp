#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "elan/dates.hpp"
#include "elan/io.hpp"
#include "elan/pipeline.hpp"

namespace {

namespace fs = std::filesystem;

std::string temp_path(const std::string& name) {
    return (fs::temp_directory_path() / ("elan_io_" + name)).string();
}

std::string write_file(const std::string& name, const std::string& content) {
    const std::string path = temp_path(name);
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    return path;
}

// what() of the exception thrown by fn, empty if it does not throw
template <typename Fn>
std::string error_text(Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("config JSON round trip preserves every field") {
    elan::AnalysisConfig c;
    c.beta = 2.5;
    c.gamma = 2.0;
    c.mu = 1.0;
    c.min_period = 0.05;
    c.max_period = 1.25;
    c.voxels_per_octave = 12;
    c.alpha = 0.01;
    c.noise_method = "analytic-white";
    c.mc_trials = 333;
    c.filter_enabled = false;
    c.cutoff_period = 0.4;
    c.filter_order = 5;
    c.seed = 1234567890123ULL;
    c.dt = 0.002;
    c.max_gap = 6.0;
    c.date_column = "day";
    c.value_column = "yield";

    elan::AnalysisConfig base;  // defaults everywhere
    const elan::AnalysisConfig r = elan::config_from_json_text(elan::config_json_text(c), base);
    CHECK(r.beta == c.beta);
    CHECK(r.gamma == c.gamma);
    CHECK(r.mu == c.mu);
    CHECK(r.min_period == c.min_period);
    CHECK(r.max_period == c.max_period);
    CHECK(r.voxels_per_octave == c.voxels_per_octave);
    CHECK(r.alpha == c.alpha);
    CHECK(r.noise_method == c.noise_method);
    CHECK(r.mc_trials == c.mc_trials);
    CHECK(r.filter_enabled == c.filter_enabled);
    CHECK(r.cutoff_period == c.cutoff_period);
    CHECK(r.filter_order == c.filter_order);
    CHECK(r.seed == c.seed);
    CHECK(r.dt == c.dt);
    CHECK(r.max_gap == c.max_gap);
    CHECK(r.date_column == c.date_column);
    CHECK(r.value_column == c.value_column);
}

TEST_CASE("config overlay touches only the given keys") {
    elan::AnalysisConfig base;
    base.beta = 4.0;
    const elan::AnalysisConfig r = elan::config_from_json_text("{\"gamma\": 2}", base);
    CHECK(r.beta == 4.0);
    CHECK(r.gamma == 2.0);
    CHECK(r.voxels_per_octave == 16);  // untouched default
}

TEST_CASE("config parsing and validation failures") {
    elan::AnalysisConfig base;
    CHECK_THROWS_AS(elan::config_from_json_text("{\"betaa\": 1}", base),
                    std::invalid_argument);
    CHECK_THROWS_AS(elan::config_from_json_text("{\"beta\": \"x\"}", base),
                    std::invalid_argument);
    CHECK_THROWS_AS(elan::config_from_json_text("[1, 2]", base), std::invalid_argument);
    CHECK_THROWS_AS(elan::config_from_json_text("{", base), std::invalid_argument);
    CHECK_THROWS_AS(elan::config_from_json_text("{\"alpha\": 1.5}", base),
                    std::invalid_argument);
    CHECK_THROWS_AS(elan::config_from_json_text("{\"noise_method\": \"bootstrap\"}", base),
                    std::invalid_argument);
    CHECK_THROWS_AS(elan::config_from_json_text("{\"voxels_per_octave\": 0}", base),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        elan::config_from_json_text("{\"min_period\": 2, \"max_period\": 1}", base),
        std::invalid_argument);
    CHECK_THROWS_AS(elan::load_config_file(temp_path("no_such_config.json"), base),
                    std::runtime_error);

    const std::string msg =
        error_text([&] { elan::config_from_json_text("{\"mc_trials\": 5}", base); });
    CHECK(contains(msg, "mc_trials"));
}

TEST_CASE("read_csv parses dates, drops missing markers, keeps order") {
    const std::string path = write_file("basic.csv",
                                        "date,value\n"
                                        "2018-01-02,1.5\n"
                                        "2018-01-03,.\n"
                                        "2018-01-04,2.5\n"
                                        "2018-01-05,\n"
                                        "2018-01-08,-0.25\n");
    const elan::CsvReadResult r = elan::read_csv(path, "date", "value");
    CHECK(r.dropped == 2);
    REQUIRE(r.series.times.size() == 3);
    CHECK(r.series.values[0] == 1.5);
    CHECK(r.series.values[1] == 2.5);
    CHECK(r.series.values[2] == -0.25);
    CHECK(r.iso_dates == std::vector<std::string>{"2018-01-02", "2018-01-04", "2018-01-08"});
    CHECK(r.series.times[0] == elan::year_fraction_from_iso("2018-01-02"));
    CHECK(r.series.times[1] > r.series.times[0]);
}

TEST_CASE("read_csv accepts numeric timestamps and reordered columns") {
    const std::string path = write_file("numeric.csv",
                                        "open,v,t\n"
                                        "9,1.25,0.5\n"
                                        "8,2.5,1.5\n"
                                        "7,3,2\n"
                                        "6,4,3.25\n");
    const elan::CsvReadResult r = elan::read_csv(path, "t", "v");
    CHECK(r.dropped == 0);
    CHECK(r.iso_dates.empty());
    REQUIRE(r.series.times.size() == 4);
    CHECK(r.series.times[0] == 0.5);
    CHECK(r.series.times[3] == 3.25);
    CHECK(r.series.values[1] == 2.5);
}

TEST_CASE("read_csv failure modes carry the line number") {
    elan::AnalysisConfig cfg;
    CHECK_THROWS_AS(elan::read_csv(temp_path("missing.csv"), "date", "value"),
                    std::runtime_error);

    const std::string no_col = write_file("no_col.csv", "day,value\n2018-01-02,1\n");
    CHECK(contains(error_text([&] { elan::read_csv(no_col, "date", "value"); }),
                   "no column named 'date'"));

    const std::string short_row = write_file("short_row.csv",
                                             "date,value\n"
                                             "2018-01-02,1\n"
                                             "2018-01-03\n");
    CHECK(contains(error_text([&] { elan::read_csv(short_row, "date", "value"); }), ":3:"));

    const std::string bad_value = write_file("bad_value.csv",
                                             "date,value\n"
                                             "2018-01-02,oops\n");
    const std::string m1 = error_text([&] { elan::read_csv(bad_value, "date", "value"); });
    CHECK(contains(m1, ":2:"));
    CHECK(contains(m1, "bad value"));

    const std::string bad_date = write_file("bad_date.csv",
                                            "date,value\n"
                                            "2018-13-40,1\n");
    CHECK(contains(error_text([&] { elan::read_csv(bad_date, "date", "value"); }),
                   "bad date"));

    const std::string backwards = write_file("backwards.csv",
                                             "date,value\n"
                                             "2018-01-05,1\n"
                                             "2018-01-05,2\n");
    CHECK(contains(error_text([&] { elan::read_csv(backwards, "date", "value"); }),
                   "strictly increasing"));

    const std::string empty = write_file("empty.csv", "date,value\n");
    CHECK(contains(error_text([&] { elan::read_csv(empty, "date", "value"); }),
                   "no data rows"));
}

TEST_CASE("format_sig9 output shapes") {
    CHECK(elan::format_sig9(0.0) == "0");
    CHECK(elan::format_sig9(1.0) == "1");
    CHECK(elan::format_sig9(-2.5) == "-2.5");
    CHECK(elan::format_sig9(0.1) == "0.1");
    CHECK(elan::format_sig9(1.0 / 3.0) == "0.333333333");
    CHECK(elan::format_sig9(1234567891.0) == "1.23456789e+09");
    CHECK(elan::format_sig9(1e20) == "1e+20");
}

TEST_CASE("events JSONL round trip") {
    std::vector<elan::ElementEvent> events(2);
    events[0].t_sample = 120.25;
    events[0].c_abs = 0.0375;
    events[0].c_phase = -1.234;
    events[0].rho = 7.5;
    events[0].omega_rho = 0.4;
    events[0].significance = 3.25;
    events[0].overlap_flag = true;
    events[1].t_sample = 500.0;
    events[1].c_abs = 1.5e-3;
    events[1].c_phase = 2.9;
    events[1].rho = 12.0;
    events[1].omega_rho = 0.25;
    events[1].significance = 1.75;
    events[1].overlap_flag = false;

    const std::string path = temp_path("events.jsonl");
    const double dt = 1.0 / elan::kDaysPerYear;
    elan::write_events_jsonl(events, dt, 2018.5, path);
    const auto back = elan::read_events_jsonl(path);
    REQUIRE(back.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(std::abs(back[i].t_sample - events[i].t_sample) <
              1e-8 * std::abs(events[i].t_sample));
        CHECK(std::abs(back[i].c_abs - events[i].c_abs) < 1e-8 * events[i].c_abs);
        CHECK(std::abs(back[i].c_phase - events[i].c_phase) < 1e-8);
        CHECK(std::abs(back[i].rho - events[i].rho) < 1e-8 * events[i].rho);
        CHECK(std::abs(back[i].omega_rho - events[i].omega_rho) < 1e-8);
        CHECK(std::abs(back[i].significance - events[i].significance) < 1e-8);
        CHECK(back[i].overlap_flag == events[i].overlap_flag);
    }
}

TEST_CASE("events JSONL input tolerances and failures") {
    // omega_rho, significance and overlap_flag may be omitted by hand-written
    // event specs; blank lines are skipped
    const std::string minimal = write_file(
        "events_min.jsonl",
        "{\"t_sample\": 5, \"c_abs\": 1, \"c_phase_rad\": 0.5, \"rho_samples\": 4}\n"
        "\n"
        "{\"t_sample\": 9, \"c_abs\": 2, \"c_phase_rad\": 0, \"rho_samples\": 6, "
        "\"omega_rho\": 0.5}\n");
    const auto events = elan::read_events_jsonl(minimal);
    REQUIRE(events.size() == 2);
    CHECK(events[0].omega_rho == 0.0);
    CHECK(events[0].significance == 1.0);
    CHECK_FALSE(events[0].overlap_flag);
    CHECK(events[1].omega_rho == 0.5);

    const std::string missing_field =
        write_file("events_bad1.jsonl", "{\"t_sample\": 5}\n");
    CHECK(contains(error_text([&] { elan::read_events_jsonl(missing_field); }),
                   "missing event field"));

    const std::string bad_json = write_file("events_bad2.jsonl", "not json\n");
    const std::string msg = error_text([&] { elan::read_events_jsonl(bad_json); });
    CHECK(contains(msg, ":1:"));
    CHECK(contains(msg, "bad JSON"));

    CHECK_THROWS_AS(elan::read_events_jsonl(temp_path("no_events_here.jsonl")),
                    std::runtime_error);
}

TEST_CASE("civil date arithmetic and ISO round trips") {
    CHECK(elan::days_from_civil(1970, 1, 1) == 0);
    CHECK(elan::days_from_civil(1970, 1, 2) == 1);
    CHECK(elan::days_from_civil(1969, 12, 31) == -1);
    CHECK(elan::days_from_civil(2000, 3, 1) - elan::days_from_civil(2000, 2, 28) == 2);

    int y;
    unsigned m, d;
    elan::civil_from_days(0, y, m, d);
    CHECK(y == 1970);
    CHECK(m == 1);
    CHECK(d == 1);
    elan::civil_from_days(-1, y, m, d);
    CHECK(y == 1969);
    CHECK(m == 12);
    CHECK(d == 31);

    CHECK(elan::year_fraction_from_iso("1970-01-01") == 1970.0);
    for (const std::string iso : {"2018-07-02", "2000-02-29", "1999-12-31", "2026-08-19",
                                  "1970-01-01", "1969-06-15"})
        CHECK(elan::iso_from_year_fraction(elan::year_fraction_from_iso(iso)) == iso);

    // one day is within rounding of one 1/365.2425 year step
    const double a = elan::year_fraction_from_iso("2020-06-01");
    const double b = elan::year_fraction_from_iso("2020-06-02");
    CHECK(std::abs((b - a) * elan::kDaysPerYear - 1.0) < 1e-9);
}

TEST_CASE("ISO parsing is strict") {
    int y;
    unsigned m, d;
    CHECK(elan::parse_iso_date("2018-02-03", y, m, d));
    CHECK(y == 2018);
    CHECK(m == 2);
    CHECK(d == 3);
    for (const std::string bad : {"2018-2-3", "2018/02/03", "2018-13-01", "2018-00-01",
                                  "2018-02-30", "201-02-03", "abcd-ef-gh", "2018-02-03 ",
                                  "2018-02-3x", ""})
        CHECK_FALSE(elan::parse_iso_date(bad, y, m, d));
    CHECK_THROWS_AS(elan::year_fraction_from_iso("2018-2-3"), std::invalid_argument);
    CHECK_THROWS_AS(elan::iso_from_year_fraction(std::nan("")), std::invalid_argument);
}

TEST_CASE("sha256 of known byte strings") {
    const std::string empty = write_file("sha_empty.bin", "");
    CHECK(elan::sha256_file(empty) ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    const std::string abc = write_file("sha_abc.bin", "abc");
    CHECK(elan::sha256_file(abc) ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK_THROWS_AS(elan::sha256_file(temp_path("no_such_blob")), std::runtime_error);
}

TEST_CASE("series CSV writes date, value and ISO columns") {
    elan::TimeSeries x;
    x.dt = 1.0 / elan::kDaysPerYear;
    x.t0 = elan::year_fraction_from_iso("2018-07-02");
    x.values = {1.5, -0.25, 0.333333333333, 2.0, 1.0, 0.5, 0.25, 0.125,
                1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0};
    const std::string path = temp_path("series.csv");
    elan::write_series_csv(x, path);

    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "date,value,date_iso");
    REQUIRE(std::getline(in, line));
    CHECK(contains(line, ",1.5,2018-07-02"));
    REQUIRE(std::getline(in, line));
    CHECK(contains(line, ",-0.25,2018-07-03"));

    // the numeric date column reads back losslessly
    const elan::CsvReadResult r = elan::read_csv(path, "date", "value");
    REQUIRE(r.series.times.size() == x.values.size());
    CHECK(r.series.times[0] == x.t0);
    CHECK(r.iso_dates.empty());
    CHECK(std::abs(r.series.values[2] - x.values[2]) < 1e-9);
}

TEST_CASE("scalogram CSV layout: corner label, timestamps, period rows") {
    elan::Scalogram sg;
    sg.grid = elan::make_scale_grid(elan::MorseParams(3.0, 1.0), 8.0, 16.0, 1);
    sg.n_times = 4;
    sg.dt = 0.5;
    sg.t0 = 10.0;
    sg.coeffs.assign(sg.grid.size() * sg.n_times, elan::cplx(0.0, 0.0));
    sg.valid.assign(sg.grid.size() * sg.n_times, 1);
    sg.at(0, 2) = elan::cplx(3.0, 4.0);  // modulus 5
    const std::string path = temp_path("scalogram.csv");
    elan::write_scalogram_csv(sg, path);

    std::ifstream in(path);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "period,10,10.5,11,11.5");
    REQUIRE(std::getline(in, line));
    CHECK(line == "4,0,0,5,0");  // finest row first: period 8 samples * dt 0.5
    REQUIRE(std::getline(in, line));
    CHECK(contains(line, "8,0,0,0,0"));
    CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("scalogram PGM is a valid P5 with one byte per cell") {
    elan::Scalogram sg;
    sg.grid = elan::make_scale_grid(elan::MorseParams(3.0, 1.0), 8.0, 32.0, 1);
    sg.n_times = 7;
    sg.coeffs.assign(sg.grid.size() * sg.n_times, elan::cplx(0.0, 0.0));
    sg.valid.assign(sg.grid.size() * sg.n_times, 1);
    sg.at(1, 3) = elan::cplx(2.0, 0.0);
    const std::string path = temp_path("scalogram.pgm");
    elan::write_scalogram_pgm(sg, path);

    std::ifstream in(path, std::ios::binary);
    std::string magic;
    REQUIRE(std::getline(in, magic));
    CHECK(magic == "P5");
    std::string line;
    REQUIRE(std::getline(in, line));  // comment
    CHECK(line.rfind('#', 0) == 0);
    std::size_t w = 0, h = 0;
    int maxval = 0;
    in >> w >> h >> maxval;
    in.get();  // single whitespace after the header
    CHECK(w == sg.n_times);
    CHECK(h == sg.n_scales());
    CHECK(maxval == 255);
    std::vector<char> pixels(w * h);
    in.read(pixels.data(), static_cast<std::streamsize>(pixels.size()));
    REQUIRE(in.gcount() == static_cast<std::streamsize>(pixels.size()));
    // the bright cell is the maximum
    CHECK(static_cast<unsigned char>(pixels[1 * w + 3]) == 255);
    in.get();
    CHECK(in.eof());
}
