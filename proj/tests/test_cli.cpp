#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "etspectra/cli.hpp"
#include "etspectra/error.hpp"

using namespace etspectra;
using namespace etspectra::cli;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string first_token(const std::string& s) { return s.substr(0, s.find_first_of(": \n")); }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

double num(const std::string& s) { return std::stod(s); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("parsing defaults and level syntax") {
    const std::vector<std::string> a{"spectrum", "--model", "soft-coulomb", "-P", "D=2"};
    const auto c = parse_run_config(a);
    CHECK(c.command == Command::Spectrum);
    CHECK(c.parameters.at("D") == 2.0);
    CHECK(c.levels.size() == 10);
    CHECK(c.format == OutputFormat::Csv);

    const std::vector<std::string> b{"envelope", "--model", "soft-coulomb", "-P", "D=2", "--levels", "1,3,4"};
    CHECK(parse_run_config(b).levels == std::vector<int>{1, 3, 4});
    const std::vector<std::string> r{"compare", "--model", "hulthen", "--levels", "2..5", "--format", "json"};
    const auto cr = parse_run_config(r);
    CHECK(cr.levels == std::vector<int>{2, 3, 4, 5});
    CHECK(cr.format == OutputFormat::Json);
  }

  TEST_CASE("rejected command lines") {
    const std::vector<std::vector<std::string>> bad = {
        {},
        {"plot", "--model", "soft-coulomb"},
        {"spectrum"},
        {"spectrum", "--model", "soft-coulomb", "-P", "D"},
        {"spectrum", "--model", "soft-coulomb", "-P", "D=two"},
        {"spectrum", "--model", "soft-coulomb", "-P", "D=1", "--levels", "5..2"},
        {"spectrum", "--model", "soft-coulomb", "-P", "D=1", "--levels", "-1..2"},
        {"spectrum", "--model", "soft-coulomb", "-P", "D=1", "--format", "xml"},
        {"spectrum", "--model", "soft-coulomb", "-P", "D=1", "--bogus"},
        {"wavefunction", "--model", "soft-coulomb", "-P", "D=1", "--levels", ""},
    };
    for (const auto& args : bad) {
      const auto r = run(args);
      INFO(r.err);
      CHECK(r.code == 2);
      CHECK(first_token(r.err) == "UsageError");
      CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    }
  }

  TEST_CASE("canonical form round-trips") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> u(0.01, 10.0);
    std::uniform_int_distribution<int> ui(0, 5);
    for (int trial = 0; trial < 100; ++trial) {
      RunConfig c;
      c.command = Command(ui(rng));
      c.model = "soft-coulomb";
      c.parameters = {{"D", u(rng)}};
      const int lo = ui(rng);
      c.levels.clear();
      for (int n = lo; n <= lo + ui(rng); ++n) c.levels.push_back(n);
      if (trial % 3 == 0) c.levels = {1, 4, 2};
      c.format = trial % 2 ? OutputFormat::Json : OutputFormat::Csv;
      if (trial % 4 == 0) c.out = "out.csv";
      if (trial % 5 == 0) c.grid_points = 1025;
      if (trial % 6 == 0) c.x_max = u(rng);
      if (trial % 7 == 0) c.window = std::pair{-u(rng), u(rng)};
      c.samples = 2 + ui(rng) * 50;
      c.d_range = {0.1 * u(rng), 20.0 + u(rng)};
      c.d_count = 1 + ui(rng);
      c.log_spacing = trial % 2 == 0;
      const auto args = canonical_args(c);
      const auto parsed = parse_run_config(args);
      CHECK(parsed == c);
      CHECK(canonical_args(parsed) == args);
    }
  }

  TEST_CASE("cell formatting") {
    CHECK(format_cell(Cell{}) == "");
    CHECK(format_cell(Cell{3LL}) == "3");
    CHECK(format_cell(Cell{-0.34590525971554675}) == "-0.345905259716");
    CHECK(format_cell(Cell{std::string("upper")}) == "upper");
  }

  TEST_CASE("spectrum table") {
    const auto r = run({"spectrum", "--model", "soft-coulomb", "-P", "D=2", "--levels", "0..5"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 7);
    CHECK(rows[0] == std::vector<std::string>{"n", "e_et", "e_fgh", "e_coulomb", "e_ho", "character"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
      REQUIRE(rows[i].size() == 6);
      CHECK(num(rows[i][2]) <= num(rows[i][1]));
      CHECK(num(rows[i][2]) <= num(rows[i][4]));
      CHECK(rows[i][3].empty() == ((i - 1) % 2 == 0));
      CHECK(rows[i][5] == "upper");
    }
  }

  TEST_CASE("harmonic spectrum: envelope and grid columns agree") {
    const auto r = run({"spectrum", "--model", "harmonic-approx", "-P", "D=2", "--levels", "0..4"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(std::abs(num(rows[i][1]) - num(rows[i][2])) < 1e-8);
      CHECK(rows[i][5] == "exact");
    }
  }

  TEST_CASE("error exit codes and messages") {
    auto r = run({"spectrum", "--model", "soft-coulomb", "-P", "D=-1"});
    CHECK(r.code == 2);
    CHECK(first_token(r.err) == "NonPositiveBias");
    r = run({"spectrum", "--model", "yukawa"});
    CHECK(r.code == 2);
    CHECK(first_token(r.err) == "UnknownModel");
    r = run({"sweep-d", "--model", "soft-coulomb", "-P", "D=1", "--levels", "0..2"});
    CHECK(r.code == 2);
    CHECK(first_token(r.err) == "UnsupportedLevel");
    r = run({"envelope", "--model", "exp-well", "-P", "k=1", "-P", "a=0.2", "--levels", "3"});
    CHECK(r.code == 3);
    CHECK(first_token(r.err) == "RootNotBracketed");
    r = run({"spectrum", "--model", "pure-coulomb", "--levels", "0"});
    CHECK(r.code == 3);
    CHECK(first_token(r.err) == "SingularPotentialOnGrid");
    r = run({"spectrum", "--model", "harmonic-approx", "-P", "D=1", "--levels", "0", "--out", "/nonexistent/dir/x.csv"});
    CHECK(r.code == 2);
    CHECK(first_token(r.err) == "IoError");
  }

  TEST_CASE("single-point sweep matches the spectrum") {
    const auto sweep = parse_csv(
        run({"sweep-d", "--model", "soft-coulomb", "-P", "D=2", "--d-range", "2..2", "--d-count", "1"}).out);
    const auto spec = parse_csv(run({"spectrum", "--model", "soft-coulomb", "-P", "D=2", "--levels", "0..1"}).out);
    REQUIRE(sweep.size() == 3);
    CHECK(sweep[0] == std::vector<std::string>{"n", "d", "e_fgh", "e_var", "e_et"});
    for (int n = 0; n < 2; ++n) {
      CHECK(num(sweep[n + 1][2]) == doctest::Approx(num(spec[n + 1][2])).epsilon(1e-10));
      CHECK(sweep[n + 1][4] == spec[n + 1][1]);
      CHECK(num(sweep[n + 1][2]) <= num(sweep[n + 1][3]));
      CHECK(num(sweep[n + 1][3]) < num(sweep[n + 1][4]));
    }
  }

  TEST_CASE("envelope curves dominate the potential") {
    const auto r = run({"envelope", "--model", "soft-coulomb", "-P", "D=2", "--levels", "0..3", "--samples", "201"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows.size() == 1 + 4 * 201);
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(num(rows[i][3]) >= num(rows[i][2]) - 1e-12);
    // A window that excludes every tangent point is still valid output.
    const auto w = run({"envelope", "--model", "soft-coulomb", "-P", "D=2", "--levels", "0", "--window", "30..40"});
    CHECK(w.code == 0);
  }

  TEST_CASE("wavefunction table and metadata") {
    const auto r = run({"wavefunction", "--model", "soft-coulomb", "-P", "D=2", "--levels", "0..1", "--samples", "101",
                        "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["command"] == "wavefunction");
    CHECK(doc["columns"] == nlohmann::json{"n", "x", "psi_et", "psi_fgh"});
    CHECK(doc["rows"].size() == 202);
    CHECK(doc["metadata"]["overlaps"][0].get<double>() > 0.99);
    CHECK(doc["metadata"]["overlaps"][1].get<double>() > 0.97);
    // Sign alignment: the two curves agree in sign where both are significant.
    for (const auto& row : doc["rows"]) {
      const double a = row[2].get<double>(), b = row[3].get<double>();
      if (std::abs(a) > 0.05 && std::abs(b) > 0.05) CHECK(a * b > 0.0);
    }
  }

  TEST_CASE("compare table for the Hulthen family") {
    const auto r = run({"compare", "--model", "hulthen", "-P", "k=1", "-P", "a=0.2"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      CHECK(num(rows[i][1]) <= num(rows[i][3]));
      CHECK(num(rows[i][3]) <= num(rows[i][4]));
      CHECK(std::abs(num(rows[i][2]) - num(rows[i][3])) < 1e-6 * std::abs(num(rows[i][2])));
    }
    CHECK(run({"compare", "--model", "soft-coulomb", "-P", "D=1"}).code == 2);
  }

  TEST_CASE("json wraps the same table as csv") {
    const auto csv = parse_csv(run({"spectrum", "--model", "soft-coulomb", "-P", "D=1", "--levels", "0..2"}).out);
    const auto doc = nlohmann::json::parse(
        run({"spectrum", "--model", "soft-coulomb", "-P", "D=1", "--levels", "0..2", "--format", "json"}).out);
    CHECK(doc["model"] == "soft-coulomb");
    CHECK(doc["parameters"]["D"] == 1.0);
    CHECK(doc["metadata"].contains("grid"));
    CHECK(doc["metadata"].contains("tolerance"));
    for (int i = 0; i < 3; ++i) {
      CHECK(doc["rows"][i][1].get<double>() == num(csv[i + 1][1]));
      CHECK(doc["rows"][i][2].get<double>() == num(csv[i + 1][2]));
    }
    CHECK(doc["rows"][0][3].is_null());
  }

  TEST_CASE("output file") {
    const auto path = std::filesystem::temp_directory_path() / "et_spectra_cli_test.csv";
    const auto r = run({"spectrum", "--model", "harmonic-approx", "-P", "D=1", "--levels", "0", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "n,e_et,e_fgh,e_coulomb,e_ho,character");
    std::filesystem::remove(path);
  }

  TEST_CASE("the executable reports errors on one stderr line") {
    const std::string cmd = std::string(ET_SPECTRA_EXE) + " spectrum --model soft-coulomb -P D=-1 2>&1 >/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[512];
    std::string text;
    while (std::fgets(buf, sizeof buf, pipe)) text += buf;
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 2);
    CHECK(first_token(text) == "NonPositiveBias");
  }
}
