#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "resdecay/cli.hpp"
#include "resdecay/config.hpp"

using namespace resdecay;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "resdecay_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path p = scratch(name);
  std::ofstream(p) << text;
  return p;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

const char* kAmpConfig = R"({
  "resonance": {"E_R": 1.0, "Gamma": 0.2},
  "time_grid": {"start": 0.5, "stop": 20, "points": 9, "spacing": "logarithmic"},
  "models": ["bw_fullline", "complex_delta"]
})";

}  // namespace

TEST_CASE("amp CSV carries the residue identity row by row") {
  const fs::path cfg = write_config("amp.json", kAmpConfig);
  const Run r = invoke({"amp", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 1 + 2 * 9);
  CHECK(r.out.rfind("t,model,re,im,abs2,est_error\n", 0) == 0);
  for (std::size_t i = 1; i < rows.size(); i += 2) {
    REQUIRE(rows[i][1] == "bw_fullline");
    REQUIRE(rows[i + 1][1] == "complex_delta");
    const Complex full{std::stod(rows[i][2]), std::stod(rows[i][3])};
    const Complex delta{std::stod(rows[i + 1][2]), std::stod(rows[i + 1][3])};
    CHECK(testing::same_bits(full, Complex{0, -2 * kPi} * delta));
  }
}

TEST_CASE("compare CSV schema") {
  const fs::path cfg = write_config("cmp.json", kAmpConfig);
  const Run r = invoke({"compare", "--config", cfg.string()});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  CHECK(r.out.rfind("t,model,re,im,abs2,est_error,rel_dev,ratio_re,ratio_im\n", 0) == 0);
  REQUIRE(rows.size() == 10);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double d = std::stod(rows[i][6]);
    CHECK(std::isfinite(d));
    CHECK(d >= 0.0);
  }
  const Run j = invoke({"compare", "--config", cfg.string(), "--format", "json"});
  REQUIRE(j.code == 0);
  const Json doc = Json::parse(j.out);
  CHECK(doc["rel_dev"].size() == 9);
  CHECK(doc.contains("crossover_time"));
}

TEST_CASE("flags override the config") {
  const Run r = invoke({"amp", "--er", "2", "--gamma", "0.5", "--tmin", "1", "--tmax", "3", "--points", "3"});
  REQUIRE(r.code == 0);
  CHECK(parse_csv(r.out).size() == 1 + 3 * 3);
}

TEST_CASE("invalid input exits 1 without writing output") {
  const fs::path out = scratch("never.csv");
  fs::remove(out);
  const fs::path cfg = write_config("bad.json", R"({"resonance": {"E_R": 1, "Gamma": 0},
    "time_grid": {"start": 1, "stop": 2, "points": 2}})");
  const Run r = invoke({"amp", "--config", cfg.string(), "--out", out.string()});
  CHECK(r.code == cli::kExitInvalid);
  CHECK_FALSE(fs::exists(out));
  const Json err = Json::parse(r.err);
  CHECK(err["error"] == "validation");
  CHECK(r.err.find('\n') == r.err.size() - 1);

  CHECK(invoke({"amp", "--config", "/nonexistent/cfg.json"}).code == cli::kExitInvalid);
  CHECK(invoke({"amp"}).code == cli::kExitInvalid);  // no resonance
  CHECK(invoke({"frobnicate"}).code == cli::kExitInvalid);
  CHECK(invoke({"amp", "--format", "xml"}).code == cli::kExitInvalid);
  CHECK(invoke({"--help"}).code == cli::kExitOk);
}

TEST_CASE("numerical failure exits 2") {
  const fs::path cfg = write_config("tight.json", R"({
    "resonance": {"E_R": 1, "Gamma": 0.1},
    "time_grid": {"start": 1, "stop": 2, "points": 2},
    "models": ["bw_halfline"],
    "quadrature": {"max_evals": 20}})");
  const Run r = invoke({"amp", "--config", cfg.string()});
  CHECK(r.code == cli::kExitNumerical);
  CHECK(Json::parse(r.err)["error"] == "quadrature_nonconvergence");
}

TEST_CASE("identical configs give identical bytes") {
  const fs::path cfg = write_config("det.json", R"({
    "resonance": {"E_R": 3, "Gamma": 0.4},
    "form_factor": {"kind": "power_law", "alpha": 0.5},
    "time_grid": {"start": 0.2, "stop": 30, "points": 15, "spacing": "log"},
    "scan": {"param": "Gamma", "values": [0.1, 0.4, 1.6, 3.2]}})");
  const fs::path a = scratch("a.csv"), b = scratch("b.csv");
  REQUIRE(invoke({"amp", "--config", cfg.string(), "--out", a.string()}).code == 0);
  REQUIRE(invoke({"amp", "--config", cfg.string(), "--out", b.string()}).code == 0);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  CHECK(slurp(a) == slurp(b));
  const Run s1 = invoke({"scan", "--config", cfg.string(), "--threads", "1"});
  const Run s4 = invoke({"scan", "--config", cfg.string(), "--threads", "4"});
  REQUIRE(s1.code == 0);
  CHECK(s1.out == s4.out);
  CHECK(s1.out.rfind("param,value,t,model,re,im,abs2,est_error\n", 0) == 0);
  CHECK(parse_csv(s1.out).size() == 1 + 4 * 15 * 3);
}

TEST_CASE("case studies") {
  const fs::path taylor = write_config("taylor.json", R"({
    "resonance": {"E_R": 1, "Gamma": 0.05},
    "tau_grid": {"start": -10.5, "stop": 40.5, "points": 18}})");
  const Run t = invoke({"casestudy", "taylor", "--config", taylor.string()});
  REQUIRE(t.code == 0);
  const Json doc = Json::parse(t.out);
  CHECK(doc["case"] == "taylor");
  CHECK(doc["causality"]["wwa_precursor"] == 0.0);
  CHECK(doc["causality"]["hegerfeldt_flag"] == true);

  const fs::path scully = write_config("scully.json", R"({
    "scully": {"omega": 1, "Gamma": 0.01, "delta_r": 50},
    "tau_grid": [-5, 10]})");
  const Run s = invoke({"casestudy", "scully", "--config", scully.string(), "--format", "csv"});
  REQUIRE(s.code == 0);
  const auto rows = parse_csv(s.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[2][1] == "wwa");
  CHECK(rows[2][2] == "0");
  CHECK(rows[2][3] == "0");
  CHECK(invoke({"casestudy", "fermi"}).code == cli::kExitInvalid);
}
