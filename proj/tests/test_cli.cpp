#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "oracles.hpp"
#include "sobstab/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = sobstab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("sobstab_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  return parts;
}

}  // namespace

TEST_CASE("constants report") {
  const Outcome o = run({"constants", "--geometry", "circle", "--q", "4"});
  REQUIRE(o.code == 0);
  const json j = json::parse(o.out);
  CHECK(j.contains("config"));
  CHECK(j.at("version") == sobstab::cli::kVersion);
  CHECK(j.at("result").at("S").get<double>() == doctest::Approx(19.7392088).epsilon(1e-8));
  CHECK(j.at("result").at("sharp_constant").get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(j.at("config").at("subcommand") == "constants");

  const json s = json::parse(run({"constants", "--geometry", "sphere", "--d", "2", "--q", "3"}).out);
  CHECK(s.at("result").at("Y").get<double>() == doctest::Approx(2.0 * std::cbrt(4.0 * oracle::kPi)));
}

TEST_CASE("scan CSV") {
  const Outcome o = run({"scan", "--geometry", "product", "--d", "3", "--eps-start", "0.08", "--eps-factor", "0.5",
                         "--eps-count", "5", "--output", "csv"});
  REQUIRE(o.code == 0);
  const auto lines = split(o.out, '\n');
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "eps,norm_sq,lq_norm,deficit,dist_sq,quotient");
  for (int i = 1; i <= 5; ++i) CHECK(split(lines[i], ',').size() == 6);
  CHECK(lines[6].rfind("# fitted_exponent=", 0) == 0);
  CHECK(lines[6].find(",extrapolated_constant=") != std::string::npos);

  // Same numbers as the JSON report, to the last bit.
  const json j = json::parse(run({"scan", "--geometry", "product", "--d", "3"}).out);
  const auto& quotients = j.at("result").at("quotients");
  for (int i = 1; i <= 5; ++i) {
    const auto fields = split(lines[i], ',');
    CHECK(std::stod(fields[5]) == quotients[i - 1].get<double>());
    CHECK(std::stod(fields[0]) == j.at("result").at("epsilons")[i - 1].get<double>());
  }
  const double extrapolated = j.at("result").at("extrapolated_constant").get<double>();
  CHECK(std::fabs(extrapolated / (8.0 / 15.0) - 1.0) < 0.01);
}

TEST_CASE("spectrum table") {
  const Outcome o = run({"spectrum", "--geometry", "sphere", "--d", "2", "--q", "5", "--cutoff", "6"});
  REQUIRE(o.code == 0);
  const json r = json::parse(o.out).at("result");
  int zeros = 0;
  for (const auto& e : r.at("entries")) {
    if (std::fabs(e.at("raw").get<double>()) < 1e-10) {
      ++zeros;
      CHECK(e.at("l") == 1);
      CHECK(e.at("multiplicity") == 3);
    }
  }
  CHECK(zeros == 1);
  CHECK(r.at("counts").at("zero") == 1);

  const Outcome csv = run({"spectrum", "--geometry", "sphere", "--d", "2", "--q", "5", "--cutoff", "6", "--output", "csv"});
  const auto lines = split(csv.out, '\n');
  CHECK(lines[0] == "k,l,branch,raw,normalized,multiplicity");
  CHECK(lines.size() == 8);
}

TEST_CASE("radius sweep and budget") {
  const json r = json::parse(run({"radius-sweep", "--d", "4"}).out).at("result");
  REQUIRE(r.at("sweep").size() == 3);
  CHECK(r.at("sweep")[0].at("counts").at("zero") == 0);
  CHECK(r.at("sweep")[1].at("counts").at("zero") == 2);
  CHECK(r.at("sweep")[2].at("counts").at("zero") == 0);

  const Outcome b = run({"budget", "--geometry", "circle", "--q", "4", "--output", "csv"});
  REQUIRE(b.code == 0);
  CHECK(b.out.rfind("key,value\n", 0) == 0);
  CHECK(b.out.find("implied_sharp_constant,0.333333333333333") != std::string::npos);
}

TEST_CASE("exit codes") {
  const Outcome unknown = run({"constants", "--bogus"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(unknown.out.empty());

  CHECK(run({}).code == 2);
  CHECK(run({"scan", "--geometry", "sphere", "--d", "3", "--q", "7"}).code == 2);
  CHECK(run({"scan", "--geometry", "circle", "--q", "1.5"}).code == 2);
  CHECK(run({"scan", "--eps-start", "0.5"}).code == 2);
  CHECK(run({"optimize", "--modes", "20"}).code == 2);
  CHECK(run({"eval"}).code == 2);
  CHECK(run({"eval", "--input", "/nonexistent/file.json"}).code == 2);

  const Outcome noisy = run({"scan", "--q", "4", "--eps-start", "0.001", "--eps-count", "3"});
  CHECK(noisy.code == 3);
  CHECK(noisy.err.find("NoisyScan") != std::string::npos);

  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--version"}).out == std::string(sobstab::cli::kVersion) + "\n");
}

TEST_CASE("binary exit status") {
  const fs::path dir = scratch_dir();
  const std::string sink = " > " + (dir / "out.txt").string() + " 2>&1";
  int status = std::system((std::string(SOBSTAB_BINARY) + " constants --q 4" + sink).c_str());
  CHECK(WEXITSTATUS(status) == 0);
  status = std::system((std::string(SOBSTAB_BINARY) + " constants --nope" + sink).c_str());
  CHECK(WEXITSTATUS(status) == 2);
  status = std::system((std::string(SOBSTAB_BINARY) + " scan --eps-start 0.001 --eps-count 3" + sink).c_str());
  CHECK(WEXITSTATUS(status) == 3);
  fs::remove_all(dir);
}

TEST_CASE("eval reads coefficient files") {
  const fs::path dir = scratch_dir();
  const fs::path input = dir / "u.json";
  std::ofstream(input) << R"({"geometry": {"kind": "circle", "q": 4},
                              "coefficients": {"a0": 1.0, "cos": [0.1], "sin": [0.0]}})";
  const Outcome o = run({"eval", "--input", input.string()});
  REQUIRE(o.code == 0);
  const json r = json::parse(o.out).at("result");
  // closed form: ∫(1+ε cos)⁴ = 1 + 3ε² + 3ε⁴/8
  const long double pi2 = oracle::kPi * oracle::kPi;
  const long double norm = 2.0L * pi2 + 0.03L * pi2;
  const long double def = norm - 2.0L * pi2 * std::sqrt(1.0L + 0.03L + 0.375e-4L);
  const long double dist = 0.03L * pi2;
  CHECK(r.at("deficit").get<double>() == doctest::Approx(static_cast<double>(def)).epsilon(1e-10));
  CHECK(r.at("quotient").get<double>() == doctest::Approx(static_cast<double>(norm * def / (dist * dist))).epsilon(1e-9));

  std::ofstream(dir / "s.json") << R"({"geometry": {"kind": "sphere", "q": 3, "d": 2}, "zonal": [3.5449077018110318]})";
  const json s = json::parse(run({"eval", "--input", (dir / "s.json").string()}).out).at("result");
  CHECK(s.at("quotient").is_null());
  CHECK(s.at("mean").get<double>() == doctest::Approx(1.0));

  std::ofstream(dir / "p.json") << R"({"geometry": {"kind": "product", "d": 3},
                                        "coefficients": {"tensor": [[1.0, 0.2], [0.1, 0.0]]}})";
  CHECK(run({"eval", "--input", (dir / "p.json").string()}).code == 0);
  std::ofstream(dir / "bad.json") << "{ not json";
  CHECK(run({"eval", "--input", (dir / "bad.json").string()}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("atomic output and bit-for-bit re-runs") {
  const fs::path dir = scratch_dir();
  const fs::path report = dir / "opt.json";
  const Outcome first = run({"optimize", "--geometry", "circle", "--q", "4", "--modes", "2", "--restarts", "2",
                             "--seed", "99", "--output-path", report.string()});
  REQUIRE(first.code == 0);
  CHECK(first.out.empty());
  REQUIRE(fs::exists(report));
  for (const auto& entry : fs::directory_iterator(dir)) CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
  const std::string original = slurp(report);

  // the embedded config carries the output path, so the re-run rewrites the same file
  fs::rename(report, dir / "first.json");
  REQUIRE(run({"--config", (dir / "first.json").string()}).code == 0);
  CHECK(slurp(report) == original);

  const Outcome stdout_run = run({"scan", "--geometry", "sphere", "--d", "2", "--q", "3"});
  std::ofstream(dir / "scan.json") << stdout_run.out;
  const Outcome rerun = run({"--config", (dir / "scan.json").string()});
  CHECK(rerun.code == 0);
  CHECK(rerun.out == stdout_run.out);

  // the optimizer's best function is a valid eval input
  const json best = json::parse(original).at("result");
  std::ofstream(dir / "best.json") << best.at("best_function").dump();
  const json ev = json::parse(run({"eval", "--input", (dir / "best.json").string()}).out).at("result");
  CHECK(ev.at("quotient").get<double>() == best.at("best_quotient").get<double>());
  fs::remove_all(dir);
}
