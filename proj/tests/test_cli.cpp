#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "landau/commands.hpp"

using namespace landau;
namespace fs = std::filesystem;

namespace {

const fs::path data_dir{LANDAU_TEST_DATA_DIR};

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "landau");
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("landau_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

std::string config(const char* name) { return (data_dir / name).string(); }

// CSV outputs carry a provenance comment; JSON outputs carry the hash as a key.
void check_provenance(const fs::path& dir) {
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto text = slurp(entry.path());
    CAPTURE(entry.path().string());
    if (entry.path().extension() == ".csv") {
      CHECK(text.rfind("# config_hash=", 0) == 0);
    } else {
      const auto j = nlohmann::json::parse(text);
      CHECK(j.contains("config_hash"));
    }
    ++files;
  }
  CHECK(files > 0);
}

}  // namespace

TEST_CASE("configuration errors exit with code 2") {
  SUBCASE("slow-decaying field") {
    const auto r = run({"spectrum", "--config", config("bad_beta.json"), "--out", scratch("bad").string()});
    CHECK(r.code == exit_config_error);
    CHECK(r.err.find("β < −2") != std::string::npos);
  }
  SUBCASE("missing file") {
    const auto r = run({"verify", "--config", config("does_not_exist.json")});
    CHECK(r.code == exit_config_error);
    CHECK_FALSE(r.err.empty());
  }
  SUBCASE("unknown subcommand and missing option") {
    CHECK(run({"frobnicate"}).code == exit_config_error);
    CHECK(run({"spectrum"}).code == exit_config_error);
  }
  SUBCASE("negative q override") {
    const auto r = run({"weights", "--config", config("weights_mixed.json"), "--q", "-1", "--out",
                        scratch("negq").string()});
    CHECK(r.code == exit_config_error);
  }
}

TEST_CASE("spectrum command on the free problem") {
  const auto dir = scratch("spectrum");
  const auto r = run({"spectrum", "--config", config("unperturbed.json"), "--out", dir.string(), "--json",
                      "--threads", "1"});
  REQUIRE(r.code == exit_pass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["operator"] == "schroedinger");
  CHECK(j["boundary_flagged"] == 0);
  for (const auto& c : j["clusters"]) {
    const int q = c["q"];
    CHECK(c["level"].get<double>() == doctest::Approx(2.0 * q + 1.0));
    CHECK(c["multiplicity"] == 41 + q);
    CHECK(std::abs(c["min_shift"].get<double>()) < 1e-4);
    CHECK(std::abs(c["max_shift"].get<double>()) < 1e-4);
  }
  check_provenance(dir);

  SUBCASE("output is deterministic") {
    const auto again = scratch("spectrum_again");
    REQUIRE(run({"spectrum", "--config", config("unperturbed.json"), "--out", again.string(), "--json"}).code ==
            exit_pass);
    CHECK(slurp(dir / "spectrum.csv") == slurp(again / "spectrum.csv"));
    CHECK(slurp(dir / "spectrum_summary.json") == slurp(again / "spectrum_summary.json"));
  }
}

TEST_CASE("weights command") {
  const auto dir = scratch("weights");
  const auto r = run({"weights", "--config", config("weights_mixed.json"), "--out", dir.string(), "--json"});
  REQUIRE(r.code == exit_pass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  REQUIRE(j["weights"].size() == 2);
  for (const auto& w : j["weights"]) {
    CHECK(w["plus"].is_object());
    CHECK(w["minus"] == "empty");
  }
  check_provenance(dir);
  // A nonnegative weight has an empty negative side on every row.
  std::istringstream csv(slurp(dir / "weights_q1.csv"));
  std::string line;
  int rows = 0;
  while (std::getline(csv, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("lambda", 0) == 0) continue;
    const auto last = line.substr(line.rfind(',') + 1);
    CHECK(std::stod(last) == 0.0);
    ++rows;
  }
  CHECK(rows > 10);
}

TEST_CASE("identities and toeplitz commands") {
  const auto dir = scratch("identities");
  const auto r = run({"identities", "--config", config("weights_mixed.json"), "--out", dir.string(), "--json",
                      "--q", "1"});
  CHECK(r.code == exit_pass);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.contains("config_hash"));
  const auto t = run({"toeplitz", "--config", config("weights_mixed.json"), "--out", dir.string(), "--q", "1"});
  CHECK(t.code == exit_pass);
  CHECK(t.out.find("q=1") != std::string::npos);
  check_provenance(dir);
}

TEST_CASE("verify fails honestly without a trust region") {
  const auto r = run({"verify", "--config", config("tiny_R.json"), "--out", scratch("tiny").string()});
  CHECK(r.code == exit_verification_failed);
  CHECK(r.err.find("TrustRegionEmpty") != std::string::npos);
}

TEST_CASE("verify passes on the reference configuration") {
  const auto dir = scratch("reference");
  const auto r = run({"verify", "--config", config("reference.json"), "--out", dir.string()});
  CAPTURE(r.out);
  CAPTURE(r.err);
  CHECK(r.code == exit_pass);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(summary.contains("config_hash"));
  check_provenance(dir);
}
