#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "wnv/cli.hpp"

using namespace wnv;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "wnv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

std::string smoke_cfg() { return std::string(WNV_CONFIG_DIR) + "/smoke.cfg"; }

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("wnv_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors") {
  CHECK(run({"frobnicate"}) == kExitUsage);
  CHECK(run({}) == kExitUsage);
  CHECK(run({"--config", "/nonexistent.cfg", "simulate"}) == kExitUsage);
  CHECK(run({"--config", smoke_cfg(), "simulate", "--J", "2"}) == kExitUsage);
  CHECK(run({"--config", smoke_cfg(), "simulate", "--h0", "-1"}) == kExitUsage);
}

TEST_CASE("simulate writes its outputs") {
  const fs::path out = scratch("sim");
  REQUIRE(run({"--config", smoke_cfg(), "--out", out.string(), "simulate"}) == kExitOk);
  for (const char* f : {"boundaries.csv", "config.cfg", "fronts.svg", "norms.svg", "heatmap.svg"}) {
    CAPTURE(f);
    CHECK(fs::exists(out / f));
  }
  int snapshots = 0;
  for (const auto& e : fs::directory_iterator(out))
    if (e.path().filename().string().rfind("snapshot_", 0) == 0) ++snapshots;
  CHECK(snapshots > 0);
  fs::remove_all(out);
}

TEST_CASE("runs are bitwise reproducible") {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  REQUIRE(run({"--config", smoke_cfg(), "--out", a.string(), "simulate"}) == kExitOk);
  REQUIRE(run({"--config", smoke_cfg(), "--out", b.string(), "simulate"}) == kExitOk);
  int compared = 0;
  for (const auto& e : fs::directory_iterator(a)) {
    if (e.path().extension() != ".csv") continue;
    CAPTURE(e.path().filename().string());
    CHECK(slurp(e.path()) == slurp(b / e.path().filename()));
    ++compared;
  }
  CHECK(compared > 1);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("lyapunov and sweep subcommands") {
  const fs::path out = scratch("lya");
  CHECK(run({"--config", smoke_cfg(), "--out", out.string(), "lyapunov", "--L", "1.5", "--horizon",
             "50"}) == kExitOk);
  CHECK(run({"--config", smoke_cfg(), "--out", out.string(), "sweep-lambda", "--L-list",
             "0.5,1,2", "--horizon", "50"}) == kExitOk);
  CHECK(fs::exists(out / "sweep.csv"));
  fs::remove_all(out);
}

TEST_CASE("verify flags a fixed time step") {
  const fs::path out = scratch("verify");
  CHECK(run({"--config", smoke_cfg(), "--out", out.string(), "verify", "--quick"}) == kExitOk);
  CHECK(run({"--config", smoke_cfg(), "--out", out.string(), "verify", "--quick", "--fixed-dt",
             "0.01"}) == kExitVerification);
  CHECK(slurp(out / "verify_report.txt").find("FAIL spatial order") != std::string::npos);
  fs::remove_all(out);
}
