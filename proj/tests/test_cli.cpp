#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(SCALELAB_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("scalelab_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("cli exit codes") {
  CHECK(run_cli("list").code == 0);
  CHECK(run_cli("--bogus").code == 2);
  CHECK(run_cli("norm --values 1,2").code == 2);
  CHECK(run_cli("norm --values 1,2 --spec l:0:1").code == 2);
  CHECK(run_cli("dilate --values 1,0,0,0 --C 3 --p 1 --r 1").code == 1);
  CHECK(run_cli("prop-witness --family constant --nhi 10").code == 1);
  const auto ok = run_cli("kfunc --couple l1linf --values 3,1,2 --t 0.5");
  CHECK(ok.code == 0);
  const auto j = nlohmann::json::parse(ok.out);
  CHECK(j["holds"] == true);
  CHECK(j["command"] == "kfunc");
}

TEST_CASE("cli list catalog") {
  const auto r = run_cli("list --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.is_array());
  CHECK(j.size() >= 20);
}

TEST_CASE("cli config files") {
  const auto dir = temp_dir("config");
  {
    std::ofstream(dir / "good.json") << R"({"values": [1, 0.5, 0.25], "spec": "l:1:1"})";
    std::ofstream(dir / "bad.json") << R"({"values": [1], "spec": "l:1:1", "nonsense": 3})";
  }
  const auto a = run_cli("norm --config " + (dir / "good.json").string());
  REQUIRE(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["result"]["norm"].get<double>() == doctest::Approx(1.75));
  // Flags win over the file.
  const auto b = run_cli("norm --config " + (dir / "good.json").string() + " --spec l:1:2");
  REQUIRE(b.code == 0);
  CHECK(nlohmann::json::parse(b.out)["result"]["norm"].get<double>() == doctest::Approx(1 + 2 * 0.5 + 3 * 0.25));
  CHECK(run_cli("norm --config " + (dir / "bad.json").string()).code == 2);
  CHECK(run_cli("norm --config " + (dir / "missing.json").string()).code == 2);
}

TEST_CASE("cli output directory and determinism") {
  const auto dir = temp_dir("out");
  const std::string args = "prescribe --random 50 --seed 11 --out " + dir.string();
  REQUIRE(run_cli(args).code == 0);
  std::ifstream f1(dir / "result.json");
  std::stringstream first;
  first << f1.rdbuf();
  CHECK(std::filesystem::exists(dir / "profile.csv"));
  REQUIRE(run_cli(args).code == 0);
  std::ifstream f2(dir / "result.json");
  std::stringstream second;
  second << f2.rdbuf();
  CHECK(first.str() == second.str());
  CHECK(run_cli("prescribe --random 50 --seed 12").out != run_cli("prescribe --random 50 --seed 11").out);
}
