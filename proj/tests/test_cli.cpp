// End-to-end checks of the command-line frontend: output content, exit
// codes, atomic writes and byte-identical reproducibility. The binary path
// arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>

namespace {

std::string cli_path;
std::filesystem::path work_dir;

int run(const std::string& args) {
  std::string cmd = cli_path + " " + args + " > " + (work_dir / "stdout.txt").string() +
                    " 2> " + (work_dir / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string out_file(const std::string& name) { return (work_dir / name).string(); }

} // namespace

TEST_CASE("ainf output matches the arity-4 table") {
  REQUIRE(run("ainf --arity 4 --out " + out_file("ainf4.json")) == 0);
  auto j = nlohmann::json::parse(slurp(out_file("ainf4.json")));
  CHECK(j["dims"]["-2"] == 1);
  CHECK(j["dims"]["-1"] == 5);
  CHECK(j["dims"]["0"] == 5);
  CHECK(j["betti"] == nlohmann::json({{"0", 1}}));
  auto manifest = nlohmann::json::parse(slurp(out_file("ainf4.json.manifest.json")));
  CHECK(manifest["subcommand"] == "ainf");
  CHECK(manifest["parameters"]["arity"] == 4);
  CHECK(manifest.contains("artifact_version"));
  CHECK(manifest.contains("wall_time_seconds"));
}

TEST_CASE("moduli homology output omits zero degrees") {
  REQUIRE(run("moduli-homology --genus 0 --boundaries 3 --out " + out_file("m03.json")) == 0);
  CHECK(nlohmann::json::parse(slurp(out_file("m03.json"))) == nlohmann::json({{"3", 1}}));
}

TEST_CASE("ribbon census is CSV with one row per edge count") {
  REQUIRE(run("ribbon-census --genus 1 --boundaries 1 --out " + out_file("census.csv")) == 0);
  std::string csv = slurp(out_file("census.csv"));
  CHECK(csv.rfind("g,n,m,generator_count,killed_count\n", 0) == 0);
  CHECK(csv.find("1,1,2,0,1\n") != std::string::npos);
  CHECK(csv.find("1,1,3,1,0\n") != std::string::npos);
}

TEST_CASE("star with the shipped data reproduces the first-order example") {
  REQUIRE(run("star --poisson data/poisson_constant_r2.json --f x1 --g x2 --order 1 "
              "--weights data/weights_moyal_order2.json --out " +
              out_file("star.json")) == 0);
  auto j = nlohmann::json::parse(slurp(out_file("star.json")));
  CHECK(j["weight_mode"] == "exact");
  CHECK(j["coefficients"][0]["terms"] == nlohmann::json::parse("[[[1,1],1,1]]"));
  CHECK(j["coefficients"][1]["terms"] == nlohmann::json::parse("[[[0,0],1,1]]"));
}

TEST_CASE("reproducibility: identical parameters give byte-identical outputs") {
  std::string args = "star --poisson data/poisson_so3.json --f x1*x2 --g x2+x3 --order 2 "
                     "--mc-samples 30000 --seed 99 --out ";
  REQUIRE(run(args + out_file("mc1.json")) == 0);
  REQUIRE(run(args + out_file("mc2.json")) == 0);
  std::string a = slurp(out_file("mc1.json"));
  CHECK(a == slurp(out_file("mc2.json")));
  CHECK(!a.empty());

  // worker count must not change the bytes
  REQUIRE(run("--workers 1 " + args + out_file("mc3.json")) == 0);
  CHECK(a == slurp(out_file("mc3.json")));

  // a different seed must
  REQUIRE(run("star --poisson data/poisson_so3.json --f x1*x2 --g x2+x3 --order 2 "
              "--mc-samples 30000 --seed 100 --out " +
              out_file("mc4.json")) == 0);
  CHECK(a != slurp(out_file("mc4.json")));

  // deterministic subcommands too
  REQUIRE(run("presentation --name assoc --arity 4 --out " + out_file("p1.json")) == 0);
  REQUIRE(run("presentation --name assoc --arity 4 --out " + out_file("p2.json")) == 0);
  CHECK(slurp(out_file("p1.json")) == slurp(out_file("p2.json")));
}

TEST_CASE("exit codes: validation 1, budget 2") {
  CHECK(run("no-such-subcommand") == 1);
  CHECK(run("ainf") == 1);                                      // missing required flag
  CHECK(run("moduli-homology --genus 0 --boundaries 2") == 1);  // unstable pair
  CHECK(run("hochschild --algebra data/algebra_m2.json --max-degree 9") == 2);
  CHECK(run("ribbon-census --genus 2 --boundaries 3") == 2);
  CHECK(run("presentation --name poisson --arity 6") == 2);
  CHECK(run("star --poisson data/poisson_so3.json --f x1 --g x2 --order 1") == 1);
  CHECK(run("hochschild --algebra data/no_such_file.json --max-degree 2") == 1);
  CHECK(run("deform-check --series data/algebra_m2.json") == 0); // no terms: order 0
}

TEST_CASE("invalid runs leave no partial output files") {
  std::string target = out_file("should_not_exist.json");
  std::filesystem::remove(target);
  std::filesystem::remove(target + ".tmp");
  CHECK(run("hochschild --algebra data/no_such_file.json --max-degree 2 --out " + target) == 1);
  CHECK(!std::filesystem::exists(target));
  CHECK(!std::filesystem::exists(target + ".tmp"));
}

TEST_CASE("deform-check reports the failing order") {
  std::ofstream bad(work_dir / "bad_series.json");
  bad << R"({"dim": 2,
             "c": [[1,1,1,1,1],[1,2,2,1,1],[2,1,2,1,1]],
             "unit": [1, 0],
             "terms": [[[1,1,1,1,1]]]})";
  bad.close();
  REQUIRE(run("deform-check --series " + (work_dir / "bad_series.json").string() + " --out " +
              out_file("deform_bad.json")) == 0);
  auto j = nlohmann::json::parse(slurp(out_file("deform_bad.json")));
  CHECK(j["residual_zero"]["0"] == true);
  CHECK(j["residual_zero"]["1"] == false);
  CHECK(j["first_nonzero_order"] == 1);
}

int main_impl(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-graphhom-binary>\n");
    return 1;
  }
  cli_path = argv[1];
  work_dir = std::filesystem::temp_directory_path() /
             ("graphhom_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(work_dir);
  doctest::Context ctx;
  int res = ctx.run();
  std::filesystem::remove_all(work_dir);
  return res;
}

int main(int argc, char** argv) { return main_impl(argc, argv); }
