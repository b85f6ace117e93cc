#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* cli_path() {
  const char* cli = std::getenv("BONDMATCHER_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "BONDMATCHER_CLI must point at the binary");
  return cli;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() /
                       ("bondmatcher_cli_" + std::to_string(::getpid())) / name;
  fs::create_directories(dir);
  return dir;
}

RunResult run_cli(const std::string& args, const fs::path& dir) {
  const fs::path out_file = dir / "stdout.txt";
  const fs::path err_file = dir / "stderr.txt";
  const std::string cmd = std::string("\"") + cli_path() + "\" " + args +
                          " >" + out_file.string() + " 2>" + err_file.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = read_file(out_file);
  r.err = read_file(err_file);
  return r;
}

// Two well separated wells on a planar grid; the sweep nudges the second
// well so members differ without changing the minimum count.
const std::string kTwoWellSpec = R"({
  "kernel": "gaussian",
  "sites": [
    {"pos": [1.2, 2.0, 0.0], "amp": 5.0, "decay": 0.8},
    {"pos": [2.8, 2.0, 0.0], "amp": 4.0, "decay": 0.8}
  ],
  "grid": {"dims": [17, 17, 1], "spacing": [0.25, 0.25, 1.0],
           "origin": [0.0, 0.0, 0.0]},
  "ensemble": {"directions": [[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]],
               "steps": 3, "scale": 0.08}
})";

const std::string kOneWellSpec = R"({
  "kernel": "gaussian",
  "sites": [{"pos": [2.0, 2.0, 0.0], "amp": 5.0, "decay": 1.2}],
  "grid": {"dims": [17, 17, 1], "spacing": [0.25, 0.25, 1.0],
           "origin": [0.0, 0.0, 0.0]}
})";

void write_spec(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  REQUIRE(out.good());
}

}  // namespace

TEST_CASE("--version reports the library version") {
  const fs::path dir = scratch_dir("version");
  const RunResult r = run_cli("--version", dir);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("a missing subcommand is a usage error, not a pipeline failure") {
  const fs::path dir = scratch_dir("usage");
  const RunResult r = run_cli("", dir);
  CHECK(r.exit_code >= 100);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("synth writes the member volumes and a manifest") {
  const fs::path dir = scratch_dir("synth");
  write_spec(dir / "pairdemo.json", kTwoWellSpec);
  const RunResult r = run_cli("synth " + (dir / "pairdemo.json").string() +
                                  " --out " + (dir / "vols").string(),
                              dir);
  REQUIRE(r.exit_code == 0);

  const auto manifest =
      nlohmann::json::parse(read_file(dir / "vols" / "pairdemo.manifest.json"));
  CHECK(manifest.at("fixture") == "pairdemo");
  CHECK(manifest.at("version") == "0.1.0");
  REQUIRE(manifest.at("files").size() == 3);
  for (const auto& f : manifest.at("files"))
    CHECK(fs::exists(dir / "vols" / f.get<std::string>()));
  CHECK(fs::exists(dir / "vols" / "pairdemo_00.bmgrid"));
  CHECK(fs::exists(dir / "vols" / "pairdemo_02.bmgrid"));
}

TEST_CASE("analyze emits the bond graph, polylines and indicator table") {
  const fs::path dir = scratch_dir("analyze");
  write_spec(dir / "pairdemo.json", kTwoWellSpec);
  REQUIRE(run_cli("synth " + (dir / "pairdemo.json").string() + " --out " +
                      (dir / "vols").string(),
                  dir)
              .exit_code == 0);

  const std::string volume = (dir / "vols" / "pairdemo_01.bmgrid").string();
  const RunResult r =
      run_cli("analyze " + volume + " --out " + (dir / "res").string(), dir);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("wrote ") != std::string::npos);

  const auto j = nlohmann::json::parse(
      read_file(dir / "res" / "pairdemo_01.bondgraph.json"));
  CHECK(j.at("version") == "0.1.0");
  CHECK(j.at("source_id") == "pairdemo_01");
  CHECK(j.at("config").contains("epsilon"));
  CHECK(j.at("nodes").size() == 2);
  REQUIRE(j.at("arcs").size() >= 1);
  CHECK(j.at("arcs").at(0).contains("bond_class"));
  CHECK(j.at("stats").at("minima_after") == 2);

  const std::string obj = read_file(dir / "res" / "pairdemo_01.arcs.obj");
  CHECK(obj.find("# bondmatcher") != std::string::npos);
  CHECK(obj.find("\nl ") != std::string::npos);
  const std::string csv =
      read_file(dir / "res" / "pairdemo_01.indicators.csv");
  CHECK(csv.find("member_id,bond_id,class") != std::string::npos);
}

TEST_CASE("analyze honours --target-min-count") {
  const fs::path dir = scratch_dir("target");
  write_spec(dir / "pairdemo.json", kTwoWellSpec);
  REQUIRE(run_cli("synth " + (dir / "pairdemo.json").string() + " --out " +
                      (dir / "vols").string(),
                  dir)
              .exit_code == 0);

  const std::string volume = (dir / "vols" / "pairdemo_01.bmgrid").string();
  const RunResult r = run_cli("analyze " + volume + " --target-min-count 1" +
                                  " --out " + (dir / "res").string(),
                              dir);
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(
      read_file(dir / "res" / "pairdemo_01.bondgraph.json"));
  CHECK(j.at("nodes").size() == 1);
  CHECK(j.at("stats").at("minima_after") == 1);
  CHECK(j.at("config").at("target_min_count") == 1);
}

TEST_CASE("ensemble runs are deterministic byte for byte") {
  const fs::path dir = scratch_dir("ensemble");
  write_spec(dir / "pairdemo.json", kTwoWellSpec);
  REQUIRE(run_cli("synth " + (dir / "pairdemo.json").string() + " --out " +
                      (dir / "vols").string(),
                  dir)
              .exit_code == 0);

  const RunResult r1 = run_cli("ensemble " + (dir / "vols").string() +
                                   " --out " + (dir / "o1").string(),
                               dir);
  REQUIRE(r1.exit_code == 0);
  const RunResult r2 = run_cli("ensemble " + (dir / "vols").string() +
                                   " --out " + (dir / "o2").string(),
                               dir);
  REQUIRE(r2.exit_code == 0);

  CHECK(read_file(dir / "o1" / "occurrence.json") ==
        read_file(dir / "o2" / "occurrence.json"));
  CHECK(read_file(dir / "o1" / "occurrence.csv") ==
        read_file(dir / "o2" / "occurrence.csv"));

  const auto j =
      nlohmann::json::parse(read_file(dir / "o1" / "occurrence.json"));
  CHECK(j.at("reference_id") == "pairdemo_01");
  CHECK(j.at("member_ids").size() == 3);
  for (const auto& rate : j.at("rates")) {
    CHECK(rate.at("denominator") == 3);
    CHECK(rate.at("numerator") >= 1);
  }
}

TEST_CASE("a corrupt cube file exits with the parse code and names the line") {
  const fs::path dir = scratch_dir("corrupt");
  write_spec(dir / "bad.cube",
             "comment\ncomment\nnot_a_number 0.0 0.0 0.0\n");
  const RunResult r = run_cli("analyze " + (dir / "bad.cube").string(), dir);
  CHECK(r.exit_code == 2);
  const auto err = nlohmann::json::parse(r.err);
  CHECK(err.at("error") == "parse");
  CHECK(err.at("line") == 3);
  CHECK(err.at("path").get<std::string>().find("bad.cube") !=
        std::string::npos);
}

TEST_CASE("match refuses volumes with different node counts") {
  const fs::path dir = scratch_dir("match");
  write_spec(dir / "pairdemo.json", kTwoWellSpec);
  write_spec(dir / "one.json", kOneWellSpec);
  REQUIRE(run_cli("synth " + (dir / "pairdemo.json").string() + " --out " +
                      (dir / "vols").string(),
                  dir)
              .exit_code == 0);
  REQUIRE(run_cli("synth " + (dir / "one.json").string() + " --out " +
                      (dir / "vols").string(),
                  dir)
              .exit_code == 0);

  const RunResult ok = run_cli(
      "match " + (dir / "vols" / "pairdemo_00.bmgrid").string() + " " +
          (dir / "vols" / "pairdemo_02.bmgrid").string() + " --out " +
          (dir / "m1").string(),
      dir);
  REQUIRE(ok.exit_code == 0);
  const auto j = nlohmann::json::parse(read_file(dir / "m1" / "match.json"));
  CHECK(j.at("node_map").size() == 2);
  CHECK(j.at("matched_arcs") >= 1);

  const RunResult bad = run_cli(
      "match " + (dir / "vols" / "pairdemo_00.bmgrid").string() + " " +
          (dir / "vols" / "one_00.bmgrid").string() + " --out " +
          (dir / "m2").string(),
      dir);
  CHECK(bad.exit_code == 3);
  const auto err = nlohmann::json::parse(bad.err);
  CHECK(err.at("error") == "size_mismatch");
}
