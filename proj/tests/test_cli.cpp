// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the installed binary via std::system. Each case gets
// its own scratch directory under the system temp root.

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kBin = ARMAN_BIN;

fs::path scratch_root() {
  static const fs::path root = [] {
    const auto stamp = std::chrono::steady_clock::now().time_since_epoch().count();
    fs::path p = fs::temp_directory_path() /
                 ("arman_cli_" + std::to_string(stamp));
    fs::create_directories(p);
    return p;
  }();
  return root;
}

fs::path fresh_dir(const std::string& tag) {
  static int counter = 0;
  fs::path p = scratch_root() / (tag + "_" + std::to_string(counter++));
  fs::create_directories(p);
  return p;
}

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

fs::path tiny_topology(const fs::path& dir) {
  const fs::path p = dir / "net.csv";
  write_file(p,
             "Layer name, IFMAP Height, IFMAP Width, Filter Height, "
             "Filter Width, Channels, Num Filter, Strides,\n"
             "fc1,1,1,1,1,1,1,1,\n");
  return p;
}

fs::path wider_topology(const fs::path& dir) {
  const fs::path p = dir / "wide.csv";
  write_file(p,
             "Layer name, IFMAP Height, IFMAP Width, Filter Height, "
             "Filter Width, Channels, Num Filter, Strides,\n"
             "conv1,12,12,3,3,4,16,1,\n"
             "fc1,1,1,1,1,100,10,1,\n");
  return p;
}

fs::path tiny_tech(const fs::path& dir) {
  const fs::path p = dir / "t.tech";
  write_file(p,
             "clock_hz = 8e8\ne_mac = 1e-12\ne_sram_read = 2e-12\n"
             "e_sram_write = 3e-12\np_static_pe = 1e-6\n");
  return p;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("selectors prints the verbatim table rows") {
  const fs::path dir = fresh_dir("selectors");
  const fs::path out = dir / "out.txt";
  CHECK(run(kBin + " selectors 2x2 > " + q(out)) == 0);
  CHECK(read_file(out) == "1111111111\n");
  CHECK(run(kBin + " selectors 1x3 > " + q(out)) == 0);
  CHECK(read_file(out) == "10110---11\n");
  CHECK(run(kBin + " selectors 1x1 > " + q(out)) == 0);
  CHECK(read_file(out) == "0000000000\n");
}

TEST_CASE("usage errors exit with 1") {
  const fs::path dir = fresh_dir("usage");
  const fs::path null = dir / "null.txt";
  CHECK(run(kBin + " selectors 9x9 2> " + q(null)) == 1);
  CHECK(run(kBin + " --no-such-flag 2> " + q(null)) == 1);
  CHECK(run(kBin + " simulate 2> " + q(null)) == 1);  // missing --topology
  CHECK(run(kBin + " 2> " + q(null)) == 1);           // missing subcommand
}

TEST_CASE("version flag reports the tool version") {
  const fs::path dir = fresh_dir("version");
  const fs::path out = dir / "out.txt";
  CHECK(run(kBin + " --version > " + q(out)) == 0);
  CHECK(read_file(out) == "0.1.0\n");
}

TEST_CASE("input errors exit with 2") {
  const fs::path dir = fresh_dir("input");
  const fs::path null = dir / "null.txt";
  CHECK(run(kBin + " simulate --topology " + q(dir / "missing.csv") + " 2> " +
            q(null)) == 2);

  const fs::path bad = dir / "bad.csv";
  write_file(bad, "header\nconv1,12,twelve,3,3,4,16,1,\n");
  CHECK(run(kBin + " simulate --topology " + q(bad) + " 2> " + q(null)) == 2);
}

TEST_CASE("flag validation happens before any file is read") {
  const fs::path dir = fresh_dir("phase");
  const fs::path null = dir / "null.txt";
  // The topology path does not exist, but the bad names must win with 1.
  CHECK(run(kBin + " sweep --topology " + q(dir / "missing.csv") +
            " --arrangements 7x7 2> " + q(null)) == 1);
  CHECK(run(kBin + " dse --models " + q(dir / "missing.csv") +
            " --alpha 1.5 2> " + q(null)) == 1);
  CHECK(run(kBin + " select --topology " + q(dir / "missing.csv") +
            " --objective speed 2> " + q(null)) == 1);
  CHECK(run(kBin + " simulate --topology " + q(dir / "missing.csv") +
            " --dataflow XX 2> " + q(null)) == 1);
}

TEST_CASE("simulate writes layer rows, summary, and manifest") {
  const fs::path dir = fresh_dir("simulate");
  const fs::path topo = tiny_topology(dir);
  const fs::path out = dir / "out";
  CHECK(run(kBin + " simulate --topology " + q(topo) +
            " --rows 1 --cols 1 --dataflow OS --fixed-clock --out " + q(out)) ==
        0);

  // A 1x1x1 GEMM on a 1x1 array takes 2 cycles.
  const std::string csv = read_file(out / "simulate_layers.csv");
  CHECK(csv.find("# manifest: manifest.json\n") == 0);
  CHECK(csv.find("\nfc1,2,1,") != std::string::npos);

  const json summary = json::parse(read_file(out / "simulate_summary.json"));
  CHECK(summary["totals"]["cycles"] == 2);
  CHECK(summary["totals"]["mac_ops"] == 1);
  CHECK(summary["network"] == "net");
  CHECK(!summary.contains("energy"));  // no tech file given

  const json manifest = json::parse(read_file(out / "manifest.json"));
  CHECK(manifest["tool"] == "arman");
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["generated_at"] == "fixed");
  CHECK(manifest["outputs"].size() == 2);
}

TEST_CASE("simulate picks up the tech file and reports energy") {
  const fs::path dir = fresh_dir("simulate_tech");
  const fs::path topo = tiny_topology(dir);
  const fs::path tech = tiny_tech(dir);
  const fs::path out = dir / "out";
  CHECK(run(kBin + " simulate --topology " + q(topo) + " --tech " + q(tech) +
            " --out " + q(out)) == 0);
  const json summary = json::parse(read_file(out / "simulate_summary.json"));
  REQUIRE(summary.contains("energy"));
  CHECK(summary["energy"]["energy_j"].get<double>() > 0.0);
}

TEST_CASE("sweep outputs are byte-identical across jobs and reruns") {
  const fs::path dir = fresh_dir("sweep");
  const fs::path topo = wider_topology(dir);
  const fs::path tech = tiny_tech(dir);
  const fs::path out1 = dir / "a";
  const fs::path out2 = dir / "b";
  const std::string common = " sweep --topology " + q(topo) + " --tech " +
                             q(tech) +
                             " --bases 32 64 --fixed-clock --out ";
  CHECK(run(kBin + common + q(out1) + " --jobs 1") == 0);
  CHECK(run(kBin + common + q(out2) + " --jobs 4") == 0);
  CHECK(read_file(out1 / "sweep.csv") == read_file(out2 / "sweep.csv"));
  CHECK(read_file(out1 / "manifest.json") == read_file(out2 / "manifest.json"));

  const std::string csv = read_file(out1 / "sweep.csv");
  std::size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  CHECK(rows == 2 + 2 * 3 * 10);  // manifest line + header + grid
}

TEST_CASE("dse on a single config selects that config") {
  const fs::path dir = fresh_dir("dse");
  const fs::path topo = wider_topology(dir);
  const fs::path tech = tiny_tech(dir);
  const fs::path out = dir / "out";
  CHECK(run(kBin + " dse --models " + q(topo) + " --tech " + q(tech) +
            " --bases 64 --dataflows OS --alpha 0.2 --fixed-clock --out " +
            q(out)) == 0);
  const json summary = json::parse(read_file(out / "dse_summary.json"));
  CHECK(summary["c_star"]["dataflow"] == "OS");
  CHECK(summary["c_star"]["base"] == 64);
  REQUIRE(summary["ranking"].size() == 1);
  CHECK(summary["alpha"].get<double>() == 0.2);

  const std::string csv = read_file(out / "dse_points.csv");
  std::size_t rows = 0;
  for (char c : csv) rows += c == '\n';
  CHECK(rows == 2 + 10);  // one model x ten arrangements
}

TEST_CASE("select prints the chosen arrangement and writes the decision") {
  const fs::path dir = fresh_dir("select");
  const fs::path topo = wider_topology(dir);
  const fs::path tech = tiny_tech(dir);
  const fs::path out = dir / "out";
  const fs::path stdout_file = dir / "stdout.txt";
  CHECK(run(kBin + " select --topology " + q(topo) + " --tech " + q(tech) +
            " --base 8 --objective cycles --fixed-clock --out " + q(out) +
            " > " + q(stdout_file)) == 0);

  const json decision = json::parse(read_file(out / "decision.json"));
  CHECK(decision["objective"] == "cycles");
  CHECK(decision["baseline"] == "2x2");
  CHECK(decision["arrangements"].size() == 10);
  const std::string chosen = decision["chosen"].get<std::string>();
  CHECK(read_file(stdout_file) == chosen + "\n");
  CHECK(decision["improvement"].get<double>() >= 1.0);
}

TEST_CASE("ARMAN_TECH supplies the tech file when --tech is absent") {
  const fs::path dir = fresh_dir("env");
  const fs::path topo = tiny_topology(dir);
  const fs::path tech = tiny_tech(dir);
  const fs::path out = dir / "out";
  const fs::path null = dir / "null.txt";
  CHECK(run("env ARMAN_TECH=" + q(tech) + " " + kBin + " sweep --topology " +
            q(topo) + " --bases 32 --out " + q(out)) == 0);
  // Without either source the run phase reports an input error.
  CHECK(run("env -u ARMAN_TECH " + kBin + " sweep --topology " + q(topo) +
            " --bases 32 --out " + q(out) + " 2> " + q(null)) == 2);
}
