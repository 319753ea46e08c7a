// End-to-end tests of the command line tool: exact exit codes and
// parseable output for a fixed set of inputs.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "groupeq/linclass.hpp"
#include "groupeq/system.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(GROUPEQ_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path dir = fs::temp_directory_path() / "groupeq_cli_tests";
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << content;
  return p;
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto colon = line.find(": ");
    if (colon != std::string::npos)
      kv[line.substr(0, colon)] = line.substr(colon + 2);
  }
  return kv;
}

}  // namespace

TEST_CASE("classify exit codes and report") {
  auto uni = write_temp("uni.system",
                        "var x, y\ncoeff a\nx y^-4 = a\n");
  auto r = run_cli("classify --system " + uni.string() + " --format kv");
  CHECK(r.exit_code == 0);
  auto kv = parse_kv(r.out);
  CHECK(kv["nonsingular"] == "yes");
  CHECK(kv["unimodular"] == "yes");

  auto sq = write_temp("sq.system", "var x\ncoeff a\nx^2 = a\n");
  auto r2 = run_cli("classify --system " + sq.string() + " --format kv");
  CHECK(r2.exit_code == 1);
  auto kv2 = parse_kv(r2.out);
  CHECK(kv2["nonsingular"] == "yes");
  CHECK(kv2["singular_primes"] == "{2}");
  CHECK(kv2["unimodular"] == "no");

  auto empty = write_temp("empty.system", "var x\n");
  CHECK(run_cli("classify --system " + empty.string()).exit_code == 2);

  auto junk = write_temp("junk.system", "var x\nx^^ = 1\n");
  CHECK(run_cli("classify --system " + junk.string()).exit_code == 2);

  CHECK(run_cli("classify --system /no/such/file").exit_code == 2);
  CHECK(run_cli("classify").exit_code == 2);
}

TEST_CASE("classify a generated system at a truncation") {
  auto gen = write_temp("gen.system",
                        "varfamily x i>=1\ncoefffamily a i>=1\n"
                        "rule i: x_i x_{i+1}^-(2^i) = a_i\n");
  auto r = run_cli("classify --system " + gen.string() + " --n 4 --format kv");
  CHECK(r.exit_code == 0);
  auto kv = parse_kv(r.out);
  CHECK(kv["unimodular"] == "yes");
  CHECK(kv["structural_band"] == "yes");
  // a truncation is required
  CHECK(run_cli("classify --system " + gen.string()).exit_code == 2);
}

TEST_CASE("classify from a matrix file") {
  auto m = write_temp("mat.txt", "# witness rows\n1 -4 0\n0 1 -8\n");
  auto r = run_cli("classify --matrix " + m.string() + " --format kv");
  CHECK(r.exit_code == 0);
  CHECK(parse_kv(r.out)["unimodular"] == "yes");
}

TEST_CASE("solve over a cyclic group") {
  auto sys = write_temp("cube.system", "var x\ncoeff a\nx^3 = a\n");
  auto grp = write_temp("z4.group", "gens 1\norders 4\ncoeff a: g1\n");
  auto r = run_cli("solve --system " + sys.string() + " --group " + grp.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("x = g1^3") != std::string::npos);

  auto sq = write_temp("sq2.system", "var x\ncoeff a\nx^2 = a\n");
  auto r2 = run_cli("solve --system " + sq.string() + " --group " + grp.string());
  CHECK(r2.exit_code == 1);
  CHECK(r2.out.find("UNSAT") != std::string::npos);

  auto bad = write_temp("bad.group", "gens 1\norders\n");
  CHECK(run_cli("solve --system " + sys.string() + " --group " + bad.string())
            .exit_code == 2);
}

TEST_CASE("solve over an abelian group file") {
  auto sys = write_temp("ab.system",
                        "varfamily x i>=1\ncoefffamily a i>=1\n"
                        "x_1 x_2^-4 = a_1\nx_2 x_3^-8 = a_2\n");
  auto grp = write_temp("ab.group",
                        "abelian 4 32\ncoeff a_1: 1 0\ncoeff a_2: 0 1\n");
  auto r = run_cli("solve --system " + sys.string() + " --group " + grp.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("x_1 = ") != std::string::npos);
  CHECK(r.out.find("free_generators:") != std::string::npos);
}

TEST_CASE("solve respects the budget with exit 3") {
  auto sys = write_temp("big.system", "var x, y, z\n[x,y] z = z\n");
  auto grp = write_temp("big.group", "gens 1\norders 1024\n");
  auto r = run_cli("solve --system " + sys.string() + " --group " +
                   grp.string() + " --budget 1000");
  CHECK(r.exit_code == 3);
}

TEST_CASE("criterion verdicts") {
  auto everyp = write_temp("everyp.desc", "component every-prime cyclic [1]\n");
  auto r = run_cli("criterion --group " + everyp.string() + " --theorem thm1");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("NOT_CLOSED") != std::string::npos);
  CHECK(r.out.find("infinitely many") != std::string::npos);

  auto unbounded = write_temp("unb.desc",
                              "component p=2 cyclic k_i = 1*i+0 for i>=1\n");
  auto r2 = run_cli("criterion --group " + unbounded.string() + " --theorem thm1");
  CHECK(r2.exit_code == 1);
  CHECK(r2.out.find("unbounded first Ulm factor") != std::string::npos);

  auto good = write_temp("good.desc",
                         "component p=2 pruefer count=omega\n"
                         "component p=2 cyclic [2]\n"
                         "component p=3 pruefer count=1\n");
  auto r3 = run_cli("criterion --group " + good.string() + " --theorem thm1");
  CHECK(r3.exit_code == 0);
  CHECK(r3.out.find("CLOSED") == 0);

  auto r4 = run_cli("criterion --group " + unbounded.string() +
                    " --theorem abelian-M25");
  CHECK(r4.exit_code == 1);

  auto div = write_temp("div.desc", "torsionfree divisible=yes\n");
  CHECK(run_cli("criterion --group " + div.string() +
                " --theorem thm2-torsionfree").exit_code == 0);
  auto ndiv = write_temp("ndiv.desc", "torsionfree divisible=no\n");
  CHECK(run_cli("criterion --group " + ndiv.string() +
                " --theorem thm2-torsionfree").exit_code == 1);

  CHECK(run_cli("criterion --group " + good.string() + " --theorem thm9")
            .exit_code == 2);
}

TEST_CASE("witness subcommand emits files and verifies") {
  fs::path dir = fs::temp_directory_path() / "groupeq_cli_tests";
  fs::create_directories(dir);
  fs::path sysfile = dir / "ulmbad.system";
  fs::path table = dir / "growth.tsv";
  auto r = run_cli("witness --family ulmbad -p 2 -m 1 --n-max 3 --verify "
                   "--out-system " + sysfile.string() +
                   " --out-table " + table.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("all 3 truncations unimodular") != std::string::npos);

  // the emitted system file classifies unimodular through the library
  auto sys = groupeq::parse_system_file(sysfile.string());
  auto data = groupeq::exponent_matrix(sys, 3);
  CHECK(groupeq::classify(data.matrix).unimodular);

  // growth table matches the CLI output
  std::ifstream tin(table);
  std::string header;
  std::getline(tin, header);
  CHECK(header == "n\tk_n\ttelescoped_order\tmin_order\tdoubling_bound\tverdict");

  auto rc = run_cli("witness --family crossprime -m 1 --n-max 3 --verify");
  CHECK(rc.exit_code == 0);
}

TEST_CASE("padic subcommand") {
  auto r = run_cli("padic -p 2 -N 16 --rule constant:1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("digits: 1 1 1 1") != std::string::npos);
  CHECK(r.out.find("rational: -1/1") != std::string::npos);

  auto r2 = run_cli("padic -p 2 -N 64 --rule paper-aperiodic");
  CHECK(r2.exit_code == 1);  // neither periodic nor rational
  CHECK(r2.out.find("no eventual period <= 8") != std::string::npos);
  CHECK(r2.out.find("rational: none") != std::string::npos);

  auto r3 = run_cli("padic -p 3 -N 24 --rule periodic:1,2");
  CHECK(r3.exit_code == 0);
  CHECK(r3.out.find("period 2") != std::string::npos);

  CHECK(run_cli("padic -p 2 -N 16 --rule nonsense").exit_code == 2);
}

TEST_CASE("groupinfo agrees with the library") {
  auto grp = write_temp("d8.group",
                        "gens 3; orders 2 2 2; pow 2: g3; comm 2 1: g3\n");
  auto r = run_cli("groupinfo --group " + grp.string());
  CHECK(r.exit_code == 0);
  auto kv = parse_kv(r.out);
  CHECK(kv["order"] == "8");
  CHECK(kv["nilpotency_class"] == "2");
}
