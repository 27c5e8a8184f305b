#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(BGEOM_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(run("check --property ld2p --space linf:2 --eps 0.5") == 1);
  CHECK(run("check --property ld2p --space linf:16 --eps 0.5 --budget 1") == 0);
  CHECK(run("knocerrado --nmax 20 --levels 30") == 0);
  CHECK(run("check --property ld2p --space missing.txt") == 2);
  CHECK(run("check --property nope --space linf:2") == 2);
  CHECK(run("check --property ld2p --space linf:2 --eps -1") == 2);
  CHECK(run("check --property lddp --space linf:2") == 2);
  CHECK(run("borel --formula D3P --space linf:2") == 2);
  CHECK(run("asymptotics --family l2 --property oh") == 2);
  CHECK(run("") == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("report carries the witness and the level block") {
  const std::string out = "cli_ld2p.tsv";
  CHECK(run("check --property ld2p --space linf:2 --eps 0.5 --out " + out) == 1);
  const auto text = slurp(out);
  CHECK(text.find("# eps=0.5\n") != std::string::npos);
  CHECK(text.find("# delta=2\n") != std::string::npos);
  CHECK(text.find("\tfail\t") != std::string::npos);
  CHECK(text.find("(0.9,0.9)") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("identical commands give identical reports") {
  const std::string args = "crossval --space l1:2 --samples 2000 --out ";
  run(args + "cli_a.tsv");
  run(args + "cli_b.tsv");
  CHECK(slurp("cli_a.tsv") == slurp("cli_b.tsv"));
  CHECK_FALSE(slurp("cli_a.tsv").empty());
  std::remove("cli_a.tsv");
  std::remove("cli_b.tsv");
}

TEST_CASE("space documents as targets") {
  {
    std::ofstream out("cli_space.yaml");
    out << "kind: lp\ndim: 2\np: inf\n";
  }
  CHECK(run("check --property ld2p --space cli_space.yaml --eps 0.5") == 1);
  {
    std::ofstream out("cli_space.yaml");
    out << "kind: lp\ndim: 2\np: [\n";
  }
  CHECK(run("check --property ld2p --space cli_space.yaml --eps 0.5") == 2);
  std::remove("cli_space.yaml");
}

TEST_CASE("asymptotic trends") {
  CHECK(run("asymptotics --family linf --range 2..16 --property ld2p --eps 0.5") == 0);
  CHECK(run("asymptotics --family l1 --range 2..8 --property oh --eps 0.5") == 0);
  CHECK(run("asymptotics --family l1 --range 4 --property oh") == 0);
}

TEST_CASE("borel profile") {
  CHECK(run("borel --formula LD2P_P --space linf:3 --levels 1..2 --depth 200") == 0);
  CHECK(run("borel --formula DLD2P_P --space linf:3 --levels 1 --depth 200") == 1);
}
