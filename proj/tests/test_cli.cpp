#include <array>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include <doctest.h>

#include "dvdp/catalog.hpp"
#include "oracles.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + DVDP_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json schema() {
  std::ifstream in(DVDP_SCHEMA_PATH);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("verify --all --json covers every row, validates, exits 0") {
  auto r = run("verify --all --json");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.size() == dvdp::table1_rows().size());
  auto errs = oracle::schema_errors(schema(), j);
  CHECK_MESSAGE(errs.empty(), (errs.empty() ? "" : errs.front()));
}

TEST_CASE("output is byte-for-byte deterministic") {
  for (auto args : {"verify --char 2 --dynkin 7A1 --json", "table1", "hesse", "moduli --type 8A1 --ext 3"}) {
    CAPTURE(args);
    auto a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("every verb's JSON output validates against the schema") {
  for (auto args : {"kv --type 8A1 --json", "kv --type 4A1+D4 --json", "hesse --json", "hamming --json",
                    "matrix --figure 7A1 --json", "nb --control --json", "fibers --type 3 --json",
                    "moduli --type 2D4 --ext 2 --json", "table6 --json", "verify --char 2 --dynkin 8A1 --json --timestamps"}) {
    CAPTURE(args);
    auto r = run(args);
    CHECK(r.code == 0);
    auto errs = oracle::schema_errors(schema(), nlohmann::json::parse(r.out));
    CHECK(errs.empty());
  }
}

TEST_CASE("kv --type 8A1 reports L^2 = -3 and dim H^1 = 1") {
  auto r = run("kv --type 8A1 --json");
  CHECK(r.code == 0);
  auto c = nlohmann::json::parse(r.out)[0]["checks"][0]["computed"];
  CHECK(c["L2"] == -3);
  CHECK(c["h1"] == 1);
}

TEST_CASE("hesse reports alpha = -w with equivalent quadruples") {
  auto r = run("hesse");
  CHECK(r.code == 0);
  CHECK(r.out.find("alpha = -w: equivalent quadruples") != std::string::npos);
}

TEST_CASE("matrix comparisons for all four fixtures") {
  for (auto fig : {"5", "6", "7", "8", "type-g", "deg4"}) {
    CAPTURE(fig);
    CHECK(run(std::string("matrix --figure ") + fig).code == 0);
  }
}

TEST_CASE("parameters are parsed as polynomials in s") {
  auto r = run("verify --char 2 --dynkin 2D4 --param 1:s+1 --json");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)[0]["recipe"] == "2D4 t=[1:s+1]");
  CHECK(run("verify --char 2 --dynkin 8A1 --param 1:s:s^2 --ext 4").code == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("verify --char 7 --dynkin E8").code == 2);
  CHECK(run("verify --char 2 --dynkin E6").code == 2);
  CHECK(run("verify").code == 2);
  CHECK(run("verify --all --char 2").code == 2);
  CHECK(run("verify --char 2 --dynkin 8A1 --param 1:1:0").code == 2);
  CHECK(run("verify --char 2 --dynkin 7A1 --param 1:s").code == 2);
  CHECK(run("moduli --type 8A1").code == 2);
  CHECK(run("moduli --type E7 --ext 2").code == 2);
  CHECK(run("kv --type E7").code == 2);
  CHECK(run("matrix --figure 9").code == 2);
  CHECK(run("fibers --type z").code == 2);
}

TEST_CASE("a broken fixtures directory makes checks fail with exit 1") {
  CHECK(run("verify --char 2 --dynkin 7A1", "DVDP_FIXTURES=/nonexistent").code == 1);
}
