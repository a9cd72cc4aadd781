#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(HGC_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r{-1, ""};
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf;
  std::size_t k;
  while ((k = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), k);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string write_tmp(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/hgc_cli_test_" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("cli basis") {
  const Run r = cli("basis --m 1 --n 3 --vertices 2 --loops 1 --hairs 2 --format json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 1);
  const Run t = cli("basis --m 1 --n 3 --vertices 2 --edges 3 --hairs 0");
  CHECK(t.code == 0);
  CHECK(t.out.find("count 1") != std::string::npos);
}

TEST_CASE("cli bracket and certificate") {
  const std::string l = write_tmp("line.txt", "G m=1 n=3 LINE\n");
  const std::string th = write_tmp("theta.txt", "G m=1 n=3 v=2 h=[1] e=[0-1, 0-1, 0-1]\n");
  const Run s = cli("bracket " + l + " " + l);
  REQUIRE(s.code == 0);
  CHECK(nlohmann::json::parse(s.out)["result"]["terms"].empty());
  const Run k = cli("bracket " + l + " " + l + " --model shoikhet --mod-exact " + th);
  REQUIRE(k.code == 0);
  const auto j = nlohmann::json::parse(k.out);
  CHECK(j["certificate"]["feasible"] == true);
  CHECK(j.contains("wall_time_s"));
  // theta-with-hair is not exact, so twice it cannot be certified
  const std::string th2 = write_tmp("theta2.txt", "2 G m=1 n=3 v=2 h=[1] e=[0-1, 0-1, 0-1]\n");
  CHECK(cli("bracket " + l + " " + l + " --model shoikhet --mod-exact " + th2).code == 1);
}

TEST_CASE("cli errors") {
  CHECK(cli("").code == 2);
  CHECK(cli("basis --vertices 2").code == 2);
  CHECK(cli("bracket /nonexistent /nonexistent").code == 2);
  const std::string bad = write_tmp("bad.txt", "G m=1 n=3 v=2 e=[0-7]\n");
  CHECK(cli("bracket " + bad + " " + bad).code == 2);
  CHECK(cli("mc extend --to-loops 9").code == 2);
}

TEST_CASE("cli homology and mc") {
  const Run h = cli("homology --variant gcor --n 2 --loops 2 --degree 1");
  REQUIRE(h.code == 0);
  CHECK(nlohmann::json::parse(h.out)["homology"] == 1);
  const Run m = cli("mc check --loops 2");
  REQUIRE(m.code == 0);
  CHECK(nlohmann::json::parse(m.out)["closed"] == true);
}

TEST_CASE("cli cup") {
  const std::string h2 = write_tmp("h2.txt", "G m=1 n=3 v=2 h=[0,1] e=[0-1, 0-1]\n");
  const std::string mu = write_tmp("mu.txt", "G m=1 n=3 v=1 h=[0] e=[]\n");
  const Run r = cli("cup " + h2 + " " + mu + " --max-order 2");
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["disjoint"].size() == 1);
}
