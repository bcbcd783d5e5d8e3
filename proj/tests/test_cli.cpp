#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string &args) {
  const std::string cmd = std::string(SELMER_LAB_PATH) + " " + args + " 2>/dev/null";
  FILE *pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

} // namespace

TEST_CASE("cli exit codes") {
  CHECK(run("tables quadratic").code == 0);
  CHECK(run("dist A1 4 0 --format csv").code == 0);
  CHECK(run("mass 3 2").code == 0);
  CHECK(run("").code == 2);
  CHECK(run("tables s5-real").code == 2);
  CHECK(run("mc C1 4 0 10").code == 2);
  CHECK(run("mc B1 4 0 0").code == 2);
  CHECK(run("mc B1 8 4 10").code == 2);
  CHECK(run("dist B1 3 0").code == 2);
  CHECK(run("mass 4 6").code == 2);
  CHECK(run("tables moments --format xml").code == 2);
}

TEST_CASE("cli output") {
  auto q = run("tables quadratic --format csv");
  CHECK(q.out.find("A(ii),0.1667,1/6") != std::string::npos);
  CHECK(q.out.find("B(iii),0.8333,5/6") != std::string::npos);
  auto j = run("dist B1 4 0 --json");
  CHECK(j.out.find("\"16/45\"") != std::string::npos);
  auto a = run("mc B1 4 0 5000 --seed 7");
  auto b = run("mc B1 4 0 5000 --seed 7");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run("mc B1 4 0 5000 --seed 8").out != a.out);
  auto v = run("verify masses --json");
  CHECK(v.code == 0);
  CHECK(v.out.find("\"passed\": true") != std::string::npos);
}
