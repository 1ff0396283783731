#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

std::string binary() {
  const char* env = std::getenv("OVERLAP_IFS_BIN");
  return env ? env : "./build/tools/overlap_ifs";
}

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = binary() + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int rc = pclose(p);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

size_t count_substr(const std::string& s, const std::string& needle, size_t from = 0) {
  size_t count = 0;
  for (size_t pos = s.find(needle, from); pos != std::string::npos;
       pos = s.find(needle, pos + 1))
    ++count;
  return count;
}

}  // namespace

TEST_CASE("nodes: golden depth 3 emits 7 rows") {
  auto r = run("nodes --lambda golden --depth 3 --format csv");
  CHECK(r.status == 0);
  // header + 7 rows
  CHECK(count_substr(r.out, "\n") == 8);
  CHECK(r.out.rfind("value,multiplicity", 0) == 0);
}

TEST_CASE("overlap1d: golden json encloses 1/3") {
  auto r = run("overlap1d --lambda golden --depth 16");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"mode\": \"exact\"") != std::string::npos);
  CHECK(r.out.find("\"value\": \"1/3\"") != std::string::npos);
  auto lo_pos = r.out.find("\"lo\":");
  CHECK(lo_pos != std::string::npos);
  double lo = std::stod(r.out.substr(lo_pos + 5));
  CHECK(lo <= 1.0 / 3.0);
}

TEST_CASE("classify: 3/4 is the no-gaps regime") {
  auto r = run("classify --lambda 3/4");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"regime\": \"no-gaps\"") != std::string::npos);
  CHECK(r.out.find("\"agreement\": true") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs for equal config and seed") {
  for (const char* cmd :
       {"nodes --lambda golden --depth 6",
        "sierpinski --lambda golden --depth 2",
        "opcheck --lambda 0.7 --depth 10 --seed 99",
        "charfn --lambda 0.6 --points 32 --format csv"}) {
    auto a = run(cmd);
    auto b = run(cmd);
    CAPTURE(cmd);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("sierpinski svg overlap layer has 9 polygons at golden depth 2") {
  auto r = run("sierpinski --lambda golden --depth 2");
  CHECK(r.status == 0);
  auto group = r.out.find("id=\"overlaps\"");
  REQUIRE(group != std::string::npos);
  CHECK(count_substr(r.out, "<polygon", group) == 9);
}

TEST_CASE("exit codes: usage 1, domain 1, budget 2") {
  CHECK(run("nonsense").status == 1);
  CHECK(run("nodes --lambda abc").status == 1);
  CHECK(run("overlap1d --lambda 0.3 --depth 8").status == 1);
  CHECK(run("nodes --lambda 0.6 --depth 40").status == 2);
}

TEST_CASE("decimal lambda with exact mode downgrades with a warning") {
  auto r = run("nodes --lambda 0.75 --mode exact --depth 2");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"mode\": \"float\"") != std::string::npos);
}

TEST_CASE("config file supplies defaults, flags override") {
  std::string cfg = "/tmp/overlap_ifs_test_config.json";
  FILE* f = std::fopen(cfg.c_str(), "w");
  REQUIRE(f);
  std::fputs("{\"lambda\": \"golden\", \"depth\": 3, \"format\": \"csv\"}\n", f);
  std::fclose(f);
  auto r = run("nodes --config " + cfg);
  CHECK(r.status == 0);
  CHECK(count_substr(r.out, "\n") == 8);  // depth 3 from config
  auto r2 = run("nodes --config " + cfg + " --depth 1");
  CHECK(count_substr(r2.out, "\n") == 3);  // flag overrides config
}

TEST_CASE("pgm output is a valid P5 document") {
  auto r = run("sierpinski --lambda 0.6 --depth 2 --format pgm --resolution 128");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("P5\n128 ", 0) == 0);
}
