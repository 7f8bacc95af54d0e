#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "json.hpp"

#ifndef FRACSUM_CLI
#error "FRACSUM_CLI must name the fracsum executable"
#endif

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(FRACSUM_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(Cli, AttractorSpecExamples) {
  const auto a = run("attractor --family digit-cantor --n 3 --A 0,2 --depth 4");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(line_count(a.out), 16u);
  const auto b = run("attractor --family r2 --J 3 --r 9/40 --depth 2");
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(line_count(b.out), 16u);
  EXPECT_EQ(run("attractor --family r2 --J 3 --r 1/4 --depth 2").code, 2);
  EXPECT_EQ(run("attractor --family homogeneous --a 0.3 --depth 2").code, 2);
}

TEST(Cli, AttractorFormats) {
  const auto j = run("attractor --family middle-thirds --depth 2 --format json");
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(json_of(j).at("intervals").size(), 4u);
  const auto cells = run("attractor --family middle-thirds --depth 2 --format cells --base 3 --cell-depth 2");
  ASSERT_EQ(cells.code, 0);
  EXPECT_EQ(line_count(cells.out), 5u);
}

TEST(Cli, SystemFileFamily) {
  const auto a = run(std::string("attractor --family system --system ") + FRACSUM_EXAMPLES + "/systems/middle_thirds.json --depth 3");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(line_count(a.out), 8u);
}

TEST(Cli, BoxdimSpecExample) {
  const auto r = run("boxdim --family digit-cantor --n 3 --A 0,2 --depths 4:12");
  ASSERT_EQ(r.code, 0);
  const auto j = json_of(r);
  EXPECT_NEAR(j.at("estimate").get<double>(), 0.6309297535714574, 1e-9);
  EXPECT_EQ(j.at("residual").get<double>(), 0.0);
}

TEST(Cli, SumdimSpecExamples) {
  const auto a = run("sumdim --K cantor3 --E cantor4 --depths 4:8");
  ASSERT_EQ(a.code, 0);
  const auto ja = json_of(a);
  EXPECT_EQ(ja.at("verdict"), "PASS");
  EXPECT_NEAR(ja.at("bound").get<double>(), 0.81546, 1e-5);
  const auto b = run("sumdim --K cantor3 --E point --depths 3:6 --bound thm1");
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(json_of(b).at("bound").get<double>(), 0.5);
  const std::string csv_path = ::testing::TempDir() + "fracsum_sumdim.csv";
  const auto csv = run("sumdim --K cantor3 --E point --depths 3:6 --csv " + csv_path);
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(json_of(csv).at("verdict"), "PASS");
  std::ifstream in(csv_path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text.rfind("# fracsum-csv v1\ndepth,N_K,N_E,N_sum,step_slope\n", 0), 0u);
  EXPECT_EQ(line_count(text), 6u);
  EXPECT_EQ(run("sumdim --K cantor3 --E point --bound r2").code, 2);
  EXPECT_EQ(run("sumdim --K cantor3 --E point --tolerance 0.05").code, 2);
}

TEST(Cli, VerifySpecExamples) {
  const auto r4 = run("verify r4 --J 3 --r 9/40");
  EXPECT_EQ(r4.code, 0);
  EXPECT_EQ(json_of(r4).at("verdict"), "pass");
  const auto eq = run("verify eq42 --n 3 --A 0,1 --k 2");
  EXPECT_EQ(eq.code, 1);
  EXPECT_EQ(json_of(eq).at("witness"), nlohmann::json::array({1, 2}));
  EXPECT_EQ(run("verify prop3 --family cantor3 --k 2 --depth 8").code, 0);
  EXPECT_EQ(run("verify prop3 --family cantor4 --k 2 --depth 3").code, 2);
  EXPECT_EQ(run("verify prop3 --family cantor4 --k 2 --depth 3 --report-violations").code, 1);
  EXPECT_EQ(run("verify prop2 --n 3 --A 0,1 --k 1 --depth 4").code, 0);
  EXPECT_EQ(run("verify prop2 --n 3 --A 0,1 --k 2 --depth 2").code, 2);
  EXPECT_EQ(run("verify lemma2a --exhaustive --n 5 --k 2").code, 0);
  EXPECT_EQ(run("verify plunnecke --random 200 --seed 3").code, 0);
  EXPECT_EQ(run("verify r3 --J 3 --r 9/40 --depth 1 --grid-depth 6").code, 0);
}

TEST(Cli, ResourceCapExitCode) {
  EXPECT_EQ(run("attractor --family r2 --J 3 --r 9/40 --depth 6", "FRACSUM_INTERVAL_CAP=100").code, 3);
}

TEST(Cli, BadInputExitCode) {
  EXPECT_EQ(run("attractor --family nosuchfamily --depth 2").code, 2);
  EXPECT_EQ(run("boxdim --family middle-thirds --depths 4").code, 2);
  EXPECT_NE(run("nosuchcommand").code, 0);
}

TEST(Cli, OutputDoesNotDependOnWorkers) {
  const auto a = run("search conj5 --nmax 24 --trials 500 --seed 7");
  const auto b = run("search conj5 --nmax 24 --trials 500 --seed 7 --workers 3");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(run("sumdim --K cantor3 --E cantor4 --depths 3:5").out,
            run("--workers 2 sumdim --K cantor3 --E cantor4 --depths 3:5").out);
}

TEST(Cli, Conj222WritesMeasureRows) {
  const auto r = run("search conj222 --a 1/3 --k 1 --depths 1:3");
  ASSERT_EQ(r.code, 0);
  std::size_t rows = 0;
  std::istringstream in(r.out);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) {
      const auto j = nlohmann::json::parse(line);
      if (j.contains("rows")) rows += j.at("rows").size();
      else if (j.contains("depth")) ++rows;
    }
  EXPECT_EQ(rows, 3u);
}
