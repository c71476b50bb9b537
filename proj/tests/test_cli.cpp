#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using cqm::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path tmp(const std::string& name) {
  const fs::path dir = CQM_TEST_TMPDIR;
  fs::create_directories(dir);
  return dir / name;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

std::vector<std::string> data_lines(const std::string& s) {
  std::vector<std::string> v;
  for (auto& l : lines(s))
    if (!l.empty() && l.front() != '#') v.push_back(l);
  return v;
}

std::vector<double> cells(const std::string& line) {
  std::vector<double> v;
  std::istringstream in(line);
  for (std::string c; std::getline(in, c, ',');) v.push_back(std::stod(c));
  return v;
}

// Header lines "# key = value" with the marker stripped form a config file.
std::string header_as_config(const std::string& csv) {
  std::string cfg;
  for (auto& l : lines(csv))
    if (l.rfind("# ", 0) == 0) cfg += l.substr(2) + "\n";
  return cfg;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(CliSpectrum, FullResonance) {
  const Result r = invoke({"spectrum", "--d1", "1.5625", "--d2", "1.5625"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 6u);
  EXPECT_NE(ls[0].find("FullResonance"), std::string::npos);
  EXPECT_NE(ls[2].find("0.970143"), std::string::npos);
  EXPECT_NE(ls[3].find("-6.250000"), std::string::npos);
  EXPECT_NE(ls[3].find("1.000000"), std::string::npos);
  EXPECT_NE(ls[3].find("PsiMinus"), std::string::npos);
  EXPECT_NE(ls[4].find("PhiMinus"), std::string::npos);
}

TEST(CliSpectrum, CsvAndDegeneracy) {
  const fs::path out = tmp("spectrum.csv");
  const Result r = invoke({"spectrum", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = data_lines(oracle::slurp(out));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0], "state,energy_ueV,concurrence,dominant_bell,bell_weight,degenerate");
  EXPECT_EQ(rows[1].substr(0, 11), "0,-6.250000");
  EXPECT_EQ(rows[1].back(), '1');
}

TEST(CliDynamics, CsvColumnsAndNormalization) {
  const Result r = invoke({"dynamics", "--ratio", "0.4330127", "--tmax", "0.5", "--steps", "501"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = data_lines(r.out);
  ASSERT_EQ(rows.size(), 502u);
  EXPECT_EQ(rows[0], "t_ns,P_LL,P_LR,P_RL,P_RR,concurrence");
  double peak = 0.0, t_peak = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto c = cells(rows[i]);
    ASSERT_EQ(c.size(), 6u);
    ASSERT_NEAR(c[1] + c[2] + c[3] + c[4], 1.0, 4e-6);
    if (c[5] > peak) {
      peak = c[5];
      t_peak = c[0];
    }
  }
  EXPECT_GE(peak, 0.99999);
  EXPECT_NEAR(t_peak, 0.16542, 2e-3);  // several rows print as 1.000000
}

TEST(CliDynamics, BadInputs) {
  EXPECT_EQ(invoke({"dynamics", "--tmax", "0"}).code, 2);
  EXPECT_EQ(invoke({"dynamics", "--steps", "1"}).code, 2);
  EXPECT_EQ(invoke({"dynamics", "--init", "XY"}).code, 2);
  EXPECT_EQ(invoke({"dynamics", "--j", "-1"}).code, 2);
  EXPECT_EQ(invoke({"dynamics", "--bogus", "1"}).code, 2);
  EXPECT_EQ(invoke({"nothing"}).code, 2);
}

TEST(CliDynamics, NegativeValuesParse) {
  const Result r = invoke({"dynamics", "--e1", "-5", "--e2", "-5", "--steps", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# e1 = -5"), std::string::npos);
}

TEST(CliSweep, EigenCsvAndPgm) {
  const fs::path pgm = tmp("eigen.pgm");
  const Result r = invoke({"sweep", "--kind", "eigen", "--ratio", "0.0625", "--state", "1", "--grid", "-25:25:11",
                           "--pgm", pgm.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = data_lines(r.out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0].substr(0, 10), "eps2\\eps1,");
  // eps1 = eps2 = -25 lies on the equal-detuning line.
  const auto first = cells(rows[1]);
  EXPECT_EQ(first[0], -25.0);
  EXPECT_EQ(first[1], 1.0);

  const std::string img = oracle::slurp(pgm);
  ASSERT_EQ(img.substr(0, 13), "P5\n11 11\n255\n");
  EXPECT_EQ(img.size(), 13u + 121u);
}

TEST(CliSweep, ZeroMapGivesBlackImage) {
  const fs::path pgm = tmp("zero.pgm");
  const Result r = invoke({"sweep", "--kind", "tunneling-dynamics", "--grid", "0:0.0001:3", "--tmax", "0.001",
                           "--steps", "4", "--pgm", pgm.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string img = oracle::slurp(pgm);
  const std::string header = "P5\n4 3\n255\n";
  ASSERT_EQ(img.substr(0, header.size()), header);
  const std::string body = img.substr(header.size());
  ASSERT_EQ(body.size(), 12u);
  EXPECT_TRUE(std::all_of(body.begin(), body.end(), [](char c) { return c == 0; }));
}

TEST(CliSweep, ByteIdenticalReruns) {
  const std::vector<std::string> args{"sweep", "--kind", "detuning-dynamics", "--ratio", "0.4330127",
                                      "--grid", "-10:10:9", "--steps", "21", "--sign", "-1"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(CliSweep, BadInputs) {
  EXPECT_EQ(invoke({"sweep", "--kind", "nope"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--grid", "1:0:5"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--grid", "0:1"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--state", "4"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--kind", "tunneling-dynamics", "--e1", "1"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--kind", "detuning-dynamics", "--d1", "1", "--d2", "2"}).code, 2);
  EXPECT_EQ(invoke({"sweep", "--kind", "detuning-dynamics", "--sign", "2"}).code, 2);
}

TEST(CliConfig, PrecedenceFlagsOverConfigOverDefaults) {
  const fs::path cfg = tmp("prec.cfg");
  write_file(cfg, "# comment\nj = 30\nd1 = 2\n\nsteps = 3\n");
  const Result r = invoke({"dynamics", "--config", cfg.string(), "--d1", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# j = 30\n"), std::string::npos);   // from config
  EXPECT_NE(r.out.find("# d1 = 4\n"), std::string::npos);   // flag wins
  EXPECT_NE(r.out.find("# d2 = 0\n"), std::string::npos);   // default
  EXPECT_NE(r.out.find("# steps = 3\n"), std::string::npos);

  write_file(cfg, "command = sweep\n");
  EXPECT_EQ(invoke({"dynamics", "--config", cfg.string()}).code, 2);
  write_file(cfg, "no equals sign\n");
  EXPECT_EQ(invoke({"dynamics", "--config", cfg.string()}).code, 2);
  EXPECT_EQ(invoke({"dynamics", "--config", tmp("missing.cfg").string()}).code, 2);
}

TEST(CliConfig, HeaderReplayIsByteIdentical) {
  const Result first = invoke({"sweep", "--kind", "detuning-dynamics", "--d1", "3.3", "--d2", "3.3", "--e1", "0.1",
                               "--grid", "-7.5:2.25:5", "--steps", "7", "--tmax", "0.3", "--init", "LL"});
  ASSERT_EQ(first.code, 0) << first.err;
  const fs::path cfg = tmp("replay.cfg");
  write_file(cfg, header_as_config(first.out));
  const Result again = invoke({"sweep", "--config", cfg.string()});
  ASSERT_EQ(again.code, 0) << again.err;
  EXPECT_EQ(first.out, again.out);

  const Result dyn = invoke({"dynamics", "--ratio", "0.1", "--tmax", "0.7", "--steps", "9", "--init", "PsiPlus"});
  ASSERT_EQ(dyn.code, 0) << dyn.err;
  write_file(cfg, header_as_config(dyn.out));
  const Result dyn2 = invoke({"dynamics", "--config", cfg.string()});
  ASSERT_EQ(dyn2.code, 0) << dyn2.err;
  EXPECT_EQ(dyn.out, dyn2.out);
}

TEST(CliBellTimes, Outputs) {
  const Result a = invoke({"bell-times", "--n", "1", "--m", "1"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_NE(a.out.find("ratio = 0.433013"), std::string::npos);
  EXPECT_NE(a.out.find("t_e_ns = 0.165427"), std::string::npos);
  EXPECT_NE(a.out.find("concurrence_at_t_e = 1.000000"), std::string::npos);

  const Result b = invoke({"bell-times", "--n", "2", "--m", "1"});
  ASSERT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("ratio = 0.968246"), std::string::npos);

  EXPECT_EQ(invoke({"bell-times", "--n", "1", "--m", "3"}).code, 4);
  EXPECT_EQ(invoke({"bell-times", "--n", "1", "--m", "2"}).code, 2);
  EXPECT_EQ(invoke({"bell-times", "--n", "0"}).code, 2);
}

TEST(CliVerify, Passes) {
  const Result r = invoke({"verify", "--samples", "20"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(CliHelp, PrintsUsage) {
  const Result r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("bell-times"), std::string::npos);
}

TEST(IoFormat, Fixed6) {
  EXPECT_EQ(cqm::io::fixed6(-0.0), "0.000000");
  EXPECT_EQ(cqm::io::fixed6(-1e-9), "0.000000");
  EXPECT_EQ(cqm::io::fixed6(0.1654267), "0.165427");
  EXPECT_EQ(cqm::io::exact(0.1), "0.1");
  EXPECT_EQ(cqm::io::gray_level(1.0), 255);
  EXPECT_EQ(cqm::io::gray_level(-0.5), 0);
}
