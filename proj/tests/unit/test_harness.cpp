// Copyright 2026 The ipmc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ipmc/error.hpp"
#include "ipmc/harness.hpp"

namespace ipmc {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

std::string without_timing(const std::vector<ExperimentRecord>& rows) {
  std::string out;
  for (ExperimentRecord r : rows) {
    r.elapsed_ns = 0;
    out += format_record(r) + "\n";
  }
  return out;
}

RunConfig small_config() {
  RunConfig c;
  c.family = "rqc1d";
  c.n = 7;
  c.depth = 6;
  c.chi = 4;
  c.engine = "both";
  c.seeds = {1, 2, 3};
  return c;
}

TEST(Config, ParsesKeyValueText) {
  std::istringstream in("# comment\nfamily = pqc1d\nn=8\n\nseeds=3..5\nstabilize=false\nengine=sequential\n");
  const RunConfig c = parse_config(in);
  EXPECT_EQ(c.family, "pqc1d");
  EXPECT_EQ(c.n, 8u);
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{3, 4, 5}));
  EXPECT_FALSE(c.stabilize);
  EXPECT_EQ(c.engine, "sequential");
  EXPECT_EQ(c.chi, RunConfig{}.chi);
}

TEST(Config, ErrorsNameTheLine) {
  std::istringstream in("n=5\nchi=abc\n");
  try {
    (void)parse_config(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream unknown("colour=blue\n");
  EXPECT_EQ(code_of([&] { (void)parse_config(unknown); }), ErrorCode::kParse);
  std::istringstream noeq("just words\n");
  EXPECT_EQ(code_of([&] { (void)parse_config(noeq); }), ErrorCode::kParse);
}

TEST(Config, EntriesRoundTrip) {
  RunConfig c = small_config();
  c.output = "x.csv";
  std::string text;
  for (const auto& [k, v] : config_entries(c)) text += k + "=" + v + "\n";
  std::istringstream in(text);
  const RunConfig r = parse_config(in);
  EXPECT_EQ(config_entries(r), config_entries(c));
}

TEST(Config, SeedLists) {
  EXPECT_EQ(parse_seed_list("1..3"), (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(parse_seed_list("7, 2"), (std::vector<std::uint64_t>{7, 2}));
  EXPECT_EQ(code_of([] { (void)parse_seed_list("5..1"); }), ErrorCode::kParse);
  EXPECT_EQ(code_of([] { (void)parse_seed_list("a"); }), ErrorCode::kParse);
}

TEST(Config, FamilyConstraints) {
  RunConfig c = small_config();
  c.n = 8;
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kArgument);
  c = small_config();
  c.family = "rqc2d";
  c.depth = 6;
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kArgument);
  c.family = "pqc2d";
  c.ly = 3;
  c.depth = 8;
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kArgument);
  c.family = "nope";
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kArgument);
  c = small_config();
  c.engine = "fast";
  EXPECT_EQ(code_of([&] { c.validate(); }), ErrorCode::kArgument);
}

TEST(Run, OracleBeyondCapIsAnError) {
  RunConfig c = small_config();
  c.oracle = "on";
  c.statevector_cap = 5;
  EXPECT_EQ(code_of([&] { (void)run_experiment(c); }), ErrorCode::kResource);
  c.oracle = "auto";
  const auto r = run_experiment(c);
  for (const auto& row : r.rows) EXPECT_FALSE(row.fidelity_vs_oracle.has_value());
}

TEST(Run, RowsAreOrderedAndComplete) {
  const RunConfig c = small_config();
  const ExperimentResult r = run_experiment(c);
  EXPECT_EQ(r.rows.size(), 3u * 6u * 2u);
  EXPECT_EQ(r.physical_depth, 6u);
  EXPECT_EQ(r.compiled_depth, 6u);
  for (const std::string engine : {"ptebd", "sequential"}) {
    std::pair<std::uint64_t, std::size_t> prev{0, 0};
    bool first = true;
    for (const auto& row : r.rows) {
      if (row.engine != engine) continue;
      const std::pair<std::uint64_t, std::size_t> key{row.seed, row.compiled_layer};
      if (!first) EXPECT_LT(prev, key);
      prev = key;
      first = false;
      ASSERT_TRUE(row.fidelity_vs_oracle.has_value());
      EXPECT_LE(*row.fidelity_vs_oracle, 1.0 + 1e-12);
      EXPECT_GE(row.fidelity_lb_tight, 0.0);
    }
  }
  EXPECT_EQ(r.summary.audit.violations, 0u);
}

TEST(Run, ReplayIsDeterministic) {
  RunConfig c = small_config();
  c.g = 1;
  const auto a = run_experiment(c), b = run_experiment(c);
  EXPECT_EQ(without_timing(a.rows), without_timing(b.rows));
  c.threads = 3;
  const auto t = run_experiment(c);
  EXPECT_EQ(without_timing(a.rows), without_timing(t.rows));
}

TEST(Run, ParityModePinsOneSeedAndBothEngines) {
  RunConfig c = small_config();
  c.engine = "ptebd";
  c.parity = true;
  const auto r = run_experiment(c);
  std::set<std::string> engines;
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.seed, 1u);
    engines.insert(row.engine);
  }
  EXPECT_EQ(engines.size(), 2u);
}

TEST(Run, ExactRegimeHasUnitFidelity) {
  RunConfig c = small_config();
  c.chi = 8;
  const auto r = run_experiment(c);
  for (const auto& e : r.summary.engines) EXPECT_NEAR(e.final_fidelity_mean, 1.0, 1e-9);
}

TEST(Run, GridAndQftFamilies) {
  RunConfig c;
  c.family = "rqc2d";
  c.lx = 3;
  c.ly = 3;
  c.depth = 4;
  c.chi = 4;
  const auto r = run_experiment(c);
  EXPECT_EQ(r.physical_depth, 4u);
  EXPECT_EQ(r.compiled_depth, 2u + 3u * 2u + 2u);
  RunConfig q;
  q.family = "qft";
  q.n = 6;
  q.chi = 8;
  q.chi0 = 2;
  const auto rq = run_experiment(q);
  EXPECT_NEAR(rq.summary.engines.at(0).final_fidelity_mean, 1.0, 1e-9);
}

TEST(Csv, RoundTripsThroughText) {
  RunConfig c = small_config();
  const auto r = run_experiment(c);
  std::stringstream buf;
  write_csv(buf, c, r.rows);
  const std::string text = buf.str();
  EXPECT_EQ(text.rfind("# family=rqc1d\n", 0), 0u);
  const auto back = read_csv(buf);
  ASSERT_EQ(back.size(), r.rows.size());
  for (std::size_t i = 0; i < back.size(); ++i) EXPECT_EQ(format_record(back[i]), format_record(r.rows[i]));
}

TEST(Csv, MalformedRowsReportTheLine) {
  std::istringstream in(std::string("# a=b\n") + kCsvHeader + "\n1,ptebd,0,0,1,1,0,1,1,0,,5,1\n1,ptebd,x\n");
  try {
    (void)read_csv(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  std::istringstream header("a,b,c\n");
  EXPECT_EQ(code_of([&] { (void)read_csv(header); }), ErrorCode::kParse);
}

TEST(Summary, EmptyAndSingleRow) {
  const Summary empty = summarize({});
  EXPECT_TRUE(empty.engines.empty());
  EXPECT_TRUE(empty.layers.empty());
  EXPECT_FALSE(empty.to_json().empty());

  ExperimentRecord row;
  row.seed = 4;
  row.engine = "ptebd";
  row.compiled_layer = 3;
  row.norm_nstar = 0.97;
  row.eps_global = 0.01;
  row.fidelity_vs_oracle = 0.93;
  row.elapsed_ns = 1234;
  const Summary s = summarize({row});
  ASSERT_EQ(s.engines.size(), 1u);
  EXPECT_EQ(s.engines[0].final_fidelity_mean, 0.93);
  EXPECT_EQ(s.engines[0].final_fidelity_min, 0.93);
  EXPECT_EQ(s.engines[0].final_fidelity_max, 0.93);
  ASSERT_EQ(s.layers.size(), 1u);
  EXPECT_EQ(s.layers[0].norm_nstar_mean, 0.97);
  EXPECT_EQ(s.layers[0].eps_mean, 0.01);
  EXPECT_EQ(s.layers[0].elapsed_ns_mean, 1234.0);
}

TEST(Summary, MeansAreArithmeticMeans) {
  RunConfig c = small_config();
  c.seeds = parse_seed_list("1..10");
  c.engine = "ptebd";
  const auto r = run_experiment(c);
  std::map<std::uint64_t, double> last;
  for (const auto& row : r.rows) last[row.seed] = *row.fidelity_vs_oracle;
  double mean = 0.0;
  for (const auto& [s, f] : last) mean += f / 10.0;
  EXPECT_NEAR(r.summary.engine("ptebd")->final_fidelity_mean, mean, 1e-12);
  for (const auto& la : r.summary.layers) {
    double m = 0.0;
    std::size_t k = 0;
    for (const auto& row : r.rows)
      if (row.compiled_layer == la.compiled_layer) {
        m += *row.fidelity_vs_oracle;
        ++k;
      }
    EXPECT_NEAR(la.fidelity_mean, m / static_cast<double>(k), 1e-12);
  }
}

TEST(Summary, ReportReadsTheWrittenCsv) {
  RunConfig c = small_config();
  const auto path = std::filesystem::temp_directory_path() / "ipmc_harness_test.csv";
  c.output = path.string();
  const auto r = run_experiment(c);
  const Summary s = report_summary(path.string());
  ASSERT_EQ(s.engines.size(), r.summary.engines.size());
  for (std::size_t i = 0; i < s.engines.size(); ++i)
    EXPECT_NEAR(s.engines[i].final_fidelity_mean, r.summary.engines[i].final_fidelity_mean, 1e-15);
  std::filesystem::remove(path);
  EXPECT_EQ(code_of([] { (void)report_summary("/nonexistent/ipmc.csv"); }), ErrorCode::kIo);
}

TEST(Convergence, MeanDistanceDecreases) {
  const ConvergenceCurve c = ptsu_convergence(8, 8, 10, 5, 1);
  ASSERT_EQ(c.mean.size(), 6u);
  EXPECT_GT(c.mean[0], 1e-3);
  for (std::size_t t = 1; t < c.mean.size(); ++t) EXPECT_LE(c.mean[t], c.mean[t - 1] + 1e-12);
  EXPECT_LT(c.mean.back(), 1e-10);
  std::ostringstream out;
  write_convergence_csv(out, {c});
  EXPECT_EQ(out.str().rfind("n,chi,step,", 0), 0u);
}

TEST(Scaling, StructuralChecks) {
  const ScalingResult r = scaling_probe({9, 17}, 6, 4, 1, 1, false);
  EXPECT_TRUE(r.rounds_size_independent);
  EXPECT_TRUE(r.sequential_linear);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(r.rows[0].min_rounds, 3u);
  EXPECT_EQ(r.rows[0].max_rounds, 3u);
  EXPECT_NEAR(r.rows[1].two_site_updates_per_layer, 4.0, 1e-12);
  EXPECT_NEAR(r.rows[3].two_site_updates_per_layer, 8.0, 1e-12);
}

TEST(QftBench, ReportsDepthsAndFidelity) {
  const auto rows = qft_bench({4, 16}, 8, 0, {1, 2}, 2, 10, 1);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_TRUE(rows[0].fidelity_mean.has_value());
  EXPECT_FALSE(rows[2].fidelity_mean.has_value());
  EXPECT_EQ(rows[2].reference_compiled_depth, std::optional<std::size_t>(946));
  EXPECT_FALSE(rows[0].reference_compiled_depth.has_value());
  EXPECT_GT(rows[0].compiled_depth, 0u);
}

}  // namespace
}  // namespace ipmc
