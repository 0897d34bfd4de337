#include <gtest/gtest.h>

#include <sstream>

#include "cosim/bench.hpp"

using namespace cosim;
using namespace cosim::bench;

namespace {

BenchConfig tiny() {
  BenchConfig c;
  c.array_size = 4096;
  c.warmup_iters = 1;
  c.measure_iters = 3;
  c.iter_duration_target = 0.002;
  c.seed = 9;
  return c;
}

}  // namespace

TEST(BenchConfig, Validates) {
  EXPECT_NO_THROW(BenchConfig{}.validate());
  auto c = tiny();
  c.measure_iters = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = tiny();
  c.array_size = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = tiny();
  c.iter_duration_target = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Bench, InputsAreSeededAndInRange) {
  const auto a = generate_inputs(10000, 3);
  EXPECT_EQ(a, generate_inputs(10000, 3));
  EXPECT_NE(a, generate_inputs(10000, 4));
  for (double v : a) {
    EXPECT_GE(v, -1.0);
    EXPECT_LE(v, 1.0);
  }
}

TEST(Bench, ChecksumMatchesDirectSum) {
  const auto a = generate_inputs(101, 5);
  double expected = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) expected += formula::mult(a[i], a[(i + 1) % a.size()]);
  EXPECT_EQ(pass_checksum(a, BoundKind::Mult), expected);
  double add = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) add += a[i] + a[(i + 1) % a.size()];
  EXPECT_EQ(pass_checksum(a, std::nullopt), add);
}

TEST(Bench, ReportCoversAllSubjects) {
  const auto report = run_bench(tiny());
  ASSERT_EQ(report.subjects.size(), kAllBoundKinds.size() + 1);
  EXPECT_FALSE(report.subjects.front().kind.has_value());
  const auto inputs = generate_inputs(4096, 9);
  for (const auto& s : report.subjects) {
    EXPECT_GT(s.mean_ns, 0.0) << s.name;
    EXPECT_GE(s.stddev_ns, 0.0) << s.name;
    EXPECT_EQ(s.samples_ns.size(), 3u);
    EXPECT_EQ(s.checksum, pass_checksum(inputs, s.kind)) << s.name;
    EXPECT_EQ(s.accuracy, accuracy_annotation(s.kind));
  }
  EXPECT_EQ(report.at("mult").kind, BoundKind::Mult);
  EXPECT_THROW(report.at("nope"), std::out_of_range);
  EXPECT_FALSE(report.notes.empty());
}

TEST(Bench, ChecksumsStableAcrossRuns) {
  const auto a = run_bench(tiny());
  const auto b = run_bench(tiny());
  for (std::size_t i = 0; i < a.subjects.size(); ++i) EXPECT_EQ(a.subjects[i].checksum, b.subjects[i].checksum);
}

TEST(Bench, AccuracyAnnotations) {
  EXPECT_EQ(accuracy_annotation(BoundKind::Mult), "++");
  EXPECT_EQ(accuracy_annotation(BoundKind::Arccos), "++");
  EXPECT_EQ(accuracy_annotation(BoundKind::MultLB1), "-");
  EXPECT_EQ(accuracy_annotation(BoundKind::MultLB2), "--");
  EXPECT_EQ(accuracy_annotation(BoundKind::EuclLB), "--");
  EXPECT_EQ(accuracy_annotation(BoundKind::Euclidean), "o");
}

TEST(Bench, CsvAndTable) {
  const auto report = run_bench(tiny());
  std::stringstream csv;
  write_bench_csv(csv, report);
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "subject,mean_ns,stddev_ns");
  std::size_t rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, report.subjects.size());
  std::stringstream table;
  write_bench_table(table, report);
  EXPECT_NE(table.str().find("mult-lb2"), std::string::npos);
}
