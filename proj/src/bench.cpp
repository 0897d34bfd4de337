#include "cosim/bench.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>

#ifdef __linux__
#include <sched.h>
#endif

#include "cosim/io.hpp"

namespace cosim::bench {

void BenchConfig::validate() const {
  if (array_size < 2) throw std::invalid_argument("array_size must be at least 2");
  if (warmup_iters < 1 || measure_iters < 1) throw std::invalid_argument("iteration counts must be at least 1");
  if (!(iter_duration_target > 0.0)) throw std::invalid_argument("iteration duration must be positive");
}

const SubjectResult& BenchReport::at(std::string_view name) const {
  for (const auto& s : subjects) {
    if (s.name == name) return s;
  }
  throw std::out_of_range("no bench subject " + std::string(name));
}

std::vector<double> generate_inputs(std::size_t size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  std::vector<double> out(size);
  for (double& v : out) v = uniform(rng);
  return out;
}

namespace {

template <typename Fn>
[[gnu::noinline]] double run_pass(std::span<const double> a, Fn fn) {
  const std::size_t n = a.size();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) acc += fn(a[i], a[i + 1]);
  acc += fn(a[n - 1], a[0]);
  return acc;
}

template <typename Fn>
double dispatch(std::optional<BoundKind> kind, Fn&& with_formula) {
  if (!kind) return with_formula([](double x, double y) { return x + y; });
  switch (*kind) {
    case BoundKind::Euclidean: return with_formula([](double x, double y) { return formula::euclidean(x, y); });
    case BoundKind::EuclLB: return with_formula([](double x, double y) { return formula::eucl_lb(x, y); });
    case BoundKind::Arccos: return with_formula([](double x, double y) { return formula::arccos(x, y); });
    case BoundKind::Mult: return with_formula([](double x, double y) { return formula::mult(x, y); });
    case BoundKind::MultVariant: return with_formula([](double x, double y) { return formula::mult_variant(x, y); });
    case BoundKind::MultLB1: return with_formula([](double x, double y) { return formula::mult_lb1(x, y); });
    case BoundKind::MultLB2: return with_formula([](double x, double y) { return formula::mult_lb2(x, y); });
  }
  return 0.0;
}

volatile double g_sink = 0.0;

// Runs whole passes until the target duration elapses; returns ns per pair.
double timed_iteration(std::span<const double> inputs, std::optional<BoundKind> kind, double target_seconds) {
  using clock = std::chrono::steady_clock;
  const auto start = clock::now();
  const auto deadline = start + std::chrono::duration<double>(target_seconds);
  std::size_t passes = 0;
  auto now = start;
  do {
    g_sink = g_sink + dispatch(kind, [&](auto fn) { return run_pass(inputs, fn); });
    ++passes;
    now = clock::now();
  } while (now < deadline);
  const double ns = std::chrono::duration<double, std::nano>(now - start).count();
  return ns / (static_cast<double>(passes) * static_cast<double>(inputs.size()));
}

std::string subject_name(std::optional<BoundKind> kind) {
  return kind ? std::string(to_string(*kind)) : std::string("baseline");
}

}  // namespace

double pass_checksum(std::span<const double> inputs, std::optional<BoundKind> kind) {
  if (inputs.size() < 2) throw std::invalid_argument("need at least 2 inputs");
  return dispatch(kind, [&](auto fn) { return run_pass(inputs, fn); });
}

bool pin_to_single_cpu() {
#ifdef __linux__
  const int cpu = sched_getcpu();
  if (cpu < 0) return false;
  cpu_set_t set;
  CPU_ZERO(&set);
  CPU_SET(cpu, &set);
  return sched_setaffinity(0, sizeof(set), &set) == 0;
#else
  return false;
#endif
}

std::string_view accuracy_annotation(std::optional<BoundKind> kind) {
  if (!kind) return "n/a";
  switch (*kind) {
    case BoundKind::Euclidean: return "o";
    case BoundKind::EuclLB: return "--";
    case BoundKind::Arccos: return "++";
    case BoundKind::Mult: return "++";
    case BoundKind::MultVariant: return "++";
    case BoundKind::MultLB1: return "-";
    case BoundKind::MultLB2: return "--";
  }
  return "?";
}

BenchReport run_bench(const BenchConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  BenchReport report;
  report.config = config;
  report.pinned = pin_to_single_cpu();
  const auto inputs = generate_inputs(config.array_size, config.seed);

  std::vector<std::optional<BoundKind>> subjects{std::nullopt};
  for (BoundKind k : kAllBoundKinds) subjects.emplace_back(k);

  for (const auto& kind : subjects) {
    SubjectResult r;
    r.name = subject_name(kind);
    r.kind = kind;
    r.accuracy = std::string(accuracy_annotation(kind));
    r.checksum = pass_checksum(inputs, kind);
    for (std::size_t i = 0; i < config.warmup_iters; ++i) timed_iteration(inputs, kind, config.iter_duration_target);
    for (std::size_t i = 0; i < config.measure_iters; ++i) {
      r.samples_ns.push_back(timed_iteration(inputs, kind, config.iter_duration_target));
    }
    const double n = static_cast<double>(r.samples_ns.size());
    r.mean_ns = std::accumulate(r.samples_ns.begin(), r.samples_ns.end(), 0.0) / n;
    double sq = 0.0;
    for (double s : r.samples_ns) sq += (s - r.mean_ns) * (s - r.mean_ns);
    r.stddev_ns = r.samples_ns.size() > 1 ? std::sqrt(sq / (n - 1.0)) : 0.0;
    report.subjects.push_back(std::move(r));
  }
  const double baseline = report.subjects.front().mean_ns;
  for (auto& r : report.subjects) r.minus_baseline_ns = r.mean_ns - baseline;

  report.notes.push_back("inputs: " + std::to_string(config.array_size) +
                         " uniform random similarities on [-1, 1], pairs (a[i], a[i+1])");
  report.notes.push_back("absolute times depend on the machine; only relative orderings are meaningful");
  report.notes.push_back("no CPU frequency control attempted");
  report.notes.push_back("no platform fast-math arccos available; fast arccos subject omitted");
  if (!report.pinned) report.notes.push_back("could not pin to a single CPU");
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

void write_bench_table(std::ostream& out, const BenchReport& report) {
  out << std::left << std::setw(14) << "subject" << std::right << std::setw(12) << "mean_ns" << std::setw(12)
      << "stddev_ns" << std::setw(14) << "-baseline_ns" << std::setw(10) << "accuracy" << '\n';
  out << std::fixed << std::setprecision(3);
  for (const auto& s : report.subjects) {
    out << std::left << std::setw(14) << s.name << std::right << std::setw(12) << s.mean_ns << std::setw(12)
        << s.stddev_ns << std::setw(14) << s.minus_baseline_ns << std::setw(10) << s.accuracy << '\n';
  }
  out << std::defaultfloat;
  for (const auto& note : report.notes) out << "# " << note << '\n';
}

void write_bench_csv(std::ostream& out, const BenchReport& report) {
  out << "subject,mean_ns,stddev_ns\n";
  for (const auto& s : report.subjects) {
    out << s.name << ',' << io::format_double(s.mean_ns) << ',' << io::format_double(s.stddev_ns) << '\n';
  }
}

}  // namespace cosim::bench
