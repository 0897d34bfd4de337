#include "cosim/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "cosim/analysis.hpp"
#include "cosim/bench.hpp"
#include "cosim/datagen.hpp"
#include "cosim/error.hpp"
#include "cosim/index/persistence.hpp"
#include "cosim/io.hpp"
#include "cosim/oracle_check.hpp"

namespace cosim::cli {

namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown after a completed run whose result failed verification.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("--out: cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

BoundKind bound_flag(const std::string& flag, const std::string& value) {
  auto kind = parse_bound_kind(value);
  if (!kind) throw UsageError(flag + ": unknown bound '" + value + "'");
  return *kind;
}

io::Format format_flag(const std::string& value) {
  if (value == "dense") return io::Format::Dense;
  if (value == "sparse") return io::Format::Sparse;
  throw UsageError("--format: expected dense or sparse, got '" + value + "'");
}

analysis::GridSpec grid_flags(double lo, double hi, std::size_t steps) {
  analysis::GridSpec spec{lo, hi, steps};
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--lo/--hi/--steps: ") + e.what());
  }
  return spec;
}

json neighbors_json(const std::vector<index::Neighbor>& neighbors) {
  json out = json::array();
  for (const auto& n : neighbors) out.push_back({{"id", n.id}, {"similarity", n.sim.value()}});
  return out;
}

json stats_json(const index::QueryStats& s) {
  return {{"sims_computed", s.sims_computed},
          {"nodes_pruned", s.nodes_pruned},
          {"candidates_filtered", s.candidates_filtered}};
}

struct SurfaceArgs {
  std::string bound;
  std::string minus;
  bool clamp = false;
  double lo = -1.0;
  double hi = 1.0;
  std::size_t steps = 101;
  std::string out;
};

struct GridArgs {
  double lo = -1.0;
  double hi = 1.0;
  std::size_t steps = 2001;
  bool diagonal = false;
  std::string out;
};

struct BenchArgs {
  bench::BenchConfig config;
  bool csv = false;
  std::string out;
};

struct BuildArgs {
  std::string in;
  std::string format = "dense";
  std::string index = "vp";
  std::uint64_t seed = 42;
  std::size_t leaf_capacity = 8;
  std::size_t pivots = 16;
  std::string out;
};

struct QueryArgs {
  std::string index;
  std::string q;
  std::string q_file;
  std::optional<double> tau;
  std::optional<double> tau_deg;
  std::optional<std::size_t> k;
  bool stats = false;
  std::string out;
};

struct OracleArgs {
  std::string in;
  std::string format = "dense";
  std::size_t random = 0;
  std::size_t dim = 10;
  std::size_t nnz = 8;
  OracleCheckConfig config;
};

int cmd_surface(const SurfaceArgs& a, std::ostream& out) {
  const BoundKind kind = bound_flag("--bound", a.bound);
  std::optional<BoundKind> minus;
  if (!a.minus.empty()) minus = bound_flag("--minus", a.minus);
  if (a.clamp && !minus) throw UsageError("--clamp requires --minus");
  const auto spec = grid_flags(a.lo, a.hi, a.steps);

  const auto m = minus ? analysis::difference_surface(kind, *minus, spec,
                                                      a.clamp ? analysis::DifferenceMode::Clamped
                                                              : analysis::DifferenceMode::Raw)
                       : analysis::surface(kind, spec);
  Sink sink(a.out, out);
  analysis::write_surface_csv(sink.get(), m, spec);
  return kSuccess;
}

int cmd_report(const GridArgs& a, std::ostream& out) {
  const auto spec = grid_flags(a.lo, a.hi, a.steps);
  Sink sink(a.out, out);
  analysis::write_report_csv(sink.get(), analysis::average_report(spec));
  return kSuccess;
}

int cmd_stability(const GridArgs& a, std::ostream& out) {
  const auto spec = grid_flags(a.lo, a.hi, a.steps);
  Sink sink(a.out, out);
  analysis::write_report_csv(sink.get(),
                             a.diagonal ? analysis::stability_report_diagonal(spec) : analysis::stability_report(spec));
  return kSuccess;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  try {
    a.config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Sink sink(a.out, out);
  err << "running benchmark (" << a.config.warmup_iters << " warmup + " << a.config.measure_iters
      << " measured iterations per subject)\n";
  const auto report = bench::run_bench(a.config);
  if (a.csv) {
    bench::write_bench_csv(sink.get(), report);
  } else {
    bench::write_bench_table(sink.get(), report);
  }
  return kSuccess;
}

int cmd_build(const BuildArgs& a, std::ostream& err) {
  const auto format = format_flag(a.format);
  if (a.index != "vp" && a.index != "laesa") throw UsageError("--index: expected vp or laesa, got '" + a.index + "'");
  if (a.leaf_capacity < 1) throw UsageError("--leaf-capacity must be at least 1");
  if (a.pivots < 1) throw UsageError("--pivots must be at least 1");

  auto data = io::read_unit_vectors_file(a.in, format);
  if (data.empty()) throw ParseError(a.in, 0, "no vectors");
  if (a.index == "vp") {
    auto tree = index::VpTree::build(std::move(data), {a.leaf_capacity, a.seed, index::kDefaultPruneSlack});
    err << "built vp-tree: " << tree.size() << " vectors, " << tree.nodes().size() << " nodes, height "
        << tree.height() << '\n';
    index::save_index_file(a.out, tree);
  } else {
    if (a.pivots > data.size()) throw BadPivotCountError(a.pivots, data.size());
    auto laesa = index::LaesaIndex::build(std::move(data), a.pivots, a.seed);
    err << "built pivot table: " << laesa.data.size() << " vectors, " << laesa.table.pivots() << " pivots\n";
    index::save_index_file(a.out, laesa);
  }
  return kSuccess;
}

std::vector<UnitVector> load_queries(const QueryArgs& a, bool dense) {
  std::vector<UnitVector> queries;
  if (!a.q.empty()) {
    try {
      queries.push_back(dense ? normalize(io::parse_dense_line(a.q, "--q")) : normalize(io::parse_sparse_line(a.q, "--q")));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError("--q", 1, e.what());
    }
  } else {
    queries = io::read_unit_vectors_file(a.q_file, dense ? io::Format::Dense : io::Format::Sparse);
  }
  return queries;
}

int cmd_query(const QueryArgs& a, std::ostream& out) {
  const int modes = (a.tau ? 1 : 0) + (a.tau_deg ? 1 : 0) + (a.k ? 1 : 0);
  if (modes != 1) throw UsageError("exactly one of --tau, --tau-deg, --k is required");
  if (a.q.empty() == a.q_file.empty()) throw UsageError("exactly one of --q, --q-file is required");
  if (a.tau && !(*a.tau >= -1.0 && *a.tau <= 1.0)) throw UsageError("--tau must lie in [-1, 1]");
  if (a.k && *a.k < 1) throw UsageError("--k must be at least 1");

  const auto stored = index::load_index_file(a.index);
  const bool is_vp = std::holds_alternative<index::VpTree>(stored);
  const index::Dataset& data =
      is_vp ? std::get<index::VpTree>(stored).data() : std::get<index::LaesaIndex>(stored).data;
  if (a.k && *a.k > data.size()) throw UsageError("--k exceeds the index size " + std::to_string(data.size()));
  const auto queries = load_queries(a, data.front().is_dense());

  std::optional<Similarity> tau;
  if (a.tau) tau = Similarity(*a.tau);
  if (a.tau_deg) tau = Similarity(std::cos(*a.tau_deg * std::numbers::pi / 180.0));

  json results = json::array();
  for (const auto& q : queries) {
    if (q.is_dense() && q.dense().size() != data.front().dense().size()) {
      throw ParseError(a.q.empty() ? a.q_file : "--q", 1,
                       "query has " + std::to_string(q.dense().size()) + " components, index has " +
                           std::to_string(data.front().dense().size()));
    }
    const auto result = std::visit(
        [&](const auto& idx) { return tau ? idx.range_query(q, *tau) : idx.knn_query(q, *a.k); }, stored);
    json entry = {{"results", neighbors_json(result.neighbors)}};
    if (a.stats) entry["stats"] = stats_json(result.stats);
    results.push_back(std::move(entry));
  }

  json doc = {{"index", is_vp ? "vp" : "laesa"}, {"queries", std::move(results)}};
  if (tau) {
    doc["mode"] = "range";
    doc["tau"] = tau->value();
  } else {
    doc["mode"] = "knn";
    doc["k"] = *a.k;
  }
  Sink sink(a.out, out);
  sink.get() << doc.dump(2) << '\n';
  return kSuccess;
}

int cmd_oracle_check(const OracleArgs& a, std::ostream& out) {
  if (a.in.empty() == (a.random == 0)) throw UsageError("exactly one of --in, --random is required");
  if (a.config.queries < 1) throw UsageError("--queries must be at least 1");
  if (!(a.config.match_fraction > 0.0 && a.config.match_fraction <= 1.0)) {
    throw UsageError("--match-fraction must lie in (0, 1]");
  }
  index::Dataset data;
  if (!a.in.empty()) {
    data = io::read_unit_vectors_file(a.in, format_flag(a.format));
    if (data.empty()) throw ParseError(a.in, 0, "no vectors");
  } else if (a.format == "sparse") {
    if (a.nnz < 1 || a.nnz > a.dim) throw UsageError("--nnz must lie in [1, --dim]");
    data = datagen::random_sparse_unit(a.random, a.dim, a.nnz, a.config.seed);
  } else {
    if (a.dim < 1) throw UsageError("--dim must be at least 1");
    data = datagen::random_dense_unit(a.random, a.dim, a.config.seed);
  }

  const auto report = oracle_check(data, a.config);
  json doc = {{"dataset_size", report.dataset_size},
              {"queries", report.queries},
              {"comparisons", report.comparisons},
              {"mismatches", report.mismatches},
              {"failures", report.failures},
              {"vp_range_mean_sims", report.vp_range_mean_sims},
              {"laesa_range_mean_sims", report.laesa_range_mean_sims},
              {"vp_knn_mean_sims", report.vp_knn_mean_sims},
              {"laesa_knn_mean_sims", report.laesa_knn_mean_sims},
              {"passed", report.passed()}};
  out << doc.dump(2) << '\n';
  if (!report.passed()) throw VerificationFailure(std::to_string(report.mismatches) + " mismatches against linear scan");
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cosine-similarity triangle bounds: analysis, benchmarks, and exact search indexes", "cosim"};
  app.require_subcommand(1);

  SurfaceArgs surface_args;
  auto* surface = app.add_subcommand("surface", "Emit a bound surface (or difference surface) as CSV");
  surface->add_option("--bound", surface_args.bound, "Bound kind, e.g. mult, arccos, euclidean")->required();
  surface->add_option("--minus", surface_args.minus, "Subtract this bound kind");
  surface->add_flag("--clamp", surface_args.clamp, "Floor both bounds at -1 before subtracting");
  surface->add_option("--lo", surface_args.lo, "Grid lower end")->capture_default_str();
  surface->add_option("--hi", surface_args.hi, "Grid upper end")->capture_default_str();
  surface->add_option("--steps", surface_args.steps, "Grid points per axis")->capture_default_str();
  surface->add_option("--out", surface_args.out, "Output file (default stdout)");

  GridArgs report_args;
  auto* report = app.add_subcommand("report", "Average Euclidean vs Arccos bound over a grid");
  report->add_option("--lo", report_args.lo)->capture_default_str();
  report->add_option("--hi", report_args.hi)->capture_default_str();
  report->add_option("--steps", report_args.steps)->capture_default_str();
  report->add_option("--out", report_args.out);

  GridArgs stability_args;
  auto* stability = app.add_subcommand("stability", "Max |Mult - Arccos| and |MultVariant - Mult| over a grid");
  stability->add_option("--lo", stability_args.lo)->capture_default_str();
  stability->add_option("--hi", stability_args.hi)->capture_default_str();
  stability->add_option("--steps", stability_args.steps)->capture_default_str();
  stability->add_flag("--diagonal", stability_args.diagonal, "Only scan s1 = s2");
  stability->add_option("--out", stability_args.out);

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Time every bound formula against an add baseline");
  bench_cmd->add_option("--size", bench_args.config.array_size, "Input array length")->capture_default_str();
  bench_cmd->add_option("--warmup", bench_args.config.warmup_iters)->capture_default_str();
  bench_cmd->add_option("--iters", bench_args.config.measure_iters)->capture_default_str();
  bench_cmd->add_option("--duration", bench_args.config.iter_duration_target, "Seconds per iteration")
      ->capture_default_str();
  bench_cmd->add_option("--seed", bench_args.config.seed)->capture_default_str();
  bench_cmd->add_flag("--csv", bench_args.csv, "Emit subject,mean_ns,stddev_ns CSV");
  bench_cmd->add_option("--out", bench_args.out);

  BuildArgs build_args;
  auto* build = app.add_subcommand("build", "Build and save a VP-tree or pivot-table index");
  build->add_option("--in", build_args.in, "Vector file")->required();
  build->add_option("--format", build_args.format, "dense or sparse")->capture_default_str();
  build->add_option("--index", build_args.index, "vp or laesa")->capture_default_str();
  build->add_option("--seed", build_args.seed)->capture_default_str();
  build->add_option("--leaf-capacity", build_args.leaf_capacity)->capture_default_str();
  build->add_option("--pivots", build_args.pivots)->capture_default_str();
  build->add_option("--out", build_args.out, "Index file")->required();

  QueryArgs query_args;
  auto* query = app.add_subcommand("query", "Range or kNN query against a saved index (JSON output)");
  query->add_option("--index", query_args.index, "Index file")->required();
  query->add_option("--q", query_args.q, "Inline query: 'v1,v2,...' or 'i:v i:v ...'");
  query->add_option("--q-file", query_args.q_file, "File of query vectors");
  query->add_option("--tau", query_args.tau, "Similarity threshold");
  query->add_option("--tau-deg", query_args.tau_deg, "Angular threshold in degrees");
  query->add_option("--k", query_args.k, "Number of neighbors");
  query->add_flag("--stats", query_args.stats, "Include query statistics");
  query->add_option("--out", query_args.out);

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle-check", "Compare both indexes against linear scan");
  oracle->add_option("--in", oracle_args.in, "Vector file");
  oracle->add_option("--format", oracle_args.format, "dense or sparse")->capture_default_str();
  oracle->add_option("--random", oracle_args.random, "Generate this many random unit vectors instead of --in");
  oracle->add_option("--dim", oracle_args.dim, "Dimension for --random")->capture_default_str();
  oracle->add_option("--nnz", oracle_args.nnz, "Non-zeros per vector for --random sparse")->capture_default_str();
  oracle->add_option("--queries", oracle_args.config.queries)->capture_default_str();
  oracle->add_option("--seed", oracle_args.config.seed)->capture_default_str();
  oracle->add_option("--k", oracle_args.config.k)->capture_default_str();
  oracle->add_option("--leaf-capacity", oracle_args.config.leaf_capacity)->capture_default_str();
  oracle->add_option("--pivots", oracle_args.config.pivots)->capture_default_str();
  oracle->add_option("--match-fraction", oracle_args.config.match_fraction)->capture_default_str();

  std::vector<std::string> owned{"cosim"};
  owned.insert(owned.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : owned) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (*surface) return cmd_surface(surface_args, out);
    if (*report) return cmd_report(report_args, out);
    if (*stability) return cmd_stability(stability_args, out);
    if (*bench_cmd) return cmd_bench(bench_args, out, err);
    if (*build) return cmd_build(build_args, err);
    if (*query) return cmd_query(query_args, out);
    if (*oracle) return cmd_oracle_check(oracle_args, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const Error& e) {
    err << "data error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}

}  // namespace cosim::cli
