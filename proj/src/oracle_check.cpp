#include "cosim/oracle_check.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "cosim/error.hpp"
#include "cosim/index/laesa.hpp"
#include "cosim/index/linear_scan.hpp"
#include "cosim/index/vptree.hpp"

namespace cosim {

using index::Neighbor;

Similarity quantile_threshold(std::span<const UnitVector> data, const UnitVector& q, double fraction) {
  if (data.empty()) throw EmptyDatasetError();
  const auto wanted = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(data.size())));
  const std::size_t k = std::clamp<std::size_t>(wanted, 1, data.size());
  return index::linear_scan_knn(data, q, k).back().sim;
}

namespace {

UnitVector make_query(const index::Dataset& data, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  if (data.front().is_dense()) {
    std::vector<double> v(data.front().dense().size());
    do {
      for (double& x : v) x = gauss(rng);
    } while (std::ranges::all_of(v, [](double x) { return x == 0.0; }));
    return normalize(DenseVector(std::move(v)));
  }
  std::uniform_int_distribution<std::size_t> pick(0, data.size() - 1);
  const auto& base = data[pick(rng)].sparse();
  std::vector<double> values(base.nnz());
  for (double& x : values) {
    do {
      x = gauss(rng);
    } while (x == 0.0);
  }
  return normalize(SparseVector(std::vector<SparseVector::Index>(base.indices().begin(), base.indices().end()),
                                std::move(values)));
}

class Comparer {
 public:
  explicit Comparer(OracleCheckReport& report) : report_(report) {}

  void expect(const std::vector<Neighbor>& got, const std::vector<Neighbor>& want, const std::string& what) {
    ++report_.comparisons;
    if (got == want) return;
    fail(what + ": " + std::to_string(got.size()) + " results vs " + std::to_string(want.size()) + " expected");
  }

  void expect(bool ok, const std::string& what) {
    ++report_.comparisons;
    if (!ok) fail(what);
  }

 private:
  void fail(std::string message) {
    ++report_.mismatches;
    if (report_.failures.size() < 20) report_.failures.push_back(std::move(message));
  }

  OracleCheckReport& report_;
};

}  // namespace

OracleCheckReport oracle_check(const index::Dataset& data, const OracleCheckConfig& config) {
  if (data.empty()) throw EmptyDatasetError();
  OracleCheckReport report;
  report.dataset_size = data.size();
  report.queries = config.queries;
  Comparer check(report);

  const auto vp = index::VpTree::build(data, {config.leaf_capacity, config.seed, index::kDefaultPruneSlack});
  const auto laesa = index::LaesaIndex::build(data, std::min(config.pivots, data.size()), config.seed);
  if (auto problem = vp.audit()) check.expect(false, "vp audit: " + *problem);
  if (auto problem = index::audit(laesa.table, laesa.data)) check.expect(false, "laesa audit: " + *problem);

  const std::size_t n = data.size();
  std::mt19937_64 rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
  const std::vector<std::size_t> ks{1, std::clamp<std::size_t>(config.k, 1, n), n};

  for (std::size_t qi = 0; qi < config.queries; ++qi) {
    const UnitVector q = make_query(data, rng);
    const std::string tag = "query " + std::to_string(qi);

    const Similarity main_tau = quantile_threshold(data, q, config.match_fraction);
    const std::vector<Similarity> taus{main_tau, quantile_threshold(data, q, 0.1), Similarity(-1.0)};
    for (std::size_t t = 0; t < taus.size(); ++t) {
      const auto want = index::linear_scan_range(data, q, taus[t]);
      const auto from_vp = vp.range_query(q, taus[t]);
      const auto from_laesa = laesa.range_query(q, taus[t]);
      check.expect(from_vp.neighbors, want, tag + " vp range tau=" + std::to_string(taus[t].value()));
      check.expect(from_laesa.neighbors, want, tag + " laesa range tau=" + std::to_string(taus[t].value()));
      check.expect(from_vp.stats.sims_computed + from_vp.stats.candidates_filtered == n, tag + " vp range accounting");
      check.expect(from_laesa.stats.sims_computed + from_laesa.stats.candidates_filtered == n,
                   tag + " laesa range accounting");
      if (t == 0) {
        report.vp_range_mean_sims += static_cast<double>(from_vp.stats.sims_computed);
        report.laesa_range_mean_sims += static_cast<double>(from_laesa.stats.sims_computed);
      }
    }
    for (std::size_t k : ks) {
      const auto want = index::linear_scan_knn(data, q, k);
      const auto from_vp = vp.knn_query(q, k);
      const auto from_laesa = laesa.knn_query(q, k);
      check.expect(from_vp.neighbors, want, tag + " vp knn k=" + std::to_string(k));
      check.expect(from_laesa.neighbors, want, tag + " laesa knn k=" + std::to_string(k));
      if (k == ks[1]) {
        report.vp_knn_mean_sims += static_cast<double>(from_vp.stats.sims_computed);
        report.laesa_knn_mean_sims += static_cast<double>(from_laesa.stats.sims_computed);
      }
    }
  }
  if (config.queries > 0) {
    const double qn = static_cast<double>(config.queries);
    report.vp_range_mean_sims /= qn;
    report.laesa_range_mean_sims /= qn;
    report.vp_knn_mean_sims /= qn;
    report.laesa_knn_mean_sims /= qn;
  }
  return report;
}

}  // namespace cosim
