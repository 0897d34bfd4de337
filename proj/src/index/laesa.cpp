#include "cosim/index/laesa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cosim/bounds.hpp"
#include "cosim/error.hpp"

namespace cosim::index {

PivotTable::PivotTable(std::vector<Id> pivot_ids, std::size_t objects, std::vector<double> table)
    : pivot_ids_(std::move(pivot_ids)), objects_(objects), table_(std::move(table)), pivot_rank_(objects, -1) {
  if (table_.size() != objects_ * pivot_ids_.size()) throw FormatError("pivot table has the wrong shape");
  for (std::size_t j = 0; j < pivot_ids_.size(); ++j) {
    const Id p = pivot_ids_[j];
    if (p >= objects_) throw FormatError("pivot id out of range");
    if (pivot_rank_[p] >= 0) throw FormatError("duplicate pivot id");
    pivot_rank_[p] = static_cast<int>(j);
  }
  for (double v : table_) {
    if (!(v >= -1.0 && v <= 1.0)) throw FormatError("pivot table entry outside [-1, 1]");
  }
}

PivotTable laesa_build(std::span<const UnitVector> data, std::size_t m, std::uint64_t seed) {
  const std::size_t n = data.size();
  if (n == 0) throw EmptyDatasetError();
  if (m < 1 || m > n) throw BadPivotCountError(m, n);

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  std::vector<Id> pivots{static_cast<Id>(pick(rng))};
  std::vector<bool> chosen(n, false);
  chosen[pivots.front()] = true;
  // closest[i]: highest similarity of object i to any chosen pivot.
  std::vector<double> closest(n, -std::numeric_limits<double>::infinity());
  std::vector<double> table(n * m);

  for (std::size_t j = 0;; ++j) {
    const Id p = pivots[j];
    for (std::size_t i = 0; i < n; ++i) {
      const double s = cosine_similarity(data[i], data[p]).value();
      table[i * m + j] = s;
      closest[i] = std::max(closest[i], s);
    }
    if (j + 1 == m) break;

    Id next = 0;
    double lowest = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!chosen[i] && closest[i] < lowest) {
        lowest = closest[i];
        next = static_cast<Id>(i);
      }
    }
    chosen[next] = true;
    pivots.push_back(next);
  }
  return PivotTable(std::move(pivots), n, std::move(table));
}

LaesaIndex LaesaIndex::build(Dataset data, std::size_t m, std::uint64_t seed, double prune_slack) {
  for (const auto& v : data) {
    if (v.is_dense() != data.front().is_dense()) throw RepresentationMismatchError();
  }
  PivotTable table = laesa_build(data, m, seed);
  return LaesaIndex{std::move(data), std::move(table), seed, prune_slack};
}

namespace {

std::vector<Similarity> query_pivot_sims(const PivotTable& table, std::span<const UnitVector> data,
                                         const UnitVector& q) {
  if (table.objects() != data.size()) throw FormatError("pivot table does not match the dataset");
  std::vector<Similarity> out;
  out.reserve(table.pivots());
  for (Id p : table.pivot_ids()) out.push_back(cosine_similarity(q, data[p]));
  return out;
}

// Tightest cap on sim(q, object) over all pivots. Stops early once the cap
// is already below `floor`.
double similarity_cap(std::span<const double> row, std::span<const Similarity> qp, double floor) {
  double cap = 1.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    cap = std::min(cap, formula::upper(qp[j].value(), row[j]));
    if (cap < floor) break;
  }
  return cap;
}

}  // namespace

QueryResult laesa_range_query(const PivotTable& table, std::span<const UnitVector> data, const UnitVector& q,
                              Similarity tau, double prune_slack, QueryTrace* trace) {
  QueryResult result;
  auto& stats = result.stats;
  const auto qp = query_pivot_sims(table, data, q);
  stats.sims_computed += qp.size();
  for (std::size_t j = 0; j < qp.size(); ++j) {
    if (qp[j] >= tau) result.neighbors.push_back({table.pivot_ids()[j], qp[j]});
  }

  const double threshold = tau.value() - prune_slack;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto id = static_cast<Id>(i);
    if (table.is_pivot(id)) continue;
    if (similarity_cap(table.row(i), qp, threshold) < threshold) {
      ++stats.candidates_filtered;
      if (trace) trace->pruned.push_back(id);
      continue;
    }
    if (trace) trace->visited.push_back(id);
    const Similarity s = cosine_similarity(q, data[i]);
    ++stats.sims_computed;
    if (s >= tau) result.neighbors.push_back({id, s});
  }
  sort_results(result.neighbors);
  return result;
}

QueryResult laesa_knn_query(const PivotTable& table, std::span<const UnitVector> data, const UnitVector& q,
                            std::size_t k, double prune_slack, QueryTrace* trace) {
  if (k < 1 || k > data.size()) throw BadKError(k, data.size());
  QueryResult result;
  auto& stats = result.stats;
  const auto qp = query_pivot_sims(table, data, q);
  stats.sims_computed += qp.size();

  TopK top(k);
  for (std::size_t j = 0; j < qp.size(); ++j) top.offer({table.pivot_ids()[j], qp[j]});

  struct Candidate {
    double cap;
    Id id;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(data.size() - qp.size());
  const double no_floor = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto id = static_cast<Id>(i);
    if (!table.is_pivot(id)) candidates.push_back({similarity_cap(table.row(i), qp, no_floor), id});
  }
  std::ranges::sort(candidates, [](const Candidate& a, const Candidate& b) {
    if (a.cap != b.cap) return a.cap > b.cap;
    return a.id < b.id;
  });

  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (top.full() && candidates[c].cap < top.kth_similarity() - prune_slack) {
      stats.candidates_filtered += candidates.size() - c;
      if (trace) {
        for (std::size_t r = c; r < candidates.size(); ++r) trace->pruned.push_back(candidates[r].id);
      }
      break;
    }
    const Id id = candidates[c].id;
    if (trace) trace->visited.push_back(id);
    top.offer({id, cosine_similarity(q, data[id])});
    ++stats.sims_computed;
  }
  result.neighbors = std::move(top).take();
  return result;
}

std::optional<std::string> audit(const PivotTable& table, std::span<const UnitVector> data) {
  if (table.objects() != data.size()) return "table covers " + std::to_string(table.objects()) + " objects, dataset has " + std::to_string(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < table.pivots(); ++j) {
      const double expected = cosine_similarity(data[i], data[table.pivot_ids()[j]]).value();
      if (std::abs(table.at(i, j).value() - expected) > 1e-12) {
        return "entry (" + std::to_string(i) + ", " + std::to_string(j) + ") differs from recomputation";
      }
    }
  }
  return std::nullopt;
}

}  // namespace cosim::index
