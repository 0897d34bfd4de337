#include "cosim/bounds.hpp"

#include <cctype>
#include <string>

#include "cosim/error.hpp"

namespace cosim {

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::Euclidean: return "euclidean";
    case BoundKind::EuclLB: return "eucl-lb";
    case BoundKind::Arccos: return "arccos";
    case BoundKind::Mult: return "mult";
    case BoundKind::MultVariant: return "mult-variant";
    case BoundKind::MultLB1: return "mult-lb1";
    case BoundKind::MultLB2: return "mult-lb2";
  }
  return "unknown";
}

namespace {

std::string squash(std::string_view name) {
  std::string out;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

double checked(double s, const char* which) {
  if (!(s >= -1.0 && s <= 1.0)) {
    throw DomainError(std::string(which) + " = " + std::to_string(s) + " is outside [-1, 1]");
  }
  return s;
}

}  // namespace

std::optional<BoundKind> parse_bound_kind(std::string_view name) {
  const std::string key = squash(name);
  for (BoundKind kind : kAllBoundKinds) {
    if (squash(to_string(kind)) == key) return kind;
  }
  return std::nullopt;
}

double lower_bound(BoundKind kind, Similarity s1, Similarity s2) {
  return formula::lower(kind, s1.value(), s2.value());
}

double lower_bound(BoundKind kind, double s1, double s2) {
  return formula::lower(kind, checked(s1, "s1"), checked(s2, "s2"));
}

double upper_bound(Similarity s1, Similarity s2) { return formula::upper(s1.value(), s2.value()); }

double upper_bound(double s1, double s2) {
  return formula::upper(checked(s1, "s1"), checked(s2, "s2"));
}

SimInterval::SimInterval(Similarity lo, Similarity hi) : lo_(lo), hi_(hi) {
  if (lo > hi) {
    throw DomainError("interval lo " + std::to_string(lo.value()) + " exceeds hi " +
                      std::to_string(hi.value()));
  }
}

Similarity best_case_similarity(Similarity s_qz, const SimInterval& iv) {
  // cos(a_q - a) peaks at a = a_q; otherwise the endpoint nearest in angle wins.
  if (s_qz > iv.hi()) return Similarity(formula::upper(s_qz.value(), iv.hi().value()));
  if (s_qz < iv.lo()) return Similarity(formula::upper(s_qz.value(), iv.lo().value()));
  return Similarity(1.0);
}

Similarity worst_case_similarity(Similarity s_qz, const SimInterval& iv) {
  // cos(a_q + a) bottoms out at a_q + a = pi, i.e. s = -s_qz.
  if (iv.contains(Similarity(-s_qz.value()))) return Similarity(-1.0);
  return Similarity(std::min(formula::mult(s_qz.value(), iv.lo().value()),
                             formula::mult(s_qz.value(), iv.hi().value())));
}

}  // namespace cosim
