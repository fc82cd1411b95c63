#pragma once

// Finite theta-metric spaces: axiom validation against an action, open balls,
// openness and Hausdorff-separation witnesses, uniformity base indices, and
// finite-trace sequence analysis.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "theta/action.hpp"

namespace theta::spaces {

using actions::Action;

class FiniteSpace {
public:
  // Structural validation only (square, finite, nonnegative, unique labels);
  // the metric axioms are the validators' business so that violations can be
  // reported as data.
  FiniteSpace(std::string name, std::vector<std::string> labels,
              const std::vector<std::vector<double>>& dist);

  std::size_t size() const { return labels_.size(); }
  double dist(std::size_t i, std::size_t j) const { return d_[i * size() + j]; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> index_of(std::string_view label) const;
  std::size_t require_index(std::string_view label) const;  // input error if unknown
  const std::string& name() const { return name_; }

private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<double> d_;  // row-major
};

struct MetricViolation {
  std::string axiom;      // "A1", "A2", "A3", "TRI"
  std::int64_t i, j, k;   // k = -1 for pairwise axioms
  double lhs, rhs;
};

struct MetricReport {
  std::string space;
  std::optional<std::string> action;  // absent for plain validation
  std::string kind;                   // "theta" or "plain"
  std::map<std::string, std::string> status;
  std::vector<MetricViolation> violations;  // sorted lexicographically by (i,j,k)

  bool pass() const;
};

// A1/A2 exactly; A3 over all ordered triples (i,j,k) with relative slack kTolCmp.
MetricReport validate_theta_metric(const FiniteSpace& sp, const Action& a);

// Ordinary triangle inequality over all ordered triples, plus A1/A2.
MetricReport validate_plain_metric(const FiniteSpace& sp);

struct Ball {
  std::size_t center = 0;
  double radius = 0;
  std::vector<std::size_t> members;  // ascending indices; always contains center
  bool radius_in_image = true;       // warning flag, not an error
};

Ball open_ball(const FiniteSpace& sp, std::size_t center, double r, const Action& a);

struct OpennessWitness {
  double delta = 0;
  Ball inner;  // B(y, delta), verified subset of outer
  Ball outer;  // B(center, r)
};

// delta = eta(r, d(center,y)); the inclusion B(y,delta) <= B(center,r) is
// verified by enumeration before returning.
OpennessWitness openness_witness(const FiniteSpace& sp, const Action& a,
                                 std::size_t center, double r, std::size_t y);

struct SeparationWitness {
  double alpha = 0;
  double r = 0, s = 0;
  Ball ball_x, ball_y;  // verified disjoint
};

SeparationWitness separation_witness(const FiniteSpace& sp, const Action& a,
                                     std::size_t x, std::size_t y);

// Smallest m > 2n with theta(1/m, 1/m) < 1/n.
long long uniformity_base_index(const Action& a, long long n);

// ---------------------------------------------------------------------------
// Sequence analysis on finite traces

struct CauchyEntry {
  double eps = 0;
  std::optional<std::size_t> tail_start;  // least 1-based N, tails of length >= 2
  double tail_max = 0;                    // max pairwise distance from tail_start (or from 1)
};

struct CauchyReport {
  std::string action;
  std::size_t length = 0;
  std::vector<CauchyEntry> entries;
};

template <typename P, typename DistFn>
CauchyReport is_cauchy_trace(const std::vector<P>& xs, DistFn&& d, const Action& a,
                             const std::vector<double>& eps_schedule) {
  if (xs.size() < 2) raise(Error::Kind::input, "is_cauchy: trace length must be >= 2");
  const std::size_t L = xs.size();
  // suffix_max[n] = max pairwise distance among xs[n..L-1] (0-based n)
  std::vector<double> suffix_max(L, 0.0);
  for (std::size_t n = L - 1; n-- > 0;) {
    double m = suffix_max[n + 1];
    for (std::size_t j = n + 1; j < L; ++j) m = std::max(m, d(xs[n], xs[j]));
    suffix_max[n] = m;
  }
  CauchyReport rep;
  rep.action = a.name();
  rep.length = L;
  for (double eps : eps_schedule) {
    CauchyEntry e;
    e.eps = eps;
    e.tail_max = suffix_max[0];
    for (std::size_t n = 0; n + 1 < L; ++n) {
      if (suffix_max[n] < eps) {
        e.tail_start = n + 1;  // 1-based
        e.tail_max = suffix_max[n];
        break;
      }
    }
    rep.entries.push_back(e);
  }
  return rep;
}

CauchyReport is_cauchy(const FiniteSpace& sp, const std::vector<std::size_t>& trace,
                       const Action& a, const std::vector<double>& eps_schedule);

struct LimitEntry {
  double eps = 0;
  std::optional<std::size_t> conv_start;  // d(x_n, x) < eps for all n >= N
  std::optional<std::size_t> dist_start;  // |d(x_n,y_n) - d(x,y)| < eps for all n >= N
};

struct LimitReport {
  std::string action;
  std::vector<LimitEntry> entries;
  double dxy = 0;
  double tail_x = 0, tail_y = 0;  // d(last iterate of xs, candidate x resp. y)
  // If both candidates were limits, both tails would shrink below the better
  // one; theta_tail = theta(tail, tail) at tail = min(tail_x, tail_y) is the
  // bound d(x, y) would then have to satisfy.
  double theta_tail = 0;
  bool uniqueness_consistent = true;  // dxy <= theta_tail + tol
};

template <typename P, typename DistFn>
LimitReport check_limit_behavior(const std::vector<P>& xs, const std::vector<P>& ys,
                                 const P& x, const P& y, DistFn&& d, const Action& a,
                                 const std::vector<double>& eps_schedule) {
  if (xs.empty() || ys.empty())
    raise(Error::Kind::input, "check_limit_behavior: traces must be nonempty");
  const std::size_t L = xs.size();
  const std::size_t M = std::min(L, ys.size());
  const double dxy = d(x, y);

  std::vector<double> conv(L), dist_err(M);
  for (std::size_t n = 0; n < L; ++n) conv[n] = d(xs[n], x);
  for (std::size_t n = 0; n < M; ++n) dist_err[n] = std::fabs(d(xs[n], ys[n]) - dxy);

  auto least_tail = [](const std::vector<double>& v, double eps) -> std::optional<std::size_t> {
    // least 1-based N with v[n] < eps for all n >= N
    std::optional<std::size_t> res;
    for (std::size_t n = v.size(); n-- > 0;) {
      if (v[n] < eps)
        res = n + 1;
      else
        break;
    }
    return res;
  };

  LimitReport rep;
  rep.action = a.name();
  rep.dxy = dxy;
  for (double eps : eps_schedule)
    rep.entries.push_back({eps, least_tail(conv, eps), least_tail(dist_err, eps)});

  rep.tail_x = conv[L - 1];
  rep.tail_y = d(xs[L - 1], y);
  double tail = std::min(rep.tail_x, rep.tail_y);
  rep.theta_tail = a.eval(tail, tail);
  rep.uniqueness_consistent = leq_tol(dxy, rep.theta_tail);
  return rep;
}

LimitReport check_limit_behavior(const FiniteSpace& sp, const std::vector<std::size_t>& tr_x,
                                 const std::vector<std::size_t>& tr_y, std::size_t x,
                                 std::size_t y, const Action& a,
                                 const std::vector<double>& eps_schedule);

}  // namespace theta::spaces
