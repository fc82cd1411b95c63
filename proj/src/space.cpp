#include "theta/space.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace theta::spaces {

FiniteSpace::FiniteSpace(std::string name, std::vector<std::string> labels,
                         const std::vector<std::vector<double>>& dist)
    : name_(std::move(name)), labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (n == 0) raise(Error::Kind::input, "space '" + name_ + "': empty point set");
  std::set<std::string> uniq(labels_.begin(), labels_.end());
  if (uniq.size() != n)
    raise(Error::Kind::input, "space '" + name_ + "': duplicate point labels");
  if (dist.size() != n)
    raise(Error::Kind::input, "space '" + name_ + "': matrix has " +
                                  std::to_string(dist.size()) + " rows for " +
                                  std::to_string(n) + " points");
  d_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dist[i].size() != n)
      raise(Error::Kind::input,
            "space '" + name_ + "': row " + std::to_string(i) + " is not length " +
                std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      double v = dist[i][j];
      if (!std::isfinite(v) || v < 0.0)
        raise(Error::Kind::input, "space '" + name_ + "': entry (" + std::to_string(i) + "," +
                                      std::to_string(j) + ") must be finite and nonnegative");
      d_[i * n + j] = v;
    }
  }
}

std::optional<std::size_t> FiniteSpace::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

std::size_t FiniteSpace::require_index(std::string_view label) const {
  if (auto i = index_of(label)) return *i;
  raise(Error::Kind::input,
        "space '" + name_ + "': unknown point '" + std::string(label) + "'");
}

bool MetricReport::pass() const {
  for (const auto& [axiom, st] : status)
    if (st != "pass") return false;
  return true;
}

namespace {

void sort_violations(std::vector<MetricViolation>& v) {
  std::stable_sort(v.begin(), v.end(), [](const MetricViolation& a, const MetricViolation& b) {
    return std::tie(a.i, a.j, a.k, a.axiom) < std::tie(b.i, b.j, b.k, b.axiom);
  });
}

// A1 (identity of indiscernibles) and A2 (symmetry), checked exactly.
void check_a1_a2(const FiniteSpace& sp, MetricReport& rep) {
  const std::size_t n = sp.size();
  rep.status["A1"] = "pass";
  rep.status["A2"] = "pass";
  for (std::size_t i = 0; i < n; ++i) {
    if (sp.dist(i, i) != 0.0) {
      rep.status["A1"] = "violated";
      rep.violations.push_back({"A1", (std::int64_t)i, (std::int64_t)i, -1, sp.dist(i, i), 0.0});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (sp.dist(i, j) == 0.0) {
        rep.status["A1"] = "violated";
        rep.violations.push_back({"A1", (std::int64_t)i, (std::int64_t)j, -1, 0.0, 0.0});
      }
      if (sp.dist(i, j) != sp.dist(j, i)) {
        rep.status["A2"] = "violated";
        rep.violations.push_back(
            {"A2", (std::int64_t)i, (std::int64_t)j, -1, sp.dist(i, j), sp.dist(j, i)});
      }
    }
  }
}

}  // namespace

MetricReport validate_theta_metric(const FiniteSpace& sp, const Action& a) {
  MetricReport rep;
  rep.space = sp.name();
  rep.action = a.name();
  rep.kind = "theta";
  check_a1_a2(sp, rep);
  rep.status["A3"] = "pass";
  const std::size_t n = sp.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double lhs = sp.dist(i, j);
        double rhs = a.eval(sp.dist(i, k), sp.dist(k, j));
        if (!leq_tol(lhs, rhs)) {
          rep.status["A3"] = "violated";
          rep.violations.push_back(
              {"A3", (std::int64_t)i, (std::int64_t)j, (std::int64_t)k, lhs, rhs});
        }
      }
  sort_violations(rep.violations);
  return rep;
}

MetricReport validate_plain_metric(const FiniteSpace& sp) {
  MetricReport rep;
  rep.space = sp.name();
  rep.kind = "plain";
  check_a1_a2(sp, rep);
  rep.status["TRI"] = "pass";
  const std::size_t n = sp.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double lhs = sp.dist(i, j);
        double rhs = sp.dist(i, k) + sp.dist(k, j);
        if (!leq_tol(lhs, rhs)) {
          rep.status["TRI"] = "violated";
          rep.violations.push_back(
              {"TRI", (std::int64_t)i, (std::int64_t)j, (std::int64_t)k, lhs, rhs});
        }
      }
  sort_violations(rep.violations);
  return rep;
}

Ball open_ball(const FiniteSpace& sp, std::size_t center, double r, const Action& a) {
  if (center >= sp.size()) raise(Error::Kind::input, "open_ball: point index out of range");
  if (!(r > 0.0) || !std::isfinite(r))
    raise(Error::Kind::input, "open_ball: radius must be positive and finite");
  Ball b;
  b.center = center;
  b.radius = r;
  b.radius_in_image = actions::image_contains_quick(a, r);
  for (std::size_t y = 0; y < sp.size(); ++y)
    if (sp.dist(center, y) < r) b.members.push_back(y);
  return b;
}

namespace {

bool ball_contains(const Ball& b, std::size_t p) {
  return std::binary_search(b.members.begin(), b.members.end(), p);
}

}  // namespace

OpennessWitness openness_witness(const FiniteSpace& sp, const Action& a, std::size_t center,
                                 double r, std::size_t y) {
  if (center >= sp.size() || y >= sp.size())
    raise(Error::Kind::input, "openness_witness: point index out of range");
  OpennessWitness w;
  w.outer = open_ball(sp, center, r, a);
  if (!ball_contains(w.outer, y))
    raise(Error::Kind::input, "openness_witness: '" + sp.label(y) + "' lies outside B(" +
                                  sp.label(center) + ", " + std::to_string(r) + ")");
  double dy = sp.dist(center, y);
  w.delta = actions::eta(a, r, dy, actions::EtaMode::strict);
  if (!(w.delta > 0.0))
    raise(Error::Kind::invariant, "openness_witness: eta produced a nonpositive delta");
  w.inner = open_ball(sp, y, w.delta, a);
  for (std::size_t z : w.inner.members) {
    if (!ball_contains(w.outer, z)) {
      std::ostringstream os;
      os << "openness_witness: B(" << sp.label(y) << ", " << w.delta << ") is not contained in B("
         << sp.label(center) << ", " << r << "); escaping point '" << sp.label(z)
         << "' (d(center,z)=" << sp.dist(center, z)
         << "); action '" << a.name() << "' is not a valid B-action on this data";
      raise(Error::Kind::invariant, os.str());
    }
  }
  return w;
}

SeparationWitness separation_witness(const FiniteSpace& sp, const Action& a, std::size_t x,
                                     std::size_t y) {
  if (x >= sp.size() || y >= sp.size())
    raise(Error::Kind::input, "separation_witness: point index out of range");
  if (x == y) raise(Error::Kind::input, "separation_witness: points must be distinct");
  double dxy = sp.dist(x, y);
  if (!(dxy > 0.0))
    raise(Error::Kind::input,
          "separation_witness: d(x,y)=0 for distinct points; A1 fails on this space");

  SeparationWitness w;
  w.alpha = (1.0 - 1e-6) * dxy;
  if (!actions::image_contains_quick(a, w.alpha)) {
    // clip into the attainable part of the image
    auto q = actions::image_contains(a, w.alpha);
    double reachable = q.contains ? w.alpha : q.attained_sup;
    w.alpha = std::min(w.alpha, reachable * (1.0 - 1e-6));
    if (!(w.alpha > 0.0) || !actions::image_contains_quick(a, w.alpha))
      raise(Error::Kind::image, "separation_witness: no usable radius below d(x,y)=" +
                                    std::to_string(dxy) + " lies in Im(theta)");
  }
  w.s = w.alpha / 2.0;
  w.r = actions::eta(a, w.alpha, w.s, actions::EtaMode::existence);
  w.ball_x = open_ball(sp, x, w.r, a);
  w.ball_y = open_ball(sp, y, w.s, a);
  for (std::size_t z : w.ball_x.members) {
    if (ball_contains(w.ball_y, z)) {
      std::ostringstream os;
      os << "separation_witness: balls B(" << sp.label(x) << ", " << w.r << ") and B("
         << sp.label(y) << ", " << w.s << ") intersect at '" << sp.label(z)
         << "'; action '" << a.name() << "' is not a valid B-action on this data";
      raise(Error::Kind::invariant, os.str());
    }
  }
  return w;
}

long long uniformity_base_index(const Action& a, long long n) {
  if (n < 1) raise(Error::Kind::input, "uniformity_base_index: n must be >= 1");
  auto ok = [&](long long m) { return a.eval(1.0 / m, 1.0 / m) < 1.0 / n; };
  long long first = 2 * n + 1;
  if (ok(first)) return first;
  long long lo = first, hi = first;  // lo fails; find a passing hi
  while (true) {
    hi = hi * 2;
    if (hi > kUniformityIndexCap)
      raise(Error::Kind::invariant,
            "uniformity_base_index: theta(1/m,1/m) still >= 1/n at the search cap; action '" +
                a.name() + "' violates continuity-at-zero assumptions");
    if (ok(hi)) break;
    lo = hi;
  }
  while (lo + 1 < hi) {  // least m with ok(m); predicate monotone under (II)
    long long mid = lo + (hi - lo) / 2;
    if (ok(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

CauchyReport is_cauchy(const FiniteSpace& sp, const std::vector<std::size_t>& trace,
                       const Action& a, const std::vector<double>& eps_schedule) {
  for (std::size_t p : trace)
    if (p >= sp.size()) raise(Error::Kind::input, "is_cauchy: trace index out of range");
  return is_cauchy_trace(
      trace, [&](std::size_t i, std::size_t j) { return sp.dist(i, j); }, a, eps_schedule);
}

LimitReport check_limit_behavior(const FiniteSpace& sp, const std::vector<std::size_t>& tr_x,
                                 const std::vector<std::size_t>& tr_y, std::size_t x,
                                 std::size_t y, const Action& a,
                                 const std::vector<double>& eps_schedule) {
  auto check = [&](const std::vector<std::size_t>& tr) {
    for (std::size_t p : tr)
      if (p >= sp.size())
        raise(Error::Kind::input, "check_limit_behavior: trace index out of range");
  };
  check(tr_x);
  check(tr_y);
  if (x >= sp.size() || y >= sp.size())
    raise(Error::Kind::input, "check_limit_behavior: candidate limit out of range");
  return check_limit_behavior(
      tr_x, tr_y, x, y, [&](std::size_t i, std::size_t j) { return sp.dist(i, j); }, a,
      eps_schedule);
}

}  // namespace theta::spaces
