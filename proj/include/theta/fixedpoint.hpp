#pragma once

// Banach-type contraction iteration on distance oracles and Caristi-type
// fixed points via the scaling/potential order on finite spaces, including
// endpoints of multivalued maps.

#include <cmath>
#include <concepts>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "theta/space.hpp"

namespace theta::fixedpoint {

using actions::Action;
using actions::Sampler;
using spaces::FiniteSpace;

enum class SolveStatus { converged, max_iter, diverged };
const char* status_name(SolveStatus s);

template <typename P>
struct SolveTrace {
  std::vector<P> iterates;
  std::vector<double> step_dists;  // d(x_n, x_{n+1}); length = iterates - 1
  SolveStatus status = SolveStatus::max_iter;
  std::optional<P> result;
};

// Picard iteration x_{n+1} = f(x_n) until the step distance drops below
// tol_fix; convergence additionally verifies d(x*, f(x*)) <= tol_fix.
// A non-finite distance yields diverged with the last iterate recorded.
template <typename P, typename DistFn, typename MapFn>
  requires std::invocable<DistFn&, const P&, const P&> && std::invocable<MapFn&, const P&>
SolveTrace<P> banach_solve(DistFn&& dist, MapFn&& f, P x0, double tol_fix = kTolFix,
                           int max_iter = 1000) {
  if (!(tol_fix > 0.0)) raise(Error::Kind::input, "banach_solve: tol_fix must be positive");
  if (max_iter < 1) raise(Error::Kind::input, "banach_solve: max_iter must be >= 1");
  SolveTrace<P> tr;
  tr.iterates.push_back(x0);
  P x = x0;
  for (int n = 0; n < max_iter; ++n) {
    P y = f(x);
    double d = dist(x, y);
    tr.iterates.push_back(y);
    tr.step_dists.push_back(d);
    if (!std::isfinite(d)) {
      tr.status = SolveStatus::diverged;
      return tr;
    }
    if (d <= tol_fix) {
      P z = f(y);
      double check = dist(y, z);
      if (std::isfinite(check) && check <= tol_fix) {
        tr.status = SolveStatus::converged;
        tr.result = y;
        return tr;
      }
    }
    x = y;
  }
  tr.status = SolveStatus::max_iter;
  return tr;
}

// Largest sampled ratio d(fx, fy) / d(x, y).
template <typename DistFn, typename MapFn, typename PairRange>
double estimate_contraction(DistFn&& dist, MapFn&& f, const PairRange& pairs) {
  double alpha = 0.0;
  long count = 0;
  for (const auto& [x, y] : pairs) {
    double d = dist(x, y);
    if (d == 0.0)
      raise(Error::Kind::input, "estimate_contraction: sample pair at zero distance");
    alpha = std::max(alpha, dist(f(x), f(y)) / d);
    ++count;
  }
  if (count == 0) raise(Error::Kind::input, "estimate_contraction: empty sample");
  return alpha;
}

// First index with step[i] > alpha * step[i-1] + tol, if any.
template <typename P>
std::optional<std::size_t> step_decay_violation(const SolveTrace<P>& tr, double alpha,
                                                double tol = 1e-12) {
  for (std::size_t i = 1; i < tr.step_dists.size(); ++i)
    if (tr.step_dists[i] > alpha * tr.step_dists[i - 1] + tol) return i;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Finite-space maps

struct TableMap {
  std::vector<std::size_t> to;  // closed over the space

  static TableMap make(const FiniteSpace& sp, std::vector<std::size_t> to);
  static TableMap from_labels(const FiniteSpace& sp,
                              const std::map<std::string, std::string>& m);
  std::size_t operator()(std::size_t i) const { return to[i]; }
};

struct TableMultiMap {
  std::vector<std::vector<std::size_t>> to;  // every image set nonempty

  static TableMultiMap make(const FiniteSpace& sp, std::vector<std::vector<std::size_t>> to);
  static TableMultiMap from_labels(const FiniteSpace& sp,
                                   const std::map<std::string, std::vector<std::string>>& m);
};

SolveTrace<std::size_t> banach_solve(const FiniteSpace& sp, const TableMap& f, std::size_t x0,
                                     double tol_fix = kTolFix, int max_iter = 1000);

// Exhaustive over all unordered distinct pairs.
double estimate_contraction(const FiniteSpace& sp, const TableMap& f);

// All x with d(x, f(x)) == 0.
std::vector<std::size_t> exhaustive_fixed_points(const FiniteSpace& sp, const TableMap& f);

// ---------------------------------------------------------------------------
// Caristi machinery (finite spaces)

struct Gamma {
  std::string kind;
  std::function<double(double)> fn;
  double operator()(double t) const { return fn(t); }
};

Gamma gamma_identity();
Gamma gamma_rational();  // t / (1 + t)
// Piecewise-linear interpolation through (t, value) breakpoints anchored at
// (0,0); extrapolates with the last segment's slope.
Gamma gamma_table(std::vector<std::pair<double, double>> breakpoints);

enum class PsiForm { table, exp_phi, odd_root_phi };
const char* psi_form_name(PsiForm f);

// Potential psi(x, y); tabulated, or derived from a scalar phi. Values may be
// signed (the odd-root form is); consumers decide what that means.
class Psi {
public:
  static Psi table(std::vector<std::vector<double>> values);
  static Psi exp_phi(std::vector<double> phi);               // e^(phi(y)-phi(x)), 0 on diagonal
  static Psi odd_root_phi(std::vector<double> phi, int n);   // (phi(y)-phi(x))^(1/(2n+1))

  double operator()(std::size_t x, std::size_t y) const;
  PsiForm form() const { return form_; }
  bool derived() const { return form_ != PsiForm::table; }
  int root_n() const { return n_; }
  const std::vector<double>& phi() const { return phi_; }
  std::size_t size() const;

private:
  PsiForm form_ = PsiForm::table;
  std::vector<std::vector<double>> values_;
  std::vector<double> phi_;
  int n_ = 0;
};

struct CaristiData {
  Gamma gamma;
  Psi psi;
};

struct PsiBuild {
  Psi psi;
  std::optional<std::string> warning;  // action family mismatch
};

// exp form pairs with prod_over_one_plus_prod; odd_root(n) with
// root_sum_power of power 2n+1. A mismatch warns but does not error.
PsiBuild psi_from_phi(const std::vector<double>& phi, PsiForm form, int n, const Action& a);

struct CheckViolation {
  std::string condition;
  std::vector<std::size_t> points;
  double lhs = 0, rhs = 0;
};

struct PsiReport {
  std::map<std::string, std::string> status;  // E1, E2, E3
  std::size_t e1_xhat = 0;
  double e1_min = 0;
  std::string e1_note;
  long e3_skipped = 0;  // triples where theta had no signed extension
  std::vector<CheckViolation> violations;

  bool pass() const;
};

// E2 exactly on all points (to tolerance for derived psi), E3 on all ordered
// triples, E1 as boundedness-below by exhaustive minimum.
PsiReport check_psi(const FiniteSpace& sp, const Action& a, const CaristiData& cd);

struct GammaReport {
  std::map<std::string, std::string> status;  // zero, positivity, monotone, subadditive
  std::vector<CheckViolation> violations;     // points field unused; lhs/rhs carry values

  bool pass() const;
};

GammaReport check_gamma(const CaristiData& cd, const Action& a, const Sampler& sp);

struct OrderRelation {
  std::vector<std::vector<bool>> R;  // R[x][y]  <=>  x precedes y
  bool verified = false;             // reflexive, antisymmetric, transitive
};

// Order x < y iff gamma(d(x,y)) <= psi(x,y) + tol. Preconditions enforced:
// the action must be regular, and cd must pass check_psi and check_gamma.
// Partial-order verification failure raises an invariant error with witness.
OrderRelation caristi_order(const FiniteSpace& sp, const Action& a, const CaristiData& cd);

// All x such that no y != x precedes x. Nonempty for finite nonempty spaces.
std::vector<std::size_t> minimal_elements(const OrderRelation& rel);

struct CaristiResult {
  std::size_t fixed_point = 0;         // lexicographically smallest label
  std::vector<std::size_t> minimal;    // all minimal elements
};

CaristiResult caristi_fixed_point(const FiniteSpace& sp, const Action& a, const CaristiData& cd,
                                  const TableMap& T);

CaristiResult endpoint(const FiniteSpace& sp, const Action& a, const CaristiData& cd,
                       const TableMultiMap& T);

}  // namespace theta::fixedpoint
