#include "theta/fixedpoint.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace theta::fixedpoint {

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::diverged: return "diverged";
  }
  return "unknown";
}

TableMap TableMap::make(const FiniteSpace& sp, std::vector<std::size_t> to) {
  if (to.size() != sp.size())
    raise(Error::Kind::input, "map: table size does not match the space");
  for (std::size_t i : to)
    if (i >= sp.size()) raise(Error::Kind::input, "map: image index out of range");
  return TableMap{std::move(to)};
}

TableMap TableMap::from_labels(const FiniteSpace& sp,
                               const std::map<std::string, std::string>& m) {
  std::vector<std::size_t> to(sp.size());
  std::vector<bool> seen(sp.size(), false);
  for (const auto& [from, dest] : m) {
    std::size_t i = sp.require_index(from);
    to[i] = sp.require_index(dest);
    seen[i] = true;
  }
  for (std::size_t i = 0; i < sp.size(); ++i)
    if (!seen[i])
      raise(Error::Kind::input, "map: no image for point '" + sp.label(i) + "'");
  return TableMap{std::move(to)};
}

TableMultiMap TableMultiMap::make(const FiniteSpace& sp,
                                  std::vector<std::vector<std::size_t>> to) {
  if (to.size() != sp.size())
    raise(Error::Kind::input, "multimap: table size does not match the space");
  for (auto& set : to) {
    if (set.empty()) raise(Error::Kind::input, "multimap: empty image set");
    for (std::size_t i : set)
      if (i >= sp.size()) raise(Error::Kind::input, "multimap: image index out of range");
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
  }
  return TableMultiMap{std::move(to)};
}

TableMultiMap TableMultiMap::from_labels(
    const FiniteSpace& sp, const std::map<std::string, std::vector<std::string>>& m) {
  std::vector<std::vector<std::size_t>> to(sp.size());
  std::vector<bool> seen(sp.size(), false);
  for (const auto& [from, dests] : m) {
    std::size_t i = sp.require_index(from);
    for (const auto& d : dests) to[i].push_back(sp.require_index(d));
    seen[i] = true;
  }
  for (std::size_t i = 0; i < sp.size(); ++i)
    if (!seen[i])
      raise(Error::Kind::input, "multimap: no image for point '" + sp.label(i) + "'");
  return TableMultiMap::make(sp, std::move(to));
}

SolveTrace<std::size_t> banach_solve(const FiniteSpace& sp, const TableMap& f, std::size_t x0,
                                     double tol_fix, int max_iter) {
  if (x0 >= sp.size()) raise(Error::Kind::input, "banach_solve: start point out of range");
  return banach_solve(
      [&](std::size_t i, std::size_t j) { return sp.dist(i, j); },
      [&](std::size_t i) { return f(i); }, x0, tol_fix, max_iter);
}

double estimate_contraction(const FiniteSpace& sp, const TableMap& f) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < sp.size(); ++i)
    for (std::size_t j = i + 1; j < sp.size(); ++j) pairs.emplace_back(i, j);
  return estimate_contraction(
      [&](std::size_t i, std::size_t j) { return sp.dist(i, j); },
      [&](std::size_t i) { return f(i); }, pairs);
}

std::vector<std::size_t> exhaustive_fixed_points(const FiniteSpace& sp, const TableMap& f) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < sp.size(); ++i)
    if (sp.dist(i, f(i)) == 0.0) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Gamma / Psi

Gamma gamma_identity() { return {"identity", [](double t) { return t; }}; }

Gamma gamma_rational() {
  return {"rational", [](double t) { return t / (1.0 + t); }};
}

Gamma gamma_table(std::vector<std::pair<double, double>> breakpoints) {
  std::sort(breakpoints.begin(), breakpoints.end());
  if (breakpoints.empty() || breakpoints.front().first != 0.0 ||
      breakpoints.front().second != 0.0)
    raise(Error::Kind::input, "gamma_table: breakpoints must start at (0, 0)");
  for (std::size_t i = 1; i < breakpoints.size(); ++i)
    if (breakpoints[i].first == breakpoints[i - 1].first)
      raise(Error::Kind::input, "gamma_table: duplicate breakpoint abscissa");
  auto bp = std::make_shared<std::vector<std::pair<double, double>>>(std::move(breakpoints));
  return {"custom_table", [bp](double t) {
            const auto& v = *bp;
            if (v.size() == 1) return 0.0;
            std::size_t hi = 1;
            while (hi + 1 < v.size() && v[hi].first < t) ++hi;
            double ta = v[hi - 1].first, va = v[hi - 1].second;
            double tb = v[hi].first, vb = v[hi].second;
            return va + (vb - va) * (t - ta) / (tb - ta);
          }};
}

const char* psi_form_name(PsiForm f) {
  switch (f) {
    case PsiForm::table: return "table";
    case PsiForm::exp_phi: return "exp_phi";
    case PsiForm::odd_root_phi: return "odd_root_phi";
  }
  return "unknown";
}

Psi Psi::table(std::vector<std::vector<double>> values) {
  Psi p;
  p.form_ = PsiForm::table;
  const std::size_t n = values.size();
  for (const auto& row : values)
    if (row.size() != n) raise(Error::Kind::input, "psi table must be square");
  p.values_ = std::move(values);
  return p;
}

Psi Psi::exp_phi(std::vector<double> phi) {
  Psi p;
  p.form_ = PsiForm::exp_phi;
  p.phi_ = std::move(phi);
  return p;
}

Psi Psi::odd_root_phi(std::vector<double> phi, int n) {
  if (n < 0) raise(Error::Kind::input, "odd_root_phi: n must be >= 0");
  Psi p;
  p.form_ = PsiForm::odd_root_phi;
  p.phi_ = std::move(phi);
  p.n_ = n;
  return p;
}

double Psi::operator()(std::size_t x, std::size_t y) const {
  switch (form_) {
    case PsiForm::table:
      return values_[x][y];
    case PsiForm::exp_phi:
      return x == y ? 0.0 : std::exp(phi_[y] - phi_[x]);
    case PsiForm::odd_root_phi: {
      double diff = phi_[y] - phi_[x];
      int power = 2 * n_ + 1;
      if (power == 1) return diff;
      if (power == 3) return std::cbrt(diff);
      double m = std::pow(std::fabs(diff), 1.0 / power);
      return diff < 0 ? -m : m;
    }
  }
  return 0.0;
}

std::size_t Psi::size() const {
  return form_ == PsiForm::table ? values_.size() : phi_.size();
}

PsiBuild psi_from_phi(const std::vector<double>& phi, PsiForm form, int n, const Action& a) {
  PsiBuild out{Psi::table({}), std::nullopt};
  switch (form) {
    case PsiForm::exp_phi:
      out.psi = Psi::exp_phi(phi);
      if (a.kind() != actions::Kind::prod_over_one_plus_prod)
        out.warning = "exp_phi potentials pair with prod_over_one_plus_prod; got " + a.name();
      break;
    case PsiForm::odd_root_phi: {
      out.psi = Psi::odd_root_phi(phi, n);
      int power = 2 * n + 1;
      bool matches = (power == 1 && a.kind() == actions::Kind::k_sum && a.param_k() == 1.0) ||
                     (a.kind() == actions::Kind::root_sum_power && a.param_n() == power);
      if (!matches)
        out.warning = "odd_root_phi(n=" + std::to_string(n) + ") pairs with root_sum_power(n=" +
                      std::to_string(power) + "); got " + a.name();
      break;
    }
    case PsiForm::table:
      raise(Error::Kind::input, "psi_from_phi: use Psi::table for tabulated potentials");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Checks

bool PsiReport::pass() const {
  for (const auto& [c, st] : status)
    if (st != "pass") return false;
  return true;
}

bool GammaReport::pass() const {
  for (const auto& [c, st] : status)
    if (st != "pass") return false;
  return true;
}

PsiReport check_psi(const FiniteSpace& sp, const Action& a, const CaristiData& cd) {
  const std::size_t n = sp.size();
  if (cd.psi.size() != n)
    raise(Error::Kind::input, "check_psi: psi size does not match the space");
  PsiReport rep;
  rep.status["E1"] = "pass";
  rep.status["E2"] = "pass";
  rep.status["E3"] = "pass";

  // E1: boundedness below is automatic on a finite space; report the
  // exhaustive minimum for the first point. Semicontinuity is vacuous here.
  rep.e1_xhat = 0;
  rep.e1_min = cd.psi(0, 0);
  for (std::size_t y = 0; y < n; ++y) rep.e1_min = std::min(rep.e1_min, cd.psi(0, y));
  rep.e1_note = "finite space: bounded below by exhaustive minimum; semicontinuity vacuous";

  // E2: psi(x, x) = 0, exact for tabulated, small tolerance for derived.
  double e2_tol = cd.psi.derived() ? kTolCmp : 0.0;
  for (std::size_t x = 0; x < n; ++x) {
    double v = cd.psi(x, x);
    if (std::fabs(v) > e2_tol) {
      rep.status["E2"] = "violated";
      rep.violations.push_back({"E2", {x}, v, 0.0});
    }
  }

  // E3: theta(psi(x,y), psi(y,z)) <= psi(x,z) over all ordered triples.
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        double pxy = cd.psi(x, y), pyz = cd.psi(y, z), pxz = cd.psi(x, z);
        auto lhs = a.eval_signed(pxy, pyz);
        if (!lhs) {
          ++rep.e3_skipped;
          continue;
        }
        if (!leq_tol(*lhs, pxz)) {
          rep.status["E3"] = "violated";
          rep.violations.push_back({"E3", {x, y, z}, *lhs, pxz});
        }
      }
  return rep;
}

GammaReport check_gamma(const CaristiData& cd, const Action& a, const Sampler& sp) {
  GammaReport rep;
  rep.status["zero"] = "pass";
  rep.status["positivity"] = "pass";
  rep.status["monotone"] = "pass";
  rep.status["subadditive"] = "pass";
  const auto& g = cd.gamma;

  if (g(0.0) != 0.0) {
    rep.status["zero"] = "violated";
    rep.violations.push_back({"zero", {}, g(0.0), 0.0});
  }

  std::vector<double> grid = sp.grid();
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (g(grid[i]) > g(grid[i + 1])) {
      rep.status["monotone"] = "violated";
      rep.violations.push_back({"monotone", {}, g(grid[i]), g(grid[i + 1])});
    }
  }
  for (double t : grid) {
    if (t > 0.0 && !(g(t) > 0.0)) {
      rep.status["positivity"] = "violated";
      rep.violations.push_back({"positivity", {}, t, g(t)});
    }
  }

  auto rng = sp.rng();
  long pairs = std::max(1, sp.random_points);
  for (long i = 0; i < pairs; ++i) {
    double x = sp.domain_cap * uniform01(rng);
    double y = sp.domain_cap * uniform01(rng);
    double lhs = g(a.eval(x, y));
    double rhs = a.eval(g(x), g(y));
    if (!leq_tol(lhs, rhs)) {
      rep.status["subadditive"] = "violated";
      rep.violations.push_back({"subadditive", {}, lhs, rhs});
    }
  }
  // grid corners too, so zero and cap scales are always exercised
  for (double x : grid)
    for (double y : {grid.front(), grid.back()}) {
      double lhs = g(a.eval(x, y));
      double rhs = a.eval(g(x), g(y));
      if (!leq_tol(lhs, rhs)) {
        rep.status["subadditive"] = "violated";
        rep.violations.push_back({"subadditive", {}, lhs, rhs});
      }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Order and fixed points

namespace {

void ensure_regular(const Action& a) {
  if (a.regular_flag() == actions::Flag::unknown) {
    Sampler probe;
    probe.random_points = 64;
    actions::check_eta_properties(a, probe);
  }
  if (a.regular_flag() != actions::Flag::yes)
    raise(Error::Kind::input,
          "caristi machinery requires a regular action; '" + a.name() + "' is not regular");
}

void ensure_caristi_inputs(const FiniteSpace& sp, const Action& a, const CaristiData& cd) {
  ensure_regular(a);
  PsiReport pr = check_psi(sp, a, cd);
  if (!pr.pass()) {
    std::ostringstream os;
    os << "caristi: psi fails its class conditions (";
    for (const auto& [c, st] : pr.status)
      if (st != "pass") os << c << " ";
    os << "); first witness: ";
    if (!pr.violations.empty()) {
      const auto& v = pr.violations.front();
      os << v.condition << " lhs=" << v.lhs << " rhs=" << v.rhs;
    }
    raise(Error::Kind::input, os.str());
  }
  Sampler probe;
  probe.random_points = 512;
  GammaReport gr = check_gamma(cd, a, probe);
  if (!gr.pass())
    raise(Error::Kind::input, "caristi: gamma fails subadditivity/monotonicity checks");
}

std::size_t lex_smallest(const FiniteSpace& sp, const std::vector<std::size_t>& idx) {
  std::size_t best = idx.front();
  for (std::size_t i : idx)
    if (sp.label(i) < sp.label(best)) best = i;
  return best;
}

}  // namespace

OrderRelation caristi_order(const FiniteSpace& sp, const Action& a, const CaristiData& cd) {
  ensure_caristi_inputs(sp, a, cd);
  const std::size_t n = sp.size();
  OrderRelation rel;
  rel.R.assign(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      rel.R[x][y] = leq_tol(cd.gamma(sp.dist(x, y)), cd.psi(x, y));

  // These are theorems under the preconditions; a failure means the inputs
  // are inconsistent, so fail loudly with the witness.
  for (std::size_t x = 0; x < n; ++x)
    if (!rel.R[x][x])
      raise(Error::Kind::invariant,
            "caristi_order: reflexivity fails at '" + sp.label(x) + "'");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && rel.R[x][y] && rel.R[y][x])
        raise(Error::Kind::invariant, "caristi_order: antisymmetry fails on ('" + sp.label(x) +
                                          "', '" + sp.label(y) + "')");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (rel.R[x][y] && rel.R[y][z] && !rel.R[x][z])
          raise(Error::Kind::invariant, "caristi_order: transitivity fails on ('" + sp.label(x) +
                                            "', '" + sp.label(y) + "', '" + sp.label(z) + "')");
  rel.verified = true;
  return rel;
}

std::vector<std::size_t> minimal_elements(const OrderRelation& rel) {
  if (!rel.verified)
    raise(Error::Kind::input, "minimal_elements: relation has not been verified");
  const std::size_t n = rel.R.size();
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < n; ++x) {
    bool minimal = true;
    for (std::size_t y = 0; y < n; ++y)
      if (y != x && rel.R[y][x]) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(x);
  }
  return out;
}

CaristiResult caristi_fixed_point(const FiniteSpace& sp, const Action& a, const CaristiData& cd,
                                  const TableMap& T) {
  if (T.to.size() != sp.size())
    raise(Error::Kind::input, "caristi_fixed_point: map does not match the space");
  // Hypothesis gamma(d(x, Tx)) <= psi(Tx, x) for every x, checked first.
  for (std::size_t x = 0; x < sp.size(); ++x) {
    double lhs = cd.gamma(sp.dist(x, T(x)));
    double rhs = cd.psi(T(x), x);
    if (!leq_tol(lhs, rhs)) {
      std::ostringstream os;
      os << "caristi_fixed_point: hypothesis fails at '" << sp.label(x) << "': gamma(d(x,Tx))="
         << lhs << " > psi(Tx,x)=" << rhs;
      raise(Error::Kind::hypothesis, os.str());
    }
  }

  OrderRelation rel = caristi_order(sp, a, cd);
  CaristiResult res;
  res.minimal = minimal_elements(rel);
  for (std::size_t m : res.minimal)
    if (T(m) != m)
      raise(Error::Kind::invariant,
            "caristi_fixed_point: minimal element '" + sp.label(m) +
                "' is not fixed; tolerances or inputs are inconsistent");
  res.fixed_point = lex_smallest(sp, res.minimal);
  return res;
}

CaristiResult endpoint(const FiniteSpace& sp, const Action& a, const CaristiData& cd,
                       const TableMultiMap& T) {
  if (T.to.size() != sp.size())
    raise(Error::Kind::input, "endpoint: multimap does not match the space");
  for (std::size_t x = 0; x < sp.size(); ++x) {
    for (std::size_t y : T.to[x]) {
      double lhs = cd.gamma(sp.dist(x, y));
      double rhs = cd.psi(y, x);
      if (!leq_tol(lhs, rhs)) {
        std::ostringstream os;
        os << "endpoint: hypothesis fails at '" << sp.label(x) << "' with image '" << sp.label(y)
           << "': gamma(d(x,y))=" << lhs << " > psi(y,x)=" << rhs;
        raise(Error::Kind::hypothesis, os.str());
      }
    }
  }

  OrderRelation rel = caristi_order(sp, a, cd);
  CaristiResult res;
  res.minimal = minimal_elements(rel);
  for (std::size_t m : res.minimal) {
    const auto& img = T.to[m];
    if (img.size() != 1 || img[0] != m)
      raise(Error::Kind::invariant,
            "endpoint: minimal element '" + sp.label(m) + "' has T(x) != {x}");
  }
  res.fixed_point = lex_smallest(sp, res.minimal);
  return res;
}

}  // namespace theta::fixedpoint
