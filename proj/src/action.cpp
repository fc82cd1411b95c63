#include "theta/action.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace theta::actions {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_param(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

template <typename T>
T pow_int(T x, int n) {
  T r = 1;
  T base = x;
  int e = n;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// Shared evaluation core. Arguments are normalized to (min, max) so that
// evaluation is bitwise symmetric regardless of argument order.
template <typename T>
T eval_core(Kind kind, double k, int n, double lambda, const GeneratorFn* gen, T s, T t) {
  T a = s < t ? s : t;
  T b = s < t ? t : s;
  switch (kind) {
    case Kind::k_sum:
      return T(k) * (a + b);
    case Kind::k_sum_prod:
      return T(k) * (a + b + a * b);
    case Kind::prod_over_one_plus_prod: {
      T p = a * b;
      return p / (T(1) + p);
    }
    case Kind::root_sum_power: {
      if (n == 1) return a + b;
      if (b == T(0)) return T(0);
      if (a == T(0)) return b;  // exact: theta(0, b) = b
      if (n == 2) return std::sqrt(a * a + b * b);
      T w = a / b;  // in (0, 1]
      return b * std::exp(std::log1p(pow_int(w, n)) / T(n));
    }
    case Kind::sum_plus_prod:
      return a + b + a * b;
    case Kind::sum_plus_sqrt_prod:
      return a + b + std::sqrt(a * b);
    case Kind::sum_times_one_plus_prod:
      return (a + b) * (T(1) + a * b);
    case Kind::generator:
      return T(lambda) * T(gen->f(static_cast<double>(a + b)));
  }
  return T(0);
}

void require_nonneg_finite(double s, double t, const std::string& who) {
  if (!std::isfinite(s) || !std::isfinite(t) || s < 0.0 || t < 0.0)
    raise(Error::Kind::input, who + ": arguments must be finite and nonnegative");
}

// Signed nth root for odd n.
double signed_root(double y, int n) {
  if (n == 3) return std::cbrt(y);
  double m = std::pow(std::fabs(y), 1.0 / n);
  return y < 0 ? -m : m;
}

}  // namespace

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::k_sum: return "k_sum";
    case Kind::k_sum_prod: return "k_sum_prod";
    case Kind::prod_over_one_plus_prod: return "prod_over_one_plus_prod";
    case Kind::root_sum_power: return "root_sum_power";
    case Kind::sum_plus_prod: return "sum_plus_prod";
    case Kind::sum_plus_sqrt_prod: return "sum_plus_sqrt_prod";
    case Kind::sum_times_one_plus_prod: return "sum_times_one_plus_prod";
    case Kind::generator: return "generator";
  }
  return "unknown";
}

std::optional<Kind> kind_from_name(const std::string& name) {
  static const std::map<std::string, Kind> table = {
      {"k_sum", Kind::k_sum},
      {"k_sum_prod", Kind::k_sum_prod},
      {"prod_over_one_plus_prod", Kind::prod_over_one_plus_prod},
      {"root_sum_power", Kind::root_sum_power},
      {"sum_plus_prod", Kind::sum_plus_prod},
      {"sum_plus_sqrt_prod", Kind::sum_plus_sqrt_prod},
      {"sum_times_one_plus_prod", Kind::sum_times_one_plus_prod},
      {"generator", Kind::generator},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

const char* flag_name(Flag f) {
  switch (f) {
    case Flag::unknown: return "unknown";
    case Flag::yes: return "yes";
    case Flag::no: return "no";
  }
  return "unknown";
}

Action Action::make(Kind kind, double k, int n) {
  Action a;
  a.kind_ = kind;
  switch (kind) {
    case Kind::k_sum:
    case Kind::k_sum_prod:
      if (!std::isfinite(k) || k <= 0.0 || k > 1.0)
        raise(Error::Kind::input, kind_name(kind) + ": k must lie in (0, 1]");
      a.k_ = k;
      a.name_ = kind_name(kind) + "(k=" + fmt_param(k) + ")";
      break;
    case Kind::root_sum_power:
      if (n < 1 || n > 64)
        raise(Error::Kind::input, "root_sum_power: n must lie in [1, 64]");
      a.n_ = n;
      a.name_ = "root_sum_power(n=" + std::to_string(n) + ")";
      break;
    case Kind::generator:
      raise(Error::Kind::input, "generator actions must be built via from_generator");
    default:
      a.name_ = kind_name(kind);
      break;
  }
  return a;
}

Action Action::from_generator(GeneratorFn gen, double lambda, const Sampler& sp) {
  if (!gen.f) raise(Error::Kind::input, "from_generator: missing function");
  if (!std::isfinite(lambda) || lambda > 1.0)
    raise(Error::Kind::input, "from_generator: lambda must lie in (0, 1]");
  if (lambda <= 0.0)
    raise(Error::Kind::input,
          "from_generator: lambda=0 yields the constant-zero map, which fails "
          "strict monotonicity (II)");

  double f0 = gen.f(0.0);
  if (f0 != 0.0)
    raise(Error::Kind::input,
          "from_generator: f(0) = " + std::to_string(f0) + ", expected 0");

  std::vector<double> ts = sp.values();
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  double prev_t = 0.0, prev_f = 0.0;
  for (double t : ts) {
    if (t <= 0.0) continue;
    double ft = gen.f(t);
    if (!std::isfinite(ft))
      raise(Error::Kind::input, "from_generator: f(" + std::to_string(t) + ") is not finite");
    if (!(ft > prev_f)) {
      std::ostringstream os;
      os << "from_generator: f not strictly increasing, f(" << prev_t << ")=" << prev_f
         << " vs f(" << t << ")=" << ft;
      raise(Error::Kind::input, os.str());
    }
    if (!(ft < t)) {
      std::ostringstream os;
      os << "from_generator: f(t) < t fails at t=" << t << " with f(t)=" << ft;
      raise(Error::Kind::input, os.str());
    }
    prev_t = t;
    prev_f = ft;
  }

  Action a;
  a.kind_ = Kind::generator;
  a.lambda_ = lambda;
  a.gen_ = std::move(gen);
  a.name_ = "generator(" + a.gen_->name + ",lambda=" + fmt_param(lambda) + ")";
  return a;
}

double Action::eval(double s, double t) const {
  require_nonneg_finite(s, t, "eval[" + name_ + "]");
  return eval_core<double>(kind_, k_, n_, lambda_, gen_ ? &*gen_ : nullptr, s, t);
}

long double Action::eval_ld(long double s, long double t) const {
  return eval_core<long double>(kind_, k_, n_, lambda_, gen_ ? &*gen_ : nullptr, s, t);
}

std::optional<double> Action::eval_signed(double s, double t) const {
  if (s >= 0.0 && t >= 0.0) return eval(s, t);
  double a = s < t ? s : t;
  double b = s < t ? t : s;
  switch (kind_) {
    case Kind::k_sum:
      return k_ * (a + b);
    case Kind::k_sum_prod:
      return k_ * (a + b + a * b);
    case Kind::sum_plus_prod:
      return a + b + a * b;
    case Kind::sum_times_one_plus_prod:
      return (a + b) * (1.0 + a * b);
    case Kind::root_sum_power: {
      if (n_ % 2 == 1) {
        if (n_ == 1) return a + b;
        return signed_root(pow_int(a, n_) + pow_int(b, n_), n_);
      }
      // Even powers: the formula stays defined via |.|^n.
      return std::pow(pow_int(a, n_) + pow_int(b, n_), 1.0 / n_);
    }
    case Kind::prod_over_one_plus_prod: {
      double p = a * b;
      if (1.0 + p <= 0.0) return std::nullopt;  // pole
      return p / (1.0 + p);
    }
    case Kind::sum_plus_sqrt_prod: {
      double p = a * b;
      if (p < 0.0) return std::nullopt;
      return a + b + std::sqrt(p);
    }
    case Kind::generator: {
      double z = a + b;
      if (z < 0.0) return std::nullopt;  // f only defined on [0, inf)
      return lambda_ * gen_->f(z);
    }
  }
  return std::nullopt;
}

bool Action::has_closed_inverse() const { return kind_ != Kind::generator; }

std::optional<double> Action::closed_inverse(double r, double s) const {
  switch (kind_) {
    case Kind::k_sum:
      return r / k_ - s;
    case Kind::k_sum_prod:
      return (r / k_ - s) / (1.0 + s);
    case Kind::prod_over_one_plus_prod:
      if (s == 0.0) return (r == 0.0) ? std::optional<double>(0.0) : std::nullopt;
      if (r >= 1.0) return std::nullopt;
      return r / (s * (1.0 - r));
    case Kind::root_sum_power: {
      if (n_ == 1) return r - s;
      if (s == 0.0) return r;
      if (s == r) return 0.0;
      if (n_ == 2) return std::sqrt((r - s) * (r + s));
      // q = 1 - (s/r)^n computed without cancellation
      double q = -std::expm1(static_cast<double>(n_) * std::log(s / r));
      if (q <= 0.0) return 0.0;
      return r * std::exp(std::log(q) / n_);
    }
    case Kind::sum_plus_prod:
      return (r - s) / (1.0 + s);
    case Kind::sum_plus_sqrt_prod: {
      if (s == 0.0) return r;
      double root = std::sqrt(4.0 * r - 3.0 * s) + std::sqrt(s);
      double u = 2.0 * (r - s) / root;
      return u * u;
    }
    case Kind::sum_times_one_plus_prod: {
      if (s == 0.0) return r;
      double b = 1.0 + s * s;
      return 2.0 * (r - s) / (b + std::sqrt(b * b + 4.0 * s * (r - s)));
    }
    case Kind::generator:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<double> Action::image_sup() const {
  switch (kind_) {
    case Kind::prod_over_one_plus_prod:
      return 1.0;  // Im = [0, 1)
    case Kind::generator:
      return std::nullopt;  // depends on f, not known analytically
    default:
      return kInf;
  }
}

std::vector<Action> builtin_catalog() {
  std::vector<Action> cat;
  cat.push_back(Action::make(Kind::k_sum, 1.0));
  cat.push_back(Action::make(Kind::k_sum, 0.5));
  cat.push_back(Action::make(Kind::k_sum, 0.25));
  cat.push_back(Action::make(Kind::k_sum_prod, 0.5));
  cat.push_back(Action::make(Kind::prod_over_one_plus_prod));
  cat.push_back(Action::make(Kind::root_sum_power, 1.0, 2));
  cat.push_back(Action::make(Kind::root_sum_power, 1.0, 3));
  cat.push_back(Action::make(Kind::root_sum_power, 1.0, 5));
  cat.push_back(Action::make(Kind::sum_plus_prod));
  cat.push_back(Action::make(Kind::sum_plus_sqrt_prod));
  cat.push_back(Action::make(Kind::sum_times_one_plus_prod));
  cat.push_back(Action::from_generator({"rational", [](double t) { return t / (1.0 + t); }}, 0.5));
  return cat;
}

// ---------------------------------------------------------------------------
// Axiom checking

namespace {

constexpr std::size_t kMaxStoredWitnesses = 16;

struct ReportBuilder {
  AxiomReport rep;

  void init(const Action& a, const Sampler& sp, std::initializer_list<const char*> conds) {
    rep.action = a.name();
    rep.seed = sp.seed;
    rep.grid_points = sp.grid_points;
    rep.random_points = sp.random_points;
    rep.domain_cap = sp.domain_cap;
    for (const char* c : conds) {
      rep.status[c] = "pass";
      rep.checks[c] = 0;
      rep.violation_counts[c] = 0;
    }
  }

  void tick(const std::string& cond) { rep.checks[cond]++; }

  void violate(const std::string& cond, std::map<std::string, double> inputs,
               std::map<std::string, double> values) {
    rep.status[cond] = "violated";
    rep.violation_counts[cond]++;
    if (rep.violations.size() < kMaxStoredWitnesses * rep.status.size())
      rep.violations.push_back({cond, std::move(inputs), std::move(values)});
  }
};

// Existence-side probe of condition (III): can theta(t, s) reach r for some
// finite t? Returns the bracket top when reached.
bool existence_reaches(const Action& a, double r, double s, double* capT = nullptr) {
  double hi = std::max(r, 1.0);
  while (static_cast<double>(a.eval_ld(hi, s)) < r) {
    hi *= 2.0;
    if (hi > kEtaBracketCap) {
      if (capT) *capT = hi / 2.0;
      return false;
    }
  }
  if (capT) *capT = hi;
  return true;
}

}  // namespace

bool AxiomReport::pass() const {
  for (const auto& [cond, st] : status)
    if (st != "pass") return false;
  return true;
}

AxiomReport check_action_axioms(const Action& a, const Sampler& sp) {
  ReportBuilder b;
  b.init(a, sp, {"I", "II", "III_existence", "III_strict_range", "IV"});

  std::vector<double> vals = sp.values();
  std::vector<double> sorted = vals;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  auto rng = sp.rng();

  // (I) theta(0,0) = 0 exactly, symmetry on sampled pairs (bitwise, since
  // evaluation order is normalized).
  b.tick("I");
  double z = a.eval(0.0, 0.0);
  if (z != 0.0) b.violate("I", {{"s", 0.0}, {"t", 0.0}}, {{"theta", z}});
  for (std::size_t i = 0; i + 1 < sorted.size(); i += 2) {
    double s = sorted[i], t = sorted[i + 1];
    b.tick("I");
    double lhs = a.eval(s, t), rhs = a.eval(t, s);
    if (lhs != rhs) b.violate("I", {{"s", s}, {"t", t}}, {{"theta_st", lhs}, {"theta_ts", rhs}});
  }

  // (II) strict monotonicity: for every sampled second coordinate t and every
  // consecutive pair s < u of sampled values, theta(s,t) < theta(u,t). Ties
  // are violations (exact comparison, slack 0).
  for (double t : sorted) {
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
      double s = sorted[i], u = sorted[i + 1];
      b.tick("II");
      double lhs = a.eval(s, t), rhs = a.eval(u, t);
      if (!(lhs < rhs))
        b.violate("II", {{"s", s}, {"t", t}, {"u", u}, {"v", t}},
                  {{"theta_st", lhs}, {"theta_uv", rhs}});
    }
  }

  // (III) solvability of theta(t,s) = r, with r drawn from sampled image
  // values: diagonal values theta(u,u) plus random pairs.
  std::vector<double> rs;
  for (double u : sp.grid())
    if (u > 0.0) rs.push_back(a.eval(u, u));
  for (int i = 0; i < 32; ++i) {
    double u = sp.domain_cap * uniform01(rng);
    double v = sp.domain_cap * uniform01(rng);
    rs.push_back(a.eval(u, v));
  }
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());

  std::vector<double> fracs = {1e-6, 1e-3, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0};
  for (int i = 0; i < 6; ++i) fracs.push_back(uniform01(rng));
  for (double r : rs) {
    if (!(r > 0.0)) continue;
    for (double q : fracs) {
      double s = r * q;
      if (!(s > 0.0) || s > r) continue;
      // strict range: a root in [0, r] exists iff theta(r, s) >= r
      b.tick("III_strict_range");
      double top = static_cast<double>(a.eval_ld(r, s));
      if (!(top >= r))
        b.violate("III_strict_range", {{"r", r}, {"s", s}}, {{"theta_rs", top}});
      // existence: the doubling bracket must reach r
      b.tick("III_existence");
      double capT = 0.0;
      if (!existence_reaches(a, r, s, &capT))
        b.violate("III_existence", {{"r", r}, {"s", s}, {"T", capT}},
                  {{"theta_Ts", static_cast<double>(a.eval_ld(capT, s))}});
    }
  }

  // (IV) theta(s, 0) <= s on sampled s > 0.
  for (double s : sorted) {
    if (!(s > 0.0)) continue;
    b.tick("IV");
    double v = a.eval(s, 0.0);
    if (!(v <= s)) b.violate("IV", {{"s", s}}, {{"theta_s0", v}});
  }

  return b.rep;
}

bool replay_violation(const Action& a, const AxiomViolation& v) {
  auto in = [&](const char* key) { return v.inputs.at(key); };
  if (v.condition == "I") {
    if (v.inputs.count("s") && v.inputs.count("t")) {
      if (in("s") == 0.0 && in("t") == 0.0 && !v.inputs.count("u"))
        return a.eval(0.0, 0.0) != 0.0;
      return a.eval(in("s"), in("t")) != a.eval(in("t"), in("s"));
    }
    return false;
  }
  if (v.condition == "II")
    return !(a.eval(in("s"), in("t")) < a.eval(in("u"), in("v")));
  if (v.condition == "III_strict_range" || v.condition == "strict_range")
    return !(static_cast<double>(a.eval_ld(in("r"), in("s"))) >= in("r"));
  if (v.condition == "III_existence")
    return static_cast<double>(a.eval_ld(in("T"), in("s"))) < in("r");
  if (v.condition == "IV")
    return !(a.eval(in("s"), 0.0) <= in("s"));
  if (v.condition == "a1") return eta(a, 0.0, 0.0, EtaMode::existence) != 0.0;
  if (v.condition == "a2") {
    try {
      double t = eta(a, in("r"), in("s"), EtaMode::existence);
      double tol = std::max(kTolEta, 16.0 * std::numeric_limits<double>::epsilon() * in("r"));
      return std::fabs(a.eval(t, in("s")) - in("r")) > tol;
    } catch (const Error&) {
      return true;
    }
  }
  if (v.condition == "regular") {
    try {
      return !(std::fabs(eta(a, in("r"), in("r"), EtaMode::existence)) <= 1e-9);
    } catch (const Error&) {
      return true;
    }
  }
  if (v.condition == "lemma28") {
    try {
      if (!(a.eval(in("x"), in("b")) <= in("c"))) return false;  // hypothesis gone
      return !(in("x") <= eta(a, in("c"), in("b"), EtaMode::existence) + kTolEta + 1e-9);
    } catch (const Error&) {
      return true;
    }
  }
  if (v.condition == "closed_inverse") {
    auto tc = a.closed_inverse(in("r"), in("s"));
    if (!tc) return false;
    double tb = eta_bisect(a, in("r"), in("s"), EtaMode::existence);
    return std::fabs(*tc - tb) > kTolClosedVsBisect;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Image membership

bool image_contains_quick(const Action& a, double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0)
    raise(Error::Kind::input, "image_contains: alpha must be finite and nonnegative");
  if (alpha == 0.0) return true;
  if (auto sup = a.image_sup()) {
    if (std::isinf(*sup)) return true;
    return alpha < *sup;
  }
  double t = 1.0;
  while (static_cast<double>(a.eval_ld(t, t)) < alpha) {
    t *= 2.0;
    if (t > kImageSearchCap) return false;
  }
  return true;
}

ImageQuery image_contains(const Action& a, double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0)
    raise(Error::Kind::input, "image_contains: alpha must be finite and nonnegative");
  ImageQuery q;
  if (alpha == 0.0) {
    q.contains = true;
    q.witness = 0.0;
    return q;
  }

  // Bracket along the diagonal by doubling.
  double lo = 0.0, hi = 1.0;
  bool bracketed = false;
  while (hi <= kImageSearchCap) {
    if (static_cast<double>(a.eval_ld(hi, hi)) >= alpha) {
      bracketed = true;
      break;
    }
    lo = hi;
    hi *= 2.0;
  }

  if (bracketed) {
    q.contains = true;
    q.witness = bisect_monotone(
        [&](double t) { return a.eval_ld(t, t) - static_cast<long double>(alpha); }, lo, hi);
    return q;
  }

  double cap = kImageSearchCap;
  double at_cap = static_cast<double>(a.eval_ld(cap, cap));
  auto sup = a.image_sup();
  bool still_growing;
  if (sup.has_value()) {
    still_growing = std::isinf(*sup) ? true : alpha < *sup;
  } else {
    double at_half = static_cast<double>(a.eval_ld(cap / 2.0, cap / 2.0));
    still_growing = at_cap > at_half * (1.0 + 1e-9);
  }
  if (still_growing) {
    q.contains = true;
    q.witness = cap;
    q.approximate = true;
  } else {
    q.contains = false;
    q.attained_sup = at_cap;
  }
  return q;
}

// ---------------------------------------------------------------------------
// Inverse action

namespace {

double ld_slack(double r) {
  return 16.0 * static_cast<double>(std::numeric_limits<long double>::epsilon()) *
         std::max(1.0, r);
}

}  // namespace

double eta_bisect(const Action& a, double r, double s, EtaMode mode) {
  require_nonneg_finite(r, s, "eta[" + a.name() + "]");
  if (s > r)
    raise(Error::Kind::domain,
          "eta[" + a.name() + "]: s=" + std::to_string(s) + " exceeds r=" + std::to_string(r));
  if (r == 0.0) return 0.0;
  if (!image_contains_quick(a, r))
    raise(Error::Kind::image,
          "eta[" + a.name() + "]: r=" + std::to_string(r) + " not in Im(theta)");

  const long double R = r;
  auto g = [&](double t) { return a.eval_ld(t, s) - R; };

  long double g0 = g(0.0);
  if (g0 >= 0) {
    if (static_cast<double>(g0) <= ld_slack(r)) return 0.0;
    raise(Error::Kind::invariant,
          "eta[" + a.name() + "]: theta(0,s) > r with s <= r, (IV) must be violated");
  }

  double lo = 0.0, hi;
  if (mode == EtaMode::strict) {
    long double gr = g(r);
    if (gr < 0) {
      if (static_cast<double>(-gr) <= ld_slack(r)) return r;
      std::ostringstream os;
      os << "eta[" << a.name() << "]: no root in [0, r] for r=" << r << ", s=" << s
         << " (theta(r,s)=" << static_cast<double>(a.eval_ld(r, s)) << "); strict range fails";
      raise(Error::Kind::strict_range, os.str());
    }
    hi = r;
  } else {
    hi = std::max(r, 1.0);
    while (g(hi) < 0) {
      lo = hi;
      hi *= 2.0;
      if (hi > kEtaBracketCap) {
        std::ostringstream os;
        os << "eta[" << a.name() << "]: theta(t,s) never reaches r=" << r << " for s=" << s
           << " within the bracket cap";
        raise(Error::Kind::no_root, os.str());
      }
    }
  }

  double t = bisect_monotone(g, lo, hi);
  double resid = std::fabs(static_cast<double>(g(t)));
  if (resid > std::max(kTolEta, 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, r)))
    raise(Error::Kind::invariant,
          "eta[" + a.name() + "]: bisection residual " + std::to_string(resid) +
              " misses tolerance at r=" + std::to_string(r) + ", s=" + std::to_string(s));
  return t;
}

namespace {

// Uncertainty of a root location implied by evaluation noise: where the
// section t -> theta(t, s) is nearly flat, both routes can only pin the root
// to (eval rounding) / slope.
double root_uncertainty(const Action& a, double t, double s, double r) {
  double h = std::max(1e-9, 1e-6 * std::fabs(t));
  double lo = std::max(0.0, t - h);
  long double up = a.eval_ld(t + h, s);
  long double dn = a.eval_ld(lo, s);
  double slope = static_cast<double>(up - dn) / ((t + h) - lo);
  if (!(slope > 0.0)) return std::numeric_limits<double>::infinity();
  double eval_noise = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, r);
  return eval_noise / slope;
}

}  // namespace

double eta(const Action& a, double r, double s, EtaMode mode) {
  double tb = eta_bisect(a, r, s, mode);
  if (auto tc = a.closed_inverse(r, s)) {
    double tol = std::max({kTolClosedVsBisect,
                           64.0 * std::numeric_limits<double>::epsilon() * std::fabs(*tc),
                           root_uncertainty(a, tb, s, r)});
    if (std::fabs(*tc - tb) > tol) {
      std::ostringstream os;
      os << "eta[" << a.name() << "]: closed inverse " << *tc << " and bisection " << tb
         << " disagree at r=" << r << ", s=" << s;
      raise(Error::Kind::invariant, os.str());
    }
    return *tc;
  }
  return tb;
}

// ---------------------------------------------------------------------------
// eta property suite

AxiomReport check_eta_properties(const Action& a, const Sampler& sp) {
  ReportBuilder b;
  b.init(a, sp, {"a1", "a2", "regular", "strict_range", "lemma28", "closed_inverse"});
  auto rng = sp.rng();

  // Sampled image values r = theta(u, u); by construction in Im(theta).
  std::vector<double> rvals;
  for (double u : sp.grid())
    if (u > 0.0) rvals.push_back(a.eval(u, u));
  for (int i = 0; i < 24; ++i) {
    double u = sp.domain_cap * uniform01(rng);
    if (u > 0.0) rvals.push_back(a.eval(u, u));
  }
  std::sort(rvals.begin(), rvals.end());
  rvals.erase(std::unique(rvals.begin(), rvals.end()), rvals.end());

  // (a1) eta(0,0) = 0
  b.tick("a1");
  double t00 = eta(a, 0.0, 0.0, EtaMode::existence);
  if (t00 != 0.0) b.violate("a1", {{"r", 0.0}, {"s", 0.0}}, {{"eta", t00}});

  // (a2) theta(eta(r,s), s) = r on sampled pairs; the tolerance floors at the
  // double ulp scale of r since eval itself rounds there.
  std::vector<double> fracs = {1e-3, 0.1, 0.5, 0.9, 1.0};
  for (int i = 0; i < 4; ++i) fracs.push_back(uniform01(rng));
  for (double r : rvals) {
    if (!(r > 0.0)) continue;
    for (double q : fracs) {
      double s = r * q;
      if (!(s >= 0.0) || s > r) continue;
      b.tick("a2");
      double t;
      try {
        t = eta(a, r, s, EtaMode::existence);
      } catch (const Error&) {
        b.violate("a2", {{"r", r}, {"s", s}}, {{"solvable", 0.0}});
        continue;
      }
      double back = a.eval(t, s);
      double tol = std::max(kTolEta, 16.0 * std::numeric_limits<double>::epsilon() * r);
      if (std::fabs(back - r) > tol)
        b.violate("a2", {{"r", r}, {"s", s}}, {{"eta", t}, {"theta_back", back}});

      // strict-range solvability at the same samples
      b.tick("strict_range");
      double top = static_cast<double>(a.eval_ld(r, s));
      if (!(top >= r))
        b.violate("strict_range", {{"r", r}, {"s", s}}, {{"theta_rs", top}});

      // closed form vs bisection where a closed form exists
      if (a.has_closed_inverse()) {
        if (auto tc = a.closed_inverse(r, s)) {
          b.tick("closed_inverse");
          double tb = eta_bisect(a, r, s, EtaMode::existence);
          double ctol =
              std::max({kTolClosedVsBisect,
                        64.0 * std::numeric_limits<double>::epsilon() * std::fabs(*tc),
                        root_uncertainty(a, tb, s, r)});
          if (std::fabs(*tc - tb) > ctol)
            b.violate("closed_inverse", {{"r", r}, {"s", s}},
                      {{"closed", *tc}, {"bisect", tb}});
        }
      }
    }
  }

  // Regularity: eta(r, r) = 0 for each sampled r.
  for (double r : rvals) {
    if (!(r > 0.0)) continue;
    b.tick("regular");
    try {
      double t = eta(a, r, r, EtaMode::existence);
      if (!(std::fabs(t) <= 1e-9)) b.violate("regular", {{"r", r}}, {{"eta_rr", t}});
    } catch (const Error&) {
      b.violate("regular", {{"r", r}}, {{"solvable", 0.0}});
    }
  }

  // Lemma-style implication: theta(x, b) <= c  =>  x <= eta(c, b) + tol.
  double probed_sup;
  {
    auto sup = a.image_sup();
    probed_sup = sup ? *sup : static_cast<double>(a.eval_ld(kImageSearchCap, kImageSearchCap));
  }
  long target = std::max(1, sp.random_points);
  for (long i = 0; i < target; ++i) {
    double w = sp.domain_cap * uniform01(rng);
    double b1 = a.eval(w, w) * uniform01(rng);  // b below the image sup
    double x = sp.domain_cap * uniform01(rng);
    double v = a.eval(x, b1);
    double cmin = std::max(v, b1);
    double c;
    if (std::isinf(probed_sup)) {
      c = cmin + uniform01(rng) * std::max(cmin, 1.0);
    } else {
      double room = probed_sup * (1.0 - 1e-12) - cmin;
      if (room <= 0.0) continue;
      c = cmin + room * uniform01(rng);
    }
    b.tick("lemma28");
    try {
      double bound = eta(a, c, b1, EtaMode::existence);
      if (!(x <= bound + kTolEta + 1e-9))
        b.violate("lemma28", {{"x", x}, {"b", b1}, {"c", c}}, {{"eta_cb", bound}});
    } catch (const Error&) {
      // outside eta's solvable domain; not a counterexample
    }
  }

  a.set_regular_flag(b.rep.status["regular"] == "pass" ? Flag::yes : Flag::no);
  a.set_strict_range_flag(b.rep.status["strict_range"] == "pass" ? Flag::yes : Flag::no);
  return b.rep;
}

}  // namespace theta::actions
