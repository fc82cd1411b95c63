#pragma once

// B-actions: continuous symmetric binary operations on [0,inf)^2 that
// generalize addition in the triangle inequality. This module houses the
// built-in action catalog, the sampling-based axiom checker, the diagonal
// image-membership probe, and the numeric inverse action eta.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "theta/error.hpp"
#include "theta/numeric.hpp"
#include "theta/sampler.hpp"

namespace theta::actions {

enum class Kind {
  k_sum,                     // k(t+s), k in (0,1]
  k_sum_prod,                // k(t+s+ts), k in (0,1]
  prod_over_one_plus_prod,   // ts/(1+ts)
  root_sum_power,            // (t^n + s^n)^(1/n), n >= 1
  sum_plus_prod,             // t+s+ts
  sum_plus_sqrt_prod,        // t+s+sqrt(ts)
  sum_times_one_plus_prod,   // (t+s)(1+ts)
  generator,                 // lambda * f(t+s), f strictly increasing, f(0)=0, f(t)<t
};

std::string kind_name(Kind k);
std::optional<Kind> kind_from_name(const std::string& name);

enum class Flag { unknown, yes, no };
const char* flag_name(Flag f);

struct GeneratorFn {
  std::string name;
  std::function<double(double)> f;
};

class Action {
public:
  // Built-in kinds; parameter validation raises input errors.
  static Action make(Kind kind, double k = 1.0, int n = 1);

  // Lemma-style constructor from a generator function: eval(t,s) = lambda*f(t+s).
  // Membership of f in the admissible class is sampled (f(0)=0, strictly
  // increasing, f(t)<t); failures raise input errors carrying a witness.
  static Action from_generator(GeneratorFn gen, double lambda,
                               const Sampler& sp = Sampler{});

  double eval(double s, double t) const;  // validates inputs, bitwise symmetric
  long double eval_ld(long double s, long double t) const;  // no input checks

  // Extension of the defining formula to signed arguments where it stays
  // well defined (used by potential checks that admit signed values).
  // nullopt when the kind has no sensible extension at these inputs.
  std::optional<double> eval_signed(double s, double t) const;

  bool has_closed_inverse() const;
  // Closed-form t with eval(t,s)=r; caller guarantees 0<=s<=r and r in Im.
  // nullopt when no closed form applies for these inputs.
  std::optional<double> closed_inverse(double r, double s) const;

  // Supremum of Im(theta): +inf for the unbounded kinds, a finite bound for
  // bounded ones, nullopt when unknown (generator actions).
  std::optional<double> image_sup() const;

  const std::string& name() const { return name_; }
  Kind kind() const { return kind_; }
  double param_k() const { return k_; }
  double param_lambda() const { return lambda_; }
  int param_n() const { return n_; }
  const std::optional<GeneratorFn>& generator_fn() const { return gen_; }

  // Compliance flags: unknown until a check operation sets them.
  Flag regular_flag() const { return regular_flag_; }
  Flag strict_range_flag() const { return strict_range_flag_; }
  void set_regular_flag(Flag f) const { regular_flag_ = f; }
  void set_strict_range_flag(Flag f) const { strict_range_flag_ = f; }

private:
  Action() = default;

  Kind kind_ = Kind::k_sum;
  std::string name_;
  double k_ = 1.0;
  double lambda_ = 1.0;
  int n_ = 1;
  std::optional<GeneratorFn> gen_;
  mutable Flag regular_flag_ = Flag::unknown;
  mutable Flag strict_range_flag_ = Flag::unknown;
};

// The canonical built-in instances exercised by tests and reports.
std::vector<Action> builtin_catalog();

// ---------------------------------------------------------------------------
// Axiom checking

struct AxiomViolation {
  std::string condition;                 // "I", "II", "III_strict_range", ...
  std::map<std::string, double> inputs;  // named sample inputs
  std::map<std::string, double> values;  // named evaluated values
};

struct AxiomReport {
  std::string action;
  std::uint64_t seed = 0;
  int grid_points = 0;
  int random_points = 0;
  double domain_cap = 0;
  std::map<std::string, std::string> status;  // condition -> "pass"/"violated"
  std::map<std::string, long> checks;         // comparisons performed
  std::map<std::string, long> violation_counts;
  std::vector<AxiomViolation> violations;     // capped; counts are complete

  bool pass() const;
};

// Samples conditions (I)-(IV); (III) is reported twice, once requiring the
// root in [0,r] (strict range) and once merely requiring existence.
AxiomReport check_action_axioms(const Action& a, const Sampler& sp);

// True iff the recorded witness still evaluates to a violation.
bool replay_violation(const Action& a, const AxiomViolation& v);

// ---------------------------------------------------------------------------
// Image membership via the diagonal t -> theta(t,t)

struct ImageQuery {
  bool contains = false;
  std::optional<double> witness;  // t with theta(t,t) ~ alpha
  bool approximate = false;       // witness clipped at the search cap
  double attained_sup = 0.0;      // largest diagonal value reached when !contains
};

ImageQuery image_contains(const Action& a, double alpha);
bool image_contains_quick(const Action& a, double alpha);  // membership only

// ---------------------------------------------------------------------------
// Inverse action eta

enum class EtaMode { strict, existence };

// Solves eval(t, s) = r for t by bisection on the monotone section t -> theta(t,s).
// strict mode requires the root in [0, r]; existence mode expands the bracket
// by doubling (capped at 2^64). When a closed-form inverse exists it is
// cross-checked against the bisection and returned.
double eta(const Action& a, double r, double s, EtaMode mode = EtaMode::strict);

// The bisection route alone; the oracle side of the closed-form cross-check.
double eta_bisect(const Action& a, double r, double s, EtaMode mode = EtaMode::strict);

// Checks eta's properties on sampled inputs: eta(0,0)=0, the inverse identity
// theta(eta(r,s),s)=r, regularity eta(r,r)=0, strict-range solvability, and
// the implication theta(x,b) <= c  =>  x <= eta(c,b). Sets the action's
// regular and strict-range flags.
AxiomReport check_eta_properties(const Action& a, const Sampler& sp);

}  // namespace theta::actions
