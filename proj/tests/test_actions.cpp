#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "theta/action.hpp"

using namespace theta;
using namespace theta::actions;

namespace {

// Independent root-finding oracle for theta(t, s) = r: plain interval halving
// against an explicitly written formula, sharing no code with the library.
double oracle_eta(const std::function<double(double, double)>& th, double r, double s) {
  double lo = 0.0, hi = std::max(r, 1.0);
  while (th(hi, s) < r) hi *= 2.0;
  for (int i = 0; i < 500; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (th(mid, s) < r ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

const AxiomViolation* find_violation(const AxiomReport& rep, const std::string& cond) {
  for (const auto& v : rep.violations)
    if (v.condition == cond) return &v;
  return nullptr;
}

}  // namespace

TEST_CASE("eval: worked values and shared facts") {
  auto spp = Action::make(Kind::sum_plus_prod);
  CHECK(spp.eval(2.0, 6.0) == 20.0);

  auto root2 = Action::make(Kind::root_sum_power, 1.0, 2);
  CHECK(root2.eval(3.0, 4.0) == 5.0);

  for (const auto& a : builtin_catalog()) {
    CAPTURE(a.name());
    CHECK(a.eval(0.0, 0.0) == 0.0);
  }
}

TEST_CASE("eval: input validation") {
  auto a = Action::make(Kind::k_sum, 1.0);
  CHECK_THROWS_AS(a.eval(-1.0, 2.0), Error);
  CHECK_THROWS_AS(a.eval(1.0, std::nan("")), Error);
  CHECK_THROWS_AS(a.eval(std::numeric_limits<double>::infinity(), 0.0), Error);
}

TEST_CASE("eval: bitwise symmetry on random pairs") {
  std::mt19937_64 rng(7);
  for (const auto& a : builtin_catalog()) {
    CAPTURE(a.name());
    for (int i = 0; i < 2000; ++i) {
      double s = 1e3 * uniform01(rng);
      double t = 1e3 * uniform01(rng);
      CHECK(a.eval(s, t) == a.eval(t, s));
    }
  }
}

TEST_CASE("axioms: plain sum passes everything including the strict range") {
  auto rep = check_action_axioms(Action::make(Kind::k_sum, 1.0), Sampler{});
  CHECK(rep.pass());
  CHECK(rep.status.at("III_strict_range") == "pass");
}

TEST_CASE("axioms: prod/(1+prod) ties along the zero line violate (II)") {
  auto a = Action::make(Kind::prod_over_one_plus_prod);
  // the targeted fact first: theta(0,3) = theta(0,5) = 0
  CHECK(a.eval(3.0, 0.0) == 0.0);
  CHECK(a.eval(5.0, 0.0) == 0.0);

  auto rep = check_action_axioms(a, Sampler{});
  CHECK(rep.status.at("II") == "violated");
  const auto* v = find_violation(rep, "II");
  REQUIRE(v != nullptr);
  CHECK(replay_violation(a, *v));
}

TEST_CASE("axioms: k(t+s) with k=1/4 fails the strict range of (III) but not existence") {
  auto a = Action::make(Kind::k_sum, 0.25);
  auto rep = check_action_axioms(a, Sampler{});
  CHECK(rep.status.at("III_strict_range") == "violated");
  CHECK(rep.status.at("III_existence") == "pass");
  CHECK(rep.status.at("II") == "pass");
  const auto* v = find_violation(rep, "III_strict_range");
  REQUIRE(v != nullptr);
  CHECK(replay_violation(a, *v));

  // closed-form instance: k(t+s)=r at r=1, s=0.1 needs t = 3.9 > r
  CHECK_THROWS_AS(eta(a, 1.0, 0.1, EtaMode::strict), Error);
  CHECK(eta(a, 1.0, 0.1, EtaMode::existence) == doctest::Approx(3.9).epsilon(1e-12));
}

TEST_CASE("axiom violations replay") {
  for (const auto& a : builtin_catalog()) {
    auto rep = check_action_axioms(a, Sampler{});
    for (const auto& v : rep.violations) {
      CAPTURE(a.name());
      CAPTURE(v.condition);
      CHECK(replay_violation(a, v));
    }
  }
}

TEST_CASE("image membership via the diagonal") {
  auto a = Action::make(Kind::prod_over_one_plus_prod);

  auto q = image_contains(a, 0.5);
  CHECK(q.contains);
  REQUIRE(q.witness.has_value());
  CHECK(*q.witness == doctest::Approx(1.0).epsilon(1e-9));  // t^2/(1+t^2) = 1/2 at t = 1

  auto q2 = image_contains(a, 1.2);  // Im = [0, 1)
  CHECK_FALSE(q2.contains);
  CHECK(q2.attained_sup <= 1.0);

  auto q3 = image_contains(a, 0.0);
  CHECK(q3.contains);
  CHECK(*q3.witness == 0.0);

  CHECK_FALSE(image_contains_quick(a, 1.0));  // sup not attained

  // unknown-sup path: bounded generator image
  auto gen = Action::from_generator({"rational", [](double t) { return t / (1.0 + t); }}, 0.5);
  auto q4 = image_contains(gen, 0.6);  // sup is 0.5
  CHECK_FALSE(q4.contains);
  CHECK(q4.attained_sup == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(image_contains_quick(gen, 0.4));
}

TEST_CASE("eta: worked inverse values") {
  CHECK(eta(Action::make(Kind::k_sum, 1.0), 10.0, 4.0) == 6.0);
  CHECK(eta(Action::make(Kind::root_sum_power, 1.0, 2), 5.0, 4.0) == 3.0);
  CHECK(eta(Action::make(Kind::sum_plus_prod), 20.0, 6.0) == 2.0);
  // cross-checked against the independent oracle
  CHECK(oracle_eta([](double t, double s) { return t + s + t * s; }, 20.0, 6.0) ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(eta(Action::make(Kind::k_sum, 1.0), 0.0, 0.0) == 0.0);
}

TEST_CASE("eta: domain, image and no-root errors") {
  auto sum = Action::make(Kind::k_sum, 1.0);
  CHECK_THROWS_WITH_AS(eta(sum, 4.0, 10.0), doctest::Contains("exceeds"), Error);

  auto prod = Action::make(Kind::prod_over_one_plus_prod);
  CHECK_THROWS_AS(eta(prod, 1.2, 0.5), Error);  // r outside Im
  // theta(t, 0) == 0 for all t: no root in either mode
  CHECK_THROWS_AS(eta(prod, 0.5, 0.0, EtaMode::strict), Error);
  CHECK_THROWS_AS(eta(prod, 0.5, 0.0, EtaMode::existence), Error);
  // interior points solve fine, though only beyond r: t = r/(s(1-r)) = 4
  CHECK_THROWS_AS(eta(prod, 0.5, 0.25, EtaMode::strict), Error);
  CHECK(eta(prod, 0.5, 0.25, EtaMode::existence) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("eta properties: regularity flags across the catalog") {
  Sampler sp;
  for (const auto& a : builtin_catalog()) {
    auto rep = check_eta_properties(a, sp);
    CAPTURE(a.name());
    CHECK(rep.status.at("a1") == "pass");
    CHECK(rep.status.at("a2") == "pass");
    CHECK(rep.status.at("lemma28") == "pass");
    CHECK(rep.status.at("closed_inverse") == "pass");

    bool expect_regular;
    switch (a.kind()) {
      case Kind::k_sum:
      case Kind::k_sum_prod:
        expect_regular = a.param_k() == 1.0;
        break;
      case Kind::prod_over_one_plus_prod:
      case Kind::generator:
        expect_regular = false;
        break;
      default:
        expect_regular = true;
        break;
    }
    CHECK(a.regular_flag() == (expect_regular ? Flag::yes : Flag::no));
  }
}

TEST_CASE("eta properties: the paper-style examples stay regular") {
  Sampler sp;
  auto sum = Action::make(Kind::k_sum, 1.0);
  check_eta_properties(sum, sp);
  CHECK(sum.regular_flag() == Flag::yes);
  for (int n : {2, 3, 5}) {
    auto root = Action::make(Kind::root_sum_power, 1.0, n);
    check_eta_properties(root, sp);
    CAPTURE(n);
    CHECK(root.regular_flag() == Flag::yes);
  }
}

TEST_CASE("lemma-style implication: direct instance") {
  auto sum = Action::make(Kind::k_sum, 1.0);
  CHECK(sum.eval(5.9, 4.0) == doctest::Approx(9.9));
  CHECK(sum.eval(5.9, 4.0) <= 10.0);
  CHECK(5.9 <= eta(sum, 10.0, 4.0));
}

TEST_CASE("property: inverse consistency and antitone behavior") {
  std::mt19937_64 rng(11);
  for (const auto& a : builtin_catalog()) {
    CAPTURE(a.name());
    for (int i = 0; i < 400; ++i) {
      double u = 1e3 * uniform01(rng);
      if (u <= 0.0) continue;
      double r = a.eval(u, u);
      double q1 = uniform01(rng), q2 = uniform01(rng);
      double s1 = r * std::min(q1, q2);
      double s2 = r * std::max(q1, q2);
      if (!(s1 > 0.0) || !(s2 > s1)) continue;
      double t1, t2;
      try {
        t1 = eta(a, r, s1, EtaMode::existence);
        t2 = eta(a, r, s2, EtaMode::existence);
      } catch (const Error&) {
        continue;  // outside the solvable domain for this action
      }
      double back = a.eval(t1, s1);
      CHECK(std::fabs(back - r) <=
            std::max(kTolEta, 16 * std::numeric_limits<double>::epsilon() * r));
      // fixed r: larger s gives a smaller (or equal) inverse
      CHECK(t1 >= t2 - 1e-9 * std::max(1.0, t1));
    }
  }
}

TEST_CASE("property: inverse uniqueness under strict monotonicity") {
  std::mt19937_64 rng(13);
  auto spp = Action::make(Kind::sum_plus_prod);
  for (int i = 0; i < 200; ++i) {
    double u = 100.0 * uniform01(rng);
    if (u <= 0.0) continue;
    double r = spp.eval(u, u);
    double s = r * std::max(uniform01(rng), 1e-3);
    double t = eta(spp, r, s);
    // any t' whose image is within tol_eta of r must be within a narrow band of t
    double slope = 1.0 + s;  // d/dt (t+s+ts)
    double width = kTolEta / slope + 1e-12;
    for (double off : {-2.0 * width, 2.0 * width}) {
      double tp = t + off;
      if (tp < 0.0) continue;
      CHECK(std::fabs(spp.eval(tp, s) - r) > kTolEta);
    }
  }
}

TEST_CASE("generator actions: membership validation and catalog agreement") {
  auto half = Action::from_generator({"half", [](double t) { return 0.5 * t; }}, 1.0);
  auto ksum = Action::make(Kind::k_sum, 0.5);
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    double s = 1e3 * uniform01(rng), t = 1e3 * uniform01(rng);
    CHECK(half.eval(s, t) == doctest::Approx(ksum.eval(s, t)).epsilon(1e-15));
  }

  CHECK_THROWS_WITH_AS(
      Action::from_generator({"half", [](double t) { return 0.5 * t; }}, 0.0),
      doctest::Contains("lambda=0"), Error);
  CHECK_THROWS_AS(Action::from_generator({"half", [](double t) { return 0.5 * t; }}, 1.5),
                  Error);
  CHECK_THROWS_AS(Action::from_generator({"id", [](double t) { return t; }}, 0.5), Error);
  CHECK_THROWS_AS(Action::from_generator({"const", [](double) { return 0.0; }}, 0.5), Error);
  CHECK_THROWS_AS(Action::from_generator({"shift", [](double t) { return t + 1.0; }}, 0.5),
                  Error);

  auto rational = Action::from_generator({"rational", [](double t) { return t / (1.0 + t); }}, 0.5);
  auto rep = check_action_axioms(rational, Sampler{});
  CHECK(rep.status.at("I") == "pass");
  CHECK(rep.status.at("IV") == "pass");
  CHECK(rep.status.at("II") == "pass");

  // distinct generators act differently somewhere
  bool differ = false;
  for (int i = 0; i < 100 && !differ; ++i) {
    double s = 10.0 * i / 100.0;
    differ = std::fabs(half.eval(s, 1.0) - rational.eval(s, 1.0)) > 1e-9;
  }
  CHECK(differ);
}

TEST_CASE("eta-report violations replay too") {
  Sampler sp;
  for (const auto& a : builtin_catalog()) {
    auto rep = check_eta_properties(a, sp);
    for (const auto& v : rep.violations) {
      CAPTURE(a.name());
      CAPTURE(v.condition);
      CHECK(replay_violation(a, v));
    }
  }
}

TEST_CASE("identical sampler configuration reproduces reports bitwise") {
  Sampler sp;
  sp.seed = 123;
  auto a = Action::make(Kind::prod_over_one_plus_prod);
  auto r1 = check_action_axioms(a, sp);
  auto r2 = check_action_axioms(a, sp);
  CHECK(r1.status == r2.status);
  CHECK(r1.violation_counts == r2.violation_counts);
  REQUIRE(r1.violations.size() == r2.violations.size());
  for (std::size_t i = 0; i < r1.violations.size(); ++i) {
    CHECK(r1.violations[i].inputs == r2.violations[i].inputs);
    CHECK(r1.violations[i].values == r2.violations[i].values);
  }
}

TEST_CASE("closed inverse agrees with the bisection oracle everywhere sampled") {
  std::mt19937_64 rng(19);
  for (const auto& a : builtin_catalog()) {
    if (!a.has_closed_inverse()) continue;
    CAPTURE(a.name());
    for (int i = 0; i < 500; ++i) {
      double u = 1e3 * uniform01(rng);
      if (u <= 0.0) continue;
      double r = a.eval(u, u);
      // keep the prod/(1+prod) samples away from its supremum, where the
      // section is flat and the root location is ill-conditioned
      if (a.kind() == Kind::prod_over_one_plus_prod && r > 0.99) r = 0.99;
      double s = r * std::max(uniform01(rng), 0.05);
      auto closed = a.closed_inverse(r, s);
      if (!closed) continue;
      double tb = eta_bisect(a, r, s, EtaMode::existence);
      CHECK(std::fabs(*closed - tb) <=
            std::max(kTolClosedVsBisect, 1e-12 * std::fabs(*closed)));
    }
  }
}
