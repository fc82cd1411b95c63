#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace theta {

// Pinned tolerances and search caps used across the library.
inline constexpr double kTolEta = 1e-12;   // |theta(eta(r,s), s) - r| target
inline constexpr double kTolCmp = 1e-9;    // relative slack on report comparisons
inline constexpr double kTolFix = 1e-8;    // default fixed-point step tolerance
inline constexpr double kTolClosedVsBisect = 1e-9;
inline constexpr double kImageSearchCap = 1e15;             // diagonal probe cap
inline constexpr double kEtaBracketCap = 1.8446744073709552e19;  // 2^64
inline constexpr int kBisectMaxIter = 200;
inline constexpr long long kUniformityIndexCap = 1'000'000'000;

// lhs <= rhs up to a relative slack; used wherever user data meets float noise.
inline bool leq_tol(double lhs, double rhs, double tol = kTolCmp) {
  double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
  return lhs <= rhs + tol * scale;
}

// Deterministic uniform double in [0,1), independent of libstdc++
// distribution internals so reports are bitwise reproducible per seed.
template <typename Rng>
double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Bisection for a nondecreasing g with g(lo) <= 0 <= g(hi). Runs until the
// bracket collapses to adjacent doubles (or max_iter), then returns the
// endpoint with the smaller residual magnitude.
template <typename G>
double bisect_monotone(G&& g, double lo, double hi, int max_iter = kBisectMaxIter) {
  long double glo = g(lo);
  long double ghi = g(hi);
  if (glo == 0) return lo;
  if (ghi == 0) return hi;
  for (int i = 0; i < max_iter; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket exhausted at double precision
    long double gm = g(mid);
    if (gm == 0) return mid;
    if (gm < 0) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
      ghi = gm;
    }
  }
  return (-glo <= ghi) ? lo : hi;
}

}  // namespace theta
