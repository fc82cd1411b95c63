#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "theta/numeric.hpp"

namespace theta::actions {

// Deterministic sample source for axiom and property checks. An identical
// seed + configuration yields a bitwise-identical sample sequence, so every
// report generated from a Sampler is reproducible.
struct Sampler {
  std::uint64_t seed = 42;
  int grid_points = 17;    // per axis; always includes 0 and domain_cap
  int random_points = 256;
  double domain_cap = 1e3;

  std::mt19937_64 rng() const { return std::mt19937_64(seed); }

  // 0 followed by log-spaced points up to domain_cap.
  std::vector<double> grid() const {
    std::vector<double> g;
    g.reserve(static_cast<std::size_t>(grid_points));
    g.push_back(0.0);
    int m = grid_points - 1;
    for (int i = 0; i < m; ++i) {
      double expo = (m == 1) ? 0.0 : -6.0 * (1.0 - static_cast<double>(i) / (m - 1));
      g.push_back(domain_cap * std::pow(10.0, expo));
    }
    return g;
  }

  // Grid plus seeded uniform values in [0, domain_cap].
  std::vector<double> values() const {
    std::vector<double> v = grid();
    auto gen = rng();
    for (int i = 0; i < random_points; ++i) v.push_back(domain_cap * uniform01(gen));
    return v;
  }
};

}  // namespace theta::actions
