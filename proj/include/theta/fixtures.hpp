#pragma once

// Bundled fixtures so validation and fixed-point runs need no external files.

#include <optional>
#include <string>
#include <vector>

#include "theta/fixedpoint.hpp"
#include "theta/space.hpp"

namespace theta::fixtures {

using actions::Action;
using spaces::FiniteSpace;

// Three points with d(x,y)=2, d(x,z)=6, d(z,y)=10; not a metric, but a
// theta-metric under sum_plus_prod.
FiniteSpace paper_3pt();

// Three points with d(1,2)=1, d(1,3)=1, d(2,3)=2; a metric, but not a
// theta-metric under k_sum with k=1/2.
FiniteSpace remark_metric();

struct CaristiFixture {
  FiniteSpace space;
  Action action;
  fixedpoint::CaristiData caristi;
  fixedpoint::TableMap map;            // T(p_i) = p_{i+1}, last point fixed
  fixedpoint::TableMultiMap multimap;  // multivalued variant
  std::vector<double> phi;
};

// Unit chain p0-p1-p2 under t+s with phi = (4, 2, 0) and psi = phi-difference.
CaristiFixture caristi_chain();

// Chain with d01=d12=1, d02=1.2 under the cube-root action, psi the cube root
// of the phi-difference.
CaristiFixture caristi_cuberoot();

struct BanachFixture {
  FiniteSpace space;
  fixedpoint::TableMap map;  // contraction with factor 1/2 toward the last point
};

// Five points on the halving line 2^0 .. 2^-4.
BanachFixture banach_5pt();

// Psi fixtures for potential-inequality properties; no distance matrix needed.
struct PsiFixture {
  std::string name;
  std::vector<std::string> labels;
  std::vector<double> phi;
  Action action;
  fixedpoint::Psi psi;
};

std::vector<PsiFixture> psi_fixtures();

// (space, companion action) pairs that validate cleanly; used by topology
// witness sweeps.
struct ValidFixture {
  FiniteSpace space;
  Action action;
};
std::vector<ValidFixture> valid_fixtures();

std::vector<std::string> space_names();
std::optional<FiniteSpace> space_by_name(const std::string& name);
std::optional<fixedpoint::TableMap> map_by_name(const std::string& name);
std::optional<fixedpoint::TableMultiMap> multimap_by_name(const std::string& name);
// Caristi data plus its companion action for the named fixture.
std::optional<CaristiFixture> caristi_by_name(const std::string& name);

}  // namespace theta::fixtures
