#include "theta/fixtures.hpp"

namespace theta::fixtures {

using actions::Kind;
using fixedpoint::CaristiData;
using fixedpoint::Psi;
using fixedpoint::TableMap;
using fixedpoint::TableMultiMap;

FiniteSpace paper_3pt() {
  return FiniteSpace("paper-3pt", {"x", "y", "z"},
                     {{0, 2, 6},
                      {2, 0, 10},
                      {6, 10, 0}});
}

FiniteSpace remark_metric() {
  return FiniteSpace("remark-metric", {"1", "2", "3"},
                     {{0, 1, 1},
                      {1, 0, 2},
                      {1, 2, 0}});
}

CaristiFixture caristi_chain() {
  FiniteSpace sp("caristi-chain", {"p0", "p1", "p2"},
                 {{0, 1, 2},
                  {1, 0, 1},
                  {2, 1, 0}});
  Action a = Action::make(Kind::k_sum, 1.0);
  std::vector<double> phi = {4.0, 2.0, 0.0};
  CaristiData cd{fixedpoint::gamma_identity(), Psi::odd_root_phi(phi, 0)};
  TableMap map = TableMap::make(sp, {1, 2, 2});
  TableMultiMap mm = TableMultiMap::make(sp, {{1, 2}, {2}, {2}});
  return {std::move(sp), std::move(a), std::move(cd), std::move(map), std::move(mm),
          std::move(phi)};
}

CaristiFixture caristi_cuberoot() {
  FiniteSpace sp("caristi-cuberoot", {"p0", "p1", "p2"},
                 {{0, 1, 1.2},
                  {1, 0, 1},
                  {1.2, 1, 0}});
  Action a = Action::make(Kind::root_sum_power, 1.0, 3);
  std::vector<double> phi = {4.0, 2.0, 0.0};
  CaristiData cd{fixedpoint::gamma_identity(), Psi::odd_root_phi(phi, 1)};
  TableMap map = TableMap::make(sp, {1, 2, 2});
  TableMultiMap mm = TableMultiMap::make(sp, {{1, 2}, {2}, {2}});
  return {std::move(sp), std::move(a), std::move(cd), std::move(map), std::move(mm),
          std::move(phi)};
}

BanachFixture banach_5pt() {
  std::vector<double> pos = {1.0, 0.5, 0.25, 0.125, 0.0625};
  std::vector<std::vector<double>> d(5, std::vector<double>(5, 0.0));
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) d[i][j] = std::fabs(pos[i] - pos[j]);
  FiniteSpace sp("banach-5pt", {"q0", "q1", "q2", "q3", "q4"}, d);
  TableMap map = TableMap::make(sp, {1, 2, 3, 4, 4});
  return {std::move(sp), std::move(map)};
}

std::vector<PsiFixture> psi_fixtures() {
  std::vector<PsiFixture> out;
  {
    auto fx = caristi_chain();
    out.push_back({"chain-diff", fx.space.labels(), fx.phi, fx.action,
                   Psi::odd_root_phi(fx.phi, 0)});
  }
  {
    auto fx = caristi_cuberoot();
    out.push_back({"chain-cuberoot", fx.space.labels(), fx.phi, fx.action,
                   Psi::odd_root_phi(fx.phi, 1)});
  }
  {
    std::vector<double> phi = {3.0, 1.0, 0.0};
    out.push_back({"exp-potential", {"u0", "u1", "u2"}, phi,
                   Action::make(Kind::prod_over_one_plus_prod), Psi::exp_phi(phi)});
  }
  return out;
}

std::vector<ValidFixture> valid_fixtures() {
  std::vector<ValidFixture> out;
  out.push_back({paper_3pt(), Action::make(Kind::sum_plus_prod)});
  out.push_back({remark_metric(), Action::make(Kind::k_sum, 1.0)});
  {
    auto fx = caristi_chain();
    out.push_back({std::move(fx.space), std::move(fx.action)});
  }
  {
    auto fx = caristi_cuberoot();
    out.push_back({std::move(fx.space), std::move(fx.action)});
  }
  {
    auto fx = banach_5pt();
    out.push_back({std::move(fx.space), Action::make(Kind::k_sum, 1.0)});
  }
  return out;
}

std::vector<std::string> space_names() {
  return {"paper-3pt", "remark-metric", "caristi-chain", "caristi-cuberoot", "banach-5pt"};
}

std::optional<FiniteSpace> space_by_name(const std::string& name) {
  if (name == "paper-3pt") return paper_3pt();
  if (name == "remark-metric") return remark_metric();
  if (name == "caristi-chain") return caristi_chain().space;
  if (name == "caristi-cuberoot") return caristi_cuberoot().space;
  if (name == "banach-5pt") return banach_5pt().space;
  return std::nullopt;
}

std::optional<TableMap> map_by_name(const std::string& name) {
  if (name == "caristi-chain") return caristi_chain().map;
  if (name == "caristi-cuberoot") return caristi_cuberoot().map;
  if (name == "banach-5pt") return banach_5pt().map;
  return std::nullopt;
}

std::optional<TableMultiMap> multimap_by_name(const std::string& name) {
  if (name == "caristi-chain") return caristi_chain().multimap;
  if (name == "caristi-cuberoot") return caristi_cuberoot().multimap;
  return std::nullopt;
}

std::optional<CaristiFixture> caristi_by_name(const std::string& name) {
  if (name == "caristi-chain") return caristi_chain();
  if (name == "caristi-cuberoot") return caristi_cuberoot();
  return std::nullopt;
}

}  // namespace theta::fixtures
