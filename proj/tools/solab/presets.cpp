// solab: the committed preset scenarios.
#include "scenario.hpp"

namespace solab {

const std::vector<PresetInfo>& list_presets() {
  static const std::vector<PresetInfo> presets = {
      {"gaussian-shrinker",
       "Gaussian soliton, normalized flow from the self-shrinker radius 2 with "
       "the full certification battery",
       "# Gaussian soliton: normalized flow started on the self-shrinking\n"
       "# sphere, certified end to end.\n"
       "[soliton]\n"
       "name = gaussian\n"
       "n = 3\n"
       "[flow]\n"
       "kind = normalized\n"
       "rho0 = 2.0\n"
       "s_max = 40.0\n"
       "ds_out = 0.01\n"
       "[checks]\n"
       "checks = residuals, monotonicity, half_weight, second_derivative, "
       "type_one, limit\n"
       "[output]\n"
       "dir = out/gaussian-shrinker\n"},
      {"cap-halfheight",
       "Projected-cap soliton (eps = 1/2, n = 3), normalized flow from the "
       "half-height f-minimal radius 1/sqrt(3)",
       "# Projected cap at eps = 1/2: normalized flow seeded on the\n"
       "# half-height f-minimal sphere r = 1/sqrt(3).\n"
       "[soliton]\n"
       "name = cap_projected\n"
       "n = 3\n"
       "eps = 0.5\n"
       "[flow]\n"
       "kind = normalized\n"
       "rho0 = 0.57735026918962584\n"
       "s_max = 5.0\n"
       "ds_out = 0.01\n"
       "[checks]\n"
       "checks = limit, type_one\n"
       "[output]\n"
       "dir = out/cap-halfheight\n"},
      {"flat-extinction",
       "Flat static fixture, background flow of the radius-2 sphere toward "
       "its t = 1 extinction",
       "# Flat background: round sphere of radius 2 flowing to extinction\n"
       "# at t = 1 (closed form rho^2 = 4 - 4t).\n"
       "[soliton]\n"
       "name = flat\n"
       "n = 3\n"
       "[flow]\n"
       "kind = background\n"
       "rho0 = 2.0\n"
       "t0 = 0.0\n"
       "t1 = 0.9999\n"
       "ds_out = 0.01\n"
       "[checks]\n"
       "checks = type_one\n"
       "[output]\n"
       "dir = out/flat-extinction\n"},
      {"reduced-distance-flat",
       "Flat static fixture: seeded random endpoint pairs checking the "
       "reduced distance against d^2/(4 tau)",
       "# Flat background reduced-distance exactness: ell must reproduce\n"
       "# d^2/(4 tau) for random endpoint pairs.\n"
       "[soliton]\n"
       "name = flat\n"
       "n = 3\n"
       "[flow]\n"
       "kind = background\n"
       "rho0 = 2.0\n"
       "t0 = 0.0\n"
       "t1 = 0.5\n"
       "ds_out = 0.01\n"
       "[checks]\n"
       "checks = reduced_distance\n"
       "[output]\n"
       "dir = out/reduced-distance-flat\n"}};
  return presets;
}

const PresetInfo* find_preset(const std::string& name) {
  for (const auto& p : list_presets())
    if (p.name == name) return &p;
  return nullptr;
}

}  // namespace solab
