#pragma once

#include "chabauty/cli/rng.hpp"
#include "chabauty/lattice.hpp"
#include "chabauty/subgroup.hpp"

namespace chabauty::cli {

// Random rational subgroup: up to max_cont continuous and max_disc discrete
// generators with small rational entries.
ElementarySubgroup random_subgroup(TrialRng& rng, const AmbientGroup& g, std::size_t max_cont = 2,
                                   std::size_t max_disc = 3);

// Full-rank integer lattice with entries in [lo, hi].
LatticeBasis random_integer_lattice(TrialRng& rng, std::size_t d, std::int64_t lo, std::int64_t hi);

// Perturbation direction with entries p/32, |p| <= 3.
QMatrix random_direction(TrialRng& rng, std::size_t d);

}  // namespace chabauty::cli
