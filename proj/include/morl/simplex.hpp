#pragma once

#include <vector>

#include "morl/rng.hpp"
#include "morl/types.hpp"

namespace morl {

// Uniform draw from the (D-1)-simplex: D unit-rate exponentials normalized
// by their sum (flat Dirichlet).
WeightVector sample_simplex_uniform(RngStream& rng, std::size_t dim);

// The lattice { h/H : h in Z^D_{>=0}, sum h = H }, with granularity H chosen
// so the point count C(H+D-1, D-1) is closest to n_target (ties toward the
// smaller H). Output is sorted lexicographically descending, so the vertex
// e_0 comes first.
std::vector<WeightVector> simplex_lattice(std::size_t dim, std::size_t n_target);

// Number of lattice points for a given granularity, saturating instead of
// overflowing.
std::uint64_t simplex_lattice_count(std::size_t dim, std::uint64_t granularity);

}  // namespace morl
