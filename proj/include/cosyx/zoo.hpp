#pragma once
#include <cstdint>

#include "cosyx/complex.hpp"

namespace cosyx {

// cycle graph on `length` vertices, length >= 3
BasedComplex cycle(int length);

// k-skeleton of the full simplex on n_vertices
BasedComplex simplex_skeleton(int n_vertices, int k);

// full (k-1)-skeleton plus each k-cell kept independently with
// probability p; reproducible for a fixed seed
BasedComplex lm_random(int n_vertices, int k, double p, uint64_t seed);

// point-line incidence graph of the projective plane of order q (q <= 4);
// q = 2 is built from the difference set {1,2,4} mod 7
BasedComplex flag_pg2(int q);

}  // namespace cosyx
