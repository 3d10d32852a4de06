#pragma once
#include <iosfwd>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cosyx/complex.hpp"
#include "cosyx/local.hpp"

namespace cosyx {

/* A cone system assigns to every cell sigma of dimension -1..dim-1 and
   every s in S a chain c_{sigma,s} one dimension up, subject to
       bnd c_{sigma,s} = sigma + sum over faces tau of sigma of c_{tau,s}.
   At the bottom the law reads: the support of c_{empty,s} is odd. The
   complex must be augmented. Entry lookup is cones[k+1][i*s_count+s]
   where (k, i) addresses sigma, so index 0 is the augmentation layer. */
struct ConeSystem {
  long long s_count = 0;
  std::vector<std::vector<Gf2Vector>> cones;

  const Gf2Vector& at(int k, long long i, long long s) const {
    return cones[(size_t)(k + 1)][(size_t)(i * s_count + s)];
  }
};

struct ConeVerdict {
  bool ok = false;
  std::optional<CellRef> sigma;  // first entry violating the law
  long long s = -1;
  std::string what;
};

// Checks the boundary law for every entry; shape defects (missing
// layers, wrong entry counts, wrong chain lengths) are input errors.
ConeVerdict validate_cones(const BasedComplex& x, const ConeSystem& c);

// Full simplex on n >= 2 vertices, augmented, with S the vertex set:
// c_{sigma,v} is the cone vertex v over sigma when v lies outside
// sigma and zero otherwise; c_{empty,v} = {v}.
std::pair<BasedComplex, ConeSystem> simplex_cones(int n);

// (iota_s b)(sigma) = b(c_{sigma,s}); drops degree by one, so b.k >= 0
// and the result can land in the augmentation layer.
Cochain contraction(const BasedComplex& x, const ConeSystem& c, long long s,
                    const Cochain& b);

// theta_k = max over (k+1)-cells sigma of the weight of the entries
// whose cone picks up sigma, averaged over S and normalized by w(sigma):
//   (1 / (|S| w(sigma))) * sum of w(eta) over (eta, s) with sigma in
//   c_{eta,s}. Zero when no cone at level k meets a (k+1)-cell.
Rat theta(const BasedComplex& x, const ConeSystem& c, int k,
          Weight kind = Weight::topcell);

struct ConeCofillResult {
  long long s = -1;             // minimizing contraction, ties to low s
  std::vector<Cochain> gammas;  // gammas[a] cofills betas[a]
  Rat union_norm{0};            // of the gammas at the chosen s
  Rat ratio{0};                 // union_norm over the union norm of betas
  Rat averaged{0};              // mean of the union norms over all s
  Rat theta_k{0};               // certified ceiling: averaged <= theta_k
};

// Jointly cofill equal-degree coboundaries by contracting all of them
// with the single best s. Members must be coboundaries (checked); the
// averaged union norm is checked against theta_k * union norm of the
// input, and every gamma against delta gamma = beta.
ConeCofillResult cofill_via_cones(const BasedComplex& x, const ConeSystem& c,
                                  const std::vector<Cochain>& betas,
                                  Weight kind = Weight::topcell,
                                  int workers = 1);

/* Per-layer cell masks, downward closed; the empty cell is implicitly
   present. layers[k] indexes layer k of the ambient complex. */
struct SubComplex {
  std::vector<Gf2Vector> layers;

  bool has(int k, long long i) const {
    return k == -1 || layers[(size_t)k].get((int)i);
  }
};

/* One group generator: images of every cell, layer by layer, plus the
   induced permutation of S. Cell images must commute with the boundary;
   vertex_gen derives them from a vertex relabeling. */
struct GroupGen {
  std::vector<std::vector<long long>> cell_image;  // [k][i], k = 0..dim
  std::vector<long long> s_image;
};

// Build a generator from images of vertex labels; labels not listed
// stay put. Fails unless the relabeling permutes the cells of x.
GroupGen vertex_gen(const BasedComplex& x,
                    const std::vector<std::pair<int, int>>& images,
                    std::vector<long long> s_image);

/* Candidate building-like structure: generators of a group G and the
   subcomplexes B_{sigma,s} for sigma of dimension -1..nmax-1, stored
   like cone entries: b[k+1][i*s_count+s]. The containment
   sigma in B_{sigma,s} and monotonicity B_{sigma,s} within B_{sigma',s}
   for sigma within sigma' are data requirements, not verdict items. */
struct BuildingLikeData {
  std::vector<GroupGen> gens;
  std::vector<std::vector<SubComplex>> b;
};

struct BuildingLikeReport {
  bool ok = false;          // all three items below
  bool transitive = false;  // G has one orbit on top cells
  long long orbit_size = 0;
  bool equivariant = false;  // g B_{sigma,s} = B_{g sigma, g s}
  // (generator index, sigma, s) of the first mismatch
  std::optional<std::tuple<int, CellRef, long long>> equiv_witness;
  bool homology_ok = false;  // reduced homology of every B vanishes
  // (sigma, s, i) of the first nonzero reduced Betti number
  std::optional<std::tuple<CellRef, long long, int>> hom_witness;
  std::vector<long long> a;     // a[k+1]: orbit mass inside one B, level k
  std::vector<Rat> mubar_bound;  // C(dim+1, k+2) * a_k
};

/* Verify the three building-like conditions on levels -1..nmax-1:
   transitivity on top cells, equivariance of B, and vanishing reduced
   homology H_i(B_{sigma,s}) for -1 <= i <= k = dim sigma. Also computes
   a_k, the largest number of (k+1)-cells of one orbit lying inside a
   single B_{sigma,s}, which caps the collective cofilling constant:
   mubar_k <= C(dim+1, k+2) * a_k when all three items hold. */
BuildingLikeReport check_building_like(const BasedComplex& x, long long s_count,
                                       const BuildingLikeData& d, int nmax);

// Text round trip: "sigma-id s : cell ids" lines for cone entries,
// one-line vertex images for generators.
void write_cones(std::ostream& os, const BasedComplex& x, const ConeSystem& c);
ConeSystem read_cones(std::istream& is, const BasedComplex& x);

}  // namespace cosyx
