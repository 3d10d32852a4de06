#pragma once
#include <optional>

#include "cosyx/complex.hpp"

namespace cosyx {

// dim ker boundary_k - rank boundary_{k+1}; reduced uses the augmentation
// row regardless of the complex's own flag
long long betti(const BasedComplex& x, int k, bool reduced = false);

struct CohomologyBasis {
  int k = 0;
  long long dim_z = 0, dim_b = 0;
  std::vector<Gf2Vector> reps;  // canonical coset representatives
};

CohomologyBasis cohomology_basis(const BasedComplex& x, int k);

enum class CocycleClass { not_cocycle, coboundary, nontrivial };

struct ClassifyResult {
  CocycleClass cls = CocycleClass::not_cocycle;
  std::optional<Cochain> filling;  // when coboundary
  std::vector<int> coords;         // when nontrivial, over cohomology_basis
};

ClassifyResult classify(const BasedComplex& x, const Cochain& a);

struct KunnethRow {
  int k;
  long long product_betti, convolved_betti;
};

struct KunnethReport {
  bool ok = false;
  std::vector<KunnethRow> rows;
};

KunnethReport kunneth_check(const BasedComplex& x, const BasedComplex& y,
                            int kmax);

}  // namespace cosyx
