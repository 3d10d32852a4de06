#include "cosyx/homology.hpp"

#include "cosyx/tensor.hpp"

namespace cosyx {

long long betti(const BasedComplex& x, int k, bool reduced) {
  if (k == -1) {
    if (!reduced) return 0;
    return x.cells[0].empty() ? 1 : 0;
  }
  if (k < 0 || k > x.dim) return 0;
  long long nk = x.layer_size(k);
  long long rk_down;
  if (k == 0)
    rk_down = (reduced || x.augmented) && !x.cells[0].empty() ? 1 : 0;
  else
    rk_down = rank(x.bnd[k]);
  long long rk_up = k == x.dim ? 0 : rank(x.bnd[k + 1]);
  return nk - rk_down - rk_up;
}

CohomologyBasis cohomology_basis(const BasedComplex& x, int k) {
  if (k < 0 || k > x.dim) fail(Err::input, "cohomology_basis: bad dimension");
  CohomologyBasis out;
  out.k = k;
  int n = (int)x.layer_size(k);
  std::vector<Gf2Vector> z = kernel_basis(x.coboundary_matrix(k));
  std::vector<Gf2Vector> b;
  if (k == 0) {
    if (x.augmented && n > 0) {
      Gf2Vector ones(n);
      for (int i = 0; i < n; ++i) ones.set(i, true);
      b.push_back(ones);
    }
  } else {
    Gf2Matrix dk = x.bnd[k];  // rows of the transpose span the coboundaries
    for (int r = 0; r < dk.rows; ++r) b.push_back(dk.row(r));
    b = echelon_basis(b, n);
  }
  out.dim_z = (long long)z.size();
  out.dim_b = (long long)echelon_basis(b, n).size();
  out.reps = quotient_basis(z, b, n);
  return out;
}

ClassifyResult classify(const BasedComplex& x, const Cochain& a) {
  ClassifyResult out;
  if (!x.apply_coboundary(a).bits.is_zero()) {
    out.cls = CocycleClass::not_cocycle;
    return out;
  }
  int km1 = a.k - 1;
  Gf2Matrix down((int)a.bits.n, 0);
  if (km1 >= -1 && (km1 >= 0 || x.augmented))
    down = x.coboundary_matrix(km1);
  auto sol = solve(down, a.bits);
  if (sol) {
    out.cls = CocycleClass::coboundary;
    out.filling = Cochain{km1, sol->particular};
    return out;
  }
  out.cls = CocycleClass::nontrivial;
  CohomologyBasis hb = cohomology_basis(x, a.k);
  // express the class over [image basis | representatives]
  std::vector<Gf2Vector> b;
  int n = (int)a.bits.n;
  if (a.k == 0) {
    if (x.augmented && n > 0) {
      Gf2Vector ones(n);
      for (int i = 0; i < n; ++i) ones.set(i, true);
      b.push_back(ones);
    }
  } else {
    for (int r = 0; r < x.bnd[a.k].rows; ++r) b.push_back(x.bnd[a.k].row(r));
    b = echelon_basis(b, n);
  }
  Gf2Matrix m(n, (int)(b.size() + hb.reps.size()));
  for (size_t c = 0; c < b.size(); ++c)
    for (int r = 0; r < n; ++r) m.set(r, (int)c, b[c].get(r));
  for (size_t c = 0; c < hb.reps.size(); ++c)
    for (int r = 0; r < n; ++r)
      m.set(r, (int)(b.size() + c), hb.reps[c].get(r));
  auto expand = solve(m, a.bits);
  if (!expand) fail(Err::property, "classify: basis does not span cocycle");
  for (size_t c = 0; c < hb.reps.size(); ++c)
    if (expand->particular.get((int)(b.size() + c)))
      out.coords.push_back((int)c);
  return out;
}

KunnethReport kunneth_check(const BasedComplex& x, const BasedComplex& y,
                            int kmax) {
  for (const BasedComplex* f : {&x, &y})
    if (!f->is_simplicial() && !(f->prod && f->prod->factors_simplicial))
      fail(Err::input,
           "kunneth_check needs simplicial factors or products of them");
  BasedComplex t = tensor(x, y);
  KunnethReport rep;
  rep.ok = true;
  for (int k = 0; k <= kmax; ++k) {
    long long lhs = betti(t, k);
    long long rhs = 0;
    for (int i = 0; i <= k; ++i) rhs += betti(x, i) * betti(y, k - i);
    rep.rows.push_back({k, lhs, rhs});
    if (lhs != rhs) rep.ok = false;
  }
  return rep;
}

}  // namespace cosyx
