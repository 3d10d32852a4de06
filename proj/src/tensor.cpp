#include "cosyx/tensor.hpp"

#include <algorithm>
#include <map>

namespace cosyx {

namespace {

bool simplicial_leaves(const BasedComplex& c) {
  if (c.prod) return c.prod->factors_simplicial;
  return c.is_simplicial();
}

}  // namespace

BasedComplex tensor(const BasedComplex& x, const BasedComplex& y) {
  for (const BasedComplex* f : {&x, &y})
    if (f->cells.empty() || f->cells[0].empty())
      fail(Err::input, "tensor factor has no vertices");
  int d = x.dim + y.dim;
  BasedComplex t;
  t.dim = d;
  t.augmented = false;
  t.cells.assign(d + 1, {});
  t.bnd.assign(d + 1, {});

  ProductInfo pi;
  for (int i = 0; i <= x.dim; ++i) pi.xsizes.push_back(x.layer_size(i));
  for (int j = 0; j <= y.dim; ++j) pi.ysizes.push_back(y.layer_size(j));
  pi.bigrade.assign(d + 1, {});
  pi.multi.assign(d + 1, {});
  pi.factors_simplicial = simplicial_leaves(x) && simplicial_leaves(y);

  bool labeled = x.is_labeled() && y.is_labeled();
  std::map<int, int> xv, yv;  // vertex label -> vertex index
  if (labeled) {
    for (size_t i = 0; i < x.cells[0].size(); ++i)
      xv[x.cells[0][i].verts[0]] = (int)i;
    for (size_t i = 0; i < y.cells[0].size(); ++i)
      yv[y.cells[0][i].verts[0]] = (int)i;
  }
  long long ny0 = y.layer_size(0);

  // offsets[k][i - lo(k)] = first index of block (i, k - i)
  std::vector<std::vector<long long>> offsets(d + 1);
  auto lo = [&](int k) { return std::max(0, k - y.dim); };
  auto hi = [&](int k) { return std::min(x.dim, k); };
  for (int k = 0; k <= d; ++k) {
    long long at = 0;
    for (int i = lo(k); i <= hi(k); ++i) {
      offsets[k].push_back(at);
      at += x.layer_size(i) * y.layer_size(k - i);
    }
  }
  auto cell_at = [&](int k, int i, long long xi, long long yi) {
    return offsets[k][i - lo(k)] + xi * y.layer_size(k - i) + yi;
  };

  for (int k = 0; k <= d; ++k) {
    for (int i = lo(k); i <= hi(k); ++i) {
      int j = k - i;
      for (long long xi = 0; xi < x.layer_size(i); ++xi)
        for (long long yi = 0; yi < y.layer_size(j); ++yi) {
          const Cell& cx = x.cells[i][xi];
          const Cell& cy = y.cells[j][yi];
          Cell c;
          c.id = "(" + cx.id + "x" + cy.id + ")";
          if (labeled) {
            for (int u : cx.verts)
              for (int v : cy.verts)
                c.verts.push_back((int)(xv[u] * ny0 + yv[v]));
            std::sort(c.verts.begin(), c.verts.end());
          }
          t.cells[k].push_back(std::move(c));
          pi.bigrade[k].push_back({i, j});
          std::vector<int> m;
          if (x.prod)
            m = x.prod->multi[i][xi];
          else
            m = {i};
          if (y.prod) {
            const auto& ym = y.prod->multi[j][yi];
            m.insert(m.end(), ym.begin(), ym.end());
          } else {
            m.push_back(j);
          }
          pi.multi[k].push_back(std::move(m));
        }
    }
  }

  for (int k = 1; k <= d; ++k) {
    Gf2Matrix m((int)t.cells[k - 1].size(), (int)t.cells[k].size());
    for (int i = lo(k); i <= hi(k); ++i) {
      int j = k - i;
      for (long long xi = 0; xi < x.layer_size(i); ++xi)
        for (long long yi = 0; yi < y.layer_size(j); ++yi) {
          long long col = cell_at(k, i, xi, yi);
          if (i >= 1)
            for (int xb : x.bnd_support(i, (int)xi))
              m.set((int)cell_at(k - 1, i - 1, xb, yi), (int)col, true);
          if (j >= 1)
            for (int yb : y.bnd_support(j, (int)yi))
              m.set((int)cell_at(k - 1, i, xi, yb), (int)col, true);
        }
    }
    t.bnd[k] = std::move(m);
  }
  t.prod = std::move(pi);
  return t;
}

BasedComplex tensor_power(const BasedComplex& x, int m) {
  if (m < 1) fail(Err::input, "tensor_power needs m >= 1");
  BasedComplex t = x;
  for (int i = 1; i < m; ++i) t = tensor(t, x);
  return t;
}

std::pair<long long, long long> block_span(const BasedComplex& t, int i,
                                           int j) {
  if (!t.prod) fail(Err::input, "not a tensor product");
  int k = i + j;
  if (k < 0 || k > t.dim || i < 0 || j < 0)
    fail(Err::input, "block out of range");
  const auto& bg = t.prod->bigrade[k];
  long long at = -1, n = 0;
  for (long long c = 0; c < (long long)bg.size(); ++c)
    if (bg[c] == std::make_pair(i, j)) {
      if (at < 0) at = c;
      ++n;
    }
  if (at < 0) at = 0;
  return {at, n};
}

Cochain component(const BasedComplex& t, const Cochain& a, int i, int j) {
  if (!t.prod) fail(Err::input, "not a tensor product");
  if (a.k != i + j) fail(Err::input, "component bigrade mismatch");
  Cochain out = t.zero_cochain(a.k);
  const auto& bg = t.prod->bigrade[a.k];
  for (int c : a.bits.support())
    if (bg[c] == std::make_pair(i, j)) out.bits.set(c, true);
  return out;
}

Gf2Matrix block_matrix(const BasedComplex& t, const Cochain& a, int i,
                       int j) {
  if (!t.prod || t.prod->xsizes.empty())
    fail(Err::input, "matrix view needs an in-memory product");
  if (a.k != i + j) fail(Err::input, "block bigrade mismatch");
  auto [at, n] = block_span(t, i, j);
  long long rows = t.prod->xsizes[i], cols = t.prod->ysizes[j];
  if (n != rows * cols) fail(Err::input, "block extent mismatch");
  Gf2Matrix m((int)rows, (int)cols);
  for (long long c = 0; c < n; ++c)
    if (a.bits.get((int)(at + c)))
      m.set((int)(c / cols), (int)(c % cols), true);
  return m;
}

Cochain from_block_matrix(const BasedComplex& t, const Gf2Matrix& m, int i,
                          int j) {
  if (!t.prod || t.prod->xsizes.empty())
    fail(Err::input, "matrix view needs an in-memory product");
  auto [at, n] = block_span(t, i, j);
  long long rows = t.prod->xsizes[i], cols = t.prod->ysizes[j];
  if (m.rows != rows || m.cols != cols || n != rows * cols)
    fail(Err::input, "block extent mismatch");
  Cochain a = t.zero_cochain(i + j);
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      if (m.get(r, c)) a.bits.set((int)(at + r * cols + c), true);
  return a;
}

}  // namespace cosyx
