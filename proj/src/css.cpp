#include "cosyx/css.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <thread>

#include "cosyx/homology.hpp"
#include "cosyx/tensor.hpp"
#include "cosyx/util.hpp"
#include "cosyx/zoo.hpp"

namespace cosyx {
namespace {

// Minimum Hamming weight over ker(a) minus the row space of b; the
// rows of b must lie in ker(a). Enumerates the kernel along a Gray
// walk, skipping vectors whose quotient coordinates all vanish.
std::optional<long long> min_coset_weight(const Gf2Matrix& a,
                                          const Gf2Matrix& b, int budget,
                                          int workers) {
  int n = a.cols;
  Echelon ech(n);
  std::vector<Gf2Vector> basis;
  for (int r = 0; r < b.rows; ++r) {
    Gf2Vector v = b.row(r);
    if (ech.insert(v)) basis.push_back(b.row(r));
  }
  int wdim = (int)basis.size();
  for (const Gf2Vector& v : kernel_basis(a))
    if (ech.insert(v)) basis.push_back(v);
  int z = (int)basis.size();
  if (z == wdim) return std::nullopt;
  if (z >= 63 || z > budget) return std::nullopt;

  uint64_t total = 1ull << z;
  auto scan = [&](uint64_t lo, uint64_t hi, long long& out) {
    long long best = (long long)n + 1;
    if (lo < hi) {
      Gf2Vector cur(n);
      uint64_t g = lo ^ (lo >> 1);
      int qbits = 0;
      for (int t = 0; t < z; ++t)
        if ((g >> t) & 1) {
          cur ^= basis[(size_t)t];
          if (t >= wdim) ++qbits;
        }
      if (qbits > 0) best = std::min(best, (long long)cur.popcount());
      for (uint64_t idx = lo + 1; idx < hi; ++idx) {
        uint64_t g2 = idx ^ (idx >> 1);
        int t = std::countr_zero(g ^ g2);
        cur ^= basis[(size_t)t];
        if (t >= wdim) qbits += ((g2 >> t) & 1) ? 1 : -1;
        g = g2;
        if (qbits > 0) {
          long long w = cur.popcount();
          if (w < best) best = w;
        }
      }
    }
    out = best;
  };

  int nw = std::max(1, std::min<int>(workers, 16));
  long long best = (long long)n + 1;
  if (nw == 1 || total < 1024) {
    scan(0, total, best);
  } else {
    std::vector<long long> part((size_t)nw, 0);
    std::vector<std::thread> pool;
    for (int t = 0; t < nw; ++t)
      pool.emplace_back(scan, total / nw * t,
                        t + 1 == nw ? total : total / nw * (t + 1),
                        std::ref(part[(size_t)t]));
    for (auto& th : pool) th.join();
    for (long long v : part) best = std::min(best, v);
  }
  return best;
}

std::pair<long long, long long> weight_maxima(const Gf2Matrix& m) {
  long long rmax = 0, cmax = 0;
  for (int r = 0; r < m.rows; ++r)
    rmax = std::max(rmax, (long long)m.row(r).popcount());
  std::vector<long long> col((size_t)m.cols, 0);
  for (int r = 0; r < m.rows; ++r)
    for (int c : m.row(r).support()) ++col[(size_t)c];
  for (long long v : col) cmax = std::max(cmax, v);
  return {rmax, cmax};
}

}  // namespace

CssCode from_complex(const BasedComplex& x, int k, const std::string& source) {
  if (k < 1 || k > x.dim)
    fail(Err::input, "css: degree must lie between 1 and the dimension");
  CssCode c;
  c.k = k;
  c.source = source;
  c.n = x.layer_size(k);
  c.hx = x.boundary_matrix(k);
  c.hz = k < x.dim ? x.boundary_matrix(k + 1).transposed()
                   : Gf2Matrix(0, (int)c.n);
  if (!c.hx.mul(c.hz.transposed()).is_zero())
    fail(Err::property, "css: parity checks are not orthogonal");
  c.k_dim = c.n - rank(c.hx) - rank(c.hz);
  return c;
}

CodeParams code_params(CssCode& code, int budget, int workers) {
  if (code.hx.cols != code.n || code.hz.cols != code.n)
    fail(Err::input, "css: parity checks do not match the length");
  if (!code.hx.mul(code.hz.transposed()).is_zero())
    fail(Err::property, "css: parity checks are not orthogonal");
  CodeParams p;
  std::tie(p.hx_row_max, p.hx_col_max) = weight_maxima(code.hx);
  std::tie(p.hz_row_max, p.hz_col_max) = weight_maxima(code.hz);
  p.dx = min_coset_weight(code.hx, code.hz, budget, workers);
  p.dz = min_coset_weight(code.hz, code.hx, budget, workers);
  if (p.dx && p.dz) p.d = std::min(*p.dx, *p.dz);
  code.dx = p.dx;
  code.dz = p.dz;
  return p;
}

BalancedPrediction predict_balanced(long long m, long long sys,
                                    long long cosys) {
  if (sys <= 0) fail(Err::input, "predict: systole must be positive");
  if (m <= 0) fail(Err::input, "predict: size must be positive");
  if (cosys < sys) fail(Err::input, "predict: cosystole below systole");
  BalancedPrediction p;
  p.length = Rat(m) * Rat(cosys) / Rat(sys);
  p.distance = Rat(cosys);
  p.dimension = Rat(cosys) / Rat(sys);
  p.distance_sq = p.length * Rat(sys);
  p.dimension_sq = p.length / Rat(sys);
  return p;
}

BalanceReport balance(const BasedComplex& x, int k, int l, int budget,
                      int workers) {
  if (k < 0 || k > x.dim) fail(Err::input, "balance: degree out of range");
  if (l != 0 && l < 3)
    fail(Err::input, "balance: cycle length must be at least 3");
  if (betti(x, k) == 0)
    fail(Err::input, "balance: homology vanishes at the chosen degree");
  WeightFn hw = make_weight(x, Weight::hamming);
  ExtremeResult sy = systole(x, k, hw, budget, workers);
  ExtremeResult co = cosystole(x, k, hw, budget, workers);
  if (!sy.exists || !co.exists)
    fail(Err::input, "balance: homology vanishes at the chosen degree");

  BalanceReport r;
  r.m = x.layer_size(k);
  r.sys = boost::rational_cast<long long>(sy.value);
  r.cosys = boost::rational_cast<long long>(co.value);
  int big = l;
  if (big == 0) {
    big = (int)((2 * r.cosys + r.sys) / (2 * r.sys));
    if (big < 3) big = 3;
  }
  r.l_used = big;
  r.predicted_ok = r.cosys >= r.sys;
  if (r.predicted_ok) r.predicted = predict_balanced(r.m, r.sys, r.cosys);

  BasedComplex p = tensor(x, cycle(big));
  r.code = from_complex(p, k + 1,
                        "balanced(k=" + std::to_string(k) +
                            ",L=" + std::to_string(big) + ")");
  r.params = code_params(r.code, budget, workers);
  r.h_before = betti(x, k);
  r.h_after = betti(p, k + 1);
  if (r.h_after < r.h_before)
    fail(Err::property, "balance: product homology dropped");
  return r;
}

void write_alist(std::ostream& os, const Gf2Matrix& m) {
  std::vector<std::vector<int>> bycol((size_t)m.cols), byrow((size_t)m.rows);
  for (int r = 0; r < m.rows; ++r)
    for (int c : m.row(r).support()) {
      byrow[(size_t)r].push_back(c + 1);
      bycol[(size_t)c].push_back(r + 1);
    }
  size_t maxc = 0, maxr = 0;
  for (const auto& v : bycol) maxc = std::max(maxc, v.size());
  for (const auto& v : byrow) maxr = std::max(maxr, v.size());
  os << m.cols << " " << m.rows << "\n" << maxc << " " << maxr << "\n";
  for (size_t c = 0; c < bycol.size(); ++c)
    os << (c ? " " : "") << bycol[c].size();
  os << "\n";
  for (size_t r = 0; r < byrow.size(); ++r)
    os << (r ? " " : "") << byrow[r].size();
  os << "\n";
  for (const auto& v : bycol) {
    for (size_t t = 0; t < maxc; ++t)
      os << (t < v.size() ? v[t] : 0) << (t + 1 < maxc ? " " : "");
    os << "\n";
  }
  for (const auto& v : byrow) {
    for (size_t t = 0; t < maxr; ++t)
      os << (t < v.size() ? v[t] : 0) << (t + 1 < maxr ? " " : "");
    os << "\n";
  }
}

}  // namespace cosyx
