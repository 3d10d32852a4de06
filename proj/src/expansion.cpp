#include "cosyx/expansion.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <thread>

#include "cosyx/homology.hpp"
#include "cosyx/tensor.hpp"

namespace cosyx {

namespace {

long long ops_cap(int budget) {
  if (budget < 1 || budget > 62) fail(Err::input, "budget out of range");
  return 1ll << budget;
}

// clamped to cap + 1 so oversized counts stay comparable without overflow
long long binom_capped(long long n, long long k, long long cap) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (long long i = 1; i <= k; ++i) {
    r = r * (unsigned long long)(n - k + i) / (unsigned long long)i;
    if (r > (unsigned __int128)cap) return cap + 1;
  }
  return (long long)r;
}

[[noreturn]] void refuse(const std::string& what, int budget) {
  fail(Err::budget,
       what + " exceeds the step budget 2^" + std::to_string(budget) +
           "; raise --budget for an exact run");
}

/* Splits [lo, hi) into `parts` contiguous chunks and runs fn(a, b, slot)
   on each, threaded when parts > 1. Every caller merges slots with an
   order-independent rule, so the partition never shows in results. */
template <class State, class Fn>
std::vector<State> run_chunked(uint64_t lo, uint64_t hi, int parts, Fn fn) {
  uint64_t len = hi > lo ? hi - lo : 0;
  if ((uint64_t)parts > len) parts = (int)std::max<uint64_t>(1, len);
  std::vector<State> out((size_t)parts);
  if (parts <= 1) {
    if (len) fn(lo, hi, out[0]);
    return out;
  }
  uint64_t chunk = (len + parts - 1) / parts;
  std::vector<std::thread> ts;
  for (int p = 0; p < parts; ++p) {
    uint64_t a = lo + chunk * (uint64_t)p;
    uint64_t b = std::min(hi, a + chunk);
    if (a >= b) continue;
    ts.emplace_back([&fn, &out, a, b, p] { fn(a, b, out[(size_t)p]); });
  }
  for (auto& t : ts) t.join();
  return out;
}

int parts_for(uint64_t est_steps, int workers) {
  return est_steps >= (1ull << 14) ? std::max(1, workers) : 1;
}

long long weight_num(const Gf2Vector& v, const std::vector<long long>& num) {
  long long s = 0;
  for (size_t wi = 0; wi < v.w.size(); ++wi) {
    uint64_t bits = v.w[wi];
    while (bits) {
      int b = std::countr_zero(bits);
      bits &= bits - 1;
      s += num[wi * 64 + (size_t)b];
    }
  }
  return s;
}

struct WeightedVec {
  Gf2Vector bits;
  long long num = 0;
};

void xor_into(WeightedVec& v, const Gf2Vector& g, const std::vector<int>& gs,
              const std::vector<long long>& num) {
  v.bits ^= g;
  for (int j : gs) v.num += v.bits.get(j) ? num[j] : -num[j];
}

void flip_cell(WeightedVec& v, int cell, const std::vector<long long>& num) {
  v.bits.flip(cell);
  v.num += v.bits.get(cell) ? num[cell] : -num[cell];
}

struct MinCand {
  bool has = false;
  long long num = 0;
  Gf2Vector bits;
};

void offer_min(MinCand& best, long long num, const Gf2Vector& bits) {
  if (best.has && num > best.num) return;
  if (!best.has || num < best.num || Gf2Vector::supp_less(bits, best.bits)) {
    best.has = true;
    best.num = num;
    best.bits = bits;
  }
}

std::vector<Gf2Vector> matrix_columns(const Gf2Matrix& m) {
  Gf2Matrix t = m.transposed();
  std::vector<Gf2Vector> cols((size_t)t.rows);
  for (int i = 0; i < t.rows; ++i) cols[(size_t)i] = t.row(i);
  return cols;
}

std::vector<std::vector<int>> supports_of(const std::vector<Gf2Vector>& vs) {
  std::vector<std::vector<int>> out(vs.size());
  for (size_t i = 0; i < vs.size(); ++i) out[i] = vs[i].support();
  return out;
}

/* Minimum weight over span(reps + excl) with a nonzero reps part; one
   Gray walk over the reps space, a nested Gray sweep over excl. */
MinCand subspace_min(const std::vector<Gf2Vector>& reps,
                     const std::vector<Gf2Vector>& excl, int n,
                     const std::vector<long long>& num, int workers) {
  int r = (int)reps.size(), e = (int)excl.size();
  auto rs = supports_of(reps), es = supports_of(excl);
  uint64_t total = 1ull << r;
  int parts = parts_for(total << e, workers);
  auto chunks = run_chunked<MinCand>(
      1, total, parts, [&](uint64_t lo, uint64_t hi, MinCand& out) {
        WeightedVec cur{Gf2Vector(n), 0};
        uint64_t g0 = lo ^ (lo >> 1);
        for (int i = 0; i < r; ++i)
          if ((g0 >> i) & 1) xor_into(cur, reps[(size_t)i], rs[(size_t)i], num);
        for (uint64_t u = lo; u < hi; ++u) {
          offer_min(out, cur.num, cur.bits);
          for (uint64_t v = 1; v < (1ull << e); ++v) {
            int b = std::countr_zero(v);
            xor_into(cur, excl[(size_t)b], es[(size_t)b], num);
            offer_min(out, cur.num, cur.bits);
          }
          if (e) xor_into(cur, excl[(size_t)e - 1], es[(size_t)e - 1], num);
          if (u + 1 < total) {
            int b = std::countr_zero(u + 1);
            xor_into(cur, reps[(size_t)b], rs[(size_t)b], num);
          }
        }
      });
  MinCand best;
  for (auto& c : chunks)
    if (c.has) offer_min(best, c.num, c.bits);
  return best;
}

/* Minimum support size in ker(syndrome) \ span(excl), found by scanning
   supports in increasing cardinality. Only sound when every cell weighs
   the same, which makes cardinality order agree with weight order.
   Budget decisions use closed-form counts, never elapsed work. */
MinCand support_min(const std::vector<Gf2Vector>& cols, int n,
                    const Echelon& excl, int budget, int workers) {
  long long cap = ops_cap(budget);
  long long cum = 0;
  int syn_bits = cols.empty() ? 0 : cols[0].n;
  for (int c = 1; c <= n; ++c) {
    long long work = binom_capped(n, c, cap);
    if (cum > cap - work) refuse("support scan at cardinality " +
                                     std::to_string(c), budget);
    cum += work;
    int first_hi = n - c + 1;
    int parts = parts_for((uint64_t)work, workers);
    auto chunks = run_chunked<MinCand>(
        0, (uint64_t)first_hi, parts,
        [&](uint64_t alo, uint64_t ahi, MinCand& out) {
          std::vector<Gf2Vector> syn((size_t)c + 1, Gf2Vector(syn_bits));
          std::vector<int> idx((size_t)c);
          auto rec = [&](auto&& self, int t, int start) -> void {
            if (t == c) {
              if (!syn[(size_t)c].is_zero()) return;
              Gf2Vector v = Gf2Vector::from_support(n, idx);
              if (excl.contains(v)) return;
              offer_min(out, c, v);
              return;
            }
            for (int j = start; j <= n - (c - t); ++j) {
              idx[(size_t)t] = j;
              syn[(size_t)t + 1] = syn[(size_t)t];
              syn[(size_t)t + 1] ^= cols[(size_t)j];
              self(self, t + 1, j + 1);
            }
          };
          for (uint64_t j0 = alo; j0 < ahi; ++j0) {
            idx[0] = (int)j0;
            syn[1] = syn[0];
            syn[1] ^= cols[(size_t)j0];
            rec(rec, 1, (int)j0 + 1);
          }
        });
    MinCand best;
    for (auto& ch : chunks)
      if (ch.has) offer_min(best, ch.num, ch.bits);
    if (best.has) return best;
  }
  MinCand none;
  return none;
}

struct QuotientSpace {
  int n = 0;
  Gf2Matrix syn;                 // rows vanish on the searched subspace
  std::vector<Gf2Vector> bcols;  // spans the excluded subspace
};

ExtremeResult min_nontrivial(const QuotientSpace& qs, int k,
                             const WeightFn& w, int budget, int workers) {
  ExtremeResult res;
  if (qs.n == 0) return res;
  const auto& num = w.num[(size_t)k + 1];
  long long den = w.den[(size_t)k + 1];
  Echelon excl(qs.n);
  for (const auto& v : qs.bcols) excl.insert(v);
  int z = qs.n - rank(qs.syn);
  if (z == excl.dim()) return res;  // trivial quotient
  bool uniform = true;
  for (long long v : num)
    if (v != num[0]) uniform = false;
  MinCand mc;
  long long unit = 1;
  if (uniform) {
    mc = support_min(matrix_columns(qs.syn), qs.n, excl, budget, workers);
    unit = num[0];
  } else {
    if (z > budget)
      refuse("subspace enumeration over 2^" + std::to_string(z) + " vectors",
             budget);
    auto zb = kernel_basis(qs.syn);
    auto reps = quotient_basis(zb, excl.rows, qs.n);
    mc = subspace_min(reps, excl.rows, qs.n, num, workers);
    unit = 1;
  }
  if (!mc.has) fail(Err::property, "nontrivial class vanished mid-search");
  res.exists = true;
  res.value = Rat(mc.num * unit, den);
  res.witness = Cochain{k, mc.bits};
  return res;
}

void check_layer(const BasedComplex& x, int k) {
  if (k < 0 || k > x.dim) fail(Err::input, "dimension out of range");
}

/* Shared scaffolding for the cofilling engines: a canonical basis of
   cells spanning a complement of the cocycles, the matching coboundary
   columns, and the cocycle space itself. */
struct FillScan {
  int n = 0, np = 0, r = 0, z = 0;
  std::vector<int> pivots;
  std::vector<Gf2Vector> dcols;
  std::vector<std::vector<int>> dsupp;
  std::vector<Gf2Vector> zb;
  std::vector<std::vector<int>> zsupp;
  std::vector<long long> numk, numk1;
  long long denk = 1, denk1 = 1;
};

FillScan make_fill_scan(const BasedComplex& x, int k, const WeightFn& w) {
  FillScan f;
  f.n = (int)x.layer_size(k);
  f.np = k + 1 <= x.dim ? (int)x.layer_size(k + 1) : 0;
  Gf2Matrix d = x.coboundary_matrix(k);
  auto cols = matrix_columns(d);
  Echelon colspan(f.np);
  for (int j = 0; j < f.n; ++j)
    if (colspan.insert(cols[(size_t)j])) {
      f.pivots.push_back(j);
      f.dcols.push_back(cols[(size_t)j]);
    }
  f.r = (int)f.pivots.size();
  f.dsupp = supports_of(f.dcols);
  f.zb = kernel_basis(d);
  f.z = (int)f.zb.size();
  f.zsupp = supports_of(f.zb);
  f.numk = w.num[(size_t)k + 1];
  f.denk = w.den[(size_t)k + 1];
  if (k + 1 <= x.dim) {
    f.numk1 = w.num[(size_t)k + 2];
    f.denk1 = w.den[(size_t)k + 2];
  }
  return f;
}

struct FillBest {
  bool has = false;
  Rat ratio{0};
  Gf2Vector alpha, beta;
};

void offer_fill(FillBest& best, const Rat& ratio, const Gf2Vector& alpha,
                const Gf2Vector& beta) {
  if (best.has && ratio < best.ratio) return;
  if (best.has && ratio == best.ratio) {
    if (Gf2Vector::supp_less(best.alpha, alpha)) return;
    if (best.alpha == alpha && !Gf2Vector::supp_less(beta, best.beta)) return;
  }
  best.has = true;
  best.ratio = ratio;
  best.alpha = alpha;
  best.beta = beta;
}

struct CosetEntry {
  Gf2Vector alpha;
  long long alpha_num = 0;
  Gf2Vector beta;  // canonical minimal preimage
  long long beta_num = 0;
};

/* Walks every nonzero coboundary alpha once (Gray over the complement
   cells) and minimizes the preimage weight over the cocycle coset
   (inner Gray). on_result sees each coset exactly once. */
template <class OnResult>
void scan_cosets(const FillScan& f, uint64_t lo, uint64_t hi,
                 OnResult&& on_result) {
  uint64_t total = 1ull << f.r;
  WeightedVec beta{Gf2Vector(f.n), 0};
  WeightedVec alpha{Gf2Vector(f.np), 0};
  uint64_t g0 = lo ^ (lo >> 1);
  for (int j = 0; j < f.r; ++j)
    if ((g0 >> j) & 1) {
      flip_cell(beta, f.pivots[(size_t)j], f.numk);
      xor_into(alpha, f.dcols[(size_t)j], f.dsupp[(size_t)j], f.numk1);
    }
  for (uint64_t u = lo; u < hi; ++u) {
    MinCand mc;
    offer_min(mc, beta.num, beta.bits);
    for (uint64_t v = 1; v < (1ull << f.z); ++v) {
      int b = std::countr_zero(v);
      xor_into(beta, f.zb[(size_t)b], f.zsupp[(size_t)b], f.numk);
      offer_min(mc, beta.num, beta.bits);
    }
    if (f.z)
      xor_into(beta, f.zb[(size_t)f.z - 1], f.zsupp[(size_t)f.z - 1], f.numk);
    on_result(alpha, mc);
    if (u + 1 < total) {
      int j = std::countr_zero(u + 1);
      flip_cell(beta, f.pivots[(size_t)j], f.numk);
      xor_into(alpha, f.dcols[(size_t)j], f.dsupp[(size_t)j], f.numk1);
    }
  }
}

void check_fill_budget(const FillScan& f, int budget) {
  if (f.n > budget)
    refuse("coset scan over 2^" + std::to_string(f.n) + " chains", budget);
}

struct TupleCand {
  bool has = false;
  long long num = 0;
  std::vector<Gf2Vector> betas;
};

bool tuple_less(const std::vector<Gf2Vector>& a,
                const std::vector<Gf2Vector>& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (Gf2Vector::supp_less(a[i], b[i])) return true;
    if (!(a[i] == b[i])) return false;
  }
  return false;
}

void offer_tuple(TupleCand& best, long long num,
                 const std::vector<Gf2Vector>& betas) {
  if (best.has && num > best.num) return;
  if (!best.has || num < best.num || tuple_less(betas, best.betas)) {
    best.has = true;
    best.num = num;
    best.betas = betas;
  }
}

/* Exact minimum of the union weight over joint preimage choices: a Gray
   walk over one cocycle copy per collection member, with per-cell cover
   counts so the union weight updates in O(flipped cells). */
TupleCand joint_min(const FillScan& f, const std::vector<const CosetEntry*>& e,
                    int workers) {
  int m = (int)e.size();
  uint64_t total = 1ull << (uint64_t)((size_t)m * (size_t)f.z);
  int parts = parts_for(total, workers);
  auto chunks = run_chunked<TupleCand>(
      0, total, parts, [&](uint64_t lo, uint64_t hi, TupleCand& out) {
        std::vector<Gf2Vector> betas;
        betas.reserve((size_t)m);
        for (int i = 0; i < m; ++i) betas.push_back(e[(size_t)i]->beta);
        std::vector<int> cover((size_t)f.n, 0);
        long long usum = 0;
        for (int i = 0; i < m; ++i)
          for (int cell = 0; cell < f.n; ++cell)
            if (betas[(size_t)i].get(cell))
              if (++cover[(size_t)cell] == 1) usum += f.numk[(size_t)cell];
        auto jflip = [&](int pos) {
          int i = pos / f.z, b = pos % f.z;
          for (int cell : f.zsupp[(size_t)b]) {
            betas[(size_t)i].flip(cell);
            if (betas[(size_t)i].get(cell)) {
              if (++cover[(size_t)cell] == 1) usum += f.numk[(size_t)cell];
            } else {
              if (--cover[(size_t)cell] == 0) usum -= f.numk[(size_t)cell];
            }
          }
        };
        uint64_t g0 = lo ^ (lo >> 1);
        for (int pos = 0; pos < m * f.z; ++pos)
          if ((g0 >> pos) & 1) jflip(pos);
        for (uint64_t t = lo; t < hi; ++t) {
          offer_tuple(out, usum, betas);
          if (t + 1 < total) jflip((int)std::countr_zero(t + 1));
        }
      });
  TupleCand best;
  for (auto& c : chunks)
    if (c.has) offer_tuple(best, c.num, c.betas);
  return best;
}

}  // namespace

ExtremeResult systole(const BasedComplex& x, int k, const WeightFn& w,
                      int budget, int workers) {
  check_layer(x, k);
  QuotientSpace qs;
  qs.n = (int)x.layer_size(k);
  qs.syn = x.boundary_matrix(k);
  if (k < x.dim) qs.bcols = matrix_columns(x.boundary_matrix(k + 1));
  return min_nontrivial(qs, k, w, budget, workers);
}

ExtremeResult cosystole(const BasedComplex& x, int k, const WeightFn& w,
                        int budget, int workers) {
  check_layer(x, k);
  QuotientSpace qs;
  qs.n = (int)x.layer_size(k);
  qs.syn = x.coboundary_matrix(k);
  if (k > 0 || x.augmented)
    qs.bcols = matrix_columns(x.coboundary_matrix(k - 1));
  return min_nontrivial(qs, k, w, budget, workers);
}

Rat cosystolic_expansion(const BasedComplex& x, int k, const WeightFn& w,
                         int budget, int workers) {
  check_layer(x, k);
  ExtremeResult cs = cosystole(x, k, w, budget, workers);
  if (!cs.exists) return Rat(1);
  return cs.value / w.layer(k);
}

CofillResult cofilling(const BasedComplex& x, int k, const WeightFn& w,
                       int budget, int workers) {
  check_layer(x, k);
  FillScan f = make_fill_scan(x, k, w);
  CofillResult res;
  if (f.r == 0) return res;  // no nonzero coboundaries at all
  check_fill_budget(f, budget);
  uint64_t total = 1ull << f.r;
  int parts = parts_for(1ull << f.n, workers);
  auto chunks = run_chunked<FillBest>(
      1, total, parts, [&](uint64_t lo, uint64_t hi, FillBest& out) {
        scan_cosets(f, lo, hi,
                    [&](const WeightedVec& alpha, const MinCand& mc) {
                      Rat ratio(mc.num * f.denk1, alpha.num * f.denk);
                      offer_fill(out, ratio, alpha.bits, mc.bits);
                    });
      });
  FillBest best;
  for (auto& c : chunks)
    if (c.has) offer_fill(best, c.ratio, c.alpha, c.beta);
  res.exists = true;
  res.value = best.ratio;
  res.alpha = Cochain{k + 1, best.alpha};
  res.beta = Cochain{k, best.beta};
  return res;
}

std::vector<CollectiveResult> collective_cofilling(const BasedComplex& x,
                                                   int k, const WeightFn& w,
                                                   int m_max, int budget,
                                                   int workers) {
  check_layer(x, k);
  if (m_max < 1) fail(Err::input, "collection size must be at least 1");
  FillScan f = make_fill_scan(x, k, w);
  std::vector<CollectiveResult> out((size_t)m_max);
  if (f.r == 0) return out;
  check_fill_budget(f, budget);
  long long cap = ops_cap(budget);
  if (f.r > 20) refuse("coboundary roster of 2^" + std::to_string(f.r) +
                           " entries", budget);
  long long cnt = (1ll << f.r) - 1;
  long long cum = 1ll << f.n;
  for (int j = 1; j <= m_max && j <= cnt; ++j) {
    long long tuples = binom_capped(cnt, j, cap);
    int shift = j * f.z;
    if (shift >= 62 || tuples > (cap >> shift) ||
        cum > cap - (tuples << shift))
      refuse("collections of size " + std::to_string(j) + " over 2^" +
                 std::to_string(f.z) + " preimage cosets each", budget);
    cum += tuples << shift;
  }

  // roster of every nonzero coboundary with its canonical minimal filling
  int parts = parts_for(1ull << f.n, workers);
  auto pieces = run_chunked<std::vector<CosetEntry>>(
      1, 1ull << f.r, parts,
      [&](uint64_t lo, uint64_t hi, std::vector<CosetEntry>& got) {
        got.reserve((size_t)(hi - lo));
        scan_cosets(f, lo, hi,
                    [&](const WeightedVec& alpha, const MinCand& mc) {
                      got.push_back({alpha.bits, alpha.num, mc.bits, mc.num});
                    });
      });
  std::vector<CosetEntry> entries;
  entries.reserve((size_t)cnt);
  for (auto& p : pieces)
    for (auto& it : p) entries.push_back(std::move(it));
  std::sort(entries.begin(), entries.end(),
            [](const CosetEntry& a, const CosetEntry& b) {
              return Gf2Vector::supp_less(a.alpha, b.alpha);
            });

  struct Running {
    bool has = false;
    Rat ratio{0};
    std::vector<int> idx;
    std::vector<Gf2Vector> betas;
  } best;
  for (int j = 1; j <= m_max; ++j) {
    if (j <= cnt) {
      std::vector<int> idx((size_t)j);
      for (int t = 0; t < j; ++t) idx[(size_t)t] = t;
      for (;;) {
        Gf2Vector ua(f.np), ub(f.n);
        for (int t = 0; t < j; ++t) {
          const CosetEntry& e = entries[(size_t)idx[(size_t)t]];
          for (size_t wi = 0; wi < ua.w.size(); ++wi) ua.w[wi] |= e.alpha.w[wi];
          for (size_t wi = 0; wi < ub.w.size(); ++wi) ub.w[wi] |= e.beta.w[wi];
        }
        long long ua_num = weight_num(ua, f.numk1);
        long long ub_num = weight_num(ub, f.numk);
        Rat upper(ub_num * f.denk1, ua_num * f.denk);
        if (!best.has || upper > best.ratio) {
          std::vector<const CosetEntry*> sel;
          sel.reserve((size_t)j);
          for (int t = 0; t < j; ++t)
            sel.push_back(&entries[(size_t)idx[(size_t)t]]);
          TupleCand tc = joint_min(f, sel, workers);
          Rat val(tc.num * f.denk1, ua_num * f.denk);
          if (!best.has || val > best.ratio) {
            best.has = true;
            best.ratio = val;
            best.idx = idx;
            best.betas = tc.betas;
          }
        }
        int t = j - 1;
        while (t >= 0 && idx[(size_t)t] == (int)cnt - j + t) --t;
        if (t < 0) break;
        ++idx[(size_t)t];
        for (int s = t + 1; s < j; ++s)
          idx[(size_t)s] = idx[(size_t)s - 1] + 1;
      }
    }
    CollectiveResult& res = out[(size_t)j - 1];
    res.exists = true;
    res.value = best.ratio;
    for (size_t t = 0; t < best.idx.size(); ++t) {
      res.alphas.push_back(
          Cochain{k + 1, entries[(size_t)best.idx[t]].alpha});
      res.betas.push_back(Cochain{k, best.betas[t]});
    }
  }
  return out;
}

ProductConstants product_constants(const ProductInputs& in) {
  int l = in.l;
  if (l < 0) fail(Err::input, "negative target dimension");
  auto want = [&](size_t got, size_t need, const char* name) {
    if (got != need)
      fail(Err::input, std::string("product inputs: ") + name +
                           " needs " + std::to_string(need) + " entries");
  };
  want(in.eta_x.size(), (size_t)l + 1, "eta");
  want(in.eta_y.size(), (size_t)l + 1, "eta'");
  want(in.mu_x.size(), (size_t)l, "mu");
  want(in.mubar_x.size(), (size_t)l, "mu_bar");
  want(in.mubar_y.size(), (size_t)l, "mu_bar'");
  want(in.q_y.size(), (size_t)l, "q'");
  for (int i = 0; i <= l; ++i)
    if (in.eta_x[(size_t)i] <= Rat(0) || in.eta_x[(size_t)i] > Rat(1) ||
        in.eta_y[(size_t)i] <= Rat(0) || in.eta_y[(size_t)i] > Rat(1))
      fail(Err::input, "expansion constants must lie in (0, 1]");
  for (int i = 0; i < l; ++i) {
    if (in.mu_x[(size_t)i] < Rat(1) || in.mubar_x[(size_t)i] < Rat(1) ||
        (i >= 1 && in.mubar_y[(size_t)i] < Rat(1)))
      fail(Err::input, "cofilling constants must be at least 1");
    if (in.q_y[(size_t)i] < 1) fail(Err::input, "locality must be at least 1");
  }
  ProductConstants pc;
  pc.l = l;
  pc.b.assign((size_t)l + 1, Rat(1));
  for (int j = 1; j <= l; ++j) {
    Rat step = Rat(in.q_y[(size_t)j - 1]) * in.mu_x[(size_t)(l - j)];
    if (j >= 2) step /= in.eta_x[(size_t)(l - j + 1)];
    pc.b[(size_t)j] = step * pc.b[(size_t)j - 1];
  }
  Rat num(1), den(1);
  for (int i = 0; i < l; ++i) {
    num *= in.eta_x[(size_t)i];
    den *= Rat(in.q_y[(size_t)i]) * in.mu_x[(size_t)(l - i - 1)];
  }
  pc.eta_pair_min = in.eta_x[(size_t)l] * in.eta_y[0];
  for (int j = 1; j <= l; ++j) {
    Rat cand = in.eta_x[(size_t)(l - j)] * in.eta_y[(size_t)j];
    if (cand < pc.eta_pair_min) pc.eta_pair_min = cand;
  }
  pc.lambda = num / den * pc.eta_pair_min;
  if (l >= 1) {
    pc.nu = in.mu_x[(size_t)l - 1];
    pc.nu_coll = in.mubar_x[(size_t)l - 1];
    for (int j = 1; j <= l - 1; ++j) {
      Rat c = pc.b[(size_t)j] / in.eta_x[(size_t)(l - j)];
      pc.nu += c * (in.mubar_y[(size_t)j] + in.mu_x[(size_t)(l - j - 1)]);
      pc.nu_coll +=
          c * (in.mubar_y[(size_t)j] + in.mubar_x[(size_t)(l - j - 1)]);
    }
  }
  pc.chained_ok = true;
  for (int j = 0; j <= l; ++j)
    if (pc.b[(size_t)j] * pc.lambda > pc.eta_pair_min) pc.chained_ok = false;
  return pc;
}

namespace {

long long coface_locality(const BasedComplex& x, int j) {
  auto cols = matrix_columns(x.coboundary_matrix(j));
  long long q = 0;
  for (const auto& c : cols) q = std::max(q, (long long)c.popcount());
  if (q == 0) fail(Err::input, "no cofaces at the requested dimension");
  return q;
}

FactorData measure_factor(const BasedComplex& x, int l, int m_max, int budget,
                          int workers) {
  WeightFn w = make_weight(x, Weight::hamming);
  FactorData d;
  for (int i = 0; i <= l; ++i)
    d.eta.push_back(cosystolic_expansion(x, i, w, budget, workers));
  for (int i = 0; i < l; ++i) {
    CofillResult cf = cofilling(x, i, w, budget, workers);
    if (!cf.exists) fail(Err::input, "factor has no coboundaries to fill");
    d.mu.push_back(cf.value);
    auto cc = collective_cofilling(x, i, w, m_max, budget, workers);
    d.mubar.push_back(cc.back().value);
    d.q.push_back(coface_locality(x, i));
  }
  return d;
}

}  // namespace

ProductCheck verify_product_theorem(const BasedComplex& x,
                                    const BasedComplex& y, int l, int m_max,
                                    int budget, int workers) {
  if (l < 0 || l > std::min(x.dim, y.dim))
    fail(Err::input, "target dimension must not exceed either factor");
  if (m_max < 1) fail(Err::input, "collection size must be at least 1");
  ProductCheck r;
  r.l = l;
  r.m_max = m_max;
  r.left = measure_factor(x, l, m_max, budget, workers);
  r.right = measure_factor(y, l, m_max, budget, workers);
  ProductInputs in;
  in.l = l;
  in.eta_x = r.left.eta;
  in.eta_y = r.right.eta;
  // measured optima may dip below 1; the constant recursions need bounds >= 1,
  // and rounding an upper bound up keeps it valid
  auto lift = [](std::vector<Rat> v) {
    for (auto& c : v)
      if (c < Rat(1)) c = Rat(1);
    return v;
  };
  in.mu_x = lift(r.left.mu);
  in.mubar_x = lift(r.left.mubar);
  in.mubar_y = lift(r.right.mubar);
  in.q_y = r.right.q;
  r.consts = product_constants(in);

  BasedComplex t = tensor(x, y);
  WeightFn wt = make_weight(t, Weight::hamming);
  r.h_product = betti(t, l);
  bool have_block = false;
  long long blocks_min = 0;
  for (int i = 0; i <= l; ++i) {
    if (i > x.dim || l - i > y.dim) continue;
    long long sz = x.layer_size(i) * y.layer_size(l - i);
    if (!have_block || sz < blocks_min) blocks_min = sz;
    have_block = true;
  }
  r.cosys_floor = r.consts.lambda * Rat(blocks_min);
  if (r.h_product != 0) {
    ExtremeResult cs = cosystole(t, l, wt, budget, workers);
    r.cosys = cs.value;
    r.cosys_ok = cs.value >= r.cosys_floor;
  } else {
    r.cosys_ok = true;  // no nontrivial class to bound
  }
  if (l >= 1) {
    CofillResult mp = cofilling(t, l - 1, wt, budget, workers);
    r.mu_prod = mp.value;
    r.mu_ok = mp.value <= r.consts.nu;
    auto mb = collective_cofilling(t, l - 1, wt, m_max, budget, workers);
    r.mubar_prod = mb.back().value;
    r.mubar_ok = mb.back().value <= r.consts.nu_coll;
  } else {
    r.mu_ok = r.mubar_ok = true;
  }
  r.ok = r.cosys_ok && r.mu_ok && r.mubar_ok;
  return r;
}

ExpansionReport measure_expansion(const BasedComplex& x, int k, Weight kind,
                                  int m_max, int budget, int workers) {
  check_layer(x, k);
  WeightFn w = make_weight(x, kind);
  ExpansionReport r;
  r.k = k;
  r.weight = kind;
  r.sys = systole(x, k, w, budget, workers);
  r.cosys = cosystole(x, k, w, budget, workers);
  r.eta = r.cosys.exists ? r.cosys.value / w.layer(k) : Rat(1);
  r.mu = cofilling(x, k, w, budget, workers);
  r.mu_coll = collective_cofilling(x, k, w, m_max, budget, workers);
  return r;
}

}  // namespace cosyx
