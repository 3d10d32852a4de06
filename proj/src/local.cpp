#include "cosyx/local.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <thread>

namespace cosyx {

namespace {

long long ops_cap(int budget) {
  if (budget < 1 || budget > 62) fail(Err::input, "budget out of range");
  return 1ll << budget;
}

[[noreturn]] void refuse(const std::string& what, int budget) {
  fail(Err::budget,
       what + " exceeds the step budget 2^" + std::to_string(budget) +
           "; raise --budget for an exact run");
}

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

void or_into(Gf2Vector& dst, const Gf2Vector& src) {
  for (size_t wi = 0; wi < dst.w.size(); ++wi) dst.w[wi] |= src.w[wi];
}

bool disjoint_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    a[i] < b[j] ? ++i : ++j;
  }
  return true;
}

bool subset_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  size_t j = 0;
  for (int v : a) {
    while (j < b.size() && b[j] < v) ++j;
    if (j == b.size() || b[j] != v) return false;
    ++j;
  }
  return true;
}

std::vector<int> merged_sorted(const std::vector<int>& a,
                               const std::vector<int>& b) {
  std::vector<int> m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

void check_proper_ref(const BasedComplex& x, const CellRef& sigma,
                      const char* who) {
  if (sigma.k < 0 || sigma.k > x.dim || sigma.i < 0 ||
      sigma.i >= x.layer_size(sigma.k))
    fail(Err::input, std::string(who) + ": no such cell");
}

// the only complex from_simplices cannot express: no cells at all
BasedComplex empty_link() {
  BasedComplex e;
  e.dim = 0;
  e.augmented = true;
  e.cells.assign(1, {});
  e.bnd.assign(1, Gf2Matrix());
  return e;
}

bool has_cells(const BasedComplex& x) {
  return x.dim > 0 || !x.cells[0].empty();
}

long long cell_count(const BasedComplex& x) {
  long long n = 0;
  for (int k = 0; k <= x.dim; ++k) n += x.layer_size(k);
  return n;
}

// independent coboundaries spanning B^k, kept raw so each one is the
// coboundary of the recorded unit cochain below
struct BSpace {
  std::vector<Gf2Vector> cols;
  std::vector<int> units;  // generating cell index in degree k - 1
};

BSpace coboundary_basis(const BasedComplex& t, int k) {
  BSpace out;
  if (k < 0 || k > t.dim) return out;
  if (k == 0 && !t.augmented) return out;
  Gf2Matrix tr = t.coboundary_matrix(k - 1).transposed();
  Echelon ech(tr.cols);
  for (int i = 0; i < tr.rows; ++i) {
    Gf2Vector col = tr.row(i);
    if (ech.insert(col)) {
      out.cols.push_back(std::move(col));
      out.units.push_back(i);
    }
  }
  return out;
}

struct ScanHit {
  bool has = false;
  uint64_t g = 0;
  long long after = 0;
};

/* First tuple of coboundaries that strictly shrinks the weighted union.
   One Gray walk over rank * members bits, bit p acting on member p / rank
   with basis vector p % rank; chunks agree on the indexing, so the
   minimum hit index is worker-invariant. */
ScanHit scan_tuples(const std::vector<Gf2Vector>& members,
                    const std::vector<Gf2Vector>& basis,
                    const std::vector<long long>& num, long long base,
                    int workers) {
  int m = (int)members.size(), r = (int)basis.size();
  if (m == 0 || r == 0) return {};
  int bits = r * m;
  uint64_t total = 1ull << bits;
  auto run = [&](uint64_t lo, uint64_t hi, ScanHit& slot) {
    std::vector<Gf2Vector> cur(members);
    uint64_t g0 = lo ^ (lo >> 1);
    for (int p = 0; p < bits; ++p)
      if ((g0 >> p) & 1) cur[(size_t)(p / r)] ^= basis[(size_t)(p % r)];
    Gf2Vector uni(members[0].n);
    auto eval = [&](uint64_t idx) {
      for (size_t wi = 0; wi < uni.w.size(); ++wi) {
        uint64_t u = 0;
        for (const auto& v : cur) u |= v.w[wi];
        uni.w[wi] = u;
      }
      long long s = weight_num(uni, num);
      if (s < base) {
        slot = {true, idx, s};
        return true;
      }
      return false;
    };
    if (eval(lo)) return;
    for (uint64_t g = lo + 1; g < hi; ++g) {
      int p = std::countr_zero(g);
      cur[(size_t)(p / r)] ^= basis[(size_t)(p % r)];
      if (eval(g)) return;
    }
  };
  auto slots = run_chunked<ScanHit>(0, total, parts_for(total, workers),
                                    run);
  ScanHit best;
  for (const auto& s : slots)
    if (s.has && (!best.has || s.g < best.g)) best = s;
  return best;
}

// tuple behind a hit: per-member xor of the flagged basis vectors
std::vector<Gf2Vector> tuple_bits(uint64_t g, int m, int r, int n,
                                  const std::vector<Gf2Vector>& basis) {
  uint64_t gray = g ^ (g >> 1);
  std::vector<Gf2Vector> out((size_t)m, Gf2Vector(n));
  for (int a = 0; a < m; ++a)
    for (int p = 0; p < r; ++p)
      if ((gray >> (a * r + p)) & 1) out[(size_t)a] ^= basis[(size_t)p];
  return out;
}

std::vector<Gf2Vector> tuple_units(uint64_t g, int m, int r, int n,
                                   const std::vector<int>& units) {
  uint64_t gray = g ^ (g >> 1);
  std::vector<Gf2Vector> out((size_t)m, Gf2Vector(n));
  for (int a = 0; a < m; ++a)
    for (int p = 0; p < r; ++p)
      if ((gray >> (a * r + p)) & 1) out[(size_t)a].flip(units[(size_t)p]);
  return out;
}

// localized members, link basis and weights for one proper cell
struct LinkCtx {
  CellRef sigma;
  int deg = 0;
  BasedComplex lk;
  std::vector<Gf2Vector> mem;
  BSpace bs;
  std::vector<long long> num;
  long long den = 1;
  long long base = 0;
  long long presize = 0;  // cells one degree below, for preimages
};

LinkCtx link_context(const BasedComplex& x, const CochainCollection& c,
                     const CellRef& sigma, Weight kind) {
  LinkCtx ctx;
  ctx.sigma = sigma;
  ctx.deg = c.k - sigma.k - 1;
  ctx.lk = link(x, sigma);
  if (!has_cells(ctx.lk) || ctx.deg > ctx.lk.dim) return ctx;
  WeightFn wl = make_weight(ctx.lk, kind);
  ctx.num = wl.num[(size_t)ctx.deg + 1];
  ctx.den = wl.den[(size_t)ctx.deg + 1];
  for (const auto& a : c.members)
    ctx.mem.push_back(localize(x, sigma, a).bits);
  Gf2Vector uni((int)ctx.lk.layer_size(ctx.deg));
  for (const auto& v : ctx.mem) or_into(uni, v);
  ctx.base = weight_num(uni, ctx.num);
  ctx.bs = coboundary_basis(ctx.lk, ctx.deg);
  ctx.presize = ctx.deg == 0 ? 1 : ctx.lk.layer_size(ctx.deg - 1);
  return ctx;
}

std::vector<CellRef> proper_cells(const BasedComplex& x, int max_dim) {
  std::vector<CellRef> out;
  for (int j = 0; j <= std::min(max_dim, x.dim); ++j)
    for (long long i = 0; i < x.layer_size(j); ++i) out.push_back({j, i});
  return out;
}

// fat-chain reachability, one dimension at a time up to layer k
Gf2Vector climb_chain(const BasedComplex& x,
                      const std::vector<Gf2Vector>& strata, int k,
                      Gf2Vector alive, int from) {
  for (int j = from; j < k; ++j) {
    const Gf2Vector& above = strata[(size_t)j + 1];
    Gf2Vector nxt((int)x.layer_size(j + 1));
    for (long long t = 0; t < x.layer_size(j + 1); ++t) {
      if (!above.get((int)t)) continue;
      for (int f : x.bnd_support(j + 1, (int)t))
        if (alive.get(f)) {
          nxt.set((int)t, true);
          break;
        }
    }
    alive = std::move(nxt);
  }
  return alive;
}

}  // namespace

BasedComplex link(const BasedComplex& x, const CellRef& sigma) {
  if (sigma.k == -1) {
    if (!x.augmented)
      fail(Err::input, "link of the empty cell needs an augmented complex");
    return x;
  }
  if (!x.is_simplicial()) fail(Err::input, "link: simplicial complex required");
  check_proper_ref(x, sigma, "link");
  const auto& sv = x.cell(sigma.k, (int)sigma.i).verts;
  std::vector<std::vector<int>> simplices;
  for (int j = 0; j <= x.dim; ++j) {
    if (j + sigma.k + 1 > x.dim) break;
    for (const auto& c : x.cells[j]) {
      if (!disjoint_sorted(c.verts, sv)) continue;
      auto m = merged_sorted(c.verts, sv);
      if (x.cell_index(j + sigma.k + 1, simplex_id(m)) >= 0)
        simplices.push_back(c.verts);
    }
  }
  if (simplices.empty()) return empty_link();
  return BasedComplex::from_simplices(simplices, true);
}

Cochain localize(const BasedComplex& x, const CellRef& sigma,
                 const Cochain& a) {
  if (sigma.k == -1) {
    if (!x.augmented)
      fail(Err::input, "localize: empty cell needs an augmented complex");
    return a;
  }
  check_proper_ref(x, sigma, "localize");
  if (a.k < sigma.k || a.k > x.dim)
    fail(Err::input, "localize: cochain degree out of range");
  int r = a.k - sigma.k - 1;
  if (r == -1) {
    Cochain out{-1, Gf2Vector(1)};
    out.bits.set(0, a.bits.get((int)sigma.i));
    return out;
  }
  BasedComplex lk = link(x, sigma);
  if (!has_cells(lk) || r > lk.dim) return Cochain{r, Gf2Vector(0)};
  const auto& sv = x.cell(sigma.k, (int)sigma.i).verts;
  Cochain out{r, Gf2Vector((int)lk.layer_size(r))};
  for (long long t = 0; t < lk.layer_size(r); ++t) {
    auto m = merged_sorted(lk.cell(r, (int)t).verts, sv);
    int idx = x.cell_index(a.k, simplex_id(m));
    if (idx >= 0 && a.bits.get(idx)) out.bits.set((int)t, true);
  }
  return out;
}

Cochain lift(const BasedComplex& x, const CellRef& sigma, const Cochain& b) {
  if (sigma.k == -1) {
    if (!x.augmented)
      fail(Err::input, "lift: empty cell needs an augmented complex");
    return b;
  }
  check_proper_ref(x, sigma, "lift");
  int K = b.k + sigma.k + 1;
  if (b.k < -1 || K > x.dim)
    fail(Err::input, "lift: cochain degree out of range");
  Cochain out = x.zero_cochain(K);
  if (b.k == -1) {
    if (b.bits.n > 0 && b.bits.get(0)) out.bits.set((int)sigma.i, true);
    return out;
  }
  BasedComplex lk = link(x, sigma);
  const auto& sv = x.cell(sigma.k, (int)sigma.i).verts;
  for (int t : b.bits.support()) {
    auto m = merged_sorted(lk.cell(b.k, t).verts, sv);
    int idx = x.cell_index(K, simplex_id(m));
    if (idx < 0) fail(Err::input, "lift: cell outside the complex");
    out.bits.set(idx, true);
  }
  return out;
}

Cochain container(const BasedComplex& x, const Cochain& a, int r) {
  if (!x.is_simplicial())
    fail(Err::input, "container: simplicial complex required");
  if (r < a.k) fail(Err::input, "container: dimension below the cochain");
  if (r > x.dim) fail(Err::input, "container: dimension above the complex");
  if (r == a.k) return a;
  Cochain out = x.zero_cochain(r);
  std::vector<std::vector<int>> sup;
  for (int ci : a.bits.support()) sup.push_back(x.cell(a.k, ci).verts);
  for (long long t = 0; t < x.layer_size(r); ++t) {
    const auto& tv = x.cell(r, (int)t).verts;
    for (const auto& cv : sup)
      if (subset_sorted(cv, tv)) {
        out.bits.set((int)t, true);
        break;
      }
  }
  return out;
}

CochainCollection make_collection(const BasedComplex& x, int k,
                                  std::vector<Cochain> members) {
  if (k < 0 || k > x.dim) fail(Err::input, "collection degree out of range");
  CochainCollection c;
  c.k = k;
  c.unioned = x.zero_cochain(k);
  for (const auto& m : members) {
    if (m.k != k || m.bits.n != c.unioned.bits.n)
      fail(Err::input, "collection members must share the layer");
    or_into(c.unioned.bits, m.bits);
  }
  c.members = std::move(members);
  return c;
}

MinimalityReport is_minimal_collection(const BasedComplex& x,
                                       const CochainCollection& c,
                                       Locality locality, Weight kind,
                                       int budget, int workers) {
  long long cap = ops_cap(budget);
  int k = c.k;
  if (k < 0 || k > x.dim) fail(Err::input, "collection degree out of range");
  MinimalityReport rep;
  rep.locality = locality;
  rep.minimal = true;
  int m = (int)c.members.size();
  if (m == 0) return rep;
  WeightFn wf = make_weight(x, kind);

  if (locality == Locality::global) {
    const auto& num = wf.num[(size_t)k + 1];
    long long den = wf.den[(size_t)k + 1];
    long long base = weight_num(c.unioned.bits, num);
    rep.before = Rat(base, den);
    BSpace bs = coboundary_basis(x, k);
    int r = (int)bs.cols.size();
    if (r == 0) return rep;
    if ((long long)r * m > 62 || (1ll << ((long long)r * m)) > cap)
      refuse("coboundary tuple enumeration", budget);
    std::vector<Gf2Vector> mem;
    for (const auto& a : c.members) mem.push_back(a.bits);
    ScanHit hit = scan_tuples(mem, bs.cols, num, base, workers);
    if (hit.has) {
      rep.minimal = false;
      rep.after = Rat(hit.after, den);
      for (auto& g :
           tuple_bits(hit.g, m, r, c.unioned.bits.n, bs.cols))
        rep.gammas.push_back(Cochain{k, std::move(g)});
    }
    return rep;
  }

  // local: the localized collection must be minimal in every proper link
  // of dimension below k
  std::vector<LinkCtx> ctxs;
  long long steps = 0;
  for (const auto& sg : proper_cells(x, k - 1)) {
    LinkCtx ctx = link_context(x, c, sg, kind);
    int r = (int)ctx.bs.cols.size();
    if (r == 0) continue;
    if ((long long)r * m > 62) refuse("link tuple enumeration", budget);
    long long st = 1ll << ((long long)r * m);
    if (st > cap - steps) refuse("link tuple enumeration", budget);
    steps += st;
    ctxs.push_back(std::move(ctx));
  }
  struct Found {
    bool has = false;
    size_t at = 0;
    ScanHit hit;
  };
  auto slots = run_chunked<Found>(
      0, ctxs.size(), std::max(1, std::min(workers, (int)ctxs.size())),
      [&](uint64_t lo, uint64_t hi, Found& slot) {
        for (uint64_t i = lo; i < hi; ++i) {
          const LinkCtx& ctx = ctxs[(size_t)i];
          ScanHit hit =
              scan_tuples(ctx.mem, ctx.bs.cols, ctx.num, ctx.base, 1);
          if (hit.has) {
            slot = {true, (size_t)i, hit};
            return;
          }
        }
      });
  Found best;
  for (const auto& s : slots)
    if (s.has && (!best.has || s.at < best.at)) best = s;
  if (best.has) {
    const LinkCtx& ctx = ctxs[best.at];
    int r = (int)ctx.bs.cols.size();
    rep.minimal = false;
    rep.sigma = ctx.sigma;
    rep.before = Rat(ctx.base, ctx.den);
    rep.after = Rat(best.hit.after, ctx.den);
    for (auto& g : tuple_bits(best.hit.g, m, r,
                              (int)ctx.lk.layer_size(ctx.deg), ctx.bs.cols))
      rep.gammas.push_back(Cochain{ctx.deg, std::move(g)});
  }
  return rep;
}

LocalMinimizeResult local_minimize(const BasedComplex& x, CochainCollection c,
                                   Weight kind, int budget, int workers) {
  long long cap = ops_cap(budget);
  int k = c.k;
  if (k < 0 || k > x.dim) fail(Err::input, "collection degree out of range");
  LocalMinimizeResult res;
  int m = (int)c.members.size();
  int gn = k == 0 ? (x.augmented ? 1 : 0) : (int)x.layer_size(k - 1);
  res.gammas.assign((size_t)m, Cochain{k - 1, Gf2Vector(gn)});
  if (k >= 1 && !x.is_simplicial())
    fail(Err::input, "local_minimize: simplicial complex required");
  if (x.is_simplicial())
    for (const auto& sg : proper_cells(x, x.dim))
      res.q_bound = std::max(res.q_bound, cell_count(link(x, sg)));
  if (m == 0 || k == 0) {
    res.reduced = std::move(c);
    return res;
  }

  for (;;) {
    bool improved = false;
    for (const auto& sg : proper_cells(x, k - 1)) {
      LinkCtx ctx = link_context(x, c, sg, kind);
      int r = (int)ctx.bs.cols.size();
      if (r == 0 || ctx.base == 0) continue;
      if ((long long)r * m > 62 || (1ll << ((long long)r * m)) > cap)
        refuse("link tuple enumeration", budget);
      ScanHit hit = scan_tuples(ctx.mem, ctx.bs.cols, ctx.num, ctx.base,
                                workers);
      if (!hit.has) continue;
      auto cobs = tuple_bits(hit.g, m, r, (int)ctx.lk.layer_size(ctx.deg),
                             ctx.bs.cols);
      auto pres = tuple_units(hit.g, m, r, (int)ctx.presize, ctx.bs.units);
      for (int a = 0; a < m; ++a) {
        c.members[(size_t)a].bits ^=
            lift(x, sg, Cochain{ctx.deg, cobs[(size_t)a]}).bits;
        res.gammas[(size_t)a].bits ^=
            lift(x, sg, Cochain{ctx.deg - 1, pres[(size_t)a]}).bits;
      }
      c = make_collection(x, k, std::move(c.members));
      ++res.steps;
      improved = true;
      break;
    }
    if (!improved) break;
  }
  res.reduced = std::move(c);
  return res;
}

Rat skeleton_rho(const BasedComplex& x, int budget, int workers) {
  long long cap = ops_cap(budget);
  long long n0 = x.layer_size(0);
  if (n0 == 0) return Rat(0);
  if (n0 > 20 || n0 > 62 || (1ll << n0) > cap)
    refuse("vertex subset enumeration", budget);
  WeightFn wf = make_weight(x, Weight::topcell);
  const auto& num0 = wf.num[1];
  long long den0 = wf.den[1];
  long long den1 = x.dim >= 1 ? wf.den[2] : 1;
  struct Inc {
    int other;
    long long num;
  };
  std::vector<std::vector<Inc>> inc((size_t)n0);
  if (x.dim >= 1)
    for (long long e = 0; e < x.layer_size(1); ++e) {
      auto s = x.bnd_support(1, (int)e);
      if (s.empty()) continue;
      int u = s.front(), v = s.back();
      long long wn = wf.num[2][(size_t)e];
      inc[(size_t)u].push_back({v, wn});
      if (u != v) inc[(size_t)v].push_back({u, wn});
    }
  uint64_t total = 1ull << n0;
  struct MaxState {
    bool has = false;
    Rat best{0};
  };
  auto run = [&](uint64_t lo, uint64_t hi, MaxState& slot) {
    uint64_t in = lo ^ (lo >> 1);
    long long sa = 0, se = 0;
    for (int v = 0; v < n0; ++v)
      if ((in >> v) & 1) sa += num0[(size_t)v];
    for (int v = 0; v < n0; ++v)
      if ((in >> v) & 1)
        for (const auto& e : inc[(size_t)v])
          if (e.other == v || (e.other < v && ((in >> e.other) & 1)))
            se += e.num;
    auto offer = [&]() {
      if (sa == 0) return;
      Rat a(sa, den0);
      Rat val = (Rat(se, den1) / 4 - a * a) / a;
      if (!slot.has || val > slot.best) {
        slot.has = true;
        slot.best = val;
      }
    };
    offer();
    for (uint64_t g = lo + 1; g < hi; ++g) {
      int v = std::countr_zero(g);
      bool adding = !((in >> v) & 1);
      in ^= 1ull << v;
      long long d = adding ? 1 : -1;
      sa += d * num0[(size_t)v];
      for (const auto& e : inc[(size_t)v])
        if (e.other == v || ((in >> e.other) & 1)) se += d * e.num;
      offer();
    }
  };
  auto slots = run_chunked<MaxState>(0, total, parts_for(total, workers), run);
  Rat best(0);
  for (const auto& s : slots)
    if (s.has && s.best > best) best = s.best;
  return best;
}

FatStrata fat_strata(const BasedComplex& x, const CochainCollection& c,
                     const Rat& xi, Weight kind) {
  if (!(xi > Rat(0) && xi < Rat(1)))
    fail(Err::input, "xi must lie strictly between 0 and 1");
  int k = c.k;
  if (k < 0 || k > x.dim) fail(Err::input, "collection degree out of range");
  if (!x.is_simplicial())
    fail(Err::input, "fat strata: simplicial complex required");
  WeightFn wf = make_weight(x, kind);
  FatStrata s;
  s.k = k;
  s.xi = xi;
  s.strata.assign((size_t)k + 1, Gf2Vector());
  s.strata[(size_t)k] = c.unioned.bits;
  for (int i = k; i >= 1; --i) {
    Rat thr = rat_pow(xi, 1u << (k - i));
    Gf2Vector below((int)x.layer_size(i - 1));
    Cochain above{i, s.strata[(size_t)i]};
    for (long long t = 0; t < x.layer_size(i - 1); ++t) {
      CellRef sg{i - 1, t};
      BasedComplex lk = link(x, sg);
      if (!has_cells(lk)) continue;
      Cochain loc = localize(x, sg, above);
      if (loc.bits.n == 0 || loc.bits.is_zero()) continue;
      if (make_weight(lk, kind).of(loc) >= thr) below.set((int)t, true);
    }
    s.strata[(size_t)i - 1] = std::move(below);
  }
  Rat s0 = wf.of(Cochain{0, s.strata[0]});
  s.empty_fat = s0 >= rat_pow(xi, 1u << k);
  if (s.empty_fat && wf.of(c.unioned) < rat_pow(xi, 1u << (k + 1)))
    fail(Err::property, "fat strata: empty cell fat on a small collection");

  s.ladders.assign((size_t)k + 2, Gf2Vector((int)x.layer_size(k)));
  for (int i = 0; i <= k; ++i)
    s.ladders[(size_t)i + 1] = climb_chain(x, s.strata, k, s.strata[(size_t)i], i);
  if (s.empty_fat) s.ladders[0] = climb_chain(x, s.strata, k, s.strata[0], 0);

  // degenerate faces: two same-degree fat faces meeting thinly
  if (k + 1 <= x.dim) {
    s.degenerate = Gf2Vector((int)x.layer_size(k + 1));
    for (long long t = 0; t < x.layer_size(k + 1); ++t) {
      const auto& tv = x.cell(k + 1, (int)t).verts;
      int nv = (int)tv.size();
      bool degen = false;
      for (int i = 0; i <= k && !degen; ++i) {
        std::vector<unsigned> fat_faces;
        for (unsigned msk = 1; msk < (1u << nv); ++msk) {
          if (std::popcount(msk) != i + 1) continue;
          std::vector<int> fv;
          for (int b = 0; b < nv; ++b)
            if ((msk >> b) & 1) fv.push_back(tv[(size_t)b]);
          int idx = x.cell_index(i, simplex_id(fv));
          if (idx >= 0 && s.strata[(size_t)i].get(idx))
            fat_faces.push_back(msk);
        }
        for (size_t a = 0; a < fat_faces.size() && !degen; ++a)
          for (size_t b = a + 1; b < fat_faces.size() && !degen; ++b) {
            unsigned inter = fat_faces[a] & fat_faces[b];
            if (std::popcount(inter) != i) continue;
            bool fat;
            if (i == 0)
              fat = s.empty_fat;
            else {
              std::vector<int> iv;
              for (int bb = 0; bb < nv; ++bb)
                if ((inter >> bb) & 1) iv.push_back(tv[(size_t)bb]);
              int idx = x.cell_index(i - 1, simplex_id(iv));
              fat = idx >= 0 && s.strata[(size_t)i - 1].get(idx);
            }
            if (!fat) degen = true;
          }
      }
      if (degen) s.degenerate.set((int)t, true);
    }
  } else {
    s.degenerate = Gf2Vector(0);
  }
  return s;
}

Gf2Vector ladder_on(const BasedComplex& x, const FatStrata& s,
                    const CellRef& sigma) {
  int k = s.k;
  Gf2Vector none((int)x.layer_size(k));
  if (sigma.k == -1) {
    if (!s.empty_fat) return none;
    return climb_chain(x, s.strata, k, s.strata[0], 0);
  }
  if (sigma.k > k) fail(Err::input, "ladder_on: cell above the collection");
  check_proper_ref(x, sigma, "ladder_on");
  if (!s.strata[(size_t)sigma.k].get((int)sigma.i)) return none;
  Gf2Vector alive((int)x.layer_size(sigma.k));
  alive.set((int)sigma.i, true);
  return climb_chain(x, s.strata, k, std::move(alive), sigma.k);
}

std::vector<Rat> fat_ladder_constants(int k, const Rat& mu, const Rat& eps,
                                      const Rat& xi) {
  if (k < 0) fail(Err::input, "fat ladder: k must be nonnegative");
  if (!(mu > Rat(0))) fail(Err::input, "fat ladder: mu must be positive");
  std::vector<Rat> c((size_t)k + 2, Rat(0));
  c[(size_t)k + 1] = Rat(1);
  for (int i = k; i >= 0; --i)
    c[(size_t)i] =
        (c[(size_t)i + 1] - eps - Rat(k + 2) * Rat(1ll << (k + 4)) * xi) /
        (Rat(k + 2) * mu * Rat(binomial(k + 2, i + 1)));
  return c;
}

FatBoundsReport check_fat_bounds(const BasedComplex& x,
                                 const CochainCollection& c, const Rat& xi,
                                 const Rat& eps,
                                 std::optional<Rat> supplied_mubar, int m_max,
                                 Weight kind, int budget, int workers) {
  if (eps < Rat(0)) fail(Err::input, "eps must be nonnegative");
  if (m_max < 1) fail(Err::input, "m_max must be positive");
  FatStrata s = fat_strata(x, c, xi, kind);
  int k = c.k;
  FatBoundsReport rep;
  rep.k = k;
  rep.xi = xi;
  rep.eps = eps;
  WeightFn wf = make_weight(x, kind);
  auto norm_at = [&](const Gf2Vector& bits, int kk) {
    if (kk > x.dim || bits.n == 0) return Rat(0);
    return wf.of(Cochain{kk, bits});
  };
  Rat uni = wf.of(c.unioned);

  // skeleton expansion of x and of every proper link
  auto links = proper_cells(x, x.dim);
  rep.rho_max = skeleton_rho(x, budget, workers);
  auto rho_slots = run_chunked<Rat>(
      0, links.size(), std::max(1, std::min(workers, (int)links.size())),
      [&](uint64_t lo, uint64_t hi, Rat& slot) {
        for (uint64_t i = lo; i < hi; ++i) {
          BasedComplex lk = link(x, links[(size_t)i]);
          if (!has_cells(lk)) continue;
          Rat r = skeleton_rho(lk, budget, 1);
          if (r > slot) slot = r;
        }
      });
  for (const auto& r : rho_slots) rep.rho_max = std::max(rep.rho_max, r);
  rep.rho_hypothesis = rep.rho_max < rat_pow(xi, 1u << (k + 1));

  rep.minimal_hypothesis =
      is_minimal_collection(x, c, Locality::local, kind, budget, workers)
          .minimal;

  if (supplied_mubar) {
    if (*supplied_mubar <= Rat(0))
      fail(Err::input, "supplied mubar must be positive");
    rep.mubar = *supplied_mubar;
    rep.mubar_source = "supplied";
  } else {
    int m_eff = std::max(m_max, (int)c.members.size());
    auto mu_slots = run_chunked<Rat>(
        0, links.size(), std::max(1, std::min(workers, (int)links.size())),
        [&](uint64_t lo, uint64_t hi, Rat& slot) {
          for (uint64_t i = lo; i < hi; ++i) {
            BasedComplex lk = link(x, links[(size_t)i]);
            if (!has_cells(lk)) continue;
            WeightFn wl = make_weight(lk, kind);
            for (int deg = 0; deg < lk.dim; ++deg) {
              auto rs = collective_cofilling(lk, deg, wl, m_eff, budget, 1);
              if (rs.back().exists && rs.back().value > slot)
                slot = rs.back().value;
            }
          }
        });
    rep.mubar = Rat(1);  // exact for the degree -1 fillings
    for (const auto& r : mu_slots) rep.mubar = std::max(rep.mubar, r);
    rep.mubar_source = "measured(m=" + std::to_string(m_eff) + ")";
  }

  rep.upsilon_norm = norm_at(s.degenerate, k + 1);
  rep.upsilon_bound = Rat(k + 2) * Rat(1ll << (k + 4)) * xi * uni;
  rep.upsilon_ok = rep.rho_hypothesis && rep.upsilon_norm <= rep.upsilon_bound;

  Gf2Vector du((int)(k + 1 <= x.dim ? x.layer_size(k + 1) : 0));
  for (const auto& a : c.members) {
    Cochain d = x.apply_coboundary(a);
    if (d.bits.n == du.n) or_into(du, d.bits);
  }
  Rat dun = norm_at(du, k + 1);

  bool lad = true;
  for (int i = 0; i <= k; ++i) {
    Rat lhs = norm_at(s.ladders[(size_t)i + 1], k);
    Rat prev = norm_at(s.ladders[(size_t)i], k);
    Rat rhs = rep.mubar * Rat(binomial(k + 2, i + 1)) *
              (Rat(k + 2) * prev + dun + rep.upsilon_norm);
    rep.ladder_lhs.push_back(lhs);
    rep.ladder_rhs.push_back(rhs);
    if (lhs > rhs) lad = false;
  }
  rep.ladder_ok = rep.minimal_hypothesis && lad;

  rep.c = fat_ladder_constants(k, rep.mubar, eps, xi);
  rep.c_positive = true;
  for (const auto& v : rep.c)
    if (!(v > Rat(0))) rep.c_positive = false;

  rep.checked = rep.rho_hypothesis || rep.minimal_hypothesis;
  rep.ok = rep.checked && (!rep.rho_hypothesis || rep.upsilon_ok) &&
           (!rep.minimal_hypothesis || rep.ladder_ok);
  return rep;
}

}  // namespace cosyx
