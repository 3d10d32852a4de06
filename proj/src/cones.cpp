#include "cosyx/cones.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "cosyx/homology.hpp"
#include "cosyx/util.hpp"

namespace cosyx {
namespace {

bool dot(const Gf2Vector& a, const Gf2Vector& b) {
  int ones = 0;
  size_t n = std::min(a.w.size(), b.w.size());
  for (size_t i = 0; i < n; ++i) ones += std::popcount(a.w[i] & b.w[i]);
  return ones & 1;
}

void or_into(Gf2Vector& dst, const Gf2Vector& src) {
  for (size_t i = 0; i < dst.w.size(); ++i) dst.w[i] |= src.w[i];
}

long long level_base(const BasedComplex& x, int k) {
  return k == -1 ? 1 : x.layer_size(k);
}

void check_shape(const BasedComplex& x, const ConeSystem& c) {
  if (!x.augmented) fail(Err::input, "cones: complex must be augmented");
  if (c.s_count < 0) fail(Err::input, "cones: negative S size");
  if ((int)c.cones.size() != x.dim + 1)
    fail(Err::input, "cones: expected entries for dimensions -1.." +
                         std::to_string(x.dim - 1));
  for (int k = -1; k < x.dim; ++k) {
    const auto& lv = c.cones[(size_t)(k + 1)];
    if ((long long)lv.size() != level_base(x, k) * c.s_count)
      fail(Err::input,
           "cones: missing entries at dimension " + std::to_string(k));
    for (const auto& v : lv)
      if (v.n != (int)x.layer_size(k + 1))
        fail(Err::input,
             "cones: chain length mismatch at dimension " + std::to_string(k));
  }
}

Cochain contract_raw(const BasedComplex& x, const ConeSystem& c, long long s,
                     const Cochain& b) {
  Cochain out = x.zero_cochain(b.k - 1);
  long long base = level_base(x, b.k - 1);
  for (long long i = 0; i < base; ++i)
    if (dot(c.at(b.k - 1, i, s), b.bits)) out.bits.set((int)i, true);
  return out;
}

void check_gen(const BasedComplex& x, long long s_count, const GroupGen& g) {
  if ((int)g.cell_image.size() != x.dim + 1)
    fail(Err::input, "generator: wrong number of layers");
  for (int k = 0; k <= x.dim; ++k) {
    long long n = x.layer_size(k);
    if ((long long)g.cell_image[(size_t)k].size() != n)
      fail(Err::input, "generator: layer size mismatch");
    std::vector<char> hit((size_t)n, 0);
    for (long long v : g.cell_image[(size_t)k]) {
      if (v < 0 || v >= n || hit[(size_t)v])
        fail(Err::input, "generator: cell images are not a permutation");
      hit[(size_t)v] = 1;
    }
  }
  if ((long long)g.s_image.size() != s_count)
    fail(Err::input, "generator: wrong S image size");
  std::vector<char> hit((size_t)s_count, 0);
  for (long long v : g.s_image) {
    if (v < 0 || v >= s_count || hit[(size_t)v])
      fail(Err::input, "generator: S images are not a permutation");
    hit[(size_t)v] = 1;
  }
  for (int k = 1; k <= x.dim; ++k)
    for (long long i = 0; i < x.layer_size(k); ++i) {
      std::vector<int> got;
      for (int f : x.bnd_support(k, (int)i))
        got.push_back((int)g.cell_image[(size_t)k - 1][(size_t)f]);
      std::sort(got.begin(), got.end());
      std::vector<int> want =
          x.bnd_support(k, (int)g.cell_image[(size_t)k][(size_t)i]);
      if (got != want)
        fail(Err::input, "generator does not respect the boundary");
    }
}

void check_sub(const BasedComplex& x, const SubComplex& sub) {
  if ((int)sub.layers.size() != x.dim + 1)
    fail(Err::input, "subcomplex: wrong number of layers");
  for (int k = 0; k <= x.dim; ++k)
    if (sub.layers[(size_t)k].n != (int)x.layer_size(k))
      fail(Err::input, "subcomplex: layer size mismatch");
  for (int k = 1; k <= x.dim; ++k)
    for (int i : sub.layers[(size_t)k].support())
      for (int f : x.bnd_support(k, i))
        if (!sub.layers[(size_t)k - 1].get(f))
          fail(Err::input, "subcomplex: not closed under faces");
}

bool sub_subset(const SubComplex& a, const SubComplex& b) {
  for (size_t k = 0; k < a.layers.size(); ++k)
    for (size_t t = 0; t < a.layers[k].w.size(); ++t)
      if (a.layers[k].w[t] & ~b.layers[k].w[t]) return false;
  return true;
}

SubComplex apply_gen_sub(const BasedComplex& x, const GroupGen& g,
                         const SubComplex& sub) {
  SubComplex out;
  out.layers.assign((size_t)x.dim + 1, {});
  for (int k = 0; k <= x.dim; ++k) {
    out.layers[(size_t)k] = Gf2Vector((int)x.layer_size(k));
    for (int i : sub.layers[(size_t)k].support())
      out.layers[(size_t)k].set((int)g.cell_image[(size_t)k][(size_t)i], true);
  }
  return out;
}

// Ranks of the boundary maps of the masked subcomplex; entry 0 is the
// augmentation row, present whenever the vertex mask is nonempty.
std::vector<long long> sub_ranks(const BasedComplex& x, const SubComplex& sub,
                                 int kmax) {
  std::vector<long long> r((size_t)kmax + 1, 0);
  if (kmax >= 0) r[0] = sub.layers[0].popcount() > 0 ? 1 : 0;
  for (int k = 1; k <= kmax; ++k) {
    if (k > x.dim) break;
    std::vector<int> cols = sub.layers[(size_t)k].support();
    std::vector<int> rows = sub.layers[(size_t)k - 1].support();
    std::vector<int> pos((size_t)x.layer_size(k - 1), -1);
    for (size_t t = 0; t < rows.size(); ++t) pos[(size_t)rows[t]] = (int)t;
    Gf2Matrix m((int)rows.size(), (int)cols.size());
    for (size_t ci = 0; ci < cols.size(); ++ci)
      for (int f : x.bnd_support(k, cols[ci]))
        m.set(pos[(size_t)f], (int)ci, true);
    r[(size_t)k] = rank(std::move(m));
  }
  return r;
}

// Reduced Betti number of the masked subcomplex in dimension i, using
// precomputed ranks reaching at least i + 1.
long long sub_betti(const BasedComplex& x, const SubComplex& sub,
                    const std::vector<long long>& r, int i) {
  if (i == -1) return 1 - r[0];
  long long n = i > x.dim ? 0 : sub.layers[(size_t)i].popcount();
  long long up = i + 1 > x.dim ? 0 : r[(size_t)i + 1];
  return n - r[(size_t)i] - up;
}

// Orbit index per cell of one layer under the generated group; forward
// closure suffices because the generators are permutations.
std::vector<int> layer_orbits(const BasedComplex& x,
                              const std::vector<GroupGen>& gens, int k) {
  long long n = x.layer_size(k);
  std::vector<int> orb((size_t)n, -1);
  int next = 0;
  for (long long i = 0; i < n; ++i) {
    if (orb[(size_t)i] >= 0) continue;
    std::vector<long long> stack{i};
    orb[(size_t)i] = next;
    while (!stack.empty()) {
      long long cur = stack.back();
      stack.pop_back();
      for (const auto& g : gens) {
        long long img = g.cell_image[(size_t)k][(size_t)cur];
        if (orb[(size_t)img] < 0) {
          orb[(size_t)img] = next;
          stack.push_back(img);
        }
      }
    }
    ++next;
  }
  return orb;
}

}  // namespace

ConeVerdict validate_cones(const BasedComplex& x, const ConeSystem& c) {
  check_shape(x, c);
  ConeVerdict v;
  for (int k = -1; k < x.dim; ++k) {
    long long base = level_base(x, k);
    for (long long i = 0; i < base; ++i) {
      std::vector<int> faces =
          k >= 1 ? x.bnd_support(k, (int)i) : std::vector<int>{};
      for (long long s = 0; s < c.s_count; ++s) {
        const Gf2Vector& cn = c.at(k, i, s);
        bool bad;
        if (k == -1) {
          bad = (cn.popcount() & 1) == 0;
        } else {
          Gf2Vector rhs((int)x.layer_size(k));
          rhs.set((int)i, true);
          if (k == 0) {
            rhs ^= c.at(-1, 0, s);
          } else {
            for (int f : faces) rhs ^= c.at(k - 1, f, s);
          }
          bad = !(x.bnd[(size_t)k + 1].mul(cn) == rhs);
        }
        if (bad) {
          v.sigma = CellRef{k, i};
          v.s = s;
          v.what = "boundary law violated";
          return v;
        }
      }
    }
  }
  v.ok = true;
  return v;
}

std::pair<BasedComplex, ConeSystem> simplex_cones(int n) {
  if (n < 2) fail(Err::input, "simplex_cones: need at least two vertices");
  std::vector<int> all((size_t)n);
  for (int i = 0; i < n; ++i) all[(size_t)i] = i;
  BasedComplex x = BasedComplex::from_facets({all}, true);
  ConeSystem c;
  c.s_count = n;
  c.cones.assign((size_t)x.dim + 1, {});
  for (int k = -1; k < x.dim; ++k) {
    long long base = level_base(x, k);
    auto& lv = c.cones[(size_t)(k + 1)];
    lv.assign((size_t)(base * n), Gf2Vector((int)x.layer_size(k + 1)));
    for (long long i = 0; i < base; ++i) {
      const std::vector<int> verts =
          k == -1 ? std::vector<int>{} : x.cell(k, (int)i).verts;
      for (int s = 0; s < n; ++s) {
        if (std::find(verts.begin(), verts.end(), s) != verts.end()) continue;
        std::vector<int> up = verts;
        up.insert(std::lower_bound(up.begin(), up.end(), s), s);
        int j = x.cell_index(k + 1, simplex_id(up));
        lv[(size_t)(i * n + s)].set(j, true);
      }
    }
  }
  return {std::move(x), std::move(c)};
}

Cochain contraction(const BasedComplex& x, const ConeSystem& c, long long s,
                    const Cochain& b) {
  check_shape(x, c);
  if (s < 0 || s >= c.s_count) fail(Err::input, "contraction: s out of range");
  if (b.k < 0 || b.k > x.dim)
    fail(Err::input, "contraction: degree out of range");
  if (b.bits.n != (int)x.layer_size(b.k))
    fail(Err::input, "contraction: cochain length mismatch");
  return contract_raw(x, c, s, b);
}

Rat theta(const BasedComplex& x, const ConeSystem& c, int k, Weight kind) {
  check_shape(x, c);
  if (k < -1 || k >= x.dim) fail(Err::input, "theta: level out of range");
  long long m = x.layer_size(k + 1);
  if (m == 0 || c.s_count == 0) return Rat(0);
  WeightFn w = make_weight(x, kind);
  std::vector<Rat> acc((size_t)m, Rat(0));
  long long base = level_base(x, k);
  for (long long i = 0; i < base; ++i) {
    Rat we = w.cell(k, (int)i);
    for (long long s = 0; s < c.s_count; ++s)
      for (int j : c.at(k, i, s).support()) acc[(size_t)j] += we;
  }
  Rat best(0);
  for (long long j = 0; j < m; ++j) {
    if (acc[(size_t)j] == Rat(0)) continue;
    Rat wj = w.cell(k + 1, (int)j);
    if (wj == Rat(0))
      fail(Err::property, "theta: cone meets a cell of zero weight");
    Rat v = acc[(size_t)j] / (Rat(c.s_count) * wj);
    if (v > best) best = v;
  }
  return best;
}

ConeCofillResult cofill_via_cones(const BasedComplex& x, const ConeSystem& c,
                                  const std::vector<Cochain>& betas,
                                  Weight kind, int workers) {
  check_shape(x, c);
  if (betas.empty()) fail(Err::input, "cone cofill: empty collection");
  if (c.s_count == 0) fail(Err::input, "cone cofill: S is empty");
  int deg = betas[0].k;
  if (deg < 0 || deg > x.dim)
    fail(Err::input, "cone cofill: degree out of range");
  for (const auto& b : betas) {
    if (b.k != deg) fail(Err::input, "cone cofill: mixed degrees");
    if (b.bits.n != (int)x.layer_size(deg))
      fail(Err::input, "cone cofill: cochain length mismatch");
  }
  for (size_t a = 0; a < betas.size(); ++a) {
    ClassifyResult cr = classify(x, betas[a]);
    if (cr.cls != CocycleClass::coboundary)
      fail(Err::input,
           "cone cofill: member " + std::to_string(a) + " is " +
               (cr.cls == CocycleClass::not_cocycle ? "not a cocycle"
                                                    : "a nontrivial cocycle"));
  }

  WeightFn w = make_weight(x, kind);
  Cochain ub = x.zero_cochain(deg);
  for (const auto& b : betas) or_into(ub.bits, b.bits);
  Rat ubn = w.of(ub);
  int k = deg - 1;

  long long S = c.s_count;
  std::vector<Rat> un((size_t)S, Rat(0));
  auto work = [&](long long lo, long long hi) {
    for (long long s = lo; s < hi; ++s) {
      Cochain u = x.zero_cochain(k);
      for (const auto& b : betas) or_into(u.bits, contract_raw(x, c, s, b).bits);
      un[(size_t)s] = w.of(u);
    }
  };
  int nw = std::max(1, std::min<int>(workers, (int)S));
  if (nw == 1) {
    work(0, S);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nw; ++t)
      pool.emplace_back(work, S * t / nw, S * (t + 1) / nw);
    for (auto& th : pool) th.join();
  }

  ConeCofillResult r;
  r.theta_k = theta(x, c, k, kind);
  Rat sum(0);
  for (const Rat& v : un) sum += v;
  r.averaged = sum / Rat(S);
  if (r.averaged > r.theta_k * ubn)
    fail(Err::property, "cone cofill: averaged norm exceeds the theta bound");

  long long best = 0;
  for (long long s = 1; s < S; ++s)
    if (un[(size_t)s] < un[(size_t)best]) best = s;
  r.s = best;
  r.union_norm = un[(size_t)best];
  r.ratio = ubn == Rat(0) ? Rat(0) : r.union_norm / ubn;
  for (const auto& b : betas) {
    Cochain g = contract_raw(x, c, best, b);
    if (!(x.apply_coboundary(g).bits == b.bits))
      fail(Err::property, "cone cofill: contraction is not a preimage");
    r.gammas.push_back(std::move(g));
  }
  return r;
}

GroupGen vertex_gen(const BasedComplex& x,
                    const std::vector<std::pair<int, int>>& images,
                    std::vector<long long> s_image) {
  if (!x.is_labeled()) fail(Err::input, "vertex_gen: complex is unlabeled");
  std::map<int, int> m(images.begin(), images.end());
  if (m.size() != images.size())
    fail(Err::input, "vertex_gen: duplicate source label");
  GroupGen g;
  g.s_image = std::move(s_image);
  g.cell_image.assign((size_t)x.dim + 1, {});
  for (int k = 0; k <= x.dim; ++k) {
    long long n = x.layer_size(k);
    g.cell_image[(size_t)k].assign((size_t)n, -1);
    std::vector<char> hit((size_t)n, 0);
    for (long long i = 0; i < n; ++i) {
      std::vector<int> v = x.cell(k, (int)i).verts;
      for (int& t : v) {
        auto it = m.find(t);
        if (it != m.end()) t = it->second;
      }
      std::sort(v.begin(), v.end());
      if (std::adjacent_find(v.begin(), v.end()) != v.end())
        fail(Err::input, "vertex_gen: relabeling collapses a cell");
      int j = x.cell_index(k, simplex_id(v));
      if (j < 0)
        fail(Err::input, "vertex_gen: image of " + x.cell(k, (int)i).id +
                             " is not a cell");
      if (hit[(size_t)j])
        fail(Err::input, "vertex_gen: relabeling is not injective on cells");
      hit[(size_t)j] = 1;
      g.cell_image[(size_t)k][(size_t)i] = j;
    }
  }
  return g;
}

BuildingLikeReport check_building_like(const BasedComplex& x, long long s_count,
                                       const BuildingLikeData& d, int nmax) {
  if (s_count <= 0) fail(Err::input, "building check: S must be nonempty");
  if (nmax < 0 || nmax > x.dim)
    fail(Err::input, "building check: nmax out of range");
  for (const auto& g : d.gens) check_gen(x, s_count, g);
  if ((int)d.b.size() != nmax + 1)
    fail(Err::input, "building check: expected B entries for dimensions -1.." +
                         std::to_string(nmax - 1));
  for (int k = -1; k < nmax; ++k) {
    const auto& lv = d.b[(size_t)(k + 1)];
    if ((long long)lv.size() != level_base(x, k) * s_count)
      fail(Err::input,
           "building check: missing B entries at dimension " +
               std::to_string(k));
    for (const auto& sub : lv) check_sub(x, sub);
  }
  for (int k = 0; k < nmax; ++k)
    for (long long i = 0; i < x.layer_size(k); ++i)
      for (long long s = 0; s < s_count; ++s)
        if (!d.b[(size_t)(k + 1)][(size_t)(i * s_count + s)].has(k, i))
          fail(Err::input, "building check: sigma outside B at " +
                               x.cell(k, (int)i).id);
  for (int k = 0; k < nmax; ++k)
    for (long long i = 0; i < x.layer_size(k); ++i) {
      std::vector<int> faces =
          k >= 1 ? x.bnd_support(k, (int)i) : std::vector<int>{0};
      for (long long s = 0; s < s_count; ++s) {
        const SubComplex& here =
            d.b[(size_t)(k + 1)][(size_t)(i * s_count + s)];
        for (int f : faces) {
          const SubComplex& lower =
              k == 0 ? d.b[0][(size_t)s]
                     : d.b[(size_t)k][(size_t)(f * s_count + s)];
          if (!sub_subset(lower, here))
            fail(Err::input, "building check: B is not monotone at " +
                                 x.cell(k, (int)i).id);
        }
      }
    }

  BuildingLikeReport r;

  {
    long long tn = x.layer_size(x.dim);
    std::vector<char> seen((size_t)tn, 0);
    std::vector<long long> stack{0};
    seen[0] = 1;
    long long cnt = tn > 0 ? 1 : 0;
    while (!stack.empty()) {
      long long cur = stack.back();
      stack.pop_back();
      for (const auto& g : d.gens) {
        long long img = g.cell_image[(size_t)x.dim][(size_t)cur];
        if (!seen[(size_t)img]) {
          seen[(size_t)img] = 1;
          ++cnt;
          stack.push_back(img);
        }
      }
    }
    r.orbit_size = cnt;
    r.transitive = cnt == tn;
  }

  r.equivariant = true;
  for (size_t gi = 0; gi < d.gens.size() && r.equivariant; ++gi) {
    const GroupGen& g = d.gens[gi];
    for (int k = -1; k < nmax && r.equivariant; ++k) {
      long long base = level_base(x, k);
      for (long long i = 0; i < base && r.equivariant; ++i) {
        long long gi_cell =
            k == -1 ? 0 : g.cell_image[(size_t)k][(size_t)i];
        for (long long s = 0; s < s_count; ++s) {
          SubComplex img = apply_gen_sub(
              x, g, d.b[(size_t)(k + 1)][(size_t)(i * s_count + s)]);
          const SubComplex& want =
              d.b[(size_t)(k + 1)]
                 [(size_t)(gi_cell * s_count + g.s_image[(size_t)s])];
          if (!(img.layers == want.layers)) {
            r.equivariant = false;
            r.equiv_witness = std::make_tuple((int)gi, CellRef{k, i}, s);
            break;
          }
        }
      }
    }
  }

  r.homology_ok = true;
  for (int k = -1; k < nmax && r.homology_ok; ++k) {
    long long base = level_base(x, k);
    for (long long i = 0; i < base && r.homology_ok; ++i)
      for (long long s = 0; s < s_count && r.homology_ok; ++s) {
        const SubComplex& sub =
            d.b[(size_t)(k + 1)][(size_t)(i * s_count + s)];
        std::vector<long long> ranks = sub_ranks(x, sub, k + 1);
        for (int i2 = -1; i2 <= k; ++i2)
          if (sub_betti(x, sub, ranks, i2) != 0) {
            r.homology_ok = false;
            r.hom_witness = std::make_tuple(CellRef{k, i}, s, i2);
            break;
          }
      }
  }

  r.a.assign((size_t)nmax + 1, 0);
  r.mubar_bound.assign((size_t)nmax + 1, Rat(0));
  for (int k = -1; k < nmax; ++k) {
    std::vector<int> orb = layer_orbits(x, d.gens, k + 1);
    int norb = orb.empty() ? 0 : 1 + *std::max_element(orb.begin(), orb.end());
    long long base = level_base(x, k);
    long long best = 0;
    std::vector<long long> cnt((size_t)norb, 0);
    for (long long i = 0; i < base; ++i)
      for (long long s = 0; s < s_count; ++s) {
        std::fill(cnt.begin(), cnt.end(), 0);
        const SubComplex& sub =
            d.b[(size_t)(k + 1)][(size_t)(i * s_count + s)];
        for (int j : sub.layers[(size_t)(k + 1)].support())
          best = std::max(best, ++cnt[(size_t)orb[(size_t)j]]);
      }
    r.a[(size_t)(k + 1)] = best;
    r.mubar_bound[(size_t)(k + 1)] =
        Rat(binomial(x.dim + 1, k + 2)) * Rat(best);
  }

  r.ok = r.transitive && r.equivariant && r.homology_ok;
  return r;
}

void write_cones(std::ostream& os, const BasedComplex& x,
                 const ConeSystem& c) {
  check_shape(x, c);
  os << "cones " << c.s_count << "\n";
  for (int k = -1; k < x.dim; ++k) {
    long long base = level_base(x, k);
    for (long long i = 0; i < base; ++i)
      for (long long s = 0; s < c.s_count; ++s) {
        const Gf2Vector& v = c.at(k, i, s);
        if (v.is_zero()) continue;
        os << (k == -1 ? std::string("-") : x.cell(k, (int)i).id) << " " << s
           << " :";
        for (int j : v.support()) os << " " << x.cell(k + 1, j).id;
        os << "\n";
      }
  }
  os << "end\n";
}

ConeSystem read_cones(std::istream& is, const BasedComplex& x) {
  std::string tok;
  is >> tok;
  if (tok != "cones" || !(is >> tok))
    fail(Err::input, "cone file: bad header");
  ConeSystem c;
  try {
    c.s_count = std::stoll(tok);
  } catch (const std::exception&) {
    fail(Err::input, "cone file: bad header");
  }
  if (c.s_count < 0) fail(Err::input, "cone file: bad header");
  c.cones.assign((size_t)x.dim + 1, {});
  for (int k = -1; k < x.dim; ++k)
    c.cones[(size_t)(k + 1)].assign(
        (size_t)(level_base(x, k) * c.s_count),
        Gf2Vector((int)x.layer_size(k + 1)));
  std::getline(is, tok);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line == "end") return c;
    std::istringstream ls(line);
    std::string sid, colon;
    long long s = -1;
    ls >> sid >> s >> colon;
    if (!ls || colon != ":") fail(Err::input, "cone file: bad line: " + line);
    int k = -2;
    long long i = 0;
    if (sid == "-") {
      k = -1;
    } else {
      for (int kk = 0; kk <= x.dim && k == -2; ++kk) {
        int idx = x.cell_index(kk, sid);
        if (idx >= 0) {
          k = kk;
          i = idx;
        }
      }
      if (k == -2) fail(Err::input, "cone file: unknown cell " + sid);
    }
    if (k == x.dim) fail(Err::input, "cone file: cell " + sid + " is top");
    if (s < 0 || s >= c.s_count)
      fail(Err::input, "cone file: s out of range: " + line);
    Gf2Vector& v = c.cones[(size_t)(k + 1)][(size_t)(i * c.s_count + s)];
    std::string cid;
    while (ls >> cid) {
      int j = x.cell_index(k + 1, cid);
      if (j < 0) fail(Err::input, "cone file: unknown cell " + cid);
      v.set(j, true);
    }
  }
  fail(Err::input, "cone file: missing end marker");
}

}  // namespace cosyx
