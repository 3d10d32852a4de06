#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "cosyx/cones.hpp"
#include "cosyx/expansion.hpp"
#include "cosyx/zoo.hpp"

using namespace cosyx;

namespace {

BasedComplex tri() { return BasedComplex::from_facets({{0, 1, 2}}, true); }

int cix(const BasedComplex& x, int k, std::vector<int> v) {
  std::sort(v.begin(), v.end());
  int i = x.cell_index(k, simplex_id(v));
  REQUIRE(i >= 0);
  return i;
}

Cochain chain(const BasedComplex& x, int k,
              const std::vector<std::vector<int>>& cells) {
  Cochain a = x.zero_cochain(k);
  for (const auto& v : cells) a.bits.set(cix(x, k, v), true);
  return a;
}

Err code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code;
  }
  FAIL("expected a failure");
  return Err::input;
}

// Direct evaluation on a full simplex: the cone over sigma at s is the
// cell sigma + {s}, empty when s already lies in sigma.
Cochain simplex_contract_oracle(const BasedComplex& x, long long s,
                                const Cochain& b) {
  Cochain out = x.zero_cochain(b.k - 1);
  long long base = b.k - 1 == -1 ? 1 : x.layer_size(b.k - 1);
  for (long long i = 0; i < base; ++i) {
    std::vector<int> v =
        b.k - 1 == -1 ? std::vector<int>{} : x.cell(b.k - 1, (int)i).verts;
    if (std::find(v.begin(), v.end(), (int)s) != v.end()) continue;
    v.insert(std::lower_bound(v.begin(), v.end(), (int)s), (int)s);
    int j = x.cell_index(b.k, simplex_id(v));
    if (j >= 0 && b.bits.get(j)) out.bits.set((int)i, true);
  }
  return out;
}

SubComplex whole(const BasedComplex& x) {
  SubComplex s;
  s.layers.assign((size_t)x.dim + 1, {});
  for (int k = 0; k <= x.dim; ++k) {
    s.layers[(size_t)k] = Gf2Vector((int)x.layer_size(k));
    for (long long i = 0; i < x.layer_size(k); ++i)
      s.layers[(size_t)k].set((int)i, true);
  }
  return s;
}

// closure of the listed cells, each given by its vertex labels
SubComplex sub_of(const BasedComplex& x,
                  const std::vector<std::vector<int>>& cells) {
  SubComplex s;
  s.layers.assign((size_t)x.dim + 1, {});
  for (int k = 0; k <= x.dim; ++k)
    s.layers[(size_t)k] = Gf2Vector((int)x.layer_size(k));
  std::vector<std::pair<int, int>> stack;
  for (auto v : cells) stack.push_back({(int)v.size() - 1, cix(x, (int)v.size() - 1, v)});
  while (!stack.empty()) {
    auto [k, i] = stack.back();
    stack.pop_back();
    if (s.layers[(size_t)k].get(i)) continue;
    s.layers[(size_t)k].set(i, true);
    if (k >= 1)
      for (int f : x.bnd_support(k, i)) stack.push_back({k - 1, f});
  }
  return s;
}

Gf2Vector unit_bits(int n, int i) {
  Gf2Vector v(n);
  v.set(i, true);
  return v;
}

}  // namespace

TEST_CASE("simplex cone systems satisfy the boundary law") {
  for (int n : {2, 3, 4, 5}) {
    auto [x, c] = simplex_cones(n);
    CHECK(x.dim == n - 1);
    CHECK(x.augmented);
    CHECK(c.s_count == n);
    CHECK((int)c.cones.size() == x.dim + 1);
    ConeVerdict v = validate_cones(x, c);
    CHECK(v.ok);
    CHECK(!v.sigma.has_value());
  }

  auto [x, c] = simplex_cones(3);
  CHECK(c.at(-1, 0, 1) == unit_bits(3, cix(x, 0, {1})));
  CHECK(c.at(0, cix(x, 0, {0}), 1) == unit_bits(3, cix(x, 1, {0, 1})));
  CHECK(c.at(0, cix(x, 0, {0}), 0).is_zero());
  CHECK(c.at(1, cix(x, 1, {0, 2}), 1) == unit_bits(1, cix(x, 2, {0, 1, 2})));

  CHECK(code_of([] { simplex_cones(1); }) == Err::input);
}

TEST_CASE("cone validation pinpoints the first broken entry") {
  auto [x, c] = simplex_cones(4);
  int i = cix(x, 0, {1});
  c.cones[1][(size_t)(i * 4 + 2)] = Gf2Vector((int)x.layer_size(1));
  ConeVerdict v = validate_cones(x, c);
  CHECK(!v.ok);
  REQUIRE(v.sigma.has_value());
  CHECK(v.sigma->k == 0);
  CHECK(v.sigma->i == i);
  CHECK(v.s == 2);
  CHECK(!v.what.empty());

  auto [y, d] = simplex_cones(4);
  d.cones[0][3] = Gf2Vector((int)y.layer_size(0));
  ConeVerdict w = validate_cones(y, d);
  CHECK(!w.ok);
  REQUIRE(w.sigma.has_value());
  CHECK(w.sigma->k == -1);
  CHECK(w.s == 3);
}

TEST_CASE("cone validation is vacuous without sections") {
  BasedComplex x = tri();
  ConeSystem c;
  c.s_count = 0;
  c.cones.assign((size_t)x.dim + 1, {});
  CHECK(validate_cones(x, c).ok);
}

TEST_CASE("malformed cone tables are rejected") {
  auto [x, c] = simplex_cones(3);

  BasedComplex plain = BasedComplex::from_facets({{0, 1, 2}}, false);
  CHECK(code_of([&] { validate_cones(plain, c); }) == Err::input);

  ConeSystem short_levels = c;
  short_levels.cones.pop_back();
  CHECK(code_of([&] { validate_cones(x, short_levels); }) == Err::input);

  ConeSystem short_entries = c;
  short_entries.cones[1].pop_back();
  CHECK(code_of([&] { validate_cones(x, short_entries); }) == Err::input);

  ConeSystem bad_width = c;
  bad_width.cones[1][0] = Gf2Vector(1);
  CHECK(code_of([&] { validate_cones(x, bad_width); }) == Err::input);

  Cochain b = chain(x, 1, {{0, 1}});
  CHECK(code_of([&] { contraction(x, c, 3, b); }) == Err::input);
  CHECK(code_of([&] { contraction(x, c, -1, b); }) == Err::input);
  Cochain top = x.zero_cochain(x.dim + 1);
  CHECK(code_of([&] { contraction(x, c, 0, top); }) == Err::input);
  Cochain narrow{1, Gf2Vector(2)};
  CHECK(code_of([&] { contraction(x, c, 0, narrow); }) == Err::input);

  CHECK(code_of([&] { theta(x, c, x.dim); }) == Err::input);
  CHECK(code_of([&] { theta(x, c, -2); }) == Err::input);
}

TEST_CASE("contraction matches the direct cone evaluation") {
  auto [x, c] = simplex_cones(5);
  std::mt19937_64 rng(7);
  for (int deg = 0; deg <= x.dim; ++deg) {
    Cochain zero = x.zero_cochain(deg);
    for (long long s = 0; s < 5; ++s)
      CHECK(contraction(x, c, s, zero).bits.is_zero());
    for (int trial = 0; trial < 3; ++trial) {
      Cochain b = x.zero_cochain(deg);
      for (int i = 0; i < b.bits.n; ++i)
        if (rng() & 1) b.bits.set(i, true);
      for (long long s = 0; s < 5; ++s) {
        Cochain got = contraction(x, c, s, b);
        Cochain want = simplex_contract_oracle(x, s, b);
        CHECK(got.k == deg - 1);
        CHECK(got.bits == want.bits);
      }
    }
  }
}

TEST_CASE("contraction and coboundary compose to the identity") {
  auto [x, c] = simplex_cones(4);
  for (int deg = 0; deg <= x.dim; ++deg)
    for (int i = 0; i < (int)x.layer_size(deg); ++i)
      for (long long s = 0; s < c.s_count; ++s) {
        Cochain b = x.zero_cochain(deg);
        b.bits.set(i, true);
        Cochain lhs = x.apply_coboundary(contraction(x, c, s, b));
        if (deg < x.dim) lhs.bits ^= contraction(x, c, s, x.apply_coboundary(b)).bits;
        CHECK(lhs.bits == b.bits);
      }

  auto [y, d] = simplex_cones(5);
  std::mt19937_64 rng(19);
  for (int deg = 0; deg <= y.dim; ++deg)
    for (int trial = 0; trial < 2; ++trial) {
      Cochain b = y.zero_cochain(deg);
      for (int i = 0; i < b.bits.n; ++i)
        if (rng() & 1) b.bits.set(i, true);
      for (long long s = 0; s < d.s_count; ++s) {
        Cochain lhs = y.apply_coboundary(contraction(y, d, s, b));
        if (deg < y.dim)
          lhs.bits ^= contraction(y, d, s, y.apply_coboundary(b)).bits;
        CHECK(lhs.bits == b.bits);
      }
    }
}

TEST_CASE("contracting a coboundary yields a genuine preimage") {
  auto [x, c] = simplex_cones(4);
  std::mt19937_64 rng(23);
  for (int deg = -1; deg < x.dim; ++deg) {
    Cochain a = x.zero_cochain(deg);
    for (int i = 0; i < a.bits.n; ++i)
      if (deg == -1 || (rng() & 1)) a.bits.set(i, true);
    Cochain b = x.apply_coboundary(a);
    for (long long s = 0; s < c.s_count; ++s) {
      Cochain g = contraction(x, c, s, b);
      CHECK(x.apply_coboundary(g).bits == b.bits);
    }
  }
}

TEST_CASE("theta on a full simplex is the complement fraction") {
  for (int n : {3, 4, 5}) {
    auto [x, c] = simplex_cones(n);
    for (int k = -1; k < x.dim; ++k) {
      CHECK(theta(x, c, k) == Rat(n - 1 - k, n));
      CHECK(theta(x, c, k, Weight::hamming) ==
            (k == -1 ? Rat(1, n) : Rat(k + 2, n)));
    }
  }
  auto [x, c] = simplex_cones(4);
  CHECK(theta(x, c, 0) == Rat(3, 4));
}

TEST_CASE("theta vanishes when cones avoid the next layer") {
  auto [x, c] = simplex_cones(3);
  for (auto& v : c.cones[1]) v = Gf2Vector((int)x.layer_size(1));
  CHECK(theta(x, c, 0) == Rat(0));
}

TEST_CASE("duplicating the section set leaves theta unchanged") {
  auto [x, c] = simplex_cones(4);
  ConeSystem d;
  d.s_count = 8;
  d.cones.assign(c.cones.size(), {});
  for (int k = -1; k < x.dim; ++k) {
    long long base = k == -1 ? 1 : x.layer_size(k);
    d.cones[(size_t)(k + 1)].resize((size_t)(base * 8));
    for (long long i = 0; i < base; ++i)
      for (long long s = 0; s < 8; ++s)
        d.cones[(size_t)(k + 1)][(size_t)(i * 8 + s)] = c.at(k, i, s % 4);
  }
  for (int k = -1; k < x.dim; ++k) CHECK(theta(x, d, k) == theta(x, c, k));
}

TEST_CASE("cone cofilling picks the cheapest section deterministically") {
  auto [x, c] = simplex_cones(5);
  Cochain beta = x.apply_coboundary(chain(x, 0, {{4}}));
  ConeCofillResult r = cofill_via_cones(x, c, {beta});
  CHECK(r.s == 0);
  CHECK(r.union_norm == Rat(1, 5));
  CHECK(r.ratio == Rat(1, 2));
  CHECK(r.averaged == Rat(8, 25));
  CHECK(r.theta_k == Rat(4, 5));
  REQUIRE(r.gammas.size() == 1);
  CHECK(r.gammas[0].k == 0);
  CHECK(r.gammas[0].bits == chain(x, 0, {{4}}).bits);
  CHECK(x.apply_coboundary(r.gammas[0]).bits == beta.bits);
  // the averaged ceiling is met exactly here
  WeightFn w = make_weight(x, Weight::topcell);
  CHECK(r.averaged == r.theta_k * w.of(beta));
}

TEST_CASE("cofilling the augmentation layer") {
  auto [x, c] = simplex_cones(4);
  Cochain one = x.zero_cochain(-1);
  one.bits.set(0, true);
  Cochain b = x.apply_coboundary(one);
  ConeCofillResult r = cofill_via_cones(x, c, {b});
  CHECK(r.s == 0);
  CHECK(r.union_norm == Rat(1));
  CHECK(r.ratio == Rat(1));
  CHECK(r.averaged == Rat(1));
  CHECK(r.theta_k == Rat(1));
  CHECK(r.gammas[0].bits == one.bits);
}

TEST_CASE("cone cofilling of nothing costs nothing") {
  auto [x, c] = simplex_cones(5);
  ConeCofillResult r = cofill_via_cones(x, c, {x.zero_cochain(1)});
  CHECK(r.s == 0);
  CHECK(r.union_norm == Rat(0));
  CHECK(r.ratio == Rat(0));
  CHECK(r.averaged == Rat(0));
  CHECK(r.gammas[0].bits.is_zero());
}

TEST_CASE("joint cone cofilling stays under the averaged ceiling") {
  auto [x, c] = simplex_cones(5);
  std::vector<Cochain> betas = {x.apply_coboundary(chain(x, 0, {{4}})),
                                x.apply_coboundary(chain(x, 0, {{1}, {2}}))};
  WeightFn w = make_weight(x, Weight::topcell);

  // independent best section from the direct cone evaluation
  long long best = -1;
  Rat best_norm(0), sum(0);
  for (long long s = 0; s < 5; ++s) {
    Cochain u = x.zero_cochain(0);
    for (const auto& b : betas) {
      Cochain g = simplex_contract_oracle(x, s, b);
      for (size_t t = 0; t < u.bits.w.size(); ++t) u.bits.w[t] |= g.bits.w[t];
    }
    Rat nrm = w.of(u);
    sum += nrm;
    if (best < 0 || nrm < best_norm) {
      best = s;
      best_norm = nrm;
    }
  }

  ConeCofillResult r = cofill_via_cones(x, c, betas);
  CHECK(r.s == best);
  CHECK(r.union_norm == best_norm);
  CHECK(r.averaged == sum / Rat(5));
  Cochain ub = x.zero_cochain(1);
  for (const auto& b : betas)
    for (size_t t = 0; t < ub.bits.w.size(); ++t) ub.bits.w[t] |= b.bits.w[t];
  CHECK(r.averaged <= r.theta_k * w.of(ub));
  CHECK(r.ratio == r.union_norm / w.of(ub));
  for (size_t a = 0; a < betas.size(); ++a)
    CHECK(x.apply_coboundary(r.gammas[a]).bits == betas[a].bits);

  ConeCofillResult r3 = cofill_via_cones(x, c, betas, Weight::topcell, 3);
  CHECK(r3.s == r.s);
  CHECK(r3.union_norm == r.union_norm);
  CHECK(r3.averaged == r.averaged);
  CHECK(r3.ratio == r.ratio);
  for (size_t a = 0; a < betas.size(); ++a)
    CHECK(r3.gammas[a].bits == r.gammas[a].bits);
}

TEST_CASE("cone cofilling rejects bad members") {
  auto [x, c] = simplex_cones(5);
  CHECK(code_of([&] { cofill_via_cones(x, c, {}); }) == Err::input);
  CHECK(code_of([&] {
          cofill_via_cones(x, c, {x.zero_cochain(1), x.zero_cochain(2)});
        }) == Err::input);

  try {
    cofill_via_cones(x, c, {chain(x, 1, {{0, 1}})});
    FAIL("expected a failure");
  } catch (const Error& e) {
    CHECK(e.code == Err::input);
    CHECK(std::string(e.what()).find("not a cocycle") != std::string::npos);
  }

  BasedComplex ring =
      BasedComplex::from_facets({{0, 1}, {0, 2}, {1, 2}}, true);
  ConeSystem cz;
  cz.s_count = 1;
  cz.cones.assign(2, {});
  cz.cones[0].assign(1, Gf2Vector(3));
  cz.cones[1].assign(3, Gf2Vector(3));
  try {
    cofill_via_cones(ring, cz, {chain(ring, 1, {{0, 1}})});
    FAIL("expected a failure");
  } catch (const Error& e) {
    CHECK(e.code == Err::input);
    CHECK(std::string(e.what()).find("nontrivial") != std::string::npos);
  }
}

TEST_CASE("cone tables survive the text round trip") {
  auto [x, c] = simplex_cones(4);
  std::ostringstream os;
  write_cones(os, x, c);
  std::istringstream is(os.str());
  ConeSystem d = read_cones(is, x);
  CHECK(d.s_count == c.s_count);
  CHECK(d.cones == c.cones);

  std::istringstream bad1("nonsense 4\nend\n");
  CHECK(code_of([&] { read_cones(bad1, x); }) == Err::input);
  std::istringstream bad2("cones 4\n0.9 1 : 0.1\nend\n");
  CHECK(code_of([&] { read_cones(bad2, x); }) == Err::input);
  std::istringstream bad3("cones 4\n- 0 : 0\n");
  CHECK(code_of([&] { read_cones(bad3, x); }) == Err::input);
  std::istringstream bad4("cones 4\n0.1.2.3 0 : 0.1\nend\n");
  CHECK(code_of([&] { read_cones(bad4, x); }) == Err::input);
}

TEST_CASE("vertex relabelings induce cell permutations") {
  BasedComplex x = BasedComplex::from_facets({{0, 1}, {1, 2}}, false);
  GroupGen g = vertex_gen(x, {{0, 2}, {2, 0}}, {});
  CHECK(g.cell_image[0] == std::vector<long long>{2, 1, 0});
  CHECK(g.cell_image[1] == std::vector<long long>{1, 0});
  CHECK(g.s_image.empty());

  CHECK(code_of([&] { vertex_gen(x, {{0, 1}, {1, 0}}, {}); }) == Err::input);
  CHECK(code_of([&] { vertex_gen(x, {{0, 1}, {0, 2}}, {}); }) == Err::input);
  CHECK(code_of([&] { vertex_gen(x, {{0, 1}}, {}); }) == Err::input);
}

TEST_CASE("building data must be shaped and nested correctly") {
  BasedComplex x = tri();
  SubComplex w = whole(x);

  BuildingLikeData d;
  d.b.assign(3, {});
  d.b[0].assign(3, w);
  d.b[1].assign(9, w);
  d.b[2].assign(9, w);
  CHECK(code_of([&] { check_building_like(x, 0, d, 2); }) == Err::input);
  CHECK(code_of([&] { check_building_like(x, 3, d, 3); }) == Err::input);
  CHECK(code_of([&] { check_building_like(x, 3, d, 1); }) == Err::input);

  BuildingLikeData open_sub = d;
  SubComplex bare;
  bare.layers.assign(3, {});
  bare.layers[0] = Gf2Vector(3);
  bare.layers[1] = Gf2Vector(3);
  bare.layers[2] = Gf2Vector(1);
  bare.layers[1].set(0, true);  // an edge without its endpoints
  open_sub.b[2][0] = bare;
  CHECK(code_of([&] { check_building_like(x, 3, open_sub, 2); }) == Err::input);

  BuildingLikeData outside = d;
  outside.b[1].assign(9, sub_of(x, {{2}}));  // vertices 0, 1 not inside
  CHECK(code_of([&] { check_building_like(x, 3, outside, 2); }) == Err::input);

  BuildingLikeData not_monotone = d;
  not_monotone.b[1][0] = sub_of(x, {{0}});  // drops the whole B below it
  CHECK(code_of([&] { check_building_like(x, 3, not_monotone, 2); }) ==
        Err::input);

  BuildingLikeData bad_gen = d;
  GroupGen g;
  g.cell_image = {{0, 1, 2}, {1, 0, 2}, {0}};  // swaps edges, fixes vertices
  g.s_image = {0, 1, 2};
  bad_gen.gens.push_back(g);
  CHECK(code_of([&] { check_building_like(x, 3, bad_gen, 2); }) == Err::input);

  BuildingLikeData bad_s = d;
  GroupGen h = vertex_gen(x, {{0, 1}, {1, 0}}, {1, 0});
  bad_s.gens.push_back(h);
  CHECK(code_of([&] { check_building_like(x, 3, bad_s, 2); }) == Err::input);
}

TEST_CASE("whole-complex building data on a simplex passes every item") {
  auto [x, c] = simplex_cones(4);
  BuildingLikeData d;
  d.gens.push_back(vertex_gen(x, {{0, 1}, {1, 0}}, {1, 0, 2, 3}));
  d.gens.push_back(
      vertex_gen(x, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {1, 2, 3, 0}));
  SubComplex w = whole(x);
  d.b.assign(4, {});
  for (int k = -1; k < 3; ++k)
    d.b[(size_t)(k + 1)].assign(
        (size_t)((k == -1 ? 1 : x.layer_size(k)) * 4), w);

  BuildingLikeReport r = check_building_like(x, 4, d, 3);
  CHECK(r.ok);
  CHECK(r.transitive);
  CHECK(r.orbit_size == 1);
  CHECK(r.equivariant);
  CHECK(!r.equiv_witness.has_value());
  CHECK(r.homology_ok);
  CHECK(!r.hom_witness.has_value());
  CHECK(r.a == std::vector<long long>{4, 6, 4, 1});
  CHECK(r.mubar_bound == std::vector<Rat>{Rat(16), Rat(36), Rat(16), Rat(1)});

  // the certified ceilings hold for the measured constants and for theta
  WeightFn wt = make_weight(x, Weight::topcell);
  for (int k = 0; k < 3; ++k) {
    auto cc = collective_cofilling(x, k, wt, 2);
    for (const auto& e : cc) CHECK(e.value <= r.mubar_bound[(size_t)(k + 1)]);
    CHECK(theta(x, c, k) <= r.mubar_bound[(size_t)(k + 1)]);
  }
}

TEST_CASE("an inequivariant patch is caught with its witness") {
  auto [x, c] = simplex_cones(4);
  BuildingLikeData d;
  d.gens.push_back(vertex_gen(x, {{0, 1}, {1, 0}}, {1, 0, 2, 3}));
  SubComplex w = whole(x);
  d.b.assign(4, {});
  for (int k = -1; k < 3; ++k)
    d.b[(size_t)(k + 1)].assign(
        (size_t)((k == -1 ? 1 : x.layer_size(k)) * 4), w);
  d.b[0][0] = sub_of(x, {{0}});

  BuildingLikeReport r = check_building_like(x, 4, d, 3);
  CHECK(!r.ok);
  CHECK(r.transitive);
  CHECK(!r.equivariant);
  REQUIRE(r.equiv_witness.has_value());
  CHECK(std::get<0>(*r.equiv_witness) == 0);
  CHECK(std::get<1>(*r.equiv_witness).k == -1);
  CHECK(std::get<2>(*r.equiv_witness) == 0);
  CHECK(r.homology_ok);
}

TEST_CASE("a disconnected patch is caught by the homology scan") {
  BasedComplex x = tri();
  BuildingLikeData d;
  d.gens.push_back(vertex_gen(x, {{0, 1}, {1, 0}}, {1, 0, 2}));
  d.gens.push_back(vertex_gen(x, {{0, 1}, {1, 2}, {2, 0}}, {1, 2, 0}));
  d.b.assign(3, {});
  d.b[0].resize(3);
  d.b[1].resize(9);
  d.b[2].resize(9);
  for (int s = 0; s < 3; ++s) d.b[0][(size_t)s] = sub_of(x, {{s}});
  for (int v = 0; v < 3; ++v)
    for (int s = 0; s < 3; ++s)
      d.b[1][(size_t)(v * 3 + s)] = sub_of(x, {{v}, {s}});
  for (int e = 0; e < 3; ++e)
    for (int s = 0; s < 3; ++s) {
      std::vector<int> ev = x.cell(1, e).verts;
      d.b[2][(size_t)(e * 3 + s)] = sub_of(x, {ev, {s}});
    }

  BuildingLikeReport r = check_building_like(x, 3, d, 2);
  CHECK(!r.ok);
  CHECK(r.transitive);
  CHECK(r.equivariant);
  CHECK(!r.homology_ok);
  REQUIRE(r.hom_witness.has_value());
  CHECK(std::get<0>(*r.hom_witness).k == 0);
  CHECK(std::get<0>(*r.hom_witness).i == 0);
  CHECK(std::get<1>(*r.hom_witness) == 1);
  CHECK(std::get<2>(*r.hom_witness) == 0);
  CHECK(r.a == std::vector<long long>{1, 0, 0});
}

TEST_CASE("a split orbit is caught by the transitivity item") {
  BasedComplex x = BasedComplex::from_facets({{0, 1}, {0, 2}, {1, 2}}, false);
  BuildingLikeData d;
  d.gens.push_back(vertex_gen(x, {{0, 1}, {1, 0}}, {0}));
  SubComplex w = whole(x);
  d.b.assign(2, {});
  d.b[0].assign(1, w);
  d.b[1].assign(3, w);

  BuildingLikeReport r = check_building_like(x, 1, d, 1);
  CHECK(!r.ok);
  CHECK(!r.transitive);
  CHECK(r.orbit_size == 1);
  CHECK(r.equivariant);
  CHECK(r.homology_ok);
  CHECK(r.a == std::vector<long long>{2, 2});
  CHECK(r.mubar_bound == std::vector<Rat>{Rat(4), Rat(2)});
}

TEST_CASE("the incidence complex of the small projective plane is building-like") {
  BasedComplex x = flag_pg2(2);
  REQUIRE(x.dim == 1);
  REQUIRE(x.layer_size(0) == 14);
  REQUIRE(x.layer_size(1) == 21);

  std::vector<std::vector<char>> adj(14, std::vector<char>(14, 0));
  for (long long e = 0; e < 21; ++e) {
    auto v = x.cell(1, (int)e).verts;
    adj[(size_t)v[0]][(size_t)v[1]] = adj[(size_t)v[1]][(size_t)v[0]] = 1;
  }

  // apartments: 6-vertex subsets whose induced graph is 2-regular
  std::vector<std::vector<int>> hexes;
  std::vector<int> pick;
  std::function<void(int)> go = [&](int from) {
    if (pick.size() == 6) {
      for (int v : pick) {
        int deg = 0;
        for (int u : pick) deg += adj[(size_t)v][(size_t)u];
        if (deg != 2) return;
      }
      hexes.push_back(pick);
      return;
    }
    for (int v = from; v < 14; ++v) {
      pick.push_back(v);
      go(v + 1);
      pick.pop_back();
    }
  };
  go(0);
  REQUIRE(hexes.size() == 28);
  std::sort(hexes.begin(), hexes.end());
  std::map<std::vector<int>, long long> hex_index;
  for (size_t s = 0; s < hexes.size(); ++s) hex_index[hexes[s]] = (long long)s;

  auto apartment = [&](long long s) {
    std::vector<std::vector<int>> cells;
    const auto& h = hexes[(size_t)s];
    for (size_t a = 0; a < h.size(); ++a)
      for (size_t b = a + 1; b < h.size(); ++b)
        if (adj[(size_t)h[a]][(size_t)h[b]]) cells.push_back({h[a], h[b]});
    REQUIRE(cells.size() == 6);
    return sub_of(x, cells);
  };

  auto make_gen = [&](const std::function<int(int)>& f) {
    std::vector<std::pair<int, int>> images;
    for (int v = 0; v < 14; ++v) images.push_back({v, f(v)});
    std::vector<long long> s_image;
    for (const auto& h : hexes) {
      std::vector<int> img;
      for (int v : h) img.push_back(f(v));
      std::sort(img.begin(), img.end());
      auto it = hex_index.find(img);
      REQUIRE(it != hex_index.end());
      s_image.push_back(it->second);
    }
    return vertex_gen(x, images, s_image);
  };
  // point and line rotations of the difference-set construction
  GroupGen shift =
      make_gen([](int v) { return v < 7 ? (v + 1) % 7 : 7 + (v - 7 + 1) % 7; });
  GroupGen dbl =
      make_gen([](int v) { return v < 7 ? 2 * v % 7 : 7 + 2 * (v - 7) % 7; });

  BuildingLikeData d;
  d.gens = {shift, dbl};
  d.b.assign(2, {});
  d.b[0].resize(28);
  for (long long s = 0; s < 28; ++s) d.b[0][(size_t)s] = apartment(s);
  SubComplex w = whole(x);
  d.b[1].resize(14 * 28);
  for (long long v = 0; v < 14; ++v)
    for (long long s = 0; s < 28; ++s) {
      bool in_apt = std::binary_search(hexes[(size_t)s].begin(),
                                       hexes[(size_t)s].end(), (int)v);
      d.b[1][(size_t)(v * 28 + s)] = in_apt ? d.b[0][(size_t)s] : w;
    }

  BuildingLikeReport r = check_building_like(x, 28, d, 1);
  CHECK(r.ok);
  CHECK(r.transitive);
  CHECK(r.orbit_size == 21);
  CHECK(r.equivariant);
  CHECK(r.homology_ok);
  // level -1 entries are apartments: three points and three lines, with
  // points and lines forming separate vertex orbits
  CHECK(r.a == std::vector<long long>{3, 21});
  CHECK(r.mubar_bound == std::vector<Rat>{Rat(6), Rat(21)});

  // the measured collective cofilling constant obeys the certified ceiling
  auto cc = collective_cofilling(x, 0, make_weight(x, Weight::topcell), 1);
  REQUIRE(cc.size() == 1);
  CHECK(cc[0].exists);
  CHECK(cc[0].value <= Rat(21));
}
