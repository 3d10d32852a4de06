#include "cosyx/zoo.hpp"

#include <array>
#include <functional>
#include <random>

namespace cosyx {

BasedComplex cycle(int length) {
  if (length < 3) fail(Err::input, "cycle needs length >= 3");
  std::vector<std::vector<int>> facets;
  for (int i = 0; i < length; ++i) {
    int j = (i + 1) % length;
    facets.push_back({std::min(i, j), std::max(i, j)});
  }
  return BasedComplex::from_facets(facets);
}

static void subsets_of_size(int n, int k,
                            const std::function<void(std::vector<int>&)>& fn) {
  std::vector<int> cur(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(cur);
      return;
    }
    for (int v = start; v <= n - (k - depth); ++v) {
      cur[depth] = v;
      rec(v + 1, depth + 1);
    }
  };
  if (k >= 0 && k <= n) rec(0, 0);
}

BasedComplex simplex_skeleton(int n_vertices, int k) {
  if (n_vertices < 1 || k < 0 || k >= n_vertices)
    fail(Err::input, "simplex_skeleton needs 0 <= k < n");
  std::vector<std::vector<int>> facets;
  subsets_of_size(n_vertices, k + 1,
                  [&](std::vector<int>& s) { facets.push_back(s); });
  return BasedComplex::from_facets(facets);
}

BasedComplex lm_random(int n_vertices, int k, double p, uint64_t seed) {
  if (k < 1 || k >= n_vertices)
    fail(Err::input, "lm_random needs 1 <= k < n");
  if (!(p >= 0.0 && p <= 1.0)) fail(Err::input, "lm_random needs p in [0,1]");
  std::vector<std::vector<int>> facets;
  subsets_of_size(n_vertices, k,
                  [&](std::vector<int>& s) { facets.push_back(s); });
  // raw engine output only; distribution helpers are not pinned down by
  // the standard, the engine stream is
  std::mt19937_64 rng(seed);
  subsets_of_size(n_vertices, k + 1, [&](std::vector<int>& s) {
    double u = (double)(rng() >> 11) * 0x1.0p-53;
    if (u < p) facets.push_back(s);
  });
  return BasedComplex::from_facets(facets);
}

namespace {

/* Arithmetic for GF(q), q in {2,3,4}; GF(4) is bitwise with
   x^2 = x + 1. */
struct Fq {
  int q;
  int add(int a, int b) const {
    if (q == 4 || q == 2) return a ^ b;
    return (a + b) % q;
  }
  int mul(int a, int b) const {
    if (q != 4) return (a * b) % q;
    static const int t[4][4] = {
        {0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    return t[a][b];
  }
};

}  // namespace

BasedComplex flag_pg2(int q) {
  if (q != 2 && q != 3 && q != 4)
    fail(Err::input, "flag_pg2 supports q in {2,3,4}");
  std::vector<std::vector<int>> edges;
  if (q == 2) {
    // Fano plane from the difference set {1,2,4} mod 7
    for (int i = 0; i < 7; ++i)
      for (int d : {1, 2, 4}) edges.push_back({(d + i) % 7, 7 + i});
  } else {
    Fq f{q};
    std::vector<std::array<int, 3>> pts;
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y)
        for (int z = 0; z < q; ++z) {
          if (x == 0 && y == 0 && z == 0) continue;
          int lead = x ? x : (y ? y : z);
          if (lead != 1) continue;  // one representative per line of F_q^3
          pts.push_back({x, y, z});
        }
    int m = (int)pts.size();
    for (int li = 0; li < m; ++li)
      for (int pi = 0; pi < m; ++pi) {
        int s = f.add(f.add(f.mul(pts[li][0], pts[pi][0]),
                            f.mul(pts[li][1], pts[pi][1])),
                      f.mul(pts[li][2], pts[pi][2]));
        if (s == 0) edges.push_back({pi, m + li});
      }
  }
  return BasedComplex::from_facets(edges);
}

}  // namespace cosyx
