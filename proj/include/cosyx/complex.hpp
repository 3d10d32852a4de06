#pragma once
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cosyx/gf2.hpp"
#include "cosyx/util.hpp"

namespace cosyx {

struct Cell {
  std::string id;
  std::vector<int> verts;  // sorted vertex labels; empty when unlabeled
};

// k = -1 addresses the augmentation layer (single empty cell).
struct Cochain {
  int k = 0;
  Gf2Vector bits;
};

enum class Weight { hamming, normalized, topcell };
const char* weight_name(Weight w);
Weight parse_weight(const std::string& s);

// Bookkeeping carried by tensor products; layers are ordered block by
// block, (0,k) first, cells within a block right-factor minor.
struct ProductInfo {
  std::vector<long long> xsizes, ysizes;  // per-dim layer sizes of factors
  std::vector<std::vector<std::pair<int, int>>> bigrade;  // [k][i]
  std::vector<std::vector<std::vector<int>>> multi;       // flattened
  bool factors_simplicial = false;
};

struct ValidationReport {
  bool ok = false;
  bool dd_zero = false;
  std::optional<std::pair<int, int>> dd_witness;  // (k, column) of failure
  std::vector<int> p, q;  // upper / lower locality per dimension
  bool pure = false;
  bool labeled = false;
  bool simplicial = false;
  std::vector<std::string> notes;
};

struct BasedComplex {
  int dim = 0;
  bool augmented = false;
  std::vector<std::vector<Cell>> cells;  // [k][i], k = 0..dim
  // bnd[k]: C_k -> C_{k-1} for k >= 1; bnd[0] is a placeholder, the
  // augmentation row is implied by the flag
  std::vector<Gf2Matrix> bnd;
  std::optional<ProductInfo> prod;

  long long layer_size(int k) const;
  const Cell& cell(int k, int i) const { return cells[k][i]; }
  int cell_index(int k, const std::string& id) const;  // -1 when absent

  // k = 0 yields the augmentation row (empty matrix when not augmented)
  Gf2Matrix boundary_matrix(int k) const;
  Gf2Matrix coboundary_matrix(int k) const;  // delta^k, k = -1..dim
  std::vector<int> bnd_support(int k, int i) const;

  Cochain zero_cochain(int k) const;
  Cochain cochain_from_ids(int k, const std::vector<std::string>& ids) const;
  Cochain apply_boundary(const Cochain& a) const;    // C_k -> C_{k-1}
  Cochain apply_coboundary(const Cochain& a) const;  // C^k -> C^{k+1}
  std::vector<std::string> support_ids(const Cochain& a) const;

  bool is_labeled() const;
  bool is_simplicial() const;
  ValidationReport validate() const;

  void write(std::ostream& os) const;
  static BasedComplex read(std::istream& is);

  // all cells of every facet, deduplicated, canonical (dim, label) order
  static BasedComplex from_facets(const std::vector<std::vector<int>>& facets,
                                  bool augmented = false);
  // assumes the list is closed under taking faces
  static BasedComplex from_simplices(
      const std::vector<std::vector<int>>& simplices, bool augmented = false);
};

std::string simplex_id(const std::vector<int>& verts);

// top_degrees(X)[k + 1][i] counts top cells containing cell i of layer k;
// index 0 covers the augmentation layer.
std::vector<std::vector<long long>> top_degrees(const BasedComplex& x);

/* Weights are exact: integer numerator per cell over one denominator per
   layer. num[k + 1] holds layer k, so the augmentation layer is num[0]. */
struct WeightFn {
  Weight kind = Weight::hamming;
  std::vector<std::vector<long long>> num;
  std::vector<long long> den;

  Rat cell(int k, int i) const { return Rat(num[k + 1][i], den[k + 1]); }
  Rat of(const Cochain& a) const;
  Rat layer(int k) const;
};

WeightFn make_weight(const BasedComplex& x, Weight kind);

}  // namespace cosyx
