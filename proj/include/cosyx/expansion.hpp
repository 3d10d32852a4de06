#pragma once
#include <optional>
#include <vector>

#include "cosyx/complex.hpp"

namespace cosyx {

/* Budgets are log2 of the admissible exact-search step count. A run
   either finishes exactly or refuses up front; never approximates. */
inline constexpr int kDefaultBudget = 24;

struct ExtremeResult {
  bool exists = false;  // false when the quotient is trivial
  Rat value{0};
  Cochain witness;  // canonical: minimal weight, then lowest support
};

// Minimum weight over k-cycles that are not boundaries.
ExtremeResult systole(const BasedComplex& x, int k, const WeightFn& w,
                      int budget = kDefaultBudget, int workers = 1);

// Minimum weight over k-cocycles that are not coboundaries.
ExtremeResult cosystole(const BasedComplex& x, int k, const WeightFn& w,
                        int budget = kDefaultBudget, int workers = 1);

// Cosystole divided by the weight of the whole layer; 1 when h_k = 0.
Rat cosystolic_expansion(const BasedComplex& x, int k, const WeightFn& w,
                         int budget = kDefaultBudget, int workers = 1);

struct CofillResult {
  bool exists = false;  // false when there are no nonzero coboundaries
  Rat value{0};
  Cochain alpha;  // hardest coboundary to fill
  Cochain beta;   // its minimal filling
};

// mu_k: worst ratio of minimal-filling weight to coboundary weight.
CofillResult cofilling(const BasedComplex& x, int k, const WeightFn& w,
                       int budget = kDefaultBudget, int workers = 1);

struct CollectiveResult {
  bool exists = false;
  Rat value{0};
  std::vector<Cochain> alphas;  // distinct nonzero coboundaries
  std::vector<Cochain> betas;   // joint fillings, betas[i] fills alphas[i]
};

/* mu_bar_k per collection size: entry m-1 maximizes the union-weight
   ratio over collections of at most m coboundaries. Entry 0 equals
   cofilling; entries are nondecreasing. */
std::vector<CollectiveResult> collective_cofilling(
    const BasedComplex& x, int k, const WeightFn& w, int m_max,
    int budget = kDefaultBudget, int workers = 1);

struct ProductInputs {
  int l = 0;
  std::vector<Rat> eta_x;      // 0..l
  std::vector<Rat> eta_y;      // 0..l
  std::vector<Rat> mu_x;       // 0..l-1
  std::vector<Rat> mubar_x;    // 0..l-1
  std::vector<Rat> mubar_y;    // 0..l-1, entry 0 unused
  std::vector<long long> q_y;  // coface locality of the right factor, 0..l-1
};

struct ProductConstants {
  int l = 0;
  Rat lambda{0};
  std::vector<Rat> b;  // b[0..l], b[0] = 1
  Rat nu{0};
  Rat nu_coll{0};
  Rat eta_pair_min{0};      // min over i of eta_{l-i} * eta'_i
  bool chained_ok = false;  // b_j * lambda <= eta_pair_min for every j
};

ProductConstants product_constants(const ProductInputs& in);

struct FactorData {
  std::vector<Rat> eta;      // 0..l
  std::vector<Rat> mu;       // 0..l-1
  std::vector<Rat> mubar;    // 0..l-1
  std::vector<long long> q;  // 0..l-1
};

struct ProductCheck {
  bool ok = false;
  int l = 0;
  int m_max = 1;
  FactorData left, right;
  ProductConstants consts;
  long long h_product = 0;     // h_l of the tensor product
  Rat cosys_floor{0};          // lambda * min block size
  std::optional<Rat> cosys;    // measured, when h_l != 0
  std::optional<Rat> mu_prod;  // mu_{l-1} of the product, absent for l = 0
  std::optional<Rat> mubar_prod;
  bool cosys_ok = false, mu_ok = false, mubar_ok = false;
};

/* Measures both factors, assembles the product constants and checks,
   all under Hamming weight:
     CoSys^l(X x Y)        >= lambda_l * min_i |X_i||Y_{l-i}|  (h_l != 0)
     mu_{l-1}(X x Y)       <= nu_l
     mu_bar_{l-1}(X x Y)   <= nu_l with collective left-factor inputs
   plus the chained bound b_j * lambda_l <= min_i eta_{l-i} eta'_i. */
ProductCheck verify_product_theorem(const BasedComplex& x,
                                    const BasedComplex& y, int l, int m_max,
                                    int budget = kDefaultBudget,
                                    int workers = 1);

struct ExpansionReport {
  int k = 0;
  Weight weight = Weight::hamming;
  ExtremeResult sys, cosys;
  Rat eta{0};
  CofillResult mu;
  std::vector<CollectiveResult> mu_coll;  // size m_max
};

ExpansionReport measure_expansion(const BasedComplex& x, int k, Weight kind,
                                  int m_max, int budget = kDefaultBudget,
                                  int workers = 1);

}  // namespace cosyx
