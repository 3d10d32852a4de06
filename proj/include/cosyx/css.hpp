#pragma once
#include <iosfwd>
#include <optional>
#include <string>

#include "cosyx/complex.hpp"
#include "cosyx/expansion.hpp"

namespace cosyx {

/* A CSS code cut out of two consecutive boundary maps: hx is the k-th
   boundary matrix, hz the transposed (k+1)-st, so the row spaces are
   orthogonal and the code dimension is the k-th Betti number. */
struct CssCode {
  long long n = 0;
  Gf2Matrix hx, hz;
  long long k_dim = 0;
  std::optional<long long> dx, dz;
  std::string source;
  int k = 0;
};

// 1 <= k <= dim; k = dim leaves hz with no rows.
CssCode from_complex(const BasedComplex& x, int k,
                     const std::string& source = "");

struct CodeParams {
  std::optional<long long> dx, dz, d;
  long long hx_row_max = 0, hx_col_max = 0;
  long long hz_row_max = 0, hz_col_max = 0;
};

/* Exact distances by enumerating the kernel of one matrix against the
   row space of the other. A kernel of dimension above the budget
   exponent, or an empty quotient (k_dim = 0), leaves the distance
   unknown; check weights are always reported. Found distances are also
   written back into the code. */
CodeParams code_params(CssCode& code, int budget = kDefaultBudget,
                       int workers = 1);

struct BalancedPrediction {
  Rat length{0}, distance{0}, dimension{0};
  // squares of the linear-cosystole special-case values
  Rat distance_sq{0}, dimension_sq{0};
};

// Scalings of the balancing construction; exact formula values, valid
// up to constants. Requires cosys >= sys > 0 and m > 0.
BalancedPrediction predict_balanced(long long m, long long sys,
                                    long long cosys);

struct BalanceReport {
  long long m = 0, sys = 0, cosys = 0;  // measured on the input at degree k
  int l_used = 0;
  bool predicted_ok = false;  // cosys >= sys, so the scalings apply
  BalancedPrediction predicted;
  CssCode code;  // extracted from X tensor cycle(L) at degree k + 1
  CodeParams params;
  long long h_before = 0, h_after = 0;  // Betti, degree k of X and k+1 of the product
};

/* Tensor with a cycle and take the code one degree up, which keeps the
   homology alive. l = 0 picks round(cosys/sys) clamped to at least 3.
   Distances unknown rather than failing when the search is over budget. */
BalanceReport balance(const BasedComplex& x, int k, int l = 0,
                      int budget = kDefaultBudget, int workers = 1);

// Standard alist export: "cols rows", the two weight maxima, per-column
// and per-row weights, then 1-based index lists padded with zeros.
void write_alist(std::ostream& os, const Gf2Matrix& m);

}  // namespace cosyx
