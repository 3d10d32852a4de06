#pragma once
#include <optional>
#include <string>
#include <vector>

#include "cosyx/complex.hpp"
#include "cosyx/expansion.hpp"

namespace cosyx {

// Address of one cell; k = -1 names the empty cell of an augmented complex.
struct CellRef {
  int k = -1;
  long long i = 0;
};

/* Link of sigma: cells tau vertex-disjoint from sigma with sigma|tau a
   cell of x. Proper links come back augmented, which is the setting the
   minimality machinery below lives in; the link of the empty cell is x
   itself. Labeled simplicial complexes only. */
BasedComplex link(const BasedComplex& x, const CellRef& sigma);

// I_sigma: cells of a containing sigma, rewritten in the coordinates of
// link(x, sigma); the degree drops by dim(sigma) + 1 and may reach -1.
Cochain localize(const BasedComplex& x, const CellRef& sigma,
                 const Cochain& a);

// I^sigma: joins sigma onto every cell of a link cochain.
// localize(lift(b)) == b; lift(localize(a)) keeps the cells containing
// sigma. For a degree-j sigma, ||lift(b)|| = C(k+1, j+1) * w(sigma) *
// ||b||_link under TopCell weights on both sides, k the lifted degree.
Cochain lift(const BasedComplex& x, const CellRef& sigma, const Cochain& b);

// All r-cells containing some cell of a; r >= a.k required. Under any
// weight, ||a|| <= ||container|| <= C(r+1, k+1) ||a||.
Cochain container(const BasedComplex& x, const Cochain& a, int r);

struct CochainCollection {
  int k = 0;
  std::vector<Cochain> members;
  Cochain unioned;  // support union of the members
};

CochainCollection make_collection(const BasedComplex& x, int k,
                                  std::vector<Cochain> members);

enum class Locality { global, local };

/* A collection is minimal when no tuple of coboundaries, one added to
   each member, shrinks the union weight; locally minimal when every
   localization is minimal in its link (proper cells of dimension < k).
   The counterexample, when present, is the first improving tuple in
   enumeration order, together with the link at fault for local runs. */
struct MinimalityReport {
  bool minimal = false;
  Locality locality = Locality::global;
  std::optional<CellRef> sigma;  // local verdicts only
  std::vector<Cochain> gammas;   // improving coboundary tuple, per member
  Rat before{0}, after{0};       // union weight before / after the tuple
};

MinimalityReport is_minimal_collection(const BasedComplex& x,
                                       const CochainCollection& c,
                                       Locality locality,
                                       Weight kind = Weight::topcell,
                                       int budget = kDefaultBudget,
                                       int workers = 1);

/* Descends to a locally minimal collection by repeatedly applying the
   first improving link move. reduced[a] = input[a] + coboundary of
   gammas[a]; the union weight never grows, and ||union of gammas|| stays
   within q_bound times the input union weight. */
struct LocalMinimizeResult {
  CochainCollection reduced;
  std::vector<Cochain> gammas;  // degree k - 1 cochains of x
  long long steps = 0;          // improving moves applied
  long long q_bound = 0;        // largest proper-link cell count
};

LocalMinimizeResult local_minimize(const BasedComplex& x, CochainCollection c,
                                   Weight kind = Weight::topcell,
                                   int budget = kDefaultBudget,
                                   int workers = 1);

// Least rho >= 0 with ||E(A,A)|| <= 4(||A||^2 + rho ||A||) over nonempty
// vertex subsets A, TopCell weights; exhaustive, so |X_0| <= 20.
Rat skeleton_rho(const BasedComplex& x, int budget = kDefaultBudget,
                 int workers = 1);

/* Fat strata of a collection: S[k] is the union, and a lower cell stays
   fat when the localization of the stratum above weighs at least
   xi^(2^(k-i)) in its link. Ladders collect the union cells reachable
   from a fat cell through chains fat at every level; degenerate faces
   are the (k+1)-cells with two fat i-faces meeting in a non-fat
   (i-1)-face. */
struct FatStrata {
  int k = 0;
  Rat xi{0};
  bool empty_fat = false;         // the (-1)-stratum
  std::vector<Gf2Vector> strata;  // [i] subset of X_i, i = 0..k
  std::vector<Gf2Vector> ladders; // [i + 1] subset of X_k, i = -1..k
  Gf2Vector degenerate;           // subset of X_{k+1}; empty when k = dim
};

FatStrata fat_strata(const BasedComplex& x, const CochainCollection& c,
                     const Rat& xi, Weight kind = Weight::topcell);

// Ladder on one fat cell; zero when sigma is not fat or no chain exists.
Gf2Vector ladder_on(const BasedComplex& x, const FatStrata& s,
                    const CellRef& sigma);

// The descending cascade c_k = 1, c_{i-1} = (c_i - eps -
// (k+2)2^{k+4} xi) / ((k+2) mu C(k+2, i+1)); entry i + 1 holds c_i for
// -1 <= i <= k. Defined for any eps, xi; mu must be positive.
std::vector<Rat> fat_ladder_constants(int k, const Rat& mu, const Rat& eps,
                                      const Rat& xi);

/* Checks the two explicit fat-machinery inequalities and the c-ladder.
   Each assertion only runs when its hypothesis is met: the degenerate
   bound needs every skeleton rho (x and all proper links) below
   xi^(2^(k+1)); the ladder bound needs the collection locally minimal.
   mubar is the link collective-cofilling constant, measured over every
   proper link unless supplied. */
struct FatBoundsReport {
  int k = 0;
  Rat xi{0}, eps{0};
  Rat rho_max{0};
  bool rho_hypothesis = false;
  bool minimal_hypothesis = false;
  Rat mubar{1};
  std::string mubar_source;  // "measured(m=N)" or "supplied"
  Rat upsilon_norm{0}, upsilon_bound{0};
  bool upsilon_ok = false;
  std::vector<Rat> ladder_lhs, ladder_rhs;  // per i = 0..k
  bool ladder_ok = false;
  std::vector<Rat> c;  // c[i + 1] for i = -1..k, c[k + 1] = 1
  bool c_positive = false;
  bool checked = false;  // at least one hypothesis held
  bool ok = false;       // every assertion that ran held
};

FatBoundsReport check_fat_bounds(const BasedComplex& x,
                                 const CochainCollection& c, const Rat& xi,
                                 const Rat& eps,
                                 std::optional<Rat> supplied_mubar = {},
                                 int m_max = 3,
                                 Weight kind = Weight::topcell,
                                 int budget = kDefaultBudget, int workers = 1);

}  // namespace cosyx
