#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cosyx/util.hpp"

namespace cosyx {

/* Dense F2 vectors, bit packed into 64-bit words. */
struct Gf2Vector {
  int n = 0;
  std::vector<uint64_t> w;

  Gf2Vector() = default;
  explicit Gf2Vector(int bits) : n(bits), w((bits + 63) / 64, 0) {}
  static Gf2Vector from_support(int bits, const std::vector<int>& idx);

  bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v) {
    uint64_t m = 1ull << (i & 63);
    if (v) w[i >> 6] |= m; else w[i >> 6] &= ~m;
  }
  void flip(int i) { w[i >> 6] ^= 1ull << (i & 63); }
  void operator^=(const Gf2Vector& o);
  bool is_zero() const;
  int popcount() const;
  int lowest_set() const;  // -1 when zero
  std::vector<int> support() const;
  bool operator==(const Gf2Vector& o) const { return n == o.n && w == o.w; }

  // order by sorted support list; the side owning the lowest differing
  // index comes first
  static bool supp_less(const Gf2Vector& a, const Gf2Vector& b);
};

struct Gf2Matrix {
  int rows = 0, cols = 0, wpr = 0;
  std::vector<uint64_t> w;  // row major

  Gf2Matrix() = default;
  Gf2Matrix(int r, int c)
      : rows(r), cols(c), wpr((c + 63) / 64), w((size_t)r * wpr, 0) {}

  bool get(int r, int c) const {
    return (w[(size_t)r * wpr + (c >> 6)] >> (c & 63)) & 1;
  }
  void set(int r, int c, bool v) {
    uint64_t m = 1ull << (c & 63);
    size_t i = (size_t)r * wpr + (c >> 6);
    if (v) w[i] |= m; else w[i] &= ~m;
  }
  void row_xor(int dst, int src);
  Gf2Vector row(int r) const;
  void set_row(int r, const Gf2Vector& v);
  Gf2Matrix transposed() const;
  Gf2Vector mul(const Gf2Vector& x) const;  // x indexed by columns
  Gf2Matrix mul(const Gf2Matrix& o) const;
  bool is_zero() const;

  std::string to_text() const;  // "rows cols" header then 0/1 rows
  static Gf2Matrix from_text(const std::string& text);
};

int rank(Gf2Matrix m);

struct SolveResult {
  Gf2Vector particular;            // free coordinates set to zero
  std::vector<Gf2Vector> kernel;   // one vector per free column, ascending
};

// Solve M x = b; nullopt when inconsistent.
std::optional<SolveResult> solve(const Gf2Matrix& m, const Gf2Vector& b);

std::vector<Gf2Vector> kernel_basis(const Gf2Matrix& m);

/* Incremental reduced-echelon container; the stored basis of a span is
   unique, which is what makes downstream choices canonical. */
struct Echelon {
  int n = 0;
  std::vector<Gf2Vector> rows;  // pivot (lowest set bit) strictly increasing
  std::vector<int> pivots;

  explicit Echelon(int bits) : n(bits) {}
  Gf2Vector reduce(Gf2Vector v) const;  // residual; zero iff v in span
  bool contains(const Gf2Vector& v) const { return reduce(v).is_zero(); }
  bool insert(Gf2Vector v);             // false when dependent
  int dim() const { return (int)rows.size(); }
};

std::vector<Gf2Vector> echelon_basis(const std::vector<Gf2Vector>& vecs, int n);

// Representatives of span(z)/span(b); requires span(b) within span(z).
std::vector<Gf2Vector> quotient_basis(const std::vector<Gf2Vector>& z,
                                      const std::vector<Gf2Vector>& b, int n);

}  // namespace cosyx
