#include "cosyx/gf2.hpp"

#include <bit>
#include <sstream>

#include "cosyx/util.hpp"

namespace cosyx {

Gf2Vector Gf2Vector::from_support(int bits, const std::vector<int>& idx) {
  Gf2Vector v(bits);
  for (int i : idx) {
    if (i < 0 || i >= bits) fail(Err::input, "support index out of range");
    v.set(i, true);
  }
  return v;
}

void Gf2Vector::operator^=(const Gf2Vector& o) {
  for (size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
}

bool Gf2Vector::is_zero() const {
  for (uint64_t x : w)
    if (x) return false;
  return true;
}

int Gf2Vector::popcount() const {
  int c = 0;
  for (uint64_t x : w) c += std::popcount(x);
  return c;
}

int Gf2Vector::lowest_set() const {
  for (size_t i = 0; i < w.size(); ++i)
    if (w[i]) return (int)(i * 64) + std::countr_zero(w[i]);
  return -1;
}

std::vector<int> Gf2Vector::support() const {
  std::vector<int> s;
  for (size_t i = 0; i < w.size(); ++i) {
    uint64_t x = w[i];
    while (x) {
      s.push_back((int)(i * 64) + std::countr_zero(x));
      x &= x - 1;
    }
  }
  return s;
}

bool Gf2Vector::supp_less(const Gf2Vector& a, const Gf2Vector& b) {
  for (size_t i = 0; i < a.w.size(); ++i) {
    uint64_t d = a.w[i] ^ b.w[i];
    if (d) return a.w[i] & (d & -d);
  }
  return false;
}

void Gf2Matrix::row_xor(int dst, int src) {
  size_t d = (size_t)dst * wpr, s = (size_t)src * wpr;
  for (int i = 0; i < wpr; ++i) w[d + i] ^= w[s + i];
}

Gf2Vector Gf2Matrix::row(int r) const {
  Gf2Vector v(cols);
  for (int i = 0; i < wpr; ++i) v.w[i] = w[(size_t)r * wpr + i];
  return v;
}

void Gf2Matrix::set_row(int r, const Gf2Vector& v) {
  for (int i = 0; i < wpr; ++i) w[(size_t)r * wpr + i] = v.w[i];
}

Gf2Matrix Gf2Matrix::transposed() const {
  Gf2Matrix t(cols, rows);
  for (int r = 0; r < rows; ++r)
    for (int i = 0; i < wpr; ++i) {
      uint64_t x = w[(size_t)r * wpr + i];
      while (x) {
        int c = i * 64 + std::countr_zero(x);
        t.set(c, r, true);
        x &= x - 1;
      }
    }
  return t;
}

Gf2Vector Gf2Matrix::mul(const Gf2Vector& x) const {
  if (x.n != cols) fail(Err::input, "matrix/vector size mismatch");
  Gf2Vector y(rows);
  for (int r = 0; r < rows; ++r) {
    uint64_t acc = 0;
    for (int i = 0; i < wpr; ++i) acc ^= w[(size_t)r * wpr + i] & x.w[i];
    y.set(r, std::popcount(acc) & 1);
  }
  return y;
}

Gf2Matrix Gf2Matrix::mul(const Gf2Matrix& o) const {
  if (cols != o.rows) fail(Err::input, "matrix size mismatch");
  Gf2Matrix out(rows, o.cols);
  for (int r = 0; r < rows; ++r) {
    Gf2Vector acc(o.cols);
    for (int i = 0; i < wpr; ++i) {
      uint64_t x = w[(size_t)r * wpr + i];
      while (x) {
        int c = i * 64 + std::countr_zero(x);
        for (int j = 0; j < o.wpr; ++j) acc.w[j] ^= o.w[(size_t)c * o.wpr + j];
        x &= x - 1;
      }
    }
    out.set_row(r, acc);
  }
  return out;
}

bool Gf2Matrix::is_zero() const {
  for (uint64_t x : w)
    if (x) return false;
  return true;
}

std::string Gf2Matrix::to_text() const {
  std::ostringstream os;
  os << rows << " " << cols << "\n";
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) os << (get(r, c) ? '1' : '0');
    os << "\n";
  }
  return os.str();
}

Gf2Matrix Gf2Matrix::from_text(const std::string& text) {
  std::istringstream is(text);
  int r = -1, c = -1;
  if (!(is >> r >> c) || r < 0 || c < 0)
    fail(Err::input, "bad matrix header");
  Gf2Matrix m(r, c);
  std::string line;
  for (int i = 0; i < r; ++i) {
    if (!(is >> line) || (int)line.size() != c)
      fail(Err::input, "bad matrix row " + std::to_string(i));
    for (int j = 0; j < c; ++j) {
      if (line[j] != '0' && line[j] != '1')
        fail(Err::input, "bad matrix entry");
      m.set(i, j, line[j] == '1');
    }
  }
  return m;
}

/* Forward elimination, first-nonzero pivot in column order. */
int rank(Gf2Matrix m) {
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.get(i, c)) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int i = 0; i < m.wpr; ++i)
        std::swap(m.w[(size_t)p * m.wpr + i], m.w[(size_t)r * m.wpr + i]);
    for (int i = r + 1; i < m.rows; ++i)
      if (m.get(i, c)) m.row_xor(i, r);
    ++r;
  }
  return r;
}

namespace {

struct Rref {
  Gf2Matrix m;             // reduced
  Gf2Vector rhs;           // reduced alongside when solving
  std::vector<int> pivot_col;  // per pivot row
  std::vector<int> is_pivot;   // per column, row index or -1

  Rref(Gf2Matrix in, const Gf2Vector* b) : m(std::move(in)) {
    bool aug = b != nullptr;
    if (aug) rhs = *b;
    is_pivot.assign(m.cols, -1);
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
      int p = -1;
      for (int i = r; i < m.rows; ++i)
        if (m.get(i, c)) { p = i; break; }
      if (p < 0) continue;
      if (p != r) {
        for (int i = 0; i < m.wpr; ++i)
          std::swap(m.w[(size_t)p * m.wpr + i], m.w[(size_t)r * m.wpr + i]);
        if (aug) {
          bool t = rhs.get(p);
          rhs.set(p, rhs.get(r));
          rhs.set(r, t);
        }
      }
      for (int i = 0; i < m.rows; ++i)
        if (i != r && m.get(i, c)) {
          m.row_xor(i, r);
          if (aug) rhs.set(i, rhs.get(i) ^ rhs.get(r));
        }
      is_pivot[c] = r;
      pivot_col.push_back(c);
      ++r;
    }
  }

  std::vector<Gf2Vector> kernel() const {
    std::vector<Gf2Vector> ker;
    for (int c = 0; c < m.cols; ++c) {
      if (is_pivot[c] >= 0) continue;
      Gf2Vector v(m.cols);
      v.set(c, true);
      for (size_t r = 0; r < pivot_col.size(); ++r)
        if (m.get((int)r, c)) v.set(pivot_col[r], true);
      ker.push_back(std::move(v));
    }
    return ker;
  }
};

}  // namespace

std::optional<SolveResult> solve(const Gf2Matrix& m, const Gf2Vector& b) {
  if (b.n != m.rows) fail(Err::input, "solve: rhs size mismatch");
  Rref rr(m, &b);
  int nr = (int)rr.pivot_col.size();
  for (int r = nr; r < m.rows; ++r)
    if (rr.rhs.get(r)) return std::nullopt;
  SolveResult out;
  out.particular = Gf2Vector(m.cols);
  for (int r = 0; r < nr; ++r)
    if (rr.rhs.get(r)) out.particular.set(rr.pivot_col[r], true);
  out.kernel = rr.kernel();
  return out;
}

std::vector<Gf2Vector> kernel_basis(const Gf2Matrix& m) {
  return Rref(m, nullptr).kernel();
}

Gf2Vector Echelon::reduce(Gf2Vector v) const {
  for (size_t i = 0; i < rows.size(); ++i)
    if (v.get(pivots[i])) v ^= rows[i];
  return v;
}

bool Echelon::insert(Gf2Vector v) {
  v = reduce(v);
  int p = v.lowest_set();
  if (p < 0) return false;
  for (size_t i = 0; i < rows.size(); ++i)
    if (rows[i].get(p)) rows[i] ^= v;
  size_t at = 0;
  while (at < pivots.size() && pivots[at] < p) ++at;
  rows.insert(rows.begin() + at, std::move(v));
  pivots.insert(pivots.begin() + at, p);
  return true;
}

std::vector<Gf2Vector> echelon_basis(const std::vector<Gf2Vector>& vecs,
                                     int n) {
  Echelon e(n);
  for (const auto& v : vecs) {
    if (v.n != n) fail(Err::input, "echelon: size mismatch");
    e.insert(v);
  }
  return e.rows;
}

std::vector<Gf2Vector> quotient_basis(const std::vector<Gf2Vector>& z,
                                      const std::vector<Gf2Vector>& b, int n) {
  Echelon zs(n);
  for (const auto& v : z) zs.insert(v);
  Echelon span(n);
  for (const auto& v : b) {
    if (!zs.contains(v))
      fail(Err::input, "quotient: denominator not inside numerator span");
    span.insert(v);
  }
  std::vector<Gf2Vector> reps;
  for (const auto& v : echelon_basis(z, n))
    if (span.insert(v)) reps.push_back(v);
  return reps;
}

}  // namespace cosyx
