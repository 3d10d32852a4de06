#include "cosyx/complex.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace cosyx {

const char* weight_name(Weight w) {
  switch (w) {
    case Weight::hamming: return "hamming";
    case Weight::normalized: return "normalized";
    case Weight::topcell: return "topcell";
  }
  return "?";
}

Weight parse_weight(const std::string& s) {
  if (s == "hamming") return Weight::hamming;
  if (s == "normalized") return Weight::normalized;
  if (s == "topcell") return Weight::topcell;
  fail(Err::input, "unknown weight function: " + s);
}

std::string simplex_id(const std::vector<int>& verts) {
  std::string id;
  for (size_t i = 0; i < verts.size(); ++i) {
    if (i) id += '-';
    id += std::to_string(verts[i]);
  }
  return id;
}

long long BasedComplex::layer_size(int k) const {
  if (k == -1) return augmented ? 1 : 0;
  if (k < 0 || k > dim) return 0;
  return (long long)cells[k].size();
}

int BasedComplex::cell_index(int k, const std::string& id) const {
  for (size_t i = 0; i < cells[k].size(); ++i)
    if (cells[k][i].id == id) return (int)i;
  return -1;
}

Gf2Matrix BasedComplex::boundary_matrix(int k) const {
  if (k == 0) {
    Gf2Matrix m(augmented ? 1 : 0, (int)cells[0].size());
    if (augmented)
      for (int c = 0; c < m.cols; ++c) m.set(0, c, true);
    return m;
  }
  if (k < 1 || k > dim) fail(Err::input, "boundary_matrix: bad dimension");
  return bnd[k];
}

Gf2Matrix BasedComplex::coboundary_matrix(int k) const {
  if (k == -1) {
    if (!augmented) fail(Err::input, "coboundary_matrix: not augmented");
    return boundary_matrix(0).transposed();
  }
  if (k == dim) return Gf2Matrix(0, (int)cells[dim].size());
  if (k < 0 || k > dim) fail(Err::input, "coboundary_matrix: bad dimension");
  return bnd[k + 1].transposed();
}

std::vector<int> BasedComplex::bnd_support(int k, int i) const {
  std::vector<int> s;
  if (k < 1 || k > dim) return s;
  for (int r = 0; r < bnd[k].rows; ++r)
    if (bnd[k].get(r, i)) s.push_back(r);
  return s;
}

Cochain BasedComplex::zero_cochain(int k) const {
  if (k < (augmented ? -1 : 0) || k > dim + 1)
    fail(Err::input, "cochain dimension out of range");
  int n = k > dim ? 0 : (int)layer_size(k);
  return Cochain{k, Gf2Vector(n)};
}

Cochain BasedComplex::cochain_from_ids(
    int k, const std::vector<std::string>& ids) const {
  Cochain a = zero_cochain(k);
  for (const auto& id : ids) {
    int i = cell_index(k, id);
    if (i < 0) fail(Err::input, "unknown cell id: " + id);
    a.bits.set(i, true);
  }
  return a;
}

Cochain BasedComplex::apply_boundary(const Cochain& a) const {
  if (a.k == 0) {
    Cochain r{-1, Gf2Vector(augmented ? 1 : 0)};
    if (augmented) r.bits.set(0, a.bits.popcount() & 1);
    return r;
  }
  if (a.k < 1 || a.k > dim) fail(Err::input, "boundary: bad dimension");
  return Cochain{a.k - 1, bnd[a.k].mul(a.bits)};
}

Cochain BasedComplex::apply_coboundary(const Cochain& a) const {
  return Cochain{a.k + 1, coboundary_matrix(a.k).mul(a.bits)};
}

std::vector<std::string> BasedComplex::support_ids(const Cochain& a) const {
  std::vector<std::string> out;
  if (a.k == -1) {
    if (!a.bits.is_zero()) out.push_back("~");
    return out;
  }
  for (int i : a.bits.support()) out.push_back(cells[a.k][i].id);
  return out;
}

bool BasedComplex::is_labeled() const {
  for (const auto& layer : cells)
    for (const auto& c : layer)
      if (c.verts.empty()) return false;
  return true;
}

bool BasedComplex::is_simplicial() const {
  if (!is_labeled()) return false;
  for (int k = 0; k <= dim; ++k)
    for (const auto& c : cells[k]) {
      if ((int)c.verts.size() != k + 1) return false;
      if (!std::is_sorted(c.verts.begin(), c.verts.end())) return false;
      if (std::adjacent_find(c.verts.begin(), c.verts.end()) !=
          c.verts.end())
        return false;
    }
  for (int k = 1; k <= dim; ++k)
    for (size_t i = 0; i < cells[k].size(); ++i) {
      std::set<std::vector<int>> want;
      const auto& v = cells[k][i].verts;
      for (size_t d = 0; d < v.size(); ++d) {
        std::vector<int> f = v;
        f.erase(f.begin() + d);
        want.insert(f);
      }
      std::set<std::vector<int>> got;
      for (int j : bnd_support(k, (int)i)) got.insert(cells[k - 1][j].verts);
      if (want != got) return false;
    }
  return true;
}

std::vector<std::vector<long long>> top_degrees(const BasedComplex& x) {
  std::vector<std::vector<long long>> deg(x.dim + 2);
  std::vector<std::vector<long long>> stamp(x.dim + 2);
  deg[0].assign(x.augmented ? 1 : 0, 0);
  stamp[0].assign(x.augmented ? 1 : 0, -1);
  for (int k = 0; k <= x.dim; ++k) {
    deg[k + 1].assign(x.cells[k].size(), 0);
    stamp[k + 1].assign(x.cells[k].size(), -1);
  }
  std::vector<std::pair<int, int>> stack;
  for (size_t t = 0; t < x.cells[x.dim].size(); ++t) {
    stack.push_back({x.dim, (int)t});
    while (!stack.empty()) {
      auto [k, i] = stack.back();
      stack.pop_back();
      if (stamp[k + 1][i] == (long long)t) continue;
      stamp[k + 1][i] = (long long)t;
      ++deg[k + 1][i];
      if (k == 0) {
        if (x.augmented) stack.push_back({-1, 0});
      } else if (k > 0) {
        for (int j : x.bnd_support(k, i)) stack.push_back({k - 1, j});
      }
    }
  }
  return deg;
}

ValidationReport BasedComplex::validate() const {
  ValidationReport rep;
  if ((int)cells.size() != dim + 1 || (int)bnd.size() != dim + 1) {
    rep.notes.push_back("layer bookkeeping inconsistent");
    return rep;
  }
  for (int k = 1; k <= dim; ++k)
    if (bnd[k].rows != (int)cells[k - 1].size() ||
        bnd[k].cols != (int)cells[k].size()) {
      rep.notes.push_back("boundary matrix shape mismatch at dimension " +
                          std::to_string(k));
      return rep;
    }

  rep.dd_zero = true;
  for (int k = 1; k <= dim && rep.dd_zero; ++k) {
    Gf2Matrix prod = boundary_matrix(k - 1).mul(boundary_matrix(k));
    for (int c = 0; c < prod.cols && rep.dd_zero; ++c)
      for (int r = 0; r < prod.rows; ++r)
        if (prod.get(r, c)) {
          rep.dd_zero = false;
          rep.dd_witness = {k, c};
          break;
        }
  }

  rep.p.assign(dim + 1, 0);
  rep.q.assign(dim + 1, 0);
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < (int)cells[k].size(); ++i) {
      int c = 0;
      for (int j = 0; j < (int)cells[k + 1].size(); ++j)
        if (bnd[k + 1].get(i, j)) ++c;
      rep.p[k] = std::max(rep.p[k], c);
    }
  if (augmented) rep.q[0] = cells[0].empty() ? 0 : 1;
  for (int k = 1; k <= dim; ++k)
    for (int i = 0; i < (int)cells[k].size(); ++i)
      rep.q[k] = std::max(rep.q[k], (int)bnd_support(k, i).size());

  auto deg = top_degrees(*this);
  rep.pure = !cells[dim].empty();
  for (int k = 0; k < dim && rep.pure; ++k)
    for (long long d : deg[k + 1])
      if (d == 0) { rep.pure = false; break; }

  rep.labeled = is_labeled();
  rep.simplicial = is_simplicial();
  bool labels_ok = true;
  if (rep.labeled) {
    for (int k = 1; k <= dim && labels_ok; ++k)
      for (int i = 0; i < (int)cells[k].size() && labels_ok; ++i)
        for (int j : bnd_support(k, i)) {
          const auto& sub = cells[k - 1][j].verts;
          const auto& sup = cells[k][i].verts;
          if (!std::includes(sup.begin(), sup.end(), sub.begin(), sub.end())) {
            labels_ok = false;
            rep.notes.push_back("face label not inside cell label: " +
                                cells[k][i].id);
            break;
          }
        }
  }
  if (!rep.dd_zero)
    rep.notes.push_back(
        "boundary squared nonzero at dimension " +
        std::to_string(rep.dd_witness->first) + " column " +
        std::to_string(rep.dd_witness->second));
  if (!rep.pure) rep.notes.push_back("not pure");
  rep.ok = rep.dd_zero && labels_ok;
  return rep;
}

Rat WeightFn::of(const Cochain& a) const {
  long long s = 0;
  for (int i : a.bits.support()) s += num[a.k + 1][i];
  return Rat(s, den[a.k + 1]);
}

Rat WeightFn::layer(int k) const {
  long long s = 0;
  for (long long v : num[k + 1]) s += v;
  return Rat(s, den[k + 1]);
}

WeightFn make_weight(const BasedComplex& x, Weight kind) {
  WeightFn w;
  w.kind = kind;
  w.num.assign(x.dim + 2, {});
  w.den.assign(x.dim + 2, 1);
  if (kind == Weight::topcell) {
    if (x.cells[x.dim].empty())
      fail(Err::input, "top-cell weight needs a nonempty top layer");
    auto deg = top_degrees(x);
    long long topn = (long long)x.cells[x.dim].size();
    for (int k = -1; k <= x.dim; ++k) {
      w.num[k + 1].assign(deg[k + 1].begin(), deg[k + 1].end());
      for (long long d : deg[k + 1])
        if (d == 0)
          fail(Err::input, "top-cell weight undefined on non-pure complex");
      w.den[k + 1] = binomial(x.dim + 1, k + 1) * topn;
    }
    return w;
  }
  for (int k = -1; k <= x.dim; ++k) {
    w.num[k + 1].assign((size_t)x.layer_size(k), 1);
    if (kind == Weight::normalized)
      w.den[k + 1] = std::max(1ll, x.layer_size(k));
  }
  return w;
}

/* ---------- construction ---------- */

static BasedComplex build_simplicial(const std::set<std::vector<int>>& faces,
                                     bool augmented) {
  if (faces.empty()) fail(Err::input, "empty complex");
  int dim = 0;
  for (const auto& f : faces) dim = std::max(dim, (int)f.size() - 1);
  BasedComplex x;
  x.dim = dim;
  x.augmented = augmented;
  x.cells.assign(dim + 1, {});
  x.bnd.assign(dim + 1, {});
  std::vector<std::map<std::vector<int>, int>> index(dim + 1);
  for (const auto& f : faces) {
    int k = (int)f.size() - 1;
    index[k].emplace(f, 0);
  }
  for (int k = 0; k <= dim; ++k) {
    int i = 0;
    for (auto& [verts, idx] : index[k]) {
      idx = i++;
      x.cells[k].push_back({simplex_id(verts), verts});
    }
  }
  for (int k = 1; k <= dim; ++k) {
    Gf2Matrix m((int)x.cells[k - 1].size(), (int)x.cells[k].size());
    for (int i = 0; i < (int)x.cells[k].size(); ++i) {
      const auto& v = x.cells[k][i].verts;
      for (size_t d = 0; d < v.size(); ++d) {
        std::vector<int> f = v;
        f.erase(f.begin() + d);
        auto it = index[k - 1].find(f);
        if (it == index[k - 1].end())
          fail(Err::input, "missing face " + simplex_id(f));
        m.set(it->second, i, true);
      }
    }
    x.bnd[k] = std::move(m);
  }
  return x;
}

BasedComplex BasedComplex::from_facets(
    const std::vector<std::vector<int>>& facets, bool augmented) {
  std::set<std::vector<int>> faces;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    if (f.empty()) fail(Err::input, "empty facet");
    if (f.size() > 24) fail(Err::budget, "facet too large to expand");
    int n = (int)f.size();
    for (unsigned m = 1; m < (1u << n); ++m) {
      std::vector<int> sub;
      for (int i = 0; i < n; ++i)
        if (m & (1u << i)) sub.push_back(f[i]);
      faces.insert(std::move(sub));
    }
  }
  return build_simplicial(faces, augmented);
}

BasedComplex BasedComplex::from_simplices(
    const std::vector<std::vector<int>>& simplices, bool augmented) {
  std::set<std::vector<int>> faces;
  for (auto f : simplices) {
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      fail(Err::input, "repeated vertex in simplex");
    faces.insert(std::move(f));
  }
  return build_simplicial(faces, augmented);
}

/* ---------- serialization ---------- */

void BasedComplex::write(std::ostream& os) const {
  os << "dim " << dim << " augmented " << (augmented ? 1 : 0) << "\n";
  for (int k = 0; k <= dim; ++k) {
    os << "cells " << k << " " << cells[k].size() << "\n";
    for (const auto& c : cells[k]) {
      os << c.id;
      if (!c.verts.empty()) {
        os << " [";
        for (size_t i = 0; i < c.verts.size(); ++i)
          os << (i ? " " : "") << c.verts[i];
        os << "]";
      }
      os << "\n";
    }
  }
  for (int k = 1; k <= dim; ++k)
    for (int i = 0; i < (int)cells[k].size(); ++i) {
      os << "bnd " << k << " " << i << " :";
      for (int j : bnd_support(k, i)) os << " " << j;
      os << "\n";
    }
  if (prod)
    for (int k = 0; k <= dim; ++k)
      for (int i = 0; i < (int)cells[k].size(); ++i) {
        os << "bigrade " << k << " " << i << " :";
        for (int m : prod->multi[k][i]) os << " " << m;
        os << "\n";
      }
}

namespace {

struct LineReader {
  std::istream& is;

  explicit LineReader(std::istream& s) : is(s) {}

  bool next(std::string& out) {
    while (std::getline(is, out)) {
      size_t b = out.find_first_not_of(" \t\r");
      if (b == std::string::npos) continue;
      if (out[b] == '#') continue;
      if (b > 0 || out.back() == '\r') {
        size_t e = out.find_last_not_of(" \t\r");
        out = out.substr(b, e - b + 1);
      }
      return true;
    }
    return false;
  }

  /* First character of the next content line, without consuming it.
     Keeps the stream line-aligned so a following read() starts clean. */
  int peek_content() {
    for (;;) {
      int c = is.peek();
      if (c == EOF) return EOF;
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        is.get();
        continue;
      }
      if (c == '#') {
        std::string junk;
        std::getline(is, junk);
        continue;
      }
      return c;
    }
  }
};

}  // namespace

BasedComplex BasedComplex::read(std::istream& is) {
  LineReader lr(is);
  std::string line, tok;
  if (!lr.next(line)) fail(Err::input, "empty complex input");
  {
    std::istringstream ls(line);
    int d = -1, a = -1;
    if (!(ls >> tok >> d) || tok != "dim" || !(ls >> tok >> a) ||
        tok != "augmented" || d < 0 || (a != 0 && a != 1))
      fail(Err::input, "bad complex header: " + line);
    BasedComplex x;
    x.dim = d;
    x.augmented = a == 1;
    x.cells.assign(d + 1, {});
    x.bnd.assign(d + 1, {});
    for (int k = 0; k <= d; ++k) {
      if (!lr.next(line)) fail(Err::input, "missing cells block");
      std::istringstream hs(line);
      int kk = -1;
      long long n = -1;
      if (!(hs >> tok >> kk >> n) || tok != "cells" || kk != k || n < 0)
        fail(Err::input, "bad cells header: " + line);
      for (long long i = 0; i < n; ++i) {
        if (!lr.next(line)) fail(Err::input, "missing cell line");
        Cell c;
        auto br = line.find('[');
        std::string head = br == std::string::npos ? line : line.substr(0, br);
        std::istringstream cs(head);
        if (!(cs >> c.id)) fail(Err::input, "bad cell line: " + line);
        std::string extra;
        if (cs >> extra) fail(Err::input, "bad cell line: " + line);
        if (br != std::string::npos) {
          auto er = line.find(']', br);
          if (er == std::string::npos)
            fail(Err::input, "bad cell label: " + line);
          std::istringstream vs(line.substr(br + 1, er - br - 1));
          int v;
          while (vs >> v) c.verts.push_back(v);
          if (!std::is_sorted(c.verts.begin(), c.verts.end()))
            fail(Err::input, "cell label not sorted: " + line);
        }
        x.cells[k].push_back(std::move(c));
      }
    }
    for (int k = 1; k <= d; ++k)
      x.bnd[k] =
          Gf2Matrix((int)x.cells[k - 1].size(), (int)x.cells[k].size());
    long long expect = 0;
    for (int k = 1; k <= d; ++k) expect += (long long)x.cells[k].size();
    for (long long r = 0; r < expect; ++r) {
      if (!lr.next(line)) fail(Err::input, "missing boundary line");
      std::istringstream bs(line);
      int k = -1, i = -1;
      std::string colon;
      if (!(bs >> tok >> k >> i >> colon) || tok != "bnd" || colon != ":" ||
          k < 1 || k > d || i < 0 || i >= (int)x.cells[k].size())
        fail(Err::input, "bad boundary line: " + line);
      int j;
      while (bs >> j) {
        if (j < 0 || j >= (int)x.cells[k - 1].size())
          fail(Err::input, "boundary index out of range: " + line);
        x.bnd[k].set(j, i, true);
      }
    }
    // optional product bookkeeping; anything else starts the next complex
    if (lr.peek_content() == 'b') {
      ProductInfo pi;
      pi.bigrade.assign(d + 1, {});
      pi.multi.assign(d + 1, {});
      for (int k = 0; k <= d; ++k) {
        pi.bigrade[k].resize(x.cells[k].size());
        pi.multi[k].resize(x.cells[k].size());
      }
      long long total = 0;
      for (int k = 0; k <= d; ++k) total += (long long)x.cells[k].size();
      for (long long r = 0; r < total; ++r) {
        if (!lr.next(line)) fail(Err::input, "missing bigrade line");
        std::istringstream gs(line);
        int k = -1, i = -1;
        std::string colon;
        if (!(gs >> tok >> k >> i >> colon) || tok != "bigrade" ||
            colon != ":" || k < 0 || k > d || i < 0 ||
            i >= (int)x.cells[k].size())
          fail(Err::input, "bad bigrade line: " + line);
        std::vector<int> m;
        int v;
        while (gs >> v) m.push_back(v);
        if (m.empty()) fail(Err::input, "empty bigrade: " + line);
        int last = m.back(), rest = 0;
        for (size_t t = 0; t + 1 < m.size(); ++t) rest += m[t];
        if (rest + last != k) fail(Err::input, "bigrade sum mismatch: " + line);
        pi.bigrade[k][i] = {rest, last};
        pi.multi[k][i] = std::move(m);
      }
      x.prod = std::move(pi);
    }
    return x;
  }
}

}  // namespace cosyx
