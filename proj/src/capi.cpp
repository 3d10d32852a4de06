#include "cosyx.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>
#include <vector>

#include "cosyx/cones.hpp"
#include "cosyx/report.hpp"
#include "cosyx/tensor.hpp"

using namespace cosyx;

struct cosyx_complex {
  BasedComplex x;
};

namespace {

char* dup_str(const std::string& s) {
  char* p = (char*)std::malloc(s.size() + 1);
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int bad_arg(char** err, const char* what) {
  if (err) *err = dup_str(what);
  return 1;
}

template <class F>
int guarded(char** err, F&& f) {
  try {
    f();
    return 0;
  } catch (const Error& e) {
    if (err) *err = dup_str(e.what());
    return (int)e.code;
  } catch (const std::exception& e) {
    if (err) *err = dup_str(e.what());
    return 2;
  }
}

RunOpts opts_of(const cosyx_opts* o) {
  RunOpts r;
  if (!o) return r;
  r.k = o->k;
  r.l = o->l;
  r.m_max = o->m_max;
  r.budget = o->budget;
  r.workers = o->workers;
  r.seed = o->seed;
  r.weight = o->weight ? parse_weight(o->weight) : Weight::hamming;
  return r;
}

// verdict runs report through *ok; a false verdict is status 2 with the
// report still delivered
template <class F>
int verdict(char** report, char** err, F&& f) {
  bool okflag = true;
  int st = guarded(err, [&] { *report = dup_str(f(&okflag)); });
  if (st) return st;
  return okflag ? 0 : 2;
}

}  // namespace

extern "C" {

void cosyx_opts_init(cosyx_opts* o) {
  if (!o) return;
  o->k = -1;
  o->l = 0;
  o->m_max = 3;
  o->budget = kDefaultBudget;
  o->workers = 1;
  o->seed = 0;
  o->weight = "hamming";
}

const char* cosyx_version(void) { return kToolVersion; }

void cosyx_free_str(char* s) { std::free(s); }

void cosyx_complex_free(cosyx_complex* x) { delete x; }

int cosyx_gen(const char* family, const char* const* args, int nargs,
              unsigned long long seed, cosyx_complex** out, char** err) {
  if (!family || !out || nargs < 0 || (nargs > 0 && !args))
    return bad_arg(err, "gen: null argument");
  return guarded(err, [&] {
    std::vector<std::string> a(args, args + nargs);
    *out = new cosyx_complex{gen_complex(family, a, seed)};
  });
}

int cosyx_simplex_cones(int n, cosyx_complex** out, char** cones_text,
                        char** err) {
  if (!out || !cones_text) return bad_arg(err, "simplex-cones: null argument");
  return guarded(err, [&] {
    auto [x, c] = simplex_cones(n);
    std::ostringstream os;
    write_cones(os, x, c);
    *out = new cosyx_complex{std::move(x)};
    *cones_text = dup_str(os.str());
  });
}

int cosyx_complex_read(const char* text, cosyx_complex** out, char** err) {
  if (!text || !out) return bad_arg(err, "read: null argument");
  return guarded(err, [&] {
    std::istringstream is{std::string(text)};
    *out = new cosyx_complex{BasedComplex::read(is)};
  });
}

int cosyx_complex_read_at(const char* text, long long* pos,
                          cosyx_complex** out, char** err) {
  if (!text || !pos || !out) return bad_arg(err, "read: null argument");
  if (*pos < 0 || *pos > (long long)std::strlen(text))
    return bad_arg(err, "read: position out of range");
  return guarded(err, [&] {
    std::string all(text);
    std::istringstream is{all};
    is.seekg(*pos);
    *out = new cosyx_complex{BasedComplex::read(is)};
    *pos = is.eof() ? (long long)all.size() : (long long)is.tellg();
  });
}

int cosyx_complex_write(const cosyx_complex* x, char** text, char** err) {
  if (!x || !text) return bad_arg(err, "write: null argument");
  return guarded(err, [&] {
    std::ostringstream os;
    x->x.write(os);
    *text = dup_str(os.str());
  });
}

int cosyx_tensor(const cosyx_complex* a, const cosyx_complex* b,
                 cosyx_complex** out, char** err) {
  if (!a || !b || !out) return bad_arg(err, "tensor: null argument");
  return guarded(err, [&] { *out = new cosyx_complex{tensor(a->x, b->x)}; });
}

int cosyx_complex_dim(const cosyx_complex* x) { return x ? x->x.dim : -1; }

int cosyx_validate(const cosyx_complex* x, const cosyx_opts* o, char** report,
                   char** err) {
  if (!x || !report) return bad_arg(err, "validate: null argument");
  return verdict(report, err,
                 [&](bool* ok) { return run_validate(x->x, opts_of(o), ok); });
}

int cosyx_homology(const cosyx_complex* x, const cosyx_opts* o, char** report,
                   char** err) {
  if (!x || !report) return bad_arg(err, "homology: null argument");
  return guarded(err,
                 [&] { *report = dup_str(run_homology(x->x, opts_of(o))); });
}

int cosyx_expansion(const cosyx_complex* x, const cosyx_opts* o, char** report,
                    char** err) {
  if (!x || !report) return bad_arg(err, "expansion: null argument");
  return guarded(err,
                 [&] { *report = dup_str(run_expansion(x->x, opts_of(o))); });
}

int cosyx_local_check(const cosyx_complex* x, const cosyx_opts* o,
                      const char* const* members, int nmembers,
                      const char* xi, const char* eps, char** report,
                      char** err) {
  if (!x || !report || nmembers < 0 || (nmembers > 0 && !members))
    return bad_arg(err, "local-check: null argument");
  if (!xi != !eps)
    return bad_arg(err, "local-check: xi and eps go together");
  return verdict(report, err, [&](bool* ok) {
    LocalCheckArgs args;
    for (int i = 0; i < nmembers; ++i) {
      std::vector<std::string> ids;
      std::string cur;
      for (const char* p = members[i]; *p; ++p) {
        if (*p == ',') {
          if (!cur.empty()) ids.push_back(cur);
          cur.clear();
        } else {
          cur += *p;
        }
      }
      if (!cur.empty()) ids.push_back(cur);
      args.members.push_back(std::move(ids));
    }
    if (xi) args.xi = parse_rat(xi);
    if (eps) args.eps = parse_rat(eps);
    return run_local_check(x->x, opts_of(o), args, ok);
  });
}

int cosyx_cones_check(const cosyx_complex* x, const char* cones_text,
                      const cosyx_opts* o, char** report, char** err) {
  if (!x || !cones_text || !report)
    return bad_arg(err, "cones-check: null argument");
  return verdict(report, err, [&](bool* ok) {
    std::istringstream is{std::string(cones_text)};
    ConeSystem c = read_cones(is, x->x);
    return run_cones_check(x->x, c, opts_of(o), ok);
  });
}

int cosyx_css(const cosyx_complex* x, const cosyx_opts* o, int want_params,
              const char* format, char** report, char** matrices, char** err) {
  if (!x || !report) return bad_arg(err, "css: null argument");
  return guarded(err, [&] {
    std::string mats;
    *report = dup_str(run_css(x->x, opts_of(o), want_params != 0,
                              format ? format : "", &mats));
    if (matrices) *matrices = dup_str(mats);
  });
}

int cosyx_balance(const cosyx_complex* x, const cosyx_opts* o, char** report,
                  char** err) {
  if (!x || !report) return bad_arg(err, "balance: null argument");
  return guarded(err,
                 [&] { *report = dup_str(run_balance(x->x, opts_of(o))); });
}

int cosyx_verify_product(const cosyx_complex* a, const cosyx_complex* b,
                         const cosyx_opts* o, char** report, char** err) {
  if (!a || !b || !report)
    return bad_arg(err, "verify-product: null argument");
  return verdict(report, err, [&](bool* ok) {
    return run_verify_product(a->x, b->x, opts_of(o), ok);
  });
}

}  // extern "C"
