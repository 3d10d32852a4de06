#include "cosyx/report.hpp"

#include <sstream>

#include "cosyx/css.hpp"
#include "cosyx/homology.hpp"
#include "cosyx/local.hpp"
#include "cosyx/zoo.hpp"

namespace cosyx {
namespace {

void check_key(const std::string& key) {
  if (key.empty()) fail(Err::input, "report: empty key");
  if (key.find_first_of("=\n \t") != std::string::npos)
    fail(Err::input, "report: bad key '" + key + "'");
}

long long to_ll(const std::string& s) {
  size_t pos = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size()) fail(Err::input, "bad integer '" + s + "'");
  return v;
}

double to_double(const std::string& s) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = std::string::npos;
  }
  if (pos != s.size()) fail(Err::input, "bad number '" + s + "'");
  return v;
}

void put_extreme(Report& r, const std::string& key, const ExtremeResult& e) {
  if (e.exists)
    r.put(key, e.value);
  else
    r.put(key, "none");
}

void put_code(Report& r, const CssCode& code) {
  r.put("n", code.n);
  r.put("k", code.k_dim);
  r.put("hx_rows", (long long)code.hx.rows);
  r.put("hz_rows", (long long)code.hz.rows);
}

void put_params(Report& r, const CodeParams& p) {
  r.put("hx_row_max", p.hx_row_max);
  r.put("hx_col_max", p.hx_col_max);
  r.put("hz_row_max", p.hz_row_max);
  r.put("hz_col_max", p.hz_col_max);
  r.put("dX", p.dx);
  r.put("dZ", p.dz);
  r.put("d", p.d);
}

}  // namespace

void Report::put(const std::string& key, const std::string& value) {
  check_key(key);
  if (value.find('\n') != std::string::npos)
    fail(Err::input, "report: multi-line value for '" + key + "'");
  lines.emplace_back(key, value);
}

void Report::put(const std::string& key, const char* value) {
  put(key, std::string(value));
}

void Report::put(const std::string& key, long long value) {
  put(key, std::to_string(value));
}

void Report::put(const std::string& key, int value) {
  put(key, (long long)value);
}

void Report::put(const std::string& key, bool value) {
  put(key, std::string(value ? "true" : "false"));
}

void Report::put(const std::string& key, const Rat& value) {
  put(key, rat_str(value));
}

void Report::put(const std::string& key,
                 const std::optional<long long>& value) {
  if (value)
    put(key, *value);
  else
    put(key, "none");
}

void Report::put(const std::string& key, const std::optional<Rat>& value) {
  if (value)
    put(key, *value);
  else
    put(key, "none");
}

std::string Report::text() const {
  std::string out;
  for (const auto& [k, v] : lines) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

Report make_report(const std::string& command, const RunOpts& o) {
  Report r;
  r.put("tool", "cosyx");
  r.put("version", kToolVersion);
  r.put("command", command);
  r.put("seed", std::to_string(o.seed));
  r.put("budget", (long long)o.budget);
  r.put("m_max", (long long)o.m_max);
  r.put("weight", weight_name(o.weight));
  return r;
}

BasedComplex gen_complex(const std::string& family,
                         const std::vector<std::string>& args, uint64_t seed) {
  auto want = [&](size_t n) {
    if (args.size() != n)
      fail(Err::input, "gen " + family + ": expected " + std::to_string(n) +
                           " argument(s)");
  };
  if (family == "cycle") {
    want(1);
    return cycle((int)to_ll(args[0]));
  }
  if (family == "skeleton") {
    want(2);
    return simplex_skeleton((int)to_ll(args[0]), (int)to_ll(args[1]));
  }
  if (family == "lm") {
    want(3);
    return lm_random((int)to_ll(args[0]), (int)to_ll(args[1]),
                     to_double(args[2]), seed);
  }
  if (family == "flag") {
    want(1);
    return flag_pg2((int)to_ll(args[0]));
  }
  fail(Err::input, "gen: unknown family '" + family + "'");
}

std::string run_validate(const BasedComplex& x, const RunOpts& o, bool* ok) {
  ValidationReport v = x.validate();
  Report r = make_report("validate", o);
  r.put("dim", (long long)x.dim);
  r.put("augmented", x.augmented);
  for (int k = 0; k <= x.dim; ++k)
    r.put("cells_" + std::to_string(k), x.layer_size(k));
  r.put("dd_zero", v.dd_zero);
  if (v.dd_witness)
    r.put("dd_witness", std::to_string(v.dd_witness->first) + ":" +
                            std::to_string(v.dd_witness->second));
  for (size_t i = 0; i < v.p.size(); ++i)
    r.put("p_" + std::to_string(i), (long long)v.p[i]);
  for (size_t i = 0; i < v.q.size(); ++i)
    r.put("q_" + std::to_string(i), (long long)v.q[i]);
  r.put("pure", v.pure);
  r.put("labeled", v.labeled);
  r.put("simplicial", v.simplicial);
  for (size_t i = 0; i < v.notes.size(); ++i)
    r.put("note_" + std::to_string(i), v.notes[i]);
  r.put("ok", v.ok);
  if (ok) *ok = v.ok;
  return r.text();
}

std::string run_homology(const BasedComplex& x, const RunOpts& o) {
  Report r = make_report("homology", o);
  int lo = o.k >= 0 ? o.k : 0;
  int hi = o.k >= 0 ? o.k : x.dim;
  if (lo > x.dim) fail(Err::input, "homology: degree beyond the dimension");
  for (int k = lo; k <= hi; ++k) {
    r.put("h_" + std::to_string(k), betti(x, k));
    r.put("h_" + std::to_string(k) + "_reduced", betti(x, k, true));
  }
  return r.text();
}

std::string run_expansion(const BasedComplex& x, const RunOpts& o) {
  if (o.k < 0) fail(Err::input, "expansion: degree required");
  ExpansionReport e =
      measure_expansion(x, o.k, o.weight, o.m_max, o.budget, o.workers);
  Report r = make_report("expansion", o);
  r.put("degree", (long long)o.k);
  put_extreme(r, "sys", e.sys);
  put_extreme(r, "cosys", e.cosys);
  r.put("eta", e.eta);
  if (e.mu.exists)
    r.put("mu", e.mu.value);
  else
    r.put("mu", "none");
  for (size_t m = 0; m < e.mu_coll.size(); ++m) {
    const CollectiveResult& c = e.mu_coll[m];
    std::string key = "mu_bar_" + std::to_string(m + 1);
    if (c.exists)
      r.put(key, c.value);
    else
      r.put(key, "none");
  }
  return r.text();
}

std::string run_local_check(const BasedComplex& x, const RunOpts& o,
                            const LocalCheckArgs& args, bool* ok) {
  Report r = make_report("local-check", o);
  bool all = true;
  if (x.dim >= 1 && x.layer_size(0) <= 20)
    r.put("rho", skeleton_rho(x, o.budget, o.workers));
  else
    r.put("rho", "skipped");
  if (!args.members.empty()) {
    if (o.k < 0) fail(Err::input, "local-check: degree required for members");
    std::vector<Cochain> members;
    for (const auto& ids : args.members)
      members.push_back(x.cochain_from_ids(o.k, ids));
    CochainCollection c = make_collection(x, o.k, std::move(members));
    r.put("degree", (long long)o.k);
    r.put("members", (long long)c.members.size());
    WeightFn w = make_weight(x, o.weight);
    r.put("union_norm", w.of(c.unioned));
    MinimalityReport mr = is_minimal_collection(x, c, Locality::local,
                                                o.weight, o.budget, o.workers);
    r.put("locally_minimal", mr.minimal);
    if (!mr.minimal) {
      all = false;
      r.put("improvable_from", mr.before);
      r.put("improvable_to", mr.after);
    }
    LocalMinimizeResult lm =
        local_minimize(x, c, o.weight, o.budget, o.workers);
    r.put("minimize_steps", lm.steps);
    r.put("q_bound", lm.q_bound);
    r.put("reduced_union_norm", w.of(lm.reduced.unioned));
    if (args.xi && args.eps) {
      FatBoundsReport fb =
          check_fat_bounds(x, c, *args.xi, *args.eps, {}, o.m_max, o.weight,
                           o.budget, o.workers);
      r.put("xi", fb.xi);
      r.put("eps", fb.eps);
      r.put("rho_max", fb.rho_max);
      r.put("rho_hypothesis", fb.rho_hypothesis);
      r.put("minimal_hypothesis", fb.minimal_hypothesis);
      r.put("mubar", fb.mubar);
      r.put("mubar_source", fb.mubar_source);
      r.put("upsilon_ok", fb.upsilon_ok);
      r.put("ladder_ok", fb.ladder_ok);
      r.put("c_positive", fb.c_positive);
      r.put("fat_checked", fb.checked);
      r.put("fat_ok", fb.ok);
      if (fb.checked && !fb.ok) all = false;
    }
  }
  r.put("ok", all);
  if (ok) *ok = all;
  return r.text();
}

std::string run_cones_check(const BasedComplex& x, const ConeSystem& c,
                            const RunOpts& o, bool* ok) {
  ConeVerdict v = validate_cones(x, c);
  Report r = make_report("cones-check", o);
  r.put("s_count", c.s_count);
  r.put("cones_ok", v.ok);
  if (!v.ok) {
    if (v.sigma) {
      r.put("witness_degree", (long long)v.sigma->k);
      r.put("witness_cell", v.sigma->i);
    }
    r.put("witness_s", v.s);
    r.put("witness_what", v.what);
  } else {
    for (int k = -1; k < x.dim; ++k)
      r.put("theta_" + std::to_string(k), theta(x, c, k, o.weight));
  }
  if (ok) *ok = v.ok;
  return r.text();
}

std::string run_css(const BasedComplex& x, const RunOpts& o, bool params,
                    const std::string& format, std::string* matrices) {
  if (o.k < 0) fail(Err::input, "css: degree required");
  CssCode code = from_complex(x, o.k);
  Report r = make_report("css", o);
  r.put("degree", (long long)o.k);
  put_code(r, code);
  if (params) {
    CodeParams p = code_params(code, o.budget, o.workers);
    put_params(r, p);
  }
  if (!format.empty() && matrices) {
    std::ostringstream os;
    if (format == "dense") {
      os << "hx\n" << code.hx.to_text() << "hz\n" << code.hz.to_text();
    } else if (format == "alist") {
      os << "hx\n";
      write_alist(os, code.hx);
      os << "hz\n";
      write_alist(os, code.hz);
    } else {
      fail(Err::input, "css: unknown format '" + format + "'");
    }
    *matrices = os.str();
  }
  return r.text();
}

std::string run_balance(const BasedComplex& x, const RunOpts& o) {
  if (o.k < 0) fail(Err::input, "balance: degree required");
  BalanceReport b = balance(x, o.k, o.l, o.budget, o.workers);
  Report r = make_report("balance", o);
  r.put("degree", (long long)o.k);
  r.put("m", b.m);
  r.put("sys", b.sys);
  r.put("cosys", b.cosys);
  r.put("l", (long long)b.l_used);
  r.put("predicted_ok", b.predicted_ok);
  if (b.predicted_ok) {
    r.put("pred_length", b.predicted.length);
    r.put("pred_distance", b.predicted.distance);
    r.put("pred_dimension", b.predicted.dimension);
    r.put("pred_distance_sq", b.predicted.distance_sq);
    r.put("pred_dimension_sq", b.predicted.dimension_sq);
  }
  r.put("source", b.code.source);
  put_code(r, b.code);
  put_params(r, b.params);
  r.put("h_before", b.h_before);
  r.put("h_after", b.h_after);
  return r.text();
}

std::string run_verify_product(const BasedComplex& x, const BasedComplex& y,
                               const RunOpts& o, bool* ok) {
  ProductCheck p =
      verify_product_theorem(x, y, o.l, o.m_max, o.budget, o.workers);
  Report r = make_report("verify-product", o);
  r.put("l", (long long)p.l);
  auto put_factor = [&](const std::string& side, const FactorData& f) {
    for (size_t i = 0; i < f.eta.size(); ++i)
      r.put(side + "_eta_" + std::to_string(i), f.eta[i]);
    for (size_t i = 0; i < f.mu.size(); ++i)
      r.put(side + "_mu_" + std::to_string(i), f.mu[i]);
    for (size_t i = 0; i < f.mubar.size(); ++i)
      r.put(side + "_mubar_" + std::to_string(i), f.mubar[i]);
    for (size_t i = 0; i < f.q.size(); ++i)
      r.put(side + "_q_" + std::to_string(i), f.q[i]);
  };
  put_factor("left", p.left);
  put_factor("right", p.right);
  r.put("lambda", p.consts.lambda);
  for (size_t j = 0; j < p.consts.b.size(); ++j)
    r.put("b_" + std::to_string(j), p.consts.b[j]);
  r.put("nu", p.consts.nu);
  r.put("nu_coll", p.consts.nu_coll);
  r.put("eta_pair_min", p.consts.eta_pair_min);
  r.put("chained_ok", p.consts.chained_ok);
  r.put("h_product", p.h_product);
  r.put("cosys_floor", p.cosys_floor);
  r.put("cosys", p.cosys);
  r.put("mu_prod", p.mu_prod);
  r.put("mubar_prod", p.mubar_prod);
  r.put("cosys_ok", p.cosys_ok);
  r.put("mu_ok", p.mu_ok);
  r.put("mubar_ok", p.mubar_ok);
  r.put("ok", p.ok);
  if (ok) *ok = p.ok;
  return r.text();
}

}  // namespace cosyx
