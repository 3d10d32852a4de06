#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <cosyx.h>

namespace {

// exit codes: 0 ok, 1 usage or io, 2 property failure, 3 budget refusal

bool read_all(const std::string& path, std::string& out) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    out = ss.str();
    return true;
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::ostringstream ss;
  ss << f.rdbuf();
  out = ss.str();
  return true;
}

int write_out(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    return std::cout ? 0 : 1;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "cosyx: cannot open " << path << "\n";
    return 1;
  }
  f << data;
  return f ? 0 : 1;
}

struct Handle {
  cosyx_complex* x = nullptr;
  ~Handle() { cosyx_complex_free(x); }
  cosyx_complex** slot() { return &x; }
};

int load_complex(const std::string& path, Handle& h) {
  std::string text;
  if (!read_all(path, text)) {
    std::cerr << "cosyx: cannot read " << path << "\n";
    return 1;
  }
  char* err = nullptr;
  int st = cosyx_complex_read(text.c_str(), h.slot(), &err);
  if (err) {
    std::cerr << "cosyx: " << err << "\n";
    cosyx_free_str(err);
  }
  return st;
}

// offset of the next content byte, skipping blanks and # comments
long long skip_blank(const std::string& text, long long pos) {
  while (pos < (long long)text.size()) {
    char c = text[(size_t)pos];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++pos;
    } else if (c == '#') {
      while (pos < (long long)text.size() && text[(size_t)pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  return pos;
}

/* a and b may both name stdin; the stream then holds both complexes, or
   just one, which gets used for both sides. */
int load_pair(const std::string& pa, const std::string& pb, Handle& a,
              Handle& b) {
  if (pa == "-" && pb == "-") {
    std::string text;
    read_all("-", text);
    long long pos = 0;
    char* err = nullptr;
    int st = cosyx_complex_read_at(text.c_str(), &pos, a.slot(), &err);
    if (st == 0) {
      if (skip_blank(text, pos) >= (long long)text.size()) pos = 0;
      st = cosyx_complex_read_at(text.c_str(), &pos, b.slot(), &err);
    }
    if (err) {
      std::cerr << "cosyx: " << err << "\n";
      cosyx_free_str(err);
    }
    return st;
  }
  int st = load_complex(pa, a);
  if (st) return st;
  return load_complex(pb, b);
}

/* Prints the report (when any), the error (when any), and folds io
   problems into the status. */
int finish(int st, char* report, char* err, const std::string& out) {
  if (report) {
    if (write_out(out, report) != 0 && st == 0) st = 1;
    cosyx_free_str(report);
  }
  if (err) {
    std::cerr << "cosyx: " << err << "\n";
    cosyx_free_str(err);
  }
  return st;
}

int env_budget() {
  const char* e = std::getenv("COSYX_BUDGET");
  if (!e || !*e) {
    cosyx_opts d;
    cosyx_opts_init(&d);
    return d.budget;
  }
  char* end = nullptr;
  long v = std::strtol(e, &end, 10);
  if (end && *end == '\0' && v > 0 && v < 63) return (int)v;
  std::cerr << "cosyx: ignoring bad COSYX_BUDGET '" << e << "'\n";
  cosyx_opts d;
  cosyx_opts_init(&d);
  return d.budget;
}

struct Common {
  int k = -1;
  int l = 0;
  int m_max = 3;
  int budget = 24;
  int workers = 1;
  unsigned long long seed = 0;
  std::string weight = "hamming";
  std::string out;

  cosyx_opts opts() const {
    cosyx_opts o;
    cosyx_opts_init(&o);
    o.k = k;
    o.l = l;
    o.m_max = m_max;
    o.budget = budget;
    o.workers = workers;
    o.seed = seed;
    o.weight = weight.c_str();
    return o;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_weight = true) {
  cmd->add_option("--m-max", c.m_max, "largest collection size measured")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--budget", c.budget,
                  "log2 of the admissible exact-search steps")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--workers", c.workers, "threads inside searches")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "seed recorded in the report header");
  if (with_weight)
    cmd->add_option("--weight", c.weight, "hamming | normalized | topcell")
        ->check(CLI::IsMember({"hamming", "normalized", "topcell"}));
  cmd->add_option("--out", c.out, "report destination, - for stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chain-complex measurements and code extraction"};
  app.require_subcommand(1);
  int rc = 0;

  int budget0 = env_budget();

  // gen
  auto* gen = app.add_subcommand("gen", "emit a library complex");
  std::string gen_family;
  std::vector<std::string> gen_args;
  Common genc;
  genc.budget = budget0;
  gen->add_option("family", gen_family, "cycle | skeleton | lm | flag")
      ->required();
  gen->add_option("args", gen_args, "family parameters");
  gen->add_option("--seed", genc.seed, "random-family seed");
  gen->add_option("--out", genc.out, "complex destination, - for stdout");
  gen->callback([&] {
    std::vector<const char*> raw;
    for (const auto& s : gen_args) raw.push_back(s.c_str());
    Handle h;
    char* err = nullptr;
    int st = cosyx_gen(gen_family.c_str(), raw.data(), (int)raw.size(),
                       genc.seed, h.slot(), &err);
    char* text = nullptr;
    if (st == 0) st = cosyx_complex_write(h.x, &text, &err);
    rc = finish(st, text, err, genc.out);
  });

  // gen-cones
  auto* genc2 = app.add_subcommand(
      "gen-cones", "augmented full simplex with its cone table");
  int genc2_n = 3;
  std::string genc2_out, genc2_cones_out;
  genc2->add_option("n", genc2_n, "vertex count")->required();
  genc2->add_option("--out", genc2_out, "complex destination, - for stdout");
  genc2->add_option("--cones-out", genc2_cones_out,
                    "cone table destination, - for stdout");
  genc2->callback([&] {
    Handle h;
    char* cones = nullptr;
    char* err = nullptr;
    int st = cosyx_simplex_cones(genc2_n, h.slot(), &cones, &err);
    char* text = nullptr;
    if (st == 0) st = cosyx_complex_write(h.x, &text, &err);
    rc = finish(st, text, err, genc2_out);
    if (cones) {
      if (st == 0 && write_out(genc2_cones_out, cones) != 0 && rc == 0)
        rc = 1;
      cosyx_free_str(cones);
    }
  });

  // tensor
  auto* ten = app.add_subcommand("tensor", "tensor product of two complexes");
  std::string ten_a, ten_b, ten_out;
  ten->add_option("a", ten_a, "left factor, - for stdin")->required();
  ten->add_option("b", ten_b, "right factor, - for stdin")->required();
  ten->add_option("--out", ten_out, "complex destination, - for stdout");
  ten->callback([&] {
    Handle a, b, p;
    rc = load_pair(ten_a, ten_b, a, b);
    if (rc) return;
    char* err = nullptr;
    int st = cosyx_tensor(a.x, b.x, p.slot(), &err);
    char* text = nullptr;
    if (st == 0) st = cosyx_complex_write(p.x, &text, &err);
    rc = finish(st, text, err, ten_out);
  });

  // validate
  auto* val = app.add_subcommand("validate", "structural checks on a complex");
  std::string val_in;
  Common valc;
  valc.budget = budget0;
  val->add_option("complex", val_in, "input, - for stdin")->required();
  add_common(val, valc);
  val->callback([&] {
    Handle h;
    rc = load_complex(val_in, h);
    if (rc) return;
    char* report = nullptr;
    char* err = nullptr;
    cosyx_opts o = valc.opts();
    int st = cosyx_validate(h.x, &o, &report, &err);
    rc = finish(st, report, err, valc.out);
  });

  // homology
  auto* hom = app.add_subcommand("homology", "betti numbers");
  std::string hom_in;
  Common homc;
  homc.budget = budget0;
  hom->add_option("complex", hom_in, "input, - for stdin")->required();
  hom->add_option("--k", homc.k, "single degree; all degrees when absent");
  add_common(hom, homc);
  hom->callback([&] {
    Handle h;
    rc = load_complex(hom_in, h);
    if (rc) return;
    char* report = nullptr;
    char* err = nullptr;
    cosyx_opts o = homc.opts();
    int st = cosyx_homology(h.x, &o, &report, &err);
    rc = finish(st, report, err, homc.out);
  });

  // expansion
  auto* exp = app.add_subcommand(
      "expansion", "systole, cosystole and cofilling measurements");
  std::string exp_in;
  Common expc;
  expc.budget = budget0;
  exp->add_option("complex", exp_in, "input, - for stdin")->required();
  exp->add_option("--k", expc.k, "degree")->required();
  add_common(exp, expc);
  exp->callback([&] {
    Handle h;
    rc = load_complex(exp_in, h);
    if (rc) return;
    char* report = nullptr;
    char* err = nullptr;
    cosyx_opts o = expc.opts();
    int st = cosyx_expansion(h.x, &o, &report, &err);
    rc = finish(st, report, err, expc.out);
  });

  // local-check
  auto* loc = app.add_subcommand(
      "local-check", "skeleton expansion, local minimality, fat bounds");
  std::string loc_in, loc_xi, loc_eps;
  std::vector<std::string> loc_members;
  Common locc;
  locc.budget = budget0;
  locc.weight = "topcell";
  loc->add_option("complex", loc_in, "input, - for stdin")->required();
  loc->add_option("--k", locc.k, "degree of the collection members");
  loc->add_option("--member", loc_members,
                  "comma-separated cell ids; repeat per member");
  loc->add_option("--xi", loc_xi, "fatness threshold, rational or decimal");
  loc->add_option("--eps", loc_eps, "ladder slack, rational or decimal");
  add_common(loc, locc);
  loc->callback([&] {
    Handle h;
    rc = load_complex(loc_in, h);
    if (rc) return;
    std::vector<const char*> raw;
    for (const auto& s : loc_members) raw.push_back(s.c_str());
    char* report = nullptr;
    char* err = nullptr;
    cosyx_opts o = locc.opts();
    int st = cosyx_local_check(h.x, &o, raw.data(), (int)raw.size(),
                               loc_xi.empty() ? nullptr : loc_xi.c_str(),
                               loc_eps.empty() ? nullptr : loc_eps.c_str(),
                               &report, &err);
    rc = finish(st, report, err, locc.out);
  });

  // cones-check
  auto* con = app.add_subcommand("cones-check",
                                 "cone table validation and theta constants");
  std::string con_in, con_cones;
  Common conc;
  conc.budget = budget0;
  conc.weight = "topcell";
  con->add_option("complex", con_in, "input, - for stdin")->required();
  con->add_option("cones", con_cones, "cone table file")->required();
  add_common(con, conc);
  con->callback([&] {
    Handle h;
    rc = load_complex(con_in, h);
    if (rc) return;
    std::string cones_text;
    if (!read_all(con_cones, cones_text)) {
      std::cerr << "cosyx: cannot read " << con_cones << "\n";
      rc = 1;
      return;
    }
    char* report = nullptr;
    char* err = nullptr;
    cosyx_opts o = conc.opts();
    int st = cosyx_cones_check(h.x, cones_text.c_str(), &o, &report, &err);
    rc = finish(st, report, err, conc.out);
  });

  // css
  auto* css = app.add_subcommand("css", "extract a code from a complex");
  std::string css_in, css_format, css_mats_out = "-";
  bool css_params = false;
  Common cssc;
  cssc.budget = budget0;
  css->add_option("complex", css_in, "input, - for stdin")->required();
  css->add_option("--k", cssc.k, "extraction degree")->required();
  css->add_flag("--params", css_params, "run the exact distance search");
  css->add_option("--format", css_format, "export parity checks")
      ->check(CLI::IsMember({"dense", "alist"}));
  css->add_option("--matrices-out", css_mats_out,
                  "parity-check destination, - for stdout");
  add_common(css, cssc);
  css->callback([&] {
    Handle h;
    rc = load_complex(css_in, h);
    if (rc) return;
    char* report = nullptr;
    char* mats = nullptr;
    char* err = nullptr;
    cosyx_opts o = cssc.opts();
    int st = cosyx_css(h.x, &o, css_params ? 1 : 0,
                       css_format.empty() ? nullptr : css_format.c_str(),
                       &report, &mats, &err);
    rc = finish(st, report, err, cssc.out);
    if (mats) {
      if (st == 0 && !css_format.empty() &&
          write_out(css_mats_out, mats) != 0 && rc == 0)
        rc = 1;
      cosyx_free_str(mats);
    }
  });

  // balance
  auto* bal = app.add_subcommand(
      "balance", "tensor with a cycle and extract the balanced code");
  std::string bal_in;
  Common balc;
  balc.budget = budget0;
  bal->add_option("complex", bal_in, "input, - for stdin")->required();
  bal->add_option("--k", balc.k, "degree carrying the homology")->required();
  bal->add_option("--l", balc.l, "cycle length; derived when absent")
      ->check(CLI::Range(3, 1000000));
  add_common(bal, balc);
  bal->callback([&] {
    Handle h;
    rc = load_complex(bal_in, h);
    if (rc) return;
    char* report = nullptr;
    char* err = nullptr;
    cosyx_opts o = balc.opts();
    int st = cosyx_balance(h.x, &o, &report, &err);
    rc = finish(st, report, err, balc.out);
  });

  // verify-product
  auto* ver = app.add_subcommand("verify-product",
                                 "product expansion bounds on two factors");
  std::string ver_a, ver_b;
  Common verc;
  verc.budget = budget0;
  ver->add_option("a", ver_a, "left factor, - for stdin")->required();
  ver->add_option("b", ver_b, "right factor, - for stdin")->required();
  ver->add_option("--l", verc.l, "product degree checked")
      ->check(CLI::NonNegativeNumber);
  add_common(ver, verc);
  ver->callback([&] {
    Handle a, b;
    rc = load_pair(ver_a, ver_b, a, b);
    if (rc) return;
    char* report = nullptr;
    char* err = nullptr;
    cosyx_opts o = verc.opts();
    int st = cosyx_verify_product(a.x, b.x, &o, &report, &err);
    rc = finish(st, report, err, verc.out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  return rc;
}
