#include <doctest.h>

#include <cstring>
#include <string>

#include <cosyx.h>

namespace {

// owner for strings coming back over the C boundary
struct Str {
  char* p = nullptr;
  ~Str() { cosyx_free_str(p); }
  char** slot() { return &p; }
  std::string get() const { return p ? std::string(p) : std::string(); }
};

struct Cx {
  cosyx_complex* x = nullptr;
  ~Cx() { cosyx_complex_free(x); }
  cosyx_complex** slot() { return &x; }
};

cosyx_opts base_opts() {
  cosyx_opts o;
  cosyx_opts_init(&o);
  return o;
}

void gen_cycle(int n, Cx& out) {
  std::string a = std::to_string(n);
  const char* args[] = {a.c_str()};
  Str err;
  REQUIRE(cosyx_gen("cycle", args, 1, 0, out.slot(), err.slot()) == 0);
}

bool has_line(const std::string& text, const std::string& line) {
  std::string probe = "\n" + line + "\n";
  return ("\n" + text).find(probe) != std::string::npos;
}

}  // namespace

TEST_CASE("version and option defaults") {
  CHECK(std::string(cosyx_version()) == "0.1.0");
  cosyx_opts o = base_opts();
  CHECK(o.k == -1);
  CHECK(o.l == 0);
  CHECK(o.m_max == 3);
  CHECK(o.budget == 24);
  CHECK(o.workers == 1);
  CHECK(o.seed == 0);
  CHECK(std::string(o.weight) == "hamming");
}

TEST_CASE("generate, write, read round trip") {
  Cx c;
  gen_cycle(4, c);
  CHECK(cosyx_complex_dim(c.x) == 1);
  Str text, err;
  REQUIRE(cosyx_complex_write(c.x, text.slot(), err.slot()) == 0);
  Cx back;
  REQUIRE(cosyx_complex_read(text.get().c_str(), back.slot(), err.slot()) ==
          0);
  Str text2;
  REQUIRE(cosyx_complex_write(back.x, text2.slot(), err.slot()) == 0);
  CHECK(text.get() == text2.get());
}

TEST_CASE("two complexes can share one stream") {
  Cx a, b;
  gen_cycle(3, a);
  gen_cycle(5, b);
  Str ta, tb, err;
  REQUIRE(cosyx_complex_write(a.x, ta.slot(), err.slot()) == 0);
  REQUIRE(cosyx_complex_write(b.x, tb.slot(), err.slot()) == 0);
  std::string both = ta.get() + "\n" + tb.get();
  long long pos = 0;
  Cx ra, rb;
  REQUIRE(cosyx_complex_read_at(both.c_str(), &pos, ra.slot(), err.slot()) ==
          0);
  REQUIRE(pos > 0);
  REQUIRE(cosyx_complex_read_at(both.c_str(), &pos, rb.slot(), err.slot()) ==
          0);
  Str rta, rtb;
  REQUIRE(cosyx_complex_write(ra.x, rta.slot(), err.slot()) == 0);
  REQUIRE(cosyx_complex_write(rb.x, rtb.slot(), err.slot()) == 0);
  CHECK(rta.get() == ta.get());
  CHECK(rtb.get() == tb.get());

  long long badpos = -1;
  Cx junk;
  CHECK(cosyx_complex_read_at(both.c_str(), &badpos, junk.slot(),
                              err.slot()) == 1);
}

TEST_CASE("null arguments are input errors") {
  Str err;
  Cx c;
  CHECK(cosyx_gen(nullptr, nullptr, 0, 0, c.slot(), err.slot()) == 1);
  CHECK(err.p != nullptr);
  Str err2, report;
  CHECK(cosyx_validate(nullptr, nullptr, report.slot(), err2.slot()) == 1);
  CHECK(cosyx_complex_dim(nullptr) == -1);
}

TEST_CASE("unknown family is an input error with a message") {
  Cx c;
  Str err;
  const char* args[] = {"3"};
  CHECK(cosyx_gen("torus", args, 1, 0, c.slot(), err.slot()) == 1);
  REQUIRE(err.p != nullptr);
  CHECK(std::string(err.p).find("torus") != std::string::npos);
}

TEST_CASE("tensor and the pipeline report") {
  Cx a, b, p;
  gen_cycle(3, a);
  gen_cycle(3, b);
  Str err;
  REQUIRE(cosyx_tensor(a.x, b.x, p.slot(), err.slot()) == 0);
  CHECK(cosyx_complex_dim(p.x) == 2);
  cosyx_opts o = base_opts();
  o.k = 1;
  Str report, mats;
  REQUIRE(cosyx_css(p.x, &o, 1, "dense", report.slot(), mats.slot(),
                    err.slot()) == 0);
  std::string t = report.get();
  CHECK(has_line(t, "n=18"));
  CHECK(has_line(t, "k=2"));
  CHECK(has_line(t, "dX=3"));
  CHECK(has_line(t, "dZ=3"));
  CHECK(mats.get().substr(0, 8) == "hx\n9 18\n");
}

TEST_CASE("verdict calls return 2 with the report filled") {
  Cx s;
  Str cones, err;
  REQUIRE(cosyx_simplex_cones(4, s.slot(), cones.slot(), err.slot()) == 0);
  cosyx_opts o = base_opts();
  o.weight = "topcell";
  Str report;
  REQUIRE(cosyx_cones_check(s.x, cones.get().c_str(), &o, report.slot(),
                            err.slot()) == 0);
  CHECK(has_line(report.get(), "cones_ok=true"));
  CHECK(has_line(report.get(), "theta_0=3/4"));

  // drop one cone line: the boundary law breaks and the verdict says so
  std::string broken = cones.get();
  size_t at = broken.find("\n0 ");
  REQUIRE(at != std::string::npos);
  size_t end = broken.find('\n', at + 1);
  broken = broken.substr(0, at) + broken.substr(end);
  Str report2, err2;
  CHECK(cosyx_cones_check(s.x, broken.c_str(), &o, report2.slot(),
                          err2.slot()) == 2);
  CHECK(has_line(report2.get(), "cones_ok=false"));
  CHECK(err2.p == nullptr);

  Str report3, err3;
  CHECK(cosyx_cones_check(s.x, "cones x\nend\n", &o, report3.slot(),
                          err3.slot()) == 1);
  CHECK(err3.p != nullptr);
}

TEST_CASE("budget refusal surfaces as status 3 without a report") {
  Cx c;
  gen_cycle(3, c);
  cosyx_opts o = base_opts();
  o.k = 0;
  o.budget = 1;
  Str report, err;
  CHECK(cosyx_expansion(c.x, &o, report.slot(), err.slot()) == 3);
  CHECK(report.p == nullptr);
  REQUIRE(err.p != nullptr);
}

TEST_CASE("balance through the boundary") {
  Cx c;
  gen_cycle(3, c);
  cosyx_opts o = base_opts();
  o.k = 0;
  Str report, err;
  REQUIRE(cosyx_balance(c.x, &o, report.slot(), err.slot()) == 0);
  CHECK(has_line(report.get(), "l=3"));
  CHECK(has_line(report.get(), "d=3"));
  CHECK(has_line(report.get(), "pred_distance=3"));
}

TEST_CASE("homology and validate through the boundary") {
  Cx c;
  gen_cycle(5, c);
  cosyx_opts o = base_opts();
  Str report, err;
  REQUIRE(cosyx_homology(c.x, &o, report.slot(), err.slot()) == 0);
  CHECK(has_line(report.get(), "h_1=1"));
  Str vrep, verr;
  REQUIRE(cosyx_validate(c.x, &o, vrep.slot(), verr.slot()) == 0);
  CHECK(has_line(vrep.get(), "ok=true"));
}

TEST_CASE("local check argument pairing") {
  Cx c;
  gen_cycle(3, c);
  cosyx_opts o = base_opts();
  Str report, err;
  CHECK(cosyx_local_check(c.x, &o, nullptr, 0, "1/2", nullptr, report.slot(),
                          err.slot()) == 1);
  Str report2, err2;
  REQUIRE(cosyx_local_check(c.x, &o, nullptr, 0, nullptr, nullptr,
                            report2.slot(), err2.slot()) == 0);
  CHECK(has_line(report2.get(), "ok=true"));
}

TEST_CASE("product verification through the boundary") {
  Cx a, b;
  gen_cycle(3, a);
  gen_cycle(3, b);
  cosyx_opts o = base_opts();
  o.l = 1;
  o.m_max = 1;
  Str report, err;
  REQUIRE(cosyx_verify_product(a.x, b.x, &o, report.slot(), err.slot()) == 0);
  CHECK(has_line(report.get(), "ok=true"));
}
