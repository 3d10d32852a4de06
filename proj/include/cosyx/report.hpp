#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cosyx/complex.hpp"
#include "cosyx/cones.hpp"
#include "cosyx/expansion.hpp"
#include "cosyx/util.hpp"

namespace cosyx {

inline constexpr const char* kToolVersion = "0.1.0";

/* Key=value accumulator for run artifacts. Lines come out in insertion
   order. Nothing that varies between reruns of the same invocation may
   be put here; in particular worker counts and timings stay out, so
   identical runs diff clean byte for byte. */
struct Report {
  std::vector<std::pair<std::string, std::string>> lines;

  void put(const std::string& key, const std::string& value);
  void put(const std::string& key, const char* value);
  void put(const std::string& key, long long value);
  void put(const std::string& key, int value);
  void put(const std::string& key, bool value);
  void put(const std::string& key, const Rat& value);
  // "none" marks a value the run could not produce
  void put(const std::string& key, const std::optional<long long>& value);
  void put(const std::string& key, const std::optional<Rat>& value);

  std::string text() const;  // one key=value line per entry
};

/* One bag of knobs for every driver; -1 marks an unset degree. The seed
   is echoed into each header even when nothing consumes it. */
struct RunOpts {
  int k = -1;
  int l = 0;
  int m_max = 3;
  int budget = kDefaultBudget;
  int workers = 1;
  uint64_t seed = 0;
  Weight weight = Weight::hamming;
};

// Header shared by every report: tool, version, command, seed, budget.
Report make_report(const std::string& command, const RunOpts& o);

// family: cycle L | skeleton N K | lm N K P | flag Q
BasedComplex gen_complex(const std::string& family,
                         const std::vector<std::string>& args, uint64_t seed);

/* Drivers behind the command-line verbs. Verdict-style runs set *ok and
   still return their report; measurement runs throw on bad input or
   blown budgets instead of reporting partial numbers. */
std::string run_validate(const BasedComplex& x, const RunOpts& o, bool* ok);
std::string run_homology(const BasedComplex& x, const RunOpts& o);
std::string run_expansion(const BasedComplex& x, const RunOpts& o);

struct LocalCheckArgs {
  std::vector<std::vector<std::string>> members;  // cell ids, degree o.k
  std::optional<Rat> xi, eps;                     // both set: fat bounds
};
std::string run_local_check(const BasedComplex& x, const RunOpts& o,
                            const LocalCheckArgs& args, bool* ok);

std::string run_cones_check(const BasedComplex& x, const ConeSystem& c,
                            const RunOpts& o, bool* ok);

// format: "" no export, else "dense" or "alist" into *matrices
std::string run_css(const BasedComplex& x, const RunOpts& o, bool params,
                    const std::string& format, std::string* matrices);

std::string run_balance(const BasedComplex& x, const RunOpts& o);

std::string run_verify_product(const BasedComplex& x, const BasedComplex& y,
                               const RunOpts& o, bool* ok);

}  // namespace cosyx
