#pragma once
#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cosyx {

/* Exact arithmetic everywhere a ratio or weight is reported. Caution:
   under C++20 rewritten candidates, boost 1.74 makes Rat == long long
   recurse forever; always wrap both sides, Rat(a) == Rat(b). */
using Rat = boost::rational<long long>;

enum class Err : int { input = 1, property = 2, budget = 3 };

/* Every failure surfaces as Error; the numeric code doubles as the
   process exit code at the CLI boundary. */
struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Err c, const std::string& msg) {
  throw Error(c, msg);
}

long long binomial(int n, int k);

// x^e with int64 overflow detection; throws input error when too precise.
Rat rat_pow(Rat x, unsigned e);

std::string rat_str(const Rat& r);  // "p/q", or "p" when q == 1

// Accepts "p/q", integers and plain decimals ("0.9" -> 9/10).
Rat parse_rat(const std::string& s);

}  // namespace cosyx
