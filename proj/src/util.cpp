#include "cosyx/util.hpp"

#include <cstdlib>

namespace cosyx {

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    __int128 t = (__int128)r * (n - k + i) / i;
    if (t > (__int128)INT64_MAX) fail(Err::input, "binomial overflow");
    r = (long long)t;
  }
  return r;
}

static long long mul_checked(long long a, long long b) {
  __int128 t = (__int128)a * b;
  if (t > (__int128)INT64_MAX || t < -(__int128)INT64_MAX)
    fail(Err::input, "rational overflow");
  return (long long)t;
}

Rat rat_pow(Rat x, unsigned e) {
  Rat r(1);
  while (e) {
    if (e & 1)
      r = Rat(mul_checked(r.numerator(), x.numerator()),
              mul_checked(r.denominator(), x.denominator()));
    e >>= 1;
    if (e)
      x = Rat(mul_checked(x.numerator(), x.numerator()),
              mul_checked(x.denominator(), x.denominator()));
  }
  return r;
}

std::string rat_str(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) fail(Err::input, "empty rational");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      long long p = std::stoll(s.substr(0, slash));
      long long q = std::stoll(s.substr(slash + 1));
      if (q == 0) fail(Err::input, "zero denominator: " + s);
      return Rat(p, q);
    }
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rat(std::stoll(s));
    long long ip = dot ? std::stoll(s.substr(0, dot)) : 0;
    std::string frac = s.substr(dot + 1);
    if (frac.size() > 15) fail(Err::input, "decimal too precise: " + s);
    long long den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    long long fp = frac.empty() ? 0 : std::stoll(frac);
    bool neg = !s.empty() && s[0] == '-';
    Rat r = Rat(std::llabs(ip)) + Rat(fp, den);
    return neg ? -r : r;
  } catch (const std::invalid_argument&) {
    fail(Err::input, "bad rational: " + s);
  } catch (const std::out_of_range&) {
    fail(Err::input, "rational out of range: " + s);
  }
}

}  // namespace cosyx
