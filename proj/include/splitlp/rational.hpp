#ifndef SPLITLP_RATIONAL_HPP
#define SPLITLP_RATIONAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>

#include "splitlp/error.hpp"

namespace splitlp {

using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(std::int64_t v) {
  Rational r;
  mpz_set_si(r.get_num_mpz_t(), static_cast<long>(v));
  return r;
}

/// "p/q" with q > 0 always printed, even for integers.
inline std::string to_fraction_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// Accepts "p/q" or a bare integer.
inline Rational parse_rational(std::string_view text) {
  Rational r;
  const std::string s(text);
  if (r.set_str(s, 10) != 0 || r.get_den() == 0) throw ParseError("malformed rational '" + s + "'");
  r.canonicalize();
  return r;
}

/// Best rational approximation with denominator at most `max_den`, by
/// continued fractions (convergents plus the final semiconvergent).
inline Rational best_rational(double value, std::int64_t max_den) {
  if (max_den < 1) throw DomainError("best_rational: max_den must be >= 1");
  if (!std::isfinite(value)) throw DomainError("best_rational: non-finite value");
  const bool negative = value < 0;
  double x = std::fabs(value);

  // h/k convergents as bignums; floating continued fraction terms.
  BigInt h_prev = 1, h = static_cast<long>(std::floor(x));
  BigInt k_prev = 0, k = 1;
  double frac = x - std::floor(x);
  const BigInt limit = BigInt(static_cast<long>(max_den));
  for (int iter = 0; iter < 64 && frac > 1e-15; ++iter) {
    const double inv = 1.0 / frac;
    const double a_float = std::floor(inv);
    if (a_float > 1e18) break;
    const BigInt a = BigInt(static_cast<long>(a_float));
    const BigInt k_next = a * k + k_prev;
    if (k_next > limit) {
      // Largest semiconvergent within the denominator limit.
      const BigInt t = (limit - k_prev) / k;
      if (t > 0) {
        const BigInt hs = t * h + h_prev;
        const BigInt ks = t * k + k_prev;
        const Rational semi(hs, ks);
        const Rational conv(h, k);
        const Rational target(x);
        Rational ds = semi - target, dc = conv - target;
        if (abs(ds) < abs(dc)) {
          h = hs;
          k = ks;
        }
      }
      break;
    }
    const BigInt h_next = a * h + h_prev;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    frac = inv - a_float;
  }
  Rational r(h, k);
  r.canonicalize();
  if (negative) r = -r;
  return r;
}

}  // namespace splitlp

#endif  // SPLITLP_RATIONAL_HPP
