#pragma once

// Exact subspace counting: Gaussian coefficients, the Moebius function, the
// number of delta-dimensional subspaces with a given base field, and the
// Burnside orbit count of those subspaces under multiplication by F_{q^l}^*.

#include <map>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

#include "crg/field.hpp"

namespace crg {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_pow(const BigInt& b, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

/// q-ary Gaussian coefficient [ell choose delta]_q.
inline BigInt gaussian_coefficient(unsigned ell, unsigned delta, const BigInt& q) {
  if (delta > ell) throw Error(Errc::invalid_argument, "delta exceeds ell");
  if (q < 2) throw Error(Errc::invalid_argument, "q must be at least 2");
  BigInt num = 1, den = 1;
  for (unsigned i = 0; i < delta; ++i) {
    num *= big_pow(q, ell) - big_pow(q, i);
    den *= big_pow(q, delta) - big_pow(q, i);
  }
  if (num % den != 0) throw Error(Errc::non_integer_result, "Gaussian coefficient is not integral");
  return num / den;
}

inline int mobius(std::uint64_t v) {
  if (v == 0) throw Error(Errc::invalid_argument, "mobius(0)");
  int sign = 1;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d != 0) continue;
    v /= d;
    if (v % d == 0) return 0;
    sign = -sign;
  }
  if (v > 1) sign = -sign;
  return sign;
}

/// N_{q,ell,delta}(m): delta-dimensional F_q-subspaces whose base field is exactly F_{q^m}.
inline BigInt count_with_base(const BigInt& q, unsigned ell, unsigned delta, unsigned m) {
  if (delta == 0 || delta > ell) throw Error(Errc::invalid_argument, "need 1 <= delta <= ell");
  const unsigned g = std::gcd(ell, delta);
  if (m == 0 || g % m != 0) throw Error(Errc::invalid_divisor, "m must divide gcd(ell, delta)");
  BigInt total = 0;
  for (unsigned v : detail::divisors(g / m)) {
    const int mu = mobius(v);
    if (mu == 0) continue;
    const BigInt term = gaussian_coefficient(ell / (m * v), delta / (m * v), big_pow(q, m * v));
    total += mu > 0 ? term : BigInt(-term);
  }
  return total;
}

/// m -> N_{q,ell,delta}(m) over every divisor m of gcd(ell, delta).
inline std::map<unsigned, BigInt> counts_by_base(const BigInt& q, unsigned ell, unsigned delta) {
  std::map<unsigned, BigInt> out;
  for (unsigned m : detail::divisors(std::gcd(ell, delta))) out[m] = count_with_base(q, ell, delta, m);
  return out;
}

/// Number of orbits of delta-dimensional subspaces under b*S, via Burnside
/// with stabilizer order q^m - 1 for base F_{q^m}.
inline BigInt orbit_count_formula(const BigInt& q, unsigned ell, unsigned delta) {
  BigInt sum = 0;
  for (const auto& [m, n] : counts_by_base(q, ell, delta)) sum += (big_pow(q, m) - 1) * n;
  const BigInt group = big_pow(q, ell) - 1;
  if (sum % group != 0) throw Error(Errc::non_integer_result, "Burnside sum not divisible by q^ell - 1");
  return sum / group;
}

}  // namespace crg
