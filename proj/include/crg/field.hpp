#pragma once

// Arithmetic in F_{q^l}, q = p^s, as a single degree-(s*l) extension of F_p.
//
// Elements are integer indices of their F_p-coefficient vectors
// (value = sum c_i p^i over the polynomial basis 1, x, ..., x^{n-1}).
// Multiplication goes through discrete log / antilog tables with respect to
// a verified primitive element. F_q is the unique subfield of order p^s.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crg/error.hpp"

namespace crg {

struct FElem {
  std::uint32_t value = 0;

  constexpr FElem() = default;
  constexpr explicit FElem(std::uint32_t v) : value(v) {}

  friend constexpr auto operator<=>(FElem, FElem) = default;
};

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline std::vector<unsigned> divisors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

/// b^e, or nullopt once the value exceeds `limit`.
inline std::optional<std::uint64_t> bounded_pow(std::uint64_t b, unsigned e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (b != 0 && r > limit / b) return std::nullopt;
    r *= b;
    if (r > limit) return std::nullopt;
  }
  return r;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace detail

class Field;
using FieldPtr = std::shared_ptr<const Field>;

class Field {
 public:
  static constexpr std::uint64_t max_order = std::uint64_t{1} << 20;

  /// Builds F_{(p^s)^ell}. `modulus` lists F_p coefficients low degree first and
  /// must be monic of degree s*ell. Without one, the first polynomial (by
  /// coefficient index) with x primitive is used; for GF(16) that is x^4+x+1.
  static FieldPtr make(std::uint32_t p, unsigned s, unsigned ell,
                       std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
    return FieldPtr(new Field(p, s, ell, std::move(modulus)));
  }

  std::uint32_t p() const { return p_; }
  unsigned s() const { return s_; }
  unsigned ell() const { return ell_; }
  /// Extension degree over F_p, s * ell.
  unsigned degree() const { return deg_; }
  std::uint32_t order() const { return order_; }
  /// Order of the base field F_q.
  std::uint32_t q() const { return q_; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  FElem generator() const { return FElem(exp_[1 % exp_.size()]); }

  FElem zero() const { return FElem(0); }
  FElem one() const { return FElem(1); }
  bool contains(FElem x) const { return x.value < order_; }

  /// generator^i.
  FElem z_pow(std::uint64_t i) const { return FElem(exp_[i % (order_ - 1)]); }

  std::uint32_t log(FElem x) const {
    if (x.value == 0) throw Error(Errc::division_by_zero, "log of zero");
    return log_[x.value];
  }

  FElem add(FElem a, FElem b) const {
    if (p_ == 2) return FElem(a.value ^ b.value);
    std::uint32_t r = 0, place = 1, x = a.value, y = b.value;
    for (unsigned i = 0; i < deg_; ++i) {
      r += ((x % p_ + y % p_) % p_) * place;
      x /= p_;
      y /= p_;
      place *= p_;
    }
    return FElem(r);
  }

  FElem neg(FElem a) const {
    if (p_ == 2) return a;
    std::uint32_t r = 0, place = 1, x = a.value;
    for (unsigned i = 0; i < deg_; ++i) {
      r += ((p_ - x % p_) % p_) * place;
      x /= p_;
      place *= p_;
    }
    return FElem(r);
  }

  FElem sub(FElem a, FElem b) const { return add(a, neg(b)); }

  FElem mul(FElem a, FElem b) const {
    if (a.value == 0 || b.value == 0) return FElem(0);
    std::uint32_t l = log_[a.value] + log_[b.value];
    if (l >= order_ - 1) l -= order_ - 1;
    return FElem(exp_[l]);
  }

  FElem inv(FElem a) const {
    if (a.value == 0) throw Error(Errc::division_by_zero, "inverse of zero");
    std::uint32_t l = log_[a.value];
    return FElem(exp_[l == 0 ? 0 : order_ - 1 - l]);
  }

  FElem div(FElem a, FElem b) const { return mul(a, inv(b)); }

  FElem pow(FElem a, std::uint64_t e) const {
    if (e == 0) return one();
    if (a.value == 0) return zero();
    const std::uint64_t n = order_ - 1;
    return FElem(exp_[detail::mulmod(log_[a.value], e % n, n)]);
  }

  /// x^(p^m).
  FElem frobenius(FElem x, unsigned m) const {
    if (x.value == 0) return x;
    const std::uint64_t n = order_ - 1;
    std::uint64_t e = 1;
    for (unsigned i = 0; i < m; ++i) e = e * p_ % n;
    return FElem(exp_[detail::mulmod(log_[x.value], e, n)]);
  }

  /// Trace from F_{p^deg} down to the subfield of order p^m.
  FElem trace(FElem x, unsigned m) const {
    require_subfield(m);
    FElem acc = zero();
    FElem cur = x;
    for (unsigned i = 0; i < deg_ / m; ++i) {
      acc = add(acc, cur);
      cur = frobenius(cur, m);
    }
    return acc;
  }

  /// Trace to the base field F_q.
  FElem trace_to_base(FElem x) const { return trace(x, s_); }

  /// Membership in the subfield of order p^m.
  bool in_subfield(FElem x, unsigned m) const {
    require_subfield(m);
    if (x.value == 0) return true;
    return log_[x.value] % cofactor(m) == 0;
  }

  bool in_base(FElem x) const { return in_subfield(x, s_); }

  /// Primitive element of the subfield of order p^m.
  FElem subfield_generator(unsigned m) const {
    require_subfield(m);
    return FElem(exp_[cofactor(m) % (order_ - 1)]);
  }

  /// All elements of the subfield of order p^m: zero, then ascending powers of its generator.
  std::vector<FElem> subfield(unsigned m) const {
    require_subfield(m);
    const std::uint32_t step = cofactor(m);
    std::vector<FElem> out{zero()};
    for (std::uint32_t l = 0; l < order_ - 1; l += step) out.push_back(FElem(exp_[l]));
    return out;
  }

  std::vector<FElem> base_elements() const { return subfield(s_); }

  std::vector<FElem> elements() const {
    std::vector<FElem> out(order_);
    for (std::uint32_t i = 0; i < order_; ++i) out[i] = FElem(i);
    return out;
  }

  std::vector<FElem> nonzero_elements() const {
    std::vector<FElem> out(order_ - 1);
    for (std::uint32_t i = 1; i < order_; ++i) out[i - 1] = FElem(i);
    return out;
  }

  /// Human-readable modulus, e.g. "x^4+x+1".
  std::string modulus_string() const {
    std::string out;
    for (unsigned i = deg_ + 1; i-- > 0;) {
      const std::uint32_t c = modulus_[i];
      if (c == 0) continue;
      if (!out.empty()) out += "+";
      if (c != 1 || i == 0) out += std::to_string(c);
      if (i >= 1) out += "x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  using Digits = std::vector<std::uint32_t>;

  Field(std::uint32_t p, unsigned s, unsigned ell, std::optional<std::vector<std::uint32_t>> modulus)
      : p_(p), s_(s), ell_(ell), deg_(s * ell) {
    if (!detail::is_prime(p)) throw Error(Errc::non_prime, std::to_string(p) + " is not prime");
    if (s == 0 || ell == 0) throw Error(Errc::invalid_argument, "s and ell must be positive");
    const auto order = detail::bounded_pow(p, deg_, max_order);
    if (!order) throw Error(Errc::field_too_large, "p^(s*ell) exceeds 2^20");
    order_ = static_cast<std::uint32_t>(*order);
    q_ = static_cast<std::uint32_t>(*detail::bounded_pow(p, s, max_order));

    std::optional<Digits> gen;
    if (modulus) {
      modulus_ = *modulus;
      if (modulus_.size() != deg_ + 1 || modulus_.back() != 1)
        throw Error(Errc::invalid_argument, "modulus must be monic of degree s*ell");
      for (auto c : modulus_)
        if (c >= p_) throw Error(Errc::invalid_argument, "modulus coefficient out of range");
      if (!irreducible(modulus_)) throw Error(Errc::reducible_modulus, "modulus is reducible over F_p");
      const Digits x = reduce_x();
      if (is_primitive(x)) {
        gen = x;
      } else {
        for (std::uint32_t v = 1; v < order_ && !gen; ++v)
          if (is_primitive(decode(v))) gen = decode(v);
      }
    } else {
      modulus_.assign(deg_ + 1, 0);
      modulus_[deg_] = 1;
      for (std::uint32_t low = 0; low < order_; ++low) {
        const Digits d = decode(low);
        std::copy(d.begin(), d.end(), modulus_.begin());
        const Digits x = reduce_x();
        if (is_primitive(x)) {
          gen = x;
          break;
        }
      }
    }
    if (!gen) throw Error(Errc::reducible_modulus, "no primitive element found");
    build_tables(*gen);
  }

  void require_subfield(unsigned m) const {
    if (m == 0 || deg_ % m != 0)
      throw Error(Errc::invalid_subfield, "subfield degree " + std::to_string(m) + " does not divide " +
                                              std::to_string(deg_));
  }

  std::uint32_t cofactor(unsigned m) const {
    std::uint32_t pm = 1;
    for (unsigned i = 0; i < m; ++i) pm *= p_;
    return (order_ - 1) / (pm - 1);
  }

  Digits decode(std::uint32_t v) const {
    Digits d(deg_);
    for (unsigned i = 0; i < deg_; ++i) {
      d[i] = v % p_;
      v /= p_;
    }
    return d;
  }

  std::uint32_t encode(const Digits& d) const {
    std::uint32_t v = 0;
    for (unsigned i = deg_; i-- > 0;) v = v * p_ + d[i];
    return v;
  }

  /// x mod modulus as a digit vector.
  Digits reduce_x() const {
    Digits d(deg_, 0);
    if (deg_ >= 2) {
      d[1] = 1;
    } else {
      d[0] = (p_ - modulus_[0]) % p_;
    }
    return d;
  }

  Digits mulmod_slow(const Digits& a, const Digits& b) const {
    std::vector<std::uint64_t> prod(2 * deg_, 0);
    for (unsigned i = 0; i < deg_; ++i)
      for (unsigned j = 0; j < deg_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
    for (unsigned i = 2 * deg_; i-- > deg_;) {
      const std::uint64_t c = prod[i];
      if (c == 0) continue;
      prod[i] = 0;
      for (unsigned j = 0; j < deg_; ++j)
        prod[i - deg_ + j] = (prod[i - deg_ + j] + (p_ - modulus_[j]) % p_ * c) % p_;
    }
    Digits out(deg_);
    for (unsigned i = 0; i < deg_; ++i) out[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
  }

  Digits powmod_slow(Digits b, std::uint64_t e) const {
    Digits r(deg_, 0);
    r[0] = 1;
    while (e) {
      if (e & 1) r = mulmod_slow(r, b);
      b = mulmod_slow(b, b);
      e >>= 1;
    }
    return r;
  }

  // An element of exact multiplicative order p^n - 1 forces every nonzero
  // residue to be a unit, so this also certifies irreducibility.
  bool is_primitive(const Digits& g) const {
    Digits one(deg_, 0);
    one[0] = 1;
    const std::uint64_t n = order_ - 1;
    if (powmod_slow(g, n) != one) return false;
    for (auto r : detail::distinct_prime_factors(n))
      if (powmod_slow(g, n / r) == one) return false;
    return true;
  }

  /// Trial division by every monic polynomial of degree <= deg/2.
  bool irreducible(const std::vector<std::uint32_t>& f) const {
    for (unsigned d = 1; d <= deg_ / 2; ++d) {
      std::uint64_t count = 1;
      for (unsigned i = 0; i < d; ++i) count *= p_;
      for (std::uint64_t low = 0; low < count; ++low) {
        std::vector<std::uint32_t> g(d + 1);
        std::uint64_t v = low;
        for (unsigned i = 0; i < d; ++i) {
          g[i] = static_cast<std::uint32_t>(v % p_);
          v /= p_;
        }
        g[d] = 1;
        std::vector<std::uint64_t> rem(f.begin(), f.end());
        for (unsigned i = deg_ + 1; i-- > d;) {
          const std::uint64_t c = rem[i] % p_;
          if (c == 0) continue;
          for (unsigned j = 0; j <= d; ++j) rem[i - d + j] = (rem[i - d + j] + (p_ - g[j]) * c) % p_;
        }
        if (std::all_of(rem.begin(), rem.begin() + d, [](std::uint64_t c) { return c == 0; })) return false;
      }
    }
    return true;
  }

  void build_tables(const Digits& gen) {
    exp_.assign(order_ - 1, 0);
    log_.assign(order_, 0);
    const bool gen_is_x = deg_ >= 2 && gen == reduce_x();
    Digits cur(deg_, 0);
    cur[0] = 1;
    for (std::uint32_t i = 0; i < order_ - 1; ++i) {
      const std::uint32_t v = encode(cur);
      exp_[i] = v;
      log_[v] = i;
      if (gen_is_x) {
        const std::uint32_t top = cur[deg_ - 1];
        for (unsigned j = deg_ - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top != 0)
          for (unsigned j = 0; j < deg_; ++j) cur[j] = (cur[j] + (p_ - modulus_[j]) % p_ * top) % p_;
      } else {
        cur = mulmod_slow(cur, gen);
      }
    }
  }

  std::uint32_t p_;
  unsigned s_;
  unsigned ell_;
  unsigned deg_;
  std::uint32_t order_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace crg

template <>
struct std::hash<crg::FElem> {
  std::size_t operator()(crg::FElem x) const noexcept { return std::hash<std::uint32_t>{}(x.value); }
};
