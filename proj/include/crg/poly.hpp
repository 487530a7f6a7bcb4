#pragma once

// Dense univariate polynomials over F_{q^l}, coefficients low degree first.

#include <span>
#include <vector>

#include "crg/field.hpp"

namespace crg {

using Poly = std::vector<FElem>;

inline void poly_trim(Poly& f) {
  while (!f.empty() && f.back().value == 0) f.pop_back();
}

/// Degree, with -1 for the zero polynomial.
inline long poly_degree(const Poly& f) {
  for (std::size_t i = f.size(); i-- > 0;)
    if (f[i].value != 0) return static_cast<long>(i);
  return -1;
}

/// Horner evaluation.
inline FElem poly_eval(const Field& F, std::span<const FElem> coeffs, FElem x) {
  FElem acc = F.zero();
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, x), coeffs[i]);
  return acc;
}

inline Poly poly_add(const Field& F, const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = F.add(out[i], b[i]);
  poly_trim(out);
  return out;
}

inline Poly poly_mul(const Field& F, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, F.zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].value == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(a[i], b[j]));
  }
  poly_trim(out);
  return out;
}

/// Quotient and remainder of a / b; b must be nonzero.
inline std::pair<Poly, Poly> poly_divmod(const Field& F, Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  if (b.empty()) throw Error(Errc::division_by_zero, "polynomial division by zero");
  if (a.size() < b.size()) return {Poly{}, a};
  const FElem lead_inv = F.inv(b.back());
  Poly quot(a.size() - b.size() + 1, F.zero());
  for (std::size_t i = a.size(); i-- > b.size() - 1;) {
    const FElem c = F.mul(a[i], lead_inv);
    quot[i - (b.size() - 1)] = c;
    if (c.value == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto& t = a[i - (b.size() - 1) + j];
      t = F.sub(t, F.mul(c, b[j]));
    }
  }
  poly_trim(quot);
  a.resize(b.size() - 1);
  poly_trim(a);
  return {quot, a};
}

/// prod (x - r) over the given roots.
inline Poly poly_from_roots(const Field& F, std::span<const FElem> roots) {
  Poly out{F.one()};
  for (FElem r : roots) {
    Poly next(out.size() + 1, F.zero());
    const FElem nr = F.neg(r);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i + 1] = F.add(next[i + 1], out[i]);
      next[i] = F.add(next[i], F.mul(nr, out[i]));
    }
    out = std::move(next);
  }
  return out;
}

/// f(a*x + c) in dense form.
inline Poly poly_compose_affine(const Field& F, const Poly& f, FElem a, FElem c) {
  const Poly lin{c, a};
  Poly acc;
  for (std::size_t i = f.size(); i-- > 0;) acc = poly_add(F, poly_mul(F, acc, lin), Poly{f[i]});
  return acc;
}

}  // namespace crg
