#pragma once

// Trace repair schemes for full-length RS(q^l, k) codes over F_{q^l}.
//
// A seed scheme repairs f(0) from the helpers S* = S \ {0}. Its check
// polynomials are kept factored, g_i(x) = u_i(x) * M_S(x) with
// M_S(x) = (x^{q^l} - x) / L_S(x) = prod_{a not in S} (x - a), so every g_i
// vanishes off S by construction. For a in S, M_S(a) is the constant
// -1 / prod_{s in S*} s (differentiate x^{q^l} - x at a and use that
// {a - c : c in S, c != a} = S*). deg g_i <= q^l - k - 1 iff deg u_i < |S| - k.
//
// A repair scheme for f(a*) with helpers a* + bS* uses h_i(x) = g_i((x - a*)/b).
// For a full-length code sum_a g(a) f(a) = 0 holds for every check polynomial
// (the dual multiplier vector is constant because sum_a a^t = 0 for
// 0 <= t <= q^l - 2), so Tr(h_i(a*) f(a*)) = -sum_beta Tr(h_i(beta) f(beta)).

#include <map>
#include <memory>

#include "crg/linalg.hpp"
#include "crg/poly.hpp"
#include "crg/rng.hpp"
#include "crg/subspace.hpp"

namespace crg {

class SeedScheme {
 public:
  SeedScheme(Subspace support, unsigned k, std::vector<Poly> multipliers)
      : S_(std::move(support)), k_(k), u_(std::move(multipliers)), lin_(S_.field_ptr()) {
    const Field& F = S_.field();
    if (k_ == 0) throw Error(Errc::invalid_argument, "code dimension must be positive");
    if (S_.size() <= k_)
      throw Error(Errc::dimension_too_small, "|S| = " + std::to_string(S_.size()) + " must exceed k = " +
                                                 std::to_string(k_));
    if (u_.size() != F.ell()) throw Error(Errc::invalid_argument, "need exactly ell multiplier polynomials");
    for (auto& u : u_) {
      poly_trim(u);
      if (poly_degree(u) >= static_cast<long>(S_.size() - k_))
        throw Error(Errc::invalid_argument, "multiplier degree must be below |S| - k");
    }
    FElem prod = F.one();
    for (FElem s : S_.nonzero_members()) prod = F.mul(prod, s);
    m_on_support_ = F.neg(F.inv(prod));
    bandwidth_ = 0;
    for (FElem a : S_.nonzero_members()) bandwidth_ += rank_at(a);
  }

  const Field& field() const { return S_.field(); }
  const FieldPtr& field_ptr() const { return S_.field_ptr(); }
  const Subspace& support() const { return S_; }
  unsigned k() const { return k_; }
  const std::vector<Poly>& multipliers() const { return u_; }
  const FqLinear& linear() const { return lin_; }
  std::size_t bandwidth() const { return bandwidth_; }

  /// M_S(a) for a in S.
  FElem vanishing_cofactor() const { return m_on_support_; }

  /// g_i(x).
  FElem check_value(std::size_t i, FElem x) const {
    if (!S_.contains(x)) return field().zero();
    return field().mul(poly_eval(field(), u_[i], x), m_on_support_);
  }

  std::vector<FElem> check_values(FElem x) const {
    std::vector<FElem> v(u_.size());
    for (std::size_t i = 0; i < u_.size(); ++i) v[i] = check_value(i, x);
    return v;
  }

  std::size_t rank_at(FElem x) const { return lin_.rank(check_values(x)); }

  /// Ranks at the helpers, in ascending helper order.
  std::vector<std::size_t> rank_profile() const {
    std::vector<std::size_t> out;
    for (FElem a : S_.nonzero_members()) out.push_back(rank_at(a));
    return out;
  }

  bool full_rank() const { return rank_at(field().zero()) == field().ell(); }

  /// g_i in dense form; degree up to q^l - k - 1.
  Poly dense_check_polynomial(std::size_t i) const {
    const Field& F = field();
    Poly xq(F.order() + 1, F.zero());
    xq[F.order()] = F.one();
    xq[1] = F.neg(F.one());
    auto [m, rem] = poly_divmod(F, xq, subspace_polynomial(S_));
    return poly_mul(F, u_[i], m);
  }

 private:
  Subspace S_;
  unsigned k_;
  std::vector<Poly> u_;
  FqLinear lin_;
  FElem m_on_support_;
  std::size_t bandwidth_ = 0;
};

using SeedSchemePtr = std::shared_ptr<const SeedScheme>;

inline bool verify_full_rank(const SeedScheme& s) { return s.full_rank(); }
inline std::size_t bandwidth(const SeedScheme& s) { return s.bandwidth(); }

/// u_i = z^{i-1}: every helper sends its whole symbol, bandwidth (|S| - 1) * l.
inline SeedScheme naive_seed_scheme(const Subspace& S, unsigned k) {
  const Field& F = S.field();
  std::vector<Poly> u;
  for (unsigned i = 0; i < F.ell(); ++i) u.push_back(Poly{F.z_pow(i)});
  return SeedScheme(S, k, std::move(u));
}

namespace detail {

inline std::size_t multiplier_bandwidth(const Subspace& S, const FqLinear& lin, const std::vector<Poly>& u) {
  std::size_t bw = 0;
  std::vector<FElem> vals(u.size());
  for (FElem a : S.nonzero_members()) {
    for (std::size_t i = 0; i < u.size(); ++i) vals[i] = poly_eval(S.field(), u[i], a);
    bw += lin.rank(vals);
  }
  return bw;
}

inline bool constants_independent(const FqLinear& lin, const std::vector<Poly>& u) {
  std::vector<FElem> c;
  for (const auto& p : u) c.push_back(p.empty() ? FElem(0) : p[0]);
  return lin.rank(c) == u.size();
}

}  // namespace detail

/// Randomized-restart coordinate descent over the coefficients of u_1..u_l,
/// minimizing bandwidth subject to the full-rank condition at 0. `budget`
/// counts candidate evaluations; 0 returns the naive scheme. Never worse than
/// naive. Candidate values per coefficient: every field element when
/// q^l <= 64, otherwise 64 random ones.
inline SeedScheme search_seed_scheme(const Subspace& S, unsigned k, std::uint64_t budget,
                                     std::uint64_t rng_seed = 0) {
  SeedScheme naive = naive_seed_scheme(S, k);
  if (budget == 0) return naive;
  const Field& F = S.field();
  const FqLinear& lin = naive.linear();
  const std::size_t ell = F.ell();
  const std::size_t ncoef = S.size() - k;
  CounterRng rng(rng_seed, 0x5eed);

  std::vector<Poly> cur(ell, Poly(ncoef, F.zero()));
  for (std::size_t i = 0; i < ell; ++i) cur[i][0] = F.z_pow(i);
  std::size_t cur_bw = detail::multiplier_bandwidth(S, lin, cur);
  std::vector<Poly> best = cur;
  std::size_t best_bw = cur_bw;

  auto candidates = [&]() {
    std::vector<FElem> c;
    if (F.order() <= 64) {
      c = F.elements();
    } else {
      for (int t = 0; t < 64; ++t) c.push_back(FElem(static_cast<std::uint32_t>(rng.below(F.order()))));
    }
    return c;
  };

  std::uint64_t evals = 0;
  while (evals < budget) {
    bool improved = false;
    for (std::size_t i = 0; i < ell && evals < budget; ++i) {
      for (std::size_t j = 0; j < ncoef && evals < budget; ++j) {
        for (FElem v : candidates()) {
          if (evals >= budget) break;
          if (v == cur[i][j]) continue;
          ++evals;
          const FElem old = cur[i][j];
          cur[i][j] = v;
          if (j == 0 && !detail::constants_independent(lin, cur)) {
            cur[i][j] = old;
            continue;
          }
          const std::size_t bw = detail::multiplier_bandwidth(S, lin, cur);
          if (bw < cur_bw) {
            cur_bw = bw;
            improved = true;
          } else {
            cur[i][j] = old;
          }
        }
      }
    }
    if (cur_bw < best_bw) {
      best = cur;
      best_bw = cur_bw;
    }
    if (!improved) {
      do {
        for (auto& p : cur)
          for (auto& c : p) c = FElem(static_cast<std::uint32_t>(rng.below(F.order())));
        ++evals;
      } while (!detail::constants_independent(lin, cur) && evals < budget);
      cur_bw = detail::multiplier_bandwidth(S, lin, cur);
      if (!detail::constants_independent(lin, cur)) break;
    }
  }
  if (best_bw >= naive.bandwidth()) return naive;
  return SeedScheme(S, k, std::move(best));
}

/// Seed scheme dilated by b and translated to a*: h_i(x) = g_i((x - a*)/b).
class RepairScheme {
 public:
  RepairScheme(SeedSchemePtr seed, FElem alpha_star, FElem b)
      : seed_(std::move(seed)), alpha_star_(alpha_star), b_(b) {
    if (b_.value == 0) throw Error(Errc::zero_dilation, "dilation factor must be nonzero");
    if (!seed_->field().contains(alpha_star_) || !seed_->field().contains(b_))
      throw Error(Errc::invalid_argument, "alpha* or b outside the field");
  }

  const SeedScheme& seed() const { return *seed_; }
  const SeedSchemePtr& seed_ptr() const { return seed_; }
  FElem alpha_star() const { return alpha_star_; }
  FElem b() const { return b_; }
  const Field& field() const { return seed_->field(); }

  /// Preimage (x - a*)/b in the seed's coordinates.
  FElem to_seed(FElem x) const { return field().div(field().sub(x, alpha_star_), b_); }

  FElem check_value(std::size_t i, FElem x) const { return seed_->check_value(i, to_seed(x)); }
  std::vector<FElem> check_values(FElem x) const { return seed_->check_values(to_seed(x)); }

  /// a* + bS*, ascending.
  std::vector<FElem> helpers() const {
    std::vector<FElem> out;
    for (FElem s : seed_->support().nonzero_members())
      out.push_back(field().add(alpha_star_, field().mul(b_, s)));
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_helper(FElem x) const { return x != alpha_star_ && seed_->support().contains(to_seed(x)); }

  std::size_t rank_at(FElem x) const { return seed_->linear().rank(check_values(x)); }
  bool full_rank() const { return rank_at(alpha_star_) == field().ell(); }

  /// Sum of ranks over this scheme's own helper set.
  std::size_t bandwidth() const {
    std::size_t bw = 0;
    for (FElem h : helpers()) bw += rank_at(h);
    return bw;
  }

 private:
  SeedSchemePtr seed_;
  FElem alpha_star_;
  FElem b_;
};

inline RepairScheme dilate_translate(SeedSchemePtr seed, FElem alpha_star, FElem b) {
  return RepairScheme(std::move(seed), alpha_star, b);
}

inline bool verify_full_rank(const RepairScheme& s) { return s.full_rank(); }
inline std::size_t bandwidth(const RepairScheme& s) { return s.bandwidth(); }

/// What one helper sends: Tr(xi_j * f(beta)) for an echelon basis xi of
/// span_Fq{h_i(beta)}, with h_i(beta) = sum_j combination[i][j] * xi_j.
struct HelperPayload {
  FElem point;
  std::vector<FElem> symbols;  // F_q values, one per basis vector
  Matrix combination;          // l rows, symbols.size() columns

  std::size_t rank() const { return symbols.size(); }
};

inline HelperPayload helper_payload(const RepairScheme& scheme, FElem beta, FElem f_beta) {
  if (!scheme.is_helper(beta)) throw Error(Errc::not_a_helper, "point is not in the helper set");
  const Field& F = scheme.field();
  const FqLinear& lin = scheme.seed().linear();
  const auto vals = scheme.check_values(beta);
  const Echelon ech = lin.echelon(vals);
  HelperPayload p;
  p.point = beta;
  for (FElem xi : ech.elements) p.symbols.push_back(F.trace_to_base(F.mul(xi, f_beta)));
  for (FElem v : vals) {
    const auto c = lin.coords(v);
    std::vector<FElem> row;
    for (unsigned piv : ech.pivots) row.push_back(c[piv]);
    p.combination.push_back(std::move(row));
  }
  return p;
}

/// Reconstructs f(a*) from one payload per helper.
inline FElem recover_symbol(const RepairScheme& scheme, std::span<const HelperPayload> payloads) {
  const Field& F = scheme.field();
  const FqLinear& lin = scheme.seed().linear();
  const std::size_t ell = F.ell();
  std::map<FElem, const HelperPayload*> by_point;
  for (const auto& p : payloads) {
    if (!scheme.is_helper(p.point)) throw Error(Errc::not_a_helper, "payload from a non-helper");
    by_point[p.point] = &p;
  }
  std::vector<FElem> traces(ell, F.zero());
  for (FElem beta : scheme.helpers()) {
    const auto it = by_point.find(beta);
    if (it == by_point.end()) throw Error(Errc::missing_payload, "no payload from helper " + std::to_string(beta.value));
    const HelperPayload& p = *it->second;
    if (p.combination.size() != ell) throw Error(Errc::malformed_input, "payload combination has wrong shape");
    for (std::size_t i = 0; i < ell; ++i) {
      if (p.combination[i].size() != p.symbols.size())
        throw Error(Errc::malformed_input, "payload combination has wrong shape");
      for (std::size_t j = 0; j < p.symbols.size(); ++j)
        traces[i] = F.sub(traces[i], F.mul(p.combination[i][j], p.symbols[j]));
    }
  }
  // Tr(w_i * y) = t_i with y = sum_j c_j z^j, w_i = h_i(a*).
  const auto w = scheme.check_values(scheme.alpha_star());
  Matrix a(ell, std::vector<FElem>(ell));
  for (std::size_t i = 0; i < ell; ++i)
    for (std::size_t j = 0; j < ell; ++j) a[i][j] = F.trace_to_base(F.mul(w[i], lin.basis()[j]));
  const auto y = lin.solve(a, traces);
  if (!y) throw Error(Errc::rank_deficient, "check values at the failed node are F_q-dependent");
  return lin.from_coords(*y);
}

/// sum over all a in F of g(a) * a^j.
inline FElem inner_product_with_monomial(const Field& F, const Poly& g, unsigned j) {
  FElem acc = F.zero();
  for (std::uint32_t v = 0; v < F.order(); ++v) {
    const FElem a(v);
    acc = F.add(acc, F.mul(poly_eval(F, g, a), F.pow(a, j)));
  }
  return acc;
}

/// g is a check polynomial of RS(q^l, k): deg g <= q^l - k - 1 and g is
/// orthogonal to every monomial x^j, j < k, over all evaluation points.
inline bool check_polynomial_validity(const Field& F, unsigned k, const Poly& g) {
  if (poly_degree(g) > static_cast<long>(F.order()) - static_cast<long>(k) - 1) return false;
  for (unsigned j = 0; j < k; ++j)
    if (inner_product_with_monomial(F, g, j).value != 0) return false;
  return true;
}

}  // namespace crg
