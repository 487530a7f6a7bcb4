#pragma once

// F_q-subspaces of F_{q^l}.
//
// A subspace keeps its full sorted member list (0 included) and a canonical
// basis: the greedy-minimum basis, where each generator is the smallest
// member (by integer encoding) outside the span of the previous ones. The
// basis is a function of the member set alone, so equal subspaces have equal
// bases and ordering subspaces by basis is well defined.

#include <algorithm>
#include <functional>
#include <numeric>
#include <span>
#include <vector>

#include "crg/field.hpp"
#include "crg/poly.hpp"

namespace crg {

class Subspace {
 public:
  /// Smallest F_q-subspace containing `generators`.
  static Subspace span(FieldPtr field, std::span<const FElem> generators) {
    const Field& F = *field;
    for (FElem g : generators)
      if (!F.contains(g)) throw Error(Errc::invalid_argument, "generator outside the field");
    std::vector<char> mark(F.order(), 0);
    std::vector<FElem> members{F.zero()};
    mark[0] = 1;
    const auto scalars = nonzero_scalars(F);
    for (FElem g : generators) extend(F, scalars, g, members, mark);
    std::sort(members.begin(), members.end());
    auto basis = greedy_basis(F, scalars, members);
    return Subspace(std::move(field), std::move(members), std::move(basis));
  }

  static Subspace span(FieldPtr field, std::initializer_list<FElem> generators) {
    return span(std::move(field), std::span<const FElem>(generators.begin(), generators.size()));
  }

  const Field& field() const { return *F_; }
  const FieldPtr& field_ptr() const { return F_; }

  unsigned dim() const { return static_cast<unsigned>(basis_.size()); }
  std::size_t size() const { return members_.size(); }
  const std::vector<FElem>& basis() const { return basis_; }
  /// Sorted ascending; members()[0] is zero.
  const std::vector<FElem>& members() const { return members_; }
  std::span<const FElem> nonzero_members() const { return std::span<const FElem>(members_).subspan(1); }

  bool contains(FElem x) const { return std::binary_search(members_.begin(), members_.end(), x); }

  /// b * S.
  Subspace scaled(FElem b) const {
    if (b.value == 0) throw Error(Errc::invalid_argument, "scaling by zero");
    std::vector<FElem> gens;
    gens.reserve(basis_.size());
    for (FElem v : basis_) gens.push_back(F_->mul(b, v));
    return span(F_, gens);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.F_ == b.F_ && a.members_ == b.members_;
  }

  /// Lexicographic order by canonical basis.
  friend bool operator<(const Subspace& a, const Subspace& b) { return a.basis_ < b.basis_; }

 private:
  template <class Fn>
  friend void for_each_subspace(const FieldPtr& field, unsigned delta, Fn&& fn);

  Subspace(FieldPtr field, std::vector<FElem> members, std::vector<FElem> basis)
      : F_(std::move(field)), members_(std::move(members)), basis_(std::move(basis)) {}

  static std::vector<FElem> nonzero_scalars(const Field& F) {
    auto s = F.base_elements();
    s.erase(s.begin());
    return s;
  }

  static void extend(const Field& F, const std::vector<FElem>& scalars, FElem g, std::vector<FElem>& members,
                     std::vector<char>& mark) {
    if (mark[g.value]) return;
    const std::size_t cur = members.size();
    for (FElem c : scalars) {
      const FElem cg = F.mul(c, g);
      for (std::size_t i = 0; i < cur; ++i) {
        const FElem y = F.add(members[i], cg);
        mark[y.value] = 1;
        members.push_back(y);
      }
    }
  }

  static std::vector<FElem> greedy_basis(const Field& F, const std::vector<FElem>& scalars,
                                         const std::vector<FElem>& sorted_members) {
    std::vector<char> mark(F.order(), 0);
    std::vector<FElem> span_members{F.zero()};
    mark[0] = 1;
    std::vector<FElem> basis;
    for (FElem m : sorted_members) {
      if (mark[m.value]) continue;
      basis.push_back(m);
      extend(F, scalars, m, span_members, mark);
    }
    return basis;
  }

  FieldPtr F_;
  std::vector<FElem> members_;
  std::vector<FElem> basis_;
};

/// Calls fn(const Subspace&) once for every delta-dimensional F_q-subspace,
/// in lexicographic order of canonical basis.
template <class Fn>
void for_each_subspace(const FieldPtr& field, unsigned delta, Fn&& fn) {
  const Field& F = *field;
  if (delta > F.ell()) throw Error(Errc::invalid_argument, "delta exceeds ell");
  const auto scalars = Subspace::nonzero_scalars(F);
  std::vector<char> mark(F.order(), 0);
  std::vector<FElem> members{F.zero()};
  mark[0] = 1;
  std::vector<FElem> basis;

  // A prefix x_1 < ... < x_j is the start of a canonical basis exactly when
  // each x_i is the minimum of span(x_1..x_i) \ span(x_1..x_{i-1}).
  std::function<void()> dfs = [&]() {
    if (basis.size() == delta) {
      std::vector<FElem> sorted = members;
      std::sort(sorted.begin(), sorted.end());
      fn(Subspace(field, std::move(sorted), basis));
      return;
    }
    const std::uint32_t start = basis.empty() ? 1 : basis.back().value + 1;
    const std::size_t cur = members.size();
    for (std::uint32_t v = start; v < F.order(); ++v) {
      if (mark[v]) continue;
      const FElem x(v);
      bool minimal = true;
      for (FElem c : scalars) {
        const FElem cx = F.mul(c, x);
        for (std::size_t i = 0; i < cur && minimal; ++i)
          if (F.add(members[i], cx) < x) minimal = false;
        if (!minimal) break;
      }
      if (!minimal) continue;
      for (FElem c : scalars) {
        const FElem cx = F.mul(c, x);
        for (std::size_t i = 0; i < cur; ++i) {
          const FElem y = F.add(members[i], cx);
          mark[y.value] = 1;
          members.push_back(y);
        }
      }
      basis.push_back(x);
      dfs();
      basis.pop_back();
      for (std::size_t i = cur; i < members.size(); ++i) mark[members[i].value] = 0;
      members.resize(cur);
    }
  };
  dfs();
}

inline std::vector<Subspace> enumerate_subspaces(const FieldPtr& field, unsigned delta) {
  std::vector<Subspace> out;
  for_each_subspace(field, delta, [&](const Subspace& s) { out.push_back(s); });
  return out;
}

struct BaseField {
  unsigned m = 1;  // S is an F_{q^m}-subspace, m maximal
};

/// Largest m with S closed under multiplication by F_{q^m}. Candidates are the
/// divisors of gcd(l, dim S), tested from the largest down; F_{q^m} = F_q[gamma]
/// for a primitive gamma, so closure of the basis under gamma suffices.
inline BaseField base_field(const Subspace& S) {
  const Field& F = S.field();
  if (S.dim() == 0) throw Error(Errc::invalid_argument, "base field of the zero subspace");
  auto divs = detail::divisors(std::gcd(F.ell(), S.dim()));
  std::reverse(divs.begin(), divs.end());
  for (unsigned m : divs) {
    const FElem gamma = F.subfield_generator(F.s() * m);
    const bool closed =
        std::all_of(S.basis().begin(), S.basis().end(), [&](FElem b) { return S.contains(F.mul(gamma, b)); });
    if (closed) return BaseField{m};
  }
  return BaseField{1};
}

/// L_S(x) = prod_{a in S} (x - a); monic of degree |S|.
inline Poly subspace_polynomial(const Subspace& S) { return poly_from_roots(S.field(), S.members()); }

}  // namespace crg
