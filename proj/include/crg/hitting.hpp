#pragma once

// Minimum hitting sets of set families, failure tolerance of coset families,
// and the closed-form bounds on |MHS(C(S*))|.

#include <algorithm>
#include <numeric>
#include <optional>
#include <vector>

#include "crg/cosets.hpp"

namespace crg {

enum class SolveMethod { exact, greedy_upper_only };

inline const char* method_name(SolveMethod m) {
  return m == SolveMethod::exact ? "exact" : "greedy-upper-only";
}

template <class T>
struct HittingResult {
  std::size_t size = 0;
  std::vector<T> witness;
  SolveMethod method = SolveMethod::exact;
  std::uint64_t nodes = 0;

  long tolerance() const { return static_cast<long>(size) - 1; }
};

inline constexpr std::uint64_t default_node_budget = 10'000'000;
inline constexpr std::uint64_t default_pattern_budget = 10'000'000;

namespace detail {

/// Branch and bound over dense element ids 0..n-1.
///
/// Incumbent from greedy max-coverage. At each node the bound is the larger of
/// a maximal pairwise-disjoint packing of unhit sets and the fewest
/// highest-degree elements whose degrees can cover every unhit set. Branching
/// takes the first unhit set with the fewest selectable elements and tries its
/// elements in ascending id; each tried element is excluded from later siblings.
class HittingSolver {
 public:
  HittingSolver(std::vector<std::vector<std::uint32_t>> sets, std::uint32_t n, std::uint64_t budget)
      : sets_(std::move(sets)), n_(n), budget_(budget), elem_sets_(n), hit_(sets_.size(), 0),
        avail_(sets_.size(), 0), forbidden_(n, 0), used_(n, 0), degree_(n, 0) {
    for (std::uint32_t s = 0; s < sets_.size(); ++s) {
      for (auto e : sets_[s]) elem_sets_[e].push_back(s);
      avail_[s] = static_cast<std::uint32_t>(sets_[s].size());
    }
    unhit_ = sets_.size();
  }

  /// `forced`: an element known to lie in some minimum hitting set.
  void run(std::optional<std::uint32_t> forced = std::nullopt) {
    best_ = greedy();
    if (forced) {
      ++nodes_;
      choose(*forced);
      search();
      unchoose(*forced);
    } else {
      search();
    }
  }

  const std::vector<std::uint32_t>& best() const { return best_; }
  bool exact() const { return !aborted_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::vector<std::uint32_t> greedy() const {
    std::vector<std::uint32_t> hit(sets_.size(), 0), deg(n_, 0), pick;
    std::size_t unhit = sets_.size();
    for (std::uint32_t e = 0; e < n_; ++e) deg[e] = static_cast<std::uint32_t>(elem_sets_[e].size());
    while (unhit > 0) {
      const auto e = static_cast<std::uint32_t>(std::max_element(deg.begin(), deg.end()) - deg.begin());
      pick.push_back(e);
      for (auto s : elem_sets_[e]) {
        if (hit[s]++ != 0) continue;
        --unhit;
        for (auto f : sets_[s]) --deg[f];
      }
    }
    return pick;
  }

  void choose(std::uint32_t e) {
    chosen_.push_back(e);
    for (auto s : elem_sets_[e])
      if (hit_[s]++ == 0) --unhit_;
  }

  void unchoose(std::uint32_t e) {
    chosen_.pop_back();
    for (auto s : elem_sets_[e])
      if (--hit_[s] == 0) ++unhit_;
  }

  void forbid(std::uint32_t e) {
    forbidden_[e] = 1;
    for (auto s : elem_sets_[e]) --avail_[s];
  }

  void allow(std::uint32_t e) {
    forbidden_[e] = 0;
    for (auto s : elem_sets_[e]) ++avail_[s];
  }

  std::size_t lower_bound() {
    // Disjoint packing, smallest sets first.
    order_.clear();
    for (std::uint32_t s = 0; s < sets_.size(); ++s)
      if (hit_[s] == 0) order_.push_back(s);
    std::stable_sort(order_.begin(), order_.end(), [&](auto a, auto b) { return avail_[a] < avail_[b]; });
    std::size_t packing = 0;
    for (auto s : order_) {
      bool free = true;
      for (auto e : sets_[s])
        if (!forbidden_[e] && used_[e]) {
          free = false;
          break;
        }
      if (!free) continue;
      ++packing;
      for (auto e : sets_[s])
        if (!forbidden_[e]) used_[e] = 1;
    }
    for (auto s : order_)
      for (auto e : sets_[s]) used_[e] = 0;

    // Degree cover bound.
    degs_.clear();
    for (auto s : order_)
      for (auto e : sets_[s])
        if (!forbidden_[e]) ++degree_[e];
    for (auto s : order_)
      for (auto e : sets_[s])
        if (degree_[e] != 0) {
          degs_.push_back(degree_[e]);
          degree_[e] = 0;
        }
    std::sort(degs_.begin(), degs_.end(), std::greater<>());
    std::size_t covered = 0, count = 0;
    while (covered < unhit_ && count < degs_.size()) covered += degs_[count++];
    return std::max(packing, count);
  }

  void search() {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (unhit_ == 0) {
      if (chosen_.size() < best_.size()) best_ = chosen_;
      return;
    }
    if (chosen_.size() + 1 >= best_.size()) return;

    std::uint32_t branch = 0;
    std::uint32_t fewest = UINT32_MAX;
    for (std::uint32_t s = 0; s < sets_.size(); ++s)
      if (hit_[s] == 0 && avail_[s] < fewest) {
        fewest = avail_[s];
        branch = s;
      }
    if (fewest == 0) return;
    if (chosen_.size() + lower_bound() >= best_.size()) return;

    std::vector<std::uint32_t> tried;
    for (auto e : sets_[branch]) {
      if (forbidden_[e]) continue;
      choose(e);
      search();
      unchoose(e);
      forbid(e);
      tried.push_back(e);
      if (aborted_ || chosen_.size() + 1 >= best_.size()) break;
    }
    for (auto e : tried) allow(e);
  }

  std::vector<std::vector<std::uint32_t>> sets_;
  std::uint32_t n_;
  std::uint64_t budget_;
  std::vector<std::vector<std::uint32_t>> elem_sets_;
  std::vector<std::uint32_t> hit_;
  std::vector<std::uint32_t> avail_;
  std::vector<char> forbidden_;
  std::vector<char> used_;
  std::vector<std::uint32_t> degree_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> degs_;
  std::vector<std::uint32_t> chosen_;
  std::vector<std::uint32_t> best_;
  std::size_t unhit_ = 0;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

template <class T>
struct DenseFamily {
  std::vector<T> values;  // id -> value, ascending
  std::vector<std::vector<std::uint32_t>> sets;

  DenseFamily(const std::vector<std::vector<T>>& family, const std::vector<T>& extra = {}) {
    for (const auto& s : family) values.insert(values.end(), s.begin(), s.end());
    values.insert(values.end(), extra.begin(), extra.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (const auto& s : family) {
      std::vector<std::uint32_t> ids;
      for (const T& x : s) ids.push_back(id(x));
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      sets.push_back(std::move(ids));
    }
  }

  std::uint32_t id(const T& x) const {
    return static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), x) - values.begin());
  }
};

}  // namespace detail

/// Exact minimum hitting set; falls back to the best incumbent, flagged
/// greedy-upper-only, once `budget` search nodes are spent.
///
/// `forced`, when given, must belong to some minimum hitting set (for example
/// any element of a family whose symmetry group is transitive on elements).
template <class T>
HittingResult<T> min_hitting_set(const std::vector<std::vector<T>>& family,
                                 std::uint64_t budget = default_node_budget,
                                 std::optional<T> forced = std::nullopt) {
  if (family.empty()) throw Error(Errc::empty_family, "no sets to hit");
  for (const auto& s : family)
    if (s.empty()) throw Error(Errc::invalid_argument, "family contains an empty set");
  detail::DenseFamily<T> dense(family);
  detail::HittingSolver solver(dense.sets, static_cast<std::uint32_t>(dense.values.size()), budget);
  std::optional<std::uint32_t> forced_id;
  if (forced && std::binary_search(dense.values.begin(), dense.values.end(), *forced)) forced_id = dense.id(*forced);
  solver.run(forced_id);
  HittingResult<T> r;
  r.size = solver.best().size();
  for (auto e : solver.best()) r.witness.push_back(dense.values[e]);
  std::sort(r.witness.begin(), r.witness.end());
  r.method = solver.exact() ? SolveMethod::exact : SolveMethod::greedy_upper_only;
  r.nodes = solver.nodes();
  return r;
}

// A coset family is invariant under x -> a + b(x - a) for every b != 0, a
// group acting transitively on its universe, so a minimum hitting set can be
// assumed to contain a + 1.
inline HittingResult<FElem> min_hitting_set(const CosetFamily& family, std::uint64_t budget = default_node_budget) {
  const Field& F = *family.field;
  return min_hitting_set(family.sets, budget, std::optional<FElem>(F.add(family.center.value_or(F.zero()), F.one())));
}

/// |MHS| - 1; requires the exact optimum.
inline long tolerance(const CosetFamily& family, std::uint64_t budget = default_node_budget) {
  const auto r = min_hitting_set(family, budget);
  if (r.method != SolveMethod::exact)
    throw Error(Errc::budget_exceeded, "hitting-set search exceeded its node budget");
  return r.tolerance();
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

/// Some e-subset of `universe` meeting every set, or nullopt if every e-subset
/// leaves a set untouched. Throws BudgetExceeded when C(|universe|, e) > budget.
template <class T>
std::optional<std::vector<T>> find_killing_pattern(const std::vector<std::vector<T>>& family,
                                                   const std::vector<T>& universe, std::size_t e,
                                                   std::uint64_t budget = default_pattern_budget) {
  if (e > universe.size()) throw Error(Errc::invalid_argument, "more failures than universe elements");
  if (binomial(universe.size(), e) > budget)
    throw Error(Errc::budget_exceeded, "C(" + std::to_string(universe.size()) + ", " + std::to_string(e) +
                                           ") patterns exceed the enumeration budget");
  detail::DenseFamily<T> dense(family, universe);
  std::vector<std::uint32_t> cand;
  for (const T& x : universe) cand.push_back(dense.id(x));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  if (e > cand.size()) throw Error(Errc::invalid_argument, "more failures than universe elements");

  std::vector<std::vector<std::uint32_t>> elem_sets(dense.values.size());
  for (std::uint32_t s = 0; s < dense.sets.size(); ++s)
    for (auto x : dense.sets[s]) elem_sets[x].push_back(s);
  std::vector<std::uint32_t> hit(dense.sets.size(), 0);
  std::size_t alive = dense.sets.size();
  std::vector<std::uint32_t> pattern;

  // Once every set is hit, any completion of the prefix kills too.
  auto dfs = [&](auto&& self, std::size_t from) -> bool {
    if (alive == 0) {
      for (std::size_t i = 0; pattern.size() < e; ++i)
        if (std::find(pattern.begin(), pattern.end(), cand[i]) == pattern.end()) pattern.push_back(cand[i]);
      return true;
    }
    if (pattern.size() == e) return false;
    for (std::size_t i = from; i + (e - pattern.size()) <= cand.size(); ++i) {
      const auto x = cand[i];
      pattern.push_back(x);
      for (auto s : elem_sets[x])
        if (hit[s]++ == 0) --alive;
      if (self(self, i + 1)) return true;
      for (auto s : elem_sets[x])
        if (--hit[s] == 0) ++alive;
      pattern.pop_back();
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  std::vector<T> out;
  for (auto x : pattern) out.push_back(dense.values[x]);
  std::sort(out.begin(), out.end());
  return out;
}

/// True iff every e-subset E of the family's universe misses at least one set.
inline bool verify_tolerance_exhaustive(const CosetFamily& family, std::size_t e,
                                        std::uint64_t budget = default_pattern_budget) {
  return !find_killing_pattern(family.sets, family.universe(), e, budget).has_value();
}

enum class BoundCase { generic, subfield_coset, nested_subspace };

inline const char* bound_case_name(BoundCase c) {
  switch (c) {
    case BoundCase::subfield_coset: return "subfield-coset";
    case BoundCase::nested_subspace: return "nested-subspace";
    default: return "generic";
  }
}

struct BoundsReport {
  std::uint64_t lower = 0;
  std::uint64_t upper = 0;
  std::optional<std::uint64_t> exact;
  BoundCase kind = BoundCase::generic;
};

namespace detail {
inline std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
  const auto r = bounded_pow(b, e, std::uint64_t{1} << 62);
  if (!r) throw Error(Errc::invalid_argument, "bound arithmetic overflows 64 bits");
  return *r;
}
}  // namespace detail

/// ceil((q^l - 1)/(q^d - 1)) <= |MHS(C(S*))| <= (q^(l-d+1) - 1)/(q - 1).
inline BoundsReport bounds(std::uint64_t q, unsigned ell, unsigned delta) {
  if (delta == 0 || delta > ell) throw Error(Errc::invalid_argument, "need 1 <= delta <= ell");
  if (q < 2) throw Error(Errc::invalid_argument, "q must be at least 2");
  const std::uint64_t num = detail::pow_u64(q, ell) - 1;
  const std::uint64_t den = detail::pow_u64(q, delta) - 1;
  BoundsReport r;
  r.lower = (num + den - 1) / den;
  r.upper = (detail::pow_u64(q, ell - delta + 1) - 1) / (q - 1);
  return r;
}

/// Exact |MHS(C(S*))| when S is a multiplicative coset of F_{q^delta}, or when
/// (l - delta) | gcd(l, delta) and S is an F_{q^(l-delta)}-subspace.
inline std::pair<BoundCase, std::optional<std::uint64_t>> classify_special_case(const Subspace& S) {
  const Field& F = S.field();
  const unsigned ell = F.ell(), delta = S.dim();
  const std::uint64_t q = F.q();
  const unsigned m = base_field(S).m;
  if (m == delta)
    return {BoundCase::subfield_coset, (detail::pow_u64(q, ell) - 1) / (detail::pow_u64(q, delta) - 1)};
  const unsigned d = ell - delta;
  if (d > 0 && std::gcd(ell, delta) % d == 0 && m % d == 0)
    return {BoundCase::nested_subspace, detail::pow_u64(q, d) + 1};
  return {BoundCase::generic, std::nullopt};
}

inline std::optional<std::uint64_t> exact_special_case(const Subspace& S) { return classify_special_case(S).second; }

inline BoundsReport bounds(const Subspace& S) {
  auto r = bounds(S.field().q(), S.field().ell(), S.dim());
  std::tie(r.kind, r.exact) = classify_special_case(S);
  return r;
}

}  // namespace crg
