#pragma once

// Multiplicative coset families C(a, S*) = {a + bS* : b != 0}, stabilizers,
// and the orbit structure of all delta-dimensional subspaces under b*S.

#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "crg/counting.hpp"
#include "crg/subspace.hpp"

namespace crg {

struct ElemVectorHash {
  std::size_t operator()(const std::vector<FElem>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (FElem x : v) {
      h ^= x.value;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct CosetFamily {
  FieldPtr field;
  std::optional<FElem> center;                // none: the family C(S*) itself
  std::vector<std::vector<FElem>> sets;       // each sorted ascending, pairwise distinct
  std::vector<std::size_t> seed_of;           // seed index that generated each set
  std::vector<FElem> multiplier;              // first b producing each set

  std::size_t size() const { return sets.size(); }

  /// F \ {center}, or F^* when there is no center.
  std::vector<FElem> universe() const {
    std::vector<FElem> out;
    const FElem skip = center.value_or(FElem(0));
    for (std::uint32_t v = 0; v < field->order(); ++v)
      if (FElem(v) != skip) out.push_back(FElem(v));
    return out;
  }
};

/// Distinct sets center + b*(seed \ {0}) over all seeds and all b != 0, in
/// order of seed index then b = z^0, z^1, ... Each seed must contain 0.
inline CosetFamily coset_family_from_sets(FieldPtr field, const std::vector<std::vector<FElem>>& seeds,
                                          std::optional<FElem> center = std::nullopt) {
  const Field& F = *field;
  if (center && !F.contains(*center)) throw Error(Errc::invalid_argument, "center outside the field");
  CosetFamily fam{field, center, {}, {}, {}};
  std::unordered_set<std::vector<FElem>, ElemVectorHash> seen;
  const FElem shift = center.value_or(F.zero());
  for (std::size_t t = 0; t < seeds.size(); ++t) {
    const auto& seed = seeds[t];
    if (std::find(seed.begin(), seed.end(), F.zero()) == seed.end())
      throw Error(Errc::seed_without_zero, "seed " + std::to_string(t) + " does not contain 0");
    std::vector<FElem> star;
    for (FElem x : seed) {
      if (!F.contains(x)) throw Error(Errc::invalid_argument, "seed element outside the field");
      if (x.value != 0) star.push_back(x);
    }
    std::sort(star.begin(), star.end());
    star.erase(std::unique(star.begin(), star.end()), star.end());
    for (std::uint32_t j = 0; j + 1 < F.order(); ++j) {
      const FElem b = F.z_pow(j);
      std::vector<FElem> set;
      set.reserve(star.size());
      for (FElem x : star) set.push_back(F.add(shift, F.mul(b, x)));
      std::sort(set.begin(), set.end());
      if (seen.insert(set).second) {
        fam.sets.push_back(std::move(set));
        fam.seed_of.push_back(t);
        fam.multiplier.push_back(b);
      }
    }
  }
  return fam;
}

inline CosetFamily coset_family(const std::vector<Subspace>& seeds, std::optional<FElem> center = std::nullopt) {
  if (seeds.empty()) throw Error(Errc::invalid_argument, "no seeds");
  std::vector<std::vector<FElem>> sets;
  for (const auto& s : seeds) {
    if (s.field_ptr() != seeds.front().field_ptr())
      throw Error(Errc::invalid_argument, "seeds over different fields");
    sets.push_back(s.members());
  }
  return coset_family_from_sets(seeds.front().field_ptr(), sets, center);
}

inline CosetFamily coset_family(const Subspace& seed, std::optional<FElem> center = std::nullopt) {
  return coset_family(std::vector<Subspace>{seed}, center);
}

/// |{b : bS* = S*}| = q^m - 1 for base F_{q^m}.
inline std::uint64_t stabilizer_order(const Subspace& S) {
  const auto m = base_field(S).m;
  return *detail::bounded_pow(S.field().q(), m, Field::max_order) - 1;
}

/// Same quantity by testing every b != 0.
inline std::uint64_t stabilizer_order_exhaustive(const Subspace& S) {
  const Field& F = S.field();
  std::uint64_t count = 0;
  for (std::uint32_t v = 1; v < F.order(); ++v) {
    const FElem b(v);
    if (std::all_of(S.basis().begin(), S.basis().end(), [&](FElem x) { return S.contains(F.mul(b, x)); }))
      ++count;
  }
  return count;
}

/// |C(S*)| = (q^l - 1) / |Stab(S*)|.
inline std::uint64_t coset_count(const Subspace& S) { return (S.field().order() - 1) / stabilizer_order(S); }

struct OrbitReport {
  std::uint64_t q = 0;
  unsigned ell = 0;
  unsigned delta = 0;
  std::map<unsigned, BigInt> counts_by_base;
  BigInt orbit_count = 0;
  std::vector<Subspace> representatives;  // lexicographically least per orbit; empty for the formula route
  std::vector<std::uint64_t> orbit_sizes;
};

/// Counts from the closed-form route only.
inline OrbitReport orbit_report_formula(std::uint64_t q, unsigned ell, unsigned delta) {
  OrbitReport r;
  r.q = q;
  r.ell = ell;
  r.delta = delta;
  r.counts_by_base = counts_by_base(q, ell, delta);
  r.orbit_count = orbit_count_formula(q, ell, delta);
  return r;
}

/// Brute-force partition of all delta-dimensional subspaces into orbits under
/// multiplication; base counts come from testing every subspace.
inline OrbitReport orbit_decomposition(const FieldPtr& field, unsigned delta) {
  const Field& F = *field;
  if (delta == 0 || delta > F.ell()) throw Error(Errc::invalid_argument, "need 1 <= delta <= ell");
  const auto all = enumerate_subspaces(field, delta);
  std::unordered_map<std::vector<FElem>, std::size_t, ElemVectorHash> index;
  index.reserve(all.size() * 2);
  for (std::size_t i = 0; i < all.size(); ++i) index.emplace(all[i].members(), i);

  OrbitReport r;
  r.q = F.q();
  r.ell = F.ell();
  r.delta = delta;
  for (unsigned m : detail::divisors(std::gcd(F.ell(), delta))) r.counts_by_base[m] = 0;

  std::vector<char> assigned(all.size(), 0);
  std::vector<FElem> img;
  for (std::size_t i = 0; i < all.size(); ++i) {
    r.counts_by_base[base_field(all[i]).m] += 1;
    if (assigned[i]) continue;
    std::uint64_t size = 0;
    for (std::uint32_t v = 1; v < F.order(); ++v) {
      img.clear();
      for (FElem x : all[i].members()) img.push_back(F.mul(FElem(v), x));
      std::sort(img.begin(), img.end());
      const std::size_t j = index.at(img);
      if (!assigned[j]) {
        assigned[j] = 1;
        ++size;
      }
    }
    r.representatives.push_back(all[i]);
    r.orbit_sizes.push_back(size);
  }
  r.orbit_count = r.representatives.size();
  return r;
}

}  // namespace crg
