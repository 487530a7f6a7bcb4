#pragma once

// Design bundles (seeds + seed schemes + exact tolerance + bounds), failure
// simulation, bandwidth accounting, and the GF(16) worked-example check.
//
// A bundle stores only the seeds and their schemes. The helper groups for a
// failed symbol a* are regenerated on demand as C(a*, {S_t*}).

#include <cmath>
#include <sstream>

#include "crg/hitting.hpp"
#include "crg/repair.hpp"

namespace crg {

inline constexpr const char* tool_version = "0.1.0";

struct DesignConfig {
  std::uint32_t p = 2;
  unsigned s = 1;
  unsigned ell = 4;
  std::optional<std::vector<std::uint32_t>> modulus;
  unsigned k = 2;
  unsigned delta = 2;
  bool multi_seed = false;
  std::vector<std::uint32_t> seed_basis;     // explicit seed generators, integer-encoded
  std::string strategy = "subfield-coset";   // subfield-coset | lex-first | best-orbit
  std::uint64_t search_budget = 2000;
  std::uint64_t rng_seed = 1;
  std::uint64_t node_budget = default_node_budget;
};

struct SeedEntry {
  Subspace subspace;
  unsigned base_m = 1;
  std::uint64_t coset_count = 0;
  SeedSchemePtr scheme;
};

struct DesignBundle {
  DesignConfig config;
  FieldPtr field;
  bool multi_seed = false;
  unsigned k = 0;
  unsigned delta = 0;
  std::vector<SeedEntry> seeds;
  std::size_t family_size = 0;
  HittingResult<FElem> mhs;
  long tolerance = 0;
  BoundsReport bounds;
  std::optional<OrbitReport> orbits;
  std::string selection_policy = "first-intact";
  std::string tool_version = crg::tool_version;
  std::string config_hash;

  std::uint64_t n() const { return field->order(); }

  std::vector<Subspace> seed_subspaces() const {
    std::vector<Subspace> out;
    for (const auto& s : seeds) out.push_back(s.subspace);
    return out;
  }

  /// Helper groups for the symbol at a*.
  CosetFamily groups_for(FElem alpha_star) const { return coset_family(seed_subspaces(), alpha_star); }

  /// The repair scheme behind group `index` of `groups_for(a*)`.
  RepairScheme scheme_for(const CosetFamily& groups, std::size_t index) const {
    return RepairScheme(seeds.at(groups.seed_of.at(index)).scheme, *groups.center, groups.multiplier.at(index));
  }
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string config_fingerprint(const DesignConfig& c) {
  std::ostringstream os;
  os << "p=" << c.p << ";s=" << c.s << ";ell=" << c.ell << ";modulus=";
  if (c.modulus)
    for (auto m : *c.modulus) os << m << ',';
  os << ";k=" << c.k << ";delta=" << c.delta << ";multi=" << c.multi_seed << ";basis=";
  for (auto b : c.seed_basis) os << b << ',';
  os << ";strategy=" << c.strategy << ";search=" << c.search_budget << ";rng=" << c.rng_seed
     << ";nodes=" << c.node_budget;
  std::ostringstream hex;
  hex << std::hex << fnv1a(os.str());
  return hex.str();
}

inline Subspace lex_first_subspace(const FieldPtr& F, unsigned delta) {
  std::vector<FElem> basis;
  for (std::uint32_t v = 1; v < F->order() && basis.size() < delta; ++v) {
    if (!basis.empty() && Subspace::span(F, basis).contains(FElem(v))) continue;
    basis.push_back(FElem(v));
  }
  return Subspace::span(F, basis);
}

inline SeedEntry make_seed(const Subspace& S, const DesignConfig& c, std::uint64_t index) {
  SeedEntry e{S, base_field(S).m, coset_count(S), nullptr};
  CounterRng split(c.rng_seed, index);
  e.scheme = std::make_shared<const SeedScheme>(search_seed_scheme(S, c.k, c.search_budget, split()));
  return e;
}

inline void check_dimension(const Field& F, unsigned delta, unsigned k) {
  if (delta == 0 || delta > F.ell()) throw Error(Errc::invalid_argument, "need 1 <= delta <= ell");
  const auto size = detail::bounded_pow(F.q(), delta, Field::max_order);
  if (k == 0 || *size <= k) throw Error(Errc::dimension_too_small, "q^delta must exceed k");
}

inline void finish(DesignBundle& b) {
  const CosetFamily fam = coset_family(b.seed_subspaces());
  b.family_size = fam.size();
  b.mhs = min_hitting_set(fam, b.config.node_budget);
  b.tolerance = b.mhs.tolerance();
  if (b.mhs.size < b.bounds.lower) throw Error(Errc::assertion_failure, "hitting-set size below the lower bound");
  if (b.mhs.method == SolveMethod::exact) {
    if (b.mhs.size > b.bounds.upper) throw Error(Errc::assertion_failure, "hitting-set size above the upper bound");
    if (b.bounds.exact && b.mhs.size != *b.bounds.exact)
      throw Error(Errc::assertion_failure, "hitting-set size differs from the special-case value");
    if (b.multi_seed && b.mhs.size != b.bounds.upper)
      throw Error(Errc::assertion_failure, "multi-seed hitting-set size below the upper bound");
  }
  b.config_hash = config_fingerprint(b.config);
}

}  // namespace detail

/// Single-seed design from an explicit basis or a selection strategy.
inline DesignBundle design_single_seed(const DesignConfig& config) {
  DesignBundle b;
  b.config = config;
  b.config.multi_seed = false;
  b.field = Field::make(config.p, config.s, config.ell, config.modulus);
  const FieldPtr& F = b.field;

  std::optional<Subspace> seed;
  if (!config.seed_basis.empty()) {
    std::vector<FElem> gens;
    for (auto v : config.seed_basis) gens.push_back(FElem(v));
    seed = Subspace::span(F, gens);
    b.config.delta = seed->dim();
  } else if (config.strategy == "subfield-coset") {
    if (config.delta == 0 || F->ell() % config.delta != 0)
      throw Error(Errc::invalid_argument, "subfield-coset strategy needs delta | ell");
    seed = Subspace::span(F, F->subfield(F->s() * config.delta));
  } else if (config.strategy == "lex-first") {
    detail::check_dimension(*F, config.delta, config.k);
    seed = detail::lex_first_subspace(F, config.delta);
  } else if (config.strategy == "best-orbit") {
    detail::check_dimension(*F, config.delta, config.k);
    std::size_t best = 0;
    for (const auto& rep : orbit_decomposition(F, config.delta).representatives) {
      const auto r = min_hitting_set(coset_family(rep), config.node_budget);
      if (!seed || r.size > best) {
        best = r.size;
        seed = rep;
      }
    }
  } else {
    throw Error(Errc::invalid_argument, "unknown strategy '" + config.strategy + "'");
  }
  b.delta = seed->dim();
  b.k = config.k;
  detail::check_dimension(*F, b.delta, b.k);
  b.seeds.push_back(detail::make_seed(*seed, b.config, 0));
  b.bounds = bounds(*seed);
  detail::finish(b);
  return b;
}

/// One seed per orbit of delta-dimensional subspaces; the union family is
/// every delta-dimensional subspace minus zero.
inline DesignBundle design_multi_seed(const DesignConfig& config) {
  DesignBundle b;
  b.config = config;
  b.config.multi_seed = true;
  b.config.seed_basis.clear();
  b.field = Field::make(config.p, config.s, config.ell, config.modulus);
  b.multi_seed = true;
  b.k = config.k;
  b.delta = config.delta;
  detail::check_dimension(*b.field, b.delta, b.k);

  OrbitReport brute = orbit_decomposition(b.field, b.delta);
  const BigInt formula = orbit_count_formula(b.field->q(), b.field->ell(), b.delta);
  if (formula != brute.orbit_count)
    throw Error(Errc::non_integer_result, "orbit count formula disagrees with enumeration");
  for (std::size_t t = 0; t < brute.representatives.size(); ++t)
    b.seeds.push_back(detail::make_seed(brute.representatives[t], b.config, t));
  b.bounds = bounds(b.field->q(), b.field->ell(), b.delta);
  b.orbits = std::move(brute);
  detail::finish(b);
  return b;
}

inline DesignBundle design(const DesignConfig& config) {
  return config.multi_seed ? design_multi_seed(config) : design_single_seed(config);
}

/// Bandwidth accounting for repairing e lost symbols of RS(n, k) over F_{q^l}:
/// centralized k*l + (e-1)*l versus decentralized e*k*l*(1-saving).
struct BandwidthTable {
  std::uint64_t n = 0, k = 0, ell = 0, e = 0;
  double saving = 0;
  std::uint64_t centralized = 0;
  std::uint64_t decentralized_naive = 0;
  double decentralized_with_saving = 0;
  std::optional<double> decentralized_measured;
};

/// `measured` holds per-repair bandwidths: either one value used for all e
/// repairs or exactly e values.
inline BandwidthTable bandwidth_comparison(std::uint64_t n, std::uint64_t k, std::uint64_t ell, std::uint64_t e,
                                           const std::vector<double>& measured, double saving) {
  if (e < 1) throw Error(Errc::invalid_argument, "need at least one failure");
  if (!(saving >= 0.0 && saving < 1.0)) throw Error(Errc::invalid_argument, "saving must lie in [0, 1)");
  BandwidthTable t;
  t.n = n;
  t.k = k;
  t.ell = ell;
  t.e = e;
  t.saving = saving;
  t.centralized = k * ell + (e - 1) * ell;
  t.decentralized_naive = e * k * ell;
  t.decentralized_with_saving = static_cast<double>(e * k * ell) * (1.0 - saving);
  if (measured.size() == 1) {
    t.decentralized_measured = static_cast<double>(e) * measured[0];
  } else if (measured.size() == e) {
    double sum = 0;
    for (double m : measured) sum += m;
    t.decentralized_measured = sum;
  } else if (!measured.empty()) {
    throw Error(Errc::invalid_argument, "need one measured bandwidth or one per failure");
  }
  return t;
}

enum class SimMode { automatic, exhaustive, monte_carlo };

inline const char* sim_mode_name(SimMode m) {
  switch (m) {
    case SimMode::exhaustive: return "exhaustive";
    case SimMode::monte_carlo: return "monte-carlo";
    default: return "auto";
  }
}

struct SimConfig {
  FElem alpha_star;
  std::size_t failures = 0;
  SimMode mode = SimMode::automatic;
  std::uint64_t trials = 100000;
  std::uint64_t rng_seed = 1;
  std::uint64_t threshold = 10'000'000;  // exhaustive when C(n-1, e) is at most this
  double saving = 0.0;
};

struct SimReport {
  FElem alpha_star;
  std::size_t failures = 0;
  SimMode mode = SimMode::exhaustive;
  std::uint64_t patterns = 0;
  std::uint64_t survived_patterns = 0;
  double survived = 0;
  std::optional<std::vector<FElem>> killing_pattern;
  std::size_t groups = 0;
  double mean_repair_bandwidth = 0;
  std::string policy = "first-intact";
  BandwidthTable bandwidth;
};

/// Injects `failures` helper failures (never a* itself) and checks whether
/// some group for a* stays intact; the first intact group in family order is
/// the one used for repair.
inline SimReport simulate_failures(const DesignBundle& bundle, const SimConfig& cfg) {
  const Field& F = *bundle.field;
  if (!F.contains(cfg.alpha_star)) throw Error(Errc::invalid_argument, "alpha* outside the field");
  const std::size_t e = cfg.failures;
  if (e >= F.order()) throw Error(Errc::invalid_argument, "failures must be below n");

  const CosetFamily groups = bundle.groups_for(cfg.alpha_star);
  std::vector<std::vector<std::uint32_t>> elem_groups(F.order());
  for (std::uint32_t g = 0; g < groups.size(); ++g)
    for (FElem x : groups.sets[g]) elem_groups[x.value].push_back(g);
  std::vector<double> group_bw;
  for (std::size_t g = 0; g < groups.size(); ++g)
    group_bw.push_back(static_cast<double>(bundle.seeds[groups.seed_of[g]].scheme->bandwidth()));
  const std::vector<FElem> universe = groups.universe();

  SimReport r;
  r.alpha_star = cfg.alpha_star;
  r.failures = e;
  r.groups = groups.size();
  r.policy = bundle.selection_policy;

  const BigInt total = binomial(universe.size(), e);
  SimMode mode = cfg.mode;
  if (mode == SimMode::automatic) mode = total <= cfg.threshold ? SimMode::exhaustive : SimMode::monte_carlo;
  if (mode == SimMode::exhaustive && total > cfg.threshold)
    throw Error(Errc::budget_exceeded, "too many failure patterns for exhaustive simulation");
  r.mode = mode;

  std::vector<std::uint32_t> hit(groups.size(), 0);
  std::size_t alive = groups.size();
  std::vector<FElem> pattern;
  double bw_sum = 0;

  auto apply = [&](FElem x, int dir) {
    for (auto g : elem_groups[x.value]) {
      if (dir > 0) {
        if (hit[g]++ == 0) --alive;
      } else if (--hit[g] == 0) {
        ++alive;
      }
    }
  };
  auto record = [&]() {
    ++r.patterns;
    if (alive > 0) {
      ++r.survived_patterns;
      std::size_t g = 0;
      while (hit[g] != 0) ++g;
      bw_sum += group_bw[g];
    } else if (!r.killing_pattern) {
      auto k = pattern;
      std::sort(k.begin(), k.end());
      r.killing_pattern = k;
    }
  };

  if (mode == SimMode::exhaustive) {
    auto dfs = [&](auto&& self, std::size_t from) -> void {
      if (pattern.size() == e) {
        record();
        return;
      }
      for (std::size_t i = from; i + (e - pattern.size()) <= universe.size(); ++i) {
        pattern.push_back(universe[i]);
        apply(universe[i], +1);
        self(self, i + 1);
        apply(universe[i], -1);
        pattern.pop_back();
      }
    };
    dfs(dfs, 0);
  } else {
    const CounterRng base(cfg.rng_seed);
    const std::uint64_t u = universe.size();
    std::vector<std::uint64_t> picks;
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
      CounterRng rng = base.split(t);
      // Floyd's sampling of e distinct indices.
      picks.clear();
      for (std::uint64_t j = u - e; j < u; ++j) {
        const std::uint64_t v = rng.below(j + 1);
        picks.push_back(std::find(picks.begin(), picks.end(), v) == picks.end() ? v : j);
      }
      pattern.clear();
      for (auto i : picks) {
        pattern.push_back(universe[i]);
        apply(universe[i], +1);
      }
      record();
      for (FElem x : pattern) apply(x, -1);
    }
  }
  r.survived = r.patterns ? static_cast<double>(r.survived_patterns) / static_cast<double>(r.patterns) : 0.0;
  r.mean_repair_bandwidth = r.survived_patterns ? bw_sum / static_cast<double>(r.survived_patterns) : 0.0;
  r.bandwidth = bandwidth_comparison(F.order(), bundle.k, F.ell(), e + 1,
                                     r.survived_patterns ? std::vector<double>{r.mean_repair_bandwidth}
                                                         : std::vector<double>{},
                                     cfg.saving);
  return r;
}

struct ExampleCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool passed = false;
};

struct ExampleReport {
  std::string modulus;
  std::vector<ExampleCheck> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }

  const ExampleCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.passed) return &c;
    return nullptr;
  }
};

namespace detail {

/// Renders a set as z-powers, e.g. "{0,1,z^2}".
inline std::string zset(const Field& F, std::vector<FElem> xs) {
  std::sort(xs.begin(), xs.end(), [&](FElem a, FElem b) {
    if (a.value == 0 || b.value == 0) return a.value == 0 && b.value != 0;
    return F.log(a) < F.log(b);
  });
  std::string out = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    if (xs[i].value == 0) {
      out += "0";
    } else {
      const auto l = F.log(xs[i]);
      out += l == 0 ? "1" : l == 1 ? "z" : "z^" + std::to_string(l);
    }
  }
  return out + "}";
}

inline std::string family_string(const Field& F, std::vector<std::vector<FElem>> sets) {
  for (auto& s : sets) std::sort(s.begin(), s.end());
  std::sort(sets.begin(), sets.end());
  std::string out;
  for (const auto& s : sets) out += zset(F, s);
  return out;
}

}  // namespace detail

/// RS(16, 2) over GF(2^4): the two seeds {0,z^2,z^7,z^12} and {0,z^4,z^5,z^8}
/// with failed symbol z^5. Eight fixed checks.
inline ExampleReport verify_reference_example(std::optional<std::vector<std::uint32_t>> modulus = std::nullopt) {
  const FieldPtr F = Field::make(2, 1, 4, modulus);
  const Field& f = *F;
  ExampleReport rep;
  rep.modulus = f.modulus_string();
  auto add = [&](std::string name, const std::string& expected, const std::string& actual) {
    rep.checks.push_back({std::move(name), expected, actual, expected == actual});
  };
  auto z = [&](int e) { return e < 0 ? f.zero() : f.z_pow(static_cast<std::uint64_t>(e)); };
  const FElem center = z(5);

  const Subspace s1 = Subspace::span(F, {z(2), z(7)});
  const CosetFamily c1 = coset_family(s1, center);
  const std::vector<std::vector<FElem>> printed{
      {z(1), z(13), z(14)}, {z(11), z(4), z(7)}, {z(8), z(6), z(12)}, {z(10), z(-1), z(0)}, {z(2), z(9), z(3)}};
  add("C(z^5, S1*) helper sets", detail::family_string(f, printed), detail::family_string(f, c1.sets));
  add("|C(z^5, S1*)|", "5", std::to_string(c1.size()));
  add("|MHS(C(S1*))|", "5", std::to_string(min_hitting_set(coset_family(s1)).size));
  add("tolerance of C(z^5, S1*)", "4", std::to_string(tolerance(c1)));

  const std::vector<FElem> literal{z(-1), z(4), z(5), z(8)};
  const Subspace s2 = Subspace::span(F, {z(4), z(5)});
  add("{0,z^4,z^5,z^8} is an F_2-subspace", detail::zset(f, literal), detail::zset(f, s2.members()));
  const CosetFamily c2 = coset_family(s2, center);
  add("|C(z^5, S2*)|", "15", std::to_string(c2.size()));
  add("|MHS(C(S2*))|", "6", std::to_string(min_hitting_set(coset_family(s2)).size));
  add("tolerance of C(z^5, S2*)", "5", std::to_string(tolerance(c2)));
  return rep;
}

}  // namespace crg
