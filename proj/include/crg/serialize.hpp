#pragma once

// JSON forms of bundles and reports. Big integers are written as numbers when
// they fit in 64 bits and as decimal strings otherwise.

#include <json.hpp>

#include "crg/design.hpp"

namespace crg {

using Json = nlohmann::json;

inline constexpr int bundle_schema = 1;

namespace detail {

inline Json big_to_json(const BigInt& v) {
  if (v >= 0 && v <= std::numeric_limits<std::uint64_t>::max()) return Json(static_cast<std::uint64_t>(v));
  return Json(v.str());
}

inline Json elems_to_json(const std::vector<FElem>& xs) {
  Json a = Json::array();
  for (FElem x : xs) a.push_back(x.value);
  return a;
}

inline std::vector<FElem> elems_from_json(const Json& j, const Field& F) {
  std::vector<FElem> out;
  for (const auto& v : j) {
    const FElem x(v.get<std::uint32_t>());
    if (!F.contains(x)) throw Error(Errc::malformed_input, "element " + std::to_string(x.value) + " outside the field");
    out.push_back(x);
  }
  return out;
}

template <class T>
T get(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(Errc::malformed_input, std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw Error(Errc::malformed_input, std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace detail

inline Json field_to_json(const Field& F) {
  return {{"p", F.p()},
          {"s", F.s()},
          {"ell", F.ell()},
          {"q", F.q()},
          {"order", F.order()},
          {"modulus", F.modulus()},
          {"modulus_string", F.modulus_string()},
          {"generator", F.generator().value}};
}

/// Field parameters plus its subfield chain and trace-to-base summary.
inline Json field_info_json(const Field& F) {
  Json j = field_to_json(F);
  Json subs = Json::array();
  for (unsigned m : detail::divisors(F.degree()))
    subs.push_back({{"degree_over_p", m}, {"order", F.subfield(m).size()}, {"generator", F.subfield_generator(m).value}});
  j["subfields"] = subs;
  std::size_t kernel = 0;
  for (FElem x : F.elements())
    if (F.trace_to_base(x) == F.zero()) ++kernel;
  j["trace_kernel_size"] = kernel;
  return j;
}

inline Json orbit_report_to_json(const OrbitReport& r) {
  Json counts = Json::object();
  for (const auto& [m, n] : r.counts_by_base) counts[std::to_string(m)] = detail::big_to_json(n);
  Json reps = Json::array();
  for (const auto& s : r.representatives) reps.push_back(detail::elems_to_json(s.basis()));
  Json j{{"q", r.q},
         {"ell", r.ell},
         {"delta", r.delta},
         {"counts_by_base", counts},
         {"orbit_count", detail::big_to_json(r.orbit_count)},
         {"representatives", reps}};
  if (!r.orbit_sizes.empty()) j["orbit_sizes"] = r.orbit_sizes;
  return j;
}

inline Json bounds_to_json(const BoundsReport& b) {
  return {{"lower", b.lower},
          {"upper", b.upper},
          {"exact", b.exact ? Json(*b.exact) : Json(nullptr)},
          {"case", bound_case_name(b.kind)}};
}

inline Json seed_scheme_to_json(const SeedScheme& s) {
  Json u = Json::array();
  for (const auto& p : s.multipliers()) u.push_back(detail::elems_to_json(p));
  return {{"basis", detail::elems_to_json(s.support().basis())}, {"k", s.k()}, {"u", u}, {"bandwidth", s.bandwidth()}};
}

inline Json repair_scheme_to_json(const RepairScheme& r, std::size_t seed_id) {
  return {{"seed_id", seed_id}, {"alpha_star", r.alpha_star().value}, {"b", r.b().value}};
}

inline Json config_to_json(const DesignConfig& c) {
  return {{"p", c.p},
          {"s", c.s},
          {"ell", c.ell},
          {"modulus", c.modulus ? Json(*c.modulus) : Json(nullptr)},
          {"k", c.k},
          {"delta", c.delta},
          {"multi_seed", c.multi_seed},
          {"seed_basis", c.seed_basis},
          {"strategy", c.strategy},
          {"search_budget", c.search_budget},
          {"rng_seed", c.rng_seed},
          {"node_budget", c.node_budget}};
}

inline DesignConfig config_from_json(const Json& j) {
  DesignConfig c;
  c.p = detail::get<std::uint32_t>(j, "p");
  c.s = detail::get<unsigned>(j, "s");
  c.ell = detail::get<unsigned>(j, "ell");
  if (j.contains("modulus") && !j["modulus"].is_null())
    c.modulus = detail::get<std::vector<std::uint32_t>>(j, "modulus");
  c.k = detail::get<unsigned>(j, "k");
  c.delta = detail::get<unsigned>(j, "delta");
  c.multi_seed = detail::get<bool>(j, "multi_seed");
  c.seed_basis = detail::get<std::vector<std::uint32_t>>(j, "seed_basis");
  c.strategy = detail::get<std::string>(j, "strategy");
  c.search_budget = detail::get<std::uint64_t>(j, "search_budget");
  c.rng_seed = detail::get<std::uint64_t>(j, "rng_seed");
  c.node_budget = detail::get<std::uint64_t>(j, "node_budget");
  return c;
}

inline Json bundle_to_json(const DesignBundle& b) {
  Json seeds = Json::array();
  for (const auto& s : b.seeds)
    seeds.push_back({{"basis", detail::elems_to_json(s.subspace.basis())},
                     {"base_m", s.base_m},
                     {"coset_count", s.coset_count},
                     {"scheme", seed_scheme_to_json(*s.scheme)}});
  Json j{{"schema", bundle_schema},
         {"field", field_to_json(*b.field)},
         {"code", {{"n", b.n()}, {"k", b.k}}},
         {"mode", b.multi_seed ? "multi-seed" : "single-seed"},
         {"delta", b.delta},
         {"seeds", seeds},
         {"family_size", b.family_size},
         {"mhs",
          {{"size", b.mhs.size},
           {"method", method_name(b.mhs.method)},
           {"nodes", b.mhs.nodes},
           {"witness", detail::elems_to_json(b.mhs.witness)}}},
         {"tolerance", b.tolerance},
         {"bounds", bounds_to_json(b.bounds)},
         {"selection_policy", b.selection_policy},
         {"provenance",
          {{"tool_version", b.tool_version}, {"config_hash", b.config_hash}, {"config", config_to_json(b.config)}}}};
  if (b.orbits) j["orbit_report"] = orbit_report_to_json(*b.orbits);
  return j;
}

/// Rebuilds the field, seeds and seed schemes, and rejects a bundle whose
/// stored seed data disagrees with what the seeds imply.
inline DesignBundle bundle_from_json(const Json& j) {
  using detail::get;
  if (!j.is_object()) throw Error(Errc::malformed_input, "bundle must be a JSON object");
  if (get<int>(j, "schema") != bundle_schema) throw Error(Errc::malformed_input, "unsupported bundle schema");
  DesignBundle b;
  const Json& fj = j.at("field");
  b.field = Field::make(get<std::uint32_t>(fj, "p"), get<unsigned>(fj, "s"), get<unsigned>(fj, "ell"),
                        get<std::vector<std::uint32_t>>(fj, "modulus"));
  const Field& F = *b.field;
  const Json& code = j.at("code");
  if (get<std::uint64_t>(code, "n") != F.order()) throw Error(Errc::malformed_input, "code length must equal q^l");
  b.k = get<unsigned>(code, "k");
  b.multi_seed = get<std::string>(j, "mode") == "multi-seed";
  b.delta = get<unsigned>(j, "delta");

  for (const auto& sj : j.at("seeds")) {
    const Subspace S = Subspace::span(b.field, detail::elems_from_json(sj.at("basis"), F));
    if (S.dim() != b.delta) throw Error(Errc::malformed_input, "seed dimension differs from delta");
    const Json& scj = sj.at("scheme");
    std::vector<Poly> u;
    for (const auto& pj : scj.at("u")) u.push_back(detail::elems_from_json(pj, F));
    auto scheme = std::make_shared<const SeedScheme>(S, get<unsigned>(scj, "k"), std::move(u));
    if (scheme->bandwidth() != get<std::size_t>(scj, "bandwidth"))
      throw Error(Errc::malformed_input, "stored seed bandwidth does not match its multipliers");
    SeedEntry e{S, base_field(S).m, coset_count(S), std::move(scheme)};
    if (e.base_m != get<unsigned>(sj, "base_m") || e.coset_count != get<std::uint64_t>(sj, "coset_count"))
      throw Error(Errc::malformed_input, "stored seed metadata does not match the seed");
    b.seeds.push_back(std::move(e));
  }
  if (b.seeds.empty()) throw Error(Errc::malformed_input, "bundle has no seeds");

  b.family_size = get<std::size_t>(j, "family_size");
  const Json& mj = j.at("mhs");
  b.mhs.size = get<std::size_t>(mj, "size");
  b.mhs.method = get<std::string>(mj, "method") == "exact" ? SolveMethod::exact : SolveMethod::greedy_upper_only;
  b.mhs.nodes = get<std::uint64_t>(mj, "nodes");
  b.mhs.witness = detail::elems_from_json(mj.at("witness"), F);
  b.tolerance = get<long>(j, "tolerance");
  const Json& bj = j.at("bounds");
  b.bounds.lower = get<std::uint64_t>(bj, "lower");
  b.bounds.upper = get<std::uint64_t>(bj, "upper");
  if (!bj.at("exact").is_null()) b.bounds.exact = get<std::uint64_t>(bj, "exact");
  const auto kind = get<std::string>(bj, "case");
  b.bounds.kind = kind == "subfield-coset"    ? BoundCase::subfield_coset
                  : kind == "nested-subspace" ? BoundCase::nested_subspace
                                              : BoundCase::generic;
  b.selection_policy = get<std::string>(j, "selection_policy");
  const Json& pj = j.at("provenance");
  b.tool_version = get<std::string>(pj, "tool_version");
  b.config_hash = get<std::string>(pj, "config_hash");
  b.config = config_from_json(pj.at("config"));

  if (j.contains("orbit_report")) {
    const Json& oj = j["orbit_report"];
    OrbitReport r;
    r.q = get<std::uint64_t>(oj, "q");
    r.ell = get<unsigned>(oj, "ell");
    r.delta = get<unsigned>(oj, "delta");
    for (const auto& [m, n] : oj.at("counts_by_base").items())
      r.counts_by_base[static_cast<unsigned>(std::stoul(m))] =
          n.is_string() ? BigInt(n.get<std::string>()) : BigInt(n.get<std::uint64_t>());
    const auto& oc = oj.at("orbit_count");
    r.orbit_count = oc.is_string() ? BigInt(oc.get<std::string>()) : BigInt(oc.get<std::uint64_t>());
    for (const auto& rj : oj.at("representatives")) r.representatives.push_back(Subspace::span(b.field, detail::elems_from_json(rj, F)));
    if (oj.contains("orbit_sizes")) r.orbit_sizes = get<std::vector<std::uint64_t>>(oj, "orbit_sizes");
    b.orbits = std::move(r);
  }
  return b;
}

inline Json bandwidth_table_to_json(const BandwidthTable& t) {
  return {{"n", t.n},
          {"k", t.k},
          {"ell", t.ell},
          {"e", t.e},
          {"saving", t.saving},
          {"centralized", t.centralized},
          {"decentralized_naive", t.decentralized_naive},
          {"decentralized_with_saving", t.decentralized_with_saving},
          {"decentralized_measured", t.decentralized_measured ? Json(*t.decentralized_measured) : Json(nullptr)}};
}

inline Json sim_report_to_json(const SimReport& r) {
  return {{"alpha_star", r.alpha_star.value},
          {"failures", r.failures},
          {"mode", sim_mode_name(r.mode)},
          {"patterns", r.patterns},
          {"survived_patterns", r.survived_patterns},
          {"survived", r.survived},
          {"killing_pattern", r.killing_pattern ? detail::elems_to_json(*r.killing_pattern) : Json(nullptr)},
          {"groups", r.groups},
          {"selection_policy", r.policy},
          {"mean_repair_bandwidth", r.mean_repair_bandwidth},
          {"bandwidth", bandwidth_table_to_json(r.bandwidth)}};
}

inline Json example_report_to_json(const ExampleReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"passed", c.passed}});
  Json j{{"modulus", r.modulus}, {"checks", checks}, {"passed", r.passed()}};
  if (const auto* f = r.first_failure()) j["first_divergence"] = f->name;
  return j;
}

}  // namespace crg
