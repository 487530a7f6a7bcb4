// crg: command-line front end for designing and checking compact repair groups.
//
// Exit codes: 0 success, 1 usage or input error, 2 failed assertion.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "crg/crg.hpp"

namespace {

struct PrimePower {
  std::uint32_t p;
  unsigned s;
};

PrimePower split_prime_power(std::uint64_t q) {
  if (q < 2) throw crg::Error(crg::Errc::invalid_argument, "q must be a prime power");
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned s = 0;
  std::uint64_t r = q;
  while (r % p == 0) {
    r /= p;
    ++s;
  }
  if (r != 1 || p > std::numeric_limits<std::uint32_t>::max())
    throw crg::Error(crg::Errc::non_prime, "q = " + std::to_string(q) + " is not a prime power");
  return {static_cast<std::uint32_t>(p), s};
}

void emit(const crg::Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw crg::Error(crg::Errc::invalid_argument, "cannot write " + path);
  out << j.dump(2) << '\n';
}

std::optional<std::vector<std::uint32_t>> modulus_opt(const std::vector<std::uint32_t>& m) {
  if (m.empty()) return std::nullopt;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact repair groups for full-length Reed-Solomon codes"};
  app.require_subcommand(1);
  app.set_version_flag("--version", crg::tool_version);

  std::string out_path;
  std::vector<std::uint32_t> modulus;

  // field-info
  std::uint32_t fi_p = 2;
  unsigned fi_s = 1, fi_ell = 4;
  auto* field_info = app.add_subcommand("field-info", "Field parameters, modulus and subfield chain");
  field_info->add_option("--p", fi_p, "Characteristic")->capture_default_str();
  field_info->add_option("--s", fi_s, "q = p^s")->capture_default_str();
  field_info->add_option("--ell", fi_ell, "Extension degree over F_q")->capture_default_str();
  field_info->add_option("--modulus", modulus, "Modulus coefficients over F_p, low degree first")->delimiter(',');
  field_info->add_option("-o,--output", out_path, "Output file (default stdout)");

  // orbits
  std::uint64_t q = 2;
  unsigned ell = 4, delta = 2;
  auto* orbits = app.add_subcommand("orbits", "Orbit counts of delta-dimensional subspaces under multiplication");
  orbits->add_option("--q", q, "Base field order")->required();
  orbits->add_option("--ell", ell, "Extension degree")->required();
  orbits->add_option("--delta", delta, "Subspace dimension")->required();
  orbits->add_option("--modulus", modulus, "Modulus coefficients over F_p, low degree first")->delimiter(',');
  orbits->add_option("-o,--output", out_path, "Output file (default stdout)");

  // design
  crg::DesignConfig cfg;
  auto* design = app.add_subcommand("design", "Build a design bundle");
  design->add_option("--q", q, "Base field order")->required();
  design->add_option("--ell", ell, "Extension degree")->required();
  design->add_option("--delta", cfg.delta, "Seed dimension");
  design->add_option("--k", cfg.k, "Code dimension")->required();
  design->add_flag("--multi-seed", cfg.multi_seed, "One seed per orbit of delta-dimensional subspaces");
  design->add_option("--seed-basis", cfg.seed_basis, "Seed generators as integer-encoded elements")->delimiter(',');
  design->add_option("--strategy", cfg.strategy, "Seed choice without --seed-basis")
      ->check(CLI::IsMember({"subfield-coset", "lex-first", "best-orbit"}))
      ->capture_default_str();
  design->add_option("--search-budget", cfg.search_budget, "Seed-scheme search evaluations")->capture_default_str();
  design->add_option("--rng-seed", cfg.rng_seed, "Seed for the scheme search")->capture_default_str();
  design->add_option("--node-budget", cfg.node_budget, "Hitting-set search node budget")->capture_default_str();
  design->add_option("--modulus", modulus, "Modulus coefficients over F_p, low degree first")->delimiter(',');
  design->add_option("-o,--output", out_path, "Output file (default stdout)");

  // simulate
  std::string bundle_path;
  crg::SimConfig sim;
  std::uint32_t alpha_star = 0;
  std::string mode = "auto";
  auto* simulate = app.add_subcommand("simulate", "Inject helper failures and check for an intact group");
  simulate->add_option("--bundle", bundle_path, "Design bundle JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--alpha-star", alpha_star, "Failed symbol position (integer-encoded element)")->required();
  simulate->add_option("--failures", sim.failures, "Number of failed helpers")->required();
  simulate->add_option("--mode", mode, "auto, exhaustive or monte-carlo")
      ->check(CLI::IsMember({"auto", "exhaustive", "monte-carlo"}))
      ->capture_default_str();
  simulate->add_option("--trials", sim.trials, "Monte Carlo trials")->capture_default_str();
  simulate->add_option("--rng-seed", sim.rng_seed, "Monte Carlo seed")->capture_default_str();
  simulate->add_option("--threshold", sim.threshold, "Largest pattern count enumerated exhaustively")
      ->capture_default_str();
  simulate->add_option("--saving", sim.saving, "Per-repair saving fraction s for the ekl(1-s) column")->capture_default_str();
  simulate->add_option("-o,--output", out_path, "Output file (default stdout)");

  // compare-bandwidth
  std::uint64_t cb_n = 0, cb_k = 0, cb_ell = 0, cb_e = 1;
  double saving = 0;
  std::vector<double> measured;
  auto* compare = app.add_subcommand("compare-bandwidth", "Centralized versus decentralized repair bandwidth");
  compare->add_option("--n", cb_n, "Code length")->required();
  compare->add_option("--k", cb_k, "Code dimension")->required();
  compare->add_option("--ell", cb_ell, "Extension degree")->required();
  compare->add_option("--e", cb_e, "Number of lost symbols")->required();
  compare->add_option("--saving", saving, "Fractional saving s in [0, 1)")->required();
  compare->add_option("--measured", measured, "Per-repair bandwidths (one value, or one per loss)")->delimiter(',');
  compare->add_option("-o,--output", out_path, "Output file (default stdout)");

  // verify-example
  auto* verify = app.add_subcommand("verify-example", "Check the RS(16, 2) worked example");
  verify->add_option("--modulus", modulus, "Modulus coefficients over F_2, low degree first")->delimiter(',');
  verify->add_option("-o,--output", out_path, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*field_info) {
      emit(crg::field_info_json(*crg::Field::make(fi_p, fi_s, fi_ell, modulus_opt(modulus))), out_path);
    } else if (*orbits) {
      const auto pp = split_prime_power(q);
      crg::Json j;
      const crg::OrbitReport formula = crg::orbit_report_formula(q, ell, delta);
      const auto order = crg::detail::bounded_pow(q, ell, crg::Field::max_order);
      if (order) {
        const auto F = crg::Field::make(pp.p, pp.s, ell, modulus_opt(modulus));
        const crg::OrbitReport brute = crg::orbit_decomposition(F, delta);
        j = crg::orbit_report_to_json(brute);
        j["method"] = "enumeration";
        j["formula_orbit_count"] = crg::detail::big_to_json(formula.orbit_count);
        const bool agree = brute.orbit_count == formula.orbit_count && brute.counts_by_base == formula.counts_by_base;
        j["formula_agrees"] = agree;
        emit(j, out_path);
        if (!agree) {
          std::cerr << "AssertionFailure: enumerated orbit data differs from the closed form\n";
          return 2;
        }
      } else {
        j = crg::orbit_report_to_json(formula);
        j["method"] = "formula";
        emit(j, out_path);
      }
    } else if (*design) {
      const auto pp = split_prime_power(q);
      cfg.p = pp.p;
      cfg.s = pp.s;
      cfg.ell = ell;
      cfg.modulus = modulus_opt(modulus);
      emit(crg::bundle_to_json(crg::design(cfg)), out_path);
    } else if (*simulate) {
      std::ifstream in(bundle_path);
      crg::Json bj;
      try {
        bj = crg::Json::parse(in);
      } catch (const crg::Json::exception& e) {
        throw crg::Error(crg::Errc::malformed_input, e.what());
      }
      const crg::DesignBundle bundle = crg::bundle_from_json(bj);
      sim.alpha_star = crg::FElem(alpha_star);
      sim.mode = mode == "exhaustive"    ? crg::SimMode::exhaustive
                 : mode == "monte-carlo" ? crg::SimMode::monte_carlo
                                         : crg::SimMode::automatic;
      emit(crg::sim_report_to_json(crg::simulate_failures(bundle, sim)), out_path);
    } else if (*compare) {
      emit(crg::bandwidth_table_to_json(crg::bandwidth_comparison(cb_n, cb_k, cb_ell, cb_e, measured, saving)),
           out_path);
    } else if (*verify) {
      const crg::ExampleReport rep = crg::verify_reference_example(modulus_opt(modulus));
      emit(crg::example_report_to_json(rep), out_path);
      if (const auto* f = rep.first_failure()) {
        std::cerr << "AssertionFailure: " << f->name << ": expected " << f->expected << ", got " << f->actual << '\n';
        return 2;
      }
    }
  } catch (const crg::Error& e) {
    std::cerr << e.what() << '\n';
    return e.code() == crg::Errc::assertion_failure ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
