#include <gtest/gtest.h>

#include <random>

#include "crg/cosets.hpp"
#include "crg/repair.hpp"

using namespace crg;

namespace {

/// F_2-rank of elements of GF(2^l) read as bit vectors.
std::size_t rank_gf2(std::vector<std::uint32_t> v) {
  std::size_t r = 0;
  for (unsigned bit = 32; bit-- > 0;) {
    auto it = std::find_if(v.begin() + r, v.end(), [&](std::uint32_t x) { return (x >> bit) & 1; });
    if (it == v.end()) continue;
    std::iter_swap(v.begin() + r, it);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (i != r && ((v[i] >> bit) & 1)) v[i] ^= v[r];
    ++r;
  }
  return r;
}

Poly random_message(const Field& F, unsigned k, std::mt19937& rng) {
  std::uniform_int_distribution<std::uint32_t> pick(0, F.order() - 1);
  Poly f(k);
  for (auto& c : f) c = FElem(pick(rng));
  return f;
}

FElem recover_with(const RepairScheme& scheme, const Poly& f) {
  const Field& F = scheme.field();
  std::vector<HelperPayload> payloads;
  for (FElem beta : scheme.helpers()) payloads.push_back(helper_payload(scheme, beta, poly_eval(F, f, beta)));
  return recover_symbol(scheme, payloads);
}

struct Gf16 : ::testing::Test {
  FieldPtr F = Field::make(2, 1, 4);
  Subspace s1 = Subspace::span(F, {F->z_pow(2), F->z_pow(7)});
  Subspace s2 = Subspace::span(F, {F->z_pow(4), F->z_pow(5)});
};

}  // namespace

TEST_F(Gf16, PowerSumsVanish) {
  for (std::uint64_t t = 0; t + 2 <= F->order(); ++t) {
    FElem acc = F->zero();
    for (FElem a : F->elements()) acc = F->add(acc, t == 0 ? F->one() : F->pow(a, t));
    EXPECT_EQ(acc, F->zero()) << t;
  }
}

TEST_F(Gf16, CofactorIsProductOverComplement) {
  for (const auto& S : enumerate_subspaces(F, 2)) {
    const SeedScheme sch = naive_seed_scheme(S, 2);
    for (FElem x : S.members()) {
      FElem prod = F->one();
      for (FElem a : F->elements())
        if (!S.contains(a)) prod = F->mul(prod, F->sub(x, a));
      EXPECT_EQ(prod, sch.vanishing_cofactor());
    }
  }
}

TEST_F(Gf16, NaiveScheme) {
  const SeedScheme sch = naive_seed_scheme(s1, 2);
  EXPECT_TRUE(verify_full_rank(sch));
  EXPECT_EQ(bandwidth(sch), 12u);
  auto G = Field::make(2, 1, 3);
  const SeedScheme whole = naive_seed_scheme(Subspace::span(G, G->elements()), 1);
  EXPECT_EQ(whole.bandwidth(), 7u * 3u);
}

TEST_F(Gf16, DenseCheckPolynomialsAgree) {
  std::mt19937 rng(1);
  for (unsigned k : {1u, 2u, 3u}) {
    const SeedScheme sch = search_seed_scheme(s2, k, 200, 5);
    for (std::size_t i = 0; i < F->ell(); ++i) {
      const Poly g = sch.dense_check_polynomial(i);
      EXPECT_LE(poly_degree(g), static_cast<long>(F->order() - k - 1));
      EXPECT_TRUE(check_polynomial_validity(*F, k, g));
      for (FElem x : F->elements()) {
        EXPECT_EQ(poly_eval(*F, g, x), sch.check_value(i, x));
        if (!s2.contains(x)) {
          EXPECT_EQ(sch.check_value(i, x), F->zero());
        }
      }
      // Parity identity against random codewords.
      for (int t = 0; t < 20; ++t) {
        const Poly f = random_message(*F, k, rng);
        FElem acc = F->zero();
        for (FElem a : F->elements()) acc = F->add(acc, F->mul(poly_eval(*F, g, a), poly_eval(*F, f, a)));
        EXPECT_EQ(acc, F->zero());
      }
    }
  }
}

TEST_F(Gf16, BandwidthMatchesBitRank) {
  for (unsigned k : {1u, 2u, 3u})
    for (const auto& S : {s1, s2}) {
      const SeedScheme sch = search_seed_scheme(S, k, 300, 2);
      std::size_t want = 0;
      for (FElem a : S.nonzero_members()) {
        std::vector<std::uint32_t> vals;
        for (std::size_t i = 0; i < F->ell(); ++i) vals.push_back(sch.check_value(i, a).value);
        want += rank_gf2(vals);
      }
      EXPECT_EQ(sch.bandwidth(), want);
      EXPECT_LE(sch.bandwidth(), (S.size() - 1) * F->ell());
    }
}

TEST_F(Gf16, FullRankFailsForRepeatedMultiplier) {
  std::vector<Poly> u{Poly{F->one()}, Poly{F->one()}, Poly{F->z_pow(2)}, Poly{F->z_pow(3)}};
  const SeedScheme sch(s1, 2, u);
  EXPECT_FALSE(verify_full_rank(sch));
  EXPECT_LE(sch.rank_at(F->zero()), 3u);
}

TEST_F(Gf16, ConstructionErrors) {
  auto code = [](auto&& fn) -> std::optional<Errc> {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return std::nullopt;
  };
  EXPECT_EQ(code([&] { naive_seed_scheme(s1, 4); }), Errc::dimension_too_small);
  EXPECT_EQ(code([&] { search_seed_scheme(s1, 5, 10); }), Errc::dimension_too_small);
  auto sp = std::make_shared<const SeedScheme>(naive_seed_scheme(s1, 2));
  EXPECT_EQ(code([&] { dilate_translate(sp, F->one(), F->zero()); }), Errc::zero_dilation);
  const RepairScheme r = dilate_translate(sp, F->z_pow(5), F->one());
  EXPECT_EQ(code([&] { helper_payload(r, F->z_pow(5), F->one()); }), Errc::not_a_helper);
  std::vector<HelperPayload> partial{helper_payload(r, r.helpers()[0], F->one())};
  EXPECT_EQ(code([&] { recover_symbol(r, partial); }), Errc::missing_payload);
}

TEST_F(Gf16, SearchContract) {
  for (unsigned k : {1u, 2u, 3u}) {
    const SeedScheme naive = naive_seed_scheme(s1, k);
    const SeedScheme zero_budget = search_seed_scheme(s1, k, 0);
    EXPECT_EQ(zero_budget.bandwidth(), naive.bandwidth());
    EXPECT_EQ(zero_budget.multipliers(), naive.multipliers());
    const SeedScheme found = search_seed_scheme(s1, k, 1000, 3);
    EXPECT_TRUE(found.full_rank());
    EXPECT_LE(found.bandwidth(), naive.bandwidth());
  }
  EXPECT_LE(search_seed_scheme(s1, 2, 1000, 1).bandwidth(), 12u);
  // Reproducible for a fixed seed.
  EXPECT_EQ(search_seed_scheme(s2, 2, 500, 9).multipliers(), search_seed_scheme(s2, 2, 500, 9).multipliers());
}

TEST_F(Gf16, DilationInvarianceAllPairs) {
  auto seed = std::make_shared<const SeedScheme>(search_seed_scheme(s2, 2, 1000, 1));
  std::vector<std::size_t> seed_profile;
  for (FElem a : s2.nonzero_members()) seed_profile.push_back(seed->rank_at(a));
  std::sort(seed_profile.begin(), seed_profile.end());
  for (FElem alpha : F->elements())
    for (FElem b : F->nonzero_elements()) {
      const RepairScheme r = dilate_translate(seed, alpha, b);
      ASSERT_TRUE(verify_full_rank(r));
      ASSERT_EQ(bandwidth(r), seed->bandwidth());
      std::vector<std::size_t> profile;
      for (FElem h : r.helpers()) profile.push_back(r.rank_at(h));
      std::sort(profile.begin(), profile.end());
      ASSERT_EQ(profile, seed_profile);
      for (FElem x : F->elements()) {
        const bool in_coset = s2.contains(F->div(F->sub(x, alpha), b));
        if (in_coset) continue;
        for (std::size_t i = 0; i < F->ell(); ++i) ASSERT_EQ(r.check_value(i, x), F->zero());
      }
    }
  const RepairScheme id = dilate_translate(seed, F->zero(), F->one());
  EXPECT_EQ(id.helpers(), std::vector<FElem>(s2.nonzero_members().begin(), s2.nonzero_members().end()));
  for (FElem x : F->elements()) EXPECT_EQ(id.check_values(x), seed->check_values(x));
}

TEST_F(Gf16, ExampleGroupsRecoverRandomMessages) {
  auto seed = std::make_shared<const SeedScheme>(search_seed_scheme(s1, 2, 1000, 1));
  const FElem alpha = F->z_pow(5);
  const CosetFamily groups = coset_family(s1, alpha);
  ASSERT_EQ(groups.size(), 5u);
  std::mt19937 rng(17);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const RepairScheme r(seed, alpha, groups.multiplier[g]);
    ASSERT_EQ(r.helpers(), groups.sets[g]);
    for (int t = 0; t < 100; ++t) {
      const Poly f = random_message(*F, 2, rng);
      ASSERT_EQ(recover_with(r, f), poly_eval(*F, f, alpha));
    }
    EXPECT_EQ(recover_with(r, Poly{F->z_pow(9)}), F->z_pow(9));
    EXPECT_EQ(recover_with(r, Poly{}), F->zero());
  }
}

TEST_F(Gf16, PayloadAccounting) {
  auto seed = std::make_shared<const SeedScheme>(search_seed_scheme(s2, 2, 1000, 4));
  std::mt19937 rng(23);
  const RepairScheme r(seed, F->z_pow(11), F->z_pow(3));
  const Poly f = random_message(*F, 2, rng);
  std::size_t total = 0;
  for (FElem beta : r.helpers()) {
    const FElem fb = poly_eval(*F, f, beta);
    const HelperPayload p = helper_payload(r, beta, fb);
    EXPECT_EQ(p.rank(), r.rank_at(beta));
    EXPECT_LE(p.rank(), F->ell());
    total += p.rank();
    for (std::size_t i = 0; i < F->ell(); ++i) {
      FElem acc = F->zero();
      for (std::size_t j = 0; j < p.rank(); ++j) acc = F->add(acc, F->mul(p.combination[i][j], p.symbols[j]));
      EXPECT_EQ(acc, F->trace_to_base(F->mul(r.check_value(i, beta), fb)));
    }
  }
  EXPECT_EQ(total, r.bandwidth());
  EXPECT_EQ(total, seed->bandwidth());
}

TEST(Repair, NonBinaryBaseField) {
  // F_16 over F_4 and F_27 over F_3.
  for (auto [p, s, ell] : std::vector<std::tuple<std::uint32_t, unsigned, unsigned>>{{2, 2, 2}, {3, 1, 3}}) {
    auto F = Field::make(p, s, ell);
    const Subspace S = enumerate_subspaces(F, 1).at(1);
    const unsigned k = 1;
    auto seed = std::make_shared<const SeedScheme>(search_seed_scheme(S, k, 300, 1));
    ASSERT_TRUE(seed->full_rank());
    std::mt19937 rng(p * 10 + ell);
    for (std::uint32_t a = 0; a < F->order(); a += 3)
      for (std::uint32_t b = 1; b < F->order(); b += 4) {
        const RepairScheme r(seed, FElem(a), FElem(b));
        ASSERT_EQ(r.bandwidth(), seed->bandwidth());
        for (int t = 0; t < 5; ++t) {
          const Poly f = random_message(*F, k, rng);
          ASSERT_EQ(recover_with(r, f), poly_eval(*F, f, FElem(a)));
        }
      }
  }
}

TEST(Repair, CheckPolynomialValidity) {
  auto F = Field::make(2, 1, 4);
  const unsigned k = 2;
  EXPECT_TRUE(check_polynomial_validity(*F, k, Poly{}));
  Poly g(F->order() - k + 1, F->zero());
  g.back() = F->one();  // x^(n-k)
  EXPECT_FALSE(check_polynomial_validity(*F, k, g));
  EXPECT_NE(inner_product_with_monomial(*F, g, k - 1), F->zero());
  const SeedScheme naive = naive_seed_scheme(enumerate_subspaces(F, 2).front(), k);
  for (std::size_t i = 0; i < F->ell(); ++i) EXPECT_TRUE(check_polynomial_validity(*F, k, naive.dense_check_polynomial(i)));
}
