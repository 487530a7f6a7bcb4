#include <gtest/gtest.h>

#include <random>

#include "crg/field.hpp"
#include "crg/poly.hpp"
#include "oracles.hpp"

using namespace crg;

namespace {

FElem z(const Field& F, unsigned e) { return F.z_pow(e); }

struct Params {
  std::uint32_t p;
  unsigned s, ell;
};

const std::vector<Params> kFields{{2, 1, 1}, {2, 1, 4}, {2, 2, 2}, {2, 1, 6}, {3, 1, 2}, {3, 1, 3}, {5, 1, 2}, {2, 3, 2}, {7, 1, 2}};

}  // namespace

TEST(Field, DefaultGf16UsesX4PlusXPlus1) {
  auto F = Field::make(2, 1, 4);
  EXPECT_EQ(F->modulus(), (std::vector<std::uint32_t>{1, 1, 0, 0, 1}));
  EXPECT_EQ(F->modulus_string(), "x^4+x+1");
  EXPECT_EQ(F->generator().value, 2u);
  EXPECT_EQ(z(*F, 4).value, 3u);  // z^4 = z + 1
}

TEST(Field, ExplicitModulusMatchesDefault) {
  auto F = Field::make(2, 1, 4, std::vector<std::uint32_t>{1, 1, 0, 0, 1});
  EXPECT_EQ(z(*F, 4), F->add(F->generator(), F->one()));
}

TEST(Field, Gf16Identities) {
  auto F = Field::make(2, 1, 4);
  EXPECT_EQ(F->add(z(*F, 4), z(*F, 5)), z(*F, 8));
  EXPECT_EQ(F->mul(z(*F, 2), z(*F, 10)), z(*F, 12));
  for (FElem x : F->elements()) {
    EXPECT_EQ(F->add(x, F->zero()), x);
    EXPECT_EQ(F->mul(x, F->one()), x);
  }
}

TEST(Field, Gf2AndGf9) {
  auto F2 = Field::make(2, 1, 1);
  EXPECT_EQ(F2->order(), 2u);
  EXPECT_EQ(F2->generator(), F2->one());

  auto F9 = Field::make(3, 1, 2);
  std::set<std::uint32_t> powers;
  FElem x = F9->one();
  for (int i = 0; i < 8; ++i) {
    powers.insert(x.value);
    x = F9->mul(x, F9->generator());
  }
  EXPECT_EQ(powers.size(), 8u);
  EXPECT_EQ(x, F9->one());
}

TEST(Field, ArithmeticMatchesSchoolbookReference) {
  for (const auto& prm : kFields) {
    auto F = Field::make(prm.p, prm.s, prm.ell);
    oracle::SlowField ref(prm.p, F->modulus());
    ASSERT_EQ(ref.order, F->order());
    for (std::uint32_t a = 0; a < F->order(); ++a)
      for (std::uint32_t b = 0; b < F->order(); ++b) {
        ASSERT_EQ(F->add(FElem(a), FElem(b)).value, ref.add(a, b));
        ASSERT_EQ(F->mul(FElem(a), FElem(b)).value, ref.mul(a, b));
      }
    for (std::uint32_t a = 0; a < F->order(); ++a) ASSERT_EQ(F->neg(FElem(a)).value, ref.neg(a));
  }
}

TEST(Field, GeneratorIsPrimitiveAndModulusIrreducible) {
  for (const auto& prm : kFields) {
    auto F = Field::make(prm.p, prm.s, prm.ell);
    oracle::SlowField ref(prm.p, F->modulus());
    // A zero-divisor-free multiplication table means the modulus is irreducible.
    for (std::uint32_t a = 1; a < ref.order; ++a)
      for (std::uint32_t b = 1; b < ref.order; ++b) ASSERT_NE(ref.mul(a, b), 0u);
    std::set<std::uint32_t> seen;
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i + 1 < ref.order; ++i) {
      seen.insert(x);
      x = ref.mul(x, F->generator().value);
    }
    EXPECT_EQ(seen.size(), ref.order - 1) << prm.p << "^" << prm.s * prm.ell;
  }
}

TEST(Field, InverseAndFermat) {
  for (const auto& prm : kFields) {
    auto F = Field::make(prm.p, prm.s, prm.ell);
    for (FElem x : F->nonzero_elements()) {
      ASSERT_EQ(F->mul(x, F->inv(x)), F->one());
      ASSERT_EQ(F->pow(x, F->order() - 1), F->one());
      ASSERT_EQ(F->div(x, x), F->one());
    }
  }
}

TEST(Field, Errors) {
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return std::optional<Errc>(e.code());
    }
    return std::optional<Errc>();
  };
  EXPECT_EQ(code([] { Field::make(4, 1, 2); }), Errc::non_prime);
  EXPECT_EQ(code([] { Field::make(2, 1, 21); }), Errc::field_too_large);
  EXPECT_EQ(code([] { Field::make(2, 1, 4, std::vector<std::uint32_t>{1, 0, 0, 0, 1}); }), Errc::reducible_modulus);
  EXPECT_EQ(code([] { Field::make(2, 1, 4, std::vector<std::uint32_t>{1, 1, 1}); }), Errc::invalid_argument);
  auto F = Field::make(2, 1, 4);
  EXPECT_EQ(code([&] { F->inv(F->zero()); }), Errc::division_by_zero);
  EXPECT_EQ(code([&] { F->trace(F->one(), 3); }), Errc::invalid_subfield);
}

TEST(Field, AlternateModulusIsAccepted) {
  auto F = Field::make(2, 1, 4, std::vector<std::uint32_t>{1, 0, 0, 1, 1});
  EXPECT_EQ(F->modulus_string(), "x^4+x^3+1");
  EXPECT_EQ(F->pow(F->generator(), 15), F->one());
}

TEST(Field, SubfieldsAreFrobeniusFixedSets) {
  for (const auto& prm : kFields) {
    auto F = Field::make(prm.p, prm.s, prm.ell);
    oracle::SlowField ref(prm.p, F->modulus());
    for (unsigned m = 1; m <= F->degree(); ++m) {
      if (F->degree() % m != 0) continue;
      std::uint32_t pm = 1;
      for (unsigned i = 0; i < m; ++i) pm *= prm.p;
      auto sub = F->subfield(m);
      std::vector<std::uint32_t> got;
      for (FElem x : sub) got.push_back(x.value);
      std::sort(got.begin(), got.end());
      EXPECT_EQ(got, ref.roots_of_frobenius(pm));
      for (FElem a : sub)
        for (FElem b : sub) {
          EXPECT_TRUE(F->in_subfield(F->add(a, b), m));
          EXPECT_TRUE(F->in_subfield(F->mul(a, b), m));
        }
    }
  }
}

TEST(Field, TraceGf16) {
  auto F = Field::make(2, 1, 4);
  oracle::SlowField ref(2, F->modulus());
  EXPECT_EQ(F->trace_to_base(F->zero()), F->zero());
  int zeros = 0;
  for (FElem x : F->elements()) {
    const std::uint32_t want = ref.add(ref.add(x.value, ref.pow(x.value, 2)), ref.add(ref.pow(x.value, 4), ref.pow(x.value, 8)));
    EXPECT_EQ(F->trace_to_base(x).value, want);
    EXPECT_LE(F->trace_to_base(x).value, 1u);
    if (F->trace_to_base(x) == F->zero()) ++zeros;
  }
  EXPECT_EQ(zeros, 8);
}

TEST(Field, TraceLinearityAndTower) {
  std::mt19937 rng(7);
  for (const auto& prm : kFields) {
    auto F = Field::make(prm.p, prm.s, prm.ell);
    std::uniform_int_distribution<std::uint32_t> pick(0, F->order() - 1);
    for (int i = 0; i < 100; ++i) {
      const FElem x(pick(rng)), y(pick(rng));
      EXPECT_EQ(F->trace_to_base(F->add(x, y)), F->add(F->trace_to_base(x), F->trace_to_base(y)));
    }
    for (unsigned m = 1; m <= F->degree(); ++m) {
      if (F->degree() % m) continue;
      for (FElem x : F->elements()) {
        const FElem t = F->trace(x, m);
        ASSERT_TRUE(F->in_subfield(t, m));
        // Trace from the subfield of order p^m down to F_p, summed by hand.
        FElem down = F->zero(), cur = t;
        for (unsigned i = 0; i < m; ++i) {
          down = F->add(down, cur);
          cur = F->frobenius(cur, 1);
        }
        ASSERT_EQ(down, F->trace(x, 1));
      }
    }
  }
}

TEST(Field, TraceIsSubfieldLinear) {
  auto F = Field::make(2, 2, 2);  // F_16 over F_4
  const auto base = F->base_elements();
  for (FElem c : base)
    for (FElem x : F->elements()) EXPECT_EQ(F->trace_to_base(F->mul(c, x)), F->mul(c, F->trace_to_base(x)));
}

TEST(Poly, Evaluation) {
  auto F = Field::make(2, 1, 4);
  const FElem c = z(*F, 7);
  for (FElem x : F->elements()) EXPECT_EQ(poly_eval(*F, Poly{c}, x), c);
  const Poly f{F->generator(), F->one()};  // x + z
  EXPECT_EQ(poly_eval(*F, f, F->generator()), F->zero());

  std::mt19937 rng(3);
  std::uniform_int_distribution<std::uint32_t> pick(0, 15);
  const Poly g{FElem(pick(rng)), FElem(pick(rng))};
  std::vector<FElem> codeword;
  for (FElem a : F->elements()) codeword.push_back(poly_eval(*F, g, a));
  EXPECT_EQ(codeword.size(), 16u);
  for (FElem a : F->elements()) EXPECT_EQ(poly_eval(*F, g, a), F->add(g[0], F->mul(g[1], a)));
}

TEST(Poly, DivmodAndRoots) {
  auto F = Field::make(3, 1, 2);
  std::mt19937 rng(11);
  std::uniform_int_distribution<std::uint32_t> pick(0, F->order() - 1);
  for (int t = 0; t < 50; ++t) {
    Poly a(7), b(3);
    for (auto& c : a) c = FElem(pick(rng));
    for (auto& c : b) c = FElem(pick(rng));
    if (b.back().value == 0) b.back() = F->one();
    const auto [quot, rem] = poly_divmod(*F, a, b);
    EXPECT_LT(poly_degree(rem), poly_degree(b));
    Poly back = poly_add(*F, poly_mul(*F, quot, b), rem);
    poly_trim(back);
    poly_trim(a);
    EXPECT_EQ(back, a);
  }
  const std::vector<FElem> roots{FElem(1), FElem(4), FElem(7)};
  const Poly r = poly_from_roots(*F, roots);
  EXPECT_EQ(poly_degree(r), 3);
  for (FElem x : F->elements())
    EXPECT_EQ(poly_eval(*F, r, x) == F->zero(), std::count(roots.begin(), roots.end(), x) == 1);
}

TEST(Poly, AffineComposition) {
  auto F = Field::make(2, 1, 4);
  const Poly f{z(*F, 3), z(*F, 1), F->one(), z(*F, 9)};
  const FElem a = z(*F, 6), c = z(*F, 11);
  const Poly g = poly_compose_affine(*F, f, a, c);
  for (FElem x : F->elements()) EXPECT_EQ(poly_eval(*F, g, x), poly_eval(*F, f, F->add(F->mul(a, x), c)));
}
