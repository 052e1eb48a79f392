#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <set>
#include <string>

#include "oracles.hpp"
#include "tripartite/measures.hpp"
#include "tripartite/states.hpp"

using namespace tripartite;

TEST(Generic, GhzAndBasisLimits) {
  const double h = 1.0 / std::sqrt(2.0);
  const PureState ghz = generic({{h, 0, 0, 0, h}, 0.0});
  EXPECT_NEAR(std::abs(ghz.inner(named(NamedState::GHZ))), 1.0, 1e-12);
  const PureState zero = generic({{1, 0, 0, 0, 0}, 0.0});
  EXPECT_NEAR(std::abs(zero.inner(PureState::basis("000"))), 1.0, 1e-12);
}

TEST(Generic, WClassCanonicalHasNoTangle) {
  const double t = 1.0 / std::sqrt(3.0);
  const PureState s = generic({{0, t, t, t, 0}, 0.0});
  // 4 a0^2 a4^2 = 0; cross-checked with the epsilon contraction
  EXPECT_NEAR(oracle::tangle_eps(oracle::amps(s)), 0.0, 1e-12);
}

TEST(Generic, RejectsInvalidParams) {
  EXPECT_THROW(generic({{-0.1, 1, 0, 0, 0}, 0.0}), std::invalid_argument);
  EXPECT_THROW(generic({{1, 0, 0, 0, 0}, 3.5}), std::invalid_argument);
  EXPECT_THROW(generic({{1, 0, 0, 0, 0}, -0.1}), std::invalid_argument);
  EXPECT_THROW(generic({{0.9, 0, 0, 0, 0}, 0.0}), std::invalid_argument);
}

TEST(Generic, SupportAndCanonicalShape) {
  for (Seed seed = 0; seed < 100; ++seed) {
    const PureState s = generic(random_generic(seed));
    EXPECT_EQ(s[0b001], Complex(0.0));
    EXPECT_EQ(s[0b010], Complex(0.0));
    EXPECT_EQ(s[0b011], Complex(0.0));
    EXPECT_TRUE(is_canonical_generic(s));
  }
  EXPECT_FALSE(is_canonical_generic(named(NamedState::W)));
  EXPECT_FALSE(is_canonical_generic(random_pure(3)));
}

TEST(Generic, StructurallyVanishingExpectations) {
  const auto zeros = oracle::generic_structural_zeros();
  // the support+phase pass finds exactly these twelve strings
  EXPECT_EQ(zeros.size(), 12u);
  for (Seed seed = 0; seed < 100; ++seed) {
    const PureState s = generic(random_generic(seed));
    for (const auto& z : zeros) EXPECT_LT(std::abs(expectation(s, PauliString(z))), 1e-12) << z;
  }
  // every other string is visibly nonzero on some generic state
  for (const auto& p : nonidentity_pauli_strings()) {
    if (std::find(zeros.begin(), zeros.end(), p.str()) != zeros.end()) continue;
    double largest = 0.0;
    for (Seed seed = 0; seed < 100; ++seed)
      largest = std::max(largest, std::abs(expectation(generic(random_generic(seed)), p)));
    EXPECT_GT(largest, 1e-3) << p.str();
  }
}

TEST(Named, Definitions) {
  const double r2 = 1.0 / std::sqrt(2.0), r3 = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(named(NamedState::W)[0b001].real(), r3, 1e-15);
  EXPECT_NEAR(named(NamedState::BS1)[0b011].real(), r2, 1e-15);
  EXPECT_NEAR(named(NamedState::BS2)[0b101].real(), r2, 1e-15);
  EXPECT_NEAR(named(NamedState::BS3)[0b110].real(), r2, 1e-15);
  EXPECT_NEAR(named(NamedState::WWbar)[0b111].real(), 0.0, 1e-15);
  EXPECT_NEAR(named(NamedState::WWbar)[0b110].real(), 1.0 / std::sqrt(6.0), 1e-15);
  for (NamedState tag : kNamedStates) EXPECT_TRUE(named(tag).is_normalized(1e-14));
  EXPECT_EQ(kNamedStates.size(), 7u);
  EXPECT_EQ(parse_named_state("WWbar"), NamedState::WWbar);
  EXPECT_FALSE(parse_named_state("GHZ5").has_value());
}

TEST(Named, WitnessValues) {
  auto g = [](NamedState t, int l) { return concurrence_oracle(named(t), Bipartition(l)); };
  for (int l = 1; l <= 3; ++l) {
    EXPECT_NEAR(g(NamedState::GHZ, l), 0.25, 1e-12);
    EXPECT_NEAR(g(NamedState::W, l), 2.0 / 9.0, 1e-12);
  }
  EXPECT_NEAR(g(NamedState::BS1, 1), 0.0, 1e-12);
  EXPECT_NEAR(g(NamedState::BS1, 2), 0.25, 1e-12);
  EXPECT_NEAR(g(NamedState::BS1, 3), 0.25, 1e-12);
}

TEST(RandomGeneric, DeterministicAndNormalized) {
  const GenericParams a = random_generic(42), b = random_generic(42);
  EXPECT_EQ(a.a, b.a);
  EXPECT_EQ(a.theta, b.theta);
  EXPECT_NE(random_generic(43).a, a.a);
  for (Seed seed = 0; seed < 10000; ++seed) {
    const GenericParams p = random_generic(seed);
    double sum = 0.0;
    for (double ai : p.a) sum += ai * ai;
    ASSERT_NEAR(sum, 1.0, 1e-12);
    ASSERT_GE(p.theta, 0.0);
    ASSERT_LE(p.theta, std::numbers::pi);
  }
}

TEST(RandomGeneric, VisitsBothTangleRegions) {
  int ghz_like = 0, w_like = 0;
  for (Seed seed = 0; seed < 10000; ++seed) {
    const GenericParams p = random_generic(seed);
    const double tau = 4.0 * p.a[0] * p.a[0] * p.a[4] * p.a[4];
    (tau > 0.01 ? ghz_like : w_like)++;
  }
  EXPECT_GT(ghz_like, 0);
  EXPECT_GT(w_like, 0);
}

TEST(RandomPure, DeterministicNormalizedDistinct) {
  const PureState a = random_pure(7), b = random_pure(7), c = random_pure(8);
  EXPECT_EQ(a.amplitudes(), b.amplitudes());
  EXPECT_NEAR(a.norm_squared(), 1.0, 1e-12);
  EXPECT_LT(std::abs(a.inner(c)), 1.0 - 1e-6);
}

TEST(RandomPure, EnsembleMeanOfLocalZVanishes) {
  double sum = 0.0;
  const PauliString zii("ZII");
  for (Seed seed = 0; seed < 10000; ++seed) sum += expectation(random_pure(seed), zii);
  EXPECT_NEAR(sum / 10000.0, 0.0, 0.05);
}

TEST(RandomFamilies, ProductAndBiseparableStructure) {
  for (Seed seed = 0; seed < 50; ++seed) {
    const auto prod = oracle::amps(random_product(seed));
    for (int l = 1; l <= 3; ++l) EXPECT_NEAR(oracle::concurrence_sq(prod, l), 0.0, 1e-12);
    for (int cut = 1; cut <= 3; ++cut) {
      const auto bis = oracle::amps(random_biseparable(seed, Bipartition(cut)));
      EXPECT_NEAR(oracle::concurrence_sq(bis, cut), 0.0, 1e-12);
    }
  }
}

TEST(Pps, Limits) {
  const PureState base = named(NamedState::GHZ);
  EXPECT_LE((pps(1.0, base).matrix() - density_of(base).matrix()).cwiseAbs().maxCoeff(), 1e-15);
  const DensityOperator mixed = pps(0.0, base);
  for (const auto& p : nonidentity_pauli_strings()) EXPECT_EQ(expectation(mixed, p), 0.0);
  EXPECT_NEAR(expectation(pps(1e-5, PureState::basis("000")), PauliString("ZII")), 1e-5, 1e-14);
  EXPECT_THROW(pps(1.2, base), std::invalid_argument);
  EXPECT_THROW(pps(-0.1, base), std::invalid_argument);
  EXPECT_NO_THROW(DensityOperator(pps(0.37, random_pure(1)).matrix()));
}

TEST(Generic, RealFormZeroesSingleYWitnessStrings) {
  std::set<std::string> used;
  const auto& poly = standard_witness_polynomial();
  for (int l = 1; l <= 3; ++l)
    for (const auto& p : poly.strings_for(Bipartition(l))) used.insert(p.str());
  ASSERT_EQ(used.size(), 31u);
  for (double theta : {0.0, std::numbers::pi, 1.1}) {
    int vanishing = 0;
    for (const auto& s : used) {
      double largest = 0.0;
      for (Seed seed = 0; seed < 20; ++seed) {
        GenericParams p = random_generic(seed);
        p.theta = theta;
        largest = std::max(largest, std::abs(expectation(generic(p), PauliString(s))));
      }
      if (largest < 1e-12) {
        ++vanishing;
        EXPECT_EQ(std::count(s.begin(), s.end(), 'Y'), 1) << s;
      }
    }
    EXPECT_EQ(vanishing, theta == 1.1 ? 0 : 12) << theta;
  }
}
