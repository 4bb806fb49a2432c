#include <chrono>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "symreeb/random_loops.hpp"
#include "symreeb/spectral.hpp"

using namespace symreeb;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Constant coefficient c on [0, T]: eigenfunctions rotate at rate lambda + c,
// so periodic eigenvalues are 2 pi k / T - c (double, winding k) and boundary
// eigenvalues on [0, T/2] are the same values with relative winding k/2.
std::vector<double> constant_eigenvalues(double c, double T, double a, double b) {
  std::vector<double> out;
  for (int k = -100; k <= 100; ++k) {
    const double l = kTwoPi * k / T - c;
    if (l >= a && l <= b) out.push_back(l);
  }
  return out;
}

}  // namespace

TEST(FundamentalSolution, ZeroCoefficientFullTurn) {
  const auto phi = fundamental_solution(constant_loop(0.0), kTwoPi);
  EXPECT_LE(max_abs(phi(1.0) - Mat2::Identity()), 1e-9);
}

TEST(FundamentalSolution, ConstantIsRotation) {
  const double c = 1.7, l = 0.4;
  const auto phi = fundamental_solution(constant_loop(c), l);
  for (double t : {0.1, 0.37, 0.8, 1.0}) EXPECT_LE(max_abs(phi(t) - rotation((l + c) * t)), 1e-9);
}

TEST(FundamentalSolution, UnitDeterminant) {
  std::mt19937_64 rng(4);
  const auto loop = random_trig_loop(rng, false).loop();
  const auto phi = fundamental_solution(loop, 1.3);
  for (int i = 1; i <= 20; ++i) EXPECT_NEAR(phi(i / 20.0).determinant(), 1.0, 1e-9);
}

TEST(PeriodicSpectrum, ZeroCoefficient) {
  const auto s = periodic_spectrum(constant_loop(0.0), -7.0, 7.0);
  ASSERT_EQ(s.entries.size(), 3u);
  for (int k = -1; k <= 1; ++k) {
    const auto& e = s.entries[k + 1];
    EXPECT_NEAR(e.lambda, kTwoPi * k, 1e-8);
    EXPECT_EQ(e.winding, HalfInt(k));
    EXPECT_EQ(e.multiplicity, 2);
  }
}

TEST(PeriodicSpectrum, ConstantCoefficients) {
  for (double c : {0.4, 3.0, 9.42477796, -5.5}) {
    const auto s = periodic_spectrum(constant_loop(c), -15.0, 15.0);
    const auto expect = constant_eigenvalues(c, 1.0, -15.0, 15.0);
    ASSERT_EQ(s.entries.size(), expect.size()) << "c = " << c;
    for (std::size_t i = 0; i < expect.size(); ++i) {
      EXPECT_NEAR(s.entries[i].lambda, expect[i], 1e-8);
      EXPECT_EQ(s.entries[i].winding, HalfInt(std::llround((expect[i] + c) / kTwoPi)));
      EXPECT_EQ(s.entries[i].multiplicity, 2);
    }
    EXPECT_TRUE(check_slice(s).ok());
  }
}

TEST(PeriodicSpectrum, RandomLoopStructure) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 5; ++i) {
    const auto loop = random_trig_loop(rng, i % 2 == 0).loop();
    const auto s = periodic_spectrum(loop, -15.0, 15.0);
    const auto c = check_slice(s);
    EXPECT_TRUE(c.increasing);
    EXPECT_TRUE(c.monotone_winding);
    EXPECT_TRUE(c.multiplicities) << "loop " << i;
    for (const auto& e : s.entries) EXPECT_LE(e.multiplicity, 2);
  }
}

TEST(BoundarySpectrum, ConstantCoefficients) {
  for (double c : {0.4, 9.42477796, -2.0})
    for (Problem bc : {Problem::bc_I, Problem::bc_minus_I}) {
      const auto s = boundary_spectrum(constant_chord(c), bc, -15.0, 15.0);
      const auto expect = constant_eigenvalues(c, 1.0, -15.0, 15.0);
      ASSERT_EQ(s.entries.size(), expect.size());
      for (std::size_t i = 0; i < expect.size(); ++i) {
        EXPECT_NEAR(s.entries[i].lambda, expect[i], 1e-8);
        EXPECT_EQ(s.entries[i].winding, HalfInt::from_twice(std::llround((expect[i] + c) / kTwoPi)));
        EXPECT_EQ(s.entries[i].multiplicity, 1);
      }
      EXPECT_TRUE(check_slice(s).ok());
    }
}

TEST(BoundarySpectrum, UnionIsPeriodicSpectrum) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 3; ++i) {
    const auto loop = random_trig_loop(rng, true).loop();
    const auto per = periodic_spectrum(loop, -12.0, 12.0);
    auto a = boundary_spectrum(half_of(loop), Problem::bc_I, -12.0, 12.0).entries;
    const auto b = boundary_spectrum(half_of(loop), Problem::bc_minus_I, -12.0, 12.0).entries;
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end(), [](const auto& x, const auto& y) { return x.lambda < y.lambda; });
    std::vector<double> flat;
    for (const auto& e : per.entries)
      for (int m = 0; m < e.multiplicity; ++m) flat.push_back(e.lambda);
    ASSERT_EQ(flat.size(), a.size()) << "loop " << i;
    for (std::size_t k = 0; k < flat.size(); ++k) EXPECT_NEAR(flat[k], a[k].lambda, 1e-6);
    // each boundary eigenvalue carries half the periodic winding class
    EXPECT_TRUE(check_slice(boundary_spectrum(half_of(loop), Problem::bc_I, -12.0, 12.0)).ok());
  }
}

TEST(Winding, Examples) {
  EXPECT_EQ(winding_of(constant_loop(0.0).eval, 1.0, kTwoPi, Problem::periodic), HalfInt(1));
  const double c = kTwoPi * 1.5;
  for (int k = 0; k <= 2; ++k)
    EXPECT_EQ(winding_of(constant_chord(c).eval, 0.5, kTwoPi * (k - 1.5), Problem::bc_I), HalfInt::from_twice(k));
  EXPECT_THROW(winding_of(constant_loop(0.0).eval, 1.0, 1.0, Problem::periodic), PreconditionViolated);
}

TEST(MuSpec, ConstantExamples) {
  EXPECT_EQ(mu_spec(constant_loop(2.0)), HalfInt(1));
  EXPECT_EQ(mu_spec(constant_loop(kTwoPi * 1.5)), HalfInt(3));
  EXPECT_EQ(mu_spec(constant_loop(-1.0)), HalfInt(-1));
  EXPECT_THROW(mu_spec(constant_loop(kTwoPi)), DegenerateSpectrum);
}

TEST(MuI, ConstantExamples) {
  const auto d = constant_chord(kTwoPi * 1.5);
  EXPECT_EQ(mu_I(d), HalfInt::from_twice(3));
  EXPECT_EQ(mu_minus_I(d), HalfInt::from_twice(3));
  EXPECT_EQ(mu_I(constant_chord(2.5)), HalfInt::half());
  EXPECT_THROW(mu_I(constant_chord(kTwoPi)), KernelNonTrivial);
}

TEST(MuSpec, MatchesCrossingFormsOnRandomLoops) {
  std::mt19937_64 rng(10);
  int checked = 0;
  for (int i = 0; i < 12; ++i) {
    const auto in = make_instance(random_trig_loop(rng, false));
    try {
      EXPECT_EQ(mu_spec(in.s), cz_index(in.psi)) << "loop " << i;
      ++checked;
    } catch (const DegeneratePath&) {
    }
  }
  EXPECT_GE(checked, 10);
}

TEST(KernelTest, Examples) {
  // Psi = rotation by pi over [0, 1/2] comes from D = 2 pi
  auto r = kernel_test(rotation_path(kTwoPi, 0.5), constant_chord(kTwoPi));
  EXPECT_EQ(r.dim, 1);
  EXPECT_TRUE(r.agree);
  r = kernel_test(rotation_path(M_PI, 0.5), constant_chord(M_PI));
  EXPECT_EQ(r.dim, 0);
  EXPECT_TRUE(r.agree);
  std::mt19937_64 rng(14);
  for (int i = 0; i < 5; ++i) {
    const auto in = make_instance(random_trig_loop(rng, true));
    const auto k = kernel_test(restrict_path(in.psi, 0.5), half_of(in.s));
    EXPECT_EQ(k.dim, 0);
    EXPECT_TRUE(k.agree);
  }
}

TEST(IterateChord, Blocks) {
  std::mt19937_64 rng(15);
  const auto loop = random_trig_loop(rng, true).loop();
  const auto d = half_of(loop);
  EXPECT_EQ(iterate_chord_data(d, 1).half_T, d.half_T);
  const auto d3 = iterate_chord_data(d, 3);
  EXPECT_DOUBLE_EQ(d3.half_T, 1.5);
  for (double t : {0.1, 0.6, 0.95, 1.2, 1.49}) EXPECT_LE(max_abs(d3(t) - loop(t)), 1e-12);
  const BoundarySymmetricPath bad{0.5, [](double) {
                                    Mat2 m;
                                    m << 1.0, 0.3, 0.3, 1.0;
                                    return m;
                                  }};
  EXPECT_THROW(iterate_chord_data(bad, 2), SymmetryViolated);
}

TEST(IterateChord, DoubleChordIsFullLoop) {
  std::mt19937_64 rng(16);
  const auto loop = random_trig_loop(rng, true).loop();
  const auto d2 = iterate_chord_data(half_of(loop), 2);
  const SymmetricLoop again{d2.half_T, d2.eval, true};
  EXPECT_EQ(mu_spec(again), mu_spec(loop));
}

TEST(IterateChord, RotationFamilyWinding) {
  // constant c over [0, m/2]: mu_I = floor(m c / 2 pi) + 1/2
  for (double c : {-3.0, 2.0, 4.5, kTwoPi * 1.5})
    for (int m = 1; m <= 5; ++m) {
      const double x = m * c / kTwoPi;
      if (std::abs(x - std::round(x)) < 1e-6) continue;
      const auto dm = iterate_chord_data(constant_chord(c), m);
      EXPECT_EQ(mu_I(dm), HalfInt::from_twice(2 * static_cast<std::int64_t>(std::floor(x)) + 1))
          << "c = " << c << " m = " << m;
    }
}

TEST(IndexRelation, ClosedForms) {
  for (double c : {kTwoPi * 1.5, 0.5}) {
    const auto r = verify_index_relation(rotation_path(c, 1.0), constant_loop(c));
    EXPECT_TRUE(r.ok()) << r.failure;
  }
}

TEST(IndexRelation, RandomSymmetricLoops) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 6; ++i) {
    const auto in = make_instance(random_trig_loop(rng, true));
    EXPECT_TRUE(check_path(in.psi).ok);
    const auto r = verify_index_relation(in.psi, in.s);
    EXPECT_TRUE(r.ok()) << r.failure;
  }
}

TEST(NondegSplit, Rotations) {
  auto r = verify_nondeg_split(rotation_path(2.0 * M_PI, 1.0));
  EXPECT_EQ(r.kernel_dim, 2);
  EXPECT_TRUE(r.real_pair_degenerate);
  EXPECT_TRUE(r.imag_pair_degenerate);
  r = verify_nondeg_split(rotation_path(2.0 * M_PI / 3.0, 1.0));
  EXPECT_EQ(r.kernel_dim, 0);
  EXPECT_FALSE(r.real_pair_degenerate);
  EXPECT_FALSE(r.imag_pair_degenerate);
  EXPECT_TRUE(r.equivalence);
}

TEST(NondegSplit, RandomSymmetric) {
  std::mt19937_64 rng(18);
  for (int i = 0; i < 20; ++i) {
    const auto r = verify_nondeg_split(make_instance(random_trig_loop(rng, true)).psi);
    EXPECT_TRUE(r.equivalence);
    EXPECT_TRUE(r.blocks_consistent);
  }
}
