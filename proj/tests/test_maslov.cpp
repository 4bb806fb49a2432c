#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "symreeb/maslov.hpp"

using namespace symreeb;

namespace {

// Index of a line path at angle theta(t) against the line at angle phi,
// counted directly: with u = (theta - phi)/pi each integer passed counts
// +-1 and integer endpoints count +-1/2, so mu = h(u(T)) - h(u(0)) with
// h(x) = (floor x + ceil x)/2.
HalfInt line_oracle(double theta0, double theta1, double phi) {
  auto h2 = [](double x) {
    const double r = std::round(x);
    if (std::abs(x - r) < 1e-12) return static_cast<std::int64_t>(2 * r);
    return static_cast<std::int64_t>(std::floor(x) + std::ceil(x));
  };
  return HalfInt::from_twice(h2((theta1 - phi) / M_PI) - h2((theta0 - phi) / M_PI));
}

int cz_rotation_oracle(double c) { return 2 * static_cast<int>(std::floor(c / (2.0 * M_PI))) + 1; }

}  // namespace

TEST(RsIndex, QuarterTurn) {
  const auto r = rs_index<2>(rotating_line(0.0, M_PI / 4, real_axis()), real_axis());
  EXPECT_EQ(r.index, HalfInt::half());
  ASSERT_EQ(r.report.crossings.size(), 1u);
  EXPECT_TRUE(r.report.at_start);
  EXPECT_FALSE(r.report.at_end);
  EXPECT_EQ(r.report.crossings[0].signature, 1);
}

TEST(RsIndex, HalfTurnCountsBothEndpoints) {
  const auto r = rs_index<2>(rotating_line(0.0, M_PI, real_axis()), real_axis());
  EXPECT_EQ(r.index, HalfInt(1));
  EXPECT_TRUE(r.report.at_start);
  EXPECT_TRUE(r.report.at_end);
}

TEST(RsIndex, ConstantPathRejected) {
  const LinePath still{1.0, [](double) { return FrameBasis<2>(Vec2(1.0, 0.0)); }};
  EXPECT_THROW(rs_index<2>(still, real_axis()), DegenerateCrossing);
}

TEST(RsIndex, MatchesLineOracleOnRandomPaths) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 40; ++i) {
    const double a = 6.0 * u(rng), b = 1.2 * u(rng), t0 = M_PI * u(rng), phi = M_PI * u(rng);
    auto theta = [=](double t) { return t0 + a * t + b * std::sin(3.0 * t); };
    const LinePath p{1.5, [theta](double t) { return FrameBasis<2>(Vec2(std::cos(theta(t)), std::sin(theta(t)))); }};
    try {
      const auto r = rs_index<2>(p, line_at_angle(phi));
      EXPECT_EQ(r.index, line_oracle(theta(0.0), theta(1.5), phi)) << "instance " << i;
      for (const auto& c : r.report.crossings)
        EXPECT_EQ(lagrangian_intersection_dim<2>(Line{p(c.t)}, line_at_angle(phi), 1e-6), c.dim);
      ++checked;
    } catch (const DegenerateCrossing&) {
    }
  }
  EXPECT_GE(checked, 36);
}

TEST(RsIndex, CrossingTimesIncreaseAndSignaturesBounded) {
  const auto r = rs_index<2>(rotating_line(0.1, 7.0, real_axis()), line_at_angle(0.5));
  for (std::size_t i = 1; i < r.report.crossings.size(); ++i)
    EXPECT_LT(r.report.crossings[i - 1].t, r.report.crossings[i].t);
  for (const auto& c : r.report.crossings) EXPECT_LE(std::abs(c.signature), 1);
}

TEST(CzIndex, NormalizationAnchor) {
  EXPECT_EQ(cz_index(rotation_path(2.0 * M_PI * 1.5, 1.0)), HalfInt(3));
  const auto rep = cz_index_report(rotation_path(2.0 * M_PI * 1.5, 1.0));
  ASSERT_EQ(rep.report.crossings.size(), 2u);
  EXPECT_NEAR(rep.report.crossings[1].t, 2.0 / 3.0, 1e-9);
  EXPECT_EQ(rep.report.crossings[0].signature, 2);
  EXPECT_EQ(rep.report.crossings[1].signature, 2);
}

TEST(CzIndex, SmallRotation) { EXPECT_EQ(cz_index(rotation_path(0.5, 1.0)), HalfInt(1)); }

TEST(CzIndex, Hyperbolic) {
  const auto rep = cz_index_report(hyperbolic_path(1.0, 1.0));
  EXPECT_EQ(rep.index, HalfInt(0));
  ASSERT_EQ(rep.report.crossings.size(), 1u);
  EXPECT_EQ(rep.report.crossings[0].signature, 0);
}

TEST(CzIndex, RotationSweep) {
  for (double c : {0.3, 1.0, 3.0, 6.4, 9.5, 12.7, -0.4, -7.0})
    EXPECT_EQ(cz_index(rotation_path(c, 1.0)), HalfInt(cz_rotation_oracle(c))) << "c = " << c;
}

// diag(e^{at}, e^{-at}) e^{b J0 t} passes close to the identity near t = 2 pi k / b,
// where a pair of crossings lies much closer than the scan spacing. While
// cos(bT) < 0 the endpoint stays elliptic for all a, so the index equals the
// a = 0 rotation value.
TEST(CzIndex, CloseCrossingPairsNearIdentity) {
  for (double turns : {1.3, 2.4, 3.6})
    for (double a : {0.002, 0.0005})
      for (int scan : {2048, 256}) {
        RsOptions o;
        o.scan_points = scan;
        const auto rep = cz_index_report(hyperbolic_path(a, 1.0, 2.0 * M_PI * turns), o);
        EXPECT_EQ(rep.index, HalfInt(cz_rotation_oracle(2.0 * M_PI * turns)))
            << "turns " << turns << " a " << a << " scan " << scan;
      }
}

TEST(CzIndex, DegenerateEndRejected) {
  EXPECT_THROW(cz_index(rotation_path(2.0 * M_PI, 1.0)), DegeneratePath);
  const SymplecticPath shifted{1.0, [](double t) { return Mat2(rotation(0.3 + t)); }};
  EXPECT_THROW(cz_index(shifted), PreconditionViolated);
}

TEST(CzIndex, InvariantUnderReparametrization) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> w(-0.9, 0.9);
  const SymplecticPath base{1.0, [](double t) {
                              Mat2 d = Mat2::Zero();
                              d(0, 0) = std::exp(0.8 * std::sin(3.0 * t));
                              d(1, 1) = 1.0 / d(0, 0);
                              return Mat2(rotation(7.5 * t) * d);
                            }};
  const HalfInt ref = cz_index(base);
  for (int i = 0; i < 10; ++i) {
    const double a = w(rng);
    const SymplecticPath warped{1.0, [base, a](double t) { return base(t + a / M_PI * std::sin(M_PI * t)); }};
    EXPECT_EQ(cz_index(warped), ref);
  }
}

TEST(Hormander, RotationIsZero) {
  EXPECT_EQ(hormander_index(rotation_path(2.0, 0.5)), HalfInt(0));
  EXPECT_EQ(hormander_index(rotation_path(9.0, 0.5)), HalfInt(0));
}

TEST(Hormander, HyperbolicWithTwistInRange) {
  // diag(e^t, e^-t) e^{0.1 J0 t} on [0, 1]: R stays transverse after t = 0
  // while iR rotates the other way, giving the two half contributions
  const HalfInt h = hormander_index(hyperbolic_path(1.0, 1.0, 0.1));
  EXPECT_EQ(h, HalfInt(0));
}

TEST(Hormander, DegeneratePairRejected) {
  EXPECT_THROW(hormander_index(rotation_path(M_PI, 1.0)), DegeneratePair);
}

TEST(RsAxioms, RandomSuite) {
  const auto rep = verify_rs_axioms(random_rs_instances(3, 40));
  for (const Tally* t : {&rep.maslov, &rep.reversal, &rep.naturality, &rep.homotopy, &rep.catenation}) {
    EXPECT_TRUE(t->ok()) << t->name << " failed " << t->failed;
    EXPECT_LE(t->skipped, 4) << t->name;
  }
}

TEST(RsAxioms, Examples) {
  const auto quarter = rotating_line(0.0, M_PI / 4, real_axis());
  EXPECT_EQ(rs_index<2>(reversed(quarter), real_axis()).index, -HalfInt::half());
  const auto whole = rotating_line(0.0, M_PI, real_axis());
  EXPECT_EQ(rs_index<2>(concatenated(rotating_line(0.0, M_PI / 2, real_axis()),
                                     rotating_line(M_PI / 2, M_PI, real_axis())),
                        real_axis())
                .index,
            rs_index<2>(whole, real_axis()).index);
  EXPECT_EQ(rs_index<2>(whole, line_at_angle(0.7)).index, HalfInt(1));
}

TEST(LoopProps, FullRotation) {
  const auto gamma = rotation_path(2.0 * M_PI, 1.0);
  const LinePath lambda{1.0, [](double t) { return FrameBasis<2>(rotation(t / 4.0) * Vec2(1, 0)); }};
  const auto rep = verify_loop_props(gamma, lambda, real_axis(), conj_i());
  EXPECT_TRUE(rep.loop_identity);
  EXPECT_EQ(rep.index_lambda, HalfInt::half());
  EXPECT_EQ(rep.index_gamma_v, HalfInt(2));
  ASSERT_TRUE(rep.half_index.has_value());
  EXPECT_EQ(*rep.half_index, HalfInt(1));
  EXPECT_TRUE(rep.half_identity);
}

TEST(LoopProps, IdentityLoop) {
  const SymplecticPath one{1.0, [](double) { return Mat2(Mat2::Identity()); }};
  const LinePath lambda{1.0, [](double t) { return FrameBasis<2>(rotation(t / 4.0) * Vec2(1, 0)); }};
  const auto rep = verify_loop_props(one, lambda, real_axis());
  EXPECT_EQ(rep.lhs, rep.index_lambda);
  EXPECT_EQ(rep.index_gamma_v, HalfInt(0));
  EXPECT_TRUE(rep.loop_identity);
}

TEST(LoopProps, PreconditionsReported) {
  const LinePath lambda{1.0, [](double t) { return FrameBasis<2>(rotation(t / 4.0) * Vec2(1, 0)); }};
  EXPECT_THROW(verify_loop_props(rotation_path(1.0, 1.0), lambda, real_axis()), PreconditionViolated);
}
