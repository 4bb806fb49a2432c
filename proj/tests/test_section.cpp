#include <cmath>
#include <complex>
#include <sstream>

#include <gtest/gtest.h>

#include "symreeb/section.hpp"

using namespace symreeb;

namespace {

constexpr double kR1 = 1.0, kR2 = 1.3;

// On the ellipsoid z_j -> e^{2 i t / r_j^2} z_j, so z2 returns to theta R+
// after pi r2^2 and the chart coordinate w = z1 / r1 turns by 2 pi r2^2 / r1^2.
Complex closed_form_return(Complex w, double r1, double r2) { return w * std::polar(1.0, 2.0 * M_PI * r2 * r2 / (r1 * r1)); }

Surface perturbed() { return Surface::ellipsoid(1.0, 1.3).plus({{2, 0, 2, 0}, 0.05}); }

}  // namespace

TEST(EllipsoidPage, ChartProperties) {
  const auto page = ellipsoid_page(kR1, kR2, 1.0);
  const auto c = check_page(page);
  EXPECT_LE(c.boundary_defect, 1e-6);
  EXPECT_LE(c.symmetry_defect, 1e-9);
  EXPECT_GT(c.min_transversality, 0.0);
  EXPECT_NEAR(c.min_transversality, 2.0 / (kR2 * kR2), 1e-9);
  EXPECT_GT(c.min_area_density, 0.0);
  EXPECT_TRUE(c.ok());
  for (double a : {0.0, 0.4, 2.0}) {
    const Complex w = std::polar(1.0, a);
    EXPECT_LT((page.point(w) - Vec4(kR1 * std::cos(a), kR1 * std::sin(a), 0, 0)).norm(), 1e-15);
    EXPECT_LT(std::abs(page.chart_of(page.point(0.7 * w)) - 0.7 * w), 1e-15);
    EXPECT_NEAR(page.surface.F(page.point(0.3 * w)), 1.0, 1e-15);
  }
}

TEST(EllipsoidPage, Errors) {
  EXPECT_THROW(ellipsoid_page(1.0, 1.0 + 1e-8, 1.0), DegenerateRatio);
  EXPECT_THROW(ellipsoid_page(1.0, 1.3, 1.1), InvalidSpec);
  const auto page = ellipsoid_page(kR1, kR2, 1.0);
  EXPECT_THROW(first_return(page, Complex(0.9995, 0.0)), EdgeTooClose);
  SectionOptions so;
  so.time_cap_factor = 0.5;
  EXPECT_THROW(first_return(page, Complex(0.2, 0.1), 1, so), EscapeTimeout);
}

TEST(FirstReturn, EllipsoidClosedForm) {
  const auto page = ellipsoid_page(kR1, kR2, 1.0);
  for (Complex w : {Complex(0.3, 0.2), Complex(-0.7, 0.1), Complex(0.0, -0.95), Complex(0.05, 0.0)}) {
    const Return r = first_return(page, w);
    EXPECT_NEAR(r.tau, M_PI * kR2 * kR2, 1e-8);
    EXPECT_LT(std::abs(r.w - closed_form_return(w, kR1, kR2)), 1e-8);
    const Return b = first_return(page, w, -1);
    EXPECT_NEAR(b.tau, M_PI * kR2 * kR2, 1e-8);
    EXPECT_LT(std::abs(b.w - w * std::polar(1.0, -2.0 * M_PI * kR2 * kR2 / (kR1 * kR1))), 1e-8);
  }
  const Return centre = first_return(page, Complex(0.0, 0.0));
  EXPECT_LT(std::abs(centre.w), 1e-9);
}

TEST(ReturnMap, EllipsoidReport) {
  const auto page = ellipsoid_page(kR1, kR2, 1.0);
  const auto rep = return_map_report(page);
  EXPECT_LE(rep.reversibility, 1e-6);
  EXPECT_LE(rep.tau_symmetry, 1e-6);
  EXPECT_LE(rep.chart_defect, 1e-6);
  EXPECT_GT(rep.min_image_gap, 1e-8);
  EXPECT_EQ(rep.quadrilaterals, 100);
  EXPECT_LE(rep.area_drift, 1e-4);
  for (const auto& s : rep.samples) {
    EXPECT_GT(s.forward.tau, 0.0);
    EXPECT_LT(std::abs(s.forward.w - closed_form_return(s.w, kR1, kR2)), 1e-8);
  }
  ASSERT_EQ(rep.fixed_points.size(), 1u);
  const auto& fp = rep.fixed_points[0];
  EXPECT_TRUE(fp.symmetric);
  EXPECT_LT((fp.x - Vec4(0, 0, kR2, 0)).norm(), 1e-6);  // the orbit P2 meets the page here
  std::ostringstream csv, svg;
  write_return_csv(csv, rep);
  write_return_svg(svg, rep);
  EXPECT_EQ(csv.str().rfind("x_chart,y_chart,fx,fy,tau\n", 0), 0u);
  EXPECT_NE(svg.str().find("<svg"), std::string::npos);
}

TEST(PageArea, EqualsSpanningPeriod) {
  EXPECT_NEAR(page_area(ellipsoid_page(1.0, 1.3, 1.0)).area, M_PI, 1e-4 * M_PI);
  EXPECT_NEAR(page_area(ellipsoid_page(0.8, 1.1, 1.0)).area, M_PI * 0.64, 1e-4 * M_PI * 0.64);
  EXPECT_NEAR(page_area(ellipsoid_page(1.0, 1.3, Complex(0, 1))).area, page_area(ellipsoid_page(1.0, 1.3, 1.0)).area,
              1e-4);
  const auto cp = continuation_page(perturbed(), 1.0, 1.3, 1.0);
  EXPECT_NEAR(page_area(cp).area, cp.spanning.T, 1e-4 * cp.spanning.T);
}

TEST(OpenBook, EllipsoidSymmetry) {
  const auto page = ellipsoid_page(kR1, kR2, 1.0);
  const auto ob = open_book(page);
  ASSERT_EQ(ob.thetas.size(), 9u);
  EXPECT_LE(ob.max_symmetry(), 1e-6);
  EXPECT_LE(ob.invariance_zero, 1e-6);
  EXPECT_LE(ob.invariance_half, 1e-6);
  for (double d : ob.page_defect) EXPECT_LE(d, 1e-6);
}

TEST(OpenBook, EllipsoidFamilyPointwise) {
  // constant return time: Phi(theta, u_1(w)) = u_{e^{2 pi i theta}}(w e^{2 pi i theta r2^2 / r1^2})
  const auto page = ellipsoid_page(kR1, kR2, 1.0);
  const double tau = M_PI * kR2 * kR2;
  for (double th : {0.3, 0.7})
    for (Complex w : {Complex(0.1, 0.5), Complex(-0.6, -0.2)}) {
      const Vec4 x = flow(page.surface, page.point(w), th * tau);
      const auto rotated = ellipsoid_page(kR1, kR2, std::polar(1.0, 2.0 * M_PI * th));
      const Vec4 expect = rotated.point(w * std::polar(1.0, 2.0 * M_PI * th * kR2 * kR2 / (kR1 * kR1)));
      EXPECT_LT((x - expect).norm(), 1e-6);
    }
}

TEST(ContinuationPage, PerturbedSurface) {
  const auto cp = continuation_page(perturbed(), 1.0, 1.3, 1.0);
  EXPECT_NEAR(cp.spanning.T, M_PI, 1e-9);  // the z2 = 0 circle is unchanged by x1^2 x2^2
  EXPECT_LE(cp.spanning.residual, 1e-7);
  const auto c = check_page(cp);
  EXPECT_TRUE(c.ok());
  const auto rep = return_map_report(cp);
  EXPECT_LE(rep.reversibility, 1e-6);
  EXPECT_LE(rep.tau_symmetry, 1e-6);
  EXPECT_LE(rep.area_drift, 1e-4);
  ASSERT_FALSE(rep.fixed_points.empty());
  bool symmetric = false;
  for (const auto& f : rep.fixed_points) symmetric = symmetric || f.symmetric;
  EXPECT_TRUE(symmetric);
  const auto idx = orbit_indices(linearized_flow(cp.surface, cp.spanning), 1);
  EXPECT_TRUE(idx.mu_cz == HalfInt(3) || idx.mu_cz == HalfInt(4));
}

TEST(ContinuationPage, RejectsSurfaceWithoutBindingCircle) {
  // x1 x2 couples the planes, so z2 = 0 is no longer invariant
  EXPECT_THROW(continuation_page(Surface::ellipsoid(1.0, 1.3).plus({{1, 0, 1, 0}, 0.05}), 1.0, 1.3, 1.0),
               TransversalityFailure);
}
