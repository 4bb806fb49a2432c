#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>

#include "orbits.hpp"
#include "parallel.hpp"
#include "surface.hpp"

namespace symreeb {

using Complex = std::complex<double>;

struct SectionOptions {
  double delta_edge = 1e-3;      // excluded band near the binding orbit (chart units)
  double time_cap_factor = 50.0; // returns must happen before this many spanning periods
  double time_tol = 1e-9;
  double max_step = 0.05;        // keeps phase increments per step far below pi
  int jobs = 1;
};

/// Disk page {arg(z2 conj(theta)) = 0} of M spanned by the orbit in z2 = 0.
/// The chart is w -> (r1 w, r2 theta sqrt(1 - |w|^2)) on the closed unit disk,
/// projected radially onto M; on the ellipsoid with these radii it is exact.
struct DiskPage {
  Surface surface;
  Complex theta{1.0, 0.0};
  std::array<double, 2> radii{1.0, 1.0};
  ReebOrbit spanning;
  bool continuation = false;  // chart projected from the reference ellipsoid

  Vec4 chart_raw(Complex w) const {
    const double m = std::sqrt(std::max(0.0, 1.0 - std::norm(w)));
    const Complex z2 = radii[1] * theta * m;
    return {radii[0] * w.real(), radii[0] * w.imag(), z2.real(), z2.imag()};
  }

  Vec4 point(Complex w) const {
    const Vec4 u = chart_raw(w);
    return continuation ? radial_point(surface, u) : u;
  }

  /// Inverse of the chart for points on the page.
  Complex chart_of(const Vec4& x) const {
    const Complex z1(x(0), x(1)), z2(x(2), x(3));
    const double s = std::sqrt(std::norm(z1) / (radii[0] * radii[0]) + std::norm(z2) / (radii[1] * radii[1]));
    return z1 / (s * radii[0]);
  }

  /// Angle of z2 measured from theta, in (-pi, pi].
  double phase(const Vec4& x) const { return std::arg(Complex(x(2), x(3)) * std::conj(theta)); }

  /// Signed distance-like residual of x from the page.
  double page_defect(const Vec4& x) const {
    const Complex z2(x(2), x(3));
    return std::abs(s_defect(x)) + std::abs(z2) * std::abs(phase(x));
  }

  bool rho_invariant() const { return std::abs(theta.imag()) < 1e-12 && surface.symmetric(); }

 private:
  double s_defect(const Vec4& x) const { return surface.F(x) - 1.0; }
};

namespace detail {

inline ReebOrbit binding_orbit(const Surface& s, double r1) {
  ReebOrbit o;
  o.start = radial_point(s, Vec4(r1, 0.0, 0.0, 0.0));
  // the z2 = 0 plane must be invariant: grad F has no z2 component there
  double leak = 0.0;
  ode::Options opt = flow_options();
  opt.max_step = 0.05;
  std::vector<double> ts, angle;
  double unwrapped = 0.0, last = 0.0;
  bool first = true;
  const double cap = 50.0;
  flow_observed(
      s, o.start, cap,
      [&](double t, const Vec4& x) {
        leak = std::max(leak, std::hypot(x(2), x(3)));
        const double a = std::atan2(x(1), x(0));
        if (first) {
          first = false;
          last = a;
        }
        double d = a - last;
        d -= 2.0 * M_PI * std::round(d / (2.0 * M_PI));
        unwrapped += d;
        last = a;
        ts.push_back(t);
        angle.push_back(unwrapped);
      },
      opt);
  if (leak > 1e-9) throw TransversalityFailure("the plane z2 = 0 is not invariant; no binding orbit");
  std::size_t k = 0;
  while (k < angle.size() && angle[k] < 2.0 * M_PI) ++k;
  if (k == 0 || k == angle.size()) throw EscapeTimeout("binding orbit does not close");
  auto g = [&](double t) {
    const Vec4 x = flow(s, o.start, t);
    double a = std::atan2(x(1), x(0));
    if (a < 0.0) a += 2.0 * M_PI;
    return a < M_PI ? a : a - 2.0 * M_PI;  // zero at the full turn
  };
  std::uintmax_t it = 100;
  const auto r = boost::math::tools::toms748_solve(g, ts[k - 1] + 0.0, ts[k], boost::math::tools::eps_tolerance<double>(44), it);
  o.T = 0.5 * (r.first + r.second);
  o.symmetric = s.symmetric();
  o.residual = (flow(s, o.start, o.T) - o.start).norm();
  o.floquet = multipliers(transverse_monodromy(s, o));
  o.degenerate = near_one(o.floquet);
  return o;
}

}  // namespace detail

/// Page D_theta of the ellipsoid with radii (r1, r2).
inline DiskPage ellipsoid_page(double r1, double r2, Complex theta) {
  if (!(r1 > 0.0 && r2 > 0.0)) throw InvalidSpec("radii must be positive");
  if (std::abs(std::abs(theta) - 1.0) > 1e-12) throw InvalidSpec("theta must have modulus 1");
  if (std::abs(r1 - r2) < 1e-6) throw DegenerateRatio("r1 = r2: every orbit is closed and the return map is the identity");
  DiskPage p;
  p.surface = Surface::ellipsoid(r1, r2);
  p.theta = theta;
  p.radii = {r1, r2};
  p.spanning.start = Vec4(r1, 0.0, 0.0, 0.0);
  p.spanning.T = M_PI * r1 * r1;
  p.spanning.symmetric = true;
  p.spanning.residual = 0.0;
  const double a = 2.0 * M_PI * r1 * r1 / (r2 * r2);
  p.spanning.floquet = {Complex(std::cos(a), std::sin(a)), Complex(std::cos(a), -std::sin(a))};
  p.spanning.degenerate = near_one(p.spanning.floquet);
  return p;
}

/// Page on a perturbed surface, obtained by projecting the chart of the
/// reference ellipsoid (r1, r2) radially onto M. Transversality is not
/// implied; check_page certifies it on probes.
inline DiskPage continuation_page(const Surface& s, double r1, double r2, Complex theta) {
  DiskPage p = ellipsoid_page(r1, r2, theta);
  p.surface = s;
  p.continuation = true;
  p.spanning = detail::binding_orbit(s, r1);
  return p;
}

struct PageCheck {
  double boundary_defect = 0.0;  // chart boundary vs spanning orbit
  double symmetry_defect = 0.0;  // |rho u(w) - u(conj w)| for rho-invariant pages
  double min_transversality = 0.0;  // min d(phase)/dt at interior probes
  double min_area_density = 0.0;    // min dlambda(d_x u, d_y u) at interior probes
  bool ok() const { return boundary_defect <= 1e-6 && symmetry_defect <= 1e-9 && min_transversality > 0.0 && min_area_density > 0.0; }
};

inline PageCheck check_page(const DiskPage& page, int probes = 200, std::uint64_t seed = 1) {
  PageCheck c;
  // boundary: the chart at |w| = 1 traces the binding orbit
  for (int i = 0; i < 32; ++i) {
    const double t = page.spanning.T * i / 32.0;
    const Vec4 x = flow(page.surface, page.spanning.start, t);
    const Complex w = page.chart_of(x);
    c.boundary_defect = std::max(c.boundary_defect, (page.point(w / std::abs(w)) - x).norm());
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  c.min_transversality = std::numeric_limits<double>::infinity();
  c.min_area_density = std::numeric_limits<double>::infinity();
  for (int i = 0; i < probes;) {
    const Complex w(u(rng), u(rng));
    if (std::abs(w) > 0.999) continue;
    ++i;
    const Vec4 x = page.point(w);
    const Vec4 v = reeb_field(page.surface, x);
    const double r2 = x(2) * x(2) + x(3) * x(3);
    c.min_transversality = std::min(c.min_transversality, (x(2) * v(3) - x(3) * v(2)) / r2);
    const double h = 1e-6;
    const Vec4 dx = (page.point(w + h) - page.point(w - h)) / (2.0 * h);
    const Vec4 dy = (page.point(w + Complex(0, h)) - page.point(w - Complex(0, h))) / (2.0 * h);
    c.min_area_density = std::min(c.min_area_density, ambient_w(dx, dy));
    if (page.rho_invariant()) c.symmetry_defect = std::max(c.symmetry_defect, (rho(x) - page.point(std::conj(w))).norm());
  }
  return c;
}

// ---------------------------------------------------------------------------
// first return

struct Return {
  Vec4 image = Vec4::Zero();
  Complex w;
  double tau = 0.0;
};

/// First crossing of the page by the flow from x (direction +1) or by the
/// backward flow (-1), located by the unwrapped phase of z2 reaching 2 pi.
inline Return first_return(const DiskPage& page, const Vec4& x, int direction = 1, const SectionOptions& so = {}) {
  const Complex w0 = page.chart_of(x);
  if (1.0 - std::abs(w0) < so.delta_edge)
    throw EdgeTooClose("point within " + std::to_string(so.delta_edge) + " of the binding orbit");
  const double dir = direction >= 0 ? 1.0 : -1.0;
  const double cap = so.time_cap_factor * page.spanning.T;
  const double chunk = 0.5 * page.spanning.T;
  ode::Options opt = flow_options();
  opt.max_step = so.max_step;

  Vec4 cur = x;
  double t_cur = 0.0, acc = 0.0, last = page.phase(x);
  while (std::abs(t_cur) < cap) {
    std::vector<double> ts;
    std::vector<Vec4> xs;
    std::vector<double> ph;
    const Vec4 start = cur;
    const double t_start = t_cur;
    bool found = false;
    flow_observed(
        page.surface, start, dir * chunk,
        [&](double t, const Vec4& y) {
          if (found) return;
          const double p = page.phase(y);
          double d = p - last;
          d -= 2.0 * M_PI * std::round(d / (2.0 * M_PI));
          last = p;
          acc += d;
          ts.push_back(t);
          xs.push_back(y);
          ph.push_back(acc);
          if (dir * acc >= 2.0 * M_PI) found = true;
          if (dir * acc <= -2.0 * M_PI) throw TransversalityFailure("flow crosses the page negatively");
        },
        opt);
    if (found) {
      const std::size_t k = ph.size() - 1;
      if (k == 0) throw TransversalityFailure("crossing at the chunk start");
      // bracket [ts[k-1], ts[k]] relative to the chunk start
      const Vec4 base = xs[k - 1];
      const double base_phase = ph[k - 1];
      auto g = [&](double s) {
        const Vec4 y = flow(page.surface, base, s, opt);
        double d = page.phase(y) - page.phase(base);
        d -= 2.0 * M_PI * std::round(d / (2.0 * M_PI));
        return dir * (base_phase + d) - 2.0 * M_PI;
      };
      double lo = 0.0, hi = ts[k] - ts[k - 1];
      while (std::abs(hi - lo) > so.time_tol) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) < 0.0 ? lo : hi) = mid;
      }
      const double s = 0.5 * (lo + hi);
      Return r;
      r.image = flow(page.surface, base, s, opt);
      r.tau = std::abs(t_start + ts[k - 1] + s);
      r.w = page.chart_of(r.image);
      return r;
    }
    cur = xs.back();
    t_cur = t_start + ts.back();
    last = page.phase(cur);
  }
  throw EscapeTimeout("no return within " + std::to_string(cap));
}

inline Return first_return(const DiskPage& page, Complex w, int direction = 1, const SectionOptions& so = {}) {
  if (1.0 - std::abs(w) < so.delta_edge)
    throw EdgeTooClose("point within " + std::to_string(so.delta_edge) + " of the binding orbit");
  return first_return(page, page.point(w), direction, so);
}

// ---------------------------------------------------------------------------
// return map report

struct ReturnSample {
  Complex w;
  Return forward;
  Return backward;
};

struct FixedPoint {
  Complex w;
  Vec4 x = Vec4::Zero();
  double residual = 0.0;  // |f(x) - x|
  bool symmetric = false;
};

struct ReturnMapReport {
  std::vector<ReturnSample> samples;
  double reversibility = 0.0;   // max |f(rho x) - rho f^{-1}(x)|
  double tau_symmetry = 0.0;    // max |tau(x) - tau(rho f(x))|
  double chart_defect = 0.0;    // max page defect of the images
  double min_image_gap = 0.0;   // min distance between images (injectivity)
  double area_drift = 0.0;      // max relative change of dlambda-area over quadrilaterals
  int quadrilaterals = 0;
  std::vector<FixedPoint> fixed_points;
};

/// Points of an n x n grid over [-1, 1]^2 inside the disk of radius 1 - delta.
inline std::vector<Complex> disk_grid(int n, double delta) {
  std::vector<Complex> g;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex w(-1.0 + (2.0 * j + 1.0) / n, -1.0 + (2.0 * i + 1.0) / n);
      if (std::abs(w) <= 1.0 - delta) g.push_back(w);
    }
  return g;
}

/// dlambda-area enclosed by a closed polygon of points on M: the line
/// integral of lambda = w(p, dp)/2 along the chords.
inline double polygon_area(const std::vector<Vec4>& pts) {
  double a = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) a += 0.5 * ambient_w(pts[i], pts[(i + 1) % pts.size()]);
  return a;
}

namespace detail {

inline Complex return_chart(const DiskPage& page, Complex w, const SectionOptions& so) {
  return first_return(page, w, 1, so).w;
}

/// Newton on f(w) - w in chart coordinates with a centred-difference Jacobian.
inline std::optional<Complex> newton_fixed_point(const DiskPage& page, Complex w, const SectionOptions& so) {
  for (int it = 0; it < 30; ++it) {
    if (1.0 - std::abs(w) < so.delta_edge) return std::nullopt;
    const Complex g = return_chart(page, w, so) - w;
    if (std::abs(g) < 1e-11) return w;
    const double h = 1e-6;
    auto G = [&](Complex z) { return return_chart(page, z, so) - z; };
    const Complex gx = (G(w + h) - G(w - h)) / (2.0 * h);
    const Complex gy = (G(w + Complex(0, h)) - G(w - Complex(0, h))) / (2.0 * h);
    Mat2 j;
    j << gx.real(), gy.real(), gx.imag(), gy.imag();
    const Vec2 step = j.colPivHouseholderQr().solve(Vec2(-g.real(), -g.imag()));
    if (!step.allFinite()) return std::nullopt;
    w += Complex(step(0), step(1));
  }
  return std::abs(return_chart(page, w, so) - w) < 1e-9 ? std::optional<Complex>(w) : std::nullopt;
}

}  // namespace detail

struct ReturnMapOptions {
  int grid = 20;
  int quadrilaterals = 100;
  double quad_size = 0.05;
  int quad_edge_points = 16;
  int seed_grid = 11;
  std::uint64_t seed = 1;
  bool find_fixed_points = true;
};

inline ReturnMapReport return_map_report(const DiskPage& page, const ReturnMapOptions& ro = {},
                                         const SectionOptions& so = {}) {
  ReturnMapReport rep;
  const auto grid = disk_grid(ro.grid, so.delta_edge);
  rep.samples = parallel_map(grid.size(), so.jobs, [&](std::size_t i) {
    ReturnSample s;
    s.w = grid[i];
    s.forward = first_return(page, grid[i], 1, so);
    s.backward = first_return(page, grid[i], -1, so);
    return s;
  });
  rep.min_image_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    rep.chart_defect = std::max(rep.chart_defect, page.page_defect(rep.samples[i].forward.image));
    rep.chart_defect = std::max(rep.chart_defect,
                                (page.point(rep.samples[i].forward.w) - rep.samples[i].forward.image).norm());
    for (std::size_t j = 0; j < i; ++j)
      rep.min_image_gap = std::min(rep.min_image_gap, (rep.samples[i].forward.image - rep.samples[j].forward.image).norm());
  }

  if (page.rho_invariant()) {
    // f(rho x) = rho f^{-1}(x): grid is conj-symmetric, so rho x is a sample too
    const auto extra = parallel_map(rep.samples.size(), so.jobs, [&](std::size_t i) {
      const auto& s = rep.samples[i];
      const Return fr = first_return(page, rho(page.point(s.w)), 1, so);
      const Return back = first_return(page, rho(s.forward.image), 1, so);
      return std::array<double, 2>{(fr.image - rho(s.backward.image)).norm(), std::abs(s.forward.tau - back.tau)};
    });
    for (const auto& e : extra) {
      rep.reversibility = std::max(rep.reversibility, e[0]);
      rep.tau_symmetry = std::max(rep.tau_symmetry, e[1]);
    }
  }

  // dlambda-areas of small quadrilaterals and of their images
  std::mt19937_64 rng(ro.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> centres;
  const double reach = 1.0 - so.delta_edge - ro.quad_size;
  while (static_cast<int>(centres.size()) < ro.quadrilaterals) {
    const Complex c(u(rng), u(rng));
    if (std::abs(c) <= reach - 0.1) centres.push_back(c);
  }
  const auto drifts = parallel_map(centres.size(), so.jobs, [&](std::size_t q) {
    std::vector<Complex> loop;
    const double h = 0.5 * ro.quad_size;
    const Complex corners[4] = {centres[q] + Complex(-h, -h), centres[q] + Complex(h, -h),
                                centres[q] + Complex(h, h), centres[q] + Complex(-h, h)};
    for (int e = 0; e < 4; ++e)
      for (int k = 0; k < ro.quad_edge_points; ++k)
        loop.push_back(corners[e] + (corners[(e + 1) % 4] - corners[e]) * (static_cast<double>(k) / ro.quad_edge_points));
    std::vector<Vec4> src, img;
    for (const Complex& w : loop) {
      src.push_back(page.point(w));
      img.push_back(first_return(page, w, 1, so).image);
    }
    const double a = polygon_area(src), b = polygon_area(img);
    return std::abs(b - a) / std::abs(a);
  });
  rep.quadrilaterals = static_cast<int>(drifts.size());
  for (double d : drifts) rep.area_drift = std::max(rep.area_drift, d);

  if (ro.find_fixed_points) {
    std::vector<Complex> seeds = disk_grid(ro.seed_grid, so.delta_edge + 0.05);
    // on a rho-invariant page, symmetric fixed points lie on the real diameter
    // and are zeros of Im f(s); bracket them on a 1-D scan
    if (page.rho_invariant()) {
      const int n = 41;
      const double edge = 1.0 - so.delta_edge - 0.01;
      std::vector<double> ss, im;
      for (int i = 0; i < n; ++i) {
        ss.push_back(-edge + 2.0 * edge * i / (n - 1));
        im.push_back(detail::return_chart(page, Complex(ss.back(), 0.0), so).imag());
      }
      for (int i = 0; i + 1 < n; ++i) {
        if (im[i] == 0.0 || im[i] * im[i + 1] < 0.0) {
          auto g = [&](double s) { return detail::return_chart(page, Complex(s, 0.0), so).imag(); };
          std::uintmax_t it = 60;
          const auto r = im[i] == 0.0 ? std::pair<double, double>{ss[i], ss[i]}
                                      : boost::math::tools::toms748_solve(
                                            g, ss[i], ss[i + 1], im[i], im[i + 1],
                                            boost::math::tools::eps_tolerance<double>(40), it);
          seeds.insert(seeds.begin(), Complex(0.5 * (r.first + r.second), 0.0));
        }
      }
    }
    const auto sols = parallel_map(seeds.size(), so.jobs, [&](std::size_t i) -> std::optional<Complex> {
      try {
        return detail::newton_fixed_point(page, seeds[i], so);
      } catch (const Error&) {
        return std::nullopt;
      }
    });
    for (const auto& s : sols) {
      if (!s) continue;
      bool dup = false;
      for (const auto& f : rep.fixed_points)
        if (std::abs(f.w - *s) < 1e-6) dup = true;
      if (dup) continue;
      FixedPoint fp;
      fp.w = *s;
      fp.x = page.point(*s);
      fp.residual = (first_return(page, fp.x, 1, so).image - fp.x).norm();
      fp.symmetric = page.rho_invariant() && (rho(fp.x) - fp.x).norm() < 1e-6;
      rep.fixed_points.push_back(fp);
    }
    std::sort(rep.fixed_points.begin(), rep.fixed_points.end(), [](const FixedPoint& a, const FixedPoint& b) {
      return a.w.real() != b.w.real() ? a.w.real() < b.w.real() : a.w.imag() < b.w.imag();
    });
  }
  return rep;
}

// ---------------------------------------------------------------------------
// area

struct AreaResult {
  double area = 0.0;
  double error = 0.0;
};

/// Integral of dlambda over the page. The chart is used in the form
/// w = sin(beta) e^{i phi}, which removes the square-root singularity at the
/// boundary; phi by the periodic trapezoid rule, beta by adaptive
/// Gauss-Kronrod.
inline AreaResult page_area(const DiskPage& page, double rel_tol = 1e-5) {
  const auto& s = page.surface;
  const double r1 = page.radii[0], r2 = page.radii[1];
  auto density = [&](double beta, double phi) {
    const Complex e(std::cos(phi), std::sin(phi));
    const Complex z1 = r1 * std::sin(beta) * e, z2 = r2 * page.theta * std::cos(beta);
    const Vec4 u(z1.real(), z1.imag(), z2.real(), z2.imag());
    const Complex d1b = r1 * std::cos(beta) * e, d2b = -r2 * page.theta * std::sin(beta);
    const Complex d1p = Complex(0, 1) * z1;
    const Vec4 ub(d1b.real(), d1b.imag(), d2b.real(), d2b.imag());
    const Vec4 up(d1p.real(), d1p.imag(), 0.0, 0.0);
    if (!page.continuation) return ambient_w(ub, up);
    const Vec4 p = radial_point(s, u);
    const double k = p.norm() / u.norm();
    const Vec4 g = s.grad(p);
    const double gu = g.dot(u);
    const Vec4 pb = k * ub - k * (g.dot(ub) / gu) * u;
    const Vec4 pp = k * up - k * (g.dot(up) / gu) * u;
    return ambient_w(pb, pp);
  };
  auto ring = [&](double beta, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += density(beta, 2.0 * M_PI * i / n);
    return acc * 2.0 * M_PI / n;
  };
  AreaResult out;
  double err = 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double a = GK::integrate([&](double b) { return ring(b, 64); }, 0.0, 0.5 * M_PI, 12, 1e-12, &err);
  const double b = GK::integrate([&](double b) { return ring(b, 128); }, 0.0, 0.5 * M_PI, 12, 1e-12, &err);
  out.area = b;
  out.error = std::max(err, std::abs(a - b));
  if (!(out.error <= rel_tol * std::abs(out.area)))
    throw QuadratureNoConvergence("page area error " + std::to_string(out.error));
  return out;
}

// ---------------------------------------------------------------------------
// open book

struct OpenBookReport {
  std::vector<double> thetas;          // 0.1, ..., 0.9 for n_pages = 10
  std::vector<double> symmetry;        // max |rho Phi(theta, x) - Phi(1 - theta, y)| per theta
  std::vector<double> page_defect;     // max distance of Phi(theta, x) from D_{e^{2 pi i theta}}
  double invariance_zero = 0.0;        // rho-invariance of Phi(0, Sigma)
  double invariance_half = 0.0;        // rho-invariance of Phi(1/2, Sigma)
  int samples = 0;
  double max_symmetry() const { return symmetry.empty() ? 0.0 : *std::max_element(symmetry.begin(), symmetry.end()); }
};

/// Pages Phi(theta, x) = phi^{theta tau(x)}(x) swept out from a rho-invariant
/// page. For rho x the partner point is y = f^{-1}(rho x), and
/// rho Phi(theta, x) = Phi(1 - theta, y) is checked pointwise.
inline OpenBookReport open_book(const DiskPage& page, int n_pages = 10, int samples = 200, std::uint64_t seed = 5,
                                const SectionOptions& so = {}) {
  if (!page.rho_invariant()) throw PreconditionViolated("open book needs a rho-invariant page");
  if (n_pages < 2) throw InvalidSpec("need at least two pages");
  OpenBookReport rep;
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> ws;
  while (static_cast<int>(ws.size()) < samples) {
    const Complex w(u(rng), u(rng));
    if (std::abs(w) <= 0.95) ws.push_back(w);
  }
  for (int j = 1; j < n_pages; ++j) rep.thetas.push_back(static_cast<double>(j) / n_pages);

  ode::Options opt = flow_options();
  struct Row {
    std::vector<double> sym, defect;
    double inv0 = 0.0, inv_half = 0.0;
  };
  const auto rows = parallel_map(ws.size(), so.jobs, [&](std::size_t i) {
    Row r;
    const Vec4 x = page.point(ws[i]);
    const double tau = first_return(page, x, 1, so).tau;
    const Return back = first_return(page, rho(x), -1, so);
    const Vec4 y = back.image;
    const double tau_y = first_return(page, y, 1, so).tau;
    auto phi = [&](const Vec4& p, double th, double t) { return flow(page.surface, p, th * t, opt); };
    r.inv0 = page.page_defect(rho(x));
    const Vec4 half = phi(x, 0.5, tau);
    r.inv_half = (rho(half) - phi(y, 0.5, tau_y)).norm();
    for (double th : rep.thetas) {
      const Vec4 a = phi(x, th, tau);
      r.sym.push_back((rho(a) - phi(y, 1.0 - th, tau_y)).norm());
      DiskPage rotated = page;
      rotated.theta = page.theta * Complex(std::cos(2.0 * M_PI * th), std::sin(2.0 * M_PI * th));
      r.defect.push_back(rotated.page_defect(a));
    }
    return r;
  });
  rep.symmetry.assign(rep.thetas.size(), 0.0);
  rep.page_defect.assign(rep.thetas.size(), 0.0);
  for (const auto& r : rows) {
    for (std::size_t k = 0; k < rep.thetas.size(); ++k) {
      rep.symmetry[k] = std::max(rep.symmetry[k], r.sym[k]);
      rep.page_defect[k] = std::max(rep.page_defect[k], r.defect[k]);
    }
    rep.invariance_zero = std::max(rep.invariance_zero, r.inv0);
    rep.invariance_half = std::max(rep.invariance_half, r.inv_half);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// plain-text outputs

inline void write_return_csv(std::ostream& os, const ReturnMapReport& rep) {
  os << "x_chart,y_chart,fx,fy,tau\n";
  os.precision(12);
  for (const auto& s : rep.samples)
    os << s.w.real() << ',' << s.w.imag() << ',' << s.forward.w.real() << ',' << s.forward.w.imag() << ','
       << s.forward.tau << '\n';
}

/// Scatter of sample points (blue) and their images (red) in the unit disk.
inline void write_return_svg(std::ostream& os, const ReturnMapReport& rep, int size = 400) {
  const double h = 0.5 * size;
  auto px = [&](double v) { return h + 0.95 * h * v; };
  auto py = [&](double v) { return h - 0.95 * h * v; };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  os << "<circle cx=\"" << h << "\" cy=\"" << h << "\" r=\"" << 0.95 * h << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (const auto& s : rep.samples) {
    os << "<circle cx=\"" << px(s.w.real()) << "\" cy=\"" << py(s.w.imag()) << "\" r=\"2\" fill=\"blue\"/>\n";
    os << "<circle cx=\"" << px(s.forward.w.real()) << "\" cy=\"" << py(s.forward.w.imag())
       << "\" r=\"2\" fill=\"red\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace symreeb
