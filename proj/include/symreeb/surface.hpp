#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "errors.hpp"
#include "linalg.hpp"
#include "ode.hpp"

namespace symreeb {

// Coordinates on C^2 = R^4 are (x1, y1, x2, y2); w = dx1^dy1 + dx2^dy2,
// lambda = 1/2 sum (x dy - y dx), rho = complex conjugation.

inline Mat4 ambient_omega() {
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(0, 0) = omega<2>();
  m.block<2, 2>(2, 2) = omega<2>();
  return m;
}

/// Multiplication by i on C^2.
inline Mat4 ambient_j() {
  Mat4 m = Mat4::Zero();
  m.block<2, 2>(0, 0) = j0();
  m.block<2, 2>(2, 2) = j0();
  return m;
}

inline Mat4 rho_matrix() { return Eigen::Vector4d(1.0, -1.0, 1.0, -1.0).asDiagonal(); }
inline Vec4 rho(const Vec4& p) { return {p(0), -p(1), p(2), -p(3)}; }

inline double ambient_w(const Vec4& u, const Vec4& v) { return u.dot(ambient_omega() * v); }

/// lambda_p(v) = 1/2 w(p, v).
inline double liouville_form(const Vec4& p, const Vec4& v) { return 0.5 * ambient_w(p, v); }

/// Quaternionic partner of i: j(x1, y1, x2, y2) = (-x2, y2, x1, -y1). It
/// anticommutes with i, commutes with rho, and j n, (i j) n span the complex
/// tangent line orthogonal to n.
inline Vec4 quat_j(const Vec4& v) { return {-v(2), v(3), v(0), -v(1)}; }
inline Vec4 quat_k(const Vec4& v) { return ambient_j() * quat_j(v); }

struct Monomial {
  std::array<int, 4> powers{};
  double coeff = 0.0;
};

/// Level set F = 1 of a polynomial on R^4.
class Surface {
 public:
  Surface() = default;

  static Surface ellipsoid(double r1, double r2) {
    if (!(r1 > 0.0 && r2 > 0.0)) throw InvalidSpec("ellipsoid radii must be positive");
    Surface s;
    const double a = 1.0 / (r1 * r1), b = 1.0 / (r2 * r2);
    s.terms_ = {{{2, 0, 0, 0}, a}, {{0, 2, 0, 0}, a}, {{0, 0, 2, 0}, b}, {{0, 0, 0, 2}, b}};
    s.radii_ = std::array<double, 2>{r1, r2};
    s.symmetric_ = true;
    return s;
  }

  static Surface polynomial(std::vector<Monomial> terms, bool symmetric) {
    for (const auto& m : terms)
      for (int p : m.powers)
        if (p < 0) throw InvalidSpec("negative monomial power");
    Surface s;
    s.terms_ = std::move(terms);
    s.symmetric_ = symmetric;
    return s;
  }

  /// F + coeff * monomial; drops the closed-form ellipsoid tag.
  Surface plus(const Monomial& m) const {
    Surface s = *this;
    s.terms_.push_back(m);
    s.radii_.reset();
    s.symmetric_ = symmetric_ && monomial_rho_even(m);
    return s;
  }

  const std::vector<Monomial>& terms() const { return terms_; }
  const std::optional<std::array<double, 2>>& radii() const { return radii_; }
  bool symmetric() const { return symmetric_; }

  double F(const Vec4& p) const {
    double f = 0.0;
    for (const auto& m : terms_) f += m.coeff * power(p, m.powers);
    return f;
  }

  Vec4 grad(const Vec4& p) const {
    Vec4 g = Vec4::Zero();
    for (const auto& m : terms_)
      for (int i = 0; i < 4; ++i) {
        if (m.powers[i] == 0) continue;
        auto q = m.powers;
        --q[i];
        g(i) += m.coeff * m.powers[i] * power(p, q);
      }
    return g;
  }

  Mat4 hessian(const Vec4& p) const {
    Mat4 h = Mat4::Zero();
    for (const auto& m : terms_)
      for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
          auto q = m.powers;
          double c = m.coeff * q[i];
          if (q[i] == 0) continue;
          --q[i];
          c *= q[j];
          if (q[j] == 0) continue;
          --q[j];
          h(i, j) += c * power(p, q);
        }
    return h.selfadjointView<Eigen::Upper>();
  }

  std::string describe() const {
    std::ostringstream os;
    if (radii_) {
      os << "ellipsoid(" << (*radii_)[0] << ", " << (*radii_)[1] << ")";
      return os.str();
    }
    os << "polynomial[";
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& m = terms_[i];
      os << (i ? " + " : "") << m.coeff << "*x^(" << m.powers[0] << m.powers[1] << m.powers[2] << m.powers[3] << ")";
    }
    os << "]";
    return os.str();
  }

  static bool monomial_rho_even(const Monomial& m) { return (m.powers[1] + m.powers[3]) % 2 == 0; }

 private:
  static double power(const Vec4& p, const std::array<int, 4>& e) {
    double r = 1.0;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < e[i]; ++k) r *= p(i);
    return r;
  }

  std::vector<Monomial> terms_;
  std::optional<std::array<double, 2>> radii_;
  bool symmetric_ = false;
};

inline constexpr double kSurfaceTol = 1e-9;

// ---------------------------------------------------------------------------
// Reeb field

/// X = X_F / lambda(X_F) with X_F = i grad F; no checks (used inside integrators).
inline Vec4 reeb_field_unchecked(const Surface& s, const Vec4& p) {
  const Vec4 n = s.grad(p);
  return ambient_j() * n / (0.5 * n.dot(p));
}

inline Vec4 reeb_field(const Surface& s, const Vec4& p) {
  const double f = s.F(p);
  if (std::abs(f - 1.0) > kSurfaceTol) throw NotOnSurface("|F(p) - 1| = " + std::to_string(std::abs(f - 1.0)));
  const Vec4 n = s.grad(p);
  const double g = 0.5 * n.dot(p);
  if (std::abs(g) < 1e-10) throw VanishingPairing("lambda(X_F) = " + std::to_string(g));
  return ambient_j() * n / g;
}

/// Derivative of the (ambient) Reeb field.
inline Mat4 reeb_jacobian(const Surface& s, const Vec4& p) {
  const Vec4 n = s.grad(p);
  const Mat4 h = s.hessian(p);
  const double g = 0.5 * n.dot(p);
  const Vec4 dg = 0.5 * (n + h * p);
  const Mat4 j = ambient_j();
  return j * h / g - (j * n) * dg.transpose() / (g * g);
}

/// Radial projection onto F = 1 along the Liouville ray through p.
inline Vec4 project_to_surface(const Surface& s, const Vec4& p) {
  double t = 1.0;
  for (int it = 0; it < 50; ++it) {
    const Vec4 q = t * p;
    const double f = s.F(q) - 1.0;
    if (std::abs(f) <= 1e-15) break;
    const double df = s.grad(q).dot(p);
    if (!(df > 0.0)) throw VanishingPairing("Liouville ray tangent to the level set");
    const double step = f / df;
    t -= step;
    if (std::abs(step) < 1e-16 * std::abs(t)) break;
  }
  return t * p;
}

/// Point of M on the ray through the unit direction u.
inline Vec4 radial_point(const Surface& s, const Vec4& u) {
  double hi = 1.0;
  while (s.F(hi * u) < 1.0) {
    hi *= 2.0;
    if (hi > 1e6) throw NotOnSurface("ray does not meet the surface");
  }
  double lo = 0.0;
  auto f = [&](double r) { return s.F(r * u) - 1.0; };
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, f(lo), f(hi),
                                                   boost::math::tools::eps_tolerance<double>(50), iters);
  return project_to_surface(s, 0.5 * (r.first + r.second) * u);
}

struct SurfaceCheck {
  double min_pairing = 0.0;  // min dF(L) over probes, L = p/2
  double rho_defect = 0.0;   // max |F(rho p) - F(p)|
  bool starshaped = false;
  bool symmetric = false;
};

/// Starshapedness on an n^3 grid of directions (Hopf-type angles) and
/// rho-invariance on the same probes.
inline SurfaceCheck check_surface(const Surface& s, int n = 32) {
  SurfaceCheck c;
  c.min_pairing = std::numeric_limits<double>::infinity();
  for (int a = 0; a < n; ++a) {
    const double eta = 0.5 * M_PI * (a + 0.5) / n;
    for (int b = 0; b < n; ++b) {
      const double p1 = 2.0 * M_PI * b / n;
      for (int d = 0; d < n; ++d) {
        const double p2 = 2.0 * M_PI * d / n;
        const Vec4 u(std::cos(eta) * std::cos(p1), std::cos(eta) * std::sin(p1), std::sin(eta) * std::cos(p2),
                     std::sin(eta) * std::sin(p2));
        const Vec4 p = radial_point(s, u);
        c.min_pairing = std::min(c.min_pairing, 0.5 * s.grad(p).dot(p));
        c.rho_defect = std::max(c.rho_defect, std::abs(s.F(rho(p)) - s.F(p)));
      }
    }
  }
  c.starshaped = c.min_pairing > 0.0;
  c.symmetric = c.rho_defect <= 1e-12;
  return c;
}

// ---------------------------------------------------------------------------
// flow

inline ode::Options flow_options() {
  ode::Options o;
  o.rtol = 1e-12;
  o.atol = 1e-13;
  o.initial_step = 1e-3;
  return o;
}

template <class Observer>
Vec4 flow_observed(const Surface& s, const Vec4& p, double t, Observer&& observer,
                   const ode::Options& opt = flow_options()) {
  ode::State<4> x{p(0), p(1), p(2), p(3)};
  auto rhs = [&s](const ode::State<4>& y, ode::State<4>& dy, double) {
    const Vec4 v = reeb_field_unchecked(s, Vec4(y[0], y[1], y[2], y[3]));
    for (int i = 0; i < 4; ++i) dy[i] = v(i);
  };
  auto project = [&s](ode::State<4>& y) {
    const Vec4 q = project_to_surface(s, Vec4(y[0], y[1], y[2], y[3]));
    for (int i = 0; i < 4; ++i) y[i] = q(i);
  };
  ode::integrate<4>(rhs, x, 0.0, t, opt,
                    [&](double tt, const ode::State<4>& y) { observer(tt, Vec4(y[0], y[1], y[2], y[3])); }, project);
  return {x[0], x[1], x[2], x[3]};
}

/// phi^t(p) for the Reeb flow, projected back to M after every step.
inline Vec4 flow(const Surface& s, const Vec4& p, double t, const ode::Options& opt = flow_options()) {
  if (std::abs(s.F(p) - 1.0) > kSurfaceTol) throw NotOnSurface("flow start off the surface");
  return flow_observed(s, p, t, [](double, const Vec4&) {}, opt);
}

// ---------------------------------------------------------------------------
// contact frames

/// Projection of v along X onto ker lambda at p.
inline Vec4 to_xi(const Surface& s, const Vec4& p, const Vec4& v) {
  return v - liouville_form(p, v) * reeb_field_unchecked(s, p);
}

/// Symplectic frame (f1, f2) of xi at p: f1 = pi(j n), f2 = pi(k n) with n the
/// unit normal and pi the projection along X. Then w(f1, f2) = 1, the complex
/// structure pi i P (P = orthogonal projection onto span{j n, k n}) sends f1 to
/// f2, and R f1(p) = f1(rho p), R f2(p) = -f2(rho p).
inline Eigen::Matrix<double, 4, 2> contact_frame(const Surface& s, const Vec4& p) {
  const Vec4 g = s.grad(p);
  const double norm = g.norm();
  if (norm < 1e-8) throw FrameDegenerate("gradient vanishes");
  const Vec4 n = g / norm;
  Eigen::Matrix<double, 4, 2> f;
  f.col(0) = to_xi(s, p, quat_j(n));
  f.col(1) = to_xi(s, p, quat_k(n));
  return f;
}

/// Complex structure on xi at p compatible with dlambda.
inline Vec4 xi_complex_structure(const Surface& s, const Vec4& p, const Vec4& w) {
  const Vec4 n = s.grad(p).normalized();
  const Vec4 a = quat_j(n), b = quat_k(n);
  const Vec4 proj = a.dot(w) * a + b.dot(w) * b;
  return to_xi(s, p, ambient_j() * proj);
}

/// Coordinates of w in xi_p with respect to the frame f: w = c1 f1 + c2 f2.
inline Eigen::Matrix<double, 2, 4> frame_coordinates(const Eigen::Matrix<double, 4, 2>& f) {
  Eigen::Matrix<double, 2, 4> c;
  const Mat4 om = ambient_omega();
  c.row(0) = (om * f.col(1)).transpose();
  c.row(1) = (om.transpose() * f.col(0)).transpose();
  return c;
}

}  // namespace symreeb
