#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "ode.hpp"

namespace symreeb {

/// Path of 2x2 symplectic matrices on [0, T] given by an evaluator.
///
/// Evaluators must be reentrant. Paths built from loops extend to all of R
/// through the cocycle rule Psi(t + T) = Psi(t) Psi(T).
struct SymplecticPath {
  double T = 1.0;
  std::function<Mat2(double)> eval;
  bool symmetric = false;  // Psi(-t) = I Psi(t) I is asserted

  Mat2 operator()(double t) const { return eval(t); }
};

/// Path of Lagrangian subspaces on [0, T]; the evaluator must be C^1.
template <int D>
struct LagrangianPath {
  double T = 1.0;
  std::function<FrameBasis<D>(double)> eval;

  FrameBasis<D> operator()(double t) const { return eval(t); }
};

using LinePath = LagrangianPath<2>;

struct PathCheck {
  double start_defect = 0.0;       // |Psi(0) - 1|
  double symplectic_defect = 0.0;  // max over probes
  double symmetry_defect = 0.0;    // max |Psi(-t) - I Psi(t) I|, only when flagged
  bool ok = true;
};

inline PathCheck check_path(const SymplecticPath& p, int probes = 64) {
  PathCheck c;
  c.start_defect = max_abs(p(0.0) - Mat2::Identity());
  for (int i = 0; i <= probes; ++i) {
    const double t = p.T * i / probes;
    const Mat2 m = p(t);
    c.symplectic_defect = std::max(c.symplectic_defect, symplectic_defect(m));
    if (p.symmetric) {
      const Mat2 back = p(-t);
      c.symmetry_defect = std::max(c.symmetry_defect, max_abs(back - conj_i() * m * conj_i()));
    }
  }
  c.ok = c.start_defect <= 1e-9 && c.symplectic_defect <= 1e-9 && c.symmetry_defect <= 1e-8;
  return c;
}

// ---------------------------------------------------------------------------
// closed-form families

/// Psi(t) = exp(c J0 t) on [0, T].
inline SymplecticPath rotation_path(double c, double T = 1.0) {
  return {T, [c](double t) { return rotation(c * t); }, true};
}

/// Psi(t) = diag(e^{a t}, e^{-a t}) exp(b J0 t).
inline SymplecticPath hyperbolic_path(double a, double T = 1.0, double b = 0.0) {
  return {T,
          [a, b](double t) {
            Mat2 d = Mat2::Zero();
            d(0, 0) = std::exp(a * t);
            d(1, 1) = std::exp(-a * t);
            return Mat2(d * rotation(b * t));
          },
          b == 0.0};
}

// ---------------------------------------------------------------------------
// solutions of Psi' = J0 S(t) Psi

namespace detail {
inline void matrix_rhs(const Mat2& s, double lambda, const ode::State<4>& x, ode::State<4>& dx) {
  // J0 (S + lambda) Phi, Phi row-major in x
  const double a = s(0, 0) + lambda, b = 0.5 * (s(0, 1) + s(1, 0)), c = s(1, 1) + lambda;
  const double m00 = -b, m01 = -c, m10 = a, m11 = b;
  dx[0] = m00 * x[0] + m01 * x[2];
  dx[1] = m00 * x[1] + m01 * x[3];
  dx[2] = m10 * x[0] + m11 * x[2];
  dx[3] = m10 * x[1] + m11 * x[3];
}

inline Mat2 to_mat(const ode::State<4>& x) {
  Mat2 m;
  m << x[0], x[1], x[2], x[3];
  return m;
}
}  // namespace detail

using CoeffFn = std::function<Mat2(double)>;

/// Fundamental solution of Phi' = J0 (S(t) + lambda) Phi, Phi(0) = 1, on
/// [0, t_end], extended past t_end by the cocycle rule when S is t_end-periodic.
inline SymplecticPath solve_linear_path(const CoeffFn& s, double lambda, double t_end, bool periodic_extension,
                                        const ode::Options& opt = {}) {
  auto rhs = [s, lambda](const ode::State<4>& x, ode::State<4>& dx, double t) {
    detail::matrix_rhs(s(t), lambda, x, dx);
  };
  auto sol = std::make_shared<const ode::DenseSolution<4>>(rhs, ode::State<4>{1.0, 0.0, 0.0, 1.0}, 0.0, t_end, opt);
  const Mat2 mono = detail::to_mat(sol->final_state());
  const Mat2 mono_inv = mono.inverse();
  auto eval = [sol, t_end, mono, mono_inv, periodic_extension](double t) -> Mat2 {
    if (t >= 0.0 && t <= t_end) return detail::to_mat((*sol)(t));
    if (!periodic_extension) return detail::to_mat((*sol)(t));
    const double q = std::floor(t / t_end);
    const double r = t - q * t_end;
    Mat2 m = detail::to_mat((*sol)(r));
    const long n = static_cast<long>(q);
    const Mat2& f = n >= 0 ? mono : mono_inv;
    for (long i = 0; i < std::labs(n); ++i) m = m * f;
    return m;
  };
  return {t_end, eval, false};
}

// ---------------------------------------------------------------------------
// path operations

/// Restriction to [0, t_end] (no re-timing).
inline SymplecticPath restrict_path(const SymplecticPath& p, double t_end) {
  return {t_end, p.eval, p.symmetric};
}

/// Lambda(t) = Psi(t) V.
inline LinePath act_on_line(const SymplecticPath& p, const Line& v) {
  return {p.T, [p, v](double t) { return FrameBasis<2>(p(t) * v.basis); }};
}

/// Lambda(t) = exp(t J0) L0 for t in [a, b], re-timed to [0, b - a].
inline LinePath rotating_line(double a, double b, const Line& start) {
  return {b - a, [a, start](double t) { return FrameBasis<2>(rotation(a + t) * start.basis); }};
}

template <int D>
LagrangianPath<D> reversed(const LagrangianPath<D>& p) {
  return {p.T, [p](double t) { return p(p.T - t); }};
}

/// p2 # p1: p1 on [0, T1] followed by p2 on [T1, T1 + T2].
template <int D>
LagrangianPath<D> concatenated(const LagrangianPath<D>& p1, const LagrangianPath<D>& p2) {
  return {p1.T + p2.T, [p1, p2](double t) { return t <= p1.T ? p1(t) : p2(t - p1.T); }};
}

template <int D>
LagrangianPath<D> sub_path(const LagrangianPath<D>& p, double a, double b) {
  return {b - a, [p, a](double t) { return p(a + t); }};
}

/// Reparametrization t -> phi(t) with phi(0) = 0, phi(T) = T, phi' > 0.
template <int D>
LagrangianPath<D> reparametrized(const LagrangianPath<D>& p, std::function<double(double)> phi) {
  return {p.T, [p, phi](double t) { return p(phi(t)); }};
}

}  // namespace symreeb
