#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "errors.hpp"

namespace symreeb {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

/// Standard complex structure J0 on R^2 (rotation by +pi/2).
inline Mat2 j0() {
  Mat2 m;
  m << 0.0, -1.0, 1.0, 0.0;
  return m;
}

/// Complex conjugation I = diag(1, -1); Fix I is the real axis.
inline Mat2 conj_i() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

inline Mat2 rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  Mat2 m;
  m << c, -s, s, c;
  return m;
}

/// Matrix of the symplectic form, w(u, v) = u^T Omega v.
///
/// D == 2 is (R^2, dx^dy). D == 4 is the doubled space R^2 x R^2 carrying
/// (-w) + w, in which graphs and anti-graphs of symplectic maps are Lagrangian.
template <int D>
Eigen::Matrix<double, D, D> omega() {
  static_assert(D == 2 || D == 4);
  Mat2 w;
  w << 0.0, 1.0, -1.0, 0.0;
  if constexpr (D == 2) {
    return w;
  } else {
    Mat4 m = Mat4::Zero();
    m.block<2, 2>(0, 0) = -w;
    m.block<2, 2>(2, 2) = w;
    return m;
  }
}

/// Compatible complex structure for omega<D>: w(u, J u) = |u|^2.
template <int D>
Eigen::Matrix<double, D, D> complex_structure() {
  return -omega<D>();
}

template <int D>
using FrameBasis = Eigen::Matrix<double, D, D / 2>;

/// A Lagrangian subspace given by a basis of column vectors.
template <int D>
struct LagrangianFrame {
  FrameBasis<D> basis;
};

using Line = LagrangianFrame<2>;

inline constexpr double kSymplecticTol = 1e-9;

inline double symplectic_defect(const Mat2& m) {
  return (m.transpose() * j0() * m - j0()).cwiseAbs().maxCoeff();
}

inline bool is_symplectic(const Mat2& m, double tol = kSymplecticTol) {
  return symplectic_defect(m) <= tol;
}

template <int D>
double isotropy_defect(const FrameBasis<D>& f) {
  return (f.transpose() * omega<D>() * f).cwiseAbs().maxCoeff();
}

/// Orthonormal basis of the span of f (thin Householder Q).
template <int D>
FrameBasis<D> orthonormalize(const FrameBasis<D>& f) {
  Eigen::HouseholderQR<FrameBasis<D>> qr(f);
  return qr.householderQ() * FrameBasis<D>::Identity();
}

inline LagrangianFrame<4> graph_frame_unchecked(const Mat2& m) {
  LagrangianFrame<4> f;
  f.basis.topRows<2>() = Mat2::Identity();
  f.basis.bottomRows<2>() = -m;
  return f;
}

/// Anti-graph {(x, -M x)} of a symplectic 2x2 matrix, Lagrangian in the doubled space.
inline LagrangianFrame<4> graph_frame(const Mat2& m) {
  if (!is_symplectic(m)) throw NotSymplectic("symplectic defect " + std::to_string(symplectic_defect(m)));
  return graph_frame_unchecked(m);
}

/// Anti-diagonal {(x, -x)}.
inline LagrangianFrame<4> anti_diagonal() { return graph_frame_unchecked(Mat2::Identity()); }

inline Line line_at_angle(double angle) { return Line{Vec2(std::cos(angle), std::sin(angle))}; }
inline Line real_axis() { return line_at_angle(0.0); }
inline Line imag_axis() { return Line{Vec2(0.0, 1.0)}; }

inline constexpr double kRankTol = 1e-8;

/// Singular values of [orth(F) | orth(G)] in ascending order.
template <int D>
Eigen::Matrix<double, D, 1> stacked_singular_values(const FrameBasis<D>& f, const FrameBasis<D>& g) {
  Eigen::Matrix<double, D, D> stacked;
  stacked.leftCols(D / 2) = orthonormalize<D>(f);
  stacked.rightCols(D / 2) = orthonormalize<D>(g);
  Eigen::Matrix<double, D, 1> sv = Eigen::JacobiSVD<Eigen::Matrix<double, D, D>>(stacked).singularValues();
  return sv.reverse();
}

/// dim(F ∩ G): rank deficiency of [F | G] with relative singular value threshold.
template <int D>
int lagrangian_intersection_dim(const LagrangianFrame<D>& f, const LagrangianFrame<D>& g, double tol = kRankTol) {
  const auto sv = stacked_singular_values<D>(f.basis, g.basis);
  const double cut = tol * sv(D - 1);
  int deficiency = 0;
  for (int i = 0; i < D; ++i)
    if (sv(i) < cut) ++deficiency;
  return deficiency;
}

/// Runtime-shaped variant for frames read from input files.
inline int lagrangian_intersection_dim(const Eigen::MatrixXd& f, const Eigen::MatrixXd& g, double tol = kRankTol) {
  if (f.rows() != g.rows() || f.cols() != g.cols() || 2 * f.cols() != f.rows() || (f.rows() != 2 && f.rows() != 4))
    throw ShapeMismatch("frames must both be 2x1 or 4x2");
  if (f.rows() == 2) return lagrangian_intersection_dim<2>(Line{f}, Line{g}, tol);
  return lagrangian_intersection_dim<4>(LagrangianFrame<4>{f}, LagrangianFrame<4>{g}, tol);
}

/// Random element of Sp(2) as R(a) diag(e^s, e^-s) R(b).
template <class Rng>
Mat2 random_symplectic(Rng& rng, double max_stretch = 1.5) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> stretch(-max_stretch, max_stretch);
  const double s = stretch(rng);
  Mat2 d = Mat2::Zero();
  d(0, 0) = std::exp(s);
  d(1, 1) = std::exp(-s);
  return rotation(angle(rng)) * d * rotation(angle(rng));
}

inline double max_abs(const Mat2& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace symreeb
