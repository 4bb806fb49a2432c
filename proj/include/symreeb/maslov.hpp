#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "half_int.hpp"
#include "linalg.hpp"
#include "paths.hpp"
#include "report.hpp"

namespace symreeb {

struct Crossing {
  double t = 0.0;
  int signature = 0;
  int dim = 0;  // dim(Lambda(t) ∩ V)
};

struct CrossingReport {
  std::vector<Crossing> crossings;  // strictly increasing in t
  bool at_start = false;
  bool at_end = false;
};

struct RsResult {
  HalfInt index;
  CrossingReport report;
};

struct RsOptions {
  int scan_points = 2048;
  double fd_step = 1e-5;
  double sig_tol = 1e-7;
  double crossing_tol = 1e-7;   // smallest singular value of [Lambda | V] at a crossing
  double kernel_tol = 1e-6;     // relative cut for the intersection basis
  double time_tol = 1e-10;
  double cluster_gap = 1e-8;
};

namespace detail {

template <int D>
double smallest_angle(const FrameBasis<D>& f, const FrameBasis<D>& v_orth) {
  Eigen::Matrix<double, D, D> stacked;
  stacked.leftCols(D / 2) = orthonormalize<D>(f);
  stacked.rightCols(D / 2) = v_orth;
  return Eigen::JacobiSVD<Eigen::Matrix<double, D, D>>(stacked).singularValues()(D - 1);
}

/// Graph coordinates of Lambda(t + s) over U = orth Lambda(t) with complement J U:
/// Lambda(t + s) = {U a + J U B(s) a}; B is symmetric.
template <int D>
Eigen::Matrix<double, D / 2, D / 2> graph_coordinates(const FrameBasis<D>& u, const FrameBasis<D>& f) {
  const FrameBasis<D> ju = complex_structure<D>() * u;
  const Eigen::Matrix<double, D / 2, D / 2> x = u.transpose() * f;
  const Eigen::Matrix<double, D / 2, D / 2> y = ju.transpose() * f;
  return y * x.inverse();
}

/// Signature of the crossing form at t restricted to Lambda(t) ∩ V, or throws.
template <int D>
Crossing crossing_form(const LagrangianPath<D>& path, const FrameBasis<D>& v_orth, double t, const RsOptions& opt) {
  using Small = Eigen::Matrix<double, D / 2, D / 2>;
  constexpr int n = D / 2;
  const FrameBasis<D> u = orthonormalize<D>(path(t));

  // intersection basis in the a-coordinates of U
  Eigen::Matrix<double, D, D> stacked;
  stacked.leftCols(n) = u;
  stacked.rightCols(n) = -v_orth;
  Eigen::JacobiSVD<Eigen::Matrix<double, D, D>> svd(stacked, Eigen::ComputeFullV);
  const auto sv = svd.singularValues();
  std::vector<Eigen::VectorXd> kernel;
  for (int i = 0; i < D; ++i)
    if (sv(i) < opt.kernel_tol * sv(0)) kernel.emplace_back(svd.matrixV().col(i).template head<n>());
  Crossing c;
  c.t = t;
  c.dim = static_cast<int>(kernel.size());
  if (kernel.empty()) return c;
  Eigen::MatrixXd k(n, static_cast<Eigen::Index>(kernel.size()));
  for (std::size_t i = 0; i < kernel.size(); ++i) k.col(static_cast<Eigen::Index>(i)) = kernel[i];
  k = Eigen::HouseholderQR<Eigen::MatrixXd>(k).householderQ() * Eigen::MatrixXd::Identity(n, k.cols());

  double h = opt.fd_step;
  for (int attempt = 0; attempt < 2; ++attempt, h /= 10.0) {
    Small db;
    if (t - h < 0.0) {
      db = (-3.0 * graph_coordinates<D>(u, path(t)) + 4.0 * graph_coordinates<D>(u, path(t + h)) -
            graph_coordinates<D>(u, path(t + 2.0 * h))) /
           (2.0 * h);
    } else if (t + h > path.T) {
      db = (3.0 * graph_coordinates<D>(u, path(t)) - 4.0 * graph_coordinates<D>(u, path(t - h)) +
            graph_coordinates<D>(u, path(t - 2.0 * h))) /
           (2.0 * h);
    } else {
      db = (graph_coordinates<D>(u, path(t + h)) - graph_coordinates<D>(u, path(t - h))) / (2.0 * h);
    }
    const Eigen::MatrixXd sym = 0.5 * (db + db.transpose());
    const Eigen::MatrixXd q = k.transpose() * sym * k;
    const Eigen::VectorXd eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(q).eigenvalues();
    bool regular = true;
    int sig = 0;
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
      if (std::abs(eig(i)) < opt.sig_tol) regular = false;
      sig += eig(i) > 0.0 ? 1 : -1;
    }
    if (regular) {
      c.signature = sig;
      return c;
    }
  }
  throw DegenerateCrossing("crossing form singular at t = " + std::to_string(t));
}

/// Golden-section minimum of a unimodal function on [lo, hi]. sigma_min is
/// V-shaped at a crossing, where parabolic steps stall; bracketing does not.
template <class F>
std::pair<double, double> golden_minimum(F&& f, double lo, double hi, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  const double t = 0.5 * (a + b);
  const double ft = f(t);
  if (f1 < ft && f1 <= f2) return {x1, f1};
  if (f2 < ft) return {x2, f2};
  return {t, ft};
}

}  // namespace detail

/// Robbin-Salamon index of (Lambda, V) by crossing forms: half signatures at the
/// endpoints plus full signatures at interior crossings.
template <int D>
RsResult rs_index(const LagrangianPath<D>& path, const LagrangianFrame<D>& v, const RsOptions& opt = {}) {
  const FrameBasis<D> v_orth = orthonormalize<D>(v.basis);
  const double T = path.T;
  const int n = std::max(opt.scan_points, 16);
  std::vector<double> ts(n + 1), sv(n + 1);
  for (int i = 0; i <= n; ++i) {
    ts[i] = T * static_cast<double>(i) / n;
    sv[i] = detail::smallest_angle<D>(path(ts[i]), v_orth);
  }

  RsResult out;
  auto& rep = out.report;
  rep.at_start = sv[0] < opt.crossing_tol;
  rep.at_end = sv[n] < opt.crossing_tol;

  std::vector<double> times;
  if (rep.at_start) times.push_back(0.0);
  const double edge = opt.time_tol * 10.0;
  for (int i = 0; i <= n; ++i) {
    const bool left_ok = i == 0 || sv[i] <= sv[i - 1];
    const bool right_ok = i == n || sv[i] <= sv[i + 1];
    const bool strict = (i > 0 && sv[i] < sv[i - 1]) || (i < n && sv[i] < sv[i + 1]);
    if (!(left_ok && right_ok && strict)) continue;
    if ((i == 0 && rep.at_start) || (i == n && rep.at_end)) continue;
    const double lo = ts[std::max(i - 1, 0)], hi = ts[std::min(i + 1, n)];
    auto sigma = [&](double t) { return detail::smallest_angle<D>(path(t), v_orth); };
    const auto [tmin, smin] = detail::golden_minimum(sigma, lo, hi, opt.time_tol);
    if (smin >= opt.crossing_tol) continue;
    auto keep = [&](double t) {
      if (!((rep.at_start && t < edge) || (rep.at_end && t > T - edge))) times.push_back(t);
    };
    keep(tmin);
    // Near a higher-dimensional intersection two crossings can merge into one
    // local minimum of the scan. Divide out the zero just found and look for
    // a second one within a few cells.
    const double gap = std::max(opt.cluster_gap, 1e-6 * (hi - lo));
    const double wide_lo = ts[std::max(i - 3, 0)], wide_hi = ts[std::min(i + 3, n)];
    for (int side : {-1, 1}) {
      const double a = side < 0 ? wide_lo : tmin + gap, b = side < 0 ? tmin - gap : wide_hi;
      if (b - a <= opt.time_tol) continue;
      auto deflated = [&](double t) { return sigma(t) / std::abs(t - tmin); };
      const double ref = deflated(side < 0 ? b : a);
      const auto [t2, g2] = detail::golden_minimum(deflated, a, b, opt.time_tol);
      if (g2 < 1e-3 * ref && sigma(t2) < opt.crossing_tol) keep(t2);
    }
  }
  if (rep.at_end) times.push_back(T);
  std::sort(times.begin(), times.end());

  std::vector<double> unique;
  for (double t : times) {
    if (!unique.empty() && t - unique.back() < 1e-9) continue;
    if (!unique.empty() && t - unique.back() < opt.cluster_gap)
      throw CrossingClusterTooDense("crossings at " + std::to_string(unique.back()) + " and " + std::to_string(t));
    unique.push_back(t);
  }

  std::int64_t twice = 0;
  for (double t : unique) {
    Crossing c = detail::crossing_form<D>(path, v_orth, t, opt);
    if (c.dim == 0) continue;  // numerical near-miss rejected by the kernel test
    const bool endpoint = (t == 0.0 && rep.at_start) || (t == T && rep.at_end);
    twice += endpoint ? c.signature : 2 * c.signature;
    rep.crossings.push_back(c);
  }
  out.index = HalfInt::from_twice(twice);
  return out;
}

/// Conley-Zehnder index as the Robbin-Salamon index of the anti-graph path
/// against the anti-diagonal.
inline RsResult cz_index_report(const SymplecticPath& psi, const RsOptions& opt = {}) {
  if (max_abs(psi(0.0) - Mat2::Identity()) > 1e-9) throw PreconditionViolated("Psi(0) != 1");
  const Mat2 end = psi(psi.T);
  const double det = (end - Mat2::Identity()).determinant();
  if (std::abs(det) < 1e-8) throw DegeneratePath("|det(Psi(T) - 1)| = " + std::to_string(std::abs(det)));
  LagrangianPath<4> graph{psi.T, [psi](double t) { return FrameBasis<4>(graph_frame_unchecked(psi(t)).basis); }};
  return rs_index<4>(graph, anti_diagonal(), opt);
}

inline HalfInt cz_index(const SymplecticPath& psi, const RsOptions& opt = {}) {
  return cz_index_report(psi, opt).index;
}

/// True when (Psi V, V) is nondegenerate: Psi(T) V ∩ V = 0.
inline bool pair_nondegenerate(const SymplecticPath& psi, const Line& v, double tol = 1e-8) {
  return lagrangian_intersection_dim<2>(Line{psi(psi.T) * v.basis}, v, tol) == 0;
}

/// mu_RS(Psi R, R) - mu_RS(Psi iR, iR) for a path on [0, T/2].
inline HalfInt hormander_index(const SymplecticPath& half, const RsOptions& opt = {}) {
  if (!pair_nondegenerate(half, real_axis())) throw DegeneratePair("(Psi R, R) degenerate");
  if (!pair_nondegenerate(half, imag_axis())) throw DegeneratePair("(Psi iR, iR) degenerate");
  return rs_index<2>(act_on_line(half, real_axis()), real_axis(), opt).index -
         rs_index<2>(act_on_line(half, imag_axis()), imag_axis(), opt).index;
}

// ---------------------------------------------------------------------------
// property verifiers

/// True when Lambda(t) = V at every scan point, so the path sits in V.
template <int D>
bool stays_in(const LagrangianPath<D>& path, const LagrangianFrame<D>& v, int probes = 64) {
  for (int i = 0; i <= probes; ++i)
    if (lagrangian_intersection_dim<D>(LagrangianFrame<D>{path(path.T * i / probes)}, v, 1e-8) != D / 2) return false;
  return true;
}

/// rs_index, except that a path lying entirely in V gets index 0 (the value
/// forced by catenation) instead of being rejected.
template <int D>
HalfInt rs_index_allow_constant(const LagrangianPath<D>& path, const LagrangianFrame<D>& v, const RsOptions& opt = {}) {
  if (stays_in<D>(path, v)) return HalfInt{};
  return rs_index<D>(path, v, opt).index;
}

struct RsAxiomInstance {
  LinePath path;
  Line v;
  Line v_alt;
  bool loop = false;     // path(T) = path(0)
  SymplecticPath gamma;  // for naturality
  double warp = 0.0;     // reparametrization t + warp T/pi sin(pi t/T), |warp| < 1
  double split = 0.5;    // catenation point as a fraction of T
};

struct RsAxiomReport {
  Tally maslov{"maslov"}, reversal{"reversal"}, naturality{"naturality"}, homotopy{"homotopy"},
      catenation{"catenation"};
  bool ok() const { return maslov.ok() && reversal.ok() && naturality.ok() && homotopy.ok() && catenation.ok(); }
};

/// Lines at angle theta0 + a t + b sin(2 pi k t / T); loops use a = n pi / T.
inline std::vector<RsAxiomInstance> random_rs_instances(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uni = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  std::vector<RsAxiomInstance> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    RsAxiomInstance inst;
    const double T = uni(0.5, 2.0);
    inst.loop = i % 2 == 0;
    const double theta0 = uni(0.0, M_PI);
    const double a = inst.loop ? M_PI * std::floor(uni(-2.0, 4.0)) / T : uni(-6.0, 6.0);
    const double b = uni(-1.5, 1.5);
    const double k = std::floor(uni(1.0, 3.0));
    inst.path = LinePath{T, [=](double t) {
                           const double th = theta0 + a * t + b * std::sin(2.0 * M_PI * k * t / T);
                           return FrameBasis<2>(Vec2(std::cos(th), std::sin(th)));
                         }};
    inst.v = line_at_angle(uni(0.0, M_PI));
    inst.v_alt = line_at_angle(uni(0.0, M_PI));
    const Mat2 g0 = random_symplectic(rng, 1.0);
    const double p = uni(-4.0, 4.0), q = uni(-1.0, 1.0), r = uni(-4.0, 4.0);
    inst.gamma = SymplecticPath{T, [=](double t) {
                                  Mat2 d = Mat2::Zero();
                                  d(0, 0) = std::exp(q * t);
                                  d(1, 1) = std::exp(-q * t);
                                  return Mat2(rotation(p * t) * d * rotation(r * t) * g0);
                                }};
    inst.warp = uni(-0.9, 0.9);
    inst.split = uni(0.2, 0.8);
    out.push_back(std::move(inst));
  }
  return out;
}

/// Checks the Maslov, reversal, naturality, homotopy and catenation properties;
/// instances hitting a non-regular crossing are skipped and counted.
inline RsAxiomReport verify_rs_axioms(const std::vector<RsAxiomInstance>& instances, const RsOptions& opt = {}) {
  RsAxiomReport rep;
  auto attempt = [](Tally& tally, auto&& check) {
    try {
      check();
    } catch (const Error&) {
      tally.skip();
    }
  };
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& in = instances[i];
    const std::string tag = "instance " + std::to_string(i);
    const double T = in.path.T;
    if (in.loop) {
      attempt(rep.maslov, [&] {
        const HalfInt a = rs_index<2>(in.path, in.v, opt).index, b = rs_index<2>(in.path, in.v_alt, opt).index;
        rep.maslov.record(a == b, tag + ": " + a.str() + " vs " + b.str());
      });
    }
    attempt(rep.reversal, [&] {
      const HalfInt a = rs_index<2>(in.path, in.v, opt).index, b = rs_index<2>(reversed(in.path), in.v, opt).index;
      rep.reversal.record(a == -b, tag + ": " + a.str() + " vs " + b.str());
    });
    attempt(rep.naturality, [&] {
      const SymplecticPath g = in.gamma;
      const HalfInt a = rs_index<2>(act_on_line(g, in.v), in.v_alt, opt).index;
      const LinePath inv{g.T, [g, v2 = in.v_alt](double t) { return FrameBasis<2>(g(t).inverse() * v2.basis); }};
      const HalfInt b = rs_index<2>(inv, in.v, opt).index;
      rep.naturality.record(a == -b, tag + ": " + a.str() + " vs " + b.str());
    });
    attempt(rep.homotopy, [&] {
      const double w = in.warp;
      const auto warped = reparametrized(in.path, [w, T](double t) { return t + w * T / M_PI * std::sin(M_PI * t / T); });
      const HalfInt a = rs_index<2>(in.path, in.v, opt).index, b = rs_index<2>(warped, in.v, opt).index;
      rep.homotopy.record(a == b, tag + ": " + a.str() + " vs " + b.str());
    });
    attempt(rep.catenation, [&] {
      const double s = in.split * T;
      const HalfInt whole = rs_index<2>(in.path, in.v, opt).index;
      const HalfInt parts =
          rs_index<2>(sub_path(in.path, 0.0, s), in.v, opt).index + rs_index<2>(sub_path(in.path, s, T), in.v, opt).index;
      rep.catenation.record(whole == parts, tag + ": " + whole.str() + " vs " + parts.str());
    });
  }
  return rep;
}

struct LoopPropsReport {
  HalfInt lhs, index_lambda, index_gamma_v;  // mu(Gamma Lambda, V), mu(Lambda, V), mu(Gamma V, V)
  bool loop_identity = false;
  std::optional<HalfInt> half_index;  // mu(Gamma_1 V, V) when the half-loop identity applies
  bool half_identity = true;
};

/// Loop identities for Gamma: mu(Gamma Lambda, V) = mu(Lambda, V) + mu(Gamma V, V),
/// and, given an antisymplectic involution i_v fixing V with
/// i_v Gamma(t) i_v = Gamma(T - t), mu(Gamma V, V) = 2 mu(Gamma|[0,T/2] V, V).
inline LoopPropsReport verify_loop_props(const SymplecticPath& gamma, const LinePath& lambda, const Line& v,
                                         std::optional<Mat2> i_v = std::nullopt, const RsOptions& opt = {}) {
  auto same = [](const Vec2& a, const Line& b) { return lagrangian_intersection_dim<2>(Line{a}, b, 1e-8) == 1; };
  const double T = gamma.T;
  if (std::abs(lambda.T - T) > 1e-12) throw PreconditionViolated("Gamma and Lambda have different lengths");
  if (!same(lambda(0.0), v)) throw PreconditionViolated("Lambda(0) != V");
  if (!same(gamma(0.0) * v.basis, v)) throw PreconditionViolated("Gamma(0) V != V");
  if (!same(gamma(T) * v.basis, v)) throw PreconditionViolated("Gamma(T) V != V");
  if (!same(gamma(0.0) * lambda(T), Line{lambda(T)})) throw PreconditionViolated("Gamma(0) Lambda(T) != Lambda(T)");

  LoopPropsReport rep;
  const LinePath moved{T, [gamma, lambda](double t) { return FrameBasis<2>(gamma(t) * lambda(t)); }};
  rep.lhs = rs_index_allow_constant<2>(moved, v, opt);
  rep.index_lambda = rs_index_allow_constant<2>(lambda, v, opt);
  rep.index_gamma_v = rs_index_allow_constant<2>(act_on_line(gamma, v), v, opt);
  rep.loop_identity = rep.lhs == rep.index_lambda + rep.index_gamma_v;

  if (i_v) {
    const Mat2 r = *i_v;
    if ((r.transpose() * j0() * r + j0()).cwiseAbs().maxCoeff() > 1e-9 || max_abs(r * r - Mat2::Identity()) > 1e-9)
      throw PreconditionViolated("I_V is not an antisymplectic involution");
    if (!same(r * v.basis, v) || (r * v.basis - v.basis).norm() > 1e-9 * v.basis.norm())
      throw PreconditionViolated("Fix I_V != V");
    for (int i = 0; i <= 64; ++i) {
      const double t = T * i / 64.0;
      if (max_abs(r * gamma(t) * r - gamma(T - t)) > 1e-8)
        throw PreconditionViolated("I_V Gamma(t) I_V != Gamma(T - t)");
    }
    rep.half_index = rs_index_allow_constant<2>(act_on_line(restrict_path(gamma, 0.5 * T), v), v, opt);
    rep.half_identity = rep.index_gamma_v == 2 * *rep.half_index;
  }
  return rep;
}

}  // namespace symreeb
