#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>

#include "maslov.hpp"
#include "parallel.hpp"
#include "spectral.hpp"
#include "surface.hpp"

namespace symreeb {

struct ReebOrbit {
  Vec4 start = Vec4::Zero();
  double T = 0.0;
  bool symmetric = false;
  double residual = 0.0;                        // |phi^T(start) - start|
  std::array<std::complex<double>, 2> floquet;  // transverse multipliers
  bool degenerate = false;
};

/// Transverse multipliers within this distance of 1 make an orbit degenerate.
inline constexpr double kFloquetTol = 1e-5;

inline std::array<std::complex<double>, 2> multipliers(const Mat2& m) {
  const Eigen::EigenSolver<Mat2> es(m);
  return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

inline bool near_one(const std::array<std::complex<double>, 2>& mu, int power = 1, double tol = kFloquetTol) {
  for (const auto& z : mu)
    if (std::abs(std::pow(z, power) - 1.0) < tol) return true;
  return false;
}

// ---------------------------------------------------------------------------
// trivializations along an orbit

/// Symmetric unitary trivialization of xi along an orbit: the global contact
/// frame rotated by theta = base_twist (y1 + y2/2) + 2 pi loop_twist t / T.
/// The first term is odd under rho, so the result stays symmetric and
/// homotopic to the untwisted frame; the second composes with the loop
/// exp(2 pi k J0 t / T), which changes the indices.
struct Trivialization {
  double base_twist = 0.0;
  int loop_twist = 0;

  double angle(const Vec4& x, double t, double T) const {
    return base_twist * (x(1) + 0.5 * x(3)) + 2.0 * M_PI * loop_twist * t / T;
  }

  Eigen::Matrix<double, 4, 2> frame(const Surface& s, const Vec4& x, double t, double T) const {
    return contact_frame(s, x) * rotation(angle(x, t, T));
  }

  /// Inverse of the frame on xi_x.
  Eigen::Matrix<double, 2, 4> coordinates(const Surface& s, const Vec4& x, double t, double T) const {
    return rotation(-angle(x, t, T)) * frame_coordinates(contact_frame(s, x));
  }
};

struct TrivializationCheck {
  double unitarity = 0.0;  // |w(f1, f2) - 1| and |J f1 - f2|
  double symmetry = 0.0;   // |R f1(t) - f1(-t)|, |R f2(t) + f2(-t)|
  double fix_defect = 0.0; // |R f1(0) - f1(0)|: frame at t = 0 maps R into Fix T rho
};

// ---------------------------------------------------------------------------
// linearized flow

namespace detail {

using Big = ode::State<20>;

inline void variational_rhs(const Surface& s, const Big& z, Big& dz) {
  const Vec4 x(z[0], z[1], z[2], z[3]);
  const Vec4 v = reeb_field_unchecked(s, x);
  const Mat4 a = reeb_jacobian(s, x);
  for (int i = 0; i < 4; ++i) dz[i] = v(i);
  Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>> y(z.data() + 4);
  Eigen::Map<Eigen::Matrix<double, 4, 4, Eigen::RowMajor>> dy(dz.data() + 4);
  dy = a * y;
}

inline Vec4 point_of(const Big& z) { return {z[0], z[1], z[2], z[3]}; }

inline Mat4 tangent_of(const Big& z) {
  return Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>>(z.data() + 4);
}

}  // namespace detail

/// Psi_P, S_P and their health numbers along a periodic orbit.
struct LinearizedFlow {
  const Surface* surface = nullptr;
  ReebOrbit orbit;
  Trivialization triv;
  SymplecticPath psi;  // Psi_P on R by the cocycle rule
  SymmetricLoop s;     // S_P, tabulated and interpolated
  double symplectic_drift = 0.0;
  double symmetry_defect = 0.0;   // max |Psi(-t) - I Psi(t) I|
  double endpoint_offdiag = 0.0;  // S_P(0), S_P(T/2) off-diagonal
};

struct LinearizationOptions {
  int table_points = 2048;  // samples of S_P per period
  double fd_step = 1e-6;
  ode::Options ode = flow_options();
};

/// Psi_P(t) = Phi(t)^{-1} T phi^t Phi(0) from the ambient variational equation,
/// read out in the trivialization; S_P = -J0 Psi' Psi^{-1} tabulated on a
/// uniform grid and interpolated by periodic cubic B-splines.
inline LinearizedFlow linearized_flow(const Surface& surface, const ReebOrbit& orbit, const Trivialization& triv = {},
                                      const LinearizationOptions& lo = {}) {
  const double T = orbit.T;
  const Surface* sp = &surface;
  auto rhs = [sp](const detail::Big& z, detail::Big& dz, double) { detail::variational_rhs(*sp, z, dz); };
  detail::Big z0{};
  for (int i = 0; i < 4; ++i) z0[i] = orbit.start(i);
  for (int i = 0; i < 4; ++i) z0[4 + 5 * i] = 1.0;
  auto sol = std::make_shared<const ode::DenseSolution<20>>(rhs, z0, 0.0, T, lo.ode);

  const Eigen::Matrix<double, 4, 2> phi0 = triv.frame(surface, orbit.start, 0.0, T);
  auto raw = [sol, sp, triv, phi0, T](double t) -> Mat2 {
    const detail::Big z = (*sol)(t);
    return triv.coordinates(*sp, detail::point_of(z), t, T) * detail::tangent_of(z) * phi0;
  };
  const Mat2 mono = raw(T);
  const Mat2 mono_inv = mono.inverse();
  auto eval = [raw, mono, mono_inv, T](double t) -> Mat2 {
    const double q = std::floor(t / T);
    double r = t - q * T;
    if (r < 0.0) r = 0.0;
    Mat2 m = raw(r);
    const long n = static_cast<long>(q);
    for (long i = 0; i < std::labs(n); ++i) m = m * (n > 0 ? mono : mono_inv);
    return m;
  };

  LinearizedFlow out;
  out.surface = sp;
  out.orbit = orbit;
  out.triv = triv;
  out.psi = SymplecticPath{T, eval, orbit.symmetric};

  // S_P on the grid
  const int n = lo.table_points;
  const double h = T / n;
  const double eps = lo.fd_step;
  auto s_at = [&](double t) -> Mat2 {
    const detail::Big z = (*sol)(t);
    const Vec4 x = detail::point_of(z);
    const Mat4 y = detail::tangent_of(z);
    const Vec4 v = reeb_field_unchecked(surface, x);
    const Eigen::Matrix<double, 2, 4> c = triv.coordinates(surface, x, t, T);
    const Eigen::Matrix<double, 2, 4> dc =
        (triv.coordinates(surface, x + eps * v, t + eps, T) - triv.coordinates(surface, x - eps * v, t - eps, T)) /
        (2.0 * eps);
    const Mat2 p = c * y * phi0;
    const Mat2 dp = dc * y * phi0 + c * reeb_jacobian(surface, x) * y * phi0;
    const Mat2 s = -j0() * dp * p.inverse();
    return 0.5 * (s + s.transpose());
  };
  std::vector<Mat2> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[i] = s_at(i * h);
  constexpr int pad = 8;
  std::array<std::vector<double>, 3> vals;
  for (int i = -pad; i <= n + pad; ++i) {
    const Mat2& m = grid[static_cast<std::size_t>(((i % n) + n) % n)];
    vals[0].push_back(m(0, 0));
    vals[1].push_back(m(0, 1));
    vals[2].push_back(m(1, 1));
  }
  using Spline = boost::math::interpolators::cardinal_cubic_b_spline<double>;
  auto splines = std::make_shared<std::array<Spline, 3>>(std::array<Spline, 3>{
      Spline(vals[0].begin(), vals[0].end(), -pad * h, h), Spline(vals[1].begin(), vals[1].end(), -pad * h, h),
      Spline(vals[2].begin(), vals[2].end(), -pad * h, h)});
  out.s = SymmetricLoop{T,
                        [splines, T](double t) {
                          const double r = t - T * std::floor(t / T);
                          const double a = (*splines)[0](r), b = (*splines)[1](r), c = (*splines)[2](r);
                          Mat2 m;
                          m << a, b, b, c;
                          return m;
                        },
                        orbit.symmetric};

  for (int i = 0; i <= 64; ++i) {
    const double t = T * i / 64.0;
    const Mat2 m = out.psi(t);
    out.symplectic_drift = std::max(out.symplectic_drift, symplectic_defect(m));
    if (orbit.symmetric)
      out.symmetry_defect = std::max(out.symmetry_defect, max_abs(out.psi(-t) - conj_i() * m * conj_i()));
  }
  if (orbit.symmetric)
    out.endpoint_offdiag = std::max(std::abs(s_at(0.0)(0, 1)), std::abs(s_at(0.5 * T)(0, 1)));
  if (out.symplectic_drift > 1e-6)
    throw NonSymplecticDrift("linearized flow symplectic defect " + std::to_string(out.symplectic_drift));
  if (orbit.symmetric && (out.symmetry_defect > 1e-6 || out.endpoint_offdiag > 1e-6))
    throw SymmetryViolated("Psi_P symmetry " + std::to_string(out.symmetry_defect) + ", S_P off-diagonal " +
                           std::to_string(out.endpoint_offdiag));
  return out;
}

/// Residuals of the trivialization along the orbit (probed at 64 times).
inline TrivializationCheck check_trivialization(const Surface& s, const ReebOrbit& orbit, const Trivialization& triv,
                                                int probes = 64) {
  TrivializationCheck c;
  std::vector<Vec4> pts;
  std::vector<double> times;
  const double T = orbit.T;
  flow_observed(s, orbit.start, T, [&](double t, const Vec4& x) {
    times.push_back(t);
    pts.push_back(x);
  });
  auto at = [&](double t) {
    // nearest recorded point, then a short flow to t
    auto it = std::upper_bound(times.begin(), times.end(), t);
    const std::size_t k = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
    return times[k] == t ? pts[k] : flow(s, pts[k], t - times[k]);
  };
  const Mat4 r = rho_matrix();
  for (int i = 0; i <= probes; ++i) {
    const double t = T * i / probes;
    const Vec4 x = at(t);
    const auto f = triv.frame(s, x, t, T);
    c.unitarity = std::max({c.unitarity, std::abs(ambient_w(f.col(0), f.col(1)) - 1.0),
                            (xi_complex_structure(s, x, f.col(0)) - f.col(1)).norm()});
    if (orbit.symmetric) {
      const double tb = i == 0 ? 0.0 : T - t;  // P(-t) = P(T - t)
      const auto g = triv.frame(s, at(tb), -t, T);
      c.symmetry = std::max({c.symmetry, (r * f.col(0) - g.col(0)).norm(), (r * f.col(1) + g.col(1)).norm()});
    }
  }
  const auto f0 = triv.frame(s, orbit.start, 0.0, T);
  c.fix_defect = (r * f0.col(0) - f0.col(0)).norm();
  return c;
}

// ---------------------------------------------------------------------------
// symmetric orbit search

struct OrbitSearchOptions {
  int s_samples = 24;         // starts on Fix rho ∩ M
  double period_cap = 10.0;   // orbits with T <= cap
  double min_half_period = 0.05;
  double seed_tol = 0.05;     // |(y1, y2)| at a trajectory minimum to qualify as a seed
  int max_newton = 40;
  double dedupe_tol = 1e-5;
  int max_divisor = 8;
  int jobs = 1;
};

struct OrbitSearch {
  std::vector<ReebOrbit> orbits;  // sorted by period
  int seeds = 0;
  int failed = 0;                 // seeds without Newton convergence
};

namespace detail {

inline Vec4 fix_curve(const Surface& s, double angle) {
  return radial_point(s, Vec4(std::cos(angle), 0.0, std::sin(angle), 0.0));
}

inline Vec2 imaginary_parts(const Vec4& x) { return {x(1), x(3)}; }

struct Seed {
  double s, tau;
};

/// Newton on (s, tau) -> (y1, y2)(phi^tau(p(s))) with a finite-difference
/// s-derivative and the exact tau-derivative X.
inline std::optional<Seed> refine_seed(const Surface& surf, Seed seed, const OrbitSearchOptions& o) {
  auto residual = [&](double s, double tau) { return imaginary_parts(flow(surf, fix_curve(surf, s), tau)); };
  double s = seed.s, tau = seed.tau;
  Vec2 r = residual(s, tau);
  for (int it = 0; it < o.max_newton; ++it) {
    if (r.norm() < 1e-13) return Seed{s, tau};
    const double hs = 1e-7;
    const Vec4 end = flow(surf, fix_curve(surf, s), tau);
    const Vec2 ds = (residual(s + hs, tau) - residual(s - hs, tau)) / (2.0 * hs);
    const Vec2 dt = imaginary_parts(reeb_field_unchecked(surf, end));
    Mat2 jac;
    jac.col(0) = ds;
    jac.col(1) = dt;
    const Vec2 step = jac.colPivHouseholderQr().solve(-r);
    if (!step.allFinite()) return std::nullopt;
    double damp = 1.0;
    bool improved = false;
    for (int k = 0; k < 12; ++k, damp *= 0.5) {
      const double s2 = s + damp * step(0), t2 = tau + damp * step(1);
      if (t2 <= 0.0) continue;
      const Vec2 r2 = residual(s2, t2);
      if (r2.norm() < r.norm()) {
        s = s2;
        tau = t2;
        r = r2;
        improved = true;
        break;
      }
    }
    if (!improved) return r.norm() < 1e-11 ? std::optional<Seed>(Seed{s, tau}) : std::nullopt;
  }
  return r.norm() < 1e-11 ? std::optional<Seed>(Seed{s, tau}) : std::nullopt;
}

}  // namespace detail

/// Transverse monodromy of an orbit in the contact frame at its start.
inline Mat2 transverse_monodromy(const Surface& s, const ReebOrbit& o) {
  auto rhs = [&s](const detail::Big& z, detail::Big& dz, double) { detail::variational_rhs(s, z, dz); };
  detail::Big z{};
  for (int i = 0; i < 4; ++i) z[i] = o.start(i);
  for (int i = 0; i < 4; ++i) z[4 + 5 * i] = 1.0;
  z = ode::solve<20>(rhs, z, 0.0, o.T, flow_options());
  const auto f = contact_frame(s, o.start);
  return frame_coordinates(f) * detail::tangent_of(z) * f;
}

/// Symmetric periodic orbits through Fix rho with period at most the cap.
inline OrbitSearch find_symmetric_orbits(const Surface& surf, const OrbitSearchOptions& o = {}) {
  if (!surf.symmetric()) throw PreconditionViolated("surface is not rho-invariant");
  OrbitSearch out;
  const double tau_max = 0.5 * o.period_cap;

  // seeds: minima of |Im| along one trajectory per start
  const auto seed_lists = parallel_map(static_cast<std::size_t>(o.s_samples), o.jobs, [&](std::size_t i) {
    const double s = 2.0 * M_PI * static_cast<double>(i) / o.s_samples;
    const Vec4 p = detail::fix_curve(surf, s);
    std::vector<double> ts, vs;
    flow_observed(surf, p, tau_max, [&](double t, const Vec4& x) {
      ts.push_back(t);
      vs.push_back(detail::imaginary_parts(x).norm());
    });
    std::vector<detail::Seed> seeds;
    for (std::size_t k = 1; k + 1 < ts.size(); ++k)
      if (ts[k] >= o.min_half_period && vs[k] <= vs[k - 1] && vs[k] <= vs[k + 1] && vs[k] < o.seed_tol)
        seeds.push_back({s, ts[k]});
    return seeds;
  });
  std::vector<detail::Seed> seeds;
  for (const auto& l : seed_lists) seeds.insert(seeds.end(), l.begin(), l.end());
  out.seeds = static_cast<int>(seeds.size());

  const auto refined = parallel_map(seeds.size(), o.jobs, [&](std::size_t i) -> std::optional<ReebOrbit> {
    std::optional<detail::Seed> r;
    try {
      r = detail::refine_seed(surf, seeds[i], o);
    } catch (const Error&) {
      r.reset();
    }
    if (!r) return std::nullopt;
    ReebOrbit orb;
    orb.start = detail::fix_curve(surf, r->s);
    orb.T = 2.0 * r->tau;
    orb.symmetric = true;
    return orb;
  });

  std::vector<ReebOrbit> found;
  for (std::size_t i = 0; i < refined.size(); ++i) {
    if (!refined[i]) {
      ++out.failed;
      continue;
    }
    ReebOrbit orb = *refined[i];
    if (orb.T < 2.0 * o.min_half_period || orb.T > o.period_cap + 1e-9) continue;
    // minimal period
    for (int k = o.max_divisor; k >= 2; --k) {
      if (orb.T / k < 2.0 * o.min_half_period) continue;
      if ((flow(surf, orb.start, orb.T / k) - orb.start).norm() < 1e-6) {
        orb.T /= k;
        break;
      }
    }
    bool dup = false;
    for (const auto& f : found) {
      if (std::abs(f.T - orb.T) > o.dedupe_tol) continue;
      const Vec4 mid = flow(surf, f.start, 0.5 * f.T);
      if ((f.start - orb.start).norm() < o.dedupe_tol || (mid - orb.start).norm() < o.dedupe_tol) dup = true;
    }
    if (!dup) found.push_back(orb);
  }
  std::stable_sort(found.begin(), found.end(), [](const ReebOrbit& a, const ReebOrbit& b) { return a.T < b.T; });
  for (auto& orb : found) {
    orb.residual = (flow(surf, orb.start, orb.T) - orb.start).norm();
    orb.floquet = multipliers(transverse_monodromy(surf, orb));
    orb.degenerate = near_one(orb.floquet);
  }
  out.orbits = std::move(found);
  return out;
}

// ---------------------------------------------------------------------------
// indices

struct OrbitIndices {
  int m = 1;
  HalfInt mu_cz;                 // of P^m
  std::optional<HalfInt> mu_rs;  // of C^m, symmetric orbits only
};

/// Indices of P^m and C^m by crossing forms and by spectral windings; they are
/// returned only if both methods agree.
inline OrbitIndices orbit_indices(const LinearizedFlow& lf, int m, const SpectralOptions& so = {},
                                  const RsOptions& ro = {}) {
  if (m < 1) throw InvalidSpec("iteration count must be positive");
  const double T = lf.orbit.T;
  const auto mu = multipliers(lf.psi(T));
  if (near_one(mu, m)) throw DegenerateOrbit("Floquet multiplier of P^" + std::to_string(m) + " near 1");
  OrbitIndices r;
  r.m = m;
  const SymplecticPath pm = restrict_path(lf.psi, m * T);
  const HalfInt cz = cz_index(pm, ro);
  const HalfInt cz_spec = mu_spec(SymmetricLoop{m * T, lf.s.eval, lf.s.symmetric}, so);
  if (cz != cz_spec)
    throw MethodDisagreement("mu_CZ(P^" + std::to_string(m) + "): crossing forms " + cz.str() + ", spectral " +
                             cz_spec.str());
  r.mu_cz = cz;
  if (lf.orbit.symmetric) {
    const SymplecticPath half = restrict_path(lf.psi, 0.5 * m * T);
    if (!pair_nondegenerate(half, real_axis()))
      throw DegenerateOrbit("chord C^" + std::to_string(m) + " is degenerate");
    const HalfInt rs = rs_index<2>(act_on_line(half, real_axis()), real_axis(), ro).index;
    const HalfInt rs_spec = mu_I(iterate_chord_data(half_of(lf.s), m), so);
    if (rs != rs_spec)
      throw MethodDisagreement("mu_RS(C^" + std::to_string(m) + "): crossing forms " + rs.str() + ", spectral " +
                               rs_spec.str());
    r.mu_rs = rs;
  }
  return r;
}

/// Implications between indices of an orbit and its iterates.
struct IterationImplications {
  bool cz_below_one = true;     // cz(P) < 1  => cz(P^m) < 1
  bool cz_at_least_one = true;  // cz(P) >= 1 => cz(P^m) >= 1
  bool cz_growth = true;        // cz(P) >= 3 => cz(P^m) >= 2m + 1
  bool rs_below_half = true;
  bool rs_at_least_half = true;
  bool rs_growth = true;        // rs(C) >= 3/2 => rs(C^m) >= (2m + 1)/2
  bool cz_to_rs = true;         // cz(P) >= 3 => rs(C) >= 3/2
  bool ok() const {
    return cz_below_one && cz_at_least_one && cz_growth && rs_below_half && rs_at_least_half && rs_growth && cz_to_rs;
  }
};

/// idx[k] holds the indices of the (k+1)-fold iterate.
inline IterationImplications check_iteration(const std::vector<OrbitIndices>& idx) {
  IterationImplications r;
  if (idx.empty()) return r;
  const HalfInt cz1 = idx.front().mu_cz;
  const auto rs1 = idx.front().mu_rs;
  for (const auto& k : idx) {
    const HalfInt m = HalfInt(k.m);
    if (cz1 < HalfInt(1) && !(k.mu_cz < HalfInt(1))) r.cz_below_one = false;
    if (cz1 >= HalfInt(1) && !(k.mu_cz >= HalfInt(1))) r.cz_at_least_one = false;
    if (cz1 >= HalfInt(3) && !(k.mu_cz >= 2 * m + HalfInt(1))) r.cz_growth = false;
    if (rs1 && k.mu_rs) {
      const HalfInt half = HalfInt::half();
      if (*rs1 < half && !(*k.mu_rs < half)) r.rs_below_half = false;
      if (*rs1 >= half && !(*k.mu_rs >= half)) r.rs_at_least_half = false;
      if (*rs1 >= HalfInt::from_twice(3) && !(*k.mu_rs >= m + half)) r.rs_growth = false;
    }
  }
  if (rs1 && cz1 >= HalfInt(3) && *rs1 < HalfInt::from_twice(3)) r.cz_to_rs = false;
  return r;
}

}  // namespace symreeb
