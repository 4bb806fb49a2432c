#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "half_int.hpp"
#include "linalg.hpp"
#include "maslov.hpp"
#include "ode.hpp"
#include "parallel.hpp"
#include "paths.hpp"

namespace symreeb {

/// T-periodic loop of symmetric matrices S(t).
struct SymmetricLoop {
  double T = 1.0;
  CoeffFn eval;
  bool symmetric = false;  // S(-t) = I S(t) I is asserted

  Mat2 operator()(double t) const { return eval(t); }
};

/// Symmetric matrices D(t) on [0, T/2], diagonal at both ends.
struct BoundarySymmetricPath {
  double half_T = 0.5;
  CoeffFn eval;

  Mat2 operator()(double t) const { return eval(t); }
};

enum class Problem { periodic, bc_I, bc_minus_I };

inline const char* to_string(Problem p) {
  switch (p) {
    case Problem::periodic: return "periodic";
    case Problem::bc_I: return "I";
    case Problem::bc_minus_I: return "-I";
  }
  return "?";
}

struct SpectrumEntry {
  double lambda = 0.0;
  HalfInt winding;
  int multiplicity = 1;
};

struct SpectrumSlice {
  Problem problem = Problem::periodic;
  double a = 0.0, b = 0.0;
  std::vector<SpectrumEntry> entries;  // ascending in lambda
};

struct SpectralOptions {
  int cells_per_band = 512;     // scan cells per 2 pi / T
  double identity_tol = 1e-6;   // |M - 1| for a double eigenvalue
  double zero_tol = 1e-8;       // |g(0)| below this means 0 is in the spectrum
  double merge_gap = 1e-4;     // spurious splitting of a double root is ~sqrt(ODE error)
  int max_window_doublings = 8;
  int jobs = 1;
  ode::Options ode{};
};

inline SymmetricLoop constant_loop(double c, double T = 1.0) {
  return {T, [c](double) { return Mat2(c * Mat2::Identity()); }, true};
}

inline BoundarySymmetricPath constant_chord(double c, double half_T = 0.5) {
  return {half_T, [c](double) { return Mat2(c * Mat2::Identity()); }};
}

/// D = S restricted to [0, T/2].
inline BoundarySymmetricPath half_of(const SymmetricLoop& s) { return {0.5 * s.T, s.eval}; }

struct LoopCheck {
  double asymmetry = 0.0;    // |S - S^T|
  double periodicity = 0.0;  // |S(t + T) - S(t)|
  double reflection = 0.0;   // |S(-t) - I S(t) I|, only when flagged
  bool ok = true;
};

inline LoopCheck check_loop(const SymmetricLoop& s, int probes = 64) {
  LoopCheck c;
  for (int i = 0; i <= probes; ++i) {
    const double t = s.T * i / probes;
    const Mat2 m = s(t);
    c.asymmetry = std::max(c.asymmetry, max_abs(m - m.transpose()));
    c.periodicity = std::max(c.periodicity, max_abs(s(t + s.T) - m));
    if (s.symmetric) c.reflection = std::max(c.reflection, max_abs(s(-t) - conj_i() * m * conj_i()));
  }
  c.ok = c.asymmetry <= 1e-12 && c.periodicity <= 1e-10 && c.reflection <= 1e-8;
  return c;
}

inline double endpoint_offdiagonal(const BoundarySymmetricPath& d) {
  return std::max(std::abs(d(0.0)(0, 1)), std::abs(d(d.half_T)(0, 1)));
}

/// S_Psi = -J0 Psi' Psi^{-1} by central differences, symmetrized.
inline CoeffFn coefficient_of(const SymplecticPath& psi, double h = 1e-6) {
  return [psi, h](double t) {
    const Mat2 dpsi = (psi(t + h) - psi(t - h)) / (2.0 * h);
    const Mat2 s = -j0() * dpsi * psi(t).inverse();
    return Mat2(0.5 * (s + s.transpose()));
  };
}

// ---------------------------------------------------------------------------
// shooting

/// Phi_lambda with Phi' = J0 (S + lambda) Phi, Phi(0) = 1, on [0, t_end].
inline SymplecticPath fundamental_solution(const CoeffFn& s, double lambda, double t_end, bool periodic = false,
                                           const ode::Options& opt = {}) {
  SymplecticPath p = solve_linear_path(s, lambda, t_end, periodic, opt);
  const double drift = symplectic_defect(p(t_end));
  if (drift > 1e-8) throw IntegratorFailure("symplectic drift " + std::to_string(drift));
  return p;
}

inline SymplecticPath fundamental_solution(const SymmetricLoop& s, double lambda, const ode::Options& opt = {}) {
  SymplecticPath p = fundamental_solution(s.eval, lambda, s.T, true, opt);
  p.symmetric = s.symmetric;
  return p;
}

namespace detail {

inline Mat2 monodromy(const CoeffFn& s, double lambda, double t_end, const ode::Options& opt) {
  auto rhs = [&](const ode::State<4>& x, ode::State<4>& dx, double t) { matrix_rhs(s(t), lambda, x, dx); };
  return to_mat(ode::solve<4>(rhs, ode::State<4>{1.0, 0.0, 0.0, 1.0}, 0.0, t_end, opt));
}

inline void vector_rhs(const Mat2& s, double lambda, const ode::State<2>& x, ode::State<2>& dx) {
  const double a = s(0, 0) + lambda, b = 0.5 * (s(0, 1) + s(1, 0)), c = s(1, 1) + lambda;
  dx[0] = -b * x[0] - c * x[1];
  dx[1] = a * x[0] + b * x[1];
}

inline Vec2 shoot(const CoeffFn& s, double lambda, double t_end, const Vec2& x0, const ode::Options& opt) {
  auto rhs = [&](const ode::State<2>& x, ode::State<2>& dx, double t) { vector_rhs(s(t), lambda, x, dx); };
  const auto x = ode::solve<2>(rhs, ode::State<2>{x0(0), x0(1)}, 0.0, t_end, opt);
  return {x[0], x[1]};
}

/// One eigenvalue problem: coefficient, interval, boundary condition.
struct Shooter {
  Problem problem;
  CoeffFn s;
  double t_end;
  ode::Options opt;

  double g(double lambda) const {
    switch (problem) {
      case Problem::periodic: return monodromy(s, lambda, t_end, opt).trace() - 2.0;
      case Problem::bc_I: return shoot(s, lambda, t_end, Vec2(1.0, 0.0), opt)(1);
      case Problem::bc_minus_I: return shoot(s, lambda, t_end, Vec2(0.0, 1.0), opt)(0);
    }
    return 0.0;
  }

  double identity_defect(double lambda) const { return max_abs(monodromy(s, lambda, t_end, opt) - Mat2::Identity()); }

  // constant-coefficient eigenvalue spacing
  double band() const { return problem == Problem::periodic ? 2.0 * M_PI / t_end : M_PI / t_end; }

  double coefficient_bound() const {
    double m = 0.0;
    for (int i = 0; i <= 64; ++i) m = std::max(m, s(t_end * i / 64.0).norm());
    return m;
  }
};

inline Shooter shooter(const SymmetricLoop& s, const ode::Options& opt) {
  return {Problem::periodic, s.eval, s.T, opt};
}

inline Shooter shooter(const BoundarySymmetricPath& d, Problem bc, const ode::Options& opt) {
  return {bc, d.eval, d.half_T, opt};
}

inline HalfInt winding(const Shooter& sh, double lambda, double coeff_bound) {
  Vec2 g0;
  if (sh.problem == Problem::bc_I) {
    g0 = Vec2(1.0, 0.0);
  } else if (sh.problem == Problem::bc_minus_I) {
    g0 = Vec2(0.0, 1.0);
  } else {
    const Mat2 m = monodromy(sh.s, lambda, sh.t_end, sh.opt);
    Eigen::JacobiSVD<Mat2> svd(m - Mat2::Identity(), Eigen::ComputeFullV);
    g0 = svd.matrixV().col(1);
  }
  ode::Options opt = sh.opt;
  // |d arg / dt| <= |S + lambda|, so this cap keeps each step's turn below pi/4
  opt.max_step = std::min(opt.max_step, (M_PI / 4.0) / (std::abs(lambda) + 1.25 * coeff_bound + 1e-3));
  auto rhs = [&](const ode::State<2>& x, ode::State<2>& dx, double t) { vector_rhs(sh.s(t), lambda, x, dx); };
  ode::State<2> x{g0(0), g0(1)};
  double turned = 0.0;
  ode::State<2> prev = x;
  ode::integrate<2>(rhs, x, 0.0, sh.t_end, opt, [&](double t, const ode::State<2>& cur) {
    if (std::hypot(cur[0], cur[1]) < 1e-12) throw ZeroEigenfunction("eigenfunction vanishes at t = " + std::to_string(t));
    turned += std::atan2(prev[0] * cur[1] - prev[1] * cur[0], prev[0] * cur[0] + prev[1] * cur[1]);
    prev = cur;
  });
  if (sh.problem == Problem::periodic) return HalfInt(static_cast<std::int64_t>(std::llround(turned / (2.0 * M_PI))));
  return HalfInt::from_twice(static_cast<std::int64_t>(std::llround(turned / M_PI)));
}

template <class F>
double bracket_root(F&& f, double lo, double hi, double flo, double fhi) {
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(44),
                                                   iters);
  return 0.5 * (r.first + r.second);
}

struct RawRoot {
  double lambda;
  int multiplicity;
};

/// Roots of the shooting function in [a, b]. Periodic problems also refine each
/// negative local maximum of g, which is where double eigenvalues (monodromy
/// equal to the identity) and pairs closer than one scan cell hide.
inline std::vector<RawRoot> scan_roots(const Shooter& sh, double a, double b, const SpectralOptions& so) {
  const int cells = std::max(so.cells_per_band,
                             static_cast<int>(std::ceil(so.cells_per_band * (b - a) / (2.0 * M_PI / sh.t_end))));
  std::vector<double> lam(static_cast<std::size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i) lam[i] = a + (b - a) * i / cells;
  lam[cells] = b;
  const std::vector<double> g = parallel_map(lam.size(), so.jobs, [&](std::size_t i) { return sh.g(lam[i]); });
  auto f = [&](double l) { return sh.g(l); };

  std::vector<RawRoot> roots;
  for (int i = 0; i <= cells; ++i)
    if (g[i] == 0.0) roots.push_back({lam[i], 1});
  for (int i = 0; i < cells; ++i)
    if ((g[i] < 0.0 && g[i + 1] > 0.0) || (g[i] > 0.0 && g[i + 1] < 0.0))
      roots.push_back({bracket_root(f, lam[i], lam[i + 1], g[i], g[i + 1]), 1});

  if (sh.problem == Problem::periodic) {
    for (int i = 1; i < cells; ++i) {
      if (!(g[i] < 0.0 && g[i - 1] < 0.0 && g[i + 1] < 0.0 && g[i] >= g[i - 1] && g[i] >= g[i + 1])) continue;
      std::uintmax_t iters = 200;
      const auto [lstar, neg] =
          boost::math::tools::brent_find_minima([&](double l) { return -sh.g(l); }, lam[i - 1], lam[i + 1], 40, iters);
      const double gstar = -neg;
      if (gstar > 0.0) {
        roots.push_back({bracket_root(f, lam[i - 1], lstar, g[i - 1], gstar), 1});
        roots.push_back({bracket_root(f, lstar, lam[i + 1], gstar, g[i + 1]), 1});
      } else if (gstar > -1e-8) {
        const auto [lmin, defect] = detail::golden_minimum([&](double l) { return sh.identity_defect(l); }, lam[i - 1],
                                                           lam[i + 1], 1e-13);
        if (defect <= so.identity_tol) roots.push_back({lmin, 2});
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const RawRoot& x, const RawRoot& y) { return x.lambda < y.lambda; });

  // close pairs with identity monodromy are one double eigenvalue
  std::vector<RawRoot> merged;
  for (const RawRoot& r : roots) {
    if (!merged.empty() && r.lambda - merged.back().lambda < so.merge_gap) {
      RawRoot& last = merged.back();
      const double mid = 0.5 * (last.lambda + r.lambda);
      if (sh.problem == Problem::periodic && sh.identity_defect(mid) <= so.identity_tol) {
        const auto [lmin, defect] = detail::golden_minimum([&](double l) { return sh.identity_defect(l); },
                                                           last.lambda - so.merge_gap, r.lambda + so.merge_gap, 1e-13);
        last = {defect <= so.identity_tol ? lmin : mid, 2};
        continue;
      }
      if (r.lambda - last.lambda < 1e-10)
        throw WindowTooCoarse("roots at " + std::to_string(last.lambda) + " and " + std::to_string(r.lambda) +
                              " are not separated");
    }
    merged.push_back(r);
  }
  if (sh.problem == Problem::periodic)
    for (RawRoot& r : merged)
      if (r.multiplicity == 1 && sh.identity_defect(r.lambda) <= so.identity_tol) r.multiplicity = 2;
  return merged;
}

inline SpectrumSlice spectrum(const Shooter& sh, double a, double b, const SpectralOptions& so) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw InvalidSpec("window must be finite with a < b");
  SpectrumSlice out{sh.problem, a, b, {}};
  const double bound = sh.coefficient_bound();
  for (const RawRoot& r : scan_roots(sh, a, b, so))
    out.entries.push_back({r.lambda, winding(sh, r.lambda, bound), r.multiplicity});
  return out;
}

enum class Side { below, above };

/// The eigenvalue closest to 0 strictly below it, or the one closest at or
/// above it, growing the search window geometrically.
inline SpectrumEntry nearest_eigenvalue(const Shooter& sh, Side side, const SpectralOptions& so) {
  double w = sh.band();
  for (int k = 0; k <= so.max_window_doublings; ++k, w *= 2.0) {
    const SpectrumSlice s = side == Side::below ? spectrum(sh, -w, 0.0, so) : spectrum(sh, 0.0, w, so);
    std::vector<SpectrumEntry> e = s.entries;
    if (side == Side::below) {
      e.erase(std::remove_if(e.begin(), e.end(), [](const SpectrumEntry& x) { return x.lambda >= 0.0; }), e.end());
      if (!e.empty()) return e.back();
    } else {
      if (!e.empty()) return e.front();
    }
  }
  throw WindowTooCoarse("no eigenvalue found within " + std::to_string(w / 2.0) + " of 0");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// spectra and windings

inline SpectrumSlice periodic_spectrum(const SymmetricLoop& s, double a, double b, const SpectralOptions& so = {}) {
  return detail::spectrum(detail::shooter(s, so.ode), a, b, so);
}

inline SpectrumSlice boundary_spectrum(const BoundarySymmetricPath& d, Problem bc, double a, double b,
                                       const SpectralOptions& so = {}) {
  if (bc == Problem::periodic) throw InvalidSpec("boundary_spectrum needs bc I or -I");
  return detail::spectrum(detail::shooter(d, bc, so.ode), a, b, so);
}

/// Winding (periodic) or relative winding (boundary problems) of the
/// eigenfunction at lambda; lambda must be an eigenvalue.
inline HalfInt winding_of(const CoeffFn& s, double t_end, double lambda, Problem problem, const SpectralOptions& so = {}) {
  const detail::Shooter sh{problem, s, t_end, so.ode};
  const double residual = std::abs(sh.g(lambda));
  if (residual > 1e-6) throw PreconditionViolated("not an eigenvalue, residual " + std::to_string(residual));
  return detail::winding(sh, lambda, sh.coefficient_bound());
}

/// mu(S) = 2 alpha + p.
inline HalfInt mu_spec(const SymmetricLoop& s, const SpectralOptions& so = {}) {
  const auto sh = detail::shooter(s, so.ode);
  const double g0 = sh.g(0.0);
  if (std::abs(g0) <= so.zero_tol) throw DegenerateSpectrum("0 is an eigenvalue, |g(0)| = " + std::to_string(std::abs(g0)));
  const HalfInt alpha = detail::nearest_eigenvalue(sh, detail::Side::below, so).winding;
  const HalfInt beta = detail::nearest_eigenvalue(sh, detail::Side::above, so).winding;
  const HalfInt p = beta - alpha;
  if (p != HalfInt(0) && p != HalfInt(1))
    throw WindowTooCoarse("winding jumps from " + alpha.str() + " to " + beta.str() + " across 0");
  return 2 * alpha + p;
}

namespace detail {
inline HalfInt mu_boundary(const BoundarySymmetricPath& d, Problem bc, const SpectralOptions& so) {
  const auto sh = shooter(d, bc, so.ode);
  const double g0 = sh.g(0.0);
  if (std::abs(g0) <= so.zero_tol)
    throw KernelNonTrivial(std::string("0 is an eigenvalue of the ") + to_string(bc) + " problem");
  const HalfInt w = nearest_eigenvalue(sh, Side::below, so).winding;
  return HalfInt::from_twice(2 * w.twice() + 1);
}
}  // namespace detail

/// mu_I(D) = 2 alpha_I + 1/2 from the R-axis boundary problem.
inline HalfInt mu_I(const BoundarySymmetricPath& d, const SpectralOptions& so = {}) {
  return detail::mu_boundary(d, Problem::bc_I, so);
}

/// mu_{-I}(D) from the iR-axis boundary problem.
inline HalfInt mu_minus_I(const BoundarySymmetricPath& d, const SpectralOptions& so = {}) {
  return detail::mu_boundary(d, Problem::bc_minus_I, so);
}

struct KernelTestReport {
  int dim = 0;             // dim(R ∩ Psi(T/2)^{-1} R)
  int zero_eigenvalues = 0;  // bc_I eigenvalues within 1e-6 of 0
  bool agree = false;
};

/// Kernel of A_D: solutions Psi(t) v0 with v0 real and Psi(T/2) v0 real.
inline KernelTestReport kernel_test(const SymplecticPath& psi_half, const BoundarySymmetricPath& d,
                                    const SpectralOptions& so = {}) {
  KernelTestReport r;
  const Vec2 back = psi_half(psi_half.T).inverse() * Vec2(1.0, 0.0);
  r.dim = lagrangian_intersection_dim<2>(real_axis(), Line{back}, 1e-8);
  for (const auto& e : boundary_spectrum(d, Problem::bc_I, -0.5, 0.5, so).entries)
    if (std::abs(e.lambda) <= 1e-6) r.zero_eigenvalues += e.multiplicity;
  r.agree = r.dim == r.zero_eigenvalues;
  return r;
}

/// Coefficient path of the m-fold chord: D on even half-period blocks and its
/// reflection I D(T/2 - s) I on odd ones.
inline BoundarySymmetricPath iterate_chord_data(const BoundarySymmetricPath& d, int m) {
  if (m < 1) throw InvalidSpec("iteration count must be positive");
  const double off = endpoint_offdiagonal(d);
  if (off > 1e-8) throw SymmetryViolated("D is not diagonal at the chord ends, off-diagonal " + std::to_string(off));
  if (m == 1) return d;
  const double h = d.half_T;
  return {m * h, [d, h, m](double t) {
            const int j = std::clamp(static_cast<int>(std::floor(t / h)), 0, m - 1);
            const double s = t - j * h;
            if (j % 2 == 0) return d(s);
            return Mat2(conj_i() * d(h - s) * conj_i());
          }};
}

// ---------------------------------------------------------------------------
// cross-checks

struct SliceCheck {
  bool increasing = true;
  bool monotone_winding = true;
  bool multiplicities = true;  // 2 per integer winding (periodic) or 1 per half-integer winding (boundary)
  bool ok() const { return increasing && monotone_winding && multiplicities; }
};

/// Structural checks of a slice; winding classes at the window edges may be
/// cut off and are only required to be present, not complete.
inline SliceCheck check_slice(const SpectrumSlice& s) {
  SliceCheck c;
  std::map<std::int64_t, int> count;
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const auto& e = s.entries[i];
    if (e.multiplicity < 1 || e.multiplicity > 2) c.multiplicities = false;
    count[e.winding.twice()] += e.multiplicity;
    if (i == 0) continue;
    if (!(s.entries[i - 1].lambda < e.lambda)) c.increasing = false;
    if (s.entries[i - 1].winding > e.winding) c.monotone_winding = false;
  }
  if (count.empty()) return c;
  const bool periodic = s.problem == Problem::periodic;
  const std::int64_t step = periodic ? 2 : 1;
  const std::int64_t lo = count.begin()->first, hi = count.rbegin()->first;
  for (std::int64_t w = lo; w <= hi; w += step) {
    const auto it = count.find(w);
    const int n = it == count.end() ? 0 : it->second;
    const bool edge = w == lo || w == hi;
    if (periodic) {
      if (w % 2 != 0) c.multiplicities = false;
      if (edge ? (n < 1 || n > 2) : n != 2) c.multiplicities = false;
    } else if (n != 1) {
      c.multiplicities = false;
    }
  }
  return c;
}

struct IndexRelationReport {
  std::optional<HalfInt> mu_spec, mu_I, mu_minus_I, cz, rs_real, rs_imag;
  std::string failure;  // first disagreement, empty when all hold

  bool ok() const { return failure.empty(); }
};

/// mu(S) = mu_I(D) + mu_{-I}(D) for symmetric Psi with coefficient S, each side
/// also matched against the crossing-form indices.
inline IndexRelationReport verify_index_relation(const SymplecticPath& psi, const SymmetricLoop& s,
                                                 const SpectralOptions& so = {}, const RsOptions& ro = {}) {
  IndexRelationReport r;
  const BoundarySymmetricPath d = half_of(s);
  const SymplecticPath half = restrict_path(psi, 0.5 * psi.T);
  r.mu_spec = mu_spec(s, so);
  r.mu_I = mu_I(d, so);
  r.mu_minus_I = mu_minus_I(d, so);
  r.cz = cz_index(psi, ro);
  r.rs_real = rs_index<2>(act_on_line(half, real_axis()), real_axis(), ro).index;
  r.rs_imag = rs_index<2>(act_on_line(half, imag_axis()), imag_axis(), ro).index;
  auto mismatch = [](const char* what, HalfInt a, HalfInt b) {
    return std::string(what) + ": " + a.str() + " vs " + b.str();
  };
  if (*r.mu_spec != *r.cz)
    r.failure = mismatch("mu(S) vs crossing-form CZ", *r.mu_spec, *r.cz);
  else if (*r.mu_I != *r.rs_real)
    r.failure = mismatch("mu_I vs RS on R", *r.mu_I, *r.rs_real);
  else if (*r.mu_minus_I != *r.rs_imag)
    r.failure = mismatch("mu_-I vs RS on iR", *r.mu_minus_I, *r.rs_imag);
  else if (*r.mu_spec != *r.mu_I + *r.mu_minus_I)
    r.failure = mismatch("mu(S) vs mu_I + mu_-I", *r.mu_spec, *r.mu_I + *r.mu_minus_I);
  return r;
}

struct NondegSplitReport {
  int kernel_dim = 0;  // dim ker(Psi(T) - 1)
  bool real_pair_degenerate = false;
  bool imag_pair_degenerate = false;
  double block_b = 0.0, block_c = 0.0;  // off-diagonal entries of Psi(T/2)
  bool blocks_consistent = false;       // Psi(T) = I Psi(T/2)^{-1} I Psi(T/2)
  bool equivalence = false;             // kernel trivial iff both pairs nondegenerate
};

inline NondegSplitReport verify_nondeg_split(const SymplecticPath& psi, double tol = 1e-8) {
  NondegSplitReport r;
  const Mat2 half = psi(0.5 * psi.T);
  const Mat2 full = psi(psi.T);
  r.kernel_dim = lagrangian_intersection_dim<4>(graph_frame_unchecked(full), anti_diagonal(), tol);
  r.real_pair_degenerate = lagrangian_intersection_dim<2>(Line{half.col(0)}, real_axis(), tol) > 0;
  r.imag_pair_degenerate = lagrangian_intersection_dim<2>(Line{half.col(1)}, imag_axis(), tol) > 0;
  r.block_b = half(0, 1);
  r.block_c = half(1, 0);
  r.blocks_consistent = max_abs(conj_i() * half.inverse() * conj_i() * half - full) <= 1e-6 * std::max(1.0, full.norm());
  r.equivalence = (r.kernel_dim == 0) == (!r.real_pair_degenerate && !r.imag_pair_degenerate);
  return r;
}

}  // namespace symreeb
