#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "io.hpp"
#include "maslov.hpp"
#include "orbits.hpp"
#include "parallel.hpp"
#include "random_loops.hpp"
#include "report.hpp"
#include "section.hpp"
#include "spectral.hpp"

namespace symreeb::verify {

using json = nlohmann::json;

struct Config {
  std::uint64_t seed = 7;
  int jobs = 1;
  int loops = 50;
  std::set<std::string> only;  // empty: every suite
};

struct SuiteResult {
  std::string key;
  std::string title;
  std::vector<Tally> checks;
  json values = json::object();  // measured quantities, deterministic for a fixed seed
  std::string error;             // set when the suite itself threw

  bool ok() const {
    if (!error.empty() || checks.empty()) return false;
    return std::all_of(checks.begin(), checks.end(), [](const Tally& t) { return t.ok(); });
  }
};

inline constexpr double kR1 = 1.0, kR2 = 1.3;

inline int rotation_cz(double c) { return 2 * static_cast<int>(std::floor(c / (2.0 * M_PI))) + 1; }

/// mu_I of the constant chord c on [0, m/2].
inline HalfInt rotation_chord_index(double c, int m) {
  return HalfInt::from_twice(2 * static_cast<std::int64_t>(std::floor(m * c / (2.0 * M_PI))) + 1);
}

inline Surface perturbed_surface() { return Surface::ellipsoid(kR1, kR2).plus({{2, 0, 2, 0}, 0.05}); }

/// Outcome of the index computations on one random symmetric loop.
struct LoopOutcome {
  bool skipped = false;
  std::string error;  // numerical failure
  IndexRelationReport rel;
  std::optional<HalfInt> hormander;
};

/// Shared inputs, computed on first use.
class Context {
 public:
  explicit Context(const Config& c) : cfg(c) {}

  const Config cfg;

  std::mt19937_64 rng(std::uint64_t salt) const {
    std::seed_seq s{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(salt)};
    return std::mt19937_64(s);
  }

  const std::vector<LoopOutcome>& loops() {
    if (!loops_) {
      auto g = rng(1);
      std::vector<TrigLoop> draws;
      for (int i = 0; i < cfg.loops; ++i) draws.push_back(random_trig_loop(g, true));
      loops_ = parallel_map(draws.size(), cfg.jobs, [&](std::size_t i) {
        LoopOutcome out;
        try {
          const auto in = make_instance(draws[i]);
          out.rel = verify_index_relation(in.psi, in.s);
          out.hormander = hormander_index(restrict_path(in.psi, 0.5 * in.psi.T));
        } catch (const Error& e) {
          if (e.error_class() == ErrorClass::degenerate)
            out.skipped = true;
          else
            out.error = e.what();
        }
        return out;
      });
    }
    return *loops_;
  }

  const OrbitSearch& ellipsoid() {
    if (!ellipsoid_) {
      OrbitSearchOptions o;
      o.jobs = cfg.jobs;
      ellipsoid_ = find_symmetric_orbits(Surface::ellipsoid(kR1, kR2), o);
    }
    return *ellipsoid_;
  }

 private:
  std::optional<std::vector<LoopOutcome>> loops_;
  std::optional<OrbitSearch> ellipsoid_;
};

namespace detail {

inline Tally tally(const std::string& name) {
  Tally t;
  t.name = name;
  return t;
}

inline void record_skips(SuiteResult& r, const std::vector<LoopOutcome>& loops) {
  int skipped = 0;
  for (const auto& o : loops) skipped += o.skipped;
  r.values["instances"] = loops.size();
  r.values["degenerate_skipped"] = skipped;
  auto t = tally("degenerate draws below 10%");
  t.record(10 * skipped < static_cast<int>(loops.size()), std::to_string(skipped) + " skipped");
  r.checks.push_back(t);
}

// -------------------------------------------------------------------------

inline SuiteResult cz_normalization(Context&) {
  SuiteResult r{"cz_normalization", "CZ normalization on rotations", {}};
  auto t = tally("mu_CZ(exp(c J0 t)) = 2 floor(c / 2 pi) + 1");
  for (double c : {0.3, 1.0, 3.0, 6.4, 9.5, 12.7}) {
    const HalfInt mu = cz_index(rotation_path(c, 1.0));
    t.record(mu == HalfInt(rotation_cz(c)), "c = " + std::to_string(c) + ": " + mu.str());
  }
  r.checks.push_back(t);
  return r;
}

inline SuiteResult rs_axioms(Context& ctx) {
  SuiteResult r{"rs_axioms", "RS index axioms on random line paths", {}};
  const auto rep = verify_rs_axioms(random_rs_instances(ctx.rng(2)(), 40));
  for (const Tally* t : {&rep.maslov, &rep.reversal, &rep.naturality, &rep.homotopy, &rep.catenation})
    r.checks.push_back(*t);
  return r;
}

inline SuiteResult loop_props(Context& ctx) {
  SuiteResult r{"loop_props", "loop identities for symplectic loops", {}};
  auto additive = tally("mu(Gamma Lambda, V) = mu(Lambda, V) + mu(Gamma V, V)");
  auto half = tally("mu(Gamma V, V) = 2 mu(Gamma_1 V, V)");
  auto turns = tally("mu(Gamma V, V) = 2k for k full turns");
  auto g = ctx.rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 12; ++i) {
    const int k = i % 5 - 2;
    const double a = 3.0 * u(g), b = u(g);
    const LinePath lambda{1.0, [a, b](double t) {
                            const double th = a * t + b * std::sin(2.0 * M_PI * t);
                            return FrameBasis<2>(Vec2(std::cos(th), std::sin(th)));
                          }};
    const std::string tag = "k = " + std::to_string(k);
    try {
      const auto rep = verify_loop_props(rotation_path(2.0 * M_PI * k, 1.0), lambda, real_axis(), conj_i());
      additive.record(rep.loop_identity, tag);
      half.record(rep.half_identity, tag);
      turns.record(rep.index_gamma_v == HalfInt(2 * k), tag + ": " + rep.index_gamma_v.str());
    } catch (const Error&) {
      additive.skip();
      half.skip();
      turns.skip();
    }
  }
  r.checks = {additive, half, turns};
  return r;
}

inline SuiteResult two_method(Context& ctx) {
  SuiteResult r{"two_method", "crossing forms vs spectral windings", {}};
  const auto& loops = ctx.loops();
  auto cz = tally("mu_CZ(Psi) = mu(S)");
  auto real = tally("mu_I = mu_RS(Psi R, R)");
  auto imag = tally("mu_-I = mu_RS(Psi iR, iR)");
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const auto& o = loops[i];
    const std::string tag = "loop " + std::to_string(i);
    if (o.skipped) {
      cz.skip(), real.skip(), imag.skip();
      continue;
    }
    if (!o.error.empty()) {
      cz.record(false, tag + ": " + o.error);
      continue;
    }
    cz.record(*o.rel.mu_spec == *o.rel.cz, tag + ": " + o.rel.mu_spec->str() + " vs " + o.rel.cz->str());
    real.record(*o.rel.mu_I == *o.rel.rs_real, tag + ": " + o.rel.mu_I->str() + " vs " + o.rel.rs_real->str());
    imag.record(*o.rel.mu_minus_I == *o.rel.rs_imag,
                tag + ": " + o.rel.mu_minus_I->str() + " vs " + o.rel.rs_imag->str());
  }
  r.checks = {cz, real, imag};
  record_skips(r, loops);
  return r;
}

inline SuiteResult index_relation(Context& ctx) {
  SuiteResult r{"index_relation", "mu_CZ = mu_I + mu_-I", {}};
  const auto& loops = ctx.loops();
  auto t = tally("mu_CZ = mu_I + mu_-I");
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const auto& o = loops[i];
    const std::string tag = "loop " + std::to_string(i);
    if (o.skipped) {
      t.skip();
    } else if (!o.error.empty()) {
      t.record(false, tag + ": " + o.error);
    } else {
      const HalfInt sum = *o.rel.mu_I + *o.rel.mu_minus_I;
      t.record(*o.rel.cz == sum, tag + ": " + o.rel.cz->str() + " vs " + sum.str());
    }
  }
  r.checks = {t};
  record_skips(r, loops);
  return r;
}

inline SuiteResult hormander_bound(Context& ctx) {
  SuiteResult r{"hormander_bound", "Hormander index bound", {}};
  const auto& loops = ctx.loops();
  auto bound = tally("mu_RS(Psi R, R) - mu_RS(Psi iR, iR) in {-1, 0, 1}");
  auto direct = tally("Hormander index equals the difference of RS indices");
  auto dyn = tally("mu_CZ >= 3 implies mu_RS >= 3/2");
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const auto& o = loops[i];
    const std::string tag = "loop " + std::to_string(i);
    if (o.skipped) {
      bound.skip(), direct.skip(), dyn.skip();
      continue;
    }
    if (!o.error.empty()) {
      bound.record(false, tag + ": " + o.error);
      continue;
    }
    const HalfInt d = *o.rel.rs_real - *o.rel.rs_imag;
    bound.record(d >= HalfInt(-1) && d <= HalfInt(1), tag + ": " + d.str());
    direct.record(*o.hormander == d, tag + ": " + o.hormander->str() + " vs " + d.str());
    if (*o.rel.cz >= HalfInt(3))
      dyn.record(*o.rel.rs_real >= HalfInt::from_twice(3), tag + ": " + o.rel.rs_real->str());
  }
  // random draws rarely reach mu_CZ >= 3; loops shifted by 3 pi do
  auto g = ctx.rng(8);
  for (int i = 0; i < 10; ++i) {
    TrigLoop t = random_trig_loop(g, true, 3, 1.0);
    t.cos_coeff[0][0] += 3.0 * M_PI;
    t.cos_coeff[2][0] += 3.0 * M_PI;
    const auto in = make_instance(t);
    try {
      const HalfInt cz = cz_index(in.psi);
      const HalfInt rs = rs_index<2>(act_on_line(restrict_path(in.psi, 0.5), real_axis()), real_axis()).index;
      if (cz >= HalfInt(3)) dyn.record(rs >= HalfInt::from_twice(3), "shifted loop " + std::to_string(i) + ": " + rs.str());
    } catch (const Error& e) {
      if (e.error_class() != ErrorClass::degenerate) throw;
      dyn.skip();
    }
  }
  const auto rot = rotation_path(3.0 * M_PI, 1.0);
  const HalfInt rs = rs_index<2>(act_on_line(restrict_path(rot, 0.5), real_axis()), real_axis()).index;
  dyn.record(cz_index(rot) >= HalfInt(3) && rs >= HalfInt::from_twice(3), "rotation 3 pi: " + rs.str());
  r.checks = {bound, direct, dyn};
  record_skips(r, loops);
  return r;
}

inline SuiteResult nondeg_split(Context& ctx) {
  SuiteResult r{"nondeg_split", "nondegeneracy splits into the two boundary pairs", {}};
  auto eq = tally("ker(Psi(T) - 1) = 0 iff both pairs nondegenerate");
  auto blocks = tally("Psi(T) = I Psi(T/2)^-1 I Psi(T/2)");
  auto g = ctx.rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto rep = verify_nondeg_split(make_instance(random_trig_loop(g, true)).psi);
    eq.record(rep.equivalence, "loop " + std::to_string(i));
    blocks.record(rep.blocks_consistent, "loop " + std::to_string(i));
  }
  auto deg = tally("full turn: kernel 2, both pairs degenerate");
  const auto full = verify_nondeg_split(rotation_path(2.0 * M_PI, 1.0));
  deg.record(full.kernel_dim == 2 && full.real_pair_degenerate && full.imag_pair_degenerate && full.equivalence);
  r.checks = {eq, blocks, deg};
  return r;
}

inline SuiteResult kernel_test(Context& ctx) {
  SuiteResult r{"kernel_test", "kernel of the boundary operator", {}};
  auto t = tally("dim ker A_D = dim(R cap Psi(T/2)^-1 R)");
  for (double c : {2.0 * M_PI, M_PI, 4.0 * M_PI}) {
    const auto k = kernel_test(rotation_path(c, 0.5), constant_chord(c));
    t.record(k.agree, "c = " + std::to_string(c) + ": " + std::to_string(k.dim) + " vs " +
                          std::to_string(k.zero_eigenvalues));
  }
  auto g = ctx.rng(5);
  for (int i = 0; i < 5; ++i) {
    const auto in = make_instance(random_trig_loop(g, true));
    const auto k = kernel_test(restrict_path(in.psi, 0.5), half_of(in.s));
    t.record(k.agree, "loop " + std::to_string(i));
  }
  r.checks = {t};
  return r;
}

inline SuiteResult spectrum_structure(Context& ctx) {
  SuiteResult r{"spectrum_structure", "spectrum structure in [-15, 15]", {}};
  auto structure = tally("sorted, monotone winding, multiplicity 2 per integer / 1 per half-integer");
  auto closed = tally("constant coefficients: lambda = 2 pi k - c within 1e-8");
  double worst = 0.0;
  for (double c : {0.4, 3.0 * M_PI, -5.5}) {
    std::vector<double> expect;
    for (int k = -10; k <= 10; ++k) {
      const double l = 2.0 * M_PI * k - c;
      if (l >= -15.0 && l <= 15.0) expect.push_back(l);
    }
    std::vector<SpectrumSlice> slices{periodic_spectrum(constant_loop(c), -15.0, 15.0)};
    for (Problem bc : {Problem::bc_I, Problem::bc_minus_I})
      slices.push_back(boundary_spectrum(constant_chord(c), bc, -15.0, 15.0));
    for (const auto& s : slices) {
      const std::string tag = std::string("c = ") + std::to_string(c) + " " + to_string(s.problem);
      structure.record(check_slice(s).ok(), tag);
      bool match = s.entries.size() == expect.size();
      const int mult = s.problem == Problem::periodic ? 2 : 1;
      for (std::size_t i = 0; match && i < expect.size(); ++i) {
        const double err = std::abs(s.entries[i].lambda - expect[i]);
        worst = std::max(worst, err);
        match = err <= 1e-8 && s.entries[i].multiplicity == mult;
      }
      closed.record(match, tag);
    }
  }
  auto g = ctx.rng(6);
  for (int i = 0; i < 4; ++i) {
    const auto loop = random_trig_loop(g, true).loop();
    structure.record(check_slice(periodic_spectrum(loop, -15.0, 15.0)).ok(), "loop " + std::to_string(i) + " periodic");
    for (Problem bc : {Problem::bc_I, Problem::bc_minus_I})
      structure.record(check_slice(boundary_spectrum(half_of(loop), bc, -15.0, 15.0)).ok(),
                       "loop " + std::to_string(i) + " " + to_string(bc));
  }
  r.values["constant_max_error"] = worst;
  r.checks = {structure, closed};
  return r;
}

inline SuiteResult iteration(Context& ctx) {
  SuiteResult r{"iteration", "indices of iterated chords and orbits", {}};
  auto impl = tally("mu_I(C) regime implies the bound on mu_I(C^m), m <= 5");
  auto oracle = tally("constant chord: mu_I(C^m) = floor(m c / 2 pi) + 1/2");
  const HalfInt half = HalfInt::half();
  for (double c : {-3.0, 2.0, 4.5, 3.0 * M_PI}) {
    const HalfInt base = mu_I(constant_chord(c));
    for (int m = 1; m <= 5; ++m) {
      const double x = m * c / (2.0 * M_PI);
      if (std::abs(x - std::round(x)) < 1e-6) continue;
      const HalfInt mu = mu_I(iterate_chord_data(constant_chord(c), m));
      const std::string tag = "c = " + std::to_string(c) + " m = " + std::to_string(m) + ": " + mu.str();
      oracle.record(mu == rotation_chord_index(c, m), tag);
      bool ok = true;
      if (base < half) ok = ok && mu < half;
      if (base >= half) ok = ok && mu >= half;
      if (base >= HalfInt::from_twice(3)) ok = ok && mu >= HalfInt(m) + half;
      impl.record(ok, tag);
    }
  }
  auto ell = tally("ellipsoid: mu_CZ(P1^m) = 2m + 2 floor(m r1^2 / r2^2) + 1, m <= 4");
  auto cor = tally("ellipsoid: iteration implications");
  const auto& found = ctx.ellipsoid();
  if (found.orbits.empty()) {
    ell.record(false, "no orbit found");
  } else {
    const Surface s = Surface::ellipsoid(kR1, kR2);
    for (std::size_t k = 0; k < found.orbits.size(); ++k) {
      const auto lf = linearized_flow(s, found.orbits[k]);
      std::vector<OrbitIndices> idx;
      json row = json::array();
      for (int m = 1; m <= 4; ++m) {
        idx.push_back(orbit_indices(lf, m));
        row.push_back(io::to_json(idx.back().mu_cz));
        if (k == 0) {
          const int expect = 2 * m + 2 * static_cast<int>(std::floor(m * kR1 * kR1 / (kR2 * kR2))) + 1;
          ell.record(idx.back().mu_cz == HalfInt(expect), "m = " + std::to_string(m) + ": " + idx.back().mu_cz.str());
        }
      }
      r.values["orbit_" + std::to_string(k) + "_cz"] = row;
      cor.record(check_iteration(idx).ok(), "orbit " + std::to_string(k));
    }
  }
  r.checks = {impl, oracle, ell, cor};
  return r;
}

inline SuiteResult ellipsoid_orbits(Context& ctx) {
  SuiteResult r{"ellipsoid_orbits", "symmetric orbits of the ellipsoid (1, 1.3)", {}};
  const auto& found = ctx.ellipsoid();
  auto periods = tally("periods pi r1^2, pi r2^2 within 1e-7");
  auto idx = tally("mu_CZ(P1) = 3, mu_RS(C1) = 3/2, mu_CZ(P2) = 5");
  periods.record(found.orbits.size() == 2, std::to_string(found.orbits.size()) + " orbits");
  const Surface s = Surface::ellipsoid(kR1, kR2);
  const double expect[2] = {M_PI * kR1 * kR1, M_PI * kR2 * kR2};
  for (std::size_t k = 0; k < std::min<std::size_t>(2, found.orbits.size()); ++k) {
    const auto& o = found.orbits[k];
    const double err = std::abs(o.T - expect[k]);
    r.values["period_error_" + std::to_string(k + 1)] = err;
    periods.record(err <= 1e-7, "orbit " + std::to_string(k + 1));
    const auto i = orbit_indices(linearized_flow(s, o), 1);
    if (k == 0) {
      idx.record(i.mu_cz == HalfInt(3), "mu_CZ(P1) = " + i.mu_cz.str());
      idx.record(i.mu_rs && *i.mu_rs == HalfInt::from_twice(3), "mu_RS(C1)");
    } else {
      idx.record(i.mu_cz == HalfInt(5), "mu_CZ(P2) = " + i.mu_cz.str());
    }
  }
  r.checks = {periods, idx};
  return r;
}

inline SuiteResult trivialization_change(Context& ctx) {
  SuiteResult r{"trivialization_change", "indices under a change of symmetric frame", {}};
  auto same = tally("homotopic frame leaves the indices unchanged");
  auto shift = tally("loop twist k shifts mu_RS by -k and mu_CZ by -2k");
  const auto& found = ctx.ellipsoid();
  if (found.orbits.empty()) {
    same.record(false, "no orbit found");
  } else {
    const Surface s = Surface::ellipsoid(kR1, kR2);
    const auto& p1 = found.orbits[0];
    const auto base = orbit_indices(linearized_flow(s, p1), 1);
    const auto tw = orbit_indices(linearized_flow(s, p1, Trivialization{0.7, 0}), 1);
    same.record(tw.mu_cz == base.mu_cz && *tw.mu_rs == *base.mu_rs);
    for (int k : {-1, 1}) {
      const auto i = orbit_indices(linearized_flow(s, p1, Trivialization{0.0, k}), 1);
      shift.record(i.mu_cz == base.mu_cz - HalfInt(2 * k) && *i.mu_rs == *base.mu_rs - HalfInt(k),
                   "k = " + std::to_string(k));
    }
  }
  r.checks = {same, shift};
  return r;
}

inline SuiteResult section_ellipsoid(Context& ctx) {
  SuiteResult r{"section_ellipsoid", "disk page theta = 1 of the ellipsoid", {}};
  const auto page = ellipsoid_page(kR1, kR2, 1.0);
  SectionOptions so;
  so.jobs = ctx.cfg.jobs;
  auto checks = tally("page properties");
  const auto pc = check_page(page);
  checks.record(pc.ok(), "chart");
  const auto idx = orbit_indices(linearized_flow(page.surface, page.spanning), 1);
  r.values["spanning_cz"] = io::to_json(idx.mu_cz);
  checks.record(idx.mu_cz == HalfInt(3) || idx.mu_cz == HalfInt(4), "spanning index " + idx.mu_cz.str());
  const double area = page_area(page).area;
  const double area_err = std::abs(area - M_PI * kR1 * kR1) / (M_PI * kR1 * kR1);
  r.values["area_relative_error"] = area_err;
  checks.record(area_err <= 1e-4, "area");
  ReturnMapOptions ro;
  const auto rep = return_map_report(page, ro, so);
  r.values["reversibility"] = rep.reversibility;
  r.values["area_drift"] = rep.area_drift;
  checks.record(rep.reversibility <= 1e-6, "reversibility");
  checks.record(rep.area_drift <= 1e-4, "area drift");
  double fp_err = 1e9;
  for (const auto& f : rep.fixed_points)
    if (f.symmetric) fp_err = std::min(fp_err, (f.x - Vec4(0.0, 0.0, kR2, 0.0)).norm());
  r.values["fixed_point_error"] = fp_err;
  checks.record(fp_err <= 1e-6, "symmetric fixed point at P2");
  r.checks = {checks};
  return r;
}

inline SuiteResult open_book_suite(Context& ctx) {
  SuiteResult r{"open_book", "symmetric open book", {}};
  SectionOptions so;
  so.jobs = ctx.cfg.jobs;
  const auto ob = open_book(ellipsoid_page(kR1, kR2, 1.0), 10, 200, ctx.rng(7)(), so);
  auto t = tally("rho Phi(theta) = Phi(1 - theta) and invariant pages, residual <= 1e-6");
  for (std::size_t k = 0; k < ob.thetas.size(); ++k)
    t.record(ob.symmetry[k] <= 1e-6, "theta = " + std::to_string(ob.thetas[k]));
  t.record(ob.invariance_zero <= 1e-6, "Phi(0)");
  t.record(ob.invariance_half <= 1e-6, "Phi(1/2)");
  r.values["max_symmetry"] = ob.max_symmetry();
  r.values["invariance_zero"] = ob.invariance_zero;
  r.values["invariance_half"] = ob.invariance_half;
  r.checks = {t};
  return r;
}

inline SuiteResult perturbed(Context& ctx) {
  SuiteResult r{"perturbed_surface", "ellipsoid plus 0.05 x1^2 x2^2", {}};
  const Surface s = perturbed_surface();
  OrbitSearchOptions oo;
  oo.jobs = ctx.cfg.jobs;
  const auto found = find_symmetric_orbits(s, oo);
  auto count = tally("at least two symmetric orbits");
  count.record(found.orbits.size() >= 2, std::to_string(found.orbits.size()) + " orbits");
  auto cor = tally("iteration implications, m <= 3");
  json periods = json::array();
  for (std::size_t k = 0; k < found.orbits.size(); ++k) {
    const auto& o = found.orbits[k];
    periods.push_back(o.T);
    if (o.degenerate) {
      cor.skip();
      continue;
    }
    const auto lf = linearized_flow(s, o);
    std::vector<OrbitIndices> idx;
    for (int m = 1; m <= 3; ++m) {
      try {
        idx.push_back(orbit_indices(lf, m));
      } catch (const DegenerateOrbit&) {
        break;
      }
    }
    cor.record(!idx.empty() && check_iteration(idx).ok(), "orbit " + std::to_string(k));
  }
  r.values["periods"] = periods;
  auto page = tally("continuation page transversality and reversibility");
  const auto cp = continuation_page(s, kR1, kR2, 1.0);
  page.record(check_page(cp).ok(), "chart");
  SectionOptions so;
  so.jobs = ctx.cfg.jobs;
  const auto rep = return_map_report(cp, {}, so);
  r.values["page_reversibility"] = rep.reversibility;
  page.record(rep.reversibility <= 1e-6, "reversibility");
  r.checks = {count, cor, page};
  return r;
}

struct SuiteEntry {
  const char* key;
  std::function<SuiteResult(Context&)> run;
};

inline const std::vector<SuiteEntry>& suites() {
  static const std::vector<SuiteEntry> all{
      {"cz_normalization", cz_normalization},     {"rs_axioms", rs_axioms},
      {"loop_props", loop_props},                 {"two_method", two_method},
      {"index_relation", index_relation},         {"hormander_bound", hormander_bound},
      {"nondeg_split", nondeg_split},             {"kernel_test", kernel_test},
      {"spectrum_structure", spectrum_structure}, {"iteration", iteration},
      {"ellipsoid_orbits", ellipsoid_orbits},     {"trivialization_change", trivialization_change},
      {"section_ellipsoid", section_ellipsoid},   {"open_book", open_book_suite},
      {"perturbed_surface", perturbed},
  };
  return all;
}

}  // namespace detail

inline std::vector<std::string> suite_keys() {
  std::vector<std::string> k;
  for (const auto& s : detail::suites()) k.emplace_back(s.key);
  return k;
}

/// Runs the selected suites in their fixed order. A suite that throws is
/// reported as failed with the error text; the others still run.
inline std::vector<SuiteResult> run(const Config& cfg) {
  for (const auto& k : cfg.only) {
    const auto keys = suite_keys();
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw InvalidSpec("unknown suite '" + k + "'");
  }
  Context ctx(cfg);
  std::vector<SuiteResult> out;
  for (const auto& s : detail::suites()) {
    if (!cfg.only.empty() && !cfg.only.count(s.key)) continue;
    try {
      out.push_back(s.run(ctx));
    } catch (const Error& e) {
      SuiteResult r;
      r.key = s.key;
      r.error = e.what();
      out.push_back(r);
    }
  }
  return out;
}

inline json to_json(const SuiteResult& r) {
  json checks = json::array();
  for (const auto& t : r.checks) {
    json c = io::to_json(t);
    c["name"] = t.name;
    checks.push_back(c);
  }
  json j = {{"key", r.key}, {"title", r.title}, {"ok", r.ok()}, {"checks", checks}, {"values", r.values}};
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline json report(const Config& cfg, const std::vector<SuiteResult>& results) {
  json suites = json::array();
  bool ok = true;
  for (const auto& r : results) {
    suites.push_back(to_json(r));
    ok = ok && r.ok();
  }
  return {{"seed", cfg.seed}, {"loops", cfg.loops}, {"ok", ok}, {"suites", suites}};
}

/// One line per check, e.g. "index_relation  mu_CZ = mu_I + mu_-I: 50/50 (0 skipped)".
inline std::string matrix(const std::vector<SuiteResult>& results) {
  std::string out;
  for (const auto& r : results) {
    if (!r.error.empty()) {
      out += "FAIL " + r.key + "  error: " + r.error + "\n";
      continue;
    }
    for (const auto& t : r.checks)
      out += std::string(t.ok() ? "PASS " : "FAIL ") + r.key + "  " + t.name + ": " + std::to_string(t.passed) + "/" +
             std::to_string(t.total()) + " (" + std::to_string(t.skipped) + " skipped)\n";
  }
  return out;
}

}  // namespace symreeb::verify
