// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Usage: acceptance PATH_TO_SYMREEB_CLI

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "symreeb/symreeb.hpp"

using namespace symreeb;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kR1 = 1.0, kR2 = 1.3;

// ---------------------------------------------------------------------------
// oracles

int rotation_cz(double c) { return 2 * static_cast<int>(std::floor(c / kTwoPi)) + 1; }

// constant chord c on [0, m/2]: the eigenfunction angle (lambda + c) t meets R
// at multiples of pi, so mu_I = floor(m c / 2 pi) + 1/2
HalfInt chord_oracle(double c, int m) {
  return HalfInt::from_twice(2 * static_cast<std::int64_t>(std::floor(m * c / kTwoPi)) + 1);
}

// P1 of the ellipsoid: Psi rotates at 2/r1^2 + 2/r2^2 for time m pi r1^2
int ellipsoid_p1_cz(int m) { return 2 * m + 2 * static_cast<int>(std::floor(m * kR1 * kR1 / (kR2 * kR2))) + 1; }

// ---------------------------------------------------------------------------

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

struct LoopResult {
  bool skipped = false;
  std::string error;
  HalfInt cz, spec, mu_I, mu_mI, rs_R, rs_iR;
};

std::vector<LoopResult> g_loops;
double g_loop_seconds = 0.0;

LoopResult evaluate_loop(const TrigLoop& t) {
  LoopResult r;
  try {
    const auto in = make_instance(t);
    const auto half = restrict_path(in.psi, 0.5 * in.psi.T);
    const auto d = half_of(in.s);
    r.cz = cz_index(in.psi);
    r.spec = mu_spec(in.s);
    r.rs_R = rs_index<2>(act_on_line(half, real_axis()), real_axis()).index;
    r.rs_iR = rs_index<2>(act_on_line(half, imag_axis()), imag_axis()).index;
    r.mu_I = mu_I(d);
    r.mu_mI = mu_minus_I(d);
  } catch (const Error& e) {
    if (e.error_class() == ErrorClass::degenerate)
      r.skipped = true;
    else
      r.error = e.what();
  }
  return r;
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  const auto t0 = Clock::now();
  int ok = 0, n = 0;
  std::string bad;
  for (double c : {0.3, 1.0, 3.0, 6.4, 9.5, 12.7}) {
    ++n;
    const HalfInt mu = cz_index(rotation_path(c, 1.0));
    if (mu == HalfInt(rotation_cz(c)))
      ++ok;
    else
      bad += " c=" + fmt(c) + "->" + mu.str();
  }
  const double s = seconds_since(t0);
  return {ok == n && s < 1.0, std::to_string(ok) + "/" + std::to_string(n) + " exact, " + fmt(s) + " s" + bad};
}

Outcome criterion2() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 50; ++i) g_loops.push_back(evaluate_loop(random_trig_loop(rng, true, 3)));
  g_loop_seconds = seconds_since(t0);
  int ok = 0, skipped = 0, failed = 0;
  for (const auto& l : g_loops) {
    if (l.skipped) {
      ++skipped;
      continue;
    }
    if (l.error.empty() && l.cz == l.spec && l.mu_I == l.rs_R && l.mu_mI == l.rs_iR)
      ++ok;
    else
      ++failed;
  }
  const bool pass = failed == 0 && 10 * skipped < 50 && g_loop_seconds < 60.0;
  return {pass, std::to_string(ok) + " agree, " + std::to_string(failed) + " disagree, " + std::to_string(skipped) +
                    " degenerate skipped, " + fmt(g_loop_seconds) + " s"};
}

Outcome criterion3() {
  int ok = 0, failed = 0;
  for (const auto& l : g_loops) {
    if (l.skipped) continue;
    if (l.error.empty() && l.cz == l.mu_I + l.mu_mI)
      ++ok;
    else
      ++failed;
  }
  return {failed == 0 && ok > 0, std::to_string(ok) + "/" + std::to_string(ok + failed) + " with mu_CZ = mu_I + mu_-I"};
}

Outcome criterion4() {
  int ok = 0, failed = 0, premises = 0;
  auto dyn = [&](HalfInt cz, HalfInt rs) {
    if (cz >= HalfInt(3)) {
      ++premises;
      if (rs < HalfInt::from_twice(3)) ++failed;
    }
  };
  for (const auto& l : g_loops) {
    if (l.skipped || !l.error.empty()) continue;
    const HalfInt d = l.rs_R - l.rs_iR;
    if (d >= HalfInt(-1) && d <= HalfInt(1))
      ++ok;
    else
      ++failed;
    dyn(l.cz, l.rs_R);
  }
  // draws concentrated near 0 rarely reach mu_CZ >= 3; shift a second batch by 3 pi
  std::mt19937_64 rng(4048);
  for (int i = 0; i < 12; ++i) {
    TrigLoop t = random_trig_loop(rng, true, 3, 1.0);
    t.cos_coeff[0][0] += 1.5 * kTwoPi;
    t.cos_coeff[2][0] += 1.5 * kTwoPi;
    const auto r = evaluate_loop(t);
    if (r.skipped) continue;
    if (!r.error.empty()) {
      ++failed;
      continue;
    }
    const HalfInt d = r.rs_R - r.rs_iR;
    if (d < HalfInt(-1) || d > HalfInt(1)) ++failed;
    dyn(r.cz, r.rs_R);
  }
  return {failed == 0 && premises > 0, std::to_string(ok) + " in {-1,0,1}, " + std::to_string(premises) +
                                           " instances with mu_CZ >= 3, " + std::to_string(failed) + " violations"};
}

// Structure of one slice: strictly increasing, winding non-decreasing, and the
// winding classes strictly inside the window carry total multiplicity 2
// (periodic, integer windings) or 1 (boundary, every half-integer).
bool slice_structure(const SpectrumSlice& s) {
  std::map<std::int64_t, int> count;
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    count[s.entries[i].winding.twice()] += s.entries[i].multiplicity;
    if (i > 0 && !(s.entries[i - 1].lambda < s.entries[i].lambda)) return false;
    if (i > 0 && s.entries[i - 1].winding > s.entries[i].winding) return false;
  }
  if (count.empty()) return false;
  const bool periodic = s.problem == Problem::periodic;
  const std::int64_t lo = count.begin()->first, hi = count.rbegin()->first;
  for (std::int64_t w = lo; w <= hi; w += periodic ? 2 : 1) {
    const int n = count.count(w) ? count[w] : 0;
    if (periodic && w % 2 != 0) return false;
    if (w == lo || w == hi) {
      if (n < 1 || n > (periodic ? 2 : 1)) return false;
    } else if (n != (periodic ? 2 : 1)) {
      return false;
    }
  }
  return true;
}

Outcome criterion5() {
  int slices = 0, good = 0;
  double worst = 0.0;
  bool closed_ok = true;
  for (double c : {0.4, 2.0, 3.0 * M_PI, -5.5, 13.0}) {
    std::vector<double> expect;
    for (int k = -10; k <= 10; ++k)
      if (std::abs(kTwoPi * k - c) <= 15.0) expect.push_back(kTwoPi * k - c);
    std::vector<SpectrumSlice> all{periodic_spectrum(constant_loop(c), -15.0, 15.0)};
    for (Problem bc : {Problem::bc_I, Problem::bc_minus_I})
      all.push_back(boundary_spectrum(constant_chord(c), bc, -15.0, 15.0));
    for (const auto& s : all) {
      ++slices;
      const bool periodic = s.problem == Problem::periodic;
      bool ok = slice_structure(s) && s.entries.size() == expect.size();
      for (std::size_t i = 0; ok && i < expect.size(); ++i) {
        const auto& e = s.entries[i];
        const std::int64_t k = std::llround((expect[i] + c) / kTwoPi);
        worst = std::max(worst, std::abs(e.lambda - expect[i]));
        ok = std::abs(e.lambda - expect[i]) <= 1e-8 && e.multiplicity == (periodic ? 2 : 1) &&
             e.winding == (periodic ? HalfInt(k) : HalfInt::from_twice(k));
      }
      closed_ok = closed_ok && ok;
      good += ok;
    }
  }
  std::mt19937_64 rng(5005);
  for (int i = 0; i < 5; ++i) {
    const auto loop = random_trig_loop(rng, true, 3).loop();
    std::vector<SpectrumSlice> all{periodic_spectrum(loop, -15.0, 15.0)};
    for (Problem bc : {Problem::bc_I, Problem::bc_minus_I})
      all.push_back(boundary_spectrum(half_of(loop), bc, -15.0, 15.0));
    for (const auto& s : all) {
      ++slices;
      good += slice_structure(s);
    }
  }
  return {good == slices && closed_ok, std::to_string(good) + "/" + std::to_string(slices) +
                                            " slices, constant-coefficient max error " + fmt(worst)};
}

Outcome criterion6() {
  int checks = 0, good = 0;
  std::string bad;
  const HalfInt half = HalfInt::half();
  // c < 0, 0 < c < 2 pi, c > 2 pi
  for (double c : {-2.5, -0.7, 1.0, 4.0, 8.0, 3.0 * M_PI}) {
    const HalfInt base = mu_I(constant_chord(c));
    for (int m = 1; m <= 5; ++m) {
      const double x = m * c / kTwoPi;
      if (std::abs(x - std::round(x)) < 1e-6) continue;
      ++checks;
      const HalfInt mu = mu_I(iterate_chord_data(constant_chord(c), m));
      bool ok = mu == chord_oracle(c, m);
      if (base < half) ok = ok && mu < half;
      if (base >= half) ok = ok && mu >= half;
      if (base >= HalfInt::from_twice(3)) ok = ok && mu >= HalfInt(m) + half;
      good += ok;
      if (!ok) bad += " c=" + fmt(c) + ",m=" + std::to_string(m);
    }
  }
  const Surface s = Surface::ellipsoid(kR1, kR2);
  const auto found = find_symmetric_orbits(s);
  if (found.orbits.empty()) return {false, "no ellipsoid orbit"};
  const auto lf = linearized_flow(s, found.orbits[0]);
  std::string ell;
  for (int m = 1; m <= 4; ++m) {
    ++checks;
    try {
      const auto idx = orbit_indices(lf, m);  // throws unless crossing forms and windings agree
      const bool ok = idx.mu_cz == HalfInt(ellipsoid_p1_cz(m));
      good += ok;
      ell += " " + idx.mu_cz.str();
    } catch (const Error& e) {
      bad += std::string(" ") + e.name();
    }
  }
  return {good == checks, std::to_string(good) + "/" + std::to_string(checks) + ", CZ(P1^m) =" + ell + bad};
}

Outcome criterion7() {
  const auto t0 = Clock::now();
  const Surface s = Surface::ellipsoid(kR1, kR2);
  const auto found = find_symmetric_orbits(s);
  if (found.orbits.size() != 2) return {false, std::to_string(found.orbits.size()) + " orbits"};
  const double e1 = std::abs(found.orbits[0].T - M_PI * kR1 * kR1);
  const double e2 = std::abs(found.orbits[1].T - M_PI * kR2 * kR2);
  const auto i1 = orbit_indices(linearized_flow(s, found.orbits[0]), 1);
  const auto i2 = orbit_indices(linearized_flow(s, found.orbits[1]), 1);
  const double secs = seconds_since(t0);
  const bool pass = e1 <= 1e-7 && e2 <= 1e-7 && i1.mu_cz == HalfInt(3) && i1.mu_rs &&
                    *i1.mu_rs == HalfInt::from_twice(3) && i2.mu_cz == HalfInt(5) && secs < 30.0;
  return {pass, "period errors " + fmt(e1) + ", " + fmt(e2) + "; CZ(P1)=" + i1.mu_cz.str() +
                    " RS(C1)=" + (i1.mu_rs ? i1.mu_rs->str() : "-") + " CZ(P2)=" + i2.mu_cz.str() + "; " + fmt(secs) +
                    " s"};
}

Outcome criterion8() {
  const auto page = ellipsoid_page(kR1, kR2, 1.0);
  const auto idx = orbit_indices(linearized_flow(page.surface, page.spanning), 1);
  const double area = page_area(page).area;
  const double rel = std::abs(area - M_PI * kR1 * kR1) / (M_PI * kR1 * kR1);
  const auto rep = return_map_report(page);
  double fp = 1e9;
  for (const auto& f : rep.fixed_points)
    if (f.symmetric) fp = std::min(fp, (f.x - Vec4(0.0, 0.0, kR2, 0.0)).norm());
  const bool pass = (idx.mu_cz == HalfInt(3) || idx.mu_cz == HalfInt(4)) && rel <= 1e-4 && rep.reversibility <= 1e-6 &&
                    rep.area_drift <= 1e-4 && fp <= 1e-6;
  return {pass, "spanning CZ " + idx.mu_cz.str() + ", area rel err " + fmt(rel) + ", reversibility " +
                    fmt(rep.reversibility) + ", area drift " + fmt(rep.area_drift) + ", fixed point err " + fmt(fp)};
}

Outcome criterion9() {
  const auto ob = open_book(ellipsoid_page(kR1, kR2, 1.0), 10, 200);
  const bool pass = ob.thetas.size() == 9 && ob.samples == 200 && ob.max_symmetry() <= 1e-6 &&
                    ob.invariance_zero <= 1e-6 && ob.invariance_half <= 1e-6;
  return {pass, "max |rho Phi(theta) - Phi(1 - theta)| " + fmt(ob.max_symmetry()) + ", Phi(0) " +
                    fmt(ob.invariance_zero) + ", Phi(1/2) " + fmt(ob.invariance_half)};
}

Outcome criterion10() {
  const auto t0 = Clock::now();
  const Surface s = Surface::ellipsoid(kR1, kR2).plus({{2, 0, 2, 0}, 0.05});
  const auto found = find_symmetric_orbits(s);
  int consistent = 0, indexed = 0;
  for (const auto& o : found.orbits) {
    if (o.degenerate) continue;
    const auto lf = linearized_flow(s, o);
    std::vector<OrbitIndices> idx;
    for (int m = 1; m <= 3; ++m) {
      try {
        idx.push_back(orbit_indices(lf, m));
      } catch (const DegenerateOrbit&) {
        break;
      }
    }
    if (idx.empty()) continue;
    ++indexed;
    consistent += check_iteration(idx).ok();
  }
  const auto cp = continuation_page(s, kR1, kR2, 1.0);
  const auto pc = check_page(cp);
  const auto rep = return_map_report(cp);
  const double secs = seconds_since(t0);
  const bool pass = found.orbits.size() >= 2 && indexed > 0 && consistent == indexed && pc.ok() &&
                    pc.min_transversality > 0.0 && rep.reversibility <= 1e-6 && secs < 300.0;
  return {pass, std::to_string(found.orbits.size()) + " orbits, " + std::to_string(consistent) + "/" +
                    std::to_string(indexed) + " consistent, page transversality " + fmt(pc.min_transversality) +
                    ", reversibility " + fmt(rep.reversibility) + ", " + fmt(secs) + " s"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome criterion11(const std::string& cli) {
  if (cli.empty()) return {false, "no CLI path given"};
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "symreeb_verify_a.json", b = dir / "symreeb_verify_b.json";
  auto run = [&](const std::filesystem::path& out) {
    const std::string cmd = "\"" + cli + "\" verify --seed 7 --out \"" + out.string() + "\" 2>/dev/null";
    return std::system(cmd.c_str());
  };
  const int ra = run(a), rb = run(b);
  const std::string ja = slurp(a), jb = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  const bool pass = ra == 0 && rb == 0 && !ja.empty() && ja == jb;
  return {pass, std::to_string(ja.size()) + " bytes, identical: " + (ja == jb ? "yes" : "no") +
                    ", exit codes " + std::to_string(ra) + "/" + std::to_string(rb)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 index normalization", criterion1},
      {"2 two-method agreement", criterion2},
      {"3 index relation", criterion3},
      {"4 Hormander bound", criterion4},
      {"5 spectrum structure", criterion5},
      {"6 iteration", criterion6},
      {"7 ellipsoid dynamics", criterion7},
      {"8 ellipsoid page", criterion8},
      {"9 symmetric open book", criterion9},
      {"10 perturbed surface", criterion10},
      {"11 determinism", [&] { return criterion11(cli); }},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << "criterion " << name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
