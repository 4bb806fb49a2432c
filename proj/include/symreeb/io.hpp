#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "errors.hpp"
#include "half_int.hpp"
#include "maslov.hpp"
#include "orbits.hpp"
#include "random_loops.hpp"
#include "section.hpp"
#include "spectral.hpp"
#include "surface.hpp"

namespace symreeb::io {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// inline specs: "kind:key=value,key=value" or "kind:v1,v2"

struct InlineSpec {
  std::string kind;
  std::map<std::string, std::string> named;
  std::vector<std::string> positional;

  bool has(const std::string& k) const { return named.count(k) > 0; }

  double number(const std::string& k) const {
    auto it = named.find(k);
    if (it == named.end()) throw InvalidSpec("missing '" + k + "' in " + kind + " spec");
    return to_number(it->second);
  }
  double number(const std::string& k, double fallback) const { return has(k) ? number(k) : fallback; }

  static double to_number(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw InvalidSpec("not a number: '" + s + "'");
    }
    if (used != s.size()) throw InvalidSpec("not a number: '" + s + "'");
    return v;
  }
};

inline InlineSpec parse_inline(const std::string& text) {
  InlineSpec s;
  const auto colon = text.find(':');
  s.kind = text.substr(0, colon);
  if (s.kind.empty()) throw InvalidSpec("empty spec");
  if (colon == std::string::npos) return s;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      s.positional.push_back(item);
    else
      s.named[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return s;
}

/// A spec is read from a file when the argument names an existing file or
/// ends in .json; otherwise it is an inline spec.
inline bool is_file_spec(const std::string& text) {
  return text.size() > 5 && (text.substr(text.size() - 5) == ".json" || std::filesystem::is_regular_file(text));
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpec("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidSpec(path + ": " + e.what());
  }
}

template <class T>
T field(const json& j, const std::string& k) {
  if (!j.contains(k)) throw InvalidSpec("missing field '" + k + "'");
  try {
    return j.at(k).get<T>();
  } catch (const json::exception& e) {
    throw InvalidSpec("field '" + k + "': " + e.what());
  }
}

template <class T>
T field(const json& j, const std::string& k, T fallback) {
  return j.contains(k) ? field<T>(j, k) : fallback;
}

// ---------------------------------------------------------------------------
// surfaces

inline Surface surface_from_json(const json& j) {
  const auto type = field<std::string>(j, "type");
  if (type == "ellipsoid") {
    const auto r = field<std::vector<double>>(j, "r");
    if (r.size() != 2) throw InvalidSpec("ellipsoid needs r: [r1, r2]");
    return Surface::ellipsoid(r[0], r[1]);
  }
  if (type == "polynomial") {
    std::vector<Monomial> terms;
    for (const auto& m : field<json>(j, "monomials")) {
      const auto p = field<std::vector<int>>(m, "powers");
      if (p.size() != 4) throw InvalidSpec("monomial powers must have 4 entries");
      terms.push_back({{p[0], p[1], p[2], p[3]}, field<double>(m, "coeff")});
    }
    bool symmetric = field<bool>(j, "symmetric", true);
    for (const auto& m : terms) symmetric = symmetric && Surface::monomial_rho_even(m);
    return Surface::polynomial(std::move(terms), symmetric);
  }
  throw InvalidSpec("unknown surface type '" + type + "'");
}

/// ellipsoid:r1,r2 | perturbed:r1,r2,eps (adds eps x1^2 x2^2) | file.json
inline Surface parse_surface(const std::string& text) {
  if (is_file_spec(text)) return surface_from_json(read_json_file(text));
  const auto s = parse_inline(text);
  auto pos = [&](std::size_t i) {
    if (i >= s.positional.size()) throw InvalidSpec(s.kind + " spec needs more values");
    return InlineSpec::to_number(s.positional[i]);
  };
  if (s.kind == "ellipsoid") return Surface::ellipsoid(pos(0), pos(1));
  if (s.kind == "perturbed") return Surface::ellipsoid(pos(0), pos(1)).plus({{2, 0, 2, 0}, pos(2)});
  throw InvalidSpec("unknown surface kind '" + s.kind + "'");
}

inline json to_json(const Surface& s) {
  if (s.radii()) return {{"type", "ellipsoid"}, {"r", {(*s.radii())[0], (*s.radii())[1]}}};
  json m = json::array();
  for (const auto& t : s.terms()) m.push_back({{"powers", t.powers}, {"coeff", t.coeff}});
  return {{"type", "polynomial"}, {"monomials", m}, {"symmetric", s.symmetric()}};
}

// ---------------------------------------------------------------------------
// loops

inline TrigLoop trig_from_json(const json& j) {
  TrigLoop t;
  t.T = field<double>(j, "T", 1.0);
  const auto c = field<std::vector<std::vector<double>>>(j, "cos");
  const auto s = field<std::vector<std::vector<double>>>(j, "sin", std::vector<std::vector<double>>(3));
  if (c.size() != 3 || s.size() != 3) throw InvalidSpec("trig loop needs cos and sin rows for entries a, b, c");
  for (int e = 0; e < 3; ++e) {
    if (c[e].size() > 4 || s[e].size() > 4) throw InvalidSpec("trig degree is at most 3");
    for (std::size_t k = 0; k < c[e].size(); ++k) t.cos_coeff[e][k] = c[e][k];
    for (std::size_t k = 0; k < s[e].size(); ++k) t.sin_coeff[e][k] = s[e][k];
  }
  return t;
}

inline json to_json(const TrigLoop& t) {
  json c = json::array(), s = json::array();
  for (int e = 0; e < 3; ++e) {
    c.push_back(std::vector<double>(t.cos_coeff[e].begin(), t.cos_coeff[e].end()));
    s.push_back(std::vector<double>(t.sin_coeff[e].begin(), t.sin_coeff[e].end()));
  }
  return {{"kind", "trig"}, {"T", t.T}, {"cos", c}, {"sin", s}};
}

/// S_P of the k-th symmetric orbit (by period) of a surface.
inline SymmetricLoop loop_from_orbit(const Surface& s, int k, OrbitSearchOptions oo = {}) {
  const auto found = find_symmetric_orbits(s, oo);
  if (k < 0 || k >= static_cast<int>(found.orbits.size()))
    throw InvalidSpec("orbit " + std::to_string(k) + " not found (" + std::to_string(found.orbits.size()) + " orbits)");
  return linearized_flow(s, found.orbits[static_cast<std::size_t>(k)]).s;
}

inline SymmetricLoop loop_from_json(const json& j) {
  const auto kind = field<std::string>(j, "kind");
  if (kind == "constant") return constant_loop(field<double>(j, "c"), field<double>(j, "T", 1.0));
  if (kind == "trig") return trig_from_json(j).loop();
  if (kind == "from_orbit") {
    const json& sj = field<json>(j, "surface");
    const Surface s = sj.is_string() ? parse_surface(sj.get<std::string>()) : surface_from_json(sj);
    return loop_from_orbit(s, field<int>(j, "orbit", 0));
  }
  throw InvalidSpec("unknown loop kind '" + kind + "'");
}

/// constant:c=..,T=.. | trig:seed=..,symmetric=0|1,T=.. | orbit:surface=ellipsoid;1;1.3,k=0 | file.json
inline SymmetricLoop parse_loop(const std::string& text) {
  if (is_file_spec(text)) return loop_from_json(read_json_file(text));
  const auto s = parse_inline(text);
  if (s.kind == "constant") return constant_loop(s.number("c"), s.number("T", 1.0));
  if (s.kind == "trig") {
    std::mt19937_64 rng(static_cast<std::uint64_t>(s.number("seed", 1.0)));
    return random_trig_loop(rng, s.number("symmetric", 1.0) != 0.0, 3, 2.0, s.number("T", 1.0)).loop();
  }
  if (s.kind == "orbit") {
    auto it = s.named.find("surface");
    if (it == s.named.end()) throw InvalidSpec("orbit loop needs surface=...");
    std::string surf = it->second;
    for (auto& ch : surf)
      if (ch == ';') ch = (surf.find(':') == std::string::npos) ? ':' : ',';
    return loop_from_orbit(parse_surface(surf), static_cast<int>(s.number("k", 0.0)));
  }
  throw InvalidSpec("unknown loop kind '" + s.kind + "'");
}

// ---------------------------------------------------------------------------
// paths for the index commands

/// Either a symplectic path or a Lagrangian path with its reference line.
struct PathInput {
  std::optional<SymplecticPath> symplectic;
  std::optional<LinePath> lagrangian;
  Line reference = real_axis();
};

inline Line parse_axis(const std::string& a) {
  if (a == "real" || a == "R") return real_axis();
  if (a == "imag" || a == "iR") return imag_axis();
  throw InvalidSpec("axis must be real or imag, got '" + a + "'");
}

inline PathInput path_from_json(const json& j) {
  PathInput p;
  const auto kind = field<std::string>(j, "kind");
  if (kind == "rotation") {
    p.symplectic = rotation_path(field<double>(j, "c"), field<double>(j, "T", 1.0));
  } else if (kind == "hyperbolic") {
    p.symplectic = hyperbolic_path(field<double>(j, "a"), field<double>(j, "T", 1.0), field<double>(j, "b", 0.0));
  } else if (kind == "rotation-lagrangian") {
    const auto span = field<std::vector<double>>(j, "span");
    if (span.size() != 2) throw InvalidSpec("span needs [a, b]");
    p.reference = parse_axis(field<std::string>(j, "axis", "real"));
    p.lagrangian = rotating_line(span[0], span[1], p.reference);
  } else {
    p.symplectic = fundamental_solution(loop_from_json(j), 0.0);
  }
  return p;
}

/// rotation:c=..,T=.. | hyperbolic:a=..,b=..,T=.. | rotation-lagrangian:span=a..b,axis=real|imag
/// | any loop spec (its fundamental solution) | file.json
inline PathInput parse_path(const std::string& text) {
  if (is_file_spec(text)) return path_from_json(read_json_file(text));
  const auto s = parse_inline(text);
  PathInput p;
  if (s.kind == "rotation") {
    p.symplectic = rotation_path(s.number("c"), s.number("T", 1.0));
  } else if (s.kind == "hyperbolic") {
    p.symplectic = hyperbolic_path(s.number("a"), s.number("T", 1.0), s.number("b", 0.0));
  } else if (s.kind == "rotation-lagrangian") {
    auto it = s.named.find("span");
    if (it == s.named.end()) throw InvalidSpec("rotation-lagrangian needs span=a..b");
    const auto dots = it->second.find("..");
    if (dots == std::string::npos) throw InvalidSpec("span must look like a..b");
    const double a = InlineSpec::to_number(it->second.substr(0, dots));
    const double b = InlineSpec::to_number(it->second.substr(dots + 2));
    if (!(b > a)) throw InvalidSpec("span must be increasing");
    p.reference = parse_axis(s.has("axis") ? s.named.at("axis") : "real");
    p.lagrangian = rotating_line(a, b, p.reference);
  } else {
    p.symplectic = fundamental_solution(parse_loop(text), 0.0);
  }
  return p;
}

// ---------------------------------------------------------------------------
// serialization

inline json to_json(const HalfInt& h) { return {{"num", h.num()}, {"den", h.den()}}; }

inline HalfInt half_int_from_json(const json& j) {
  const auto num = field<std::int64_t>(j, "num");
  const auto den = field<std::int64_t>(j, "den");
  if (den == 1) return HalfInt(num);
  if (den == 2 && num % 2 != 0) return HalfInt::from_twice(num);
  throw InvalidSpec("half-integer needs den 1, or den 2 with odd num");
}

inline json to_json(const Crossing& c) { return {{"t", c.t}, {"signature", c.signature}, {"dim", c.dim}}; }

inline json to_json(const RsResult& r) {
  json cs = json::array();
  for (const auto& c : r.report.crossings) cs.push_back(to_json(c));
  return {{"mu", to_json(r.index)}, {"crossings", cs}};
}

inline json to_json(const SpectrumSlice& s) {
  json e = json::array();
  for (const auto& x : s.entries)
    e.push_back({{"lambda", x.lambda}, {"winding", to_json(x.winding)}, {"multiplicity", x.multiplicity}});
  return {{"problem", to_string(s.problem)}, {"window", {s.a, s.b}}, {"entries", e}};
}

inline void write_csv(std::ostream& os, const SpectrumSlice& s) {
  os << "lambda,winding_num,winding_den,multiplicity\n";
  os.precision(15);
  for (const auto& x : s.entries)
    os << x.lambda << ',' << x.winding.num() << ',' << x.winding.den() << ',' << x.multiplicity << '\n';
}

inline json to_json(const ReebOrbit& o) {
  json fl = json::array();
  for (const auto& z : o.floquet) fl.push_back({z.real(), z.imag()});
  return {{"start", {o.start(0), o.start(1), o.start(2), o.start(3)}},
          {"T", o.T},
          {"symmetric", o.symmetric},
          {"residual", o.residual},
          {"degenerate", o.degenerate},
          {"floquet", fl}};
}

inline json to_json(const OrbitIndices& i) {
  json j = {{"m", i.m}, {"mu_cz", to_json(i.mu_cz)}};
  if (i.mu_rs) j["mu_rs"] = to_json(*i.mu_rs);
  return j;
}

inline json to_json(const Vec4& v) { return {v(0), v(1), v(2), v(3)}; }
inline json to_json(const Complex& z) { return {z.real(), z.imag()}; }

inline json to_json(const PageCheck& c) {
  return {{"boundary_defect", c.boundary_defect},
          {"symmetry_defect", c.symmetry_defect},
          {"min_transversality", c.min_transversality},
          {"min_area_density", c.min_area_density},
          {"ok", c.ok()}};
}

inline json to_json(const ReturnMapReport& r) {
  json fps = json::array();
  for (const auto& f : r.fixed_points)
    fps.push_back({{"w", to_json(f.w)}, {"x", to_json(f.x)}, {"residual", f.residual}, {"symmetric", f.symmetric}});
  return {{"samples", r.samples.size()},
          {"reversibility", r.reversibility},
          {"tau_symmetry", r.tau_symmetry},
          {"chart_defect", r.chart_defect},
          {"min_image_gap", r.min_image_gap},
          {"area_drift", r.area_drift},
          {"quadrilaterals", r.quadrilaterals},
          {"fixed_points", fps}};
}

inline json to_json(const OpenBookReport& r) {
  return {{"thetas", r.thetas},
          {"symmetry", r.symmetry},
          {"page_defect", r.page_defect},
          {"invariance_zero", r.invariance_zero},
          {"invariance_half", r.invariance_half},
          {"samples", r.samples}};
}

inline json to_json(const Tally& t) {
  return {{"passed", t.passed}, {"failed", t.failed}, {"skipped", t.skipped}, {"failures", t.failures}};
}

}  // namespace symreeb::io
