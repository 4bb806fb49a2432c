// symreeb command line front end.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "symreeb/symreeb.hpp"

using namespace symreeb;
using json = nlohmann::json;

namespace {

struct RunConfig {
  std::optional<double> tol;
  std::uint64_t seed = 7;
  std::string emit = "json";
  std::string out;
  int jobs = 1;
};

void add_common(CLI::App* app, RunConfig& rc) {
  app->add_option("--tol", rc.tol, "tolerance override (crossing detection, quadrature)");
  app->add_option("--seed", rc.seed, "RNG seed");
  app->add_option("--emit", rc.emit, "output format")->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", rc.out, "write the report to PATH instead of stdout");
  app->add_option("--jobs", rc.jobs, "worker threads")->check(CLI::PositiveNumber);
}

void write_text(const RunConfig& rc, const std::string& text) {
  if (rc.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(rc.out);
  if (!f) throw InvalidSpec("cannot write " + rc.out);
  f << text;
}

void emit_json(const RunConfig& rc, const json& j) { write_text(rc, j.dump(2) + "\n"); }

std::pair<double, double> parse_window(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw InvalidSpec("window must be a,b");
  const double a = io::InlineSpec::to_number(s.substr(0, comma));
  const double b = io::InlineSpec::to_number(s.substr(comma + 1));
  if (!(a < b)) throw InvalidSpec("window needs a < b");
  return {a, b};
}

// "1" or "0.6,0.8": a unit complex number
Complex parse_theta(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) return {io::InlineSpec::to_number(s), 0.0};
  return {io::InlineSpec::to_number(s.substr(0, comma)), io::InlineSpec::to_number(s.substr(comma + 1))};
}

/// Ellipsoids get the exact chart; other surfaces the continuation page from
/// the reference ellipsoid with the given radii (read from perturbed:r1,r2,eps
/// when not supplied).
DiskPage make_page(const std::string& surface_text, const std::string& radii_text, Complex theta) {
  const Surface s = io::parse_surface(surface_text);
  if (s.radii()) return ellipsoid_page((*s.radii())[0], (*s.radii())[1], theta);
  std::string r = radii_text;
  if (r.empty()) {
    const auto in = io::parse_inline(surface_text);
    if (in.kind != "perturbed") throw InvalidSpec("--radii r1,r2 needed for a continuation page");
    r = in.positional.at(0) + "," + in.positional.at(1);
  }
  const auto [r1, r2] = parse_window(r);
  return continuation_page(s, r1, r2, theta);
}

RsOptions rs_options(const RunConfig& rc) {
  RsOptions o;
  if (rc.tol) o.crossing_tol = *rc.tol;
  return o;
}

// ---------------------------------------------------------------------------

int cmd_index(const std::string& which, const std::string& path_text, const std::string& axis, const RunConfig& rc) {
  const auto in = io::parse_path(path_text);
  const RsOptions ro = rs_options(rc);
  json j;
  if (which == "rs") {
    if (in.lagrangian) {
      j = io::to_json(rs_index<2>(*in.lagrangian, in.reference, ro));
    } else {
      const Line v = io::parse_axis(axis);
      j = io::to_json(rs_index<2>(act_on_line(*in.symplectic, v), v, ro));
    }
  } else {
    if (!in.symplectic) throw InvalidSpec(which + " needs a symplectic path");
    if (which == "cz")
      j = io::to_json(cz_index_report(*in.symplectic, ro));
    else
      j = {{"mu", io::to_json(hormander_index(*in.symplectic, ro))}};
  }
  if (rc.emit == "csv") {
    std::ostringstream os;
    os.precision(15);
    os << "t,signature,dim\n";
    for (const auto& c : j.value("crossings", json::array()))
      os << c["t"].get<double>() << ',' << c["signature"] << ',' << c["dim"] << '\n';
    write_text(rc, os.str());
  } else {
    emit_json(rc, j);
  }
  return 0;
}

int cmd_spectrum(const std::string& loop_text, const std::string& bc, const std::string& window,
                 const RunConfig& rc) {
  const auto loop = io::parse_loop(loop_text);
  const auto [a, b] = parse_window(window);
  SpectralOptions so;
  so.jobs = rc.jobs;
  SpectrumSlice slice;
  std::optional<HalfInt> mu;
  if (bc == "periodic") {
    slice = periodic_spectrum(loop, a, b, so);
    mu = mu_spec(loop, so);
  } else {
    const Problem p = bc == "I" ? Problem::bc_I : Problem::bc_minus_I;
    slice = boundary_spectrum(half_of(loop), p, a, b, so);
    mu = p == Problem::bc_I ? mu_I(half_of(loop), so) : mu_minus_I(half_of(loop), so);
  }
  if (rc.emit == "csv") {
    std::ostringstream os;
    io::write_csv(os, slice);
    write_text(rc, os.str());
    return 0;
  }
  json j = io::to_json(slice);
  int negative = 0;
  for (const auto& e : slice.entries)
    if (e.lambda < 0.0) negative += e.multiplicity;
  j["negative_count"] = negative;
  j["mu"] = io::to_json(*mu);
  emit_json(rc, j);
  return 0;
}

json orbit_row(const Surface& s, const ReebOrbit& o, int iterates, const Trivialization& triv) {
  json j = io::to_json(o);
  if (o.degenerate) return j;
  const auto lf = linearized_flow(s, o, triv);
  json idx = json::array();
  for (int m = 1; m <= iterates; ++m) idx.push_back(io::to_json(orbit_indices(lf, m)));
  j["indices"] = idx;
  return j;
}

int cmd_orbit(const std::string& which, const std::string& surface_text, int k, int iterates, double period_cap,
              const Trivialization& triv, const RunConfig& rc) {
  const Surface s = io::parse_surface(surface_text);
  OrbitSearchOptions oo;
  oo.jobs = rc.jobs;
  oo.period_cap = period_cap;
  const auto found = find_symmetric_orbits(s, oo);
  json rows = json::array();
  if (which == "find") {
    for (const auto& o : found.orbits) rows.push_back(orbit_row(s, o, iterates, triv));
  } else {
    if (k < 0 || k >= static_cast<int>(found.orbits.size()))
      throw InvalidSpec("orbit " + std::to_string(k) + " not found (" + std::to_string(found.orbits.size()) + " orbits)");
    rows.push_back(orbit_row(s, found.orbits[static_cast<std::size_t>(k)], iterates, triv));
  }
  if (rc.emit == "csv") {
    std::ostringstream os;
    os.precision(15);
    os << "T,x1,y1,x2,y2,residual,degenerate,m,mu_cz_num,mu_cz_den,mu_rs_num,mu_rs_den\n";
    for (const auto& r : rows) {
      std::ostringstream head;
      head.precision(15);
      head << r["T"].get<double>();
      for (const auto& v : r["start"]) head << ',' << v.get<double>();
      head << ',' << r["residual"].get<double>() << ',' << (r["degenerate"].get<bool>() ? 1 : 0);
      if (!r.contains("indices")) {
        os << head.str() << ",,,,,\n";
        continue;
      }
      for (const auto& i : r["indices"]) {
        os << head.str() << ',' << i["m"] << ',' << i["mu_cz"]["num"] << ',' << i["mu_cz"]["den"];
        if (i.contains("mu_rs"))
          os << ',' << i["mu_rs"]["num"] << ',' << i["mu_rs"]["den"] << '\n';
        else
          os << ",,\n";
      }
    }
    write_text(rc, os.str());
    return 0;
  }
  emit_json(rc, {{"surface", io::to_json(s)}, {"seeds", found.seeds}, {"orbits", rows}});
  return 0;
}

int cmd_section(const std::string& which, const std::string& surface_text, const std::string& radii,
                const std::string& theta_text, int pages, int samples, const std::string& svg, const RunConfig& rc) {
  const DiskPage page = make_page(surface_text, radii, parse_theta(theta_text));
  SectionOptions so;
  so.jobs = rc.jobs;
  json j;
  if (which == "page") {
    j = io::to_json(check_page(page, 200, rc.seed));
    j["spanning"] = io::to_json(page.spanning);
    j["spanning"]["indices"] = json::array({io::to_json(orbit_indices(linearized_flow(page.surface, page.spanning), 1))});
  } else if (which == "return") {
    ReturnMapOptions ro;
    ro.seed = rc.seed;
    const auto rep = return_map_report(page, ro, so);
    if (!svg.empty()) {
      std::ofstream f(svg);
      if (!f) throw InvalidSpec("cannot write " + svg);
      write_return_svg(f, rep);
    }
    if (rc.emit == "csv") {
      std::ostringstream os;
      write_return_csv(os, rep);
      write_text(rc, os.str());
      return 0;
    }
    j = io::to_json(rep);
  } else if (which == "area") {
    const auto a = page_area(page, rc.tol.value_or(1e-5));
    j = {{"area", a.area}, {"error", a.error}, {"spanning_period", page.spanning.T}};
  } else {
    j = io::to_json(open_book(page, pages, samples, rc.seed, so));
  }
  emit_json(rc, j);
  return 0;
}

int cmd_verify(const std::vector<std::string>& only, int loops, const RunConfig& rc) {
  verify::Config cfg;
  cfg.seed = rc.seed;
  cfg.jobs = rc.jobs;
  cfg.loops = loops;
  cfg.only.insert(only.begin(), only.end());
  const auto results = verify::run(cfg);
  std::cerr << verify::matrix(results);
  emit_json(rc, verify::report(cfg, results));
  for (const auto& r : results)
    if (!r.ok()) {
      std::cerr << "first failing suite: " << r.key << "\n";
      return 3;
    }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Maslov-type indices of symplectic paths and symmetric Reeb dynamics.\n"
      "Angles and periods are decimal literals: pi = 3.14159265358979, 2 pi = 6.28318530717959."};
  app.require_subcommand(1);
  RunConfig rc;

  auto* index = app.add_subcommand("index", "Robbin-Salamon, Conley-Zehnder or Hormander index of a path");
  std::string index_kind, path_text, axis = "real";
  index->add_option("kind", index_kind, "rs | cz | hormander")->required()->check(CLI::IsMember({"rs", "cz", "hormander"}));
  index->add_option("--path", path_text,
                    "rotation:c=,T= | hyperbolic:a=,b=,T= | rotation-lagrangian:span=a..b,axis=real|imag | loop spec | file.json")
      ->required();
  index->add_option("--axis", axis, "reference line for rs of a symplectic path")->check(CLI::IsMember({"real", "imag"}));
  add_common(index, rc);

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and windings of the asymptotic operator");
  std::string loop_text, bc = "periodic", window = "-15,15";
  spectrum->add_option("--loop", loop_text, "constant:c=,T= | trig:seed=,symmetric=,T= | orbit:surface=..,k= | file.json")
      ->required();
  spectrum->add_option("--bc", bc, "boundary condition")->check(CLI::IsMember({"periodic", "I", "-I"}));
  spectrum->add_option("--window", window, "a,b");
  add_common(spectrum, rc);

  auto* orbit = app.add_subcommand("orbit", "symmetric periodic Reeb orbits");
  std::string orbit_kind, surface_text;
  int orbit_k = 0, iterates = 1;
  double period_cap = 10.0;
  bool symmetric = true;
  Trivialization triv;
  orbit->add_option("kind", orbit_kind, "find | index")->required()->check(CLI::IsMember({"find", "index"}));
  orbit->add_option("--surface", surface_text, "ellipsoid:r1,r2 | perturbed:r1,r2,eps | file.json")->required();
  orbit->add_flag("--symmetric", symmetric, "search symmetric orbits (the only search implemented)");
  orbit->add_option("--orbit", orbit_k, "orbit number for 'index', by period");
  orbit->add_option("--iterates", iterates, "indices of P^m for m = 1..N")->check(CLI::PositiveNumber);
  orbit->add_option("--period-cap", period_cap, "largest period searched");
  orbit->add_option("--base-twist", triv.base_twist, "symmetric frame twist along the surface");
  orbit->add_option("--loop-twist", triv.loop_twist, "frame composed with exp(2 pi k J0 t / T)");
  add_common(orbit, rc);

  auto* section = app.add_subcommand("section", "disk-like surfaces of section and return maps");
  std::string section_kind, radii, theta_text = "1", svg;
  int pages = 10, samples = 200;
  section->add_option("kind", section_kind, "page | return | area | openbook")
      ->required()
      ->check(CLI::IsMember({"page", "return", "area", "openbook"}));
  section->add_option("--surface", surface_text, "surface spec")->required();
  section->add_option("--theta", theta_text, "page direction in C: re or re,im (unit modulus)");
  section->add_option("--radii", radii, "reference ellipsoid r1,r2 for continuation pages");
  section->add_option("--pages", pages, "open book pages");
  section->add_option("--samples", samples, "open book sample points");
  section->add_option("--svg", svg, "also draw the return map to PATH");
  add_common(section, rc);

  auto* verify = app.add_subcommand("verify", "run the property suites");
  std::vector<std::string> only;
  int loops = 50;
  verify->add_option("--only", only, "suite keys: " + [] {
    std::string k;
    for (const auto& s : verify::suite_keys()) k += (k.empty() ? "" : ", ") + s;
    return k;
  }())->delimiter(',');
  verify->add_option("--loops", loops, "random loops per index suite")->check(CLI::PositiveNumber);
  add_common(verify, rc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (index->parsed()) return cmd_index(index_kind, path_text, axis, rc);
    if (spectrum->parsed()) return cmd_spectrum(loop_text, bc, window, rc);
    if (orbit->parsed()) return cmd_orbit(orbit_kind, surface_text, orbit_k, iterates, period_cap, triv, rc);
    if (section->parsed()) return cmd_section(section_kind, surface_text, radii, theta_text, pages, samples, svg, rc);
    if (verify->parsed()) return cmd_verify(only, loops, rc);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}
