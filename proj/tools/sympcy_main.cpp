// sympcy: verification suites, the expansion oracle, Newton-Krylov solves,
// and solution diagnostics for the deformed-volume equation on T^6.
//
// Exit codes: 0 success, 1 invariant failure, 2 oracle fit mismatch,
// 3 non-convergence, 4 I/O or configuration error.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sympcy/conventions.hpp"
#include "sympcy/diagnose.hpp"
#include "sympcy/equation.hpp"
#include "sympcy/exterior.hpp"
#include "sympcy/hxf.hpp"
#include "sympcy/solver.hpp"
#include "sympcy/util.hpp"
#include "sympcy/verify.hpp"

namespace {

using namespace sympcy;

struct Config {
  std::array<int, 6> grid{8, 8, 8, 8, 1, 1};
  std::string active;        // empty: derive from grid sizes
  std::uint64_t seed = 1;
  int workers = 1;
  std::string out = "out";
  std::string F = "zero";
  int samples = 200;
  // solver options
  int max_newton = 20;
  double newton_tol = 1e-10;
  double krylov_tol = 1e-8;
  std::string damping = "line-search-halving";
  int continuation_steps = 1;
  bool with_ricci = true;
};

struct CliError {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw CliError{code, msg}; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void parse_grid_token(const std::string& tok, std::array<int, 6>& grid) {
  auto parts = split(tok, ',');
  if (parts.size() == 1) parts = split(tok, 'x');
  if (parts.size() != 6) fail(4, "grid needs 6 sizes, got '" + tok + "'");
  for (int a = 0; a < 6; ++a) {
    try {
      grid[a] = std::stoi(parts[a]);
    } catch (const std::exception&) {
      fail(4, "bad grid size '" + parts[a] + "'");
    }
    if (grid[a] < 1) fail(4, "grid sizes must be >= 1");
  }
}

// Active mask: either a 6-character 0/1 string or a comma list of 1-based axes.
std::array<bool, 6> parse_active(const std::string& s) {
  std::array<bool, 6> act{};
  if (s.size() == 6 && s.find_first_not_of("01") == std::string::npos) {
    for (int a = 0; a < 6; ++a) act[a] = s[a] == '1';
    return act;
  }
  for (const auto& tok : split(s, ',')) {
    int a = 0;
    try {
      a = std::stoi(tok);
    } catch (const std::exception&) {
      fail(4, "bad active axis '" + tok + "'");
    }
    if (a < 1 || a > 6) fail(4, "active axis out of range: " + tok);
    act[a - 1] = true;
  }
  return act;
}

void load_config_file(const std::string& path, Config& cfg) {
  std::ifstream is(path);
  if (!is) fail(4, "cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        fail(4, "config line " + std::to_string(lineno) + " is not key=value");
      continue;
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    try {
      if (key == "grid") parse_grid_token(val, cfg.grid);
      else if (key == "active") cfg.active = val;
      else if (key == "seed") cfg.seed = std::stoull(val);
      else if (key == "workers") cfg.workers = std::stoi(val);
      else if (key == "out") cfg.out = val;
      else if (key == "F") cfg.F = val;
      else if (key == "samples") cfg.samples = std::stoi(val);
      else if (key == "max_newton") cfg.max_newton = std::stoi(val);
      else if (key == "newton_tol") cfg.newton_tol = std::stod(val);
      else if (key == "krylov_tol") cfg.krylov_tol = std::stod(val);
      else if (key == "damping") cfg.damping = val;
      else if (key == "continuation_steps") cfg.continuation_steps = std::stoi(val);
      else if (key == "with_ricci") cfg.with_ricci = val == "1" || val == "true";
      else fail(4, "unknown config key '" + key + "'");
    } catch (const CliError&) {
      throw;
    } catch (const std::exception&) {
      fail(4, "bad value for config key '" + key + "': '" + val + "'");
    }
  }
}

Grid resolve_grid(const Config& cfg) {
  std::array<int, 6> n = cfg.grid;
  if (!cfg.active.empty()) {
    const auto act = parse_active(cfg.active);
    for (int a = 0; a < 6; ++a) {
      if (!act[a]) n[a] = 1;
      if (act[a] && n[a] < 2)
        fail(4, "axis " + std::to_string(a + 1) + " is active but has grid size " +
                    std::to_string(n[a]));
    }
  }
  return Grid(n);
}

std::string canonical_config(const Config& cfg, const std::string& command) {
  std::ostringstream os;
  os << "command=" << command << "\n";
  os << "grid=";
  for (int a = 0; a < 6; ++a) os << cfg.grid[a] << (a == 5 ? "" : ",");
  os << "\nactive=" << cfg.active << "\nseed=" << cfg.seed << "\nworkers=" << cfg.workers
     << "\nout=" << cfg.out << "\nF=" << cfg.F << "\nsamples=" << cfg.samples
     << "\nmax_newton=" << cfg.max_newton;
  char buf[64];
  std::snprintf(buf, sizeof buf, "\nnewton_tol=%.17g\nkrylov_tol=%.17g", cfg.newton_tol,
                cfg.krylov_tol);
  os << buf << "\ndamping=" << cfg.damping << "\ncontinuation_steps=" << cfg.continuation_steps
     << "\nwith_ricci=" << (cfg.with_ricci ? 1 : 0) << "\n";
  return os.str();
}

nlohmann::ordered_json config_json(const Config& cfg, const std::string& command) {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["grid"] = cfg.grid;
  j["active"] = cfg.active;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  j["out"] = cfg.out;
  j["F"] = cfg.F;
  j["samples"] = cfg.samples;
  j["max_newton"] = cfg.max_newton;
  j["newton_tol"] = cfg.newton_tol;
  j["krylov_tol"] = cfg.krylov_tol;
  j["damping"] = cfg.damping;
  j["continuation_steps"] = cfg.continuation_steps;
  j["with_ricci"] = cfg.with_ricci;
  return j;
}

void stamp_report(nlohmann::ordered_json& j, const Config& cfg, const std::string& command) {
  j["config"] = config_json(cfg, command);
  j["config_hash"] = hex64(fnv1a64(canonical_config(cfg, command)));
  if (!j.contains("conventions")) j["conventions"] = conventions_json();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);  // binary: LF endings everywhere
  if (!os) fail(4, "cannot open '" + path.string() + "' for writing");
  os << content;
  if (!os) fail(4, "short write to '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::filesystem::path ensure_outdir(const Config& cfg) {
  std::filesystem::path dir(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(4, "cannot create output directory '" + cfg.out + "': " + ec.message());
  return dir;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Manufactured reference potential: 0.05 (cos x_a1 + cos x_a2 + cos(x_a1 - x_a3))
// over the first active axes (terms beyond the available count are dropped).
FormField manufactured_phi(const Grid& g) {
  std::vector<int> act;
  for (int a = 0; a < 6; ++a)
    if (g.active(a)) act.push_back(a);
  if (act.empty()) fail(4, "manufactured preset needs at least one active axis");
  Poly p;
  {
    std::array<int, 6> fr{};
    fr[act[0]] = 1;
    p = Poly::cosine(0.05, fr, 0.0);
  }
  if (act.size() >= 2) {
    std::array<int, 6> fr{};
    fr[act[1]] = 1;
    p = p + Poly::cosine(0.05, fr, 0.0);
  }
  if (act.size() >= 3) {
    std::array<int, 6> fr{};
    fr[act[0]] = 1;
    fr[act[2]] = -1;
    p = p + Poly::cosine(0.05, fr, 0.0);
  }
  FormField phi = FormField::scalar_analytic(g, p);
  phi.ana.reset();  // keep the forward problem on the solver's spectral path
  double* v = phi.comp(0);
  const double mn = phi.mean(0);
  for (long long q = 0; q < phi.npts(); ++q) v[q] -= mn;
  return phi;
}

struct FSetup {
  FormField F_raw;
  std::optional<FormField> phi_star;  // reference solution for manufactured runs
};

FSetup build_F(const Config& cfg, const Grid& g, const SymplecticFrame& fr,
               const std::pair<FormField, FormField>& Om) {
  FSetup s{FormField::zeros(g, 0), std::nullopt};
  const std::string& spec = cfg.F;
  if (spec == "zero") return s;
  if (spec.rfind("mode:", 0) == 0) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) fail(4, "mode preset needs mode:<axis>:<eps>");
    int axis = 0;
    double eps = 0;
    try {
      axis = std::stoi(parts[1]);
      eps = std::stod(parts[2]);
    } catch (const std::exception&) {
      fail(4, "bad mode preset '" + spec + "'");
    }
    if (axis < 1 || axis > 6) fail(4, "mode axis out of range");
    if (!g.active(axis - 1)) fail(4, "mode axis " + std::to_string(axis) + " is not active");
    double* v = s.F_raw.comp(0);
    for (long long p = 0; p < g.npts(); ++p) {
      const auto ix = g.coords(p);
      v[p] = eps * std::cos(2.0 * M_PI * static_cast<double>(ix[axis - 1]) /
                            static_cast<double>(g.n[axis - 1]));
    }
    return s;
  }
  if (spec == "manufactured") {
    FormField phi = manufactured_phi(g);
    auto def = deform(phi, Om, fr, +1);
    FormField num = pairing_ratio_field(wedge_dealiased(def.first, def.second), fr);
    FormField den = pairing_ratio_field(wedge_dealiased(Om.first, Om.second), fr);
    double* v = s.F_raw.comp(0);
    for (long long p = 0; p < g.npts(); ++p) {
      const double q = num.comp(0)[p] / den.comp(0)[p];
      if (!(q > 0)) fail(4, "manufactured preset: deformed volume ratio not positive");
      v[p] = std::log(q);
    }
    s.phi_star = std::move(phi);
    return s;
  }
  if (spec.rfind("file:", 0) == 0) {
    const std::string path = spec.substr(5);
    FormField f = read_hxf(path);  // runtime_error -> exit 4 at the top level
    if (f.degree != 0) fail(4, "F file '" + path + "' is not a degree-0 field");
    if (!(f.grid == g)) fail(4, "F file grid does not match the configured grid");
    s.F_raw = std::move(f);
    return s;
  }
  fail(4, "unknown F preset '" + spec + "' (zero | mode:<axis>:<eps> | manufactured | file:<path>)");
}

int cmd_verify(const Config& cfg, bool inject) {
  const auto dir = ensure_outdir(cfg);
  auto checks = verify_all(cfg.seed, inject);
  int failed = 0;
  for (const auto& c : checks) {
    std::printf("[%s] %-46s defect=%.3e tol=%.3e%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                c.defect, c.tolerance, c.note.empty() ? "" : "  ", c.note.c_str());
    if (!c.pass) ++failed;
  }
  auto j = verify_json(checks);
  stamp_report(j, cfg, "verify");
  j["inject_star_sign_error"] = inject;
  write_json(dir / "verify_report.json", j);
  std::printf("%d/%zu checks passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}

int cmd_expand(const Config& cfg) {
  const auto dir = ensure_outdir(cfg);
  ExpansionReport rep = expansion_oracle(cfg.samples, cfg.seed);
  auto j = expansion_json(rep);
  stamp_report(j, cfg, "expand");
  write_json(dir / "expansion_report.json", j);
  std::printf("expansion oracle over %d random Hessians (seed %llu):\n", rep.samples,
              static_cast<unsigned long long>(rep.seed));
  std::printf("  intrinsic ratio = 1 + L(H) + Q(H), Taylor defect %.3e\n", rep.max_taylor_defect);
  std::printf("  L(H) = %.17g * tr(H)   (fit residual %.3e)\n", rep.L_trace_coeff,
              rep.L_fit_residual);
  std::printf("  Q(H) = %s * local_poly(H)   (fit residual %.3e)\n", rep.kappa_exact.c_str(),
              rep.kappa_fit_residual);
  std::printf("  candidate kappa = 1/16: %s (max |Q - local/16| = %.3e)\n",
              rep.candidate_1_16_confirmed ? "CONFIRMED" : "REFUTED", rep.candidate_1_16_residual);
  std::printf("  pinned points: r(2Id)=%g, L(2Id)=%g, Q(2Id)=%g, local(2Id)=%g; L(Id)=%g, Q(Id)=%g\n",
              rep.ratio_at_2Id, rep.L_at_2Id, rep.Q_at_2Id, rep.local_at_2Id, rep.L_at_Id,
              rep.Q_at_Id);
  std::printf("  exact-rational vs field-pipeline cross-check: %.3e\n", rep.cross_check_defect);
  return rep.ok ? 0 : 2;
}

int cmd_solve(const Config& cfg) {
  const auto dir = ensure_outdir(cfg);
  const Grid g = resolve_grid(cfg);
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  FSetup fs = build_F(cfg, g, fr, Om);
  RHSData rhs;
  try {
    rhs = normalize_F(fs.F_raw, fr);
  } catch (const std::invalid_argument& e) {
    fail(4, e.what());
  }

  SolveOptions opts;
  opts.max_newton = cfg.max_newton;
  opts.newton_tol = cfg.newton_tol;
  opts.krylov_tol = cfg.krylov_tol;
  if (cfg.damping == "none") opts.damping = SolveOptions::Damping::none;
  else if (cfg.damping == "line-search-halving") opts.damping = SolveOptions::Damping::line_search_halving;
  else fail(4, "unknown damping '" + cfg.damping + "'");
  opts.continuation_steps = cfg.continuation_steps;
  opts.with_ricci = cfg.with_ricci;

  SolveReport rep = solve(rhs, fr, Om, opts);

  auto j = solve_report_json(rep);
  j["normalization_shift"] = rhs.normalization_shift;
  if (fs.phi_star) {
    FormField err = rep.phi;
    err -= *fs.phi_star;
    j["manufactured_error"] = err.maxnorm();
  }
  stamp_report(j, cfg, "solve");
  write_json(dir / "solve_report.json", j);
  write_hxf((dir / "phi.hxf").string(), rep.phi);

  std::string hist = "iteration,residual_maxnorm,step_size\n";
  for (size_t i = 0; i < rep.residual_history.size(); ++i) {
    hist += std::to_string(i) + "," + fmt17(rep.residual_history[i]) + ",";
    if (i < rep.step_sizes.size()) hist += fmt17(rep.step_sizes[i]);
    hist += "\n";
  }
  write_text(dir / "residual_history.csv", hist);

  {
    const Diagnostics& d = rep.diagnostics;
    std::string csv = "metric,value\n";
    csv += "residual_norm," + fmt17(d.residual_norm) + "\n";
    csv += "positivity_worst_min_eig," + fmt17(d.positivity_worst.min_eig) + "\n";
    csv += "positivity_worst_verdict," + std::string(verdict_name(d.positivity_worst.verdict)) + "\n";
    csv += "negativity_worst_max_eig," + fmt17(d.negativity_worst.max_eig) + "\n";
    csv += "negativity_worst_verdict," + std::string(verdict_name(d.negativity_worst.verdict)) + "\n";
    if (d.duality_available) csv += "duality_worst," + fmt17(d.duality_worst) + "\n";
    csv += "volume_conservation_defect," + fmt17(d.volume_conservation_defect) + "\n";
    if (d.ricci_available) {
      csv += "ricci_norm," + fmt17(d.ricci_norm) + "\n";
      csv += "ricci_antisym_worst," + fmt17(d.ricci_antisym_worst) + "\n";
    }
    write_text(dir / "diagnostics.csv", csv);
  }

  std::printf("%s after %d Newton iterations, final residual %.3e (report in %s)\n",
              rep.converged ? "converged" : "NOT converged", rep.iterations,
              rep.residual_history.empty() ? 0.0 : rep.residual_history.back(),
              dir.string().c_str());
  if (!rep.converged) std::printf("stop reason: %s\n", rep.stop_reason.c_str());
  return rep.converged ? 0 : 3;
}

int cmd_diagnose(const Config& cfg, const std::string& phi_path) {
  const auto dir = ensure_outdir(cfg);
  FormField phi = read_hxf(phi_path);  // runtime_error -> 4
  if (phi.degree != 0) fail(4, "phi file '" + phi_path + "' is not a degree-0 field");
  const Grid& g = phi.grid;
  const SymplecticFrame fr = make_standard_frame();
  const auto Om = standard_omega_pair(g);
  FSetup fs;
  {
    Config sub = cfg;
    sub.grid = g.n;
    sub.active.clear();
    fs = build_F(sub, g, fr, Om);
  }
  RHSData rhs;
  try {
    rhs = normalize_F(fs.F_raw, fr);
  } catch (const std::invalid_argument& e) {
    fail(4, e.what());
  }
  Diagnostics d = diagnose(phi, rhs, fr, Om, cfg.with_ricci);
  auto j = diagnostics_json(d);
  stamp_report(j, cfg, "diagnose");
  j["phi_file"] = phi_path;
  write_json(dir / "diagnostics.json", j);

  std::string csv = "metric,point,i1,i2,i3,i4,i5,i6,value\n";
  auto row = [&](const std::string& name, long long p, double val) {
    const auto ix = g.coords(p);
    csv += name + "," + std::to_string(p);
    for (int a = 0; a < 6; ++a) csv += "," + std::to_string(ix[a]);
    csv += "," + fmt17(val) + "\n";
  };
  row("positivity_worst_min_eig", d.positivity_worst_point, d.positivity_worst.min_eig);
  row("negativity_worst_max_eig", d.negativity_worst_point, d.negativity_worst.max_eig);
  if (d.duality_available) row("duality_worst", d.duality_worst_point, d.duality_worst);
  write_text(dir / "worst_points.csv", csv);

  std::printf("diagnostics written to %s (residual_norm %.3e)\n", dir.string().c_str(),
              d.residual_norm);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symplectic Calabi-Yau volume-equation toolkit"};
  app.require_subcommand(1);

  Config cfg;
  std::string config_path;
  std::string grid_token;
  bool inject = false;
  std::string phi_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value configuration file");
    sub->add_option("--grid", grid_token, "grid sizes n1..n6, comma-separated");
    sub->add_option("--active", cfg.active, "active axes: comma list (1-based) or 6-char 0/1 mask");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--workers", cfg.workers, "worker thread cap");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--F", cfg.F, "right-hand side: zero | mode:<axis>:<eps> | manufactured | file:<path>");
  };

  CLI::App* sv = app.add_subcommand("verify", "run the invariant suites");
  add_common(sv);
  sv->add_flag("--inject-star-sign-error", inject,
               "corrupt the star tables to demonstrate failure detection");

  CLI::App* se = app.add_subcommand("expand", "run the expansion oracle");
  add_common(se);
  se->add_option("--samples", cfg.samples, "number of random Hessians");

  CLI::App* ss = app.add_subcommand("solve", "solve the equation for the configured F");
  add_common(ss);
  ss->add_option("--max-newton", cfg.max_newton, "Newton iteration cap");
  ss->add_option("--newton-tol", cfg.newton_tol, "residual max-norm tolerance");
  ss->add_option("--krylov-tol", cfg.krylov_tol, "relative GMRES tolerance");
  ss->add_option("--damping", cfg.damping, "none | line-search-halving");
  ss->add_option("--continuation-steps", cfg.continuation_steps, "homotopy steps in F amplitude");
  ss->add_option("--with-ricci", cfg.with_ricci, "run the Ricci probe in final diagnostics");

  CLI::App* sd = app.add_subcommand("diagnose", "diagnose a phi checkpoint");
  add_common(sd);
  sd->add_option("--phi", phi_path, "HXF1 file holding the degree-0 potential")->required();
  sd->add_option("--with-ricci", cfg.with_ricci, "run the Ricci probe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  try {
    // Config file first, explicit flags override it.
    if (!config_path.empty()) {
      Config file_cfg;
      load_config_file(config_path, file_cfg);
      // Apply file values for everything the command line did not set.
      Config merged = file_cfg;
      CLI::App* sub = app.get_subcommands().front();
      auto taken = [&](const std::string& flag) {
        const CLI::Option* o = sub->get_option_no_throw(flag);
        return o != nullptr && o->count() > 0;
      };
      if (taken("--grid")) parse_grid_token(grid_token, merged.grid);
      if (taken("--active")) merged.active = cfg.active;
      if (taken("--seed")) merged.seed = cfg.seed;
      if (taken("--workers")) merged.workers = cfg.workers;
      if (taken("--out")) merged.out = cfg.out;
      if (taken("--F")) merged.F = cfg.F;
      if (taken("--samples")) merged.samples = cfg.samples;
      if (taken("--max-newton")) merged.max_newton = cfg.max_newton;
      if (taken("--newton-tol")) merged.newton_tol = cfg.newton_tol;
      if (taken("--krylov-tol")) merged.krylov_tol = cfg.krylov_tol;
      if (taken("--damping")) merged.damping = cfg.damping;
      if (taken("--continuation-steps")) merged.continuation_steps = cfg.continuation_steps;
      if (taken("--with-ricci")) merged.with_ricci = cfg.with_ricci;
      cfg = merged;
    } else if (!grid_token.empty()) {
      parse_grid_token(grid_token, cfg.grid);
    }
    if (cfg.workers < 1) fail(4, "workers must be >= 1");
    set_max_workers(cfg.workers);

    if (sv->parsed()) return cmd_verify(cfg, inject);
    if (se->parsed()) return cmd_expand(cfg);
    if (ss->parsed()) return cmd_solve(cfg);
    if (sd->parsed()) return cmd_diagnose(cfg, phi_path);
    return 4;
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return 4;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
}
