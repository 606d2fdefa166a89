// jordan: command-line front end.
// Exit codes: 0 all checks within tolerance, 1 a mathematical check failed, 2 usage or parse error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "jordan.hpp"

namespace {

using namespace jordan;

struct Globals {
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
  std::string out;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw UsageError("cannot open " + g.out + " for writing");
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int cmd_decompose(const Globals& g, const std::string& domain, const std::string& point) {
  const Domain D = parse_domain(domain);
  const Vector x = parse_point(D.system, point);
  const auto dec = spectral_decomposition(D, x, g.tol);
  double recon = (dec.reconstruct(D.dim()) - x).norm();
  double tri = 0.0;
  double orth = 0.0;
  for (std::size_t i = 0; i < dec.size(); ++i) {
    const auto& e = dec.frame[i];
    tri = std::max(tri, (triple(D.system, e, e, e) - 2.0 * e).norm());
    for (std::size_t j = i + 1; j < dec.size(); ++j)
      orth = std::max(orth, op_D(D.system, e, dec.frame[j]).norm());
  }
  const double bound = 100.0 * g.tol * std::max(1.0, x.norm());
  const bool ok = recon <= bound && tri <= bound && orth <= bound;
  Json out{{"schema", kSchemaVersion}, {"domain", D.tag()}, {"point", to_json(x)}};
  out.update(to_json(dec));
  out["residuals"] = {{"reconstruction", recon}, {"tripotent", tri}, {"orthogonality", orth}, {"bound", bound}};
  out["ok"] = ok;
  emit(g, dump(out));
  return ok ? 0 : 1;
}

int cmd_classify(const Globals& g, const std::string& domain, const std::string& point) {
  const Domain D = parse_domain(domain);
  const Vector x = parse_point(D.system, point);
  const Membership m = contains(D, x, g.tol);
  if (m != Membership::Boundary) {
    std::cerr << "classify: point is " << to_string(m) << " (spectral norm " << spectral_norm(D, x)
              << "); classification needs a boundary point\n";
    return 1;
  }
  const auto ev = is_shilov(D, x, g.tol);
  Json out{{"schema", kSchemaVersion},
           {"domain", D.tag()},
           {"point", to_json(x)},
           {"stratum", ev.classification.stratum_rank},
           {"e", to_json(ev.classification.e)},
           {"v", to_json(ev.classification.v)},
           {"interior_norm", ev.classification.interior_norm},
           {"shilov", ev.shilov},
           {"radius", ev.radius},
           {"max_radius", ev.max_radius}};
  emit(g, dump(out));
  return ev.radius_consistent ? 0 : 1;
}

int cmd_scan(const Globals& g, const std::string& domain, const std::string& w_text, const std::string& p_text,
             int grid) {
  const Domain D = parse_domain(domain);
  const Vector w = parse_point(D.system, w_text);
  const Vector p = parse_point(D.system, p_text);
  const auto res = scan_bergman_det(D, w, p, grid);
  std::ostringstream csv;
  write_csv(csv, res);
  const Json summary{{"schema", kSchemaVersion}, {"domain", D.tag()},          {"grid", grid},
                     {"min", res.min_abs},       {"argmin_theta", res.argmin_theta}};
  // CSV on stdout unless --out names a file; the summary goes wherever the CSV does not.
  if (g.out.empty()) {
    std::cout << csv.str();
    std::cerr << dump(summary);
  } else {
    emit(g, csv.str());
    std::cout << dump(summary);
  }
  return 0;
}

struct RigidityArgs {
  std::string domain;
  std::string target;
  std::string map = "id";
  std::string p;
  int k_max = 400;
  int fit_points = 0;
  double fit_radius = 0.5;
  std::string csv;
};

int cmd_rigidity(const Globals& g, const RigidityArgs& a) {
  const Domain D1 = parse_domain(a.domain);
  const Domain D2 = a.target.empty() ? D1 : parse_domain(a.target);
  const MapChain F = parse_chain(D1, a.map);
  const Vector p = a.p.empty() ? canonical_maximal_tripotent(D1.system) : parse_point(D1.system, a.p);
  const auto grid = make_fit_grid(D1, a.fit_points, a.fit_radius, g.seed);
  RescalingOptions opt;
  opt.seed = g.seed + 1;
  const auto run = rescaling_pipeline(D1, D2, F, p, a.k_max, grid, opt);
  Json out = to_json(run);
  out["inputs"]["map"] = a.map;
  out["inputs"]["seed"] = g.seed;
  emit(g, dump(out));
  if (!a.csv.empty()) {
    std::ofstream f(a.csv);
    if (!f) throw UsageError("cannot open " + a.csv + " for writing");
    write_csv(f, run);
  }
  return run.verdict == Verdict::LinearLimit ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded symmetric domains: spectral decomposition, boundary strata, Bergman scans, rigidity runs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML file with option values");
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--tol", g.tol, "numerical tolerance")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "write the report to this file");

  std::string domain;
  std::string point;
  auto* dec = app.add_subcommand("decompose", "spectral decomposition of a point");
  dec->fallthrough();
  dec->add_option("--domain", domain, "ball:n | I:p,q | II:m | III:m | IV:m | prod(a;b)")->required();
  dec->add_option("--point", point, "complex coordinates, diag(...) or a row-major matrix")->required();

  auto* cls = app.add_subcommand("classify", "boundary stratum and Shilov test");
  cls->fallthrough();
  cls->add_option("--domain", domain)->required();
  cls->add_option("--point", point)->required();

  std::string w;
  std::string p;
  int grid = 256;
  auto* scan = app.add_subcommand("scan", "|det B(e^{i theta} w, p)| on a theta grid");
  scan->fallthrough();
  scan->add_option("--domain", domain)->required();
  scan->add_option("--w", w)->required();
  scan->add_option("--p", p)->required();
  scan->add_option("--grid", grid)->capture_default_str()->check(CLI::PositiveNumber);

  RigidityArgs ra;
  auto* rig = app.add_subcommand("rigidity", "rescaled maps g_{b_k}^{-1} o F o g_{a_k} and their linear limit");
  rig->fallthrough();
  rig->add_option("--domain", ra.domain, "source domain D1")->required();
  rig->add_option("--target", ra.target, "target domain D2 (default D1)");
  rig->add_option("--map", ra.map, "chain: id | scale:c | square | transvection(a) | inverse(a) | linear(...), ';'-separated")
      ->capture_default_str();
  rig->add_option("--p", ra.p, "Shilov boundary point (default: canonical maximal tripotent)");
  rig->add_option("--k-max", ra.k_max)->capture_default_str()->check(CLI::Range(2, 100000));
  rig->add_option("--fit-points", ra.fit_points, "fit grid size (at least 4 n^2)")->capture_default_str();
  rig->add_option("--fit-radius", ra.fit_radius)->capture_default_str()->check(CLI::Range(0.0, 1.0));
  rig->add_option("--csv", ra.csv, "write per-k rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*dec) return cmd_decompose(g, domain, point);
    if (*cls) return cmd_classify(g, domain, point);
    if (*scan) return cmd_scan(g, domain, w, p, grid);
    if (*rig) return cmd_rigidity(g, ra);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
