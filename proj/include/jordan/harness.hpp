#pragma once

// Numerical harness for the rigidity argument: Schwarz lemma containments, the
// Key-Lemma norm certificate, orbit convergence to a boundary point, the rescaled
// maps G_k = g_{b_k}^{-1} o F o g_{a_k} and their linear limit, and truncated prisms.

#include <optional>
#include <string>
#include <vector>

#include "jordan/automorphisms.hpp"
#include "jordan/boundary.hpp"
#include "jordan/sampling.hpp"

namespace jordan {

inline const std::vector<double> kSchwarzLevels{0.25, 0.5, 0.75, 0.9};

/// Points of spectral norm 1 (the boundary of D), seeded.
inline std::vector<Vector> boundary_samples(const Domain& D, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_direction(D, rng));
  return out;
}

// ---------------------------------------------------------------------------
// Schwarz lemma for convex balanced domains.

struct SchwarzLevel {
  double r;
  double max_norm;  // max ||F(r x)||_{D2} over samples
};

struct SchwarzViolation {
  std::string what;  // "derivative" or "level r=..."
  Vector x;
  double value;
  double bound;
};

struct SchwarzReport {
  double max_derivative_norm = 0.0;  // max ||F'(0) x||_{D2}
  std::vector<SchwarzLevel> levels;
  std::vector<SchwarzViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// Checks F'(0)(D1) in D2 and F(r D1) in r D2 on samples x of the boundary of D1.
inline SchwarzReport schwarz_balanced_check(const Domain& D1, const Domain& D2, const MapChain& F,
                                            const std::vector<Vector>& grid,
                                            const std::vector<double>& levels = kSchwarzLevels,
                                            double tol = 1e-8) {
  const Vector zero = Vector::Zero(D1.dim());
  if (F(zero).norm() > 1e-10) throw std::invalid_argument("schwarz_balanced_check: F(0) != 0");
  const LinearOperator J = F.derivative(zero);
  SchwarzReport rep;
  for (const auto& x : grid) {
    const double v = spectral_norm(D2, J * x);
    rep.max_derivative_norm = std::max(rep.max_derivative_norm, v);
    if (v > 1.0 + tol) rep.violations.push_back({"derivative", x, v, 1.0});
  }
  for (double r : levels) {
    SchwarzLevel lv{r, 0.0};
    for (const auto& x : grid) {
      const double v = spectral_norm(D2, F(r * x));
      lv.max_norm = std::max(lv.max_norm, v);
      if (v > r + tol) rep.violations.push_back({"level r=" + std::to_string(r), x, v, r});
    }
    rep.levels.push_back(lv);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Key Lemma premise: ||F(z)|| = ||z|| on an open set.

enum class KeyLemmaStatus { CertifiedAutomorphismPremise, PremiseFailed };

inline const char* to_string(KeyLemmaStatus s) {
  return s == KeyLemmaStatus::CertifiedAutomorphismPremise ? "CERTIFIED-AUTOMORPHISM-PREMISE" : "PREMISE-FAILED";
}

struct KeyLemmaReport {
  KeyLemmaStatus status = KeyLemmaStatus::PremiseFailed;
  double max_deviation = 0.0;  // max | ||F(z)|| - ||z|| |
  int failures = 0;
  int samples = 0;
};

/// Verifies the premise only: the conclusion (F is an automorphism) is the theorem's.
inline KeyLemmaReport vigue_key_lemma_scenario(const Domain& D, const MapChain& F,
                                               const std::vector<Vector>& u_samples, double tol = 1e-7) {
  if (!D.system.irreducible()) throw std::invalid_argument("vigue_key_lemma_scenario: D must be irreducible");
  if (F(Vector::Zero(D.dim())).norm() > 1e-10) throw std::invalid_argument("vigue_key_lemma_scenario: F(0) != 0");
  KeyLemmaReport rep;
  for (const auto& z : u_samples) {
    const double d = std::abs(spectral_norm(D, F(z)) - spectral_norm(D, z));
    rep.max_deviation = std::max(rep.max_deviation, d);
    if (d > tol) ++rep.failures;
    ++rep.samples;
  }
  rep.status = rep.failures == 0 && rep.samples > 0 ? KeyLemmaStatus::CertifiedAutomorphismPremise
                                                    : KeyLemmaStatus::PremiseFailed;
  return rep;
}

// ---------------------------------------------------------------------------
// Orbit convergence.

/// Grid in r * closed(D): the origin, the circle r * zeta * p through the target, and
/// seeded samples with spectral norm in [0, r] (half of them on the sphere of radius r).
inline std::vector<Vector> compact_grid(const Domain& D, const Vector& p, double r, int random_points,
                                        std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Vector> g{Vector::Zero(D.dim())};
  for (int k = 0; k < 16; ++k) g.push_back(r * std::polar(1.0, 2.0 * M_PI * k / 16) * p);
  for (int i = 0; i < random_points; ++i) {
    const double t = i % 2 ? r : uniform(rng, 0.0, r);
    g.push_back(t * random_direction(D, rng));
  }
  return g;
}

struct OrbitRun {
  std::vector<double> sup_distance;  // index k-1 holds s_k
  bool eventually_decreasing = false;
  double final_distance() const { return sup_distance.empty() ? 0.0 : sup_distance.back(); }
};

/// s_k = max over the grid of |phi_k(z) - p| with phi_k the chain a0 -> a_k = (1 - 1/k) p.
inline OrbitRun orbit_convergence_run(const Domain& D, const Vector& p, const Vector& a0, int k_max,
                                      double compact_radius, int random_points = 200, std::uint64_t seed = 3) {
  if (!is_shilov(D, p).shilov) throw std::invalid_argument("orbit_convergence_run: p must be a Shilov point");
  if (contains(D, a0) != Membership::Interior) throw std::invalid_argument("orbit_convergence_run: a0 not interior");
  if (k_max < 1) throw std::invalid_argument("orbit_convergence_run: k_max must be positive");
  const auto grid = compact_grid(D, p, compact_radius, random_points, seed);
  OrbitRun run;
  for (int k = 1; k <= k_max; ++k) {
    const Vector ak = (1.0 - 1.0 / k) * p;
    const MapChain phi = map_a_to_b(D, a0, ak);
    double s = 0.0;
    for (const auto& z : grid) s = std::max(s, (phi(z) - p).norm());
    run.sup_distance.push_back(s);
  }
  run.eventually_decreasing = true;
  for (int k = std::max(2, k_max / 4); k < k_max; ++k)
    if (run.sup_distance[k] > run.sup_distance[k - 1] * (1.0 + 1e-12)) run.eventually_decreasing = false;
  return run;
}

// ---------------------------------------------------------------------------
// Rescaling pipeline.

enum class Verdict { LinearLimit, Failed, NotSelfMap };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::LinearLimit:
      return "LINEAR_LIMIT";
    case Verdict::Failed:
      return "FAILED";
    case Verdict::NotSelfMap:
      return "NOT_SELF_MAP";
  }
  return "";
}

struct RescalingStep {
  int k = 0;
  Vector a;
  Vector b;
  double orbit_sup = 0.0;      // max over the fit grid of |g_{a_k}(z) - p|
  double nonlinearity = 0.0;   // rho_k = max |G_k(z) - L_k z|
  double delta_linear = 0.0;   // ||L_k - L_{k-1}|| (operator norm), 0 for the first step
  LinearOperator linear;       // least-squares fit L_k; equals G_k'(0) when G_k is linear
};

struct RescalingOptions {
  double linear_tol = 1e-6;   // rho threshold
  double stable_tol = 1e-6;   // ||L_k - L_{k-1}|| threshold
  double onto_tol = 1e-6;     // L, L^{-1} nonexpansive up to this slack
  int onto_samples = 200;
  std::uint64_t seed = 5;
};

struct RescalingRun {
  std::string d1;
  std::string d2;
  Vector p;
  int k_max = 0;
  int fit_points = 0;
  std::vector<RescalingStep> steps;
  std::optional<int> converged_at;  // first k with rho_k and ||L_k - L_{k-1}|| both under threshold
  LinearOperator final_linear;
  double final_nonlinearity = 0.0;
  double isometry_defect = 0.0;    // max | ||L x||_2 - ||x||_1 | on boundary samples
  double forward_expansion = 0.0;  // max ||L x||_{D2}, x on the boundary of D1
  double inverse_expansion = 0.0;  // max ||L^{-1} y||_{D1}, y on the boundary of D2
  Verdict verdict = Verdict::Failed;
  std::string message;
};

/// Interior points with spectral norm in [0, radius]; at least 4 n^2 of them.
inline std::vector<Vector> make_fit_grid(const Domain& D, int count, double radius, std::uint64_t seed) {
  const int need = std::max(count, 4 * D.dim() * D.dim());
  Rng rng(seed);
  std::vector<Vector> g;
  g.reserve(need);
  for (int i = 0; i < need; ++i) g.push_back(uniform(rng, 0.1, 1.0) * radius * random_direction(D, rng));
  return g;
}

/// Builds a_k = (1 - 1/k) p, b_k = F(a_k), G_k = g_{b_k}^{-1} o F o g_{a_k} for k = 2..k_max,
/// fits L_k to G_k on the grid, and tests the final L for linear equivalence of D1 onto D2.
inline RescalingRun rescaling_pipeline(const Domain& D1, const Domain& D2, const MapChain& F, const Vector& p,
                                       int k_max, const std::vector<Vector>& fit_grid,
                                       const RescalingOptions& opt = {}) {
  if (D1.dim() != D2.dim()) throw std::invalid_argument("rescaling_pipeline: dimension mismatch");
  if (k_max < 2) throw std::invalid_argument("rescaling_pipeline: k_max must be at least 2");
  if (!is_shilov(D1, p).shilov) throw std::invalid_argument("rescaling_pipeline: p must be Shilov in D1");
  const int n = D1.dim();
  if (static_cast<int>(fit_grid.size()) < 4 * n * n)
    throw std::invalid_argument("rescaling_pipeline: fit grid needs at least 4 n^2 points");

  RescalingRun run;
  run.d1 = D1.tag();
  run.d2 = D2.tag();
  run.p = p;
  run.k_max = k_max;
  run.fit_points = static_cast<int>(fit_grid.size());

  Matrix Z(fit_grid.size(), n);
  for (std::size_t i = 0; i < fit_grid.size(); ++i) Z.row(i) = fit_grid[i].transpose();
  const auto Zqr = Z.colPivHouseholderQr();

  LinearOperator prev;
  for (int k = 2; k <= k_max; ++k) {
    RescalingStep st;
    st.k = k;
    st.a = (1.0 - 1.0 / k) * p;
    try {
      st.b = F(st.a);
    } catch (const OutsideExtensionDomain&) {
      run.verdict = Verdict::NotSelfMap;
      run.message = "F is undefined at a_" + std::to_string(k);
      return run;
    }
    if (contains(D2, st.b, 0.0) != Membership::Interior) {
      run.verdict = Verdict::NotSelfMap;
      run.message = "F(a_" + std::to_string(k) + ") leaves D2";
      run.steps.push_back(std::move(st));
      return run;
    }
    const Transvection ga(D1, st.a);
    const Transvection gb(D2, st.b);
    MapChain G = MapChain::of(ga);
    G.then_chain(F).then_inverse(gb);

    Matrix Y(fit_grid.size(), n);
    for (std::size_t i = 0; i < fit_grid.size(); ++i) {
      Y.row(i) = G(fit_grid[i]).transpose();
      st.orbit_sup = std::max(st.orbit_sup, (ga(fit_grid[i]) - p).norm());
    }
    // rows: Y = Z L^T
    st.linear = Zqr.solve(Y).transpose();
    st.nonlinearity = (Y - Z * st.linear.transpose()).rowwise().norm().maxCoeff();
    st.delta_linear = prev.size() ? operator_norm(st.linear - prev) : 0.0;
    prev = st.linear;
    if (!run.converged_at && st.nonlinearity <= opt.linear_tol && k > 2 && st.delta_linear <= opt.stable_tol)
      run.converged_at = k;
    run.steps.push_back(std::move(st));
  }

  const auto& last = run.steps.back();
  run.final_linear = last.linear;
  run.final_nonlinearity = last.nonlinearity;

  const Eigen::JacobiSVD<Matrix> svd(run.final_linear);
  if (svd.singularValues()(n - 1) < 1e-8) {
    run.verdict = Verdict::Failed;
    run.message = "fitted limit map is singular";
    return run;
  }
  const LinearOperator Linv = run.final_linear.inverse();
  for (const auto& x : boundary_samples(D1, opt.onto_samples, opt.seed)) {
    const double v = spectral_norm(D2, run.final_linear * x);
    run.forward_expansion = std::max(run.forward_expansion, v);
    run.isometry_defect = std::max(run.isometry_defect, std::abs(v - spectral_norm(D1, x)));
  }
  for (const auto& y : boundary_samples(D2, opt.onto_samples, opt.seed + 1))
    run.inverse_expansion = std::max(run.inverse_expansion, spectral_norm(D1, Linv * y));

  if (run.final_nonlinearity > opt.linear_tol) {
    run.verdict = Verdict::Failed;
    run.message = "rescaled maps are not linear at k_max";
  } else if (run.forward_expansion > 1.0 + opt.onto_tol || run.inverse_expansion > 1.0 + opt.onto_tol) {
    run.verdict = Verdict::Failed;
    run.message = "fitted limit does not map D1 onto D2";
  } else {
    run.verdict = Verdict::LinearLimit;
    run.message = run.converged_at ? "linear limit; L_k stabilized at k = " + std::to_string(*run.converged_at)
                                   : "linear limit; L_k still drifting at the stability threshold";
  }
  return run;
}

// ---------------------------------------------------------------------------
// Truncated prisms V = { t e^{i theta} w : w in W, t in [t_min, 1] }.

struct PrismReport {
  bool circle_invariance = true;  // (a)
  bool boundary_trace = true;     // (b)
  bool radial_closure = true;     // (c)
  bool disc_absorption = true;    // Delta_z inside (1 - 1/s) closed(D) union V
  int points = 0;
  std::vector<std::string> failures;
  bool passed() const { return circle_invariance && boundary_trace && radial_closure && disc_absorption; }
};

inline PrismReport truncated_prism_check(const Domain& D, const std::vector<Vector>& w_patch,
                                         const std::vector<double>& v_levels, int theta_grid = 16,
                                         double tol = kDefaultTol) {
  if (w_patch.empty() || v_levels.empty()) throw std::invalid_argument("truncated_prism_check: empty input");
  for (double t : v_levels)
    if (!(t > 0.0 && t <= 1.0)) throw std::invalid_argument("truncated_prism_check: levels must lie in (0,1]");
  for (const auto& w : w_patch)
    if (classify_boundary_point(D, w, tol).stratum_rank != 1)
      throw std::invalid_argument("truncated_prism_check: base points must lie in M_{D,1}");

  const double t_min = *std::min_element(v_levels.begin(), v_levels.end());
  const double check = 1e-9;
  const auto in_prism = [&](const Vector& z) {
    const double t = spectral_norm(D, z);
    if (t < t_min - check || t > 1.0 + check) return false;
    const Vector u = z / t;
    for (const auto& w : w_patch) {
      const Complex ph = w.dot(u);
      if (std::abs(ph) < 1e-12) continue;
      if ((u - (ph / std::abs(ph)) * w).norm() <= 1e-8 * std::max(1.0, w.norm())) return true;
    }
    return false;
  };

  PrismReport rep;
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    rep.failures.push_back(std::move(msg));
  };
  std::vector<double> levels = v_levels;
  if (std::find(levels.begin(), levels.end(), 1.0) == levels.end()) levels.push_back(1.0);

  for (const auto& w : w_patch) {
    for (double t : levels) {
      for (int j = 0; j < theta_grid; ++j) {
        const Vector z = t * std::polar(1.0, 2.0 * M_PI * j / theta_grid) * w;
        ++rep.points;
        // (a) the circle through z stays in V
        const Vector rotated = std::polar(1.0, 0.7 + 2.0 * M_PI * j / theta_grid) * z;
        if (!in_prism(rotated)) fail(rep.circle_invariance, "rotation leaves V at t=" + std::to_string(t));
        // (b) V meets the boundary exactly in S^1 . W
        const auto mem = contains(D, z, tol);
        if (t == 1.0) {
          if (mem != Membership::Boundary || classify_boundary_point(D, z, tol).stratum_rank != 1)
            fail(rep.boundary_trace, "t=1 point is not in S^1 . W");
        } else if (mem != Membership::Interior) {
          fail(rep.boundary_trace, "t<1 point is not interior at t=" + std::to_string(t));
        }
        // (c) s z in V for s in [1, 1/||z||]
        const double zn = spectral_norm(D, z);
        for (int m = 0; m <= 4; ++m) {
          const double s = 1.0 + (1.0 / zn - 1.0) * m / 4.0;
          if (!in_prism(s * z)) fail(rep.radial_closure, "radial extension leaves V at t=" + std::to_string(t));
        }
        // Delta_z = { zeta z : zeta z in D } lies in (1 - 1/s) closed(D) union V
        if (t < 1.0) {
          for (int m = 0; m < 8; ++m) {
            const double rho = (m + 0.5) / 8.0 / zn;
            const Vector y = std::polar(rho, 0.3 * m) * z;
            if (!(spectral_norm(D, y) <= t_min + check || in_prism(y)))
              fail(rep.disc_absorption, "disc point escapes at t=" + std::to_string(t));
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace jordan
