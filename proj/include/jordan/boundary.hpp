#pragma once

// Boundary geometry: strata x = e + v, Shilov points, holomorphic arc components,
// peak functions, and the det B scan on circles {zeta w : |zeta| = 1}.

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "jordan/domain.hpp"
#include "jordan/sampling.hpp"

namespace jordan {

struct BoundaryClassification {
  Vector e;               // tripotent part
  Vector v;               // V_0(e) part
  int stratum_rank = 0;   // rank of e
  double interior_norm = 0.0;  // spectral norm of v, < 1
};

/// x = e + v with e the sum of frame tripotents at coefficient 1 and v the rest.
/// Coefficients in the shell (1 - tol, 1 - tol/10) are refused as degenerate.
inline BoundaryClassification classify_boundary_point(const Domain& D, const Vector& x,
                                                      double tol = kDefaultTol) {
  if (contains(D, x, tol) != Membership::Boundary)
    throw std::invalid_argument("classify_boundary_point: point is not on the boundary");
  // merge only at the dead-zone scale, so that 1 and 1 - 1e-8 are not averaged into one coefficient
  const auto dec = spectral_decomposition(D, x, tol, tol / 10.0);
  BoundaryClassification out;
  out.e = Vector::Zero(D.dim());
  out.v = Vector::Zero(D.dim());
  for (std::size_t i = 0; i < dec.size(); ++i) {
    const double lam = dec.lambdas[i];
    if (lam >= 1.0 - tol / 10.0) {
      out.e += dec.frame[i];
    } else if (lam < 1.0 - tol) {
      out.v += lam * dec.frame[i];
    } else {
      throw DegeneracyError("classify_boundary_point: coefficient " + std::to_string(lam) +
                            " lies in the dead zone below 1");
    }
  }
  if (out.e.isZero(0.0)) throw DegeneracyError("classify_boundary_point: no unit coefficient");
  const Vector dv = op_D(D.system, out.e, out.e) * out.v;
  if (trace_norm(D.system, dv) > 100.0 * std::max(tol, 1e-9) * std::max(1.0, trace_norm(D.system, out.v)))
    throw NumericalError("classify_boundary_point: v is not in V_0(e)");
  out.stratum_rank = tripotent_rank(D, out.e, tol);
  out.interior_norm = spectral_norm(D, out.v);
  return out;
}

struct ShilovEvidence {
  bool shilov = false;
  BoundaryClassification classification;
  double radius = 0.0;      // trace-form norm of x
  double max_radius = 0.0;  // trace-form norm of any maximal tripotent
  bool radius_consistent = false;  // shilov <=> radius == max_radius
};

/// Distances use the trace-form norm: it is invariant under the isotropy group,
/// which the raw Type II/III chart coordinates are not.
inline double shilov_radius(const Domain& D) {
  return trace_norm(D.system, canonical_maximal_tripotent(D.system));
}

inline ShilovEvidence is_shilov(const Domain& D, const Vector& x, double tol = kDefaultTol) {
  ShilovEvidence ev;
  ev.classification = classify_boundary_point(D, x, tol);
  ev.shilov = ev.classification.v.isZero(0.0) && is_maximal(D, ev.classification.e, tol);
  ev.radius = trace_norm(D.system, x);
  ev.max_radius = shilov_radius(D);
  const bool at_max = std::abs(ev.radius - ev.max_radius) <= 1e-6 * ev.max_radius;
  ev.radius_consistent = ev.shilov == at_max;
  return ev;
}

/// Basis of V_0(e); the arc component through x is {e + w : w in V_0(e), ||w|| < 1}.
inline std::vector<Vector> arc_component_basis(const Domain& D, const Vector& x, double tol = kDefaultTol) {
  const auto cls = classify_boundary_point(D, x, tol);
  return pierce(D, cls.e, tol).bases[0];
}

struct DiscReport {
  bool vacuous = false;  // x is Shilov: no discs through it
  int checked = 0;
  int failures = 0;
  std::vector<Vector> violations;
  bool passed() const { return failures == 0; }
};

/// Walks circles zeta*w around v inside V_0(e) and confirms e + v + zeta*w stays on the boundary.
inline DiscReport disc_in_boundary_check(const Domain& D, const Vector& x, int samples,
                                         double circle_radius = 0.0, double tol = kDefaultTol) {
  const auto cls = classify_boundary_point(D, x, tol);
  const auto basis = pierce(D, cls.e, tol).bases[0];
  DiscReport rep;
  if (basis.empty()) {
    rep.vacuous = true;
    return rep;
  }
  for (const auto& w : basis) {
    const double max_rho = 0.5 * (1.0 - cls.interior_norm) / spectral_norm(D, w);
    const double rho = circle_radius > 0 ? std::min(circle_radius, max_rho) : max_rho;
    for (int k = 0; k < samples; ++k) {
      const Complex zeta = std::polar(rho, 2.0 * M_PI * k / samples);
      const Vector y = cls.e + cls.v + zeta * w;
      ++rep.checked;
      if (contains(D, y, std::max(tol, 1e-9) * 10.0) != Membership::Boundary) {
        ++rep.failures;
        rep.violations.push_back(y);
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Peak functions.

struct PeakFunction {
  Vector p;
  Vector functional;  // h(z) = (1 + functional^* z) / 2
};

inline Complex peak_eval(const PeakFunction& pf, const Vector& z) { return 0.5 * (1.0 + pf.functional.dot(z)); }

struct PeakReport {
  double max_abs = 0.0;  // max |h| over samples outside the exclusion ball
  Vector argmax;
  int samples = 0;
  bool passed = false;
};

/// Samples the closed domain (interior, every boundary stratum, Shilov points) and
/// records max |h| outside a Euclidean ball of radius `exclusion` around p.
inline PeakReport verify_peak(const Domain& D, const PeakFunction& pf, int samples, Rng& rng,
                              double exclusion = 1e-2, double margin = 1e-6) {
  PeakReport rep;
  rep.argmax = pf.p;
  while (rep.samples < samples) {
    const Vector z = random_closed_point(D, rng);
    if ((z - pf.p).norm() < exclusion) continue;
    ++rep.samples;
    const double a = std::abs(peak_eval(pf, z));
    if (a > rep.max_abs) {
      rep.max_abs = a;
      rep.argmax = z;
    }
  }
  rep.passed = rep.max_abs <= 1.0 - margin;
  return rep;
}

/// h(z) = (1 + <z,p>*)/2 with the trace form normalized so that <p,p>* = 1.
/// The construction is accepted only after a numerical peak check.
inline PeakFunction peak_function(const Domain& D, const Vector& p, int check_samples = 2000,
                                  std::uint64_t seed = 7, double tol = kDefaultTol) {
  if (!is_shilov(D, p, tol).shilov) throw std::invalid_argument("peak_function: p is not a Shilov point");
  PeakFunction pf{p, D.system.gram() * p / trace_form(D.system, p, p).real()};
  Rng rng(seed);
  const auto rep = verify_peak(D, pf, check_samples, rng);
  if (!rep.passed) {
    std::ostringstream os;
    os << "peak_function: |h| = " << rep.max_abs << " at sample " << rep.argmax.transpose();
    throw NumericalError(os.str());
  }
  return pf;
}

// ---------------------------------------------------------------------------
// det B on circles.

struct ScanRow {
  double theta;
  double abs_det;
};

struct ScanResult {
  double min_abs = 0.0;
  double argmin_theta = 0.0;
  std::vector<ScanRow> rows;
};

inline double abs_det_bergman(const Domain& D, const Vector& z, const Vector& p) {
  return std::abs(bergman_operator(D.system, z, p).determinant());
}

/// |det B(e^{i theta} w, p)| on theta_j = 2 pi j / grid_size. Ties go to the smallest theta.
inline ScanResult scan_bergman_det(const Domain& D, const Vector& w, const Vector& p, int grid_size) {
  check_dim(D.system, w, "scan_bergman_det");
  check_dim(D.system, p, "scan_bergman_det");
  if (grid_size < 1) throw std::invalid_argument("scan_bergman_det: grid_size must be positive");
  ScanResult res;
  res.rows.reserve(grid_size);
  res.min_abs = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid_size; ++j) {
    const double theta = 2.0 * M_PI * j / grid_size;
    const double a = abs_det_bergman(D, std::polar(1.0, theta) * w, p);
    res.rows.push_back({theta, a});
    if (a < res.min_abs) {
      res.min_abs = a;
      res.argmin_theta = theta;
    }
  }
  return res;
}

/// Grid scan followed by golden-section refinement of the minimum inside the bracketing cells.
inline double refined_circle_min(const Domain& D, const Vector& w, const Vector& p, int grid_size = 256) {
  const auto scan = scan_bergman_det(D, w, p, grid_size);
  const double h = 2.0 * M_PI / grid_size;
  const auto f = [&](double t) { return abs_det_bergman(D, std::polar(1.0, t) * w, p); };
  double a = scan.argmin_theta - h;
  double b = scan.argmin_theta + h;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 60; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return std::min({scan.min_abs, fc, fd});
}

struct GoodCircle {
  bool found = false;
  Vector w;
  double min_abs = 0.0;
  int attempts = 0;
};

/// Searches the stratum M_{D,1} near z0 for w whose circle keeps |det B(., p)| >= floor.
/// z0 is tried first. Later candidates perturb the best point so far and renormalize by the
/// top spectral value, which keeps e of rank 1 and resamples v; every other candidate also
/// shrinks v. Candidates must stay in stratum 1 and within search_radius * |z0| of z0, and
/// replace the best point when their circle minimum is larger.
inline GoodCircle find_good_circle(const Domain& D, const Vector& z0, const Vector& p, double search_radius,
                                   double floor, int budget = 500, std::uint64_t seed = 11,
                                   double tol = kDefaultTol) {
  if (floor <= 0) throw std::invalid_argument("find_good_circle: floor must be positive");
  if (classify_boundary_point(D, z0, tol).stratum_rank != 1)
    throw std::invalid_argument("find_good_circle: z0 is not in the stratum M_{D,1}");
  GoodCircle out;
  Rng rng(seed);
  const double scale = z0.norm();
  Vector best = z0;
  double best_min = -1.0;
  Vector cand = z0;
  while (out.attempts < budget) {
    ++out.attempts;
    const double m = refined_circle_min(D, cand, p);
    if (m > best_min) {
      best = cand;
      best_min = m;
    }
    if (m >= floor) {
      out.found = true;
      out.w = cand;
      out.min_abs = m;
      return out;
    }
    for (int tries = 0;; ++tries) {
      if (tries > 10000) return out;
      const Vector g = random_gaussian(D.dim(), rng);
      const double step = uniform(rng, 0.0, search_radius) * scale;
      const Vector y = best + step * g / g.norm();
      const auto vals = spectral_values(D.system, y);
      if (vals.empty() || vals.front() <= 0) continue;
      if (vals.size() > 1 && vals[1] >= vals[0] * (1.0 - 1e-6)) continue;
      Vector c = y / vals.front();
      try {
        if (tries % 2) {
          const auto cls = classify_boundary_point(D, c, tol);
          c = cls.e + uniform(rng) * cls.v;
        }
        if ((c - z0).norm() > search_radius * scale) continue;
        if (classify_boundary_point(D, c, tol).stratum_rank != 1) continue;
      } catch (const NumericalError&) {
        continue;
      }
      cand = c;
      break;
    }
  }
  out.w = best;
  out.min_abs = best_min;
  return out;
}

}  // namespace jordan
