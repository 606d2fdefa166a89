#pragma once

// Seeded random sampling of points, frames and tripotents. Every draw is a pure
// function of the generator state, so a fixed seed reproduces a run exactly.

#include <random>

#include "jordan/domain.hpp"

namespace jordan {

using Rng = std::mt19937_64;

inline Vector random_gaussian(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Complex random_phase(Rng& rng) { return std::polar(1.0, uniform(rng, 0.0, 2.0 * M_PI)); }

/// Haar-ish random unitary from the QR factorization of a Gaussian matrix.
inline Matrix random_unitary(int k, Rng& rng) {
  Matrix G(k, k);
  for (int j = 0; j < k; ++j) G.col(j) = random_gaussian(k, rng);
  const Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j) Q.col(j) *= std::polar(1.0, std::arg(R(j, j)));
  return Q;
}

/// Unit spectral-norm direction.
inline Vector random_direction(const Domain& D, Rng& rng) {
  for (;;) {
    const Vector x = random_gaussian(D.dim(), rng);
    const double r = spectral_norm(D, x);
    if (r > 1e-12) return x / r;
  }
}

/// Point with spectral norm uniform in [0, max_radius].
inline Vector random_interior(const Domain& D, Rng& rng, double max_radius = 0.95) {
  return uniform(rng, 0.0, max_radius) * random_direction(D, rng);
}

/// A full frame of `rank` pairwise-orthogonal primitive tripotents.
inline std::vector<Vector> random_frame(const Domain& D, Rng& rng) {
  for (;;) {
    const auto dec = spectral_decomposition(D, random_gaussian(D.dim(), rng));
    if (static_cast<int>(dec.size()) == D.rank) return dec.frame;
  }
}

/// Tripotent of the given rank (1..rank): a sum of frame elements.
inline Vector random_tripotent(const Domain& D, Rng& rng, int rank) {
  if (rank < 1 || rank > D.rank) throw std::invalid_argument("random_tripotent: rank out of range");
  auto frame = random_frame(D, rng);
  std::shuffle(frame.begin(), frame.end(), rng);
  Vector e = Vector::Zero(D.dim());
  for (int i = 0; i < rank; ++i) e += frame[i];
  return random_phase(rng) * e;
}

inline Vector random_tripotent(const Domain& D, Rng& rng) {
  return random_tripotent(D, rng, std::uniform_int_distribution<int>(1, D.rank)(rng));
}

/// Boundary point sum_{i<stratum} e_i + sum_{i>=stratum} lambda_i e_i with lambda_i in [0, max_inner).
inline Vector random_boundary_point(const Domain& D, Rng& rng, int stratum, double max_inner = 0.95) {
  if (stratum < 1 || stratum > D.rank) throw std::invalid_argument("random_boundary_point: bad stratum");
  auto frame = random_frame(D, rng);
  std::shuffle(frame.begin(), frame.end(), rng);
  Vector x = Vector::Zero(D.dim());
  for (int i = 0; i < D.rank; ++i) {
    const double lam = i < stratum ? 1.0 : uniform(rng, 0.0, max_inner);
    x += lam * random_phase(rng) * frame[i];
  }
  return x;
}

inline Vector random_shilov_point(const Domain& D, Rng& rng) {
  return random_boundary_point(D, rng, D.rank);
}

/// Random sample of the closed domain: interior points, boundary points of every stratum
/// and Shilov points.
inline Vector random_closed_point(const Domain& D, Rng& rng) {
  const double u = uniform(rng);
  if (u < 0.5) return random_interior(D, rng, 1.0);
  return random_boundary_point(D, rng, std::uniform_int_distribution<int>(1, D.rank)(rng));
}

}  // namespace jordan
