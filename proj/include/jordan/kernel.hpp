#pragma once

// Closed-form Bergman kernels and the recovery of the triple product from the fourth
// mixed derivatives of log K(z,z) at the origin:
//   h({e_i,e_j,e_k}, e_l) = d^4 log K / dz_i dzbar_j dz_k dzbar_l |_{z=0},
// with h the Bergman metric at 0 (second mixed derivatives).

#include <array>
#include <cmath>
#include <vector>

#include "jordan/triple_system.hpp"

namespace jordan {

struct KernelSpec {
  enum class Family { Ball, Polydisc, TypeI };

  Family family = Family::Ball;
  int n = 1;  // Ball / Polydisc dimension
  int p = 1;  // TypeI shape
  int q = 1;
  /// log of the normalization constant; any value leaves every derivative unchanged.
  double log_normalization = 0.0;

  static KernelSpec ball(int n) { return {Family::Ball, n, 1, n, 0.0}; }
  static KernelSpec polydisc(int n) { return {Family::Polydisc, n, 1, 1, 0.0}; }
  static KernelSpec type_i(int p, int q) { return {Family::TypeI, p * q, p, q, 0.0}; }

  int dim() const { return family == Family::TypeI ? p * q : n; }

  TripleSystem system() const {
    switch (family) {
      case Family::Ball:
        return TripleSystem::ball(n);
      case Family::Polydisc:
        return TripleSystem::polydisc(n);
      case Family::TypeI:
        return TripleSystem::type_i(p, q);
    }
    return TripleSystem::disc();
  }
};

namespace detail {

/// The holomorphic-in-z, antiholomorphic-in-w quantity whose log gives log K up to a factor:
///   Ball: 1 - <z,w>;  Polydisc: prod (1 - z_i conj(w_i));  TypeI: det(I - Z W^*)
inline Complex kernel_base(const KernelSpec& K, const Vector& z, const Vector& w) {
  switch (K.family) {
    case KernelSpec::Family::Ball:
      return 1.0 - w.dot(z);
    case KernelSpec::Family::Polydisc: {
      Complex prod = 1.0;
      for (int i = 0; i < K.n; ++i) prod *= 1.0 - z(i) * std::conj(w(i));
      return prod;
    }
    case KernelSpec::Family::TypeI: {
      const Matrix Z = Eigen::Map<const Matrix>(z.data(), K.q, K.p).transpose();
      const Matrix W = Eigen::Map<const Matrix>(w.data(), K.q, K.p).transpose();
      return (Matrix::Identity(K.p, K.p) - Z * W.adjoint()).determinant();
    }
  }
  return 1.0;
}

inline double kernel_exponent(const KernelSpec& K) {
  switch (K.family) {
    case KernelSpec::Family::Ball:
      return -(K.n + 1.0);
    case KernelSpec::Family::Polydisc:
      return -2.0;
    case KernelSpec::Family::TypeI:
      return -(K.p + K.q + 0.0);
  }
  return 0.0;
}

}  // namespace detail

/// log K(z,w). The logarithm is continued along t -> (t z, t w), t in [0,1], from the
/// value at the origin, so the branch is the one connected to log K(0,0).
inline Complex kernel_log(const KernelSpec& K, const Vector& z, const Vector& w) {
  if (z.size() != K.dim() || w.size() != K.dim()) throw std::invalid_argument("kernel_log: dimension mismatch");
  constexpr int kSteps = 32;
  Complex prev = 1.0;
  Complex acc = 0.0;
  for (int s = 1; s <= kSteps; ++s) {
    const double t = static_cast<double>(s) / kSteps;
    const Complex cur = detail::kernel_base(K, t * z, t * w);
    if (std::abs(cur) == 0.0) throw NumericalError("kernel_log: kernel singular along the evaluation path");
    const Complex inc = std::log(cur / prev);
    if (std::abs(inc.imag()) > M_PI / 2)
      throw NumericalError("kernel_log: argument jumps along the path; refine or leave the domain");
    acc += inc;
    prev = cur;
  }
  return K.log_normalization + detail::kernel_exponent(K) * acc;
}

/// log K(z,z), real for interior z.
inline double kernel_log_diagonal(const KernelSpec& K, const Vector& z) {
  const Complex b = detail::kernel_base(K, z, z);
  return K.log_normalization + detail::kernel_exponent(K) * std::log(b.real());
}

struct KernelTripleTensor {
  int n = 0;
  double step = 0.0;
  Matrix metric;  // H(m,l) = d^2 log K / dz_m dzbar_l at 0
  /// tensor[((i*n + j)*n + k)*n + m] = m-th coordinate of {e_i, e_j, e_k}
  std::vector<Complex> tensor;
  double noise_estimate = 0.0;
  bool noise_dominated = false;

  Complex at(int i, int j, int k, int m) const { return tensor[((i * n + j) * n + k) * n + m]; }
};

namespace detail {

struct WirtingerOp {
  int index;
  bool conjugate;  // d/dzbar when true
};

/// Product of central-difference Wirtinger operators applied to f at 0:
///   d/dz    ~ [f(+h) - f(-h) - i f(+ih) + i f(-ih)] / (4h)
///   d/dzbar ~ [f(+h) - f(-h) + i f(+ih) - i f(-ih)] / (4h)
template <class F>
Complex wirtinger_stencil(const F& f, int n, const std::vector<WirtingerOp>& ops, double h) {
  const std::array<Complex, 4> shifts{Complex(h, 0), Complex(-h, 0), Complex(0, h), Complex(0, -h)};
  const int k = static_cast<int>(ops.size());
  int total = 1;
  for (int i = 0; i < k; ++i) total *= 4;
  Complex acc = 0.0;
  Vector z(n);
  for (int code = 0; code < total; ++code) {
    z.setZero();
    Complex coeff = 1.0;
    int c = code;
    for (int i = 0; i < k; ++i) {
      const int s = c % 4;
      c /= 4;
      z(ops[i].index) += shifts[s];
      const double sign = ops[i].conjugate ? 1.0 : -1.0;
      switch (s) {
        case 0: coeff *= 1.0; break;
        case 1: coeff *= -1.0; break;
        case 2: coeff *= Complex(0, sign); break;
        case 3: coeff *= Complex(0, -sign); break;
      }
    }
    acc += coeff * f(z);
  }
  return acc / std::pow(4.0 * h, k);
}

}  // namespace detail

/// Recovers {e_i,e_j,e_k} from finite differences of log K at 0, Richardson-extrapolated
/// over steps h and h/2. The step must lie in [1e-3, 1e-1].
inline KernelTripleTensor triple_from_kernel(const KernelSpec& K, double step, bool richardson = true) {
  if (!(step >= 1e-3 && step <= 1e-1)) throw std::invalid_argument("triple_from_kernel: step outside [1e-3, 1e-1]");
  const int n = K.dim();
  const auto f = [&](const Vector& z) { return kernel_log_diagonal(K, z); };
  const auto estimate = [&](const std::vector<detail::WirtingerOp>& ops) {
    const Complex coarse = detail::wirtinger_stencil(f, n, ops, step);
    if (!richardson) return coarse;
    const Complex fine = detail::wirtinger_stencil(f, n, ops, step / 2);
    return (4.0 * fine - coarse) / 3.0;
  };

  KernelTripleTensor out;
  out.n = n;
  out.step = step;
  out.metric = Matrix(n, n);
  for (int m = 0; m < n; ++m)
    for (int l = 0; l < n; ++l) out.metric(m, l) = estimate({{m, false}, {l, true}});

  // A(ijk, l) = sum_m T(ijk, m) H(m, l)  =>  T = A H^{-1}
  Matrix A(n * n * n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          A((i * n + j) * n + k, l) = estimate({{i, false}, {j, true}, {k, false}, {l, true}});
  const Matrix T = out.metric.transpose().partialPivLu().solve(A.transpose()).transpose();
  out.tensor.resize(static_cast<std::size_t>(T.size()));
  for (int r = 0; r < n * n * n; ++r)
    for (int m = 0; m < n; ++m) out.tensor[r * n + m] = T(r, m);

  // Absolute rounding of log K near 0 is about eps; the fourth-order stencil divides by h^4.
  const double h = richardson ? step / 2 : step;
  out.noise_estimate = (richardson ? 5.0 / 3.0 : 1.0) * 2.2e-16 * std::max(1.0, std::abs(K.log_normalization)) *
                       std::abs(detail::kernel_exponent(K)) /
                       std::pow(h, 4);
  out.noise_dominated = out.noise_estimate > 1e-5;
  return out;
}

/// The same tensor evaluated from a closed-form triple product.
inline std::vector<Complex> triple_tensor(const TripleSystem& T) {
  const int n = T.dim();
  std::vector<Complex> out(static_cast<std::size_t>(n) * n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vector t = triple(T, basis_vector(n, i), basis_vector(n, j), basis_vector(n, k));
        for (int m = 0; m < n; ++m) out[((i * n + j) * n + k) * n + m] = t(m);
      }
  return out;
}

inline double max_entry_error(const KernelTripleTensor& fd, const std::vector<Complex>& exact) {
  double e = 0.0;
  for (std::size_t i = 0; i < exact.size(); ++i) e = std::max(e, std::abs(fd.tensor[i] - exact[i]));
  return e;
}

}  // namespace jordan
