#pragma once

// Transvections g_a(z) = a + B(a,a)^{1/2} z^{-a} and symbolic chains of maps. The quasi-inverse
// z^{-a} = B(z,-a)^{-1} (z + Q(z) a) equals (id + D(z,a)/2)^{-1} z; the factor 1/2 comes from
// the normalization {e,e,e} = 2e, under which the disc map is (z + a) / (1 + conj(a) z).

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "jordan/domain.hpp"

namespace jordan {

/// Condition-number ceiling for B(z,-a)^{-1}.
inline constexpr double kResolventCondLimit = 1e12;

class Transvection {
 public:
  /// Precondition: spectral_norm(a) < 1.
  Transvection(const Domain& D, Vector a) : system_(D.system), a_(std::move(a)) {
    check_dim(system_, a_, "make_transvection");
    if (contains(D, a_, 0.0) != Membership::Interior)
      throw std::invalid_argument("make_transvection: a must lie in the open domain");
    // B(a,a) is self-adjoint for the trace form: take the square root in whitened coordinates.
    const Matrix& W = system_.whiten();
    const Matrix& Wi = system_.unwhiten();
    Matrix H = W * bergman_operator(system_, a_, a_) * Wi;
    H = 0.5 * (H + H.adjoint()).eval();
    const Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    Eigen::VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() < -1e-10)
      throw NumericalError("make_transvection: B(a,a) has eigenvalue " + std::to_string(ev.minCoeff()));
    ev = ev.cwiseMax(0.0).cwiseSqrt();
    sqrt_b_ = Wi * es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint() * W;
  }

  const Vector& a() const { return a_; }
  const LinearOperator& sqrt_b() const { return sqrt_b_; }
  const TripleSystem& system() const { return system_; }

  Vector operator()(const Vector& z) const {
    check_dim(system_, z, "transvection apply");
    const Eigen::PartialPivLU<Matrix> lu(bergman_operator(system_, z, -a_));
    guard(lu, "B(z,-a)");
    return a_ + sqrt_b_ * lu.solve(z + op_Q(system_, z)(a_));
  }

  /// g_a'(z) = B(a,a)^{1/2} B(z,-a)^{-1}
  LinearOperator derivative(const Vector& z) const {
    check_dim(system_, z, "transvection derivative");
    const Eigen::PartialPivLU<Matrix> lu(bergman_operator(system_, z, -a_));
    guard(lu, "B(z,-a)");
    return sqrt_b_ * lu.inverse();
  }

  /// g_a^{-1} = g_{-a}
  Transvection inverse() const { return Transvection(system_, -a_, sqrt_b_); }

 private:
  Transvection(TripleSystem T, Vector a, LinearOperator sqrt_b)
      : system_(std::move(T)), a_(std::move(a)), sqrt_b_(std::move(sqrt_b)) {}

  static void guard(const Eigen::PartialPivLU<Matrix>& lu, const char* what) {
    const double rc = lu.rcond();
    if (!(rc > 1.0 / kResolventCondLimit))
      throw OutsideExtensionDomain(std::string(what) + " is singular or ill-conditioned");
  }

  TripleSystem system_;
  Vector a_;
  LinearOperator sqrt_b_;
};

inline Transvection make_transvection(const Domain& D, const Vector& a) { return Transvection(D, a); }

inline Transvection inverse(const Transvection& g) { return g.inverse(); }

/// Ordered list of maps; steps apply in list order, so steps = [f, g] evaluates g(f(z)).
class MapChain {
 public:
  struct Forward {
    Transvection g;
  };
  /// g_a^{-1}, kept symbolically so reports can name the transvection it inverts.
  struct Inverse {
    Transvection g;
    Transvection inv;
  };
  struct Linear {
    LinearOperator matrix;
  };
  /// Arbitrary holomorphic step with its derivative (used for non-automorphic test maps).
  struct Custom {
    std::string name;
    std::function<Vector(const Vector&)> eval;
    std::function<LinearOperator(const Vector&)> derivative;
  };
  using Step = std::variant<Forward, Inverse, Linear, Custom>;

  MapChain() = default;

  static MapChain identity() { return {}; }
  static MapChain of(const Transvection& g) { return MapChain().then(g); }
  static MapChain linear(LinearOperator L) { return MapChain().then_linear(std::move(L)); }

  MapChain& then(const Transvection& g) {
    steps_.push_back(Forward{g});
    return *this;
  }
  MapChain& then_inverse(const Transvection& g) {
    steps_.push_back(Inverse{g, g.inverse()});
    return *this;
  }
  MapChain& then_linear(LinearOperator L) {
    steps_.push_back(Linear{std::move(L)});
    return *this;
  }
  MapChain& then_custom(Custom c) {
    steps_.push_back(std::move(c));
    return *this;
  }
  /// Append all steps of `next`: the result evaluates next(this(z)).
  MapChain& then_chain(const MapChain& next) {
    steps_.insert(steps_.end(), next.steps_.begin(), next.steps_.end());
    return *this;
  }

  const std::vector<Step>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }

  Vector operator()(const Vector& z) const {
    Vector w = z;
    for (const auto& s : steps_) w = apply_step(s, w);
    return w;
  }

  /// Chain rule: product of step derivatives at the intermediate points.
  LinearOperator derivative(const Vector& z) const {
    const int n = static_cast<int>(z.size());
    LinearOperator J = LinearOperator::Identity(n, n);
    Vector w = z;
    for (const auto& s : steps_) {
      J = step_derivative(s, w) * J;
      w = apply_step(s, w);
    }
    return J;
  }

  static Vector apply_step(const Step& s, const Vector& z) {
    return std::visit(
        [&](const auto& st) -> Vector {
          using S = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<S, Forward>) return st.g(z);
          else if constexpr (std::is_same_v<S, Inverse>) return st.inv(z);
          else if constexpr (std::is_same_v<S, Linear>) return st.matrix * z;
          else return st.eval(z);
        },
        s);
  }

  static LinearOperator step_derivative(const Step& s, const Vector& z) {
    return std::visit(
        [&](const auto& st) -> LinearOperator {
          using S = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<S, Forward>) return st.g.derivative(z);
          else if constexpr (std::is_same_v<S, Inverse>) return st.inv.derivative(z);
          else if constexpr (std::is_same_v<S, Linear>) return st.matrix;
          else return st.derivative(z);
        },
        s);
  }

 private:
  std::vector<Step> steps_;
};

/// g_b o g_{-a}: sends a to b.
inline MapChain map_a_to_b(const Domain& D, const Vector& a, const Vector& b) {
  MapChain c;
  c.then_inverse(make_transvection(D, a)).then(make_transvection(D, b));
  return c;
}

/// z -> c z
inline MapChain scale_map(int n, Complex c) {
  return MapChain::linear(c * LinearOperator::Identity(n, n));
}

/// Coordinatewise z_i -> z_i^2; a self-map of the polydisc.
inline MapChain::Custom coordinate_square(int n) {
  return {"square",
          [](const Vector& z) { return Vector(z.array().square()); },
          [n](const Vector& z) {
            LinearOperator J = LinearOperator::Zero(n, n);
            J.diagonal() = 2.0 * z;
            return J;
          }};
}

}  // namespace jordan
