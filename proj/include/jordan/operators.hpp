#pragma once

// Operators built from the triple product: D(x,y), Q(x), the Bergman operator,
// odd powers, tripotent predicates and the trace form.

#include <cmath>

#include "jordan/triple_system.hpp"

namespace jordan {

/// A conjugate-linear map y -> M conj(y). Only the complex-linear part M is stored;
/// M's j-th column is the image of the j-th standard basis vector.
///
/// Composition of two such maps is complex-linear:
///   (A o B)(w) = A.matrix * conj(B.matrix * conj(w)) = (A.matrix * conj(B.matrix)) w.
struct ConjugateLinearOperator {
  Matrix matrix;

  Vector operator()(const Vector& y) const { return matrix * y.conjugate(); }
};

inline LinearOperator compose(const ConjugateLinearOperator& a, const ConjugateLinearOperator& b) {
  return a.matrix * b.matrix.conjugate();
}

/// Matrix of z -> {x,y,z}.
inline LinearOperator op_D(const TripleSystem& T, const Vector& x, const Vector& y) {
  check_dim(T, x, "op_D");
  check_dim(T, y, "op_D");
  const int n = T.dim();
  LinearOperator D(n, n);
  for (int j = 0; j < n; ++j) D.col(j) = detail::triple_unchecked(T, x, y, basis_vector(n, j));
  return D;
}

/// Q(x): y -> {x,y,x}/2.
inline ConjugateLinearOperator op_Q(const TripleSystem& T, const Vector& x) {
  check_dim(T, x, "op_Q");
  const int n = T.dim();
  Matrix M(n, n);
  for (int j = 0; j < n; ++j) M.col(j) = 0.5 * detail::triple_unchecked(T, x, basis_vector(n, j), x);
  return {std::move(M)};
}

/// x^(2p+1), with x^(1) = x and x^(2p+1) = Q(x) x^(2p-1).
inline Vector odd_power(const TripleSystem& T, const Vector& x, int p) {
  check_dim(T, x, "odd_power");
  if (p < 0) throw std::invalid_argument("odd_power: p must be non-negative");
  Vector out = x;
  for (int k = 0; k < p; ++k) out = 0.5 * detail::triple_unchecked(T, x, out, x);
  return out;
}

/// Tr D(x,y); linear in x, conjugate-linear in y.
inline Complex trace_form(const TripleSystem& T, const Vector& x, const Vector& y) {
  check_dim(T, x, "trace_form");
  check_dim(T, y, "trace_form");
  return y.dot(T.gram() * x);
}

inline double trace_norm(const TripleSystem& T, const Vector& x) {
  return std::sqrt(std::max(0.0, trace_form(T, x, x).real()));
}

/// Adjoint with respect to the trace form: G^{-1} A^* G.
inline LinearOperator trace_adjoint(const TripleSystem& T, const LinearOperator& A) {
  return T.gram().ldlt().solve(A.adjoint() * T.gram());
}

/// B(x,y) = id - D(x,y) + Q(x)Q(y).
inline LinearOperator bergman_operator(const TripleSystem& T, const Vector& x, const Vector& y) {
  const int n = T.dim();
  return LinearOperator::Identity(n, n) - op_D(T, x, y) + compose(op_Q(T, x), op_Q(T, y));
}

inline double operator_norm(const LinearOperator& A) {
  if (A.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(A).singularValues()(0);
}

/// ||e^(3) - e|| <= tol * max(1, ||e||) in the trace-form norm.
inline bool is_tripotent(const TripleSystem& T, const Vector& e, double tol = kDefaultTol) {
  if (tol <= 0) throw std::invalid_argument("is_tripotent: tol must be positive");
  const Vector r = odd_power(T, e, 1) - e;
  return trace_norm(T, r) <= tol * std::max(1.0, trace_norm(T, e));
}

/// Orthogonality of tripotents: D(e1,e2) = 0.
inline bool are_orthogonal(const TripleSystem& T, const Vector& e1, const Vector& e2,
                           double tol = kDefaultTol) {
  if (tol <= 0) throw std::invalid_argument("are_orthogonal: tol must be positive");
  return operator_norm(op_D(T, e1, e2)) <= tol;
}

/// Norm of {x,y,{u,v,w}} - {u,v,{x,y,w}} - {{x,y,u},v,w} + {u,{y,x,v},w}.
inline double jordan_residual(const TripleSystem& T, const Vector& x, const Vector& y,
                              const Vector& u, const Vector& v, const Vector& w) {
  const auto t = [&](const Vector& a, const Vector& b, const Vector& c) { return triple(T, a, b, c); };
  const Vector lhs = t(x, y, t(u, v, w)) - t(u, v, t(x, y, w));
  const Vector rhs = t(t(x, y, u), v, w) - t(u, t(y, x, v), w);
  return (lhs - rhs).norm();
}

}  // namespace jordan
