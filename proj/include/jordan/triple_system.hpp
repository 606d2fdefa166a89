#pragma once

// Hermitian Jordan triple systems of the classical Cartan domains.
//
// Chart conventions (all bijective, so the flattened dimension is exact):
//   TypeI(p,q)   p x q matrices, row-major, n = p*q
//   TypeII(m)    antisymmetric m x m matrices, strict upper triangle row by row, n = m(m-1)/2
//   TypeIII(m)   symmetric m x m matrices, upper triangle with diagonal row by row, n = m(m+1)/2
//   TypeIV(m)    C^m with the Lie-ball triple product, n = m
//   Product      concatenation of the factor charts

#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "jordan/types.hpp"

namespace jordan {

enum class Kind { TypeI, TypeII, TypeIII, TypeIV, Product };

class TripleSystem {
 public:
  static TripleSystem type_i(int p, int q);
  static TripleSystem type_ii(int m);
  static TripleSystem type_iii(int m);
  static TripleSystem type_iv(int m);
  static TripleSystem product(std::vector<TripleSystem> factors);

  static TripleSystem disc() { return type_i(1, 1); }
  static TripleSystem ball(int n) { return type_i(1, n); }
  static TripleSystem polydisc(int n) { return product(std::vector<TripleSystem>(n, disc())); }

  Kind kind() const { return kind_; }
  int dim() const { return dim_; }
  int p() const { return p_; }
  int q() const { return q_; }
  int m() const { return p_; }
  const std::vector<TripleSystem>& factors() const { return factors_; }
  bool irreducible() const { return kind_ != Kind::Product; }

  /// Chart offset of factor `i` of a product system.
  int factor_offset(std::size_t i) const { return offsets_.at(i); }

  /// Matrix shape of the chart for Types I-III.
  int rows() const { return p_; }
  int cols() const { return kind_ == Kind::TypeI ? q_ : p_; }
  bool is_matrix_kind() const {
    return kind_ == Kind::TypeI || kind_ == Kind::TypeII || kind_ == Kind::TypeIII;
  }

  /// Text form in the CLI grammar, e.g. "I:2,2" or "prod(I:1,1;I:1,1)".
  std::string tag() const;

  /// Gram matrix G of the trace form: Tr D(x,y) = y^* G x.
  const Matrix& gram() const { return cache_->gram; }
  /// W = L^* with G = L L^*, so that trace-form inner products become standard ones in W x.
  const Matrix& whiten() const { return cache_->whiten; }
  const Matrix& unwhiten() const { return cache_->unwhiten; }

  friend bool operator==(const TripleSystem& a, const TripleSystem& b) { return a.tag() == b.tag(); }

 private:
  struct Cache {
    Matrix gram;
    Matrix whiten;
    Matrix unwhiten;
  };

  TripleSystem() = default;
  void finalize();

  Kind kind_ = Kind::TypeI;
  int dim_ = 0;
  int p_ = 0;
  int q_ = 0;
  std::vector<TripleSystem> factors_;
  std::vector<int> offsets_;
  std::shared_ptr<const Cache> cache_;
};

// ---------------------------------------------------------------------------
// Chart maps for the matrix kinds.

inline Matrix to_matrix(const TripleSystem& T, const Vector& x) {
  if (!T.is_matrix_kind()) throw std::invalid_argument("to_matrix: not a matrix kind");
  if (x.size() != T.dim()) throw std::invalid_argument("to_matrix: dimension mismatch");
  const int r = T.rows();
  const int c = T.cols();
  Matrix X = Matrix::Zero(r, c);
  int k = 0;
  switch (T.kind()) {
    case Kind::TypeI:
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) X(i, j) = x(k++);
      break;
    case Kind::TypeII:
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
          X(i, j) = x(k);
          X(j, i) = -x(k);
          ++k;
        }
      break;
    case Kind::TypeIII:
      for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
          X(i, j) = x(k);
          X(j, i) = x(k);
          ++k;
        }
      break;
    default:
      break;
  }
  return X;
}

/// Inverse chart map. For Types II/III the matrix is first projected onto the
/// antisymmetric/symmetric part, so round-off asymmetry is discarded.
inline Vector from_matrix(const TripleSystem& T, const Matrix& X) {
  if (!T.is_matrix_kind()) throw std::invalid_argument("from_matrix: not a matrix kind");
  if (X.rows() != T.rows() || X.cols() != T.cols())
    throw std::invalid_argument("from_matrix: shape mismatch");
  Vector x(T.dim());
  const int r = T.rows();
  int k = 0;
  switch (T.kind()) {
    case Kind::TypeI:
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < T.cols(); ++j) x(k++) = X(i, j);
      break;
    case Kind::TypeII:
      for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) x(k++) = 0.5 * (X(i, j) - X(j, i));
      break;
    case Kind::TypeIII:
      for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) x(k++) = 0.5 * (X(i, j) + X(j, i));
      break;
    default:
      break;
  }
  return x;
}

// ---------------------------------------------------------------------------
// The triple product.

inline void check_dim(const TripleSystem& T, const Vector& v, const char* what) {
  if (v.size() != T.dim())
    throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                std::to_string(T.dim()) + ", got " + std::to_string(v.size()));
}

namespace detail {

inline Vector triple_unchecked(const TripleSystem& T, const Vector& x, const Vector& y,
                               const Vector& z) {
  switch (T.kind()) {
    case Kind::TypeI:
    case Kind::TypeII:
    case Kind::TypeIII: {
      const Matrix X = to_matrix(T, x);
      const Matrix Ys = to_matrix(T, y).adjoint();
      const Matrix Z = to_matrix(T, z);
      return from_matrix(T, X * Ys * Z + Z * Ys * X);
    }
    case Kind::TypeIV: {
      // <x,y> z + <z,y> x - (x^T z) conj(y), with <u,v> = sum u_i conj(v_i)
      const Complex xy = y.dot(x);
      const Complex zy = y.dot(z);
      const Complex xz = x.transpose() * z;
      return xy * z + zy * x - xz * y.conjugate();
    }
    case Kind::Product: {
      Vector out(T.dim());
      for (std::size_t f = 0; f < T.factors().size(); ++f) {
        const auto& F = T.factors()[f];
        const int o = T.factor_offset(f);
        out.segment(o, F.dim()) = triple_unchecked(F, x.segment(o, F.dim()),
                                                   y.segment(o, F.dim()), z.segment(o, F.dim()));
      }
      return out;
    }
  }
  return {};
}

}  // namespace detail

/// {x,y,z}: bilinear symmetric in x and z, conjugate-linear in y.
inline Vector triple(const TripleSystem& T, const Vector& x, const Vector& y, const Vector& z) {
  check_dim(T, x, "triple");
  check_dim(T, y, "triple");
  check_dim(T, z, "triple");
  return detail::triple_unchecked(T, x, y, z);
}

// ---------------------------------------------------------------------------
// Factories.

inline TripleSystem TripleSystem::type_i(int p, int q) {
  if (p < 1 || q < 1) throw std::invalid_argument("TypeI(p,q) needs p,q >= 1");
  TripleSystem t;
  t.kind_ = Kind::TypeI;
  t.p_ = p;
  t.q_ = q;
  t.dim_ = p * q;
  t.finalize();
  return t;
}

inline TripleSystem TripleSystem::type_ii(int m) {
  if (m < 2) throw std::invalid_argument("TypeII(m) needs m >= 2");
  TripleSystem t;
  t.kind_ = Kind::TypeII;
  t.p_ = t.q_ = m;
  t.dim_ = m * (m - 1) / 2;
  t.finalize();
  return t;
}

inline TripleSystem TripleSystem::type_iii(int m) {
  if (m < 1) throw std::invalid_argument("TypeIII(m) needs m >= 1");
  TripleSystem t;
  t.kind_ = Kind::TypeIII;
  t.p_ = t.q_ = m;
  t.dim_ = m * (m + 1) / 2;
  t.finalize();
  return t;
}

inline TripleSystem TripleSystem::type_iv(int m) {
  if (m < 2) throw std::invalid_argument("TypeIV(m) needs m >= 2");
  TripleSystem t;
  t.kind_ = Kind::TypeIV;
  t.p_ = t.q_ = m;
  t.dim_ = m;
  t.finalize();
  return t;
}

inline TripleSystem TripleSystem::product(std::vector<TripleSystem> factors) {
  if (factors.empty()) throw std::invalid_argument("Product needs at least one factor");
  TripleSystem t;
  t.kind_ = Kind::Product;
  int offset = 0;
  for (const auto& f : factors) {
    t.offsets_.push_back(offset);
    offset += f.dim();
  }
  t.dim_ = offset;
  t.factors_ = std::move(factors);
  t.finalize();
  return t;
}

inline std::string TripleSystem::tag() const {
  switch (kind_) {
    case Kind::TypeI:
      return "I:" + std::to_string(p_) + "," + std::to_string(q_);
    case Kind::TypeII:
      return "II:" + std::to_string(p_);
    case Kind::TypeIII:
      return "III:" + std::to_string(p_);
    case Kind::TypeIV:
      return "IV:" + std::to_string(p_);
    case Kind::Product: {
      std::string s = "prod(";
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += ';';
        s += factors_[i].tag();
      }
      return s + ")";
    }
  }
  return {};
}

inline void TripleSystem::finalize() {
  // G(j,i) = Tr D(e_i, e_j). Products are block diagonal: the plain sum of factor forms.
  auto cache = std::make_shared<Cache>();
  const int n = dim_;
  cache->gram = Matrix::Zero(n, n);
  if (kind_ == Kind::Product) {
    for (std::size_t f = 0; f < factors_.size(); ++f)
      cache->gram.block(offsets_[f], offsets_[f], factors_[f].dim(), factors_[f].dim()) =
          factors_[f].gram();
  } else {
    for (int i = 0; i < n; ++i) {
      const Vector ei = basis_vector(n, i);
      for (int j = 0; j < n; ++j) {
        const Vector ej = basis_vector(n, j);
        Complex tr = 0.0;
        for (int k = 0; k < n; ++k) tr += detail::triple_unchecked(*this, ei, ej, basis_vector(n, k))(k);
        cache->gram(j, i) = tr;
      }
    }
  }
  cache->gram = 0.5 * (cache->gram + cache->gram.adjoint()).eval();
  Eigen::LLT<Matrix> llt(cache->gram);
  if (llt.info() != Eigen::Success)
    throw NumericalError("trace form is not positive definite for " + tag());
  cache->whiten = llt.matrixU();
  cache->unwhiten = cache->whiten.inverse();
  cache_ = std::move(cache);
}

}  // namespace jordan
