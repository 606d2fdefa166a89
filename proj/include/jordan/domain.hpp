#pragma once

// Classical domains as spectral-norm unit balls: spectral decomposition, spectral
// norm, membership, Pierce decomposition and tripotent rank.

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "jordan/operators.hpp"

namespace jordan {

struct Domain {
  TripleSystem system;
  int rank = 0;

  int dim() const { return system.dim(); }
  std::string tag() const { return system.tag(); }
};

inline int system_rank(const TripleSystem& T) {
  switch (T.kind()) {
    case Kind::TypeI:
      return std::min(T.p(), T.q());
    case Kind::TypeII:
      return T.m() / 2;
    case Kind::TypeIII:
      return T.m();
    case Kind::TypeIV:
      return 2;
    case Kind::Product: {
      int r = 0;
      for (const auto& f : T.factors()) r += system_rank(f);
      return r;
    }
  }
  return 0;
}

inline Domain make_domain(TripleSystem T) {
  const int r = system_rank(T);
  return Domain{std::move(T), r};
}

struct SpectralDecomposition {
  std::vector<double> lambdas;  // strictly decreasing, positive
  std::vector<Vector> frame;    // pairwise orthogonal tripotents

  std::size_t size() const { return lambdas.size(); }
  bool empty() const { return lambdas.empty(); }

  Vector reconstruct(int n) const {
    Vector x = Vector::Zero(n);
    for (std::size_t i = 0; i < lambdas.size(); ++i) x += lambdas[i] * frame[i];
    return x;
  }
};

namespace detail {

inline double vector_scale(const Vector& x) { return x.size() ? x.cwiseAbs().maxCoeff() : 0.0; }

/// Closed-form spectral values of the Type IV product (unmerged, descending).
inline std::array<double, 2> type_iv_values(const Vector& x) {
  const double n2 = x.squaredNorm();
  const double b = std::abs(Complex(x.transpose() * x));
  // |x|^4 - |x^T x|^2 = 4 |u ^ v|^2 for x = u + iv; the wedge form avoids cancellation near lambda1 = lambda2
  const Eigen::VectorXd u = x.real(), v = x.imag();
  double wedge = 0.0;
  for (int i = 0; i < u.size(); ++i)
    for (int j = i + 1; j < u.size(); ++j) {
      const double w = u(i) * v(j) - u(j) * v(i);
      wedge += w * w;
    }
  const double disc = 2.0 * std::sqrt(wedge);
  const double l1 = std::sqrt(0.5 * (n2 + disc));
  const double l2 = l1 > 0 ? 0.5 * b / l1 : 0.0;
  return {l1, l2};
}

/// Spectral values of a matrix-kind chart vector, one per rank slot.
inline std::vector<double> matrix_values(const TripleSystem& T, const Vector& x) {
  const Eigen::JacobiSVD<Matrix> svd(to_matrix(T, x));
  const auto& s = svd.singularValues();
  std::vector<double> out;
  if (T.kind() == Kind::TypeII) {
    for (int i = 0; i + 1 < s.size(); i += 2) out.push_back(0.5 * (s(i) + s(i + 1)));
  } else {
    for (int i = 0; i < s.size(); ++i) out.push_back(s(i));
  }
  return out;
}

struct Piece {
  double lambda;
  Vector e;
};

/// Sort descending and merge pieces whose coefficients agree to kMergeGap (relative to the top).
inline SpectralDecomposition merge_pieces(std::vector<Piece> pieces, double gap = kMergeGap) {
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.lambda > b.lambda; });
  SpectralDecomposition out;
  if (pieces.empty()) return out;
  const double top = pieces.front().lambda;
  std::size_t i = 0;
  while (i < pieces.size()) {
    std::size_t j = i + 1;
    double sum = pieces[i].lambda;
    Vector e = pieces[i].e;
    while (j < pieces.size() && pieces[j - 1].lambda - pieces[j].lambda <= gap * top) {
      sum += pieces[j].lambda;
      e += pieces[j].e;
      ++j;
    }
    out.lambdas.push_back(sum / static_cast<double>(j - i));
    out.frame.push_back(std::move(e));
    i = j;
  }
  return out;
}

inline std::vector<Piece> pieces_for(const TripleSystem& T, const Vector& x, double tol, double gap);

inline std::vector<Piece> matrix_pieces(const TripleSystem& T, const Vector& x, double tol, double gap) {
  const Matrix X = to_matrix(T, x);
  const Eigen::JacobiSVD<Matrix> svd(X, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  std::vector<Piece> out;
  if (s.size() == 0 || s(0) == 0.0) return out;
  const double top = s(0);
  // Cluster singular values here so that each piece is a canonical object
  // U_c V_c^* (independent of the basis chosen inside a degenerate singular subspace).
  int i = 0;
  while (i < s.size() && s(i) > tol * top) {
    int j = i + 1;
    while (j < s.size() && s(j) > tol * top && s(j - 1) - s(j) <= gap * top) ++j;
    const Matrix E = svd.matrixU().middleCols(i, j - i) * svd.matrixV().middleCols(i, j - i).adjoint();
    out.push_back({s.segment(i, j - i).mean(), from_matrix(T, E)});
    i = j;
  }
  return out;
}

inline std::vector<Piece> type_iv_pieces(const TripleSystem& T, const Vector& x, double tol, double gap) {
  const auto [l1, l2] = type_iv_values(x);
  if (l1 == 0.0) return {};
  if (l2 <= tol * l1) return {{l1, x / l1}};
  if (l1 - l2 <= gap * l1) {
    const double l = 0.5 * (l1 + l2);
    return {{l, x / l}};
  }
  const Vector x3 = odd_power(T, x, 1);
  const double d = l1 * l1 - l2 * l2;
  return {{l1, (x3 - l2 * l2 * x) / (l1 * d)}, {l2, (l1 * l1 * x - x3) / (l2 * d)}};
}

inline std::vector<Piece> pieces_for(const TripleSystem& T, const Vector& x, double tol, double gap) {
  switch (T.kind()) {
    case Kind::TypeI:
    case Kind::TypeII:
    case Kind::TypeIII:
      return matrix_pieces(T, x, tol, gap);
    case Kind::TypeIV:
      return type_iv_pieces(T, x, tol, gap);
    case Kind::Product: {
      std::vector<Piece> out;
      const double top = vector_scale(x);
      for (std::size_t f = 0; f < T.factors().size(); ++f) {
        const auto& F = T.factors()[f];
        const int o = T.factor_offset(f);
        const Vector xf = x.segment(o, F.dim());
        if (vector_scale(xf) <= tol * top) continue;
        for (auto& piece : pieces_for(F, xf, tol, gap)) {
          Vector e = Vector::Zero(T.dim());
          e.segment(o, F.dim()) = piece.e;
          out.push_back({piece.lambda, std::move(e)});
        }
      }
      // Drop factor contributions that are negligible against the global top value.
      double best = 0;
      for (const auto& p : out) best = std::max(best, p.lambda);
      std::erase_if(out, [&](const Piece& p) { return p.lambda <= tol * best; });
      return out;
    }
  }
  return {};
}

/// Frame must consist of pairwise-orthogonal tripotents; otherwise a merge went wrong.
inline void verify_frame(const TripleSystem& T, const SpectralDecomposition& dec, double tol) {
  const double check = std::max(tol, 1e-8) * 10.0;
  for (std::size_t i = 0; i < dec.size(); ++i) {
    if (!is_tripotent(T, dec.frame[i], check))
      throw DegeneracyError("spectral frame element " + std::to_string(i) + " is not a tripotent");
    for (std::size_t j = i + 1; j < dec.size(); ++j)
      if (!are_orthogonal(T, dec.frame[i], dec.frame[j], check))
        throw DegeneracyError("spectral frame elements " + std::to_string(i) + "," +
                              std::to_string(j) + " are not orthogonal");
  }
}

}  // namespace detail

/// Spectral values (unmerged, descending, one per rank slot, zeros included).
inline std::vector<double> spectral_values(const TripleSystem& T, const Vector& x) {
  check_dim(T, x, "spectral_values");
  switch (T.kind()) {
    case Kind::TypeI:
    case Kind::TypeII:
    case Kind::TypeIII:
      return detail::matrix_values(T, x);
    case Kind::TypeIV: {
      const auto v = detail::type_iv_values(x);
      return {v[0], v[1]};
    }
    case Kind::Product: {
      std::vector<double> out;
      for (std::size_t f = 0; f < T.factors().size(); ++f) {
        const auto& F = T.factors()[f];
        auto v = spectral_values(F, x.segment(T.factor_offset(f), F.dim()));
        out.insert(out.end(), v.begin(), v.end());
      }
      std::sort(out.begin(), out.end(), std::greater<>());
      return out;
    }
  }
  return {};
}

/// x = sum lambda_i e_i. Types I-III go through the SVD in the matrix chart, Type IV
/// through the closed two-term form, products factor by factor.
/// Coefficients within the relative gap are merged into one tripotent.
inline SpectralDecomposition spectral_decomposition(const Domain& D, const Vector& x,
                                                    double tol = kDefaultTol, double gap = kMergeGap) {
  check_dim(D.system, x, "spectral_decomposition");
  if (x.isZero(0.0)) return {};
  auto dec = detail::merge_pieces(detail::pieces_for(D.system, x, tol, gap), gap);
  detail::verify_frame(D.system, dec, tol);
  return dec;
}

/// Decomposition from the odd powers alone, valid for any triple product: the real span
/// of x, x^(3), x^(5), ... has dimension s; the next odd power satisfies a real linear
/// relation whose polynomial has roots lambda_i^2, and a Vandermonde solve in
/// lambda_i^(2p+1) recovers the frame. Reliable only for well-separated coefficients.
inline SpectralDecomposition spectral_decomposition_generic(const TripleSystem& T, const Vector& x,
                                                            double tol = kDefaultTol) {
  check_dim(T, x, "spectral_decomposition_generic");
  if (x.isZero(0.0)) return {};
  const int n = T.dim();
  const double scale = x.norm();
  const Vector y = x / scale;

  std::vector<Vector> powers{y};
  Eigen::MatrixXd basis(2 * n, 0);  // orthonormal real basis of the span so far
  const auto as_real = [n](const Vector& v) {
    Eigen::VectorXd r(2 * n);
    r << v.real(), v.imag();
    return r;
  };
  int s = 0;
  for (;;) {
    Eigen::VectorXd r = as_real(powers.back());
    const double len = r.norm();
    if (basis.cols()) r -= basis * (basis.transpose() * r);
    if (basis.cols()) r -= basis * (basis.transpose() * r);
    if (r.norm() <= 1e-10 * len || basis.cols() == 2 * n) break;
    basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
    basis.col(basis.cols() - 1) = r / r.norm();
    ++s;
    powers.push_back(0.5 * triple(T, y, powers.back(), y));
  }

  // y^(2s+1) = sum_j c_j y^(2j+1), j < s
  Eigen::MatrixXd A(2 * n, s);
  for (int j = 0; j < s; ++j) A.col(j) = as_real(powers[j]);
  const Eigen::VectorXd c = A.colPivHouseholderQr().solve(as_real(powers[s]));

  // roots of t^s - sum c_j t^j via the companion matrix
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(s, s);
  for (int i = 1; i < s; ++i) C(i, i - 1) = 1.0;
  for (int j = 0; j < s; ++j) C(j, s - 1) = c(j);
  const Eigen::EigenSolver<Eigen::MatrixXd> es(C);
  std::vector<double> mu;
  for (int i = 0; i < s; ++i) {
    const auto r = es.eigenvalues()(i);
    if (std::abs(r.imag()) > 1e-6 * std::max(1.0, std::abs(r)) || r.real() <= 0)
      throw NumericalError("generic spectral decomposition: non-positive root in odd-power relation");
    mu.push_back(r.real());
  }
  std::sort(mu.begin(), mu.end(), std::greater<>());

  // powers[p] = sum_i lambda_i^(2p+1) e_i
  Matrix V(s, s);
  for (int i = 0; i < s; ++i)
    for (int p = 0; p < s; ++p) V(i, p) = std::pow(std::sqrt(mu[i]), 2 * p + 1);
  Matrix P(n, s);
  for (int p = 0; p < s; ++p) P.col(p) = powers[p];
  const Matrix E = V.transpose().partialPivLu().solve(P.transpose()).transpose();

  SpectralDecomposition dec;
  for (int i = 0; i < s; ++i) {
    dec.lambdas.push_back(std::sqrt(mu[i]) * scale);
    dec.frame.push_back(E.col(i));
  }
  detail::verify_frame(T, dec, tol);
  return dec;
}

/// lambda_1(x); zero for x = 0.
inline double spectral_norm(const Domain& D, const Vector& x) {
  const auto v = spectral_values(D.system, x);
  return v.empty() ? 0.0 : v.front();
}

enum class Membership { Interior, Boundary, Exterior };

inline const char* to_string(Membership m) {
  switch (m) {
    case Membership::Interior:
      return "interior";
    case Membership::Boundary:
      return "boundary";
    case Membership::Exterior:
      return "exterior";
  }
  return "";
}

inline Membership contains(const Domain& D, const Vector& x, double tol = kDefaultTol) {
  const double r = spectral_norm(D, x);
  if (r < 1.0 - tol) return Membership::Interior;
  if (r <= 1.0 + tol) return Membership::Boundary;
  return Membership::Exterior;
}

// ---------------------------------------------------------------------------
// Pierce decomposition.

struct PierceDecomposition {
  /// bases[j] spans V_j(e); vectors are orthonormal for the trace form.
  std::array<std::vector<Vector>, 3> bases;
  /// trace-form orthogonal projectors onto V_0, V_1, V_2
  std::array<Matrix, 3> projectors;
  /// raw eigenvalues of D(e,e), ascending
  std::vector<double> eigenvalues;

  int dim(int j) const { return static_cast<int>(bases.at(j).size()); }
  Vector project(int j, const Vector& x) const { return projectors.at(j) * x; }
};

inline PierceDecomposition pierce(const Domain& D, const Vector& e, double tol = kDefaultTol) {
  const auto& T = D.system;
  check_dim(T, e, "pierce");
  if (!is_tripotent(T, e, std::max(tol, 1e-8) * 10.0))
    throw std::invalid_argument("pierce: input is not a tripotent");
  // D(e,e) is self-adjoint for the trace form; in whitened coordinates it is Hermitian.
  Matrix A = T.whiten() * op_D(T, e, e) * T.unwhiten();
  A = 0.5 * (A + A.adjoint()).eval();
  const Eigen::SelfAdjointEigenSolver<Matrix> es(A);
  PierceDecomposition out;
  const int n = T.dim();
  std::array<Matrix, 3> cols;
  std::array<int, 3> counts{0, 0, 0};
  for (auto& c : cols) c = Matrix(n, n);
  for (int i = 0; i < n; ++i) {
    const double lam = es.eigenvalues()(i);
    out.eigenvalues.push_back(lam);
    const int j = static_cast<int>(std::lround(lam));
    if (j < 0 || j > 2 || std::abs(lam - j) > 10.0 * tol)
      throw NumericalError("pierce: eigenvalue " + std::to_string(lam) + " is not near {0,1,2}");
    const Vector b = T.unwhiten() * es.eigenvectors().col(i);
    out.bases[j].push_back(b);
    cols[j].col(counts[j]++) = b;
  }
  for (int j = 0; j < 3; ++j) {
    const Matrix B = cols[j].leftCols(counts[j]);
    out.projectors[j] = B * B.adjoint() * T.gram();
  }
  return out;
}

namespace detail {
inline int tripotent_rank_unchecked(const TripleSystem& T, const Vector& e) {
  if (T.kind() == Kind::Product) {
    int r = 0;
    for (std::size_t f = 0; f < T.factors().size(); ++f) {
      const auto& F = T.factors()[f];
      const Vector ef = e.segment(T.factor_offset(f), F.dim());
      if (ef.norm() > 1e-6)
        r += tripotent_rank_unchecked(F, ef);
    }
    return r;
  }
  const auto v = spectral_values(T, e);
  return static_cast<int>(std::count_if(v.begin(), v.end(), [](double l) { return l > 0.5; }));
}
}  // namespace detail

/// Number of primitive tripotents in an orthogonal decomposition of e: the count of unit
/// spectral values (matrix rank for Types I and III, half of it for Type II).
inline int tripotent_rank(const Domain& D, const Vector& e, double tol = kDefaultTol) {
  check_dim(D.system, e, "tripotent_rank");
  if (!is_tripotent(D.system, e, std::max(tol, 1e-8) * 10.0))
    throw std::invalid_argument("tripotent_rank: input is not a tripotent");
  if (e.isZero(1e-12)) throw std::invalid_argument("tripotent_rank: zero tripotent");
  return detail::tripotent_rank_unchecked(D.system, e);
}

inline bool is_maximal(const Domain& D, const Vector& e, double tol = kDefaultTol) {
  return pierce(D, e, tol).dim(0) == 0;
}

inline bool is_primitive(const Domain& D, const Vector& e, double tol = kDefaultTol) {
  if (e.isZero(1e-12)) throw std::invalid_argument("is_primitive: zero tripotent");
  return pierce(D, e, tol).dim(2) == 1;
}

/// e is dominated by f when f - e is a tripotent orthogonal to e.
inline bool is_dominated(const Domain& D, const Vector& e, const Vector& f, double tol = kDefaultTol) {
  const Vector d = f - e;
  const double check = std::max(tol, 1e-8) * 10.0;
  return is_tripotent(D.system, d, check) && are_orthogonal(D.system, e, d, check);
}

/// A maximal tripotent with a canonical shape for each kind (e.g. [I 0] for Type I).
inline Vector canonical_maximal_tripotent(const TripleSystem& T) {
  switch (T.kind()) {
    case Kind::TypeI: {
      Matrix E = Matrix::Zero(T.rows(), T.cols());
      for (int i = 0; i < std::min(T.rows(), T.cols()); ++i) E(i, i) = 1.0;
      return from_matrix(T, E);
    }
    case Kind::TypeII: {
      Matrix E = Matrix::Zero(T.m(), T.m());
      for (int k = 0; 2 * k + 1 < T.m(); ++k) {
        E(2 * k, 2 * k + 1) = 1.0;
        E(2 * k + 1, 2 * k) = -1.0;
      }
      return from_matrix(T, E);
    }
    case Kind::TypeIII:
      return from_matrix(T, Matrix::Identity(T.m(), T.m()));
    case Kind::TypeIV: {
      Vector e = Vector::Zero(T.dim());
      e(0) = std::sqrt(2.0);
      return e;
    }
    case Kind::Product: {
      Vector e(T.dim());
      for (std::size_t f = 0; f < T.factors().size(); ++f)
        e.segment(T.factor_offset(f), T.factors()[f].dim()) = canonical_maximal_tripotent(T.factors()[f]);
      return e;
    }
  }
  return {};
}

}  // namespace jordan
