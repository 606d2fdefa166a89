#include <gtest/gtest.h>

#include "jordan.hpp"

using namespace jordan;

namespace {

std::vector<TripleSystem> all_kinds() {
  return {TripleSystem::ball(2),     TripleSystem::type_i(2, 2), TripleSystem::type_i(2, 3),
          TripleSystem::type_ii(4),  TripleSystem::type_ii(5),   TripleSystem::type_iii(2),
          TripleSystem::type_iii(3), TripleSystem::type_iv(4),   TripleSystem::type_iv(3),
          TripleSystem::polydisc(2), TripleSystem::product({TripleSystem::ball(2), TripleSystem::type_iii(2)})};
}

Vector vec(std::initializer_list<Complex> v) {
  Vector x(v.size());
  int i = 0;
  for (auto c : v) x(i++) = c;
  return x;
}

}  // namespace

TEST(TripleSystem, Dimensions) {
  EXPECT_EQ(TripleSystem::type_i(2, 3).dim(), 6);
  EXPECT_EQ(TripleSystem::type_ii(4).dim(), 6);
  EXPECT_EQ(TripleSystem::type_ii(5).dim(), 10);
  EXPECT_EQ(TripleSystem::type_iii(3).dim(), 6);
  EXPECT_EQ(TripleSystem::type_iv(5).dim(), 5);
  EXPECT_EQ(TripleSystem::polydisc(3).dim(), 3);
  EXPECT_THROW(TripleSystem::type_i(0, 2), std::invalid_argument);
  EXPECT_THROW(TripleSystem::type_ii(1), std::invalid_argument);
  EXPECT_THROW(TripleSystem::type_iv(1), std::invalid_argument);
}

TEST(TripleSystem, MatrixChartRoundTrip) {
  Rng rng(3);
  for (const auto& T : {TripleSystem::type_i(2, 3), TripleSystem::type_ii(4), TripleSystem::type_iii(3)}) {
    const Vector x = random_gaussian(T.dim(), rng);
    EXPECT_LT((from_matrix(T, to_matrix(T, x)) - x).norm(), 1e-15) << T.tag();
  }
  const Matrix X = to_matrix(TripleSystem::type_ii(4), random_gaussian(6, rng));
  EXPECT_LT((X + X.transpose()).norm(), 1e-15);
}

TEST(TripleSystem, DiscProduct) {
  const auto T = TripleSystem::disc();
  EXPECT_NEAR(std::abs(triple(T, vec({1}), vec({1}), vec({1}))(0) - 2.0), 0.0, 1e-15);
}

TEST(TripleSystem, BallOrthogonalPairing) {
  const auto T = TripleSystem::ball(2);
  EXPECT_LT(triple(T, vec({1, 0}), vec({0, 1}), vec({1, 0})).norm(), 1e-15);
}

TEST(TripleSystem, TypeIUnitMatrix) {
  const auto T = TripleSystem::type_i(2, 2);
  const Vector e11 = basis_vector(4, 0);
  EXPECT_LT((triple(T, e11, e11, e11) - 2.0 * e11).norm(), 1e-15);
}

TEST(TripleSystem, DimensionMismatchThrows) {
  const auto T = TripleSystem::ball(2);
  EXPECT_THROW(triple(T, vec({1}), vec({1, 0}), vec({1, 0})), std::invalid_argument);
  EXPECT_THROW(op_D(T, vec({1, 0, 0}), vec({1, 0})), std::invalid_argument);
}

TEST(TripleSystem, SymmetryAndSesquilinearity) {
  Rng rng(11);
  for (const auto& T : all_kinds()) {
    const int n = T.dim();
    for (int s = 0; s < 20; ++s) {
      const Vector x = random_gaussian(n, rng), y = random_gaussian(n, rng), z = random_gaussian(n, rng),
                   u = random_gaussian(n, rng);
      const Complex a(0.3, -1.2), b(-0.7, 0.4);
      const double scale = x.norm() * y.norm() * z.norm() + 1.0;
      EXPECT_LT((triple(T, x, y, z) - triple(T, z, y, x)).norm(), 1e-12 * scale) << T.tag();
      EXPECT_LT((triple(T, a * x + b * u, y, z) - a * triple(T, x, y, z) - b * triple(T, u, y, z)).norm(),
                1e-10 * scale)
          << T.tag();
      EXPECT_LT((triple(T, x, a * y + b * u, z) - std::conj(a) * triple(T, x, y, z) -
                 std::conj(b) * triple(T, x, u, z))
                    .norm(),
                1e-10 * scale)
          << T.tag();
    }
  }
}

TEST(TripleSystem, JordanIdentity) {
  Rng rng(5);
  for (const auto& T : all_kinds()) {
    for (int s = 0; s < 50; ++s) {
      const int n = T.dim();
      const Vector x = random_gaussian(n, rng), y = random_gaussian(n, rng), u = random_gaussian(n, rng),
                   v = random_gaussian(n, rng), w = random_gaussian(n, rng);
      const double scale = x.norm() * y.norm() * u.norm() * v.norm() * w.norm();
      EXPECT_LE(jordan_residual(T, x, y, u, v, w), 1e-10 * scale) << T.tag();
    }
  }
}

TEST(Operators, DiscOperators) {
  const auto T = TripleSystem::disc();
  EXPECT_NEAR(std::abs(op_D(T, vec({1}), vec({1}))(0, 0) - 2.0), 0.0, 1e-15);
  const Complex z(0.3, 0.4), y(-0.2, 0.7);
  EXPECT_NEAR(std::abs(op_Q(T, vec({z}))(vec({y}))(0) - z * z * std::conj(y)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(trace_form(T, vec({1}), vec({1})) - 2.0), 0.0, 1e-15);
}

TEST(Operators, BallDOfUnitVector) {
  const auto T = TripleSystem::ball(2);
  const LinearOperator D = op_D(T, vec({1, 0}), vec({1, 0}));
  EXPECT_LT((D - Matrix(Eigen::Vector2cd(2.0, 1.0).asDiagonal())).norm(), 1e-15);
}

TEST(Operators, OddPowers) {
  EXPECT_NEAR(odd_power(TripleSystem::disc(), vec({0.5}), 1)(0).real(), 0.125, 1e-15);
  EXPECT_LT((odd_power(TripleSystem::ball(2), vec({0.6, 0}), 1) - vec({0.216, 0})).norm(), 1e-15);
  const auto T = TripleSystem::type_i(2, 2);
  EXPECT_LT((odd_power(T, vec({0.9, 0, 0, 0.4}), 1) - vec({0.729, 0, 0, 0.064})).norm(), 1e-15);
  EXPECT_THROW(odd_power(T, vec({1, 0, 0, 0}), -1), std::invalid_argument);
}

TEST(Operators, Tripotents) {
  const auto disc = TripleSystem::disc();
  for (double th : {0.0, 1.0, 2.5}) EXPECT_TRUE(is_tripotent(disc, vec({std::polar(1.0, th)})));
  EXPECT_FALSE(is_tripotent(disc, vec({0.5})));
  const auto bi = TripleSystem::polydisc(2);
  EXPECT_TRUE(is_tripotent(bi, vec({1, 0})));
  EXPECT_TRUE(are_orthogonal(bi, vec({1, 0}), vec({0, 1})));
  EXPECT_FALSE(are_orthogonal(bi, vec({1, 0}), vec({1, 0})));
  EXPECT_TRUE(is_tripotent(TripleSystem::type_i(2, 2), basis_vector(4, 0)));
}

TEST(Operators, BergmanClosedForms) {
  const auto disc = TripleSystem::disc();
  const Complex z(0.3, -0.2), w(0.5, 0.1);
  EXPECT_NEAR(std::abs(bergman_operator(disc, vec({z}), vec({w}))(0, 0) - std::pow(1.0 - z * std::conj(w), 2)),
              0.0, 1e-15);
  Rng rng(2);
  for (int n : {2, 3}) {
    const auto T = TripleSystem::ball(n);
    const Vector x = 0.5 * random_gaussian(n, rng), y = 0.5 * random_gaussian(n, rng);
    const Complex expected = std::pow(1.0 - y.dot(x), n + 1);
    EXPECT_NEAR(std::abs(bergman_operator(T, x, y).determinant() - expected), 0.0, 1e-12);
  }
  for (const auto& T : all_kinds()) {
    const Vector x = random_gaussian(T.dim(), rng);
    const LinearOperator I = LinearOperator::Identity(T.dim(), T.dim());
    EXPECT_LT((bergman_operator(T, x, Vector::Zero(T.dim())) - I).norm(), 1e-15);
  }
}

TEST(Operators, TraceForm) {
  Rng rng(8);
  for (int n : {2, 3}) {
    const auto T = TripleSystem::ball(n);
    const Vector x = random_gaussian(n, rng), y = random_gaussian(n, rng);
    EXPECT_NEAR(std::abs(trace_form(T, x, y) - double(n + 1) * y.dot(x)), 0.0, 1e-12);
  }
  for (const auto& T : all_kinds()) {
    for (int s = 0; s < 10; ++s) {
      const Vector x = random_gaussian(T.dim(), rng), y = random_gaussian(T.dim(), rng);
      EXPECT_GT(trace_form(T, x, x).real(), 0.0);
      EXPECT_NEAR(std::abs(trace_form(T, x, y) - op_D(T, x, y).trace()), 0.0, 1e-10);
      EXPECT_NEAR(std::abs(trace_form(T, x, y) - std::conj(trace_form(T, y, x))), 0.0, 1e-10);
    }
  }
}

TEST(Operators, BergmanAdjointAndPositivity) {
  Rng rng(13);
  for (const auto& T : all_kinds()) {
    const Domain D = make_domain(T);
    for (int s = 0; s < 10; ++s) {
      const Vector x = random_gaussian(T.dim(), rng), y = random_gaussian(T.dim(), rng),
                   u = random_gaussian(T.dim(), rng), v = random_gaussian(T.dim(), rng);
      const Complex lhs = trace_form(T, bergman_operator(T, x, y) * u, v);
      const Complex rhs = trace_form(T, u, bergman_operator(T, y, x) * v);
      EXPECT_LE(std::abs(lhs - rhs), 1e-9 * (1.0 + std::abs(lhs))) << T.tag();
      EXPECT_LT((trace_adjoint(T, bergman_operator(T, x, y)) - bergman_operator(T, y, x)).norm(),
                1e-9 * (1 + bergman_operator(T, x, y).norm()));

      const Vector a = random_interior(D, rng, 0.99);
      const Matrix H = T.whiten() * bergman_operator(T, a, a) * T.unwhiten();
      const Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (H + H.adjoint()));
      EXPECT_GE(es.eigenvalues().minCoeff(), -1e-10) << T.tag();
    }
  }
}

TEST(Operators, QCompositionIsLinear) {
  Rng rng(4);
  const auto T = TripleSystem::type_i(2, 2);
  const Vector x = random_gaussian(4, rng), y = random_gaussian(4, rng), w = random_gaussian(4, rng);
  const LinearOperator QQ = compose(op_Q(T, x), op_Q(T, y));
  EXPECT_LT((QQ * w - op_Q(T, x)(op_Q(T, y)(w))).norm(), 1e-12);
}
