#include <gtest/gtest.h>

#include "jordan.hpp"

using namespace jordan;

namespace {

Vector vec(std::initializer_list<Complex> v) {
  Vector x(v.size());
  int i = 0;
  for (auto c : v) x(i++) = c;
  return x;
}

const Domain& bidisc() {
  static const Domain D = make_domain(TripleSystem::polydisc(2));
  return D;
}
const Domain& ball2() {
  static const Domain D = make_domain(TripleSystem::ball(2));
  return D;
}
const Domain& m22() {
  static const Domain D = make_domain(TripleSystem::type_i(2, 2));
  return D;
}

std::vector<Domain> irreducible() {
  return {make_domain(TripleSystem::ball(2)), make_domain(TripleSystem::type_i(2, 2)),
          make_domain(TripleSystem::type_ii(4)), make_domain(TripleSystem::type_iii(2)),
          make_domain(TripleSystem::type_iv(4))};
}

}  // namespace

TEST(Classify, Examples) {
  auto c = classify_boundary_point(bidisc(), vec({1, 0.3}));
  EXPECT_LT((c.e - vec({1, 0})).norm(), 1e-14);
  EXPECT_LT((c.v - vec({0, 0.3})).norm(), 1e-14);
  EXPECT_EQ(c.stratum_rank, 1);
  EXPECT_NEAR(c.interior_norm, 0.3, 1e-14);

  c = classify_boundary_point(m22(), vec({1, 0, 0, 0.5}));
  EXPECT_EQ(c.stratum_rank, 1);

  Rng rng(1);
  const Vector u = random_direction(ball2(), rng);
  c = classify_boundary_point(ball2(), u);
  EXPECT_LT((c.e - u).norm(), 1e-12);
  EXPECT_LT(c.v.norm(), 1e-15);
  EXPECT_EQ(c.stratum_rank, 1);

  EXPECT_THROW(classify_boundary_point(bidisc(), vec({0.5, 0.3})), std::invalid_argument);
  EXPECT_THROW(classify_boundary_point(bidisc(), vec({1.5, 0.3})), std::invalid_argument);
}

TEST(Classify, DeadZoneIsFlagged) {
  const double tol = 1e-6;
  EXPECT_THROW(classify_boundary_point(bidisc(), vec({1, 1 - 5e-7}), tol), DegeneracyError);
  EXPECT_EQ(classify_boundary_point(bidisc(), vec({1, 1 - 5e-8}), tol).stratum_rank, 2);
  EXPECT_EQ(classify_boundary_point(bidisc(), vec({1, 1 - 5e-6}), tol).stratum_rank, 1);
}

TEST(Classify, StratificationPartition) {
  Rng rng(2);
  std::vector<Domain> all = irreducible();
  all.push_back(bidisc());
  for (const auto& D : all) {
    for (int s = 0; s < 200; ++s) {
      const int j = std::uniform_int_distribution<int>(1, D.rank)(rng);
      const Vector x = random_boundary_point(D, rng, j);
      const auto c = classify_boundary_point(D, x);
      EXPECT_EQ(c.stratum_rank, j) << D.tag();
      EXPECT_LE((c.e + c.v - x).norm(), 1e-8) << D.tag();
      EXPECT_LT(c.interior_norm, 1.0);
      EXPECT_TRUE(is_tripotent(D.system, c.e));
    }
  }
}

TEST(Classify, DensityOfRankOneStratum) {
  Rng rng(3);
  for (const auto& D : irreducible()) {
    for (int s = 0; s < 20; ++s) {
      const Vector x = random_boundary_point(D, rng, D.rank);
      bool hit = false;
      for (int t = 0; t < 200 && !hit; ++t) {
        const Vector g = random_gaussian(D.dim(), rng);
        Vector y = x + 1e-3 * uniform(rng) * g / g.norm();
        y /= spectral_norm(D, y);
        try {
          hit = classify_boundary_point(D, y).stratum_rank == 1;
        } catch (const NumericalError&) {
        }
      }
      EXPECT_TRUE(hit) << D.tag();
    }
  }
}

TEST(Shilov, Examples) {
  EXPECT_TRUE(is_shilov(bidisc(), vec({1, std::polar(1.0, 0.7)})).shilov);
  EXPECT_FALSE(is_shilov(bidisc(), vec({1, 0.3})).shilov);
  Rng rng(4);
  EXPECT_TRUE(is_shilov(m22(), from_matrix(m22().system, random_unitary(2, rng))).shilov);
  for (int s = 0; s < 10; ++s) EXPECT_TRUE(is_shilov(ball2(), random_direction(ball2(), rng)).shilov);
}

TEST(Shilov, MaximalDistanceOnlyAtShilovPoints) {
  Rng rng(5);
  std::vector<Domain> all = irreducible();
  all.push_back(bidisc());
  for (const auto& D : all) {
    const double rmax = shilov_radius(D);
    for (int s = 0; s < 200; ++s) {
      const Vector x = random_boundary_point(D, rng, std::uniform_int_distribution<int>(1, D.rank)(rng));
      const auto ev = is_shilov(D, x);
      EXPECT_TRUE(ev.radius_consistent) << D.tag();
      EXPECT_LE(ev.radius, rmax * (1 + 1e-9)) << D.tag();
    }
  }
}

TEST(ArcComponents, Examples) {
  auto b = arc_component_basis(bidisc(), vec({1, 0.3}));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_NEAR(std::abs(b[0](0)), 0.0, 1e-14);
  EXPECT_GT(std::abs(b[0](1)), 0.0);
  EXPECT_TRUE(arc_component_basis(ball2(), vec({0.6, 0.8})).empty());
  b = arc_component_basis(m22(), vec({1, 0, 0, 0.5}));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_LT((b[0] / b[0](3) - basis_vector(4, 3)).norm(), 1e-12);
}

TEST(ArcComponents, DiscsStayOnBoundary) {
  auto rep = disc_in_boundary_check(bidisc(), vec({1, 0.3}), 32, 0.1);
  EXPECT_FALSE(rep.vacuous);
  EXPECT_EQ(rep.checked, 32);
  EXPECT_TRUE(rep.passed());
  rep = disc_in_boundary_check(m22(), vec({1, 0, 0, 0.3}), 32);
  EXPECT_TRUE(rep.passed());
  EXPECT_TRUE(disc_in_boundary_check(ball2(), vec({0.6, 0.8}), 32).vacuous);
  Rng rng(6);
  for (const auto& D : irreducible()) {
    if (D.rank < 2) continue;
    const Vector x = random_boundary_point(D, rng, 1);
    EXPECT_TRUE(disc_in_boundary_check(D, x, 16).passed()) << D.tag();
  }
}

TEST(Peak, Examples) {
  const Domain disc = make_domain(TripleSystem::disc());
  auto pf = peak_function(disc, vec({1}));
  EXPECT_NEAR(std::abs(peak_eval(pf, vec({0.3})) - 0.65), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(peak_eval(pf, vec({1})) - 1.0), 0.0, 1e-14);

  pf = peak_function(bidisc(), vec({1, 1}));
  EXPECT_NEAR(std::abs(peak_eval(pf, vec({0.2, 0.6})) - (1 + 0.4) / 2), 0.0, 1e-14);

  pf = peak_function(ball2(), vec({1, 0}));
  EXPECT_NEAR(std::abs(peak_eval(pf, vec({0.3, 0.9})) - 0.65), 0.0, 1e-14);
  EXPECT_THROW(peak_function(bidisc(), vec({1, 0.3})), std::invalid_argument);
}

TEST(Peak, PeakPropertyAtRandomShilovPoints) {
  Rng rng(7);
  std::vector<Domain> all = irreducible();
  all.push_back(bidisc());
  for (const auto& D : all) {
    for (int s = 0; s < 3; ++s) {
      const Vector p = random_shilov_point(D, rng);
      const auto pf = peak_function(D, p, 500);
      EXPECT_NEAR(std::abs(peak_eval(pf, p) - 1.0), 0.0, 1e-12);
      const auto rep = verify_peak(D, pf, 10000, rng);
      EXPECT_TRUE(rep.passed) << D.tag() << " max " << rep.max_abs;
    }
  }
}

TEST(Scan, Examples) {
  const Vector p = vec({1, 0});
  auto res = scan_bergman_det(ball2(), vec({0.9, 0.1}), p, 360);
  EXPECT_NEAR(res.min_abs, std::pow(0.1, 3), 1e-12);
  EXPECT_NEAR(res.argmin_theta, 0.0, 1e-15);

  res = scan_bergman_det(ball2(), p, p, 64);
  EXPECT_NEAR(res.min_abs, 0.0, 1e-15);
  EXPECT_EQ(res.argmin_theta, 0.0);

  res = scan_bergman_det(ball2(), vec({0, 1}), p, 64);
  for (const auto& row : res.rows) EXPECT_NEAR(row.abs_det, 1.0, 1e-14);

  res = scan_bergman_det(bidisc(), vec({0.8, 0.7}), vec({1, 1}), 256);
  EXPECT_NEAR(res.min_abs, std::pow(0.2, 2) * std::pow(0.3, 2), 1e-12);
  EXPECT_EQ(res.rows.size(), 256u);
}

TEST(GoodCircle, Examples) {
  // z0 orthogonal to p: the circle keeps det B = 1
  auto g = find_good_circle(ball2(), vec({0, 1}), vec({1, 0}), 0.1, 1e-3);
  EXPECT_TRUE(g.found);
  EXPECT_EQ(g.attempts, 1);
  EXPECT_NEAR(g.min_abs, 1.0, 1e-12);

  // degenerate start z0 = p moves off p
  g = find_good_circle(ball2(), vec({1, 0}), vec({1, 0}), 0.5, 1e-3);
  EXPECT_TRUE(g.found);
  EXPECT_GT(g.attempts, 1);
  EXPECT_GE(refined_circle_min(ball2(), g.w, vec({1, 0})), 1e-3);

  // the bidisc is reducible: a unimodular coordinate of w always meets p on the circle
  g = find_good_circle(bidisc(), vec({1, 0.2}), vec({1, 1}), 0.5, 1e-3, 50);
  EXPECT_FALSE(g.found);
  EXPECT_LT(g.min_abs, 1e-6);

  EXPECT_THROW(find_good_circle(bidisc(), vec({1, 1}), vec({1, 1}), 0.5, 1e-3), std::invalid_argument);
}

TEST(GoodCircle, IrreducibleKinds) {
  Rng rng(8);
  for (const auto& D : irreducible()) {
    for (int s = 0; s < 5; ++s) {
      const Vector z0 = random_boundary_point(D, rng, 1);
      const Vector p = random_shilov_point(D, rng);
      const auto g = find_good_circle(D, z0, p, 0.5, 1e-3, 200);
      EXPECT_TRUE(g.found) << D.tag();
      if (g.found) EXPECT_EQ(classify_boundary_point(D, g.w).stratum_rank, 1);
    }
  }
}
