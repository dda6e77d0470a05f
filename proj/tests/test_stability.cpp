#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

#include "ale/errors.hpp"
#include "ale/models.hpp"
#include "ale/stability.hpp"
#include "grid.hpp"
#include "oracles.hpp"

using namespace ale;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

ALEModelInvariants custom(double e, double a, int m = 2, int gamma = 2) {
  ALEModelInvariants inv;
  inv.m = m;
  inv.gamma = gamma;
  inv.e = e;
  inv.a = a;
  inv.xi_m = a / mass_normalization(m);
  inv.rho_xi = -e / (mass_normalization(m) * gamma);
  inv.scalar_flat = true;
  return inv;
}

SingularPointDatum point(std::string id, const ALEModelInvariants& inv, Eigen::VectorXd mu, Eigen::VectorXd lap) {
  return SingularPointDatum{std::move(id), inv.gamma, std::move(mu), std::move(lap), inv};
}

OrbifoldConfig antisymmetric_pair(double a) {
  return OrbifoldConfig{2, 1, 1.0, {},
                        {point("p1", custom(0, a), vec({1}), vec({0})), point("p2", custom(0, a), vec({-1}), vec({0}))}};
}

OrbifoldConfig random_config(std::mt19937_64& rng, double e_scale = 1.0) {
  std::uniform_int_distribution<int> npts(1, 4), dd(0, 3), vals(-2, 2);
  OrbifoldConfig c;
  c.m = 3;
  c.d = dd(rng);
  c.s_bar = 0.5;
  const int n = npts(rng);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd mu(c.d), lap(c.d);
    for (int k = 0; k < c.d; ++k) {
      mu(k) = vals(rng);
      lap(k) = vals(rng);
    }
    c.points.push_back(point("q" + std::to_string(i), custom(e_scale * vals(rng), vals(rng), 3, 2), mu, lap));
  }
  return c;
}

}  // namespace

TEST(SpanRank, Examples) {
  const ToleranceSpec tol;
  EXPECT_EQ(span_rank({vec({1, 0}), vec({0, 1})}, 2, tol), 2);
  EXPECT_EQ(span_rank({vec({1, 1}), vec({2, 2})}, 2, tol), 1);
  EXPECT_EQ(span_rank({}, 2, tol), 0);
  EXPECT_EQ(span_rank({vec({0, 0})}, 2, tol), 0);
  EXPECT_EQ(span_rank({Eigen::VectorXd(), Eigen::VectorXd()}, 0, tol), 0);
  EXPECT_THROW(span_rank({vec({1})}, 2, tol), DimensionError);
}

TEST(SpanRank, RandomGeneralPosition) {
  // Integer entries; the exact rank is 3 as soon as one 3x3 minor is nonzero.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> u(-9, 9);
  std::vector<Eigen::VectorXd> vs;
  std::vector<std::array<long, 3>> ints;
  for (int i = 0; i < 100; ++i) {
    std::array<long, 3> x{u(rng), u(rng), u(rng)};
    ints.push_back(x);
    vs.push_back(vec({double(x[0]), double(x[1]), double(x[2])}));
  }
  const auto det = [](const auto& a, const auto& b, const auto& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
  };
  bool full = false;
  for (std::size_t i = 0; i < 10 && !full; ++i) {
    for (std::size_t j = i + 1; j < 10 && !full; ++j) {
      for (std::size_t k = j + 1; k < 10 && !full; ++k) full = det(ints[i], ints[j], ints[k]) != 0;
    }
  }
  ASSERT_TRUE(full);
  EXPECT_EQ(span_rank(vs, 3, {}), 3);
}

TEST(Classify, OnePointNonzeroMass) {
  OrbifoldConfig c{2, 1, 0.0, {}, {point("q", custom(-1.0, 0.0), vec({1}), vec({0}))}};
  const Verdict v = classify(c);
  EXPECT_EQ(v.regime, Regime::NonExistenceEqualScale);
  EXPECT_TRUE(v.equal_scale_obstructed);
  ASSERT_EQ(v.witness.sum_vector.size(), 1);
  EXPECT_DOUBLE_EQ(v.witness.sum_vector(0), -0.5);
  EXPECT_TRUE(v.schedules.empty());
  EXPECT_FALSE(v.alternative.has_value());
}

TEST(Classify, AntisymmetricRicciFlatPair) {
  const OrbifoldConfig c = antisymmetric_pair(-1.0 / 64.0);
  const Verdict v = classify(c);
  EXPECT_EQ(v.regime, Regime::ExistenceAllZeroMass);
  EXPECT_EQ(v.witness.rank, 1);
  EXPECT_EQ(v.witness.sum_norm, 0.0);
  ASSERT_EQ(v.schedules.size(), 2u);
  for (const auto& s : v.schedules) {
    EXPECT_EQ(s.exponent, 1.0);
    EXPECT_EQ(s.power, 0.5);
  }
}

TEST(Classify, EmptyAlgebraIsExistence) {
  OrbifoldConfig zero{3, 0, 1.0, {}, {point("p", custom(0, 1, 3), {}, {})}};
  EXPECT_EQ(classify(zero).regime, Regime::ExistenceAllZeroMass);
  OrbifoldConfig some{3, 0, 1.0, {}, {point("q", custom(2, 0, 3), {}, {}), point("p", custom(0, 1, 3), {}, {})}};
  EXPECT_EQ(classify(some).regime, Regime::ExistenceSomeNonzeroMass);
}

TEST(Classify, MixedScalesAndSchedules) {
  // Q sum (e/gamma) mu = (1, 0) is cancelled by a w = (-1, 0); mu(q) and w(p2) span.
  OrbifoldConfig c{3, 2, 1.0, {},
                   {point("q", custom(2, 0, 3), vec({1, 0}), vec({0, 0})),
                    point("p1", custom(0, 1, 3), vec({-1, 0}), vec({0, 0})),
                    point("p2", custom(0, 0, 3), vec({0, 1}), vec({0, 0}))}};
  const Verdict v = classify(c);
  EXPECT_EQ(v.regime, Regime::NonExistenceEqualScale);
  ASSERT_TRUE(v.alternative.has_value());
  EXPECT_EQ(*v.alternative, Regime::ExistenceMixedScales);
  ASSERT_EQ(v.alternative_schedules.size(), 3u);
  EXPECT_DOUBLE_EQ(v.alternative_schedules[0].exponent, 1.0);
  EXPECT_DOUBLE_EQ(v.alternative_schedules[0].power, 0.5);
  EXPECT_DOUBLE_EQ(v.alternative_schedules[1].exponent, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(v.alternative_schedules[1].power, 1.0 / 3.0);
}

TEST(Classify, SomeNonzeroMassFreezesOtherPoints) {
  OrbifoldConfig c{2, 1, 1.0, {},
                   {point("q1", custom(1, 0), vec({1}), vec({0})), point("q2", custom(1, 0), vec({-1}), vec({0})),
                    point("p", custom(0, 1), vec({3}), vec({0}))}};
  const Verdict v = classify(c);
  EXPECT_EQ(v.regime, Regime::ExistenceSomeNonzeroMass);
  EXPECT_EQ(v.schedules[2].power, 0.0);
  EXPECT_EQ(v.schedules[0].power, 1.0);
  const BalancingSolution sol = balance(c, v);
  EXPECT_EQ(sol.t(2), 0.0);
}

TEST(Classify, BorderlineMassIsFlagged) {
  OrbifoldConfig c{2, 1, 1.0, {}, {point("q", custom(5e-9, 0), vec({1}), vec({0})), point("p", custom(0, 1), vec({1}), vec({-1}))}};
  const Verdict v = classify(c);
  ASSERT_EQ(v.witness.borderline.size(), 1u);
  EXPECT_EQ(v.witness.borderline[0], "q");
}

TEST(Classify, Preconditions) {
  OrbifoldConfig c = antisymmetric_pair(1.0);
  c.base_futaki = vec({1.0});
  EXPECT_THROW(classify(c), PreconditionError);
  c = antisymmetric_pair(1.0);
  c.points[0].inv.scalar_flat = false;
  EXPECT_THROW(classify(c), PreconditionError);
  EXPECT_THROW(classify(antisymmetric_pair(1.0), ToleranceSpec{0.0, 1e-9}), PreconditionError);
  EXPECT_THROW(parse_regime("Maybe"), PreconditionError);
  EXPECT_EQ(parse_regime("ExistenceMixedScales"), Regime::ExistenceMixedScales);
}

TEST(Classify, InvariantUnderRescalingAndPermutation) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 2000; ++trial) {
    OrbifoldConfig c = random_config(rng);
    const Regime base = classify(c).regime;
    for (double s : {1e-3, 7.0, 1e4}) {
      OrbifoldConfig scaled = c;
      for (auto& p : scaled.points) {
        p.mu *= s;
        p.lap_mu *= s;
      }
      EXPECT_EQ(classify(scaled).regime, base);
    }
    OrbifoldConfig perm = c;
    std::shuffle(perm.points.begin(), perm.points.end(), rng);
    EXPECT_EQ(classify(perm).regime, base);
  }
}

TEST(Classify, ShrinkingZeroTolNeverLeavesNonExistence) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> jitter(0.0, 1e-7);
  for (int trial = 0; trial < 2000; ++trial) {
    OrbifoldConfig c = random_config(rng);
    for (auto& p : c.points) {
      for (Eigen::Index k = 0; k < p.mu.size(); ++k) p.mu(k) += jitter(rng);
    }
    Regime prev = classify(c, {1e-3, 1e-9}).regime;
    for (double z : {1e-5, 1e-7, 1e-9, 1e-12}) {
      const Regime cur = classify(c, {z, 1e-9}).regime;
      if (prev == Regime::NonExistenceEqualScale) EXPECT_EQ(cur, prev);
      prev = cur;
    }
  }
}

TEST(Classify, AgreesWithOracleOnSmallGrid) {
  // d <= 1 exhaustively, up to three points; d = 2 is covered by the acceptance run.
  for (int d = 0; d <= 1; ++d) {
    const auto st = grid::states(d);
    const std::size_t n = st.size();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j <= n; ++j) {
        for (std::size_t k = j; k <= n; ++k) {
          std::vector<oracle::IntPoint> pts{st[i]};
          if (j < n) pts.push_back(st[j]);
          if (j < n && k < n) pts.push_back(st[k]);
          if (j == n && k != n) continue;
          const auto got = grid::label(classify(grid::config(pts, d)).regime);
          ASSERT_EQ(got, oracle::classify(pts, d)) << "d=" << d << " i=" << i << " j=" << j << " k=" << k;
        }
      }
    }
  }
}

TEST(BalancingJacobian, Examples) {
  const double a = 0.25;
  const OrbifoldConfig c = antisymmetric_pair(a);
  const Partition part = partition(c, {});
  const Eigen::MatrixXd J = balancing_jacobian(c, part);
  ASSERT_EQ(J.rows(), 1);
  ASSERT_EQ(J.cols(), 2);
  EXPECT_DOUBLE_EQ(J(0, 0), a);
  EXPECT_DOUBLE_EQ(J(0, 1), -a);

  OrbifoldConfig one{2, 1, 1.0, {}, {point("p", custom(0, 1), vec({0.5}), vec({0.5}))}};
  EXPECT_DOUBLE_EQ(balancing_jacobian(one, partition(one, {}))(0, 0), 1.0);

  OrbifoldConfig none{2, 0, 1.0, {}, {point("p", custom(0, 1), {}, {}), point("r", custom(0, 1), {}, {})}};
  const auto J0 = balancing_jacobian(none, partition(none, {}));
  EXPECT_EQ(J0.rows(), 0);
  EXPECT_EQ(J0.cols(), 2);

  EXPECT_THROW(balancing_jacobian(c, Partition{{0}, {}}), DimensionError);
}

TEST(SolveBalancing, Examples) {
  const ToleranceSpec tol;
  Eigen::MatrixXd J(1, 2);
  J << 1, -1;
  auto sol = solve_balancing(J, vec({0.1}), tol);
  EXPECT_NEAR(sol.t(0), -0.05, 1e-15);
  EXPECT_NEAR(sol.t(1), 0.05, 1e-15);
  EXPECT_EQ(sol.jacobian_rank, 1);

  sol = solve_balancing(J, vec({0.0}), tol);
  EXPECT_EQ(sol.t.norm(), 0.0);

  Eigen::MatrixXd K(2, 3);
  K << 1, 0, 0, 0, 1, 0;
  sol = solve_balancing(K, vec({0.2, -0.4}), tol);
  EXPECT_NEAR(sol.t(0), -0.2, 1e-15);
  EXPECT_NEAR(sol.t(1), 0.4, 1e-15);
  EXPECT_NEAR(sol.t(2), 0.0, 1e-15);
}

TEST(SolveBalancing, Rejections) {
  const ToleranceSpec tol;
  Eigen::MatrixXd J(2, 2);
  J << 1, 2, 2, 4;
  try {
    solve_balancing(J, vec({0.1, 0.2}), tol);
    FAIL();
  } catch (const BalancingError& err) {
    EXPECT_EQ(err.reason(), BalancingError::Reason::RankDeficient);
  }
  Eigen::MatrixXd K(1, 1);
  K << 1;
  try {
    solve_balancing(K, vec({2.0}), tol);
    FAIL();
  } catch (const BalancingError& err) {
    EXPECT_EQ(err.reason(), BalancingError::Reason::OutsideChart);
  }
  EXPECT_THROW(solve_balancing(K, vec({0.1, 0.1}), tol), DimensionError);
}

TEST(SolveBalancing, MinimalNormOnRandomInputs) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> dd(1, 4), extra(0, 4);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = dd(rng);
    const int n = d + extra(rng);
    Eigen::MatrixXd J(d, n);
    for (Eigen::Index i = 0; i < J.size(); ++i) J.data()[i] = g(rng);
    Eigen::VectorXd t0(n);
    for (int i = 0; i < n; ++i) t0(i) = g(rng);
    t0 *= 0.5 / t0.norm();
    const Eigen::VectorXd delta = -J * t0;
    const auto sol = solve_balancing(J, delta, {});
    EXPECT_LT((J * sol.t + delta).norm(), 1e-10);
    EXPECT_LE(sol.t.norm(), t0.norm() * (1.0 + 1e-12));
    const Eigen::MatrixXd N = J.fullPivLu().kernel();
    if (N.cols() > 0 && N.norm() > 0.0) EXPECT_LT((N.transpose() * sol.t).norm(), 1e-10 * N.norm());
  }
}

TEST(Balance, AntisymmetricPairNeedsNoCorrection) {
  const OrbifoldConfig c = antisymmetric_pair(-1.0 / 64.0);
  const Verdict v = classify(c);
  const auto sol = balance(c, v);
  EXPECT_EQ(sol.t.norm(), 0.0);
  EXPECT_THROW(balance(c, v, true), PreconditionError);
}

TEST(LambdaSchedule, Examples) {
  const OrbifoldConfig c = antisymmetric_pair(1.0);
  const Verdict v = classify(c);
  BalancingSolution zero{Eigen::VectorXd::Zero(2), 0.0, 1};
  for (const auto& [id, lambda] : lambda_schedule(v, zero, 0.01)) EXPECT_DOUBLE_EQ(lambda, 0.01);

  BalancingSolution shifted{vec({0.21, 0.0}), 0.0, 1};
  EXPECT_NEAR(lambda_schedule(v, shifted, 0.01)[0].second, 0.011, 1e-15);

  Verdict mixed;
  mixed.regime = Regime::ExistenceMixedScales;
  mixed.schedules = {Schedule{"q", 1.0, 1.0, 1.0}, Schedule{"p", 0.5, 1.0, 0.5}};
  const auto lam = lambda_schedule(mixed, zero, 0.01);
  EXPECT_DOUBLE_EQ(lam[0].second, 0.01);
  EXPECT_NEAR(lam[1].second, 0.1, 1e-16);
}

TEST(LambdaSchedule, Preconditions) {
  Verdict v;
  v.regime = Regime::Inconclusive;
  EXPECT_THROW(lambda_schedule(v, {}, 0.1), PreconditionError);
  const OrbifoldConfig c = antisymmetric_pair(1.0);
  const Verdict ok = classify(c);
  BalancingSolution zero{Eigen::VectorXd::Zero(2), 0.0, 1};
  EXPECT_THROW(lambda_schedule(ok, zero, 0.0), PreconditionError);
  EXPECT_THROW(lambda_schedule(ok, BalancingSolution{Eigen::VectorXd::Zero(3), 0.0, 1}, 0.1), DimensionError);
}
