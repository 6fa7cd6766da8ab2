// Copyright 2026 The misrec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "misrec/als.hpp"
#include "misrec/error.hpp"
#include "oracles.hpp"

namespace misrec {
namespace {

FactorMatrix RandomMatrix(std::mt19937_64& gen, Eigen::Index rows, Eigen::Index cols) {
  FactorMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = static_cast<double>(gen() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  return m;
}

double Unit(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

TEST(SolveRow, ScalarExample) {
  FactorMatrix y(1, 1);
  y(0, 0) = 2.0;
  const std::vector<WeightedCell> cells{{0, 1.0, 1.0}};
  const auto x = SolveRow(y, cells, 0.0);
  EXPECT_DOUBLE_EQ(x(0), 0.5);
}

TEST(SolveRow, EmptyRowIsZero) {
  std::mt19937_64 gen(1);
  const auto y = RandomMatrix(gen, 5, 3);
  const auto x = SolveRow(y, {}, 0.1);
  EXPECT_EQ(x.norm(), 0.0);
}

TEST(SolveRow, MatchesDenseOracle) {
  std::mt19937_64 gen(12345);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index cols = 1 + static_cast<Eigen::Index>(gen() % 8);
    const Eigen::Index k = 1 + static_cast<Eigen::Index>(gen() % 6);
    const auto y = RandomMatrix(gen, cols, k);
    std::vector<WeightedCell> cells;
    std::vector<double> pref(cols, 0.0), conf(cols, 1.0);
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (Unit(gen) < 0.5) {
        const double p = Unit(gen) < 0.8 ? 1.0 : Unit(gen);
        const double w = 1.0 + 40.0 * Unit(gen);
        cells.push_back({static_cast<std::uint32_t>(c), p, w});
        pref[c] = p;
        conf[c] = w;
      }
    }
    const double lambda = 0.01 + Unit(gen);
    const auto got = SolveRow(y, cells, lambda);
    const auto want = testing::DenseSolveRow(y, pref, conf, lambda);
    EXPECT_LT((got - want).cwiseAbs().maxCoeff(), 1e-8) << "trial " << trial;
  }
}

TEST(Objective, MatchesNaiveOracle) {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto ds = testing::RandomDataset(trial + 1, 7, 9, 0.3);
    const auto target = WeightedTarget::FromDataset(ds, 40.0);
    const auto x = RandomMatrix(gen, 7, 3);
    const auto y = RandomMatrix(gen, 9, 3);
    const double got = Objective(target, x, y, 0.1);
    const double want = testing::NaiveObjective(target, x, y, 0.1);
    EXPECT_NEAR(got, want, 1e-10 * std::max(1.0, std::abs(want)));
  }
}

TEST(Objective, ClosedForms) {
  const auto ds = testing::RandomDataset(3, 6, 8, 0.4);
  const auto target = WeightedTarget::FromDataset(ds, 40.0);
  const FactorMatrix zx = FactorMatrix::Zero(6, 2), zy = FactorMatrix::Zero(8, 2);
  EXPECT_DOUBLE_EQ(Objective(target, zx, zy, 0.5), 41.0 * ds.num_interactions());

  // Exact reconstruction of the identity with lambda = 0.
  const auto id = testing::DatasetFromProfiles({{0}, {1}, {2}}, 3);
  const FactorMatrix eye = FactorMatrix::Identity(3, 3);
  EXPECT_NEAR(Objective(WeightedTarget::FromDataset(id, 40.0), eye, eye, 0.0), 0.0, 1e-15);
}

TEST(FitAls, IdentityIsReproduced) {
  const auto ds = testing::DatasetFromProfiles({{0}, {1}, {2}, {3}}, 4);
  AlsConfig cfg;
  cfg.factors = 4;
  cfg.lambda = 1e-4;
  cfg.alpha = 40;
  cfg.iterations = 30;
  const auto model = FitAls(ds, cfg);
  for (UserIndex u = 0; u < 4; ++u) {
    for (ItemIndex i = 0; i < 4; ++i) {
      EXPECT_NEAR(Predict(model, u, i), u == i ? 1.0 : 0.0, 0.05);
      if (u != i) EXPECT_GT(Predict(model, u, u), Predict(model, u, i));
    }
  }
}

TEST(FitAls, TraceIsMonotoneAndExact) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto ds = testing::RandomDataset(seed, 15, 25, 0.2);
    AlsConfig cfg;
    cfg.factors = 5;
    cfg.iterations = 8;
    cfg.seed = seed;
    const auto model = FitAls(ds, cfg);
    ASSERT_EQ(model.objective_trace.size(), 16u);
    for (std::size_t t = 1; t < model.objective_trace.size(); ++t) {
      EXPECT_LE(model.objective_trace[t],
                model.objective_trace[t - 1] * (1.0 + 1e-9));
    }
    EXPECT_NEAR(model.objective_trace.back(), Objective(ds, model, cfg),
                1e-9 * model.objective_trace.back());
  }
}

TEST(FitAls, WorkersDoNotChangeResult) {
  const auto ds = testing::RandomDataset(8, 30, 40, 0.15);
  AlsConfig cfg;
  cfg.factors = 6;
  cfg.iterations = 5;
  const auto a = FitAls(ds, cfg);
  cfg.workers = 4;
  const auto b = FitAls(ds, cfg);
  EXPECT_EQ(a.user_factors, b.user_factors);
  EXPECT_EQ(a.item_factors, b.item_factors);
  EXPECT_EQ(a.objective_trace, b.objective_trace);
}

TEST(FitAls, InitializationIsSeeded) {
  const auto ds = testing::RandomDataset(8, 10, 12, 0.3);
  AlsConfig cfg;
  cfg.factors = 3;
  cfg.iterations = 1;
  EXPECT_EQ(FitAls(ds, cfg).user_factors, FitAls(ds, cfg).user_factors);
  auto other = cfg;
  other.seed = 2;
  EXPECT_NE(FitAls(ds, cfg).user_factors, FitAls(ds, other).user_factors);
}

TEST(FitAls, ZeroInteractionUserStaysFinite) {
  const auto ds = testing::DatasetFromProfiles({{0, 1}, {}, {2}}, 3);
  AlsConfig cfg;
  cfg.factors = 2;
  const auto model = FitAls(ds, cfg);
  EXPECT_TRUE(model.user_factors.allFinite());
  EXPECT_NEAR(model.user_factors.row(1).norm(), 0.0, 1e-12);
}

TEST(FitAls, SingularSystemIsNumericalError) {
  // lambda = 0 and more factors than interacting rows: the item side
  // Gram matrix is rank deficient.
  const auto ds = testing::DatasetFromProfiles({{0}}, 2);
  AlsConfig cfg;
  cfg.factors = 3;
  cfg.lambda = 0.0;
  cfg.alpha = 0.0;
  cfg.iterations = 2;
  try {
    FitAls(ds, cfg);
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("half-sweep"), std::string::npos);
  }
  EXPECT_THROW(cfg.Validate(), ConfigError);
}

TEST(FitAls, NoiselessRankThreeRecovery) {
  std::mt19937_64 gen(2024);
  const auto u = RandomMatrix(gen, 20, 3);
  const auto v = RandomMatrix(gen, 30, 3);
  const FactorMatrix p = u * v.transpose();
  std::vector<std::vector<WeightedCell>> rows(20);
  for (int r = 0; r < 20; ++r)
    for (int c = 0; c < 30; ++c) rows[r].push_back({static_cast<std::uint32_t>(c), p(r, c), 1.0});
  const WeightedTarget target(20, 30, rows);
  AlsConfig cfg;
  cfg.factors = 3;
  cfg.lambda = 1e-6;
  cfg.alpha = 0.0;
  cfg.iterations = 50;
  const auto model = FitAls(target, cfg);
  const FactorMatrix recon = model.user_factors * model.item_factors.transpose();
  EXPECT_LT((recon - p).cwiseAbs().maxCoeff(), 1e-3);
}

TEST(Predict, UnitVectorsAndBounds) {
  FactorModel m;
  m.user_factors = FactorMatrix::Constant(1, 3, 1.0 / std::sqrt(3.0));
  m.item_factors = FactorMatrix::Constant(2, 3, 1.0 / std::sqrt(3.0));
  EXPECT_NEAR(Predict(m, 0, 1), 1.0, 1e-15);
  EXPECT_THROW(Predict(m, 1, 0), ContractError);
  m.user_factors.setZero();
  EXPECT_EQ(Predict(m, 0, 0), 0.0);
}

}  // namespace
}  // namespace misrec
