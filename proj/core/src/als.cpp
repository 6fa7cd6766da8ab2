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

#include "misrec/als.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "misrec/error.hpp"
#include "misrec/parallel.hpp"
#include "misrec/random.hpp"

namespace misrec {

void AlsConfig::Validate() const {
  if (factors <= 0) throw ConfigError("mf.factors must be > 0");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("mf.lambda must be > 0");
  if (iterations < 1) throw ConfigError("mf.iters must be >= 1");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("mf.alpha must be >= 0");
  if (!(init_scale > 0.0) || !std::isfinite(init_scale)) {
    throw ConfigError("mf.init_scale must be > 0");
  }
  if (workers < 1) throw ConfigError("workers must be >= 1");
}

WeightedTarget::WeightedTarget(std::size_t rows, std::size_t cols,
                               std::vector<std::vector<WeightedCell>> row_cells)
    : rows_(rows), cols_(cols), by_row_(std::move(row_cells)), by_col_(cols) {
  if (by_row_.size() != rows_) throw ContractError("row cell lists must match row count");
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& cell : by_row_[r]) {
      if (cell.col >= cols_) throw ContractError("target cell column out of range");
      by_col_[cell.col].push_back(
          {static_cast<std::uint32_t>(r), cell.preference, cell.confidence});
    }
  }
}

WeightedTarget WeightedTarget::FromDataset(const Dataset& ds, double alpha) {
  std::vector<std::vector<WeightedCell>> rows(ds.num_users());
  for (UserIndex u = 0; u < ds.num_users(); ++u) {
    for (ItemIndex i : ds.user_items(u)) rows[u].push_back({i, 1.0, 1.0 + alpha});
  }
  return WeightedTarget(ds.num_users(), ds.num_items(), std::move(rows));
}

Eigen::VectorXd SolveRow(const FactorMatrix& fixed, const Eigen::MatrixXd& gram,
                         std::span<const WeightedCell> cells, double lambda) {
  const Eigen::Index k = fixed.cols();
  if (gram.rows() != k || gram.cols() != k) throw ContractError("Gram matrix shape mismatch");
  Eigen::MatrixXd a = gram;
  a.diagonal().array() += lambda;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
  for (const auto& cell : cells) {
    if (cell.col >= static_cast<std::uint32_t>(fixed.rows())) {
      throw ContractError("row cell references a missing factor row");
    }
    const auto y = fixed.row(cell.col).transpose();
    a.selfadjointView<Eigen::Lower>().rankUpdate(y, cell.confidence - 1.0);
    b.noalias() += (cell.confidence * cell.preference) * y;
  }
  // LLT reads the lower triangle only, which is where the updates went.
  Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> llt(a);
  if (llt.info() != Eigen::Success ||
      llt.rcond() < std::numeric_limits<double>::epsilon()) {
    throw NumericalError("singular row system");
  }
  Eigen::VectorXd x = llt.solve(b);
  if (!x.allFinite()) throw NumericalError("non-finite row solution");
  return x;
}

Eigen::VectorXd SolveRow(const FactorMatrix& fixed, std::span<const WeightedCell> cells,
                         double lambda) {
  const Eigen::MatrixXd gram = fixed.transpose() * fixed;
  return SolveRow(fixed, gram, cells, lambda);
}

namespace {

// Re-solves every row of `solved` against `fixed`.
void HalfSweep(FactorMatrix& solved, const FactorMatrix& fixed, const WeightedTarget& target,
               bool by_row, double lambda, int workers, const std::string& label) {
  const Eigen::MatrixXd gram = fixed.transpose() * fixed;
  const std::size_t n = static_cast<std::size_t>(solved.rows());
  ParallelFor(n, workers, [&](std::size_t r) {
    auto cells = by_row ? target.row(r) : target.col(r);
    try {
      solved.row(static_cast<Eigen::Index>(r)) = SolveRow(fixed, gram, cells, lambda).transpose();
    } catch (const NumericalError& e) {
      throw NumericalError(label + ", row " + std::to_string(r) + ": " + e.what());
    }
  });
}

}  // namespace

FactorModel FitAls(const WeightedTarget& target, const AlsConfig& cfg) {
  if (cfg.factors <= 0 || cfg.iterations < 1 || !(cfg.lambda >= 0.0) || !(cfg.alpha >= 0.0) ||
      !(cfg.init_scale > 0.0)) {
    throw ConfigError("invalid ALS configuration");
  }
  if (target.rows() == 0 || target.cols() == 0) throw FitError("cannot factorize an empty matrix");

  FactorModel model;
  model.user_factors.resize(static_cast<Eigen::Index>(target.rows()), cfg.factors);
  model.item_factors.resize(static_cast<Eigen::Index>(target.cols()), cfg.factors);
  Rng rng(cfg.seed);
  for (Eigen::Index r = 0; r < model.user_factors.rows(); ++r) {
    for (Eigen::Index c = 0; c < cfg.factors; ++c) {
      model.user_factors(r, c) = rng.UniformReal() * cfg.init_scale;
    }
  }
  for (Eigen::Index r = 0; r < model.item_factors.rows(); ++r) {
    for (Eigen::Index c = 0; c < cfg.factors; ++c) {
      model.item_factors(r, c) = rng.UniformReal() * cfg.init_scale;
    }
  }

  model.objective_trace.reserve(2 * static_cast<std::size_t>(cfg.iterations));
  for (int it = 0; it < cfg.iterations; ++it) {
    const std::string sweep = "iteration " + std::to_string(it + 1);
    HalfSweep(model.user_factors, model.item_factors, target, true, cfg.lambda, cfg.workers,
              sweep + " user half-sweep");
    model.objective_trace.push_back(
        Objective(target, model.user_factors, model.item_factors, cfg.lambda));
    HalfSweep(model.item_factors, model.user_factors, target, false, cfg.lambda, cfg.workers,
              sweep + " item half-sweep");
    model.objective_trace.push_back(
        Objective(target, model.user_factors, model.item_factors, cfg.lambda));
    if (!std::isfinite(model.objective_trace.back())) {
      throw NumericalError(sweep + ": non-finite objective");
    }
  }
  return model;
}

FactorModel FitAls(const Dataset& ds, const AlsConfig& cfg) {
  if (ds.empty()) throw FitError("cannot fit MF on an empty dataset");
  return FitAls(WeightedTarget::FromDataset(ds, cfg.alpha), cfg);
}

double Objective(const WeightedTarget& target, const FactorMatrix& users,
                 const FactorMatrix& items, double lambda) {
  if (static_cast<std::size_t>(users.rows()) != target.rows() ||
      static_cast<std::size_t>(items.rows()) != target.cols() || users.cols() != items.cols()) {
    throw ContractError("factor shapes do not match the target");
  }
  const Eigen::MatrixXd gu = users.transpose() * users;
  const Eigen::MatrixXd gi = items.transpose() * items;
  // Every cell as if unstored: (x.y)^2 summed = <X^T X, Y^T Y>.
  double loss = (gu.array() * gi.array()).sum();
  for (std::size_t r = 0; r < target.rows(); ++r) {
    const auto x = users.row(static_cast<Eigen::Index>(r));
    for (const auto& cell : target.row(r)) {
      const double s = x.dot(items.row(cell.col));
      const double e = cell.preference - s;
      loss += cell.confidence * e * e - s * s;
    }
  }
  return loss + lambda * (users.squaredNorm() + items.squaredNorm());
}

double Objective(const Dataset& ds, const FactorModel& model, const AlsConfig& cfg) {
  return Objective(WeightedTarget::FromDataset(ds, cfg.alpha), model.user_factors,
                   model.item_factors, cfg.lambda);
}

double Predict(const FactorModel& model, UserIndex u, ItemIndex i) {
  if (u >= model.user_factors.rows() || i >= model.item_factors.rows()) {
    throw ContractError("prediction index out of range");
  }
  return model.user_factors.row(u).dot(model.item_factors.row(i));
}

}  // namespace misrec
