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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "misrec/dataset.hpp"

namespace misrec {

using FactorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct AlsConfig {
  int factors = 50;
  double lambda = 0.1;
  int iterations = 20;
  double alpha = 40.0;  // confidence c = 1 + alpha * r
  double init_scale = 0.1;
  std::uint64_t seed = 1;
  // Row solves within a half-sweep; results do not depend on it.
  int workers = 1;

  // Strict configuration check (lambda > 0); throws ConfigError.
  void Validate() const;

  friend bool operator==(const AlsConfig&, const AlsConfig&) = default;
};

// One stored cell of a weighted factorization target. Cells that are not
// stored have preference 0 and confidence 1.
struct WeightedCell {
  std::uint32_t col;
  double preference;
  double confidence;
};

// Row-major sparse target matrix for the weighted least-squares objective
//   sum_{r,c} conf_rc (pref_rc - x_r . y_c)^2 + lambda (|X|^2 + |Y|^2).
class WeightedTarget {
 public:
  WeightedTarget(std::size_t rows, std::size_t cols,
                 std::vector<std::vector<WeightedCell>> row_cells);

  // Binary implicit feedback: every interaction has preference 1 and
  // confidence 1 + alpha.
  static WeightedTarget FromDataset(const Dataset& ds, double alpha);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::span<const WeightedCell> row(std::size_t r) const { return by_row_[r]; }
  std::span<const WeightedCell> col(std::size_t c) const { return by_col_[c]; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<WeightedCell>> by_row_;
  std::vector<std::vector<WeightedCell>> by_col_;  // WeightedCell::col holds the row
};

struct FactorModel {
  FactorMatrix user_factors;  // users x factors
  FactorMatrix item_factors;  // items x factors
  // Objective after each half-sweep (user side, then item side).
  std::vector<double> objective_trace;
};

// Alternating least squares on a binary dataset. Factors start uniform in
// [0, init_scale]; each iteration solves every user row, then every item row.
// Throws NumericalError naming the half-sweep on a singular or non-finite
// solve. Accepts lambda == 0 (unlike AlsConfig::Validate) so that such
// failures surface as numerical errors.
FactorModel FitAls(const Dataset& ds, const AlsConfig& cfg);
FactorModel FitAls(const WeightedTarget& target, const AlsConfig& cfg);

// Exact minimizer of one row's weighted ridge problem given the opposite
// side's factors:
//   (G + sum_c (conf_c - 1) y_c y_c^T + lambda I) x = sum_c conf_c pref_c y_c
// where G = fixed^T fixed is supplied by the caller.
Eigen::VectorXd SolveRow(const FactorMatrix& fixed, const Eigen::MatrixXd& gram,
                         std::span<const WeightedCell> cells, double lambda);
// Convenience overload computing the Gram matrix itself.
Eigen::VectorXd SolveRow(const FactorMatrix& fixed, std::span<const WeightedCell> cells,
                         double lambda);

// Full objective. Uses sum over all cells of (x.y)^2 = trace(X^T X Y^T Y)
// plus per-stored-cell corrections, O((U + I) k^2 + nnz k).
double Objective(const WeightedTarget& target, const FactorMatrix& users,
                 const FactorMatrix& items, double lambda);
double Objective(const Dataset& ds, const FactorModel& model, const AlsConfig& cfg);

// x_u . y_i; throws ContractError on a bad index.
double Predict(const FactorModel& model, UserIndex u, ItemIndex i);

}  // namespace misrec
