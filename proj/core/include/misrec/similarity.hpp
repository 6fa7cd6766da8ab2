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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "misrec/dataset.hpp"

namespace misrec {

enum class SimilarityKind { kJaccard, kCosine, kPearson };

// "jac", "cos", "pearson".
std::string_view SimilarityToken(SimilarityKind kind);
SimilarityKind ParseSimilarityKind(std::string_view token);

enum class Axis { kUsers, kItems };

// Similarity of two binary vectors given |A|, |B|, |A ∩ B| and the universe
// size n. Pearson is the phi coefficient over the whole universe. Every 0/0
// form evaluates to 0.
double SimilarityFromCounts(std::size_t a, std::size_t b, std::size_t common, std::size_t n,
                            SimilarityKind kind);

// Similarity of two sorted index sets over a universe of `universe_size`.
// Throws ContractError when an index falls outside the universe.
double Similarity(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                  SimilarityKind kind, std::size_t universe_size);

struct Neighbor {
  std::uint32_t index;
  double weight;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

// The closest entities to `anchor`: at most k members, strictly positive
// weights, ordered by descending weight then ascending index, anchor excluded.
struct Neighborhood {
  std::uint32_t anchor = 0;
  std::vector<Neighbor> members;
};

Neighborhood TopKNeighbors(const Dataset& ds, Axis axis, std::uint32_t anchor, std::size_t k,
                           SimilarityKind kind);

// Neighborhoods of every entity on the axis, indexed by anchor.
std::vector<Neighborhood> AllNeighborhoods(const Dataset& ds, Axis axis, std::size_t k,
                                           SimilarityKind kind, int workers = 1);

}  // namespace misrec
