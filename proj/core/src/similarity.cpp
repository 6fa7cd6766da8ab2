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

#include "misrec/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "misrec/error.hpp"
#include "misrec/parallel.hpp"

namespace misrec {

std::string_view SimilarityToken(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::kJaccard:
      return "jac";
    case SimilarityKind::kCosine:
      return "cos";
    case SimilarityKind::kPearson:
      return "pearson";
  }
  return "?";
}

SimilarityKind ParseSimilarityKind(std::string_view token) {
  if (token == "jac" || token == "jaccard") return SimilarityKind::kJaccard;
  if (token == "cos" || token == "cosine") return SimilarityKind::kCosine;
  if (token == "pearson") return SimilarityKind::kPearson;
  throw ConfigError("unknown similarity '" + std::string(token) + "' (jac, cos, pearson)");
}

double SimilarityFromCounts(std::size_t a, std::size_t b, std::size_t common, std::size_t n,
                            SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::kJaccard: {
      const std::size_t uni = a + b - common;
      return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
    }
    case SimilarityKind::kCosine: {
      if (a == 0 || b == 0) return 0.0;
      return static_cast<double>(common) /
             std::sqrt(static_cast<double>(a) * static_cast<double>(b));
    }
    case SimilarityKind::kPearson: {
      const double var =
          static_cast<double>(a) * static_cast<double>(n - a) * static_cast<double>(b) *
          static_cast<double>(n - b);
      if (var == 0.0) return 0.0;
      const auto cov = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(common) -
                       static_cast<std::int64_t>(a) * static_cast<std::int64_t>(b);
      return static_cast<double>(cov) / std::sqrt(var);
    }
  }
  return 0.0;
}

double Similarity(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                  SimilarityKind kind, std::size_t universe_size) {
  if (universe_size == 0) throw ContractError("universe size must be >= 1");
  if ((!a.empty() && a.back() >= universe_size) || (!b.empty() && b.back() >= universe_size)) {
    throw ContractError("vector index outside the universe");
  }
  std::size_t common = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++common;
      ++ia;
      ++ib;
    }
  }
  return SimilarityFromCounts(a.size(), b.size(), common, universe_size, kind);
}

namespace {

// Co-occurrence counting through the opposite axis; `counts` is scratch of
// size num_entities, left zeroed on return.
Neighborhood Neighbors(const Dataset& ds, Axis axis, std::uint32_t anchor, std::size_t k,
                       SimilarityKind kind, std::vector<std::uint32_t>& counts,
                       std::vector<std::uint32_t>& touched) {
  const bool users = axis == Axis::kUsers;
  const std::size_t n_entities = users ? ds.num_users() : ds.num_items();
  const std::size_t universe = users ? ds.num_items() : ds.num_users();
  if (anchor >= n_entities) throw ContractError("neighborhood anchor out of range");
  if (k < 1) throw ContractError("neighborhood size must be >= 1");

  auto vec = [&](std::uint32_t e) { return users ? ds.user_items(e) : ds.item_users(e); };
  auto via = [&](std::uint32_t x) { return users ? ds.item_users(x) : ds.user_items(x); };

  touched.clear();
  for (std::uint32_t x : vec(anchor)) {
    for (std::uint32_t e : via(x)) {
      if (e == anchor) continue;
      if (counts[e]++ == 0) touched.push_back(e);
    }
  }

  Neighborhood nb;
  nb.anchor = anchor;
  const std::size_t a = vec(anchor).size();
  for (std::uint32_t e : touched) {
    const double w = SimilarityFromCounts(a, vec(e).size(), counts[e], universe, kind);
    counts[e] = 0;
    if (w > 0.0) nb.members.push_back({e, w});
  }
  auto better = [](const Neighbor& x, const Neighbor& y) {
    return x.weight > y.weight || (x.weight == y.weight && x.index < y.index);
  };
  if (nb.members.size() > k) {
    std::partial_sort(nb.members.begin(), nb.members.begin() + static_cast<std::ptrdiff_t>(k),
                      nb.members.end(), better);
    nb.members.resize(k);
  } else {
    std::sort(nb.members.begin(), nb.members.end(), better);
  }
  return nb;
}

}  // namespace

Neighborhood TopKNeighbors(const Dataset& ds, Axis axis, std::uint32_t anchor, std::size_t k,
                           SimilarityKind kind) {
  std::vector<std::uint32_t> counts(axis == Axis::kUsers ? ds.num_users() : ds.num_items(), 0);
  std::vector<std::uint32_t> touched;
  return Neighbors(ds, axis, anchor, k, kind, counts, touched);
}

std::vector<Neighborhood> AllNeighborhoods(const Dataset& ds, Axis axis, std::size_t k,
                                           SimilarityKind kind, int workers) {
  const std::size_t n = axis == Axis::kUsers ? ds.num_users() : ds.num_items();
  std::vector<Neighborhood> out(n);
  const std::size_t threads = static_cast<std::size_t>(std::max(1, workers));
  const std::size_t block = (n + threads - 1) / std::max<std::size_t>(threads, 1);
  ParallelFor(threads, workers, [&](std::size_t t) {
    std::vector<std::uint32_t> counts(n, 0);
    std::vector<std::uint32_t> touched;
    const std::size_t end = std::min(n, (t + 1) * block);
    for (std::size_t e = t * block; e < end; ++e) {
      out[e] = Neighbors(ds, axis, static_cast<std::uint32_t>(e), k, kind, counts, touched);
    }
  });
  return out;
}

}  // namespace misrec
