// Copyright 2026 The care-dtn Authors
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

// Redundancy of a labeled item collection.
//
// Pairwise human labels become a similarity graph. Its maximal cliques are
// the maximally similar sets; a minimum hitting set over those cliques is the
// smallest collection of items that still conveys every piece of content,
// and redundancy = 1 - |cover| / |items|. Similarity is deliberately not
// closed transitively: A~B and B~C does not make A~C.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace care {

/// One labeled pair with one Likert score (0..5) per labeler.
struct LabelRecord {
  std::string item_a;
  std::string item_b;
  std::vector<int> scores;
};

/// Mean score at or above which a pair counts as similar.
inline constexpr int kSimilarScore = 3;

/// Sorted item indices.
using ItemSet = std::vector<std::size_t>;

class SimilarityGraph {
 public:
  SimilarityGraph() = default;
  /// Items are de-duplicated and sorted; indices follow that order.
  explicit SimilarityGraph(std::vector<std::string> items);

  std::size_t size() const { return items_.size(); }
  const std::string& item(std::size_t i) const { return items_[i]; }
  const std::vector<std::string>& items() const { return items_; }

  /// Index of an item id; throws InvalidInput for unknown ids.
  std::size_t index_of(std::string_view id) const;
  bool contains(std::string_view id) const;

  /// Adds the undirected edge i--j. Self-loops are rejected.
  void add_edge(std::size_t i, std::size_t j);
  bool similar(std::size_t i, std::size_t j) const { return adj_[i * items_.size() + j] != 0; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return neighbors_[i]; }
  std::size_t edge_count() const { return edge_count_; }

 private:
  std::vector<std::string> items_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<unsigned char> adj_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::size_t edge_count_ = 0;
};

/// Builds the graph: edge (a,b) iff the mean score is >= 3. Unlabeled pairs
/// are non-edges. Throws on unknown items, self pairs, scores outside 0..5,
/// empty score lists and repeated unordered pairs.
SimilarityGraph aggregate_labels(const std::vector<LabelRecord>& records,
                                 std::vector<std::string> items);

/// Maximal cliques (Bron-Kerbosch with pivoting), including singletons for
/// isolated items. Each set is sorted and the list is sorted
/// lexicographically, so the output does not depend on edge insertion order.
std::vector<ItemSet> maximal_similar_sets(const SimilarityGraph& g);

struct SimilarSetCover {
  std::vector<ItemSet> maximal_sets;
  ItemSet cover;
  double redundancy = 0.0;
  bool exact = false;  // false when the greedy approximation was used
};

/// Largest item count for which min_set_cover runs the exact search.
inline constexpr std::size_t kExactCoverLimit = 25;

/// Smallest item set hitting every set. Branch and bound; exponential in the
/// worst case, intended for small instances.
ItemSet exact_hitting_set(const std::vector<ItemSet>& sets, std::size_t n_items);

/// Greedy: repeatedly take the item that hits the most still-unhit sets,
/// ties broken by the lowest index.
ItemSet greedy_hitting_set(const std::vector<ItemSet>& sets, std::size_t n_items);

/// True when every set contains at least one member of `cover`.
bool is_cover(const std::vector<ItemSet>& sets, const ItemSet& cover);

/// Exact when n_items <= exact_limit, greedy otherwise. Every item must
/// belong to at least one set.
SimilarSetCover min_set_cover(std::vector<ItemSet> sets, std::size_t n_items,
                              std::size_t exact_limit = kExactCoverLimit);

/// Convenience: maximal sets + cover for a graph.
SimilarSetCover analyze_redundancy(const SimilarityGraph& g,
                                   std::size_t exact_limit = kExactCoverLimit);

// ---- file formats ---------------------------------------------------------

/// Label CSV: item_a,item_b,score1,score2,... An optional header row is
/// recognised by a non-numeric third field.
std::vector<LabelRecord> read_labels_csv(const std::filesystem::path& path);
std::vector<LabelRecord> parse_labels_csv(std::string_view text);

/// Items manifest: one id per line; blank lines and '#' comments skipped.
std::vector<std::string> read_items_file(const std::filesystem::path& path);

/// CSV report with columns record,index,value (record in {set,cover,summary}).
void write_cover_csv(std::ostream& out, const SimilarityGraph& g, const SimilarSetCover& c);
void write_cover_text(std::ostream& out, const SimilarityGraph& g, const SimilarSetCover& c);

}  // namespace care
