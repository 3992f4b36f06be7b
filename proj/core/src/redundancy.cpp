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

#include "care/redundancy.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <utility>

#include <fmt/format.h>

#include "care/csv.hpp"
#include "care/error.hpp"

namespace care {

SimilarityGraph::SimilarityGraph(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  items_ = std::move(items);
  for (std::size_t i = 0; i < items_.size(); ++i) index_.emplace(items_[i], i);
  adj_.assign(items_.size() * items_.size(), 0);
  neighbors_.resize(items_.size());
}

std::size_t SimilarityGraph::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw InvalidInput(fmt::format("unknown item '{}'", id));
  return it->second;
}

bool SimilarityGraph::contains(std::string_view id) const {
  return index_.count(std::string(id)) != 0;
}

void SimilarityGraph::add_edge(std::size_t i, std::size_t j) {
  if (i == j) throw InvalidInput(fmt::format("self-loop on item '{}'", items_[i]));
  if (similar(i, j)) return;
  const std::size_t n = items_.size();
  adj_[i * n + j] = adj_[j * n + i] = 1;
  auto insert_sorted = [](std::vector<std::size_t>& v, std::size_t x) {
    v.insert(std::lower_bound(v.begin(), v.end(), x), x);
  };
  insert_sorted(neighbors_[i], j);
  insert_sorted(neighbors_[j], i);
  ++edge_count_;
}

SimilarityGraph aggregate_labels(const std::vector<LabelRecord>& records,
                                 std::vector<std::string> items) {
  SimilarityGraph g(std::move(items));
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& r : records) {
    if (r.item_a == r.item_b) {
      throw InvalidInput(fmt::format("label pairs item '{}' with itself", r.item_a));
    }
    const std::size_t a = g.index_of(r.item_a);
    const std::size_t b = g.index_of(r.item_b);
    if (!seen.emplace(std::min(a, b), std::max(a, b)).second) {
      throw InvalidInput(fmt::format("duplicate label for pair ({}, {})", r.item_a, r.item_b));
    }
    if (r.scores.empty()) {
      throw InvalidInput(fmt::format("no scores for pair ({}, {})", r.item_a, r.item_b));
    }
    int sum = 0;
    for (int s : r.scores) {
      if (s < 0 || s > 5) {
        throw InvalidInput(fmt::format("score {} for ({}, {}) outside 0..5", s, r.item_a, r.item_b));
      }
      sum += s;
    }
    // mean >= 3  <=>  sum >= 3 * count, kept in integers.
    if (sum >= kSimilarScore * static_cast<int>(r.scores.size())) g.add_edge(a, b);
  }
  return g;
}

namespace {

// Bron-Kerbosch with Tomita pivoting over sorted index vectors.
class CliqueEnumerator {
 public:
  explicit CliqueEnumerator(const SimilarityGraph& g) : g_(g) {}

  std::vector<ItemSet> run() {
    ItemSet r;
    ItemSet p(g_.size());
    std::iota(p.begin(), p.end(), std::size_t{0});
    expand(r, p, {});
    for (auto& c : cliques_) std::sort(c.begin(), c.end());
    std::sort(cliques_.begin(), cliques_.end());
    return std::move(cliques_);
  }

 private:
  ItemSet intersect_neighbors(const ItemSet& s, std::size_t v) const {
    ItemSet out;
    const auto& nb = g_.neighbors(v);
    std::set_intersection(s.begin(), s.end(), nb.begin(), nb.end(), std::back_inserter(out));
    return out;
  }

  void expand(ItemSet& r, ItemSet p, ItemSet x) {
    if (p.empty()) {
      if (x.empty()) cliques_.push_back(r);
      return;
    }
    // Pivot: the vertex of P u X with the most neighbours inside P.
    std::size_t pivot = p.front();
    std::size_t best = 0;
    for (const ItemSet* s : {&p, &x}) {
      for (std::size_t u : *s) {
        std::size_t cnt = intersect_neighbors(p, u).size();
        if (cnt > best || (cnt == best && u < pivot)) {
          best = cnt;
          pivot = u;
        }
      }
    }
    ItemSet candidates;
    const auto& pn = g_.neighbors(pivot);
    std::set_difference(p.begin(), p.end(), pn.begin(), pn.end(), std::back_inserter(candidates));
    for (std::size_t v : candidates) {
      r.push_back(v);
      expand(r, intersect_neighbors(p, v), intersect_neighbors(x, v));
      r.pop_back();
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }

  const SimilarityGraph& g_;
  std::vector<ItemSet> cliques_;
};

// Dense bitset over set indices.
class Bits {
 public:
  explicit Bits(std::size_t n = 0) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }
  void and_not(const Bits& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
  }
  std::size_t count_and(const Bits& o) const {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) c += std::popcount(words_[k] & o.words_[k]);
    return c;
  }
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

class HittingSetSearch {
 public:
  HittingSetSearch(const std::vector<ItemSet>& sets, std::size_t n_items)
      : sets_(sets), item_sets_(n_items, Bits(sets.size())) {
    for (std::size_t s = 0; s < sets.size(); ++s) {
      for (std::size_t i : sets[s]) item_sets_[i].set(s);
    }
  }

  ItemSet solve(ItemSet upper_bound) {
    best_ = std::move(upper_bound);
    Bits open(sets_.size());
    for (std::size_t s = 0; s < sets_.size(); ++s) open.set(s);
    ItemSet chosen;
    recurse(open, chosen);
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  // Number of pairwise disjoint open sets found greedily; each needs its own
  // cover item, so this bounds the remaining cost from below.
  std::size_t packing_bound(const Bits& open) const {
    std::vector<char> used(item_sets_.size(), 0);
    std::size_t bound = 0;
    open.for_each([&](std::size_t s) {
      for (std::size_t i : sets_[s]) {
        if (used[i]) return;
      }
      for (std::size_t i : sets_[s]) used[i] = 1;
      ++bound;
    });
    return bound;
  }

  void recurse(const Bits& open, ItemSet& chosen) {
    if (open.none()) {
      if (chosen.size() < best_.size()) best_ = chosen;
      return;
    }
    if (chosen.size() + packing_bound(open) >= best_.size()) return;

    // Branch on the open set with the fewest members.
    std::size_t pick = 0;
    std::size_t pick_size = SIZE_MAX;
    open.for_each([&](std::size_t s) {
      if (sets_[s].size() < pick_size) {
        pick_size = sets_[s].size();
        pick = s;
      }
    });
    std::vector<std::pair<std::size_t, std::size_t>> order;  // (-hits, item)
    for (std::size_t i : sets_[pick]) order.emplace_back(open.count_and(item_sets_[i]), i);
    std::sort(order.begin(), order.end(), [](auto a, auto b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (auto [hits, item] : order) {
      Bits next = open;
      next.and_not(item_sets_[item]);
      chosen.push_back(item);
      recurse(next, chosen);
      chosen.pop_back();
    }
  }

  const std::vector<ItemSet>& sets_;
  std::vector<Bits> item_sets_;
  ItemSet best_;
};

void require_coverable(const std::vector<ItemSet>& sets, std::size_t n_items) {
  std::vector<char> seen(n_items, 0);
  for (const auto& s : sets) {
    if (s.empty()) throw InvalidInput("set cover: empty set cannot be hit");
    for (std::size_t i : s) {
      if (i >= n_items) throw InvalidInput("set cover: item index out of range");
      seen[i] = 1;
    }
  }
  for (std::size_t i = 0; i < n_items; ++i) {
    if (!seen[i]) throw InvalidInput(fmt::format("set cover: item {} belongs to no set", i));
  }
}

}  // namespace

std::vector<ItemSet> maximal_similar_sets(const SimilarityGraph& g) {
  if (g.size() == 0) return {};
  return CliqueEnumerator(g).run();
}

ItemSet greedy_hitting_set(const std::vector<ItemSet>& sets, std::size_t n_items) {
  std::vector<char> hit(sets.size(), 0);
  std::vector<std::vector<std::size_t>> by_item(n_items);
  for (std::size_t s = 0; s < sets.size(); ++s) {
    for (std::size_t i : sets[s]) by_item.at(i).push_back(s);
  }
  std::vector<std::size_t> open_count(n_items);
  for (std::size_t i = 0; i < n_items; ++i) open_count[i] = by_item[i].size();

  ItemSet cover;
  std::size_t remaining = sets.size();
  while (remaining > 0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n_items; ++i) {
      if (open_count[i] > open_count[best]) best = i;
    }
    if (open_count[best] == 0) throw InvalidInput("set cover: a set has no members");
    cover.push_back(best);
    for (std::size_t s : by_item[best]) {
      if (hit[s]) continue;
      hit[s] = 1;
      --remaining;
      for (std::size_t i : sets[s]) --open_count[i];
    }
  }
  std::sort(cover.begin(), cover.end());
  return cover;
}

ItemSet exact_hitting_set(const std::vector<ItemSet>& sets, std::size_t n_items) {
  if (sets.empty()) return {};
  return HittingSetSearch(sets, n_items).solve(greedy_hitting_set(sets, n_items));
}

bool is_cover(const std::vector<ItemSet>& sets, const ItemSet& cover) {
  for (const auto& s : sets) {
    bool any = std::any_of(s.begin(), s.end(), [&](std::size_t i) {
      return std::find(cover.begin(), cover.end(), i) != cover.end();
    });
    if (!any) return false;
  }
  return true;
}

SimilarSetCover min_set_cover(std::vector<ItemSet> sets, std::size_t n_items,
                              std::size_t exact_limit) {
  require_coverable(sets, n_items);
  SimilarSetCover out;
  out.exact = n_items <= exact_limit;
  out.cover = out.exact ? exact_hitting_set(sets, n_items) : greedy_hitting_set(sets, n_items);
  out.maximal_sets = std::move(sets);
  out.redundancy =
      n_items == 0 ? 0.0
                   : 1.0 - static_cast<double>(out.cover.size()) / static_cast<double>(n_items);
  return out;
}

SimilarSetCover analyze_redundancy(const SimilarityGraph& g, std::size_t exact_limit) {
  return min_set_cover(maximal_similar_sets(g), g.size(), exact_limit);
}

// ---- file formats ---------------------------------------------------------

std::vector<LabelRecord> parse_labels_csv(std::string_view text) {
  auto rows = csv::parse(text);
  std::vector<LabelRecord> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() < 3) {
      throw InvalidInput(fmt::format("labels row {}: need item_a,item_b and at least one score", r + 1));
    }
    if (r == 0) {
      try {
        csv::parse_int(row[2], "score");
      } catch (const InvalidInput&) {
        continue;  // header
      }
    }
    LabelRecord rec{row[0], row[1], {}};
    for (std::size_t k = 2; k < row.size(); ++k) {
      if (row[k].empty()) continue;
      rec.scores.push_back(static_cast<int>(csv::parse_int(row[k], "labels score")));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<LabelRecord> read_labels_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_labels_csv(ss.str());
}

std::vector<std::string> read_items_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path.string()));
  std::vector<std::string> items;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    items.push_back(line.substr(first));
  }
  return items;
}

namespace {

std::string join_items(const SimilarityGraph& g, const ItemSet& s) {
  std::string out;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out.push_back(';');
    out += g.item(s[k]);
  }
  return out;
}

}  // namespace

void write_cover_csv(std::ostream& out, const SimilarityGraph& g, const SimilarSetCover& c) {
  csv::Writer w(out);
  w.values("record", "index", "value");
  for (std::size_t i = 0; i < c.maximal_sets.size(); ++i) {
    w.values("set", i, join_items(g, c.maximal_sets[i]));
  }
  for (std::size_t i = 0; i < c.cover.size(); ++i) w.values("cover", i, g.item(c.cover[i]));
  w.values("summary", "items", g.size());
  w.values("summary", "maximal_sets", c.maximal_sets.size());
  w.values("summary", "cover_size", c.cover.size());
  w.values("summary", "redundancy", csv::format_fixed(c.redundancy, 6));
  w.values("summary", "method", c.exact ? "exact" : "greedy");
}

void write_cover_text(std::ostream& out, const SimilarityGraph& g, const SimilarSetCover& c) {
  out << fmt::format("items: {}  similar pairs: {}\n", g.size(), g.edge_count());
  out << fmt::format("maximally similar sets ({}):\n", c.maximal_sets.size());
  for (const auto& s : c.maximal_sets) out << "  {" << join_items(g, s) << "}\n";
  out << fmt::format("cover ({}, {}): {{{}}}\n", c.cover.size(), c.exact ? "exact" : "greedy",
                     join_items(g, c.cover));
  out << fmt::format("redundancy: {:.6f}\n", c.redundancy);
}

}  // namespace care
