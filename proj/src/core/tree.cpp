/*
 * Copyright 2026 The Cortex Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "core/tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <utility>

#include "core/error.hpp"
#include "core/text.hpp"

namespace cortex {

void CheckParams(const TreeParams& params) {
  if (params.max_depth < 0) ThrowConfig("max depth must be >= 0");
  if (params.min_samples_leaf < 1) ThrowConfig("min samples per leaf must be >= 1");
  if (!(params.min_gain > 0.0) || !std::isfinite(params.min_gain)) {
    ThrowConfig("min gain must be a finite positive number");
  }
}

Tree::Tree(TreeKind kind, std::shared_ptr<const FeatureSchema> schema,
           std::vector<TreeNode> nodes, TreeParams params)
    : kind_(kind),
      schema_(std::move(schema)),
      nodes_(std::move(nodes)),
      params_(params) {
  if (!schema_) ThrowInternal("tree without schema");
  if (nodes_.empty()) ThrowInternal("tree without nodes");
  const int n = static_cast<int>(nodes_.size());
  for (const auto& node : nodes_) {
    if (node.is_leaf()) {
      if (node.probabilities.size() != schema_->num_classes()) {
        ThrowInternal("leaf probability vector has wrong length");
      }
      continue;
    }
    if (node.left <= 0 || node.left >= n || node.right <= 0 || node.right >= n) {
      ThrowInternal("internal node has dangling children");
    }
    if (node.split->feature >= schema_->num_features() ||
        !std::isfinite(node.split->threshold)) {
      ThrowInternal("invalid split rule");
    }
  }
}

size_t Tree::LeafIndex(std::span<const double> x) const {
  if (x.size() != schema_->num_features()) {
    ThrowData("feature vector has length " + std::to_string(x.size()) +
              ", tree expects " + std::to_string(schema_->num_features()));
  }
  size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const auto& s = *nodes_[i].split;
    i = static_cast<size_t>(x[s.feature] <= s.threshold ? nodes_[i].left
                                                          : nodes_[i].right);
  }
  return i;
}

Prediction Tree::Predict(std::span<const double> x) const {
  const auto& leaf = nodes_[LeafIndex(x)];
  return {leaf.label, leaf.probabilities};
}

std::vector<ClassIndex> Tree::PredictAll(const Dataset& data) const {
  std::vector<ClassIndex> out(data.num_rows());
  for (size_t i = 0; i < data.num_rows(); ++i) out[i] = Predict(data.row(i)).label;
  return out;
}

size_t Tree::num_leaves() const {
  return static_cast<size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

int Tree::depth() const {
  int d = 0;
  for (const auto& n : nodes_) d = std::max(d, n.depth);
  return d;
}

namespace {

std::vector<size_t> CountLabels(const Dataset& data, std::span<const size_t> rows) {
  std::vector<size_t> counts(data.num_classes(), 0);
  for (size_t r : rows) ++counts[static_cast<size_t>(data.labels()[r])];
  return counts;
}

bool IsPure(std::span<const size_t> counts) {
  return std::count_if(counts.begin(), counts.end(),
                       [](size_t c) { return c > 0; }) <= 1;
}

// Positions i such that the split falls between sorted values i and i + 1.
std::vector<size_t> CapCandidates(std::vector<size_t> positions, size_t cap) {
  if (cap == 0 || positions.size() <= cap) return positions;
  std::vector<size_t> picked;
  picked.reserve(cap);
  const size_t m = positions.size();
  for (size_t j = 0; j < cap; ++j) {
    const size_t idx = std::min(m - 1, (j + 1) * m / (cap + 1));
    if (picked.empty() || picked.back() != positions[idx]) {
      picked.push_back(positions[idx]);
    }
  }
  return picked;
}

}  // namespace

std::optional<SplitCandidate> FindBestSplit(const Dataset& data,
                                            std::span<const size_t> rows,
                                            const SplitCriterion& criterion,
                                            const TreeParams& params) {
  const size_t n = rows.size();
  if (n < 2) return std::nullopt;
  const auto parent_counts = CountLabels(data, rows);
  if (IsPure(parent_counts)) return std::nullopt;
  const double parent_score = criterion.Score(parent_counts);
  const size_t k = data.num_classes();
  const size_t min_leaf = std::max<size_t>(1, params.min_samples_leaf);
  if (n < 2 * min_leaf) return std::nullopt;

  std::optional<SplitCandidate> best;
  std::vector<std::pair<double, ClassIndex>> sorted(n);
  std::vector<size_t> left(k), right(k);

  for (size_t f = 0; f < data.num_features(); ++f) {
    for (size_t i = 0; i < n; ++i) {
      sorted[i] = {data.at(rows[i], f), data.labels()[rows[i]]};
    }
    std::sort(sorted.begin(), sorted.end());

    std::vector<size_t> positions;
    for (size_t i = min_leaf - 1; i + min_leaf < n; ++i) {
      if (sorted[i].first < sorted[i + 1].first) positions.push_back(i);
    }
    positions = CapCandidates(std::move(positions), params.max_thresholds);
    if (positions.empty()) continue;

    std::fill(left.begin(), left.end(), 0);
    right = parent_counts;
    size_t moved = 0;
    for (size_t pos : positions) {
      for (; moved <= pos; ++moved) {
        const auto y = static_cast<size_t>(sorted[moved].second);
        ++left[y];
        --right[y];
      }
      const double gain =
          parent_score - (criterion.Score(left) + criterion.Score(right));
      if (gain > params.min_gain && (!best || gain > best->gain)) {
        const double lo = sorted[pos].first;
        const double hi = sorted[pos + 1].first;
        double threshold = std::midpoint(lo, hi);
        // Adjacent doubles: the midpoint may round up onto the upper value.
        if (threshold >= hi) threshold = lo;
        best = SplitCandidate{{f, threshold}, gain};
      }
    }
  }
  return best;
}

Tree GrowTree(TreeKind kind, const Dataset& train, const SplitCriterion& criterion,
              const TreeParams& params) {
  CheckParams(params);
  std::vector<TreeNode> nodes;

  std::function<int(std::vector<size_t>, int)> grow =
      [&](std::vector<size_t> rows, int depth) -> int {
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[id].depth = depth;
    nodes[id].counts = CountLabels(train, rows);

    std::optional<SplitCandidate> split;
    if (depth < params.max_depth && !IsPure(nodes[id].counts)) {
      split = FindBestSplit(train, rows, criterion, params);
    }
    if (!split) {
      auto leaf = criterion.Label(nodes[id].counts);
      nodes[id].label = leaf.label;
      nodes[id].probabilities = std::move(leaf.probabilities);
      return id;
    }
    std::vector<size_t> left_rows, right_rows;
    for (size_t r : rows) {
      (train.at(r, split->rule.feature) <= split->rule.threshold ? left_rows
                                                                 : right_rows)
          .push_back(r);
    }
    rows.clear();
    rows.shrink_to_fit();
    // Internal nodes keep the label a leaf would have had; it is not used
    // for prediction.
    nodes[id].label = criterion.Label(nodes[id].counts).label;
    nodes[id].split = split->rule;
    const int l = grow(std::move(left_rows), depth + 1);
    const int r = grow(std::move(right_rows), depth + 1);
    nodes[id].left = l;
    nodes[id].right = r;
    return id;
  };

  std::vector<size_t> all(train.num_rows());
  std::iota(all.begin(), all.end(), size_t{0});
  grow(std::move(all), 0);
  return Tree(kind, train.schema_ptr(), std::move(nodes), params);
}

namespace {

std::string JoinCounts(std::span<const size_t> counts) {
  std::string out;
  for (size_t i = 0; i < counts.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(counts[i]);
  }
  return out;
}

}  // namespace

std::string TreeToText(const Tree& tree) {
  std::string out;
  const auto nodes = tree.nodes();
  std::function<void(size_t)> emit = [&](size_t i) {
    const auto& node = nodes[i];
    out.append(static_cast<size_t>(node.depth) * 2, ' ');
    if (node.is_leaf()) {
      out += "class=" + tree.schema().class_names[static_cast<size_t>(node.label)] +
             " counts=[" + JoinCounts(node.counts) + "] p=[" +
             text::JoinDoubles(node.probabilities, ",") + "]\n";
      return;
    }
    out += tree.schema().features[node.split->feature].name + " <= " +
           text::FormatDouble(node.split->threshold) + "\n";
    emit(static_cast<size_t>(node.left));
    emit(static_cast<size_t>(node.right));
  };
  emit(0);
  return out;
}

namespace {

struct TextLine {
  int depth = 0;
  std::string_view body;
  size_t number = 0;
};

template <typename T, typename Parse>
std::vector<T> ParseList(std::string_view body, std::string_view key, Parse parse,
                         size_t line) {
  const auto open = body.find(key);
  if (open == std::string_view::npos) {
    ThrowData("tree text line " + std::to_string(line) + ": missing " +
              std::string(key));
  }
  const auto start = open + key.size();
  const auto close = body.find(']', start);
  if (close == std::string_view::npos) {
    ThrowData("tree text line " + std::to_string(line) + ": unterminated list");
  }
  std::vector<T> out;
  std::string_view items = body.substr(start, close - start);
  while (!items.empty()) {
    const auto comma = items.find(',');
    const auto item = items.substr(0, comma);
    out.push_back(parse(item, line));
    if (comma == std::string_view::npos) break;
    items.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

Tree TreeFromText(std::string_view text, std::shared_ptr<const FeatureSchema> schema,
                  TreeKind kind) {
  if (!schema) ThrowInternal("tree parse without schema");
  std::vector<TextLine> lines;
  size_t number = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++number;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (text::Trim(line).empty()) continue;
    size_t spaces = 0;
    while (spaces < line.size() && line[spaces] == ' ') ++spaces;
    if (spaces % 2 != 0) {
      ThrowData("tree text line " + std::to_string(number) + ": odd indentation");
    }
    lines.push_back({static_cast<int>(spaces / 2), line.substr(spaces), number});
  }
  if (lines.empty()) ThrowData("tree text is empty");

  const size_t k = schema->num_classes();
  std::vector<TreeNode> nodes;
  size_t cursor = 0;
  std::function<int(int)> parse = [&](int depth) -> int {
    if (cursor >= lines.size()) ThrowData("tree text ends before a subtree");
    const auto& line = lines[cursor++];
    if (line.depth != depth) {
      ThrowData("tree text line " + std::to_string(line.number) +
                ": unexpected indentation");
    }
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[id].depth = depth;
    if (line.body.starts_with("class=")) {
      const auto space = line.body.find(" counts=[");
      if (space == std::string_view::npos) {
        ThrowData("tree text line " + std::to_string(line.number) +
                  ": malformed leaf");
      }
      const auto name = line.body.substr(6, space - 6);
      const auto label = schema->FindClass(name);
      if (!label) {
        ThrowData("tree text line " + std::to_string(line.number) +
                  ": unknown class '" + std::string(name) + "'");
      }
      nodes[id].label = *label;
      nodes[id].counts = ParseList<size_t>(
          line.body, " counts=[",
          [](std::string_view s, size_t ln) {
            const auto v = text::ParseDouble(s);
            if (!v || *v < 0 || *v != std::floor(*v)) {
              ThrowData("tree text line " + std::to_string(ln) + ": bad count");
            }
            return static_cast<size_t>(*v);
          },
          line.number);
      nodes[id].probabilities = ParseList<double>(
          line.body, " p=[",
          [](std::string_view s, size_t ln) {
            const auto v = text::ParseDouble(s);
            if (!v) {
              ThrowData("tree text line " + std::to_string(ln) + ": bad probability");
            }
            return *v;
          },
          line.number);
      if (nodes[id].counts.size() != k || nodes[id].probabilities.size() != k) {
        ThrowData("tree text line " + std::to_string(line.number) +
                  ": class vector length mismatch");
      }
      return id;
    }
    const auto op = line.body.rfind(" <= ");
    if (op == std::string_view::npos) {
      ThrowData("tree text line " + std::to_string(line.number) +
                ": expected 'feature <= threshold' or 'class=...'");
    }
    const auto feature = schema->FindFeature(line.body.substr(0, op));
    const auto threshold = text::ParseDouble(line.body.substr(op + 4));
    if (!feature || !threshold) {
      ThrowData("tree text line " + std::to_string(line.number) +
                ": unknown feature or bad threshold");
    }
    nodes[id].split = SplitRule{*feature, *threshold};
    const int l = parse(depth + 1);
    const int r = parse(depth + 1);
    nodes[id].left = l;
    nodes[id].right = r;
    nodes[id].counts = nodes[l].counts;
    for (size_t c = 0; c < k; ++c) nodes[id].counts[c] += nodes[r].counts[c];
    return id;
  };
  parse(0);
  if (cursor != lines.size()) ThrowData("tree text has trailing lines");
  return Tree(kind, std::move(schema), std::move(nodes), TreeParams{});
}

}  // namespace cortex
