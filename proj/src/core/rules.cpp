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

#include "core/rules.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "core/error.hpp"
#include "core/text.hpp"
#include "json.hpp"

namespace cortex {

bool Rule::Fires(std::span<const double> x) const {
  return std::all_of(antecedents.begin(), antecedents.end(),
                     [&](const Antecedent& a) { return a.Holds(x); });
}

std::vector<Antecedent> Simplify(std::span<const Antecedent> antecedents) {
  struct Bounds {
    std::optional<double> lower;  // x > lower
    std::optional<double> upper;  // x <= upper
  };
  std::map<size_t, Bounds> by_feature;
  for (const auto& a : antecedents) {
    auto& b = by_feature[a.feature];
    if (a.op == Comparison::kGreater) {
      b.lower = b.lower ? std::max(*b.lower, a.threshold) : a.threshold;
    } else {
      b.upper = b.upper ? std::min(*b.upper, a.threshold) : a.threshold;
    }
  }
  std::vector<Antecedent> out;
  for (const auto& [feature, b] : by_feature) {
    if (b.lower && b.upper && !(*b.lower < *b.upper)) {
      ThrowInternal("contradictory conditions on feature " + std::to_string(feature));
    }
    if (b.lower) out.push_back({feature, Comparison::kGreater, *b.lower});
    if (b.upper) out.push_back({feature, Comparison::kLessEqual, *b.upper});
  }
  return out;
}

RuleSet ExtractRules(const Tree& tree) {
  RuleSet set;
  set.schema = tree.schema_ptr();
  const auto nodes = tree.nodes();
  std::vector<Antecedent> path;
  std::function<void(size_t)> walk = [&](size_t i) {
    const auto& node = nodes[i];
    if (node.is_leaf()) {
      Rule rule;
      rule.antecedents = Simplify(path);
      rule.consequent = node.label;
      rule.leaf = static_cast<int>(i);
      rule.raw_length = path.size();
      set.rules.push_back(std::move(rule));
      return;
    }
    const auto& s = *node.split;
    path.push_back({s.feature, Comparison::kLessEqual, s.threshold});
    walk(static_cast<size_t>(node.left));
    path.back().op = Comparison::kGreater;
    walk(static_cast<size_t>(node.right));
    path.pop_back();
  };
  walk(0);
  return set;
}

std::optional<ClassIndex> ApplyRules(const RuleSet& rules, std::span<const double> x) {
  if (rules.schema && x.size() != rules.schema->num_features()) {
    ThrowData("feature vector has length " + std::to_string(x.size()) +
              ", rules expect " + std::to_string(rules.schema->num_features()));
  }
  for (const auto& rule : rules.rules) {
    if (rule.Fires(x)) return rule.consequent;
  }
  return std::nullopt;
}

RuleSetSize SizeMetrics(const RuleSet& rules) {
  if (rules.rules.empty()) ThrowData("empty rule set");
  RuleSetSize size;
  size.num_rules = rules.rules.size();
  double simplified = 0.0;
  double raw = 0.0;
  for (const auto& r : rules.rules) {
    simplified += static_cast<double>(r.antecedents.size());
    raw += static_cast<double>(r.raw_length);
  }
  size.average_length = simplified / static_cast<double>(size.num_rules);
  size.average_raw_length = raw / static_cast<double>(size.num_rules);
  return size;
}

namespace {

std::string RenderAntecedent(const Antecedent& a, const FeatureSchema& schema) {
  const auto& f = schema.features[a.feature];
  if (f.kind == FeatureKind::kOneHot && a.threshold >= 0.0 && a.threshold < 1.0) {
    return f.source + (a.op == Comparison::kLessEqual ? " != " : " = ") + f.category;
  }
  return f.name + (a.op == Comparison::kLessEqual ? " <= " : " > ") +
         text::FormatDouble(a.threshold);
}

}  // namespace

std::string RenderRule(const Rule& rule, const FeatureSchema& schema) {
  std::string out = "IF ";
  if (rule.antecedents.empty()) {
    out += "TRUE";
  } else {
    for (size_t i = 0; i < rule.antecedents.size(); ++i) {
      if (i > 0) out += " AND ";
      out += "(" + RenderAntecedent(rule.antecedents[i], schema) + ")";
    }
  }
  out += " THEN class = " + schema.class_names[static_cast<size_t>(rule.consequent)];
  return out;
}

std::string RulesToText(const RuleSet& rules) {
  if (!rules.schema) ThrowInternal("rule set without schema");
  std::string out;
  for (const auto& r : rules.rules) out += RenderRule(r, *rules.schema) + "\n";
  return out;
}

std::string RulesToJson(const RuleSet& rules) {
  if (!rules.schema) ThrowInternal("rule set without schema");
  const auto& schema = *rules.schema;
  nlohmann::ordered_json doc;
  doc["rules"] = nlohmann::ordered_json::array();
  for (const auto& r : rules.rules) {
    nlohmann::ordered_json rule;
    rule["antecedents"] = nlohmann::ordered_json::array();
    for (const auto& a : r.antecedents) {
      rule["antecedents"].push_back(
          {{"feature", schema.features[a.feature].name},
           {"op", a.op == Comparison::kLessEqual ? "<=" : ">"},
           {"threshold", a.threshold}});
    }
    rule["class"] = schema.class_names[static_cast<size_t>(r.consequent)];
    rule["leaf"] = r.leaf;
    rule["raw_length"] = r.raw_length;
    doc["rules"].push_back(std::move(rule));
  }
  return doc.dump(2) + "\n";
}

RuleSet RulesFromJson(std::string_view json, std::shared_ptr<const FeatureSchema> schema) {
  if (!schema) ThrowInternal("rule import without schema");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json);
  } catch (const nlohmann::json::exception& e) {
    ThrowData(std::string("rule set JSON: ") + e.what());
  }
  RuleSet set;
  set.schema = schema;
  try {
    for (const auto& jr : doc.at("rules")) {
      Rule rule;
      for (const auto& ja : jr.at("antecedents")) {
        const auto name = ja.at("feature").get<std::string>();
        const auto feature = schema->FindFeature(name);
        if (!feature) ThrowData("rule set JSON: unknown feature '" + name + "'");
        const auto op = ja.at("op").get<std::string>();
        if (op != "<=" && op != ">") ThrowData("rule set JSON: bad operator '" + op + "'");
        const double t = ja.at("threshold").get<double>();
        if (!std::isfinite(t)) ThrowData("rule set JSON: non-finite threshold");
        rule.antecedents.push_back(
            {*feature, op == "<=" ? Comparison::kLessEqual : Comparison::kGreater, t});
      }
      const auto cls = jr.at("class").get<std::string>();
      const auto label = schema->FindClass(cls);
      if (!label) ThrowData("rule set JSON: unknown class '" + cls + "'");
      rule.consequent = *label;
      rule.leaf = jr.value("leaf", -1);
      rule.raw_length = jr.value("raw_length", rule.antecedents.size());
      set.rules.push_back(std::move(rule));
    }
  } catch (const nlohmann::json::exception& e) {
    ThrowData(std::string("rule set JSON: ") + e.what());
  }
  return set;
}

}  // namespace cortex
