#include "robustpred/decision_tree.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <span>

#include "robustpred/error.h"

namespace robustpred::tree {
namespace {

// Gain ratios closer than this are ties.
constexpr double kGainTieTolerance = 1e-12;

double entropy(std::span<const std::size_t> counts, std::size_t total) {
  if (total == 0) return 0.0;
  double h = 0.0;
  for (std::size_t n : counts) {
    if (n == 0) continue;
    const double p = static_cast<double>(n) / static_cast<double>(total);
    h -= p * std::log2(p);
  }
  return h;
}

ClassId majority(const Dataset& data, std::span<const std::size_t> positions) {
  std::vector<std::size_t> counts(data.schema().class_count(), 0);
  for (std::size_t p : positions) ++counts[static_cast<std::size_t>(data[p].label)];
  // max_element returns the first maximum, i.e. the earliest class.
  return static_cast<ClassId>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

struct SplitStats {
  double gain_ratio = 0.0;
  // Instances per value id (out-of-domain values are not branched on).
  std::vector<std::size_t> value_totals;
  std::size_t observed_values = 0;
};

SplitStats split_stats(const Dataset& data, std::span<const std::size_t> positions,
                       std::size_t attribute) {
  const auto& schema = data.schema();
  const std::size_t n_class = schema.class_count();
  const std::size_t n_value = schema.domain(attribute).size();
  std::vector<std::size_t> class_totals(n_class, 0);
  std::vector<std::size_t> joint(n_value * n_class, 0);
  SplitStats stats;
  stats.value_totals.assign(n_value, 0);
  std::size_t counted = 0;
  for (std::size_t p : positions) {
    const Instance& inst = data[p];
    const auto c = static_cast<std::size_t>(inst.label);
    const ValueId v = inst.values[attribute];
    if (v < 0 || static_cast<std::size_t>(v) >= n_value) continue;
    ++class_totals[c];
    ++joint[static_cast<std::size_t>(v) * n_class + c];
    ++stats.value_totals[static_cast<std::size_t>(v)];
    ++counted;
  }
  for (std::size_t n : stats.value_totals) stats.observed_values += n > 0 ? 1 : 0;

  const double base = entropy(class_totals, counted);
  double remainder = 0.0;
  for (std::size_t v = 0; v < n_value; ++v) {
    const std::size_t nv = stats.value_totals[v];
    if (nv == 0) continue;
    remainder += static_cast<double>(nv) / static_cast<double>(counted) *
                 entropy(std::span(joint).subspan(v * n_class, n_class), nv);
  }
  const double split_info = entropy(stats.value_totals, counted);
  if (split_info <= 0.0) return stats;
  stats.gain_ratio = std::max(0.0, base - remainder) / split_info;
  return stats;
}

class Builder {
 public:
  Builder(const Dataset& data, const TreeParams& params, std::vector<Node>& nodes)
      : data_(data),
        min_leaf_(std::max<std::size_t>(params.min_leaf_support, 1)),
        max_depth_(params.max_depth.value_or(data.schema().attribute_count())),
        nodes_(nodes),
        used_(data.schema().attribute_count(), false) {}

  std::size_t grow(std::vector<std::size_t> positions, std::size_t depth) {
    const std::size_t index = nodes_.size();
    nodes_.push_back(Node{});
    Node node;
    node.support = positions.size();
    node.label = majority(data_, positions);

    const bool pure = std::all_of(positions.begin(), positions.end(), [&](std::size_t p) {
      return data_[p].label == data_[positions.front()].label;
    });
    if (pure || depth >= max_depth_ || positions.size() < min_leaf_) {
      nodes_[index] = std::move(node);
      return index;
    }

    std::optional<std::size_t> best;
    SplitStats best_stats;
    for (std::size_t a = 0; a < used_.size(); ++a) {
      if (used_[a]) continue;
      SplitStats stats = split_stats(data_, positions, a);
      if (stats.observed_values < 2) continue;
      const bool admissible = std::all_of(
          stats.value_totals.begin(), stats.value_totals.end(),
          [&](std::size_t n) { return n == 0 || n >= min_leaf_; });
      if (!admissible) continue;
      if (!best || stats.gain_ratio > best_stats.gain_ratio + kGainTieTolerance) {
        best = a;
        best_stats = std::move(stats);
      }
    }
    if (!best) {
      nodes_[index] = std::move(node);
      return index;
    }

    node.is_leaf = false;
    node.attribute = *best;
    const std::size_t n_value = data_.schema().domain(*best).size();
    std::vector<std::vector<std::size_t>> buckets(n_value);
    for (std::size_t p : positions) {
      const ValueId v = data_[p].values[*best];
      if (v >= 0 && static_cast<std::size_t>(v) < n_value) {
        buckets[static_cast<std::size_t>(v)].push_back(p);
      }
    }
    positions.clear();
    positions.shrink_to_fit();

    used_[*best] = true;
    for (std::size_t v = 0; v < n_value; ++v) {
      if (buckets[v].empty()) continue;
      const std::size_t child = grow(std::move(buckets[v]), depth + 1);
      node.children.emplace_back(static_cast<ValueId>(v), child);
    }
    used_[*best] = false;
    nodes_[index] = std::move(node);
    return index;
  }

 private:
  const Dataset& data_;
  std::size_t min_leaf_;
  std::size_t max_depth_;
  std::vector<Node>& nodes_;
  std::vector<bool> used_;
};

}  // namespace

double gain_ratio(const Dataset& dataset, std::size_t attribute) {
  if (attribute >= dataset.schema().attribute_count()) {
    throw Error("gain ratio: attribute index out of range");
  }
  std::vector<std::size_t> all(dataset.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return split_stats(dataset, all, attribute).gain_ratio;
}

DecisionTree build_tree(const Dataset& dataset, const TreeParams& params) {
  if (dataset.empty()) throw Error("decision tree: cannot train on an empty dataset");
  DecisionTree tree;
  tree.schema_ = dataset.schema_ptr();
  std::vector<std::size_t> all(dataset.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  Builder(dataset, params, tree.nodes_).grow(std::move(all), 0);
  return tree;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf; }));
}

std::size_t DecisionTree::depth() const {
  std::function<std::size_t(std::size_t)> walk = [&](std::size_t i) -> std::size_t {
    std::size_t d = 0;
    for (const auto& [value, child] : nodes_[i].children) d = std::max(d, 1 + walk(child));
    return d;
  };
  return walk(0);
}

ClassId DecisionTree::predict(const Instance& instance) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf) {
    const Node& node = nodes_[i];
    const ValueId v =
        node.attribute < instance.values.size() ? instance.values[node.attribute] : kOutOfDomain;
    auto it = std::find_if(node.children.begin(), node.children.end(),
                           [v](const auto& c) { return c.first == v; });
    if (it == node.children.end()) return node.label;
    i = it->second;
  }
  return nodes_[i].label;
}

std::vector<PredictionRule> extract_rules(const DecisionTree& tree) {
  std::vector<PredictionRule> rules;
  PredictionRule path;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    const Node& node = tree.nodes()[i];
    if (node.is_leaf) {
      rules.push_back({path.antecedent, node.label, node.support});
      return;
    }
    for (const auto& [value, child] : node.children) {
      path.antecedent.emplace_back(node.attribute, value);
      walk(child);
      path.antecedent.pop_back();
    }
  };
  walk(0);
  return rules;
}

std::string format_rule(const PredictionRule& rule, const AttributeSchema& schema) {
  std::string out;
  for (std::size_t i = 0; i < rule.antecedent.size(); ++i) {
    const auto& [a, v] = rule.antecedent[i];
    if (i > 0) out += ", ";
    out += schema.attribute(a);
    out += '=';
    out += schema.value_name(a, v);
  }
  if (!out.empty()) out += ' ';
  out += "=> " + schema.class_label(rule.consequent) + " (support=" +
         std::to_string(rule.support) + ")";
  return out;
}

void write_rules(std::ostream& out, const std::vector<PredictionRule>& rules,
                 const AttributeSchema& schema) {
  for (const auto& r : rules) out << format_rule(r, schema) << '\n';
}

void write_tree(std::ostream& out, const DecisionTree& tree) {
  const auto& schema = tree.schema();
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i, std::size_t indent) {
    const Node& node = tree.nodes()[i];
    for (const auto& [value, child] : node.children) {
      const Node& c = tree.nodes()[child];
      out << std::string(indent * 2, ' ') << schema.attribute(node.attribute) << " = "
          << schema.value_name(node.attribute, value);
      if (c.is_leaf) {
        out << " => " << schema.class_label(c.label) << " (support=" << c.support << ")\n";
      } else {
        out << '\n';
        walk(child, indent + 1);
      }
    }
  };
  if (tree.root().is_leaf) {
    out << "=> " << schema.class_label(tree.root().label) << " (support=" << tree.root().support
        << ")\n";
    return;
  }
  walk(0, 0);
}

}  // namespace robustpred::tree
