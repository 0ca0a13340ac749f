#ifndef ROBUSTPRED_DECISION_TREE_H_
#define ROBUSTPRED_DECISION_TREE_H_

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robustpred/dataset.h"

namespace robustpred::tree {

struct TreeParams {
  std::size_t min_leaf_support = 1;
  // Unset means the number of attributes.
  std::optional<std::size_t> max_depth;
};

struct Node {
  bool is_leaf = true;
  // Split attribute (internal nodes only).
  std::size_t attribute = 0;
  // (value, node index) for every value observed at this node, by value id.
  std::vector<std::pair<ValueId, std::size_t>> children;
  // Leaf class, or the majority fallback of an internal node.
  ClassId label = 0;
  // Training instances reaching this node.
  std::size_t support = 0;
};

// C4.5-style tree over categorical attributes, no pruning. Immutable.
class DecisionTree {
 public:
  const AttributeSchema& schema() const { return *schema_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& root() const { return nodes_.front(); }
  std::size_t leaf_count() const;
  std::size_t depth() const;

  // Follows the instance's values; stops at the first node without a child
  // for the value (unseen or out-of-domain) and returns its majority class.
  ClassId predict(const Instance& instance) const;

 private:
  friend DecisionTree build_tree(const Dataset&, const TreeParams&);
  std::shared_ptr<const AttributeSchema> schema_;
  std::vector<Node> nodes_;
};

// Information gain of splitting on `attribute` divided by its split
// information; 0 when the attribute takes a single value. Entropies in bits.
double gain_ratio(const Dataset& dataset, std::size_t attribute);

// Recursive induction. A node becomes a majority leaf when it is pure, at
// max_depth, below min_leaf_support, or when no remaining attribute takes two
// or more values with every branch holding at least min_leaf_support
// instances. Otherwise it splits on the highest gain ratio, earlier
// attributes winning ties. Majority ties go to the earlier class.
// Throws Error on an empty dataset.
DecisionTree build_tree(const Dataset& dataset, const TreeParams& params = {});

inline ClassId predict_tree(const DecisionTree& tree, const Instance& instance) {
  return tree.predict(instance);
}

struct PredictionRule {
  // (attribute, value) conditions in root-to-leaf order.
  std::vector<std::pair<std::size_t, ValueId>> antecedent;
  ClassId consequent = 0;
  std::size_t support = 0;
};

// One rule per leaf, depth-first in child order.
std::vector<PredictionRule> extract_rules(const DecisionTree& tree);

// "attr=value, attr=value => CLASS (support=n)"
std::string format_rule(const PredictionRule& rule, const AttributeSchema& schema);
void write_rules(std::ostream& out, const std::vector<PredictionRule>& rules,
                 const AttributeSchema& schema);
// Indented rendering, one line per branch, leaves as "=> CLASS (support=n)".
void write_tree(std::ostream& out, const DecisionTree& tree);

}  // namespace robustpred::tree

#endif  // ROBUSTPRED_DECISION_TREE_H_
