#ifndef ROBUSTPRED_SYNTH_H_
#define ROBUSTPRED_SYNTH_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "robustpred/dataset.h"

namespace robustpred::synth {

// (attribute, value) by name.
using NamedCondition = std::pair<std::string, std::string>;

struct RuleSpec {
  // Conjunction; empty matches everything.
  std::vector<NamedCondition> when;
  std::string then;
};

struct Condition {
  std::size_t attribute = 0;
  ValueId value = 0;
};

struct GeneratingRule {
  std::vector<Condition> conditions;
  ClassId label = 0;

  bool matches(std::span<const ValueId> context) const;
};

// A synthetic user: prioritized context -> behavior rules plus per-attribute
// sampling weights. Contexts matching an exclusion never occur for this user
// (e.g. the boss never calls at home); sampling redraws them.
class Persona {
 public:
  // Throws Error for unknown names, weight vectors that do not match the
  // domains or have no positive mass, exclusions that rule out every
  // context, or rules that leave some admissible context uncovered.
  Persona(std::string name, std::vector<std::string> attributes,
          std::vector<std::vector<std::string>> domains, std::vector<std::vector<double>> weights,
          std::vector<RuleSpec> rules, std::vector<std::vector<NamedCondition>> exclusions = {},
          std::vector<std::string> class_set = default_class_set());

  const std::string& name() const { return name_; }
  const AttributeSchema& schema() const { return *schema_; }
  const std::shared_ptr<const AttributeSchema>& schema_ptr() const { return schema_; }
  const std::vector<GeneratingRule>& rules() const { return rules_; }
  const std::vector<std::vector<double>>& weights() const { return weights_; }

  bool admissible(std::span<const ValueId> context) const;
  // Label of the first matching rule. Throws Error for inadmissible contexts.
  ClassId label(std::span<const ValueId> context) const;
  // Every admissible context with positive sampling weight, in odometer order.
  std::vector<std::vector<ValueId>> admissible_contexts() const;

 private:
  std::string name_;
  std::shared_ptr<const AttributeSchema> schema_;
  std::vector<std::vector<double>> weights_;
  std::vector<GeneratingRule> rules_;
  std::vector<std::vector<Condition>> exclusions_;
};

struct NoiseMask {
  // Ascending.
  std::vector<std::size_t> flipped_ids;
  // Label before flipping, aligned with flipped_ids.
  std::vector<ClassId> original_labels;
  double requested_rate = 0.0;
  double realized_rate = 0.0;
};

struct Generated {
  Dataset dataset;
  NoiseMask mask;
};

// Samples n admissible contexts, labels them by the persona's rules, then
// flips floor(noise_rate * n) distinct, uniformly chosen labels to a uniformly
// chosen different class. Pure function of its arguments.
// Throws Error unless n >= 1 and 0 <= noise_rate < 1.
Generated generate(const Persona& persona, std::size_t n, double noise_rate, std::uint64_t seed);

// Three users of differing rule complexity and class skew. The first,
// "office-professional", follows the seven office/home call rules exactly.
const std::vector<Persona>& bundled_personas();
// Throws Error for unknown names.
const Persona& bundled_persona(std::string_view name);

// "id,original_label" header then one row per flipped instance.
void write_mask(std::ostream& out, const NoiseMask& mask, const AttributeSchema& schema);

}  // namespace robustpred::synth

#endif  // ROBUSTPRED_SYNTH_H_
