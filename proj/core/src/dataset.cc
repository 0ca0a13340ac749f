#include "robustpred/dataset.h"

#include <set>
#include <utility>

#include "robustpred/error.h"

namespace robustpred {

const std::vector<std::string>& default_class_set() {
  static const std::vector<std::string> kClasses = {"Accept", "Reject", "Missed", "Outgoing"};
  return kClasses;
}

AttributeSchema::AttributeSchema(std::vector<std::string> attributes,
                                 std::vector<std::vector<std::string>> domains,
                                 std::vector<std::string> class_set)
    : attributes_(std::move(attributes)),
      domains_(std::move(domains)),
      class_set_(std::move(class_set)) {
  if (attributes_.size() != domains_.size()) {
    throw Error("schema: " + std::to_string(attributes_.size()) + " attributes but " +
                std::to_string(domains_.size()) + " domains");
  }
  std::set<std::string_view> seen;
  for (const auto& name : attributes_) {
    if (!seen.insert(name).second) throw Error("schema: duplicate attribute '" + name + "'");
  }
  value_index_.resize(domains_.size());
  for (std::size_t a = 0; a < domains_.size(); ++a) {
    for (std::size_t v = 0; v < domains_[a].size(); ++v) {
      if (!value_index_[a].emplace(domains_[a][v], static_cast<ValueId>(v)).second) {
        throw Error("schema: duplicate value '" + domains_[a][v] + "' in domain of '" +
                    attributes_[a] + "'");
      }
    }
  }
  if (class_set_.size() < 2) throw Error("schema: class set needs at least two labels");
  for (std::size_t c = 0; c < class_set_.size(); ++c) {
    if (!class_index_.emplace(class_set_[c], static_cast<ClassId>(c)).second) {
      throw Error("schema: duplicate class label '" + class_set_[c] + "'");
    }
  }
}

const std::string& AttributeSchema::class_label(ClassId c) const {
  return class_set_.at(static_cast<std::size_t>(c));
}

std::optional<std::size_t> AttributeSchema::attribute_index(std::string_view name) const {
  for (std::size_t a = 0; a < attributes_.size(); ++a) {
    if (attributes_[a] == name) return a;
  }
  return std::nullopt;
}

ValueId AttributeSchema::value_id(std::size_t attribute, std::string_view value) const {
  const auto& index = value_index_.at(attribute);
  auto it = index.find(std::string(value));
  return it == index.end() ? kOutOfDomain : it->second;
}

std::optional<ClassId> AttributeSchema::class_id(std::string_view label) const {
  auto it = class_index_.find(std::string(label));
  if (it == class_index_.end()) return std::nullopt;
  return it->second;
}

ClassId AttributeSchema::require_class(std::string_view label) const {
  auto id = class_id(label);
  if (!id) throw Error("label '" + std::string(label) + "' is not in the class set");
  return *id;
}

std::string_view AttributeSchema::value_name(std::size_t attribute, ValueId value) const {
  const auto& dom = domains_.at(attribute);
  if (value < 0 || static_cast<std::size_t>(value) >= dom.size()) return kOutOfDomainToken;
  return dom[static_cast<std::size_t>(value)];
}

bool AttributeSchema::operator==(const AttributeSchema& other) const {
  return attributes_ == other.attributes_ && domains_ == other.domains_ &&
         class_set_ == other.class_set_;
}

Dataset::Dataset(std::shared_ptr<const AttributeSchema> schema, std::vector<Instance> instances)
    : schema_(std::move(schema)), instances_(std::move(instances)) {
  if (!schema_) throw Error("dataset: null schema");
}

Dataset Dataset::from_labeled(std::shared_ptr<const AttributeSchema> schema,
                              std::vector<std::pair<std::vector<ValueId>, ClassId>> rows) {
  std::vector<Instance> instances;
  instances.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    instances.push_back(Instance{std::move(rows[i].first), rows[i].second, i});
  }
  return Dataset(std::move(schema), std::move(instances));
}

Dataset Dataset::from_strings(std::shared_ptr<const AttributeSchema> schema,
                              const std::vector<std::vector<std::string>>& values,
                              const std::vector<std::string>& labels) {
  if (values.size() != labels.size()) throw Error("dataset: values/labels length mismatch");
  std::vector<Instance> instances;
  instances.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    Instance inst;
    inst.id = i;
    inst.label = schema->require_class(labels[i]);
    inst.values.reserve(values[i].size());
    for (std::size_t a = 0; a < values[i].size(); ++a) {
      inst.values.push_back(a < schema->attribute_count() ? schema->value_id(a, values[i][a])
                                                          : kOutOfDomain);
    }
    instances.push_back(std::move(inst));
  }
  return Dataset(std::move(schema), std::move(instances));
}

Dataset Dataset::subset(std::span<const std::size_t> positions) const {
  std::vector<Instance> out;
  out.reserve(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    Instance inst = instances_.at(positions[i]);
    inst.id = i;
    out.push_back(std::move(inst));
  }
  return Dataset(schema_, std::move(out));
}

ValidationResult validate(const Dataset& dataset) {
  ValidationResult result;
  const auto& schema = dataset.schema();
  if (!dataset.empty()) {
    for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
      if (schema.domain(a).empty()) {
        result.violations.push_back({std::nullopt, "attribute '" + schema.attribute(a) +
                                                       "' has an empty domain"});
      }
    }
  }
  const auto n_attr = schema.attribute_count();
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const Instance& inst = dataset[i];
    if (inst.id != i) {
      result.violations.push_back(
          {inst.id, "id " + std::to_string(inst.id) + " at position " + std::to_string(i)});
    }
    if (inst.values.size() != n_attr) {
      result.violations.push_back({inst.id, "has " + std::to_string(inst.values.size()) +
                                                " values, schema has " +
                                                std::to_string(n_attr) + " attributes"});
    }
    const std::size_t n = std::min(inst.values.size(), n_attr);
    for (std::size_t a = 0; a < n; ++a) {
      const ValueId v = inst.values[a];
      if (v < 0 || static_cast<std::size_t>(v) >= schema.domain(a).size()) {
        result.violations.push_back(
            {inst.id, "value of '" + schema.attribute(a) + "' is outside its domain"});
      }
    }
    if (inst.label < 0 || static_cast<std::size_t>(inst.label) >= schema.class_count()) {
      result.violations.push_back({inst.id, "label is not in the class set"});
    }
  }
  return result;
}

std::vector<std::size_t> class_counts(const Dataset& dataset) {
  std::vector<std::size_t> counts(dataset.schema().class_count(), 0);
  for (const Instance& inst : dataset.instances()) {
    counts.at(static_cast<std::size_t>(inst.label))++;
  }
  return counts;
}

}  // namespace robustpred
