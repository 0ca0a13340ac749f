#ifndef ROBUSTPRED_DATASET_H_
#define ROBUSTPRED_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace robustpred {

// Index of a value inside one attribute's domain.
using ValueId = std::int32_t;
// Index of a label inside the schema's class set.
using ClassId = std::int32_t;

// Value id used for anything outside the attribute's domain (e.g. a context
// first seen at prediction time). Learners treat it as never observed.
inline constexpr ValueId kOutOfDomain = -1;
inline constexpr std::string_view kOutOfDomainToken = "<out-of-domain>";

// Reserved ordinary value for a context that was not recorded.
inline constexpr std::string_view kUnspecified = "unspecified";

// Accept, Reject, Missed, Outgoing.
const std::vector<std::string>& default_class_set();

// Attribute names, their finite categorical domains and the behavior classes.
// Immutable once built.
class AttributeSchema {
 public:
  // Throws Error on: attribute/domain count mismatch, duplicate attribute
  // names, duplicate values in a domain, duplicate class labels, or fewer than
  // two classes. Empty domains are accepted here and rejected by validate()
  // once a dataset actually has instances.
  AttributeSchema(std::vector<std::string> attributes,
                  std::vector<std::vector<std::string>> domains,
                  std::vector<std::string> class_set = default_class_set());

  std::size_t attribute_count() const { return attributes_.size(); }
  std::size_t class_count() const { return class_set_.size(); }

  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::string& attribute(std::size_t a) const { return attributes_.at(a); }
  const std::vector<std::string>& domain(std::size_t a) const { return domains_.at(a); }
  const std::vector<std::string>& class_set() const { return class_set_; }
  const std::string& class_label(ClassId c) const;

  std::optional<std::size_t> attribute_index(std::string_view name) const;
  // kOutOfDomain when `value` is not in the attribute's domain.
  ValueId value_id(std::size_t attribute, std::string_view value) const;
  std::optional<ClassId> class_id(std::string_view label) const;
  // Throws Error for labels outside the class set.
  ClassId require_class(std::string_view label) const;

  // Domain string for `value`, or kOutOfDomainToken.
  std::string_view value_name(std::size_t attribute, ValueId value) const;

  bool operator==(const AttributeSchema& other) const;

 private:
  std::vector<std::string> attributes_;
  std::vector<std::vector<std::string>> domains_;
  std::vector<std::string> class_set_;
  std::vector<std::unordered_map<std::string, ValueId>> value_index_;
  std::unordered_map<std::string, ClassId> class_index_;
};

// One contextual record: a value per schema attribute plus its behavior label.
struct Instance {
  std::vector<ValueId> values;
  ClassId label = 0;
  std::size_t id = 0;

  bool operator==(const Instance&) const = default;
};

// Schema plus ordered instances. Never mutated after construction; filtering
// and splitting always produce new datasets sharing the same schema.
class Dataset {
 public:
  // Instances are stored as given (ids included) so that validate() can
  // report malformed input instead of the constructor throwing.
  Dataset(std::shared_ptr<const AttributeSchema> schema, std::vector<Instance> instances);

  // Assigns ids 0..n-1 in order.
  static Dataset from_labeled(std::shared_ptr<const AttributeSchema> schema,
                              std::vector<std::pair<std::vector<ValueId>, ClassId>> rows);

  // Maps string rows through the schema. Unknown values become kOutOfDomain;
  // unknown labels throw Error.
  static Dataset from_strings(std::shared_ptr<const AttributeSchema> schema,
                              const std::vector<std::vector<std::string>>& values,
                              const std::vector<std::string>& labels);

  const AttributeSchema& schema() const { return *schema_; }
  const std::shared_ptr<const AttributeSchema>& schema_ptr() const { return schema_; }

  std::span<const Instance> instances() const { return instances_; }
  const Instance& operator[](std::size_t i) const { return instances_[i]; }
  std::size_t size() const { return instances_.size(); }
  bool empty() const { return instances_.empty(); }

  // New dataset holding instances at `positions` (in the given order), with
  // ids renumbered 0..k-1.
  Dataset subset(std::span<const std::size_t> positions) const;

 private:
  std::shared_ptr<const AttributeSchema> schema_;
  std::vector<Instance> instances_;
};

struct Violation {
  // Unset for schema-level problems.
  std::optional<std::size_t> instance_id;
  std::string reason;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks every Dataset invariant; violations are data, never thrown.
ValidationResult validate(const Dataset& dataset);

// Per-class instance counts aligned with the schema's class ids.
std::vector<std::size_t> class_counts(const Dataset& dataset);

}  // namespace robustpred

#endif  // ROBUSTPRED_DATASET_H_
