#ifndef ROBUSTPRED_TESTS_FIXTURES_H_
#define ROBUSTPRED_TESTS_FIXTURES_H_

#include <memory>
#include <string>
#include <vector>

#include "robustpred/dataset.h"

namespace fixtures {

// Nine-row sample call dataset with DayTime/Location/Situation/Relationship
// contexts and Reject/Accept labels.
inline robustpred::Dataset sample_call_dataset() {
  using robustpred::AttributeSchema;
  auto schema = std::make_shared<const AttributeSchema>(
      std::vector<std::string>{"DayTime", "Location", "Situation", "Relationship"},
      std::vector<std::vector<std::string>>{
          {"Fri[S1]", "Fri[S2]", "Wed[S1]", "Wed[S2]"},
          {"Office", "Home"},
          {"Meeting", "Seminar", "Dinner"},
          {"Friend", "Colleague", "Boss", "Mother", "Unknown"}},
      std::vector<std::string>{"Reject", "Accept"});
  const std::vector<std::vector<std::string>> rows = {
      {"Fri[S1]", "Office", "Meeting", "Friend"},    {"Fri[S1]", "Office", "Meeting", "Colleague"},
      {"Fri[S1]", "Office", "Meeting", "Boss"},      {"Fri[S1]", "Office", "Meeting", "Friend"},
      {"Fri[S2]", "Home", "Dinner", "Friend"},       {"Wed[S1]", "Office", "Seminar", "Unknown"},
      {"Wed[S1]", "Office", "Seminar", "Colleague"}, {"Wed[S1]", "Office", "Seminar", "Mother"},
      {"Wed[S2]", "Home", "Dinner", "Unknown"},
  };
  const std::vector<std::string> labels = {"Reject", "Reject", "Accept", "Reject", "Accept",
                                           "Reject", "Reject", "Accept", "Accept"};
  return robustpred::Dataset::from_strings(schema, rows, labels);
}

inline robustpred::Instance make_instance(const robustpred::AttributeSchema& schema,
                                          const std::vector<std::string>& values,
                                          const std::string& label) {
  robustpred::Instance x;
  for (std::size_t a = 0; a < values.size(); ++a) x.values.push_back(schema.value_id(a, values[a]));
  x.label = schema.require_class(label);
  return x;
}

}  // namespace fixtures

#endif  // ROBUSTPRED_TESTS_FIXTURES_H_
