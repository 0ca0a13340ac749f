#include <doctest.h>

#include <numeric>
#include <sstream>

#include "oracle/oracle.h"
#include "robustpred/decision_tree.h"
#include "robustpred/error.h"
#include "robustpred/synth.h"

using namespace robustpred;
using namespace robustpred::tree;

namespace {

std::shared_ptr<const AttributeSchema> two_attr_schema() {
  return std::make_shared<const AttributeSchema>(
      std::vector<std::string>{"A", "B"},
      std::vector<std::vector<std::string>>{{"a", "b"}, {"x", "y"}},
      std::vector<std::string>{"Accept", "Reject"});
}

bool rule_matches(const PredictionRule& r, const std::vector<ValueId>& ctx) {
  for (const auto& [a, v] : r.antecedent) {
    if (ctx[a] != v) return false;
  }
  return true;
}

std::string rule_text(const PredictionRule& r, const AttributeSchema& s) { return format_rule(r, s); }

}  // namespace

TEST_CASE("gain ratio against hand entropy arithmetic") {
  const auto ds = Dataset::from_strings(two_attr_schema(),
                                        {{"a", "x"}, {"a", "y"}, {"b", "x"}, {"b", "x"}},
                                        {"Accept", "Accept", "Reject", "Accept"});
  const double h = oracle::entropy_bits({3, 1});
  const double expected_a = (h - 0.5 * 0.0 - 0.5 * 1.0) / 1.0;
  const double expected_b = (h - 0.75 * oracle::entropy_bits({2, 1})) / oracle::entropy_bits({3, 1});
  CHECK(gain_ratio(ds, 0) == doctest::Approx(expected_a).epsilon(1e-12));
  CHECK(gain_ratio(ds, 1) == doctest::Approx(expected_b).epsilon(1e-12));
  CHECK(gain_ratio(ds, 0) > gain_ratio(ds, 1));
}

TEST_CASE("perfect splitter dominates, constant attribute scores zero") {
  const auto ds = Dataset::from_strings(two_attr_schema(),
                                        {{"a", "x"}, {"b", "x"}, {"a", "x"}, {"b", "x"}},
                                        {"Accept", "Reject", "Accept", "Reject"});
  CHECK(gain_ratio(ds, 0) == doctest::Approx(1.0));
  CHECK(gain_ratio(ds, 1) == 0.0);
  const auto t = build_tree(ds);
  CHECK(t.depth() == 1);
  CHECK(t.root().attribute == 0);
  const auto rules = extract_rules(t);
  REQUIRE(rules.size() == 2);
  for (const auto& r : rules) CHECK(r.antecedent.size() == 1);
}

TEST_CASE("single-class data gives a single leaf") {
  const auto ds = Dataset::from_strings(two_attr_schema(), {{"a", "x"}, {"b", "y"}},
                                        {"Reject", "Reject"});
  const auto t = build_tree(ds);
  CHECK(t.nodes().size() == 1);
  CHECK(t.root().is_leaf);
  CHECK(t.root().label == 1);
  const auto rules = extract_rules(t);
  REQUIRE(rules.size() == 1);
  CHECK(rules[0].antecedent.empty());
  CHECK(rules[0].support == 2);
}

TEST_CASE("empty dataset is rejected") {
  CHECK_THROWS_AS(build_tree(Dataset(two_attr_schema(), {})), Error);
}

TEST_CASE("majority ties go to the first class") {
  const auto ds =
      Dataset::from_strings(two_attr_schema(), {{"a", "x"}, {"a", "x"}}, {"Reject", "Accept"});
  const auto t = build_tree(ds);
  CHECK(t.root().is_leaf);
  CHECK(t.root().label == 0);
}

TEST_CASE("depth and support limits") {
  const auto ds = Dataset::from_strings(
      two_attr_schema(), {{"a", "x"}, {"a", "y"}, {"b", "x"}, {"b", "y"}, {"b", "y"}},
      {"Accept", "Reject", "Reject", "Accept", "Accept"});
  TreeParams shallow;
  shallow.max_depth = 1;
  CHECK(build_tree(ds, shallow).depth() <= 1);
  TreeParams stump;
  stump.max_depth = 0;
  CHECK(build_tree(ds, stump).nodes().size() == 1);
  TreeParams wide;
  wide.min_leaf_support = 3;
  // No split leaves every branch with three instances.
  CHECK(build_tree(ds, wide).root().is_leaf);
  for (const auto& n : build_tree(ds).nodes()) CHECK(n.support >= 1);
}

TEST_CASE("the seven office and home rules") {
  const auto& persona = synth::bundled_persona("office-professional");
  const auto g = synth::generate(persona, 2000, 0.0, 3);
  const auto t = build_tree(g.dataset);
  const auto& s = persona.schema();
  const auto rules = extract_rules(t);
  std::vector<std::string> texts;
  for (const auto& r : rules) {
    auto line = rule_text(r, s);
    texts.push_back(line.substr(0, line.find(" (support")));
  }
  std::sort(texts.begin(), texts.end());
  const std::vector<std::string> expected = {
      "Location=Home, Relationship=Friend => Accept",
      "Location=Home, Relationship=Unknown => Missed",
      "Location=Office, Situation=Lecture => Reject",
      "Location=Office, Situation=Lunch, Relationship=Friend => Accept",
      "Location=Office, Situation=Lunch, Relationship=Unknown => Missed",
      "Location=Office, Situation=Meeting, Relationship=Boss => Accept",
      "Location=Office, Situation=Meeting, Relationship=Colleague => Reject",
  };
  CHECK(texts == expected);

  auto ctx = [&](const char* loc, const char* sit, const char* rel) {
    Instance x;
    x.values = {s.value_id(0, loc), s.value_id(1, sit), s.value_id(2, rel)};
    return x;
  };
  for (const char* rel : {"Boss", "Friend", "Colleague", "Unknown"}) {
    CHECK(predict_tree(t, ctx("Office", "Lecture", rel)) == s.require_class("Reject"));
  }
  CHECK(predict_tree(t, ctx("Home", "Lunch", "Friend")) == s.require_class("Accept"));

  // An unseen location stops at the root and returns its majority.
  Instance unseen = ctx("Office", "Lecture", "Boss");
  unseen.values[0] = kOutOfDomain;
  CHECK(predict_tree(t, unseen) == t.root().label);
  const auto counts = class_counts(g.dataset);
  const auto majority =
      static_cast<ClassId>(std::max_element(counts.begin(), counts.end()) - counts.begin());
  CHECK(t.root().label == majority);
}

TEST_CASE("rules and tree agree on every admissible context") {
  for (const auto& persona : synth::bundled_personas()) {
    CAPTURE(persona.name());
    const auto g = synth::generate(persona, 1500, 0.05, 9);
    const auto t = build_tree(g.dataset);
    const auto rules = extract_rules(t);
    const auto supports = std::accumulate(rules.begin(), rules.end(), std::size_t{0},
                                          [](std::size_t acc, const auto& r) { return acc + r.support; });
    CHECK(supports == g.dataset.size());
    CHECK(rules.size() == t.leaf_count());
    for (const auto& ctx : persona.admissible_contexts()) {
      std::size_t matching = 0;
      ClassId label = 0;
      for (const auto& r : rules) {
        if (rule_matches(r, ctx)) {
          ++matching;
          label = r.consequent;
        }
      }
      Instance x;
      x.values = ctx;
      // A context can fall off the tree at an internal node whose branch for
      // its value was never grown; then no rule matches.
      CHECK(matching <= 1);
      if (matching == 1) CHECK(predict_tree(t, x) == label);
    }
  }
}

TEST_CASE("consistent data is fit exactly") {
  const auto& persona = synth::bundled_persona("student");
  const auto g = synth::generate(persona, 3000, 0.0, 4);
  const auto t = build_tree(g.dataset);
  for (const auto& x : g.dataset.instances()) CHECK(predict_tree(t, x) == x.label);
}

TEST_CASE("tree and rules rendering") {
  const auto ds = Dataset::from_strings(two_attr_schema(), {{"a", "x"}, {"b", "x"}},
                                        {"Accept", "Reject"});
  const auto t = build_tree(ds);
  std::ostringstream tree_out, rules_out;
  write_tree(tree_out, t);
  write_rules(rules_out, extract_rules(t), ds.schema());
  CHECK(tree_out.str() == "A = a => Accept (support=1)\nA = b => Reject (support=1)\n");
  CHECK(rules_out.str() == "A=a => Accept (support=1)\nA=b => Reject (support=1)\n");
}
