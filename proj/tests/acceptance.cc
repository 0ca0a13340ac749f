// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.h"
#include "fixtures.h"
#include "oracle/oracle.h"
#include "robustpred/bayes.h"
#include "robustpred/decision_tree.h"
#include "robustpred/evaluation.h"
#include "robustpred/noise_filter.h"
#include "robustpred/synth.h"

using namespace robustpred;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Random datasets: up to 12 instances, 4 attributes, 4 values per attribute,
// 2 to 4 classes.
std::vector<Dataset> small_suite(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); };
  const std::vector<std::string> labels = {"Accept", "Reject", "Missed", "Outgoing"};
  std::vector<Dataset> out;
  for (std::size_t k = 0; k < count; ++k) {
    const int attrs = pick(0, 4);
    const int classes = pick(2, 4);
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> domains;
    for (int a = 0; a < attrs; ++a) {
      names.push_back("A" + std::to_string(a));
      domains.emplace_back();
      const int values = pick(1, 4);
      for (int v = 0; v < values; ++v) domains.back().push_back("v" + std::to_string(v));
    }
    auto schema = std::make_shared<const AttributeSchema>(
        names, domains, std::vector<std::string>(labels.begin(), labels.begin() + classes));
    const int n = pick(1, 12);
    std::vector<std::pair<std::vector<ValueId>, ClassId>> rows;
    for (int i = 0; i < n; ++i) {
      std::vector<ValueId> x;
      for (int a = 0; a < attrs; ++a) {
        x.push_back(pick(0, static_cast<int>(domains[a].size()) - 1));
      }
      rows.push_back({x, pick(0, classes - 1)});
    }
    out.push_back(Dataset::from_labeled(schema, std::move(rows)));
  }
  return out;
}

// Every context of the schema's product space, plus one out-of-domain
// variant per attribute.
std::vector<Instance> probe_instances(const AttributeSchema& s) {
  std::vector<Instance> out;
  std::vector<ValueId> ctx(s.attribute_count(), 0);
  while (true) {
    out.push_back(Instance{ctx, 0, 0});
    std::size_t a = 0;
    while (a < ctx.size() && ++ctx[a] == static_cast<ValueId>(s.domain(a).size())) ctx[a++] = 0;
    if (a == ctx.size()) break;
  }
  for (std::size_t a = 0; a < s.attribute_count(); ++a) {
    Instance x{std::vector<ValueId>(s.attribute_count(), 0), 0, 0};
    x.values[a] = kOutOfDomain;
    out.push_back(x);
  }
  return out;
}

Outcome laplace_example() {
  auto schema = std::make_shared<const AttributeSchema>(
      std::vector<std::string>{"Relationship"},
      std::vector<std::vector<std::string>>{{"Boss", "Friend", "Unknown"}},
      std::vector<std::string>{"Accept", "Reject"});
  std::vector<std::pair<std::vector<ValueId>, ClassId>> rows;
  for (int i = 0; i < 990; ++i) rows.push_back({{1}, 0});
  for (int i = 0; i < 10; ++i) rows.push_back({{2}, 0});
  rows.push_back({{0}, 1});
  const auto ds = Dataset::from_labeled(schema, std::move(rows));
  const auto m = bayes::BayesModel::fit(ds);
  const Ratio expected[] = {Ratio(1, 1003), Ratio(991, 1003), Ratio(11, 1003)};
  const char* rounded[] = {"0.001", "0.988", "0.011"};
  Outcome o;
  for (ValueId v = 0; v < 3; ++v) {
    const auto got = m.conditional(0, v, 0, bayes::Smoothing::kLaplace);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", got.value());
    const bool oracle_ok = oracle::conditional(ds, 0, v, 0, true) ==
                           oracle::ratio(expected[v].numerator(), expected[v].denominator());
    if (!(got == expected[v]) || std::string(buf) != rounded[v] || !oracle_ok) {
      o.pass = false;
      o.detail += " value " + std::to_string(v) + " got " + got.str() + " (" + buf + ")";
    }
  }
  if (o.pass) o.detail = "1/1003 991/1003 11/1003 -> 0.001 0.988 0.011";
  return o;
}

Outcome sample_tables() {
  struct Row {
    const char* attribute;
    const char* value;
    const char* label;
    std::int64_t num, den;
  };
  const Row rows[] = {
      {"DayTime", "Fri[S1]", "Reject", 3, 5},        {"DayTime", "Fri[S1]", "Accept", 1, 4},
      {"DayTime", "Fri[S2]", "Reject", 0, 5},        {"DayTime", "Fri[S2]", "Accept", 1, 4},
      {"DayTime", "Wed[S1]", "Reject", 2, 5},        {"DayTime", "Wed[S1]", "Accept", 1, 4},
      {"DayTime", "Wed[S2]", "Reject", 0, 5},        {"DayTime", "Wed[S2]", "Accept", 1, 4},
      {"Location", "Office", "Reject", 5, 5},        {"Location", "Office", "Accept", 2, 4},
      {"Location", "Home", "Reject", 0, 5},          {"Location", "Home", "Accept", 2, 4},
      {"Situation", "Meeting", "Reject", 3, 5},      {"Situation", "Meeting", "Accept", 1, 4},
      {"Situation", "Seminar", "Reject", 2, 5},      {"Situation", "Seminar", "Accept", 1, 4},
      {"Situation", "Dinner", "Reject", 0, 5},       {"Situation", "Dinner", "Accept", 2, 4},
      {"Relationship", "Friend", "Reject", 2, 5},    {"Relationship", "Friend", "Accept", 1, 4},
      {"Relationship", "Colleague", "Reject", 2, 5}, {"Relationship", "Colleague", "Accept", 0, 4},
      {"Relationship", "Boss", "Reject", 0, 5},      {"Relationship", "Boss", "Accept", 1, 4},
      {"Relationship", "Mother", "Reject", 0, 5},    {"Relationship", "Mother", "Accept", 1, 4},
      {"Relationship", "Unknown", "Reject", 1, 5},   {"Relationship", "Unknown", "Accept", 1, 4},
  };
  const auto ds = fixtures::sample_call_dataset();
  const auto m = bayes::BayesModel::fit(ds);
  const auto& s = ds.schema();
  Outcome o;
  std::size_t matched = 0;
  if (m.prior(s.require_class("Reject")) == Ratio(5, 9)) ++matched;
  if (m.prior(s.require_class("Accept")) == Ratio(4, 9)) ++matched;
  for (const auto& r : rows) {
    const auto a = *s.attribute_index(r.attribute);
    if (m.conditional(a, s.value_id(a, r.value), s.require_class(r.label), bayes::Smoothing::kNone) ==
        Ratio(r.num, r.den)) {
      ++matched;
    } else {
      o.detail += std::string(" mismatch ") + r.attribute + "=" + r.value + "|" + r.label;
    }
  }
  o.pass = matched == 30 && std::size(rows) == 28;
  o.detail = std::to_string(matched) + "/30 exact (2 priors, 28 conditionals)" + o.detail;
  return o;
}

Outcome nbc_oracle(const std::vector<Dataset>& suite) {
  std::size_t checks = 0, mismatches = 0;
  for (const auto& ds : suite) {
    const auto m = bayes::BayesModel::fit(ds);
    auto cmp = [&](const Instance& x) {
      ++checks;
      if (m.predict(x).label != oracle::predict(ds, x)) ++mismatches;
    };
    for (const auto& x : ds.instances()) cmp(x);
    for (const auto& x : probe_instances(ds.schema())) cmp(x);
  }
  Outcome o;
  o.pass = mismatches == 0 && suite.size() >= 200;
  o.detail = std::to_string(suite.size()) + " datasets, " + std::to_string(checks) +
             " predictions, " + std::to_string(mismatches) + " disagreements";
  return o;
}

Outcome noise_contract(const std::vector<Dataset>& suite) {
  std::size_t discrepancies = 0, flagged = 0, runs = 0;
  for (const auto& ds : suite) {
    for (bool posterior : {false, true}) {
      const auto report = noise::detect_noise(
          ds, posterior ? noise::ScoreDefinition::kPosterior : noise::ScoreDefinition::kLikelihood);
      const auto expected = oracle::flagged(ds, posterior);
      ++runs;
      flagged += expected.size();
      if (report.noise_ids != expected) ++discrepancies;
    }
  }
  Outcome o;
  o.pass = discrepancies == 0;
  o.detail = std::to_string(runs) + " detections (both score definitions), " + std::to_string(flagged) +
             " oracle flags, " + std::to_string(discrepancies) + " discrepancies";
  return o;
}

// The seven published rules, as (attribute, value) conjunctions.
struct RefRule {
  std::vector<std::pair<std::string, std::string>> when;
  std::string then;
};

Outcome rule_recovery() {
  const std::vector<RefRule> reference = {
      {{{"Location", "Home"}, {"Relationship", "Unknown"}}, "Missed"},
      {{{"Location", "Home"}, {"Relationship", "Friend"}}, "Accept"},
      {{{"Location", "Office"}, {"Situation", "Meeting"}, {"Relationship", "Colleague"}}, "Reject"},
      {{{"Location", "Office"}, {"Situation", "Meeting"}, {"Relationship", "Boss"}}, "Accept"},
      {{{"Location", "Office"}, {"Situation", "Lecture"}}, "Reject"},
      {{{"Location", "Office"}, {"Situation", "Lunch"}, {"Relationship", "Unknown"}}, "Missed"},
      {{{"Location", "Office"}, {"Situation", "Lunch"}, {"Relationship", "Friend"}}, "Accept"},
  };
  const auto& persona = synth::bundled_persona("office-professional");
  const auto g = synth::generate(persona, 2000, 0.0, 1);
  const auto tree = tree::build_tree(g.dataset);
  const auto rules = tree::extract_rules(tree);
  const auto& s = persona.schema();

  std::size_t contexts = 0, disagreements = 0;
  for (const auto& x : probe_instances(s)) {
    if (std::find(x.values.begin(), x.values.end(), kOutOfDomain) != x.values.end()) continue;
    ++contexts;
    std::optional<std::string> want, got;
    for (const auto& r : reference) {
      bool all = true;
      for (const auto& [attr, val] : r.when) {
        const auto a = *s.attribute_index(attr);
        all = all && s.value_name(a, x.values[a]) == val;
      }
      if (all) want = r.then;
    }
    std::size_t hits = 0;
    for (const auto& r : rules) {
      bool all = true;
      for (const auto& [a, v] : r.antecedent) all = all && x.values[a] == v;
      if (all) {
        ++hits;
        got = s.class_label(r.consequent);
      }
    }
    if (hits > 1 || want != got) ++disagreements;
  }
  Outcome o;
  o.pass = disagreements == 0 && rules.size() == reference.size();
  o.detail = std::to_string(rules.size()) + " rules extracted, " + std::to_string(contexts) +
             " contexts enumerated, " + std::to_string(disagreements) + " disagreements";
  return o;
}

std::size_t identity_checks = 0, identity_failures = 0;

void check_identities(const eval::EvalReport& r) {
  for (const auto& f : r.fold_results) {
    ++identity_checks;
    const double tol = 1e-12 * std::max(1.0, f.accuracy);
    bool ok = std::abs(f.weighted.recall - f.accuracy) <= tol;
    for (const auto& m : f.per_class) {
      ok = ok && m.fmeasure >= std::min(m.precision, m.recall) - 1e-12 &&
           m.fmeasure <= std::max(m.precision, m.recall) + 1e-12;
    }
    ok = ok && r.weighted_mean.fmeasure >= 0.0 && r.weighted_mean.fmeasure <= 1.0;
    if (!ok) ++identity_failures;
  }
}

struct GridResult {
  std::size_t cells = 0, wins = 0, high_cells = 0;
  double high_delta_sum = 0.0;
  std::string table;
};

GridResult robustness_grid(noise::ScoreDefinition score) {
  GridResult g;
  std::ostringstream table;
  for (const auto& persona : synth::bundled_personas()) {
    for (std::size_t n : {500, 2000, 8000}) {
      for (double rate : {0.02, 0.05, 0.10}) {
        double sum = 0.0;
        std::size_t wins = 0;
        for (std::uint64_t seed = 1000; seed < 1010; ++seed) {
          const auto data = synth::generate(persona, n, rate, seed);
          eval::PipelineParams p;
          p.score = score;
          const auto cmp = eval::compare(data.dataset, p, seed);
          check_identities(cmp.base);
          check_identities(cmp.robust);
          const double delta = cmp.robust.weighted_mean.fmeasure - cmp.base.weighted_mean.fmeasure;
          sum += delta;
          ++g.cells;
          if (delta >= 0.0) {
            ++g.wins;
            ++wins;
          }
          if (rate == 0.10) {
            ++g.high_cells;
            g.high_delta_sum += delta;
          }
        }
        char line[160];
        std::snprintf(line, sizeof line, "    %-18s n=%-5zu rate=%.2f  robust>=base %2zu/10  mean delta %+.5f\n",
                      persona.name().c_str(), n, rate, wins, sum / 10);
        table << line;
      }
    }
  }
  g.table = table.str();
  return g;
}

Outcome robustness(std::string* tables) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto lik = robustness_grid(noise::ScoreDefinition::kLikelihood);
  const auto post = robustness_grid(noise::ScoreDefinition::kPosterior);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  *tables = "  likelihood score:\n" + lik.table + "  posterior score:\n" + post.table;
  auto summary = [](const char* name, const GridResult& g) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "%s %zu/%zu cells (%.1f%%), mean delta at 10%% %+.6f", name, g.wins,
                  g.cells, 100.0 * g.wins / g.cells, g.high_delta_sum / g.high_cells);
    return std::string(buf);
  };
  Outcome o;
  // The default score definition decides the verdict; the other is reported.
  o.pass = lik.wins * 10 >= lik.cells * 9 && lik.high_delta_sum / lik.high_cells > 0.0;
  char t[48];
  std::snprintf(t, sizeof t, "; %.1fs", secs);
  o.detail = summary("likelihood", lik) + "; " + summary("posterior", post) + t;
  return o;
}

bool same_metrics(const eval::EvalReport& a, const eval::EvalReport& b) {
  if (a.fold_results.size() != b.fold_results.size()) return false;
  for (std::size_t i = 0; i < a.fold_results.size(); ++i) {
    const auto& x = a.fold_results[i];
    const auto& y = b.fold_results[i];
    if (!(x.confusion == y.confusion) || x.per_class != y.per_class || !(x.weighted == y.weighted) ||
        x.accuracy != y.accuracy || x.test_ids != y.test_ids) {
      return false;
    }
  }
  return a.per_class_mean == b.per_class_mean && a.weighted_mean == b.weighted_mean &&
         a.accuracy_mean == b.accuracy_mean;
}

Outcome noop_equivalence() {
  std::size_t runs = 0, differing = 0;
  for (const auto& persona : synth::bundled_personas()) {
    for (std::size_t n : {500, 2000, 8000}) {
      for (std::uint64_t seed : {1, 2, 3}) {
        const auto data = synth::generate(persona, n, 0.0, seed);
        for (bool stratified : {false, true}) {
          eval::PipelineParams p;
          p.stratified = stratified;
          const auto cmp = eval::compare(data.dataset, p, seed);
          check_identities(cmp.base);
          check_identities(cmp.robust);
          ++runs;
          if (!same_metrics(cmp.base, cmp.robust)) ++differing;
        }
      }
    }
  }
  Outcome o;
  o.pass = differing == 0;
  o.detail = std::to_string(runs) + " noise-free comparisons, " + std::to_string(differing) +
             " with differing metrics";
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome cli_determinism() {
  const fs::path root = fs::temp_directory_path() / ("robustpred-accept-" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  {
    std::ofstream raw(root / "raw.csv");
    raw << "timestamp,direction,duration_seconds,counterpart,location,situation,event_type\n"
           "2004-03-05T09:12:44,incoming,0,047XXXX231,Office,Meeting,\n"
           "2004-03-05T13:05:10,outgoing,120,047XXXX231,Office,Lunch,\n"
           "2004-03-05T19:30:00,incoming,0,047XXXX233,Home,Dinner,missed\n"
           "2004-03-06T10:00:00,incoming,200,047XXXX232,Home,,\n";
  }
  const std::string in = (root / "in.csv").string();
  const std::vector<std::vector<std::string>> commands = {
      {"synth", "--persona", "student", "--size", "1000", "--noise-rate", "0.05", "--seed", "3",
       "--output", "@syn.csv"},
      {"preprocess", "--input", (root / "raw.csv").string(), "--output", "@pre.csv", "--segments",
       "09:00,11:00,24:00"},
      {"detect-noise", "--input", in, "--output", "@noise.csv", "--model", "@model.txt"},
      {"train", "--input", in, "--output", "@tree"},
      {"train", "--input", in, "--output", "@tree-base", "--variant", "base"},
      {"evaluate", "--input", in, "--output", "@eval.csv", "--seed", "9"},
      {"compare", "--input", in, "--output", "@compare.csv", "--seed", "9"},
  };
  std::ostringstream sink;
  Outcome o;
  if (cli::run({"robustpred", "synth", "--persona", "field-technician", "--size", "800",
                "--noise-rate", "0.1", "--seed", "5", "--output", in},
               sink, sink) != 0) {
    o.pass = false;
    o.detail = "could not create input";
    return o;
  }
  for (const char* round : {"a", "b"}) {
    fs::create_directories(root / round);
    for (std::size_t k = 0; k < commands.size(); ++k) {
      auto cmd = commands[k];
      for (auto& arg : cmd) {
        if (arg.rfind('@', 0) == 0) arg = (root / round / arg.substr(1)).string();
      }
      cmd.insert(cmd.begin(), "robustpred");
      std::ostringstream out, err;
      const int code = cli::run(cmd, out, err);
      std::ofstream(root / round / (std::to_string(k) + "-" + cmd[1] + ".stdout"))
          << code << '\n' << out.str();
    }
  }
  std::size_t files = 0, differing = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    ++files;
    const auto other = root / "b" / entry.path().filename();
    if (!fs::exists(other) || slurp(entry.path()) != slurp(other)) ++differing;
  }
  fs::remove_all(root);
  o.pass = differing == 0 && files >= 13;
  o.detail = std::to_string(commands.size()) + " commands run twice, " + std::to_string(files) +
             " output files compared, " + std::to_string(differing) + " differ";
  return o;
}

}  // namespace

int main() {
  const auto suite = small_suite(300, 20240501);
  std::string tables;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"laplace smoothing worked example", laplace_example},
      {"sample call dataset priors and conditionals", sample_tables},
      {"naive Bayes matches exact oracle", [&] { return nbc_oracle(suite); }},
      {"noise flagging contract", [&] { return noise_contract(suite); }},
      {"seven-rule recovery", rule_recovery},
      {"robust variant does not lose under label noise", [&] { return robustness(&tables); }},
      {"filter is a no-op on noise-free data", noop_equivalence},
      {"command-line determinism", cli_determinism},
      {"metric identities", [] {
         Outcome o;
         o.pass = identity_failures == 0 && identity_checks > 0;
         o.detail = std::to_string(identity_checks) + " fold reports checked, " +
                    std::to_string(identity_failures) + " failures";
         return o;
       }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": "
              << o.detail << std::endl;
    if (i == 5 && !tables.empty()) std::cout << tables << std::flush;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
