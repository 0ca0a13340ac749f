#include "robustpred/noise_filter.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include "robustpred/error.h"
#include "robustpred/text.h"

namespace robustpred::noise {

std::vector<InstanceScore> score_instances(const bayes::BayesModel& model, const Dataset& dataset,
                                           ScoreDefinition definition) {
  std::vector<InstanceScore> out;
  out.reserve(dataset.size());
  for (const Instance& inst : dataset.instances()) {
    const auto lik = model.likelihood(inst, inst.label);
    InstanceScore s;
    s.instance_id = inst.id;
    s.true_label = inst.label;
    s.predicted = model.predict(inst).label;
    s.smoothed = lik.smoothed;
    s.score = lik.log_prob;
    if (definition == ScoreDefinition::kPosterior) s.score += model.log_scoring_prior(inst.label);
    s.status = s.predicted == s.true_label ? Status::kPure : Status::kMisclassified;
    out.push_back(s);
  }
  return out;
}

Partition partition(std::span<const InstanceScore> scores) {
  Partition p;
  for (const auto& s : scores) {
    (s.status == Status::kPure ? p.pure : p.misclassified).push_back(s);
  }
  return p;
}

std::vector<ProbabilityGroup> group_by_probability(std::span<const InstanceScore> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a].score < scores[b].score; });
  std::vector<ProbabilityGroup> groups;
  for (std::size_t i : order) {
    if (groups.empty() || !bayes::scores_equal(groups.back().representative, scores[i].score)) {
      groups.push_back({scores[i].score, {}});
    }
    groups.back().members.push_back(scores[i].instance_id);
  }
  return groups;
}

double noise_threshold(std::span<const InstanceScore> pure) {
  double t = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pure.size(); ++i) {
    if (i == 0 || pure[i].score < t) t = pure[i].score;
  }
  return t;
}

NoiseReport detect_noise(const Dataset& dataset, ScoreDefinition definition) {
  if (dataset.empty()) throw Error("noise detection: empty dataset");
  const auto model = bayes::BayesModel::fit(dataset);
  NoiseReport report;
  report.definition = definition;
  report.scores = score_instances(model, dataset, definition);
  const auto parts = partition(report.scores);
  report.threshold = noise_threshold(parts.pure);
  for (const auto& s : parts.misclassified) {
    if (bayes::score_less(s.score, report.threshold)) report.noise_ids.push_back(s.instance_id);
  }
  report.groups = group_by_probability(report.scores);
  report.noise_fraction =
      static_cast<double>(report.noise_ids.size()) / static_cast<double>(dataset.size());
  return report;
}

Dataset eliminate(const Dataset& dataset, const NoiseReport& report) {
  if (report.scores.size() != dataset.size()) {
    throw Error("eliminate: report covers " + std::to_string(report.scores.size()) +
                " instances, dataset has " + std::to_string(dataset.size()));
  }
  std::vector<bool> drop(dataset.size(), false);
  for (std::size_t id : report.noise_ids) {
    if (id >= dataset.size()) {
      throw Error("eliminate: noise id " + std::to_string(id) + " out of range");
    }
    drop[id] = true;
  }
  std::vector<std::size_t> keep;
  keep.reserve(dataset.size());
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (!drop[dataset[i].id]) keep.push_back(i);
  }
  return dataset.subset(keep);
}

void write_report(std::ostream& out, const NoiseReport& report, const AttributeSchema& schema) {
  std::vector<bool> flagged(report.scores.size(), false);
  for (std::size_t id : report.noise_ids) {
    if (id < flagged.size()) flagged[id] = true;
  }
  out << "# threshold_log=" << text::format_double(report.threshold)
      << " threshold_prob=" << text::format_double(std::exp(report.threshold))
      << " noise_fraction=" << text::format_double(report.noise_fraction)
      << " noise_count=" << report.noise_ids.size() << " score="
      << (report.definition == ScoreDefinition::kLikelihood ? "likelihood" : "posterior")
      << '\n';
  out << "instance_id,true_label,predicted,log_score,smoothed,status,flagged\n";
  for (const auto& s : report.scores) {
    out << s.instance_id << ',' << schema.class_label(s.true_label) << ','
        << schema.class_label(s.predicted) << ',' << text::format_double(s.score) << ','
        << (s.smoothed ? 1 : 0) << ','
        << (s.status == Status::kPure ? "pure" : "misclassified") << ','
        << (s.instance_id < flagged.size() && flagged[s.instance_id] ? 1 : 0) << '\n';
  }
}

}  // namespace robustpred::noise
