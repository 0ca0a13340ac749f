#ifndef ROBUSTPRED_NOISE_FILTER_H_
#define ROBUSTPRED_NOISE_FILTER_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "robustpred/bayes.h"
#include "robustpred/dataset.h"

namespace robustpred::noise {

// Quantity compared against the noise threshold.
enum class ScoreDefinition {
  // log P(X | C_true)
  kLikelihood,
  // log P(X | C_true) + log P(C_true)
  kPosterior,
};

enum class Status { kPure, kMisclassified };

struct InstanceScore {
  std::size_t instance_id = 0;
  ClassId predicted = 0;
  ClassId true_label = 0;
  double score = 0.0;
  bool smoothed = false;
  Status status = Status::kPure;
};

struct ProbabilityGroup {
  double representative = 0.0;
  std::vector<std::size_t> members;
};

struct NoiseReport {
  std::vector<InstanceScore> scores;
  // Minimum pure score; -inf when nothing was classified correctly.
  double threshold = 0.0;
  std::vector<std::size_t> noise_ids;
  std::vector<ProbabilityGroup> groups;
  double noise_fraction = 0.0;
  ScoreDefinition definition = ScoreDefinition::kLikelihood;
};

std::vector<InstanceScore> score_instances(const bayes::BayesModel& model, const Dataset& dataset,
                                           ScoreDefinition definition = ScoreDefinition::kLikelihood);

struct Partition {
  std::vector<InstanceScore> pure;
  std::vector<InstanceScore> misclassified;
};
// Order-preserving split by status.
Partition partition(std::span<const InstanceScore> scores);

// Groups of (tolerance-)equal scores, ascending by representative. The
// representative is the smallest member score.
std::vector<ProbabilityGroup> group_by_probability(std::span<const InstanceScore> scores);

// Minimum pure score, or -inf for an empty list.
double noise_threshold(std::span<const InstanceScore> pure);

// Fits naive Bayes on the whole dataset, scores it, and flags misclassified
// instances whose score lies strictly below the threshold. Throws Error on an
// empty dataset.
NoiseReport detect_noise(const Dataset& dataset,
                         ScoreDefinition definition = ScoreDefinition::kLikelihood);

// Copy of `dataset` without the flagged instances, ids renumbered. Throws
// Error if the report does not belong to this dataset.
Dataset eliminate(const Dataset& dataset, const NoiseReport& report);

// Header comment with the threshold and noise fraction, then one row per
// instance: instance_id,true_label,predicted,log_score,smoothed,status,flagged.
void write_report(std::ostream& out, const NoiseReport& report, const AttributeSchema& schema);

}  // namespace robustpred::noise

#endif  // ROBUSTPRED_NOISE_FILTER_H_
