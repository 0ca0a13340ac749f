#ifndef ROBUSTPRED_EVALUATION_H_
#define ROBUSTPRED_EVALUATION_H_

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "robustpred/dataset.h"
#include "robustpred/decision_tree.h"
#include "robustpred/metrics.h"
#include "robustpred/noise_filter.h"

namespace robustpred::eval {

enum class Variant { kBase, kRobust };
std::string_view variant_name(Variant v);

struct Fold {
  Dataset train;
  Dataset test;
  // Positions in the source dataset, ascending.
  std::vector<std::size_t> train_ids;
  std::vector<std::size_t> test_ids;
};

// Seeded shuffle, then `folds` test sets whose sizes differ by at most one.
// Throws Error when folds < 2 or the dataset has fewer instances than folds.
// `stratified` deals each class round-robin across folds instead.
std::vector<Fold> kfold_split(const Dataset& dataset, std::size_t folds, std::uint64_t seed,
                              bool stratified = false);

struct PipelineParams {
  tree::TreeParams tree;
  std::size_t folds = 10;
  noise::ScoreDefinition score = noise::ScoreDefinition::kLikelihood;
  bool stratified = false;
  // Runs folds on worker threads; results are identical either way.
  bool parallel = true;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double fmeasure = 0.0;
  std::size_t support = 0;

  bool operator==(const ClassMetrics&) const = default;
};

struct FoldResult {
  std::size_t fold = 0;
  ConfusionCounts confusion{0};
  std::vector<ClassMetrics> per_class;
  Averages weighted;
  double accuracy = 0.0;
  std::vector<std::size_t> test_ids;
  std::size_t train_size = 0;
  // Training instances left after noise elimination (robust only).
  std::size_t quality_size = 0;
  double noise_fraction = 0.0;
  // Elimination emptied the training set and the raw fold was used instead.
  bool fell_back = false;
};

struct EvalReport {
  Variant variant = Variant::kBase;
  std::uint64_t seed = 0;
  std::size_t folds = 0;
  noise::ScoreDefinition score = noise::ScoreDefinition::kLikelihood;
  std::vector<FoldResult> fold_results;
  // Means over folds.
  std::vector<ClassMetrics> per_class_mean;
  Averages weighted_mean;
  double accuracy_mean = 0.0;
  double noise_fraction_mean = 0.0;
  std::size_t fallback_count = 0;
};

// k-fold evaluation of one variant. Robust folds run noise detection on the
// training part only; test folds are never filtered.
EvalReport run_pipeline(const Dataset& dataset, Variant variant, const PipelineParams& params,
                        std::uint64_t seed);

struct Comparison {
  EvalReport base;
  EvalReport robust;
  // robust - base.
  Averages weighted_delta;
  double accuracy_delta = 0.0;
  std::vector<double> fmeasure_delta_per_class;
};

// Both variants over identical fold partitions.
Comparison compare(const Dataset& dataset, const PipelineParams& params, std::uint64_t seed);

// Rows fold,variant,class,precision,recall,fmeasure,support,noise_fraction for
// every fold and class, "weighted" rows per fold, "mean" aggregate rows, and a
// trailing "summary" line.
void write_report(std::ostream& out, const EvalReport& report, const AttributeSchema& schema);
// Single "summary,variant=...,precision=...,..." line.
void write_summary_line(std::ostream& out, const EvalReport& report);
// Both reports followed by delta rows.
void write_comparison(std::ostream& out, const Comparison& cmp, const AttributeSchema& schema);

}  // namespace robustpred::eval

#endif  // ROBUSTPRED_EVALUATION_H_
