#ifndef ROBUSTPRED_BAYES_H_
#define ROBUSTPRED_BAYES_H_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include "robustpred/dataset.h"
#include "robustpred/ratio.h"

namespace robustpred::bayes {

enum class Smoothing { kNone, kLaplace };

// Two log scores are treated as equal when they differ by at most
// 1e-9 * max(1, |a|, |b|). Products of the same rational factors taken in a
// different order land within this band; distinct count ratios do not.
bool scores_equal(double a, double b);
// a < b and not scores_equal(a, b).
bool score_less(double a, double b);

struct LogLikelihood {
  double log_prob = 0.0;
  // True when at least one raw factor was zero (or the class had no training
  // instances) and every factor was recomputed with the Laplace estimator.
  bool smoothed = false;

  double probability() const;
};

struct Prediction {
  ClassId label = 0;
  // log P(X|C) + log P(C) of the winning class.
  double log_score = 0.0;
};

// Categorical naive Bayes counts. Holds exact integer counts only; smoothing is
// applied at query time. Immutable after fit().
class BayesModel {
 public:
  // Single pass over the data. Throws Error on an empty dataset.
  static BayesModel fit(const Dataset& dataset);

  const AttributeSchema& schema() const { return *schema_; }
  std::int64_t total() const { return total_; }
  std::int64_t class_count(ClassId c) const;
  // Zero for kOutOfDomain or values never seen with class `c`.
  std::int64_t cond_count(std::size_t attribute, ValueId value, ClassId c) const;
  // Distinct values of the attribute observed in training (V).
  std::int64_t value_cardinality(std::size_t attribute) const;

  // |C| / |D|. Throws Error for class ids outside the class set.
  Ratio prior(ClassId c) const;

  // count / |C| without smoothing (throws Error when |C| = 0), or
  // (count + 1) / (|C| + V) with Laplace.
  Ratio conditional(std::size_t attribute, ValueId value, ClassId c, Smoothing smoothing) const;

  // Product of per-attribute conditionals in log space. All factors switch to
  // Laplace together as soon as one raw factor is zero.
  LogLikelihood likelihood(const Instance& instance, ClassId c) const;

  // Prior used for scoring: the raw prior, except that a class with no
  // training instances gets (0 + 1) / (|D| + number of classes).
  double log_scoring_prior(ClassId c) const;

  // argmax over classes of log P(X|C) + log P(C); near-ties (scores_equal)
  // resolve to the earlier class in class-set order.
  Prediction predict(const Instance& instance) const;

  // Audit dump of every count table. read() restores an identical model.
  void write(std::ostream& out) const;
  static BayesModel read(std::istream& in);

 private:
  BayesModel() = default;
  std::size_t cell(std::size_t attribute, ValueId value, ClassId c) const;
  void check_class(ClassId c) const;

  std::shared_ptr<const AttributeSchema> schema_;
  std::int64_t total_ = 0;
  std::vector<std::int64_t> class_counts_;
  // [attribute][value][class] flattened; offsets_[a] is the first cell of `a`.
  std::vector<std::int64_t> cond_counts_;
  std::vector<std::size_t> offsets_;
  std::vector<std::int64_t> cardinality_;
};

}  // namespace robustpred::bayes

#endif  // ROBUSTPRED_BAYES_H_
