#ifndef ROBUSTPRED_METRICS_H_
#define ROBUSTPRED_METRICS_H_

#include <cstddef>
#include <vector>

#include "robustpred/dataset.h"

namespace robustpred::eval {

// Confusion matrix over a fixed class set.
class ConfusionCounts {
 public:
  explicit ConfusionCounts(std::size_t class_count);

  void add(ClassId truth, ClassId predicted);

  std::size_t class_count() const { return n_; }
  std::size_t total() const { return total_; }
  std::size_t count(ClassId truth, ClassId predicted) const;
  std::size_t tp(ClassId c) const { return count(c, c); }
  std::size_t fp(ClassId c) const;
  std::size_t fn(ClassId c) const;
  std::size_t tn(ClassId c) const { return total_ - tp(c) - fp(c) - fn(c); }
  // True occurrences of `c` (TP + FN).
  std::size_t support(ClassId c) const { return tp(c) + fn(c); }
  std::size_t correct() const;
  double accuracy() const;

  bool operator==(const ConfusionCounts&) const = default;

 private:
  std::size_t n_;
  std::size_t total_ = 0;
  std::vector<std::size_t> cells_;
};

// 0/0 evaluates to 0 for all three.
double precision(const ConfusionCounts& counts, ClassId c);
double recall(const ConfusionCounts& counts, ClassId c);
double fmeasure(const ConfusionCounts& counts, ClassId c);
// Harmonic mean, 0 when both are 0.
double harmonic_mean(double p, double r);

struct Averages {
  double precision = 0.0;
  double recall = 0.0;
  double fmeasure = 0.0;

  bool operator==(const Averages&) const = default;
};

// Per-class metrics averaged with weights proportional to class support.
Averages weighted_average(const ConfusionCounts& counts);

}  // namespace robustpred::eval

#endif  // ROBUSTPRED_METRICS_H_
