#include "robustpred/metrics.h"

#include "robustpred/error.h"

namespace robustpred::eval {
namespace {

double safe_ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionCounts::ConfusionCounts(std::size_t class_count)
    : n_(class_count), cells_(class_count * class_count, 0) {}

void ConfusionCounts::add(ClassId truth, ClassId predicted) {
  if (truth < 0 || predicted < 0 || static_cast<std::size_t>(truth) >= n_ ||
      static_cast<std::size_t>(predicted) >= n_) {
    throw Error("confusion counts: class id out of range");
  }
  ++cells_[static_cast<std::size_t>(truth) * n_ + static_cast<std::size_t>(predicted)];
  ++total_;
}

std::size_t ConfusionCounts::count(ClassId truth, ClassId predicted) const {
  return cells_.at(static_cast<std::size_t>(truth) * n_ + static_cast<std::size_t>(predicted));
}

std::size_t ConfusionCounts::fp(ClassId c) const {
  std::size_t sum = 0;
  for (std::size_t t = 0; t < n_; ++t) {
    if (static_cast<ClassId>(t) != c) sum += count(static_cast<ClassId>(t), c);
  }
  return sum;
}

std::size_t ConfusionCounts::fn(ClassId c) const {
  std::size_t sum = 0;
  for (std::size_t p = 0; p < n_; ++p) {
    if (static_cast<ClassId>(p) != c) sum += count(c, static_cast<ClassId>(p));
  }
  return sum;
}

std::size_t ConfusionCounts::correct() const {
  std::size_t sum = 0;
  for (std::size_t c = 0; c < n_; ++c) sum += tp(static_cast<ClassId>(c));
  return sum;
}

double ConfusionCounts::accuracy() const { return safe_ratio(correct(), total_); }

double precision(const ConfusionCounts& counts, ClassId c) {
  return safe_ratio(counts.tp(c), counts.tp(c) + counts.fp(c));
}

double recall(const ConfusionCounts& counts, ClassId c) {
  return safe_ratio(counts.tp(c), counts.tp(c) + counts.fn(c));
}

double harmonic_mean(double p, double r) { return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r); }

double fmeasure(const ConfusionCounts& counts, ClassId c) {
  return harmonic_mean(precision(counts, c), recall(counts, c));
}

Averages weighted_average(const ConfusionCounts& counts) {
  Averages avg;
  if (counts.total() == 0) return avg;
  const double total = static_cast<double>(counts.total());
  for (std::size_t i = 0; i < counts.class_count(); ++i) {
    const auto c = static_cast<ClassId>(i);
    const double w = static_cast<double>(counts.support(c)) / total;
    if (w == 0.0) continue;
    avg.precision += w * precision(counts, c);
    avg.recall += w * recall(counts, c);
    avg.fmeasure += w * fmeasure(counts, c);
  }
  return avg;
}

}  // namespace robustpred::eval
