#ifndef ROBUSTPRED_RATIO_H_
#define ROBUSTPRED_RATIO_H_

#include <compare>
#include <cstdint>
#include <string>

namespace robustpred {

// Exact non-negative ratio of two counts, kept in lowest terms. Count-based
// probabilities are reported through this type so callers can compare them
// exactly; scoring itself runs in log space.
class Ratio {
 public:
  Ratio() = default;
  // Throws std::invalid_argument on a zero denominator or negative operands.
  Ratio(std::int64_t numerator, std::int64_t denominator);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_zero() const { return num_ == 0; }

  // "n/d" in lowest terms.
  std::string str() const;

  friend bool operator==(const Ratio&, const Ratio&) = default;
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace robustpred

#endif  // ROBUSTPRED_RATIO_H_
