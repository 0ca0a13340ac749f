#include "robustpred/ratio.h"

#include <numeric>
#include <stdexcept>

namespace robustpred {
namespace {
__extension__ typedef __int128 Wide;
}  // namespace

Ratio::Ratio(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0 || numerator < 0) {
    throw std::invalid_argument("Ratio: requires numerator >= 0 and denominator > 0");
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

std::string Ratio::str() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
  const Wide lhs = static_cast<Wide>(a.num_) * b.den_;
  const Wide rhs = static_cast<Wide>(b.num_) * a.den_;
  return lhs <=> rhs;
}

}  // namespace robustpred
