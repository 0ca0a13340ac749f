#ifndef ROBUSTPRED_TEXT_H_
#define ROBUSTPRED_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace robustpred::text {

// Splits on every occurrence of `delim`; empty fields are kept.
std::vector<std::string> split(std::string_view line, char delim = ',');

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Strips a trailing '\r' left behind by CRLF files.
std::string_view chomp(std::string_view line);

std::string_view trim(std::string_view s);

// Shortest round-trippable decimal form ("%.17g"), with "-inf"/"inf"/"nan"
// spelled out so reports are byte-stable across libc implementations.
std::string format_double(double v);

// Fixed-point with `digits` decimals.
std::string format_fixed(double v, int digits);

}  // namespace robustpred::text

#endif  // ROBUSTPRED_TEXT_H_
