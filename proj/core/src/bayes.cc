#include "robustpred/bayes.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>

#include "robustpred/error.h"
#include "robustpred/text.h"

namespace robustpred::bayes {
namespace {

constexpr double kRelativeTolerance = 1e-9;

double log_ratio(std::int64_t num, std::int64_t den) {
  if (num == 0) return -std::numeric_limits<double>::infinity();
  return std::log(static_cast<double>(num)) - std::log(static_cast<double>(den));
}

std::int64_t parse_count(const std::string& s, std::size_t line_no) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) {
    throw ParseError(line_no, "count", "expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

}  // namespace

bool scores_equal(double a, double b) {
  if (a == b) return true;  // covers matching infinities
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= kRelativeTolerance * scale;
}

bool score_less(double a, double b) { return a < b && !scores_equal(a, b); }

double LogLikelihood::probability() const { return std::exp(log_prob); }

BayesModel BayesModel::fit(const Dataset& dataset) {
  if (dataset.empty()) throw Error("naive Bayes: cannot fit an empty dataset");
  BayesModel m;
  m.schema_ = dataset.schema_ptr();
  const auto& schema = *m.schema_;
  const std::size_t n_class = schema.class_count();
  m.class_counts_.assign(n_class, 0);
  m.offsets_.resize(schema.attribute_count());
  std::size_t cells = 0;
  for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
    m.offsets_[a] = cells;
    cells += schema.domain(a).size() * n_class;
  }
  m.cond_counts_.assign(cells, 0);

  for (const Instance& inst : dataset.instances()) {
    ++m.class_counts_.at(static_cast<std::size_t>(inst.label));
    for (std::size_t a = 0; a < inst.values.size(); ++a) {
      if (inst.values[a] == kOutOfDomain) continue;
      ++m.cond_counts_[m.cell(a, inst.values[a], inst.label)];
    }
  }
  m.total_ = static_cast<std::int64_t>(dataset.size());

  m.cardinality_.assign(schema.attribute_count(), 0);
  for (std::size_t a = 0; a < schema.attribute_count(); ++a) {
    for (std::size_t v = 0; v < schema.domain(a).size(); ++v) {
      bool seen = false;
      for (std::size_t c = 0; c < n_class && !seen; ++c) {
        seen = m.cond_counts_[m.cell(a, static_cast<ValueId>(v), static_cast<ClassId>(c))] > 0;
      }
      if (seen) ++m.cardinality_[a];
    }
  }
  return m;
}

std::size_t BayesModel::cell(std::size_t attribute, ValueId value, ClassId c) const {
  return offsets_[attribute] + static_cast<std::size_t>(value) * class_counts_.size() +
         static_cast<std::size_t>(c);
}

void BayesModel::check_class(ClassId c) const {
  if (c < 0 || static_cast<std::size_t>(c) >= class_counts_.size()) {
    throw Error("naive Bayes: class id " + std::to_string(c) + " is not in the class set");
  }
}

std::int64_t BayesModel::class_count(ClassId c) const {
  check_class(c);
  return class_counts_[static_cast<std::size_t>(c)];
}

std::int64_t BayesModel::cond_count(std::size_t attribute, ValueId value, ClassId c) const {
  check_class(c);
  if (attribute >= offsets_.size()) throw Error("naive Bayes: attribute index out of range");
  if (value < 0 || static_cast<std::size_t>(value) >= schema_->domain(attribute).size()) return 0;
  return cond_counts_[cell(attribute, value, c)];
}

std::int64_t BayesModel::value_cardinality(std::size_t attribute) const {
  return cardinality_.at(attribute);
}

Ratio BayesModel::prior(ClassId c) const { return Ratio(class_count(c), total_); }

Ratio BayesModel::conditional(std::size_t attribute, ValueId value, ClassId c,
                              Smoothing smoothing) const {
  const std::int64_t count = cond_count(attribute, value, c);
  const std::int64_t n_c = class_counts_[static_cast<std::size_t>(c)];
  if (smoothing == Smoothing::kLaplace) {
    return Ratio(count + 1, n_c + cardinality_[attribute]);
  }
  if (n_c == 0) {
    throw Error("naive Bayes: unsmoothed conditional undefined for class '" +
                schema_->class_label(c) + "' with no training instances");
  }
  return Ratio(count, n_c);
}

LogLikelihood BayesModel::likelihood(const Instance& instance, ClassId c) const {
  check_class(c);
  const std::int64_t n_c = class_counts_[static_cast<std::size_t>(c)];
  const std::size_t n_attr = std::min(instance.values.size(), offsets_.size());

  bool needs_smoothing = n_c == 0;
  double raw = 0.0;
  for (std::size_t a = 0; a < n_attr && !needs_smoothing; ++a) {
    const std::int64_t count = cond_count(a, instance.values[a], c);
    if (count == 0) {
      needs_smoothing = true;
    } else {
      raw += log_ratio(count, n_c);
    }
  }
  if (!needs_smoothing) return {raw, false};

  double smoothed = 0.0;
  for (std::size_t a = 0; a < n_attr; ++a) {
    smoothed += log_ratio(cond_count(a, instance.values[a], c) + 1, n_c + cardinality_[a]);
  }
  return {smoothed, true};
}

double BayesModel::log_scoring_prior(ClassId c) const {
  const std::int64_t n_c = class_count(c);
  if (n_c == 0) {
    return log_ratio(1, total_ + static_cast<std::int64_t>(class_counts_.size()));
  }
  return log_ratio(n_c, total_);
}

Prediction BayesModel::predict(const Instance& instance) const {
  Prediction best{0, -std::numeric_limits<double>::infinity()};
  for (std::size_t c = 0; c < class_counts_.size(); ++c) {
    const auto id = static_cast<ClassId>(c);
    const double score = likelihood(instance, id).log_prob + log_scoring_prior(id);
    if (c == 0 || score_less(best.log_score, score)) best = {id, score};
  }
  return best;
}

void BayesModel::write(std::ostream& out) const {
  const auto& s = *schema_;
  out << "total," << total_ << '\n';
  for (std::size_t c = 0; c < s.class_count(); ++c) {
    out << "class," << s.class_set()[c] << ',' << class_counts_[c] << '\n';
  }
  for (std::size_t a = 0; a < s.attribute_count(); ++a) {
    out << "attribute," << s.attribute(a);
    for (const auto& v : s.domain(a)) out << ',' << v;
    out << '\n';
  }
  for (std::size_t a = 0; a < s.attribute_count(); ++a) {
    for (std::size_t v = 0; v < s.domain(a).size(); ++v) {
      for (std::size_t c = 0; c < s.class_count(); ++c) {
        out << "count," << s.attribute(a) << ',' << s.domain(a)[v] << ',' << s.class_set()[c]
            << ',' << cond_counts_[cell(a, static_cast<ValueId>(v), static_cast<ClassId>(c))]
            << '\n';
      }
    }
  }
}

BayesModel BayesModel::read(std::istream& in) {
  std::int64_t total = -1;
  std::vector<std::string> classes;
  std::vector<std::int64_t> class_counts;
  std::vector<std::string> attributes;
  std::vector<std::vector<std::string>> domains;
  struct Entry {
    std::vector<std::string> fields;
    std::size_t line;
  };
  std::vector<Entry> counts;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = text::chomp(line);
    if (row.empty()) continue;
    auto fields = text::split(row);
    const std::string& tag = fields[0];
    if (tag == "total" && fields.size() == 2) {
      total = parse_count(fields[1], line_no);
    } else if (tag == "class" && fields.size() == 3) {
      classes.push_back(fields[1]);
      class_counts.push_back(parse_count(fields[2], line_no));
    } else if (tag == "attribute" && fields.size() >= 2) {
      attributes.push_back(fields[1]);
      domains.emplace_back(fields.begin() + 2, fields.end());
    } else if (tag == "count" && fields.size() == 5) {
      counts.push_back({std::move(fields), line_no});
    } else {
      throw ParseError(line_no, tag, "unrecognised model row");
    }
  }
  if (total < 0) throw ParseError(line_no, "total", "missing total row");

  BayesModel m;
  try {
    m.schema_ = std::make_shared<const AttributeSchema>(attributes, domains, classes);
  } catch (const Error& e) {
    throw ParseError(line_no, "schema", e.what());
  }
  const auto& s = *m.schema_;
  m.total_ = total;
  m.class_counts_ = class_counts;
  m.offsets_.resize(s.attribute_count());
  std::size_t cells = 0;
  for (std::size_t a = 0; a < s.attribute_count(); ++a) {
    m.offsets_[a] = cells;
    cells += s.domain(a).size() * s.class_count();
  }
  m.cond_counts_.assign(cells, 0);
  for (const auto& e : counts) {
    const auto a = s.attribute_index(e.fields[1]);
    if (!a) throw ParseError(e.line, "attribute", "unknown attribute '" + e.fields[1] + "'");
    const ValueId v = s.value_id(*a, e.fields[2]);
    if (v == kOutOfDomain) throw ParseError(e.line, "value", "unknown value '" + e.fields[2] + "'");
    const auto c = s.class_id(e.fields[3]);
    if (!c) throw ParseError(e.line, "class", "unknown class '" + e.fields[3] + "'");
    m.cond_counts_[m.cell(*a, v, *c)] = parse_count(e.fields[4], e.line);
  }

  std::int64_t sum = 0;
  for (auto n : m.class_counts_) sum += n;
  if (sum != total) throw ParseError(line_no, "total", "class counts do not sum to total");

  m.cardinality_.assign(s.attribute_count(), 0);
  for (std::size_t a = 0; a < s.attribute_count(); ++a) {
    for (std::size_t v = 0; v < s.domain(a).size(); ++v) {
      std::int64_t row = 0;
      for (std::size_t c = 0; c < s.class_count(); ++c) {
        row += m.cond_counts_[m.cell(a, static_cast<ValueId>(v), static_cast<ClassId>(c))];
      }
      if (row > 0) ++m.cardinality_[a];
    }
  }
  return m;
}

}  // namespace robustpred::bayes
