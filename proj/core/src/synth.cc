#include "robustpred/synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "robustpred/error.h"
#include "robustpred/rng.h"

namespace robustpred::synth {
namespace {

std::vector<Condition> resolve(const AttributeSchema& schema,
                               const std::vector<NamedCondition>& named,
                               const std::string& persona) {
  std::vector<Condition> out;
  for (const auto& [attr, value] : named) {
    const auto a = schema.attribute_index(attr);
    if (!a) throw Error("persona '" + persona + "': unknown attribute '" + attr + "'");
    const ValueId v = schema.value_id(*a, value);
    if (v == kOutOfDomain) {
      throw Error("persona '" + persona + "': '" + value + "' is not a value of '" + attr + "'");
    }
    out.push_back({*a, v});
  }
  return out;
}

bool all_match(const std::vector<Condition>& conds, std::span<const ValueId> context) {
  return std::all_of(conds.begin(), conds.end(),
                     [&](const Condition& c) { return context[c.attribute] == c.value; });
}

// Visits every context of the product space in odometer order.
template <typename Fn>
void for_each_context(const AttributeSchema& schema, Fn&& fn) {
  const std::size_t n = schema.attribute_count();
  for (std::size_t a = 0; a < n; ++a) {
    if (schema.domain(a).empty()) return;
  }
  std::vector<ValueId> ctx(n, 0);
  while (true) {
    fn(std::span<const ValueId>(ctx));
    std::size_t a = n;
    while (a > 0) {
      --a;
      if (static_cast<std::size_t>(++ctx[a]) < schema.domain(a).size()) break;
      ctx[a] = 0;
      if (a == 0) return;
    }
    if (n == 0) return;
  }
}

std::size_t draw_weighted(Rng& rng, const std::vector<double>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double u = rng.unit() * total;
  double acc = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_positive = i;
    if (u < acc) return i;
  }
  return last_positive;
}

}  // namespace

bool GeneratingRule::matches(std::span<const ValueId> context) const {
  return all_match(conditions, context);
}

Persona::Persona(std::string name, std::vector<std::string> attributes,
                 std::vector<std::vector<std::string>> domains,
                 std::vector<std::vector<double>> weights, std::vector<RuleSpec> rules,
                 std::vector<std::vector<NamedCondition>> exclusions,
                 std::vector<std::string> class_set)
    : name_(std::move(name)), weights_(std::move(weights)) {
  schema_ = std::make_shared<const AttributeSchema>(std::move(attributes), std::move(domains),
                                                    std::move(class_set));
  const auto& schema = *schema_;
  if (weights_.size() != schema.attribute_count()) {
    throw Error("persona '" + name_ + "': one weight vector per attribute required");
  }
  for (std::size_t a = 0; a < weights_.size(); ++a) {
    const auto& w = weights_[a];
    if (w.size() != schema.domain(a).size() ||
        std::any_of(w.begin(), w.end(), [](double x) { return !(x >= 0.0) || !std::isfinite(x); }) ||
        std::accumulate(w.begin(), w.end(), 0.0) <= 0.0) {
      throw Error("persona '" + name_ + "': bad weights for '" + schema.attribute(a) + "'");
    }
  }
  for (const auto& r : rules) {
    const auto label = schema.class_id(r.then);
    if (!label) throw Error("persona '" + name_ + "': unknown class '" + r.then + "'");
    rules_.push_back({resolve(schema, r.when, name_), *label});
  }
  for (const auto& ex : exclusions) exclusions_.push_back(resolve(schema, ex, name_));

  std::size_t reachable = 0;
  for_each_context(schema, [&](std::span<const ValueId> ctx) {
    if (!admissible(ctx)) return;
    const bool covered = std::any_of(rules_.begin(), rules_.end(),
                                     [&](const GeneratingRule& r) { return r.matches(ctx); });
    if (!covered) {
      std::string desc;
      for (std::size_t a = 0; a < ctx.size(); ++a) {
        desc += (a ? ", " : "") + std::string(schema.value_name(a, ctx[a]));
      }
      throw Error("persona '" + name_ + "': rules do not cover context (" + desc + ")");
    }
    bool positive = true;
    for (std::size_t a = 0; a < ctx.size(); ++a) {
      positive = positive && weights_[a][static_cast<std::size_t>(ctx[a])] > 0.0;
    }
    reachable += positive ? 1 : 0;
  });
  if (reachable == 0) {
    throw Error("persona '" + name_ + "': no admissible context has positive weight");
  }
}

bool Persona::admissible(std::span<const ValueId> context) const {
  return std::none_of(exclusions_.begin(), exclusions_.end(),
                      [&](const auto& ex) { return all_match(ex, context); });
}

ClassId Persona::label(std::span<const ValueId> context) const {
  if (context.size() != schema_->attribute_count() || !admissible(context)) {
    throw Error("persona '" + name_ + "': context is not admissible");
  }
  for (const auto& r : rules_) {
    if (r.matches(context)) return r.label;
  }
  throw Error("persona '" + name_ + "': no rule matches");
}

std::vector<std::vector<ValueId>> Persona::admissible_contexts() const {
  std::vector<std::vector<ValueId>> out;
  for_each_context(*schema_, [&](std::span<const ValueId> ctx) {
    if (!admissible(ctx)) return;
    for (std::size_t a = 0; a < ctx.size(); ++a) {
      if (weights_[a][static_cast<std::size_t>(ctx[a])] <= 0.0) return;
    }
    out.emplace_back(ctx.begin(), ctx.end());
  });
  return out;
}

Generated generate(const Persona& persona, std::size_t n, double noise_rate, std::uint64_t seed) {
  if (n == 0) throw Error("generate: n must be at least 1");
  if (!(noise_rate >= 0.0 && noise_rate < 1.0)) {
    throw Error("generate: noise rate must lie in [0, 1)");
  }
  Rng rng(seed);
  const auto& schema = persona.schema();
  std::vector<std::pair<std::vector<ValueId>, ClassId>> rows;
  rows.reserve(n);
  std::vector<ValueId> ctx(schema.attribute_count());
  for (std::size_t i = 0; i < n; ++i) {
    do {
      for (std::size_t a = 0; a < ctx.size(); ++a) {
        ctx[a] = static_cast<ValueId>(draw_weighted(rng, persona.weights()[a]));
      }
    } while (!persona.admissible(ctx));
    rows.emplace_back(ctx, persona.label(ctx));
  }

  NoiseMask mask;
  mask.requested_rate = noise_rate;
  // The epsilon keeps products such as 0.29 * 100 from landing just below an
  // integer.
  const auto flips = static_cast<std::size_t>(
      std::floor(noise_rate * static_cast<double>(n) + 1e-9));
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `flips` slots are a uniform sample.
  for (std::size_t i = 0; i < flips; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(ids[i], ids[j]);
  }
  ids.resize(flips);
  std::sort(ids.begin(), ids.end());
  const auto n_class = static_cast<std::uint64_t>(schema.class_count());
  for (std::size_t id : ids) {
    const ClassId original = rows[id].second;
    auto pick = static_cast<ClassId>(rng.below(n_class - 1));
    if (pick >= original) ++pick;
    rows[id].second = pick;
    mask.flipped_ids.push_back(id);
    mask.original_labels.push_back(original);
  }
  mask.realized_rate = static_cast<double>(flips) / static_cast<double>(n);
  return {Dataset::from_labeled(persona.schema_ptr(), std::move(rows)), std::move(mask)};
}

void write_mask(std::ostream& out, const NoiseMask& mask, const AttributeSchema& schema) {
  out << "id,original_label\n";
  for (std::size_t i = 0; i < mask.flipped_ids.size(); ++i) {
    out << mask.flipped_ids[i] << ',' << schema.class_label(mask.original_labels[i]) << '\n';
  }
}

const std::vector<Persona>& bundled_personas() {
  static const std::vector<Persona> kPersonas = [] {
    std::vector<Persona> out;

    // Office worker from the seven-rule call behavior example. Home calls
    // come only from friends or unknown numbers; meetings only from the boss
    // or colleagues; lunch only from friends or unknown numbers.
    out.emplace_back(
        "office-professional",
        std::vector<std::string>{"Location", "Situation", "Relationship"},
        std::vector<std::vector<std::string>>{
            {"Home", "Office"},
            {"Meeting", "Lecture", "Lunch"},
            {"Boss", "Friend", "Colleague", "Unknown"}},
        std::vector<std::vector<double>>{{0.4, 0.6}, {0.2, 0.6, 0.2}, {0.4, 0.2, 0.2, 0.2}},
        std::vector<RuleSpec>{
            {{{"Location", "Home"}, {"Relationship", "Unknown"}}, "Missed"},
            {{{"Location", "Home"}, {"Relationship", "Friend"}}, "Accept"},
            {{{"Location", "Office"}, {"Situation", "Meeting"}, {"Relationship", "Colleague"}}, "Reject"},
            {{{"Location", "Office"}, {"Situation", "Meeting"}, {"Relationship", "Boss"}}, "Accept"},
            {{{"Location", "Office"}, {"Situation", "Lecture"}}, "Reject"},
            {{{"Location", "Office"}, {"Situation", "Lunch"}, {"Relationship", "Unknown"}}, "Missed"},
            {{{"Location", "Office"}, {"Situation", "Lunch"}, {"Relationship", "Friend"}}, "Accept"},
        },
        std::vector<std::vector<NamedCondition>>{
            {{"Location", "Home"}, {"Relationship", "Boss"}},
            {{"Location", "Home"}, {"Relationship", "Colleague"}},
            {{"Location", "Office"}, {"Situation", "Meeting"}, {"Relationship", "Friend"}},
            {{"Location", "Office"}, {"Situation", "Meeting"}, {"Relationship", "Unknown"}},
            {{"Location", "Office"}, {"Situation", "Lunch"}, {"Relationship", "Boss"}},
            {{"Location", "Office"}, {"Situation", "Lunch"}, {"Relationship", "Colleague"}},
        },
        std::vector<std::string>{"Accept", "Reject", "Missed"});

    // Student: nights are missed, lectures rejected, calls from transit are
    // the student's own. Exclusions keep those causes from overlapping.
    const std::vector<std::string> student_times = {
        "Weekday[00:00-07:00]", "Weekday[07:00-12:00]", "Weekday[12:00-18:00]",
        "Weekday[18:00-24:00]", "Weekend[00:00-09:00]", "Weekend[09:00-24:00]"};
    std::vector<std::vector<NamedCondition>> student_exclusions = {
        {{"Situation", "Lecture"}, {"Location", "Transit"}},
        {{"Situation", "Lecture"}, {"Location", "Home"}},
    };
    for (const auto* night : {&student_times[0], &student_times[4]}) {
      student_exclusions.push_back({{"DayTime", *night}, {"Situation", "Lecture"}});
      student_exclusions.push_back({{"DayTime", *night}, {"Location", "Transit"}});
    }
    out.emplace_back(
        "student",
        std::vector<std::string>{"DayTime", "Location", "Situation", "Relationship"},
        std::vector<std::vector<std::string>>{
            student_times,
            {"Home", "Campus", "Library", "Transit"},
            {"Lecture", "Study", "Social"},
            {"Family", "Friend", "Classmate", "Unknown"}},
        std::vector<std::vector<double>>{{0.12, 0.22, 0.22, 0.18, 0.08, 0.18},
                                         {0.35, 0.3, 0.15, 0.2},
                                         {0.3, 0.35, 0.35},
                                         {0.2, 0.35, 0.3, 0.15}},
        std::vector<RuleSpec>{
            {{{"DayTime", "Weekday[00:00-07:00]"}}, "Missed"},
            {{{"DayTime", "Weekend[00:00-09:00]"}}, "Missed"},
            {{{"Situation", "Lecture"}}, "Reject"},
            {{{"Location", "Transit"}}, "Outgoing"},
            {{}, "Accept"},
        },
        std::move(student_exclusions));

    // Field technician: mostly accepts, misses calls while driving except
    // when calling family, and screens some calls at home.
    const std::vector<std::string> tech_times = {
        "Weekday[00:00-08:00]", "Weekday[08:00-17:00]", "Weekday[17:00-24:00]",
        "Weekend[00:00-08:00]", "Weekend[08:00-17:00]", "Weekend[17:00-24:00]"};
    out.emplace_back(
        "field-technician",
        std::vector<std::string>{"DayTime", "Location", "Relationship"},
        std::vector<std::vector<std::string>>{
            tech_times,
            {"Office", "Site", "Vehicle", "Home"},
            {"Manager", "Customer", "Family", "Colleague", "Unknown"}},
        std::vector<std::vector<double>>{{0.15, 0.3, 0.2, 0.05, 0.15, 0.15},
                                         {0.2, 0.3, 0.25, 0.25},
                                         {0.15, 0.4, 0.15, 0.15, 0.15}},
        std::vector<RuleSpec>{
            {{{"Location", "Vehicle"}, {"Relationship", "Family"}}, "Outgoing"},
            {{{"Location", "Vehicle"}}, "Missed"},
            {{{"Location", "Home"}, {"Relationship", "Customer"}}, "Reject"},
            {{{"Location", "Home"}, {"Relationship", "Unknown"}}, "Reject"},
            {{}, "Accept"},
        },
        std::vector<std::vector<NamedCondition>>{
            {{"Location", "Vehicle"}, {"Relationship", "Manager"}},
            {{"Location", "Vehicle"}, {"Relationship", "Colleague"}},
            {{"Location", "Vehicle"}, {"Relationship", "Unknown"}},
            {{"Location", "Home"}, {"Relationship", "Colleague"}},
        });
    return out;
  }();
  return kPersonas;
}

const Persona& bundled_persona(std::string_view name) {
  for (const auto& p : bundled_personas()) {
    if (p.name() == name) return p;
  }
  throw Error("unknown persona '" + std::string(name) + "'");
}

}  // namespace robustpred::synth
