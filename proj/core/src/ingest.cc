#include "robustpred/ingest.h"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <istream>
#include <ostream>

#include "robustpred/error.h"
#include "robustpred/text.h"

namespace robustpred::ingest {
namespace {

constexpr int kSecondsPerDay = 24 * 3600;
constexpr std::size_t kRequiredColumns = 6;

constexpr const char* kDayNames[] = {"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};

template <typename T>
bool parse_int(std::string_view s, T& out) {
  if (s.empty()) return false;
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::string clock_label(int seconds) {
  char buf[16];
  const int h = seconds / 3600;
  const int m = (seconds % 3600) / 60;
  const int s = seconds % 60;
  if (s != 0) {
    std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", h, m, s);
  } else {
    std::snprintf(buf, sizeof(buf), "%02d:%02d", h, m);
  }
  return buf;
}

// "HH:MM" or "HH:MM:SS"; 24:00 is allowed.
std::optional<int> parse_clock(std::string_view text) {
  const auto parts = text::split(text::trim(text), ':');
  if (parts.size() < 2 || parts.size() > 3) return std::nullopt;
  int h = 0, m = 0, s = 0;
  if (!parse_int(parts[0], h) || !parse_int(parts[1], m)) return std::nullopt;
  if (parts.size() == 3 && !parse_int(parts[2], s)) return std::nullopt;
  if (h < 0 || h > 24 || m < 0 || m > 59 || s < 0 || s > 59) return std::nullopt;
  const int total = h * 3600 + m * 60 + s;
  if (total > kSecondsPerDay) return std::nullopt;
  return total;
}

bool header_matches(const std::vector<std::string>& header) {
  const auto expected = text::split(kRawHeader);
  if (header.size() != expected.size() && header.size() != kRequiredColumns) return false;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (text::trim(header[i]) != expected[i]) return false;
  }
  return true;
}

}  // namespace

int LocalTime::weekday() const {
  const std::chrono::year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                                        std::chrono::day{day}};
  const std::chrono::weekday wd{std::chrono::sys_days{ymd}};
  return static_cast<int>(wd.iso_encoding()) - 1;
}

std::optional<LocalTime> parse_timestamp(std::string_view text) {
  text = text::trim(text);
  // YYYY-MM-DDTHH:MM:SS
  if (text.size() != 19 || text[4] != '-' || text[7] != '-' ||
      (text[10] != 'T' && text[10] != ' ') || text[13] != ':' || text[16] != ':') {
    return std::nullopt;
  }
  int y = 0;
  unsigned mo = 0, d = 0;
  int h = 0, mi = 0, s = 0;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), mo) ||
      !parse_int(text.substr(8, 2), d) || !parse_int(text.substr(11, 2), h) ||
      !parse_int(text.substr(14, 2), mi) || !parse_int(text.substr(17, 2), s)) {
    return std::nullopt;
  }
  const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{mo},
                                        std::chrono::day{d}};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 59) return std::nullopt;
  return LocalTime{y, mo, d, h * 3600 + mi * 60 + s};
}

std::vector<RawCallEvent> parse_call_log(std::istream& in) {
  std::vector<RawCallEvent> events;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) return events;
  ++line_no;
  if (!header_matches(text::split(text::chomp(line)))) {
    throw ParseError(line_no, "header", "expected '" + std::string(kRawHeader) + "'");
  }
  static const auto kColumns = text::split(kRawHeader);
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = text::chomp(line);
    if (text::trim(row).empty()) continue;
    const auto fields = text::split(row);
    if (fields.size() != kColumns.size() && fields.size() != kRequiredColumns) {
      throw ParseError(line_no, "row",
                       "expected 6 or 7 fields, found " + std::to_string(fields.size()));
    }
    RawCallEvent ev;
    auto ts = parse_timestamp(fields[0]);
    if (!ts) throw ParseError(line_no, kColumns[0], "bad timestamp '" + fields[0] + "'");
    ev.timestamp = *ts;

    const auto dir = text::trim(fields[1]);
    if (dir == "incoming") {
      ev.direction = Direction::kIncoming;
    } else if (dir == "outgoing") {
      ev.direction = Direction::kOutgoing;
    } else {
      throw ParseError(line_no, kColumns[1], "expected incoming or outgoing, got '" + fields[1] + "'");
    }

    if (!parse_int(text::trim(fields[2]), ev.duration_seconds) || ev.duration_seconds < 0) {
      throw ParseError(line_no, kColumns[2], "expected a non-negative integer, got '" + fields[2] + "'");
    }

    ev.counterpart = std::string(text::trim(fields[3]));
    if (ev.counterpart.empty()) throw ParseError(line_no, kColumns[3], "empty counterpart");

    if (auto loc = text::trim(fields[4]); !loc.empty()) ev.location = std::string(loc);
    if (auto sit = text::trim(fields[5]); !sit.empty()) ev.situation = std::string(sit);

    if (fields.size() == kColumns.size()) {
      const auto type = text::trim(fields[6]);
      if (type == "missed") {
        if (ev.direction != Direction::kIncoming || ev.duration_seconds != 0) {
          throw ParseError(line_no, kColumns[6],
                           "missed marker requires an incoming call with zero duration");
        }
        ev.missed = true;
      } else if (!type.empty() && type != "call") {
        throw ParseError(line_no, kColumns[6], "expected call, missed or empty, got '" + fields[6] + "'");
      }
    }
    events.push_back(std::move(ev));
  }
  return events;
}

std::string_view derive_behavior(const RawCallEvent& event) {
  if (event.direction == Direction::kOutgoing) return "Outgoing";
  if (event.missed) return "Missed";
  return event.duration_seconds > 0 ? "Accept" : "Reject";
}

SegmentationConfig::SegmentationConfig()
    : SegmentationConfig({6 * 3600, 12 * 3600, 18 * 3600, kSecondsPerDay},
                         DayGranularity::kDayOfWeek) {}

SegmentationConfig::SegmentationConfig(std::vector<int> cut_points, DayGranularity granularity)
    : cut_points_(std::move(cut_points)), granularity_(granularity) {
  if (cut_points_.empty() || cut_points_.back() != kSecondsPerDay) {
    throw Error("segmentation: last cut point must be 24:00");
  }
  int prev = 0;
  for (int cut : cut_points_) {
    if (cut <= prev) throw Error("segmentation: cut points must be strictly increasing and after 00:00");
    prev = cut;
  }
}

SegmentationConfig SegmentationConfig::parse(std::string_view spec, DayGranularity granularity) {
  std::vector<int> cuts;
  for (const auto& part : text::split(spec)) {
    auto secs = parse_clock(part);
    if (!secs) throw Error("segmentation: bad time '" + part + "'");
    cuts.push_back(*secs);
  }
  return SegmentationConfig(std::move(cuts), granularity);
}

std::string segment_time(const LocalTime& time, const SegmentationConfig& config) {
  const auto& cuts = config.cut_points();
  int start = 0;
  int end = cuts.back();
  for (int cut : cuts) {
    if (time.seconds_of_day < cut) {
      end = cut;
      break;
    }
    start = cut;
  }
  const int wd = time.weekday();
  std::string day;
  if (config.granularity() == DayGranularity::kDayOfWeek) {
    day = kDayNames[wd];
  } else {
    day = wd >= 5 ? "Weekend" : "Weekday";
  }
  return day + "[" + clock_label(start) + "-" + clock_label(end) + "]";
}

const std::string& RelationshipRegistry::map(const std::string& counterpart) {
  auto it = labels_.find(counterpart);
  if (it != labels_.end()) return it->second;
  order_.push_back(counterpart);
  return labels_.emplace(counterpart, "Rel_" + std::to_string(order_.size())).first->second;
}

std::vector<std::pair<std::string, std::string>> RelationshipRegistry::entries() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(order_.size());
  for (const auto& c : order_) out.emplace_back(c, labels_.at(c));
  return out;
}

void RelationshipRegistry::write(std::ostream& out) const {
  out << "counterpart,label\n";
  for (const auto& [counterpart, label] : entries()) out << counterpart << ',' << label << '\n';
}

const std::vector<std::string>& context_attributes() {
  static const std::vector<std::string> kAttrs = {"DayTime", "Location", "Situation",
                                                  "Relationship"};
  return kAttrs;
}

Dataset build_dataset(const std::vector<RawCallEvent>& events, const SegmentationConfig& config,
                      RelationshipRegistry& registry) {
  const auto& attrs = context_attributes();
  std::vector<std::vector<std::string>> domains(attrs.size());
  std::vector<std::unordered_map<std::string, ValueId>> index(attrs.size());
  std::vector<std::pair<std::vector<ValueId>, ClassId>> rows;
  rows.reserve(events.size());

  const auto& classes = default_class_set();
  auto class_of = [&](std::string_view label) {
    return static_cast<ClassId>(std::find(classes.begin(), classes.end(), label) - classes.begin());
  };
  for (const auto& ev : events) {
    const std::string values[] = {
        segment_time(ev.timestamp, config),
        ev.location.value_or(std::string(kUnspecified)),
        ev.situation.value_or(std::string(kUnspecified)),
        registry.map(ev.counterpart),
    };
    std::vector<ValueId> ids(attrs.size());
    for (std::size_t a = 0; a < attrs.size(); ++a) {
      auto [it, inserted] = index[a].emplace(values[a], static_cast<ValueId>(domains[a].size()));
      if (inserted) domains[a].push_back(values[a]);
      ids[a] = it->second;
    }
    rows.emplace_back(std::move(ids), class_of(derive_behavior(ev)));
  }
  auto schema = std::make_shared<const AttributeSchema>(attrs, std::move(domains));
  return Dataset::from_labeled(std::move(schema), std::move(rows));
}

}  // namespace robustpred::ingest
