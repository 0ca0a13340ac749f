#ifndef ROBUSTPRED_INGEST_H_
#define ROBUSTPRED_INGEST_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "robustpred/dataset.h"

namespace robustpred::ingest {

// Raw call-log header. The trailing event_type column may be omitted.
inline constexpr std::string_view kRawHeader =
    "timestamp,direction,duration_seconds,counterpart,location,situation,event_type";

enum class Direction { kIncoming, kOutgoing };

// Local wall-clock time, seconds precision. No time zone is attached.
struct LocalTime {
  int year = 1970;
  unsigned month = 1;
  unsigned day = 1;
  int seconds_of_day = 0;

  // 0 = Monday ... 6 = Sunday.
  int weekday() const;
  bool operator==(const LocalTime&) const = default;
};

// Parses "YYYY-MM-DDTHH:MM:SS" (a space is also accepted as separator).
std::optional<LocalTime> parse_timestamp(std::string_view text);

struct RawCallEvent {
  LocalTime timestamp;
  Direction direction = Direction::kIncoming;
  std::int64_t duration_seconds = 0;
  std::string counterpart;
  std::optional<std::string> location;
  std::optional<std::string> situation;
  // Set when the source marks an incoming call as rung out unanswered.
  bool missed = false;
};

// Throws ParseError (line, field) on the first malformed row. An empty stream
// yields no events.
std::vector<RawCallEvent> parse_call_log(std::istream& in);

// Outgoing -> Outgoing; incoming marked missed -> Missed; incoming with a
// positive duration -> Accept; incoming with zero duration -> Reject.
std::string_view derive_behavior(const RawCallEvent& event);

enum class DayGranularity { kDayOfWeek, kWeekdayWeekend };

// Time-of-day segmentation. `cut_points` are segment end times in seconds
// since midnight; the last must be 86400 so the segments tile the day.
class SegmentationConfig {
 public:
  // Four segments ending at 06:00, 12:00, 18:00 and 24:00, by day of week.
  SegmentationConfig();
  // Throws Error unless cut points are strictly increasing, positive and end
  // at 24:00.
  SegmentationConfig(std::vector<int> cut_points, DayGranularity granularity);

  // Parses "HH:MM,HH:MM,...,24:00".
  static SegmentationConfig parse(std::string_view spec, DayGranularity granularity);

  const std::vector<int>& cut_points() const { return cut_points_; }
  DayGranularity granularity() const { return granularity_; }

 private:
  std::vector<int> cut_points_;
  DayGranularity granularity_;
};

// "Fri[09:00-11:00]" style label of the [start, end) segment containing
// `time`; "Weekday[...]"/"Weekend[...]" under weekday/weekend granularity.
std::string segment_time(const LocalTime& time, const SegmentationConfig& config);

// Mints Rel_1, Rel_2, ... for counterparts in first-seen order.
class RelationshipRegistry {
 public:
  const std::string& map(const std::string& counterpart);

  std::size_t size() const { return order_.size(); }
  // (counterpart, label) in minting order.
  std::vector<std::pair<std::string, std::string>> entries() const;

  // "counterpart,label" header then one row per entry.
  void write(std::ostream& out) const;

 private:
  std::unordered_map<std::string, std::string> labels_;
  std::vector<std::string> order_;
};

inline const std::string& map_relationship(const std::string& counterpart,
                                           RelationshipRegistry& registry) {
  return registry.map(counterpart);
}

// Attribute names emitted by build_dataset, in column order.
const std::vector<std::string>& context_attributes();

// One instance per event over (DayTime, Location, Situation, Relationship).
// Missing optional contexts become "unspecified". Domains are the observed
// values in first-seen order; the class set is the default four classes.
Dataset build_dataset(const std::vector<RawCallEvent>& events, const SegmentationConfig& config,
                      RelationshipRegistry& registry);

}  // namespace robustpred::ingest

#endif  // ROBUSTPRED_INGEST_H_
