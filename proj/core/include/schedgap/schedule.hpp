#pragma once

#include <string>
#include <variant>
#include <vector>

#include "schedgap/numeric.hpp"

namespace schedgap {

// One execution piece of one member on one machine.  Machines are addressed
// by (speed class, index within class); identical/single machines are class 0.
struct IntervalEntry {
  std::string group;
  std::int64_t member = 0;  // member index within the group
  int machine_class = 0;
  std::int64_t machine_index = 0;
  Rat start;
  Rat end;  // start < end
};

// Fully general form: per-member, per-machine execution intervals.  The only
// form that can express fractional preemption points.
struct IntervalSchedule {
  std::vector<IntervalEntry> entries;
};

// Width-1 slots, 1-based.  An entry asserts that `count` members of `group`
// execute wholly inside slot t (the window [t-1, t]).  Identical machines
// only; counts may be huge, so nothing is ever expanded per member.
struct SlotEntry {
  std::int64_t slot = 1;  // t >= 1
  std::string group;
  Int count;
};

struct SlotSchedule {
  std::vector<SlotEntry> entries;
};

// Machine-class granularity: `count` members of `group` execute on machines
// of class `machine_class` somewhere inside the window [start, end).
struct BlockEntry {
  int machine_class = 0;
  Rat start;
  Rat end;
  std::string group;
  Int count;
};

struct BlockSchedule {
  std::vector<BlockEntry> entries;
};

using Schedule = std::variant<IntervalSchedule, SlotSchedule, BlockSchedule>;

// Latest completion time over all entries (0 for an empty schedule).
Rat schedule_makespan(const Schedule& s);

}  // namespace schedgap
