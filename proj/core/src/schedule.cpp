#include "schedgap/schedule.hpp"

#include <algorithm>

namespace schedgap {

Rat schedule_makespan(const Schedule& s) {
  Rat makespan = 0;
  if (const auto* iv = std::get_if<IntervalSchedule>(&s)) {
    for (const auto& e : iv->entries) makespan = std::max(makespan, e.end);
  } else if (const auto* sl = std::get_if<SlotSchedule>(&s)) {
    for (const auto& e : sl->entries)
      makespan = std::max(makespan, Rat(e.slot));
  } else {
    const auto& bl = std::get<BlockSchedule>(s);
    for (const auto& e : bl.entries) makespan = std::max(makespan, e.end);
  }
  return makespan;
}

}  // namespace schedgap
