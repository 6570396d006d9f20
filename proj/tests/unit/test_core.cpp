#include <doctest.h>

#include "schedgap/errors.hpp"
#include "schedgap/instance.hpp"
#include "schedgap/json_io.hpp"
#include "schedgap/numeric.hpp"
#include "schedgap/schedule.hpp"
#include "schedgap/validate.hpp"

using namespace schedgap;

namespace {

Instance make_instance(std::vector<JobGroup> groups,
                       std::vector<std::pair<std::string, std::string>> prec,
                       MachineModel mm, bool preemptive = false) {
  Instance inst;
  inst.groups = std::move(groups);
  inst.precedence = std::move(prec);
  inst.machines = std::move(mm);
  inst.preemptive = preemptive;
  inst.check();
  return inst;
}

}  // namespace

TEST_CASE("rational parse / format round trip") {
  CHECK(format_rat(parse_rat("3")) == "3/1");
  CHECK(format_rat(parse_rat("6/4")) == "3/2");
  CHECK(format_rat(parse_rat("-6/4")) == "-3/2");
  CHECK(format_rat(parse_rat("0.25")) == "1/4");
  CHECK(format_rat(parse_rat("-1.5")) == "-3/2");
  CHECK(format_rat(parse_rat("0")) == "0/1");
  CHECK(parse_rat(format_rat(Rat(22, 7))) == Rat(22, 7));

  CHECK_THROWS_AS(parse_rat("1/0"), ParameterError);
  CHECK_THROWS_AS(parse_rat("abc"), ParameterError);
  CHECK_THROWS_AS(parse_rat(""), ParameterError);
  CHECK_THROWS_AS(parse_rat("1.2.3"), ParameterError);
}

TEST_CASE("integer helpers") {
  CHECK(parse_int("123456789012345678901234567890") ==
        Int("123456789012345678901234567890"));
  CHECK_THROWS_AS(parse_int("12x"), ParameterError);

  CHECK(floor_rat(Rat(7, 2)) == 3);
  CHECK(floor_rat(Rat(-7, 2)) == -4);
  CHECK(ceil_rat(Rat(7, 2)) == 4);
  CHECK(ceil_rat(Rat(-7, 2)) == -3);
  CHECK(ceil_rat(Rat(6)) == 6);

  CHECK(pow_int(Int(3), 0) == 1);
  CHECK(pow_int(Int(3), 5) == 243);

  CHECK(to_i64(Int(42), 100, "x") == 42);
  CHECK_THROWS_AS(to_i64(Int(101), 100, "x"), BudgetError);
}

TEST_CASE("instance invariants") {
  SUBCASE("duplicate id") {
    Instance inst;
    inst.groups = {{"a", Int(1), Rat(1)}, {"a", Int(1), Rat(1)}};
    CHECK_THROWS_AS(inst.check(), StructuralError);
  }
  SUBCASE("dangling precedence") {
    Instance inst;
    inst.groups = {{"a", Int(1), Rat(1)}};
    inst.precedence = {{"a", "ghost"}};
    CHECK_THROWS_AS(inst.check(), StructuralError);
  }
  SUBCASE("cycle") {
    Instance inst;
    inst.groups = {{"a", Int(1), Rat(1)}, {"b", Int(1), Rat(1)}};
    inst.precedence = {{"a", "b"}, {"b", "a"}};
    CHECK_THROWS_AS(inst.check(), StructuralError);
  }
  SUBCASE("self loop") {
    Instance inst;
    inst.groups = {{"a", Int(1), Rat(1)}};
    inst.precedence = {{"a", "a"}};
    CHECK_THROWS_AS(inst.check(), StructuralError);
  }
  SUBCASE("nonpositive processing time") {
    Instance inst;
    inst.groups = {{"a", Int(1), Rat(0)}};
    CHECK_THROWS_AS(inst.check(), StructuralError);
  }
  SUBCASE("precedence is deduped and sorted") {
    Instance inst;
    inst.groups = {{"b", Int(1), Rat(1)}, {"a", Int(1), Rat(1)}};
    inst.precedence = {{"b", "a"}, {"b", "a"}};
    inst.check();
    CHECK(inst.precedence.size() == 1);
  }
}

TEST_CASE("topological order respects precedence") {
  Instance inst = make_instance(
      {{"c", Int(1), Rat(1)}, {"a", Int(1), Rat(1)}, {"b", Int(1), Rat(1)}},
      {{"a", "b"}, {"b", "c"}}, IdenticalMachines{Int(1)});
  auto order = inst.topo_order();
  REQUIRE(order.size() == 3);
  std::vector<int> pos(3);
  for (int i = 0; i < 3; ++i) pos[order[i]] = i;
  CHECK(pos[inst.group_index("a")] < pos[inst.group_index("b")]);
  CHECK(pos[inst.group_index("b")] < pos[inst.group_index("c")]);
}

TEST_CASE("expand_members replicates precedence all-to-all") {
  Instance inst = make_instance({{"a", Int(2), Rat(1)}, {"b", Int(3), Rat(1)}},
                                {{"a", "b"}}, IdenticalMachines{Int(2)});
  Instance flat = expand_members(inst, 100);
  CHECK(flat.groups.size() == 5);
  CHECK(flat.precedence.size() == 6);  // 2 x 3
  for (const auto& g : flat.groups) CHECK(g.count == 1);
  CHECK_THROWS_AS(expand_members(inst, 4), BudgetError);
}

TEST_CASE("combinatorial lower bound") {
  SUBCASE("work bound dominates") {
    // W = 3*2 + 1 = 7 on 2 machines -> 7/2; critical path = 3
    Instance inst =
        make_instance({{"a", Int(3), Rat(2)}, {"b", Int(1), Rat(1)}},
                      {{"a", "b"}}, IdenticalMachines{Int(2)});
    CHECK(combinatorial_lower_bound(inst) == Rat(7, 2));
  }
  SUBCASE("single machine") {
    Instance inst =
        make_instance({{"a", Int(1), Rat(2)}, {"b", Int(1), Rat(3)}},
                      {{"a", "b"}}, SingleMachine{});
    CHECK(combinatorial_lower_bound(inst) == Rat(5));
  }
  SUBCASE("critical path dominates") {
    // chain a -> b: 3 + 4 = 7 > W/m = 10/2
    Instance inst =
        make_instance({{"a", Int(2), Rat(3)}, {"b", Int(1), Rat(4)}},
                      {{"a", "b"}}, IdenticalMachines{Int(2)});
    CHECK(combinatorial_lower_bound(inst) == Rat(7));
  }
  SUBCASE("uniform machines rejected") {
    Instance inst = make_instance(
        {{"a", Int(1), Rat(1)}}, {},
        UniformMachines{{{Rat(1), Int(1)}, {Rat(2), Int(1)}}});
    CHECK_THROWS_AS(combinatorial_lower_bound(inst), ParameterError);
  }
}

TEST_CASE("interval schedule validation") {
  Instance inst =
      make_instance({{"a", Int(1), Rat(2)}, {"b", Int(1), Rat(1)}},
                    {{"a", "b"}}, IdenticalMachines{Int(2)});

  SUBCASE("feasible") {
    IntervalSchedule s;
    s.entries = {{"a", 0, 0, 0, Rat(0), Rat(2)}, {"b", 0, 0, 1, Rat(2), Rat(3)}};
    auto rep = validate_schedule(inst, Schedule{s});
    CHECK(rep.feasible);
    CHECK(rep.makespan == Rat(3));
    CHECK(rep.violations.empty());
  }
  SUBCASE("precedence violation") {
    IntervalSchedule s;
    s.entries = {{"a", 0, 0, 0, Rat(0), Rat(2)}, {"b", 0, 0, 1, Rat(1), Rat(2)}};
    auto rep = validate_schedule(inst, Schedule{s});
    CHECK_FALSE(rep.feasible);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].kind == ViolationKind::kPrecedence);
  }
  SUBCASE("under-delivered work") {
    IntervalSchedule s;
    s.entries = {{"a", 0, 0, 0, Rat(0), Rat(1)}, {"b", 0, 0, 1, Rat(1), Rat(2)}};
    auto rep = validate_schedule(inst, Schedule{s});
    CHECK_FALSE(rep.feasible);
    REQUIRE_FALSE(rep.violations.empty());
    CHECK(rep.violations[0].kind == ViolationKind::kCompletion);
  }
  SUBCASE("machine overlap") {
    IntervalSchedule s;
    s.entries = {{"a", 0, 0, 0, Rat(0), Rat(2)}, {"b", 0, 0, 0, Rat(1), Rat(2)}};
    auto rep = validate_schedule(inst, Schedule{s});
    CHECK_FALSE(rep.feasible);
    bool overlap = false;
    for (const auto& v : rep.violations)
      overlap = overlap || v.kind == ViolationKind::kOverlap;
    CHECK(overlap);
  }
  SUBCASE("split without preemption flag") {
    IntervalSchedule s;
    s.entries = {{"a", 0, 0, 0, Rat(0), Rat(1)},
                 {"a", 0, 0, 0, Rat(1), Rat(2)},
                 {"b", 0, 0, 1, Rat(2), Rat(3)}};
    auto rep = validate_schedule(inst, Schedule{s});
    CHECK_FALSE(rep.feasible);
    bool preempt = false;
    for (const auto& v : rep.violations)
      preempt = preempt || v.kind == ViolationKind::kPreemption;
    CHECK(preempt);
  }
  SUBCASE("unknown group is structural") {
    IntervalSchedule s;
    s.entries = {{"ghost", 0, 0, 0, Rat(0), Rat(1)}};
    CHECK_THROWS_AS(validate_schedule(inst, Schedule{s}), StructuralError);
  }
}

TEST_CASE("uniform machines scale delivered work") {
  Instance inst = make_instance(
      {{"a", Int(1), Rat(4)}}, {},
      UniformMachines{{{Rat(2), Int(1)}, {Rat(1), Int(1)}}});
  IntervalSchedule s;
  s.entries = {{"a", 0, 0, 0, Rat(0), Rat(2)}};  // speed 2 over 2 units
  CHECK(validate_schedule(inst, Schedule{s}).feasible);

  IntervalSchedule slow;
  slow.entries = {{"a", 0, 1, 0, Rat(0), Rat(2)}};  // speed 1: only 2 of 4
  CHECK_FALSE(validate_schedule(inst, Schedule{slow}).feasible);
}

TEST_CASE("slot schedule validation") {
  Instance inst =
      make_instance({{"a", Int(3), Rat(1)}, {"b", Int(2), Rat(1)}},
                    {{"a", "b"}}, IdenticalMachines{Int(2)}, true);

  SUBCASE("feasible staircase") {
    SlotSchedule s;
    s.entries = {{1, "a", Int(2)}, {2, "a", Int(1)}, {3, "b", Int(2)}};
    auto rep = validate_schedule(inst, Schedule{s});
    CHECK(rep.feasible);
    CHECK(rep.makespan == Rat(3));
  }
  SUBCASE("slot overload") {
    SlotSchedule s;
    s.entries = {{1, "a", Int(3)}, {2, "b", Int(2)}};
    auto rep = validate_schedule(inst, Schedule{s});
    CHECK_FALSE(rep.feasible);
    CHECK(rep.violations[0].kind == ViolationKind::kCapacity);
  }
  SUBCASE("successor in the predecessor's last slot") {
    SlotSchedule s;
    s.entries = {{1, "a", Int(2)}, {2, "a", Int(1)}, {2, "b", Int(1)},
                 {3, "b", Int(1)}};
    auto rep = validate_schedule(inst, Schedule{s});
    CHECK_FALSE(rep.feasible);
    bool prec = false;
    for (const auto& v : rep.violations)
      prec = prec || v.kind == ViolationKind::kPrecedence;
    CHECK(prec);
  }
}

TEST_CASE("block schedule validation") {
  Instance inst = make_instance(
      {{"a", Int(4), Rat(1)}, {"b", Int(2), Rat(2)}}, {{"a", "b"}},
      UniformMachines{{{Rat(1), Int(2)}, {Rat(2), Int(1)}}});

  SUBCASE("feasible windows") {
    BlockSchedule s;
    s.entries = {{0, Rat(0), Rat(2), "a", Int(4)},
                 {1, Rat(2), Rat(4), "b", Int(2)}};
    auto rep = validate_schedule(inst, Schedule{s});
    CHECK(rep.feasible);
    CHECK(rep.makespan == Rat(4));
  }
  SUBCASE("window capacity exceeded") {
    BlockSchedule s;
    s.entries = {{0, Rat(0), Rat(1), "a", Int(4)},
                 {1, Rat(1), Rat(3), "b", Int(2)}};
    auto rep = validate_schedule(inst, Schedule{s});
    CHECK_FALSE(rep.feasible);
    CHECK(rep.violations[0].kind == ViolationKind::kCapacity);
  }
  SUBCASE("partially overlapping windows are rejected") {
    BlockSchedule s;
    s.entries = {{0, Rat(0), Rat(2), "a", Int(2)},
                 {0, Rat(1), Rat(3), "a", Int(2)},
                 {1, Rat(3), Rat(5), "b", Int(2)}};
    auto rep = validate_schedule(inst, Schedule{s});
    CHECK_FALSE(rep.feasible);
    bool overlap = false;
    for (const auto& v : rep.violations)
      overlap = overlap || v.kind == ViolationKind::kOverlap;
    CHECK(overlap);
  }
}

TEST_CASE("instance json round trip is byte identical") {
  Instance inst = make_instance(
      {{"a", Int("123456789012345678901234567890"), Rat(1, 3)},
       {"b", Int(2), Rat(5)}},
      {{"a", "b"}}, UniformMachines{{{Rat(3, 2), Int(4)}, {Rat(1), Int(2)}}},
      true);
  inst.metadata.params["k"] = Rat(3);
  inst.metadata.flags["regime_m"] = true;

  std::string text = instance_to_json(inst);
  Instance back = instance_from_json(text);
  CHECK(back.groups[0].count == inst.groups[0].count);
  CHECK(back.groups[0].proc_time == Rat(1, 3));
  CHECK(back.preemptive);
  CHECK(back.metadata.param("k") == Rat(3));
  CHECK(instance_to_json(back) == text);

  // counts beyond 2^53 must not appear as bare JSON numbers
  CHECK(text.find("\"123456789012345678901234567890\"") != std::string::npos);
}

TEST_CASE("schedule json round trip") {
  IntervalSchedule is;
  is.entries = {{"a", 7, 1, 2, Rat(1, 2), Rat(5, 2)}};
  std::string t1 = schedule_to_json(Schedule{is});
  Schedule s1 = schedule_from_json(t1);
  CHECK(schedule_to_json(s1) == t1);
  CHECK(std::get<IntervalSchedule>(s1).entries[0].start == Rat(1, 2));

  SlotSchedule ss;
  ss.entries = {{4, "g", Int(9)}};
  std::string t2 = schedule_to_json(Schedule{ss});
  CHECK(schedule_to_json(schedule_from_json(t2)) == t2);

  BlockSchedule bs;
  bs.entries = {{1, Rat(0), Rat(3, 2), "g", Int(11)}};
  std::string t3 = schedule_to_json(Schedule{bs});
  CHECK(schedule_to_json(schedule_from_json(t3)) == t3);

  CHECK_THROWS_AS(schedule_from_json("{\"form\":\"wedge\",\"entries\":[]}"),
                  ParameterError);
  CHECK_THROWS_AS(schedule_from_json("not json"), ParameterError);
}

TEST_CASE("schedule makespan") {
  CHECK(schedule_makespan(Schedule{IntervalSchedule{}}) == Rat(0));
  SlotSchedule ss;
  ss.entries = {{3, "g", Int(1)}, {5, "h", Int(2)}};
  CHECK(schedule_makespan(Schedule{ss}) == Rat(5));
}
