#include <doctest.h>

#include <set>
#include <string>

#include "helpers.hpp"
#include "iscg/examples.hpp"
#include "iscg/verify.hpp"

using namespace iscg;
using testing_oracles::error_code_of;

TEST_SUITE_BEGIN("core");

TEST_CASE("instance validation accepts the chained-access game") {
  Instance inst = instance_from_resource_sets(3, 2, {{1, 3}, {2, 3}});
  CHECK(inst.agent_count() == 3);
  CHECK(inst.resource_count() == 2);
  CHECK(inst.accessible(1) == std::vector<ResourceId>{1});
  CHECK(inst.accessible(2) == std::vector<ResourceId>{2});
  CHECK(inst.accessible(3) == std::vector<ResourceId>{1, 2});
  CHECK(inst.permitted(1) == std::vector<AgentId>{1, 3});
  CHECK(inst.can_use(3, 2));
  CHECK(!inst.can_use(1, 2));
}

TEST_CASE("instance validation accepts the minimal game") {
  RawInstance raw{1, 1, {{1}}};
  Instance inst = validate_instance(raw);
  CHECK(inst.feasible_count() == 1);
}

TEST_CASE("instance validation rejects an agent without access") {
  CHECK(error_code_of([] {
          instance_from_resource_sets(2, 2, {{1}, {1}});
        }) == Errc::agent_without_access);
  try {
    instance_from_resource_sets(2, 2, {{1}, {1}});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("agent 2") != std::string::npos);
  }
}

TEST_CASE("instance validation lists every violation") {
  RawInstance raw{3, 2, {{1}, {}, {}}};
  try {
    validate_instance(raw);
    CHECK(false);
  } catch (const Error& e) {
    std::string what = e.what();
    CHECK(what.find("agent 2") != std::string::npos);
    CHECK(what.find("agent 3") != std::string::npos);
  }
}

TEST_CASE("instance validation rejects out-of-range ids and empty games") {
  CHECK(error_code_of([] {
          validate_instance(RawInstance{1, 1, {{2}}});
        }) == Errc::id_out_of_range);
  CHECK(error_code_of([] {
          validate_instance(RawInstance{0, 1, {}});
        }) == Errc::empty_game);
}

TEST_CASE("allocation validation tags feasibility") {
  auto fx = examples::overlap_no_stable();
  Allocation ok = validate_allocation(fx.inst, {1, 2, 1});
  CHECK(ok.feasible());
  Allocation bad = validate_allocation(fx.inst, {2, 2, 1});  // agent 1 cannot use 2
  CHECK(!bad.feasible());
  CHECK(!is_feasible(fx.inst, bad));

  CHECK(error_code_of([&] { validate_allocation(fx.inst, {1, 2}); }) == Errc::not_total);
  CHECK(error_code_of([&] { validate_allocation(fx.inst, {1, 2, 9}); }) ==
        Errc::id_out_of_range);
}

TEST_CASE("cost is the congestion of the agent's resource") {
  auto fx = examples::kernel_demo();
  CHECK(cost(fx.a, 3) == 3);
  CHECK(cost(fx.a, 1) == 2);
  CHECK(error_code_of([&] { cost(fx.a, 9); }) == Errc::unknown_agent);

  Instance tiny = full_access_instance(1, 1);
  CHECK(cost(validate_allocation(tiny, {1}), 1) == 1);
}

TEST_CASE("derived groups and printing") {
  auto fx = examples::kernel_demo();
  CHECK(fx.a.agents_on(2) == std::vector<AgentId>{3, 4, 5});
  CHECK(fx.a.agents_on(4).empty());
  CHECK(fx.a.to_string() == "{1,2}|{3,4,5}|{6,7,8}|{}");
}

TEST_CASE("enumeration covers the feasible space in lexicographic order") {
  auto fx = examples::overlap_no_stable();
  std::vector<Allocation> all = all_feasible(fx.inst, 100);
  REQUIRE(all.size() == 2);
  CHECK(all[0].assignment() == std::vector<ResourceId>{1, 2, 1});
  CHECK(all[1].assignment() == std::vector<ResourceId>{1, 2, 2});

  Instance solo = full_access_instance(1, 3);
  CHECK(all_feasible(solo, 100).size() == 3);
}

TEST_CASE("enumeration count matches the access-set product") {
  for (std::uint64_t index = 0; index < 40; ++index) {
    verify::GeneratorConfig cfg;
    cfg.seed = 11;
    cfg.n_max = 6;
    cfg.m_max = 3;
    auto [inst, C] = verify::gen_case(cfg, index);
    long long expected = 1;
    for (AgentId j = 1; j <= inst.agent_count(); ++j)
      expected *= static_cast<long long>(inst.accessible(j).size());
    CHECK(inst.feasible_count() == expected);

    long long seen = 0;
    std::set<std::vector<ResourceId>> distinct;
    for_each_feasible(inst, 1'000'000, [&](const Allocation& a) {
      ++seen;
      distinct.insert(a.assignment());
      CHECK(is_feasible(inst, a));
      int total = 0;
      for (ResourceId i = 1; i <= inst.resource_count(); ++i) total += a.count(i);
      CHECK(total == inst.agent_count());
      return true;
    });
    CHECK(seen == expected);
    CHECK(static_cast<long long>(distinct.size()) == expected);
  }
}

TEST_CASE("the 15x2 feasible space counts out to 32768") {
  Instance inst = full_access_instance(15, 2);
  CHECK(inst.feasible_count() == 32768);
  long long tally = 0;
  for_each_feasible(inst, 1'000'000, [&](const Allocation&) {
    ++tally;
    return true;
  });
  CHECK(tally == 32768);
}

TEST_CASE("enumeration bound is enforced with both numbers reported") {
  Instance inst = full_access_instance(15, 2);
  CHECK(inst.feasible_count() == 32768);
  try {
    FeasibleEnumeration stream(inst, 1000);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::enumeration_bound_exceeded);
    CHECK(std::string(e.what()).find("32768") != std::string::npos);
    CHECK(std::string(e.what()).find("1000") != std::string::npos);
  }
}

TEST_CASE("seek splits the stream without changing its contents") {
  Instance inst = full_access_instance(4, 3);
  std::vector<Allocation> sequential = all_feasible(inst, 1000);

  FeasibleEnumeration stream(inst, 1000);
  std::vector<Allocation> merged;
  long long half = stream.count() / 2;
  stream.seek(half);
  std::vector<Allocation> tail;
  while (auto a = stream.next()) tail.push_back(std::move(*a));
  stream.seek(0);
  for (long long k = 0; k < half; ++k) merged.push_back(*stream.next());
  merged.insert(merged.end(), tail.begin(), tail.end());

  REQUIRE(merged.size() == sequential.size());
  for (std::size_t k = 0; k < merged.size(); ++k) CHECK(merged[k] == sequential[k]);
}

TEST_CASE("partition structures are validated") {
  CHECK(error_code_of([] {
          CoalitionStructure::partition(3, {{1, 2}, {2, 3}});
        }) == Errc::not_a_partition);
  CHECK(error_code_of([] {
          CoalitionStructure::partition(3, {{1, 2}});
        }) == Errc::not_a_partition);
  CHECK(error_code_of([] {
          CoalitionStructure::partition(2, {{1}, {}});
        }) == Errc::empty_coalition);
  CHECK(error_code_of([] {
          CoalitionStructure::partition(2, {{1}, {5}});
        }) == Errc::id_out_of_range);

  CoalitionStructure family = CoalitionStructure::family(3, {{1, 3}, {2, 3}});
  CHECK(!family.is_partition());
  CHECK(family.size() == 2);

  CoalitionStructure singles = CoalitionStructure::singletons(3);
  CHECK(singles.size() == 3);
  CHECK(singles.coalition_of(2) == 1);
  CHECK(CoalitionStructure::grand(4)[0] == Coalition{1, 2, 3, 4});
}

TEST_SUITE_END();
