// Acceptance suite: one pass/fail line per criterion, exit 1 on any
// failure. argv[1] must point at the iscg CLI binary (used by the
// determinism and exit-code checks).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "iscg/enumerate.hpp"
#include "iscg/examples.hpp"
#include "iscg/io.hpp"
#include "iscg/parallel.hpp"
#include "iscg/solver.hpp"
#include "iscg/verify.hpp"

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Checker {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

bool run_criterion(const std::string& label, double budget_seconds,
                   const std::function<void(Checker&)>& body) {
  Checker check;
  auto started = Clock::now();
  try {
    body(check);
  } catch (const std::exception& e) {
    check.failures.push_back(std::string("exception: ") + e.what());
  }
  double seconds = std::chrono::duration<double>(Clock::now() - started).count();
  if (budget_seconds > 0 && seconds >= budget_seconds) {
    std::ostringstream os;
    os << "took " << seconds << " s, budget " << budget_seconds << " s";
    check.failures.push_back(os.str());
  }
  bool ok = check.failures.empty();
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << label << " (" << seconds << " s)\n";
  for (const std::string& what : check.failures) std::cout << "       " << what << "\n";
  return ok;
}

std::string cli_binary;
fs::path work_dir;

int run_cli(const std::string& args, const fs::path& stdout_path) {
  std::string command = "\"" + cli_binary + "\" " + args + " > " +
                        stdout_path.string() + " 2> /dev/null";
  int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string strip_timing(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream kept;
  std::string line;
  while (std::getline(in, line))
    if (line.find("\"timing_ms\"") == std::string::npos) kept << line << '\n';
  return kept.str();
}

template <typename Vec>
bool equals(const Vec& got, const Vec& want) {
  return got == want;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-iscg-cli>\n";
    return 2;
  }
  cli_binary = argv[1];
  work_dir = fs::temp_directory_path() /
             ("iscg-acceptance-" + std::to_string(::getpid()));
  fs::create_directories(work_dir);

  using namespace iscg;
  bool all_ok = true;
  Bounds bounds;

  all_ok &= run_criterion("criterion 1: kernel regression (8 agents, 4 resources)", 1.0,
                          [&](Checker& check) {
    auto fx = examples::kernel_demo();
    check.expect(equals(kernel(fx.a).entries, {3, 3, 2, 0}), "k(a) != (3,3,2,0)");
    check.expect(equals(coalition_kernel(fx.a, fx.c).entries, {2, 1, 0, 0}),
                 "k(c,a) != (2,1,0,0)");
    check.expect(equals(welfare_kernel(fx.a, fx.c).entries, {0, 0, 0, 0, 0, 1, 2, 0}),
                 "w(c,a) != (0,0,0,0,0,1,2,0)");
  });

  all_ok &= run_criterion("criterion 2: stability regression (15 agents, 2 resources)",
                          10.0, [&](Checker& check) {
    auto fx = examples::stable_not_maximal();
    check.expect(is_nash(fx.inst, fx.a).first, "a fails the Nash check");
    check.expect(is_pareto(fx.inst, fx.a, bounds).first, "a fails the Pareto check");
    check.expect(is_c_stable(fx.inst, fx.a, fx.C, bounds).stable,
                 "a fails the coalition-stability check");
    check.expect(balance_dominates(fx.improved, fx.a, fx.C),
                 "the rebalanced allocation does not dominate a");
    check.expect(fx.inst.feasible_count() == 32768, "feasible space is not 32768");
    bool excluded = true;
    for (const Allocation& mx : maximal_allocations(fx.inst, fx.C, bounds))
      excluded = excluded && !(mx == fx.a);
    check.expect(excluded, "a sits in the maximal set");
  });

  all_ok &= run_criterion("criterion 3: blocking regression (18 agents, 4 resources)",
                          5.0, [&](Checker& check) {
    auto fx = examples::non_monotone_blocking();
    auto witness = blocks(fx.inst, fx.a, fx.c, bounds.search_bound);
    check.expect(witness.has_value(), "the 13-agent coalition yields no witness");
    if (witness)
      check.expect(witness_violation(fx.inst, *witness).empty(),
                   "the canonical witness does not validate");
    check.expect(equals(coalition_kernel(fx.a, fx.c).entries, {4, 4, 4, 1}),
                 "k(c,a) != (4,4,4,1)");
    check.expect(equals(coalition_kernel(fx.induced, fx.c).entries, {5, 3, 3, 2}),
                 "k(c,induced) != (5,3,3,2)");
    check.expect(!balance_dominates(fx.induced, fx.a, fx.C),
                 "the induced allocation balance-dominates a");
    check.expect(welfare_dominates(fx.induced, fx.a, fx.c),
                 "the induced allocation does not welfare-dominate a");
  });

  all_ok &= run_criterion("criterion 4: overlap regression (3 agents, 2 resources)", 1.0,
                          [&](Checker& check) {
    auto fx = examples::overlap_no_stable();
    std::vector<Allocation> all = all_feasible(fx.inst, bounds.enum_bound);
    check.expect(all.size() == 2, "feasible space is not exactly 2 allocations");
    for (const Allocation& a : all) {
      auto res = is_c_stable(fx.inst, a, fx.C, bounds);
      check.expect(!res.stable, "allocation " + a.to_string() + " is not blocked");
      if (res.witness)
        check.expect(witness_violation(fx.inst, *res.witness).empty(),
                     "witness fails validation");
    }
  });

  constexpr std::uint64_t kSuiteSeed = 7;
  constexpr std::uint64_t kSuiteCases = 1000;

  all_ok &= run_criterion("criterion 5: maximal allocations satisfy all three axioms "
                          "(1000 seeded games)", 600.0, [&](Checker& check) {
    auto outcomes = parallel_map(kSuiteCases, default_thread_count(), [&](std::size_t k) {
      auto [inst, C] = verify::stability_suite_case(kSuiteSeed, k);
      return verify::check_maximal_stability(inst, C, bounds);
    });
    for (std::size_t k = 0; k < outcomes.size(); ++k)
      check.expect(outcomes[k], "counterexample at case " + std::to_string(k) +
                                    " (seed " + std::to_string(kSuiteSeed) + ")");
  });

  all_ok &= run_criterion("criterion 6: kernel-invariance and dominance suites", 600.0,
                          [&](Checker& check) {
    verify::SuiteOptions opts{1, 0, default_thread_count()};
    auto swap = verify::run_swap_invariance_suite(opts);
    check.expect(swap.ok() && swap.cases >= 10'000, "swap-invariance suite failed");
    auto moves = verify::run_single_move_suite(opts);
    check.expect(moves.ok() && moves.cases >= 200, "single-move suite failed");
    auto welfare = verify::run_blocking_welfare_suite(opts);
    check.expect(welfare.ok() && welfare.cases >= 1'000, "blocking-welfare suite failed");
    auto strata = verify::run_stratum_bounds_suite(opts);
    check.expect(strata.ok() && strata.cases >= 200, "stratum-bounds suite failed");
    std::cout << "       stratum-bounds: " << strata.cases << " accepted, "
              << strata.rejected << " rejected (rate "
              << static_cast<double>(strata.rejected) /
                     static_cast<double>(strata.cases + strata.rejected)
              << ")\n";
    for (const auto& report : {swap, moves, welfare, strata})
      for (const std::string& what : report.failure_messages)
        check.expect(false, report.name + ": " + what);
  });

  all_ok &= run_criterion("criterion 7: maximal members pass the Nash and Pareto checks "
                          "separately", 600.0, [&](Checker& check) {
    auto outcomes = parallel_map(kSuiteCases, default_thread_count(), [&](std::size_t k) {
      auto [inst, C] = verify::stability_suite_case(kSuiteSeed, k);
      for (const Allocation& a : maximal_allocations(inst, C, bounds)) {
        if (!is_nash(inst, a).first) return 1;
        if (!is_pareto(inst, a, bounds).first) return 2;
      }
      return 0;
    });
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      check.expect(outcomes[k] != 1, "Nash violation at case " + std::to_string(k));
      check.expect(outcomes[k] != 2, "Pareto violation at case " + std::to_string(k));
    }
  });

  all_ok &= run_criterion("criterion 8: solver certification on the same 1000 games",
                          600.0, [&](Checker& check) {
    auto outcomes = parallel_map(kSuiteCases, default_thread_count(), [&](std::size_t k) {
      auto [inst, C] = verify::stability_suite_case(kSuiteSeed, k);
      SolveOptions heuristic;
      heuristic.mode = SolveMode::heuristic;
      SolveResult hres = find_stable(inst, C, heuristic);
      if (!stability_report(inst, hres.allocation, C, false, bounds).all_axioms())
        return 1;
      SolveResult xres = find_stable(inst, C, SolveOptions{});
      bool member = false;
      for (const Allocation& mx : maximal_allocations(inst, C, bounds))
        member = member || mx == xres.allocation;
      if (!member || !xres.report.all_axioms()) return 2;
      return 0;
    });
    for (std::size_t k = 0; k < outcomes.size(); ++k) {
      check.expect(outcomes[k] != 1,
                   "heuristic output uncertified at case " + std::to_string(k));
      check.expect(outcomes[k] != 2,
                   "exact output not a maximal member at case " + std::to_string(k));
    }
  });

  all_ok &= run_criterion("criterion 9: reduction of 200 seeded blocking pairs", 600.0,
                          [&](Checker& check) {
    verify::SuiteOptions opts{1, 0, default_thread_count()};
    auto reduction = verify::run_reduction_suite(opts);
    check.expect(reduction.ok() && reduction.cases >= 200, "reduction suite failed");
    for (const std::string& what : reduction.failure_messages)
      check.expect(false, "reduction: " + what);
  });

  all_ok &= run_criterion("criterion 10: byte-identical reports modulo timing", 600.0,
                          [&](Checker& check) {
    auto fx2 = examples::stable_not_maximal();
    auto fx4 = examples::overlap_no_stable();
    fs::path inst2 = work_dir / "stable.json";
    fs::path alloc2 = work_dir / "stable-alloc.json";
    fs::path inst4 = work_dir / "overlap.json";
    fs::path alloc4 = work_dir / "overlap-alloc.json";
    iscg::io::write_file(inst2.string(), iscg::io::emit_instance(fx2.inst, fx2.C));
    iscg::io::write_file(alloc2.string(), iscg::io::emit_allocation(fx2.a));
    iscg::io::write_file(inst4.string(), iscg::io::emit_instance(fx4.inst, fx4.C));
    iscg::io::write_file(alloc4.string(),
                         iscg::io::emit_allocation(
                             iscg::validate_allocation(fx4.inst, {1, 2, 1})));

    struct Invocation {
      std::string label;
      std::string args;
      int expected_exit;
    };
    std::vector<Invocation> runs = {
        {"check all-flags", "check " + inst2.string() + " " + alloc2.string() +
                                " --nash --pareto --partition --out OUT", 0},
        {"check partition-violation",
         "check " + inst4.string() + " " + alloc4.string() + " --partition --out OUT", 1},
        {"solve exact", "solve " + inst2.string() + " --mode exact --out OUT", 0},
        {"solve heuristic", "solve " + inst2.string() + " --mode heuristic --out OUT", 0},
        {"dynamics random-start",
         "dynamics " + inst4.string() + " --random-start --seed 5 --max-steps 8 --out OUT",
         1},
        {"verify examples", "verify --suite examples", 0},
        {"verify lemmas", "verify --suite lemmas --seed 3 --cases 60", 0},
        {"examples alias", "examples", 0},
    };
    for (const Invocation& invocation : runs) {
      std::string first_report = (work_dir / "first-report.json").string();
      std::string second_report = (work_dir / "second-report.json").string();
      std::string args1 = invocation.args;
      std::string args2 = invocation.args;
      bool has_out = args1.find("OUT") != std::string::npos;
      if (has_out) {
        args1.replace(args1.find("OUT"), 3, first_report);
        args2.replace(args2.find("OUT"), 3, second_report);
      }
      int exit1 = run_cli(args1, work_dir / "first-stdout.txt");
      int exit2 = run_cli(args2, work_dir / "second-stdout.txt");
      check.expect(exit1 == invocation.expected_exit,
                   invocation.label + ": exit " + std::to_string(exit1) + ", expected " +
                       std::to_string(invocation.expected_exit));
      check.expect(exit1 == exit2, invocation.label + ": exit codes differ across runs");
      check.expect(strip_timing(work_dir / "first-stdout.txt") ==
                       strip_timing(work_dir / "second-stdout.txt"),
                   invocation.label + ": stdout differs across runs");
      if (has_out)
        check.expect(strip_timing(first_report) == strip_timing(second_report),
                     invocation.label + ": report files differ modulo timing");
    }

    // worker count must not influence the output
    int t1 = run_cli("verify --suite lemmas --seed 3 --cases 60 --threads 1",
                     work_dir / "threads1.txt");
    int t4 = run_cli("verify --suite lemmas --seed 3 --cases 60 --threads 4",
                     work_dir / "threads4.txt");
    check.expect(t1 == 0 && t4 == 0, "verify failed under explicit thread counts");
    check.expect(strip_timing(work_dir / "threads1.txt") ==
                     strip_timing(work_dir / "threads4.txt"),
                 "verify output depends on the thread count");

    // exit-code contract: malformed input and exceeded bounds
    iscg::io::write_file((work_dir / "broken.json").string(), "{broken");
    int bad = run_cli("check " + (work_dir / "broken.json").string() + " " +
                          alloc2.string(),
                      work_dir / "bad-stdout.txt");
    check.expect(bad == 2, "malformed JSON did not exit 2");
    std::string env_cmd = "ISCG_ENUM_BOUND=10 \"" + cli_binary + "\" solve " +
                          inst2.string() + " > /dev/null 2> /dev/null";
    int bound_exit = WEXITSTATUS(std::system(env_cmd.c_str()));
    check.expect(bound_exit == 3, "exceeded enumeration bound did not exit 3");
  });

  std::error_code ignored;
  fs::remove_all(work_dir, ignored);

  std::cout << (all_ok ? "acceptance: all criteria passed"
                       : "acceptance: FAILURES detected")
            << "\n";
  return all_ok ? 0 : 1;
}
