#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "reflekt/theorems.hpp"

namespace reflekt::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2 };

inline constexpr char kSummarySchema[] = "reflekt.summary/1";
inline constexpr char kInfoSchema[] = "reflekt.info/1";
inline constexpr char kNormalsSchema[] = "reflekt.normals/1";
inline constexpr char kExponentsSchema[] = "reflekt.exponents/1";

// hard caps for sweep; anything larger is a usage error
inline constexpr int kCyclicCap = 24;
inline constexpr int kImprimitiveCap = 6;
inline constexpr int kRankCap = 3;

// "all" or a comma list; every s must be coprime to sigma_base
std::vector<std::int64_t> parse_sigmas(std::string const &text, ReflectionGroup const &G, GroupSpec const &spec);

// verify ids in the order they run
std::vector<std::string> const &verify_ids();
std::vector<VerificationReport> run_verifier(std::string const &id, ReflectionGroup const &G, GroupSpec const &spec,
                                             NormalPair &P, std::vector<std::int64_t> const &sigmas);

struct SweepTask {
  int id = 0;
  int group = 0; // index into SweepPlan::groups
  NormalSubgroupHandle N;
  bool first_of_group = false;
};

struct SweepPlan {
  std::vector<GroupSpec> specs;
  std::vector<ReflectionGroup> groups;
  std::vector<SweepTask> tasks;
};

// C_a for 1 <= a <= cap, every normal subgroup (trivial included)
SweepPlan cyclic_plan(int cap);
// G(ab,b,r) for ab <= cap, b | ab, r <= max_rank, every normal reflection
// subgroup plus the trivial one
SweepPlan imprimitive_plan(int cap, int max_rank);
std::vector<VerificationReport> run_task(SweepPlan const &plan, SweepTask const &task);
// reports of every task, in task order
std::vector<std::vector<VerificationReport>> run_plan(SweepPlan const &plan);

// the g15 over g12 exponent table, markdown
std::string render_table2();

int run(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace reflekt::cli
