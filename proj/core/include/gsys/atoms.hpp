#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gsys/system.hpp"

namespace gsys {

// Strategy for the dependence scan. Both produce identical answers and
// identical witnesses; the bucketed path groups team members by their
// A-restriction instead of comparing all pairs.
enum class DepScan { Bucketed, Naive };

struct DepResult {
  bool holds = false;
  // On failure: a pair of team members that agree on A but whose step
  // outputs differ on B — the earliest such pair in team order (earliest
  // second member, then earliest first).
  std::optional<std::pair<Config, Config>> witness;
};

// Does the input on A determine the output on B across the team? The team
// defaults to the system's domain (all of G^X for unrestricted systems,
// cap-guarded).
DepResult dep_holds(const GSystem& s, const VarSet& a, const VarSet& b,
                    std::optional<Team> team = std::nullopt, DepScan scan = DepScan::Bucketed,
                    std::uint64_t cap = kDefaultEnumCap);

struct CauseResult {
  bool holds = false;
  // When the atom holds: for each team member in order, the first
  // intervention on A (in enumeration order of G^A) that changes the output
  // on B.
  std::vector<std::pair<Config, Config>> interventions;
  // When it fails: the first team member no intervention can move.
  std::optional<Config> stuck;
};

// Can every team member's output on B be changed by overriding A? For
// restricted systems only interventions that stay inside the domain count.
CauseResult cause_holds(const GSystem& s, const VarSet& a, const VarSet& b,
                        std::optional<Team> team = std::nullopt,
                        std::uint64_t cap = kDefaultEnumCap);

enum class ExportMode { Concat, TwoColumn };

// Relational view of the step function over a team. Concat mode keeps every
// variable: columns are the system's variables followed by one primed output
// column per variable, each row a team member continued by its step output.
// TwoColumn mode keeps only the atom's columns: A followed by primed B.
// Output columns prime their variable's name ("a" -> "a'"), priming further
// if needed to stay distinct from the input columns.
Team export_team(const GSystem& s, const Team& team, const VarSet& a, const VarSet& b,
                 ExportMode mode);

// Functional dependency lhs -> rhs inside a plain table of rows: no two rows
// agree on lhs while differing on rhs. Independent of any system stepping.
bool fd_holds(const Team& table, const VarSet& lhs, const VarSet& rhs);

}  // namespace gsys
