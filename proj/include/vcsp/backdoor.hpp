#ifndef VCSP_BACKDOOR_HPP
#define VCSP_BACKDOOR_HPP

#include "vcsp/solvers.hpp"

#include <optional>

namespace vcsp {

// Instrumentation for the FPT bound checks. nodes_visited counts terminal
// nodes (leaves) of a branching search tree, the quantity bounded by
// (l*(q+1))^k; for the exhaustive detector it counts candidate sets tested.
// assignments_checked counts backdoor-assignment enumerations.
struct SearchStats {
    std::size_t nodes_visited = 0;
    std::size_t assignments_checked = 0;
};

// A candidate backdoor set with its target class. verified is only set by
// verify_backdoor after is_backdoor confirms.
struct Backdoor {
    std::vector<int> variables; // ascending
    bool scattered = false;     // union target when false
    bool verified = false;
};

// Least language index containing every constraint function, if any.
std::optional<std::size_t> union_membership(const Instance& instance, const LanguageFamily& family);

// True iff every connected component lies in some family language
// (nullary constraints belong to every language and are ignored).
bool scattered_membership(const Instance& instance, const LanguageFamily& family);

// Enumerates all d^|X| assignments of X; in union mode every reduced
// instance must lie in a single family language, in scattered mode every
// connected component of each reduced instance must.
bool is_backdoor(const Instance& instance, const std::vector<int>& variables,
                 const LanguageFamily& family, bool scattered, SearchStats* stats = nullptr);

Backdoor verify_backdoor(const Instance& instance, std::vector<int> variables,
                         const LanguageFamily& family, bool scattered);

// DetectBD branching (union targets only): returns a backdoor of size <= k
// into VCSP[G_1] u ... u VCSP[G_l], or nullopt if none exists. All
// "arbitrary" choices are resolved deterministically: lexicographically
// first failing assignment, lowest-index violating constraint per language,
// lowest-indexed scope variables, branching in ascending variable order.
// Leaf count obeys nodes_visited <= (l*(q+1))^k.
std::optional<std::vector<int>> detect_backdoor_branching(const Instance& instance, int k,
                                                          const LanguageFamily& family,
                                                          SearchStats* stats = nullptr);

// Brute-force detector: lexicographically smallest backdoor of minimum size
// <= k, or nullopt. Serves as correctness oracle for the branching detector
// and as the desk-scale scattered detector. Refuses (BudgetExceeded) when
// C(n,<=k)*d^k exceeds the budget.
std::optional<std::vector<int>> detect_backdoor_exhaustive(
    const Instance& instance, int k, const LanguageFamily& family, bool scattered,
    std::size_t budget = kDefaultEnumerationBudget, SearchStats* stats = nullptr);

// Backdoor exploitation: solves the reduced instance for each of the d^|X|
// assignments and returns the minimum-cost combined assignment, ties broken
// lexicographically on (tau, alpha). A reduced instance outside the target
// class raises an error naming the assignment.
Solution solve_with_backdoor(const Instance& instance, const std::vector<int>& variables,
                             const LanguageFamily& family, bool scattered,
                             SearchStats* stats = nullptr,
                             const SolverRegistry& registry = SolverRegistry::builtins());

} // namespace vcsp

#endif
