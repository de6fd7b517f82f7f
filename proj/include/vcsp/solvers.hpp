#ifndef VCSP_SOLVERS_HPP
#define VCSP_SOLVERS_HPP

#include "vcsp/language.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>

namespace vcsp {

// A minimum-cost total assignment. Invariant: evaluate(instance, assignment)
// equals cost exactly. All solvers break ties toward the lexicographically
// smallest optimal assignment.
struct Solution {
    PartialAssignment assignment;
    Cost cost;
};

inline constexpr std::size_t kDefaultEnumerationBudget = std::size_t(1) << 24;

// Fast-path evaluation: values[v] is the value of variable v.
Cost evaluate_tuple(const Instance& instance, std::span<const int> values);

// Enumerates all d^n assignments. Refuses (BudgetExceeded) if d^n exceeds
// the budget; never truncates silently.
Solution brute_force_solve(const Instance& instance,
                           std::size_t budget = kDefaultEnumerationBudget);

// Requires every constraint to pass the min_closed_crisp recognizer.
// Generalized arc consistency on per-variable domain lists, then every
// variable takes its minimum surviving value; for min-closed constraints
// that assignment satisfies the instance whenever the domains are nonempty.
Solution solve_min_closed(const Instance& instance);

// Requires d = 2, arity <= 2, and every table submodular. Exact minimum via
// reduction to minimum s-t cut (posiform construction); infinite costs
// become infinite-capacity edges, kept symbolic throughout.
Solution solve_submodular_boolean(const Instance& instance);

class SolverRegistry {
public:
    using ComponentSolver = std::function<Solution(const Instance&)>;

    // min_closed_crisp and submodular_boolean.
    static const SolverRegistry& builtins();

    void register_solver(std::string language_name, ComponentSolver solver);
    const ComponentSolver* find(const std::string& language_name) const;

private:
    std::map<std::string, ComponentSolver> solvers_;
};

// Scattered dispatch: solves each connected component with the registered
// solver of the least-index language containing it, merges the per-component
// assignments, and adds nullary constants. Errors if some component is in no
// family language, identifying the component.
Solution solve_scattered(const Instance& instance, const LanguageFamily& family,
                         const SolverRegistry& registry = SolverRegistry::builtins());

} // namespace vcsp

#endif
