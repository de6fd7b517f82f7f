#ifndef VCSP_TRANSFORM_HPP
#define VCSP_TRANSFORM_HPP

#include "vcsp/backdoor.hpp"

#include <cstdint>
#include <optional>

namespace vcsp {

// Canonical fingerprint of a constraint under all partial assignments of its
// scope variables. Scope variables are ranked by first occurrence; the
// fingerprint stores, for every subset Q of ranks (bitmask ascending) and
// every assignment gamma of Q (lexicographic, lowest rank most significant),
// the set of family languages accepting the restricted cost function, as a
// bitmask. scope_shape records the rank of each coordinate, so constraints
// with equal keys have equal arity and interchangeable scopes even when
// scopes repeat variables.
struct TypeKey {
    std::vector<int> scope_shape;
    std::vector<std::uint64_t> fingerprint;

    int distinct_variables() const;
    friend bool operator==(const TypeKey&, const TypeKey&) = default;
};

struct TypeKeyHash {
    std::size_t operator()(const TypeKey& key) const;
};

// Replaces the function of one constraint, keeping its scope. The
// replacement must match the old function's arity and domain size.
Instance replace_cost_function(const Instance& instance, std::size_t constraint_index,
                               const CostFunction& replacement);

// Errors if the constraint has more than q+k distinct scope variables
// (the finitize gate should have concluded NO before calling).
TypeKey compute_type(const ValuedConstraint& constraint, const LanguageFamily& family, int k);

struct FinitizeResult {
    Instance instance;                            // P'
    std::vector<Language> languages;              // finite, closed Gamma'_i
    std::vector<TypeKey> type_of;                 // per constraint
    std::vector<std::size_t> representative_of;   // constraint -> representative index
    std::size_t type_count = 0;                   // distinct TypeKeys
};

// Finitization: nullopt means NO (some constraint has at least
// q+k+1 distinct scope variables, so no backdoor of size <= k exists).
// Otherwise constraints are grouped by TypeKey, each group's function is
// replaced by its lowest-index representative's, and Gamma'_i collects every
// restriction of a representative lying in Gamma_i, closed under partial
// assignments. Family languages must be declared closed under partial
// assignments.
std::optional<FinitizeResult> finitize(const Instance& instance, const LanguageFamily& family,
                                       int k);

// The extended domain D'' = D' u T u {epsilon}, laid out as index ranges:
// [0,d) original domain values, [d, d+|T|) cost values in ascending order
// (infinity last when present), then epsilon. The three tag ranges are
// pairwise disjoint by construction.
struct ExtendedDomain {
    int base_domain_size = 0;
    std::vector<Cost> cost_values;

    int size() const { return base_domain_size + static_cast<int>(cost_values.size()) + 1; }
    int epsilon_index() const { return size() - 1; }
    bool is_domain_value(int index) const { return index >= 0 && index < base_domain_size; }
    bool is_cost_value(int index) const {
        return index >= base_domain_size && index < size() - 1;
    }
    const Cost& cost_at(int index) const {
        return cost_values[static_cast<std::size_t>(index - base_domain_size)];
    }
    std::optional<int> index_of_cost(const Cost& value) const;
    std::string label(int index) const;
};

struct TransformOptions {
    // When true (default), infinity counts as a value returned by a cost
    // function and joins T as a distinguished marker; when false, rows whose
    // cost is infinite encode as epsilon, uniformly in language relations
    // and instance relations.
    bool infinity_in_value_set = true;
};

struct CspReduction {
    Instance instance;                         // P'': crisp over the extended domain
    std::vector<Language> languages;           // crisp Gamma''_i, closed
    ExtendedDomain domain;
    std::vector<std::vector<int>> fresh_variables; // per P' constraint, k+1 ids
};

// Reduction from the finitized instance to a crisp CSP over the
// extended domain. Every cost table becomes a (t+1)-ary relation pairing
// tuples with their cost value; each constraint is duplicated k+1 times with
// its own fresh appended variable so that minimal backdoors avoid the fresh
// variables. The empty relation of every arity <= q+1 joins each language.
CspReduction vcsp_to_csp(const FinitizeResult& finitized, const LanguageFamily& family, int k,
                         const TransformOptions& options = {});

struct PipelineOptions {
    TransformOptions transform;
    std::size_t detection_budget = kDefaultEnumerationBudget;
};

struct PipelineOutcome {
    std::vector<int> backdoor;
    Solution solution;
    SearchStats detection_stats;
};

// End-to-end pipeline: finitize, reduce to CSP, detect a minimum scattered
// backdoor of P'' (desk-scale exhaustive detector), verify it against the
// original instance, then solve with the backdoor via scattered dispatch.
// nullopt propagates NO. Family languages must be declared conservative,
// declared closed under partial assignments, and have registered solvers.
std::optional<PipelineOutcome> pipeline_solve(const Instance& instance,
                                              const LanguageFamily& family, int k,
                                              const PipelineOptions& options = {},
                                              const SolverRegistry& registry =
                                                  SolverRegistry::builtins());

} // namespace vcsp

#endif
