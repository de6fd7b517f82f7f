#include "vcsp/backdoor.hpp"

#include <algorithm>
#include <set>

namespace vcsp {

namespace {

std::vector<int> sorted_unique(std::vector<int> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

void check_variables(const Instance& instance, const std::vector<int>& vars) {
    for (int v : vars)
        if (v < 0 || v >= instance.num_variables())
            throw Error("backdoor variable " + std::to_string(v) + " out of range");
}

PartialAssignment nth_assignment(const std::vector<int>& vars, int domain_size, std::size_t index) {
    std::vector<int> values = index_to_tuple(index, domain_size, static_cast<int>(vars.size()));
    std::map<int, int> bindings;
    for (std::size_t i = 0; i < vars.size(); ++i) bindings.emplace(vars[i], values[i]);
    return PartialAssignment(std::move(bindings));
}

std::string assignment_str(const PartialAssignment& tau) {
    std::string out = "{";
    bool first = true;
    for (const auto& [var, val] : tau.bindings()) {
        if (!first) out += ", ";
        out += std::to_string(var) + "->" + std::to_string(val);
        first = false;
    }
    return out + "}";
}

} // namespace

std::optional<std::size_t> union_membership(const Instance& instance, const LanguageFamily& family) {
    for (std::size_t i = 0; i < family.size(); ++i)
        if (instance_in_language(instance, family[i])) return i;
    return std::nullopt;
}

bool scattered_membership(const Instance& instance, const LanguageFamily& family) {
    ComponentDecomposition decomposition = connected_components(instance);
    for (const Component& component : decomposition.components) {
        if (component.constraint_indices.empty()) continue;
        Instance sub = component_instance(instance, component);
        if (!union_membership(sub, family)) return false;
    }
    return true;
}

bool is_backdoor(const Instance& instance, const std::vector<int>& variables,
                 const LanguageFamily& family, bool scattered, SearchStats* stats) {
    check_variables(instance, variables);
    std::vector<int> vars = sorted_unique(variables);
    std::size_t count = table_size(instance.domain_size(), static_cast<int>(vars.size()));
    for (std::size_t index = 0; index < count; ++index) {
        PartialAssignment tau = nth_assignment(vars, instance.domain_size(), index);
        if (stats) ++stats->assignments_checked;
        Instance reduced = apply_assignment(instance, tau);
        bool ok = scattered ? scattered_membership(reduced, family)
                            : union_membership(reduced, family).has_value();
        if (!ok) return false;
    }
    return true;
}

Backdoor verify_backdoor(const Instance& instance, std::vector<int> variables,
                         const LanguageFamily& family, bool scattered) {
    std::vector<int> vars = sorted_unique(std::move(variables));
    bool ok = is_backdoor(instance, vars, family, scattered);
    return Backdoor{std::move(vars), scattered, ok};
}

namespace {

struct BranchContext {
    const Instance& instance;
    const LanguageFamily& family;
    int k;
    SearchStats* stats;
};

// Lexicographically first assignment of B whose reduced instance lies in no
// family language, together with the lowest-index violating constraint per
// language (in original constraint numbering) and the reduced scopes mapped
// back to original variable ids.
struct FailingCase {
    std::vector<std::vector<int>> violating_scope_vars; // per language, ascending original ids
};

std::optional<FailingCase> find_failing_assignment(const BranchContext& ctx,
                                                   const std::vector<int>& current) {
    std::size_t count = table_size(ctx.instance.domain_size(), static_cast<int>(current.size()));
    for (std::size_t index = 0; index < count; ++index) {
        PartialAssignment sigma = nth_assignment(current, ctx.instance.domain_size(), index);
        if (ctx.stats) ++ctx.stats->assignments_checked;
        std::vector<int> kept;
        Instance reduced = apply_assignment(ctx.instance, sigma, &kept);
        FailingCase failing;
        bool all_violated = true;
        for (std::size_t i = 0; i < ctx.family.size() && all_violated; ++i) {
            bool found = false;
            for (const ValuedConstraint& c : reduced.constraints()) {
                if (!ctx.family[i].contains(c.function)) {
                    std::vector<int> vars;
                    for (int v : c.variables()) vars.push_back(kept[static_cast<std::size_t>(v)]);
                    failing.violating_scope_vars.push_back(std::move(vars));
                    found = true;
                    break;
                }
            }
            if (!found) all_violated = false; // sigma lands in language i
        }
        if (all_violated) return failing;
    }
    return std::nullopt;
}

std::optional<std::vector<int>> detect_recursive(const BranchContext& ctx,
                                                 const std::vector<int>& current) {
    std::optional<FailingCase> failing = find_failing_assignment(ctx, current);
    if (!failing) {
        if (ctx.stats) ++ctx.stats->nodes_visited;
        return current;
    }
    if (static_cast<int>(current.size()) >= ctx.k) {
        if (ctx.stats) ++ctx.stats->nodes_visited;
        return std::nullopt;
    }
    int q = ctx.family.arity_bound();
    std::set<int> branch_set;
    for (const std::vector<int>& scope_vars : failing->violating_scope_vars) {
        if (static_cast<int>(scope_vars.size()) <= q) {
            branch_set.insert(scope_vars.begin(), scope_vars.end());
        } else {
            // an arbitrary q+1-sized subset: the q+1 lowest variable ids
            for (int j = 0; j <= q; ++j) branch_set.insert(scope_vars[static_cast<std::size_t>(j)]);
        }
    }
    for (int v : current) branch_set.erase(v);
    for (int x : branch_set) { // ascending; first success wins
        std::vector<int> next = current;
        next.insert(std::lower_bound(next.begin(), next.end(), x), x);
        if (auto found = detect_recursive(ctx, next)) return found;
    }
    if (branch_set.empty() && ctx.stats) ++ctx.stats->nodes_visited;
    return std::nullopt;
}

} // namespace

std::optional<std::vector<int>> detect_backdoor_branching(const Instance& instance, int k,
                                                          const LanguageFamily& family,
                                                          SearchStats* stats) {
    if (k < 0) throw Error("detect_backdoor_branching: negative k");
    if (family.domain_size() != instance.domain_size())
        throw Error("detect_backdoor_branching: family domain size mismatch");
    BranchContext ctx{instance, family, k, stats};
    return detect_recursive(ctx, {});
}

std::optional<std::vector<int>> detect_backdoor_exhaustive(const Instance& instance, int k,
                                                           const LanguageFamily& family,
                                                           bool scattered, std::size_t budget,
                                                           SearchStats* stats) {
    if (k < 0) throw Error("detect_backdoor_exhaustive: negative k");
    if (family.domain_size() != instance.domain_size())
        throw Error("detect_backdoor_exhaustive: family domain size mismatch");
    int n = instance.num_variables();
    int max_size = std::min(k, n);

    // C(n, <=k) * d^k enumeration cost, refused up front.
    std::size_t planned = 0;
    std::size_t per_set = table_size(instance.domain_size(), max_size);
    std::size_t subsets = 0;
    std::size_t binomial = 1;
    for (int size = 0; size <= max_size; ++size) {
        subsets += binomial;
        if (binomial > budget) throw BudgetExceeded("detect_backdoor_exhaustive: subset count");
        binomial = binomial * static_cast<std::size_t>(n - size) / static_cast<std::size_t>(size + 1);
    }
    if (per_set != 0 && subsets > budget / per_set)
        throw BudgetExceeded("detect_backdoor_exhaustive: C(n,<=k)*d^k = " +
                             std::to_string(subsets) + "*" + std::to_string(per_set) +
                             " exceeds budget " + std::to_string(budget));
    planned = subsets * per_set;
    (void)planned;

    for (int size = 0; size <= max_size; ++size) {
        std::vector<int> combo(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = i;
        for (;;) {
            if (stats) ++stats->nodes_visited;
            if (is_backdoor(instance, combo, family, scattered, stats)) return combo;
            // next combination in lexicographic order
            int i = size - 1;
            while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - size + i) --i;
            if (i < 0) break;
            ++combo[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return std::nullopt;
}

Solution solve_with_backdoor(const Instance& instance, const std::vector<int>& variables,
                             const LanguageFamily& family, bool scattered, SearchStats* stats,
                             const SolverRegistry& registry) {
    check_variables(instance, variables);
    std::vector<int> vars = sorted_unique(variables);
    std::size_t count = table_size(instance.domain_size(), static_cast<int>(vars.size()));
    std::optional<Solution> best;
    for (std::size_t index = 0; index < count; ++index) {
        PartialAssignment tau = nth_assignment(vars, instance.domain_size(), index);
        if (stats) ++stats->assignments_checked;
        std::vector<int> kept;
        Instance reduced = apply_assignment(instance, tau, &kept);
        Solution sub;
        if (scattered) {
            if (!scattered_membership(reduced, family))
                throw Error("solve_with_backdoor: reduced instance outside the scattered class "
                            "for assignment " +
                            assignment_str(tau));
            sub = solve_scattered(reduced, family, registry);
        } else {
            std::optional<std::size_t> language = union_membership(reduced, family);
            if (!language)
                throw Error("solve_with_backdoor: reduced instance outside the class for "
                            "assignment " +
                            assignment_str(tau));
            const auto* solver = registry.find(family[*language].name());
            if (!solver)
                throw Error("solve_with_backdoor: no registered solver for language '" +
                            family[*language].name() + "'");
            sub = (*solver)(reduced);
        }
        PartialAssignment alpha;
        for (std::size_t i = 0; i < kept.size(); ++i)
            alpha.bind(kept[i], sub.assignment.value_of(static_cast<int>(i)));
        PartialAssignment merged = PartialAssignment::merged(tau, alpha);
        // tau enumerated in lexicographic order and alpha is the solver's
        // lexicographic minimum: strict improvement realizes the (tau, alpha)
        // tie-break.
        if (!best || sub.cost < best->cost) best = Solution{std::move(merged), sub.cost};
    }
    return *best;
}

} // namespace vcsp
