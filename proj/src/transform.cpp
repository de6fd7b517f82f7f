#include "vcsp/transform.hpp"

#include <algorithm>
#include <unordered_map>

namespace vcsp {

int TypeKey::distinct_variables() const {
    int r = 0;
    for (int rank : scope_shape) r = std::max(r, rank + 1);
    return r;
}

std::size_t TypeKeyHash::operator()(const TypeKey& key) const {
    std::size_t seed = key.scope_shape.size();
    for (int rank : key.scope_shape)
        seed ^= static_cast<std::size_t>(rank) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    for (std::uint64_t mask : key.fingerprint)
        seed ^= static_cast<std::size_t>(mask) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
}

Instance replace_cost_function(const Instance& instance, std::size_t constraint_index,
                               const CostFunction& replacement) {
    if (constraint_index >= instance.constraints().size())
        throw Error("replace_cost_function: constraint index out of range");
    const ValuedConstraint& old = instance.constraints()[constraint_index];
    if (replacement.arity() != old.function.arity())
        throw Error("replace_cost_function: arity mismatch (" +
                    std::to_string(replacement.arity()) + " vs " +
                    std::to_string(old.function.arity()) + ")");
    if (replacement.domain_size() != old.function.domain_size())
        throw Error("replace_cost_function: domain size mismatch");
    std::vector<ValuedConstraint> constraints = instance.constraints();
    constraints[constraint_index] = ValuedConstraint(old.scope, replacement);
    return Instance(instance.num_variables(), instance.domain_size(), std::move(constraints));
}

namespace {

// Ranks of scope coordinates by first occurrence: (x,x,y) -> (0,0,1).
std::vector<int> scope_shape_of(const std::vector<int>& scope) {
    std::map<int, int> rank_of;
    std::vector<int> shape;
    shape.reserve(scope.size());
    for (int v : scope) {
        auto [it, inserted] = rank_of.emplace(v, static_cast<int>(rank_of.size()));
        shape.push_back(it->second);
    }
    return shape;
}

// Calls visit(Q_mask, gamma, restricted function) for every subset Q of
// variable ranks (bitmask ascending) and every assignment gamma of Q
// (lexicographic, lowest rank most significant).
template <typename Visitor>
void for_each_restriction(const ValuedConstraint& constraint, int domain_size, Visitor&& visit) {
    std::vector<int> shape = scope_shape_of(constraint.scope);
    int r = 0;
    for (int rank : shape) r = std::max(r, rank + 1);
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        std::vector<int> ranks;
        for (int i = 0; i < r; ++i)
            if (mask & (1u << i)) ranks.push_back(i);
        std::size_t combos = table_size(domain_size, static_cast<int>(ranks.size()));
        for (std::size_t combo = 0; combo < combos; ++combo) {
            std::vector<int> values =
                index_to_tuple(combo, domain_size, static_cast<int>(ranks.size()));
            std::map<int, int> value_of_rank;
            for (std::size_t j = 0; j < ranks.size(); ++j)
                value_of_rank.emplace(ranks[j], values[j]);
            std::map<int, int> bound_positions;
            for (std::size_t pos = 0; pos < shape.size(); ++pos) {
                auto it = value_of_rank.find(shape[pos]);
                if (it != value_of_rank.end())
                    bound_positions.emplace(static_cast<int>(pos), it->second);
            }
            visit(mask, constraint.function.restrict_positions(bound_positions));
        }
    }
}

} // namespace

TypeKey compute_type(const ValuedConstraint& constraint, const LanguageFamily& family, int k) {
    if (family.size() > 64)
        throw Error("compute_type: more than 64 languages");
    int q = family.arity_bound();
    int r = static_cast<int>(constraint.variables().size());
    if (r > q + k)
        throw Error("compute_type: constraint has " + std::to_string(r) +
                    " distinct scope variables, above q+k = " + std::to_string(q + k));
    TypeKey key;
    key.scope_shape = scope_shape_of(constraint.scope);
    for_each_restriction(constraint, family.domain_size(),
                         [&](unsigned, const CostFunction& restricted) {
                             std::uint64_t mask = 0;
                             for (std::size_t i = 0; i < family.size(); ++i)
                                 if (family[i].contains(restricted)) mask |= std::uint64_t(1) << i;
                             key.fingerprint.push_back(mask);
                         });
    return key;
}

std::optional<FinitizeResult> finitize(const Instance& instance, const LanguageFamily& family,
                                       int k) {
    if (k < 0) throw Error("finitize: negative k");
    if (family.domain_size() != instance.domain_size())
        throw Error("finitize: family domain size mismatch");
    for (const Language& g : family.languages())
        if (!g.declared_closed_under_partial_assignments())
            throw Error("finitize: language '" + g.name() +
                        "' is not declared closed under partial assignments");

    int q = family.arity_bound();
    for (const ValuedConstraint& c : instance.constraints())
        if (static_cast<int>(c.variables().size()) >= q + k + 1)
            return std::nullopt; // no backdoor of size <= k can exist

    FinitizeResult result{instance, {}, {}, {}, 0};
    std::unordered_map<TypeKey, std::size_t, TypeKeyHash> representative;
    for (std::size_t i = 0; i < instance.constraints().size(); ++i) {
        TypeKey key = compute_type(instance.constraints()[i], family, k);
        auto [it, inserted] = representative.emplace(std::move(key), i);
        result.type_of.push_back(it->first);
        result.representative_of.push_back(it->second);
    }
    result.type_count = representative.size();

    Instance transformed = instance;
    for (std::size_t i = 0; i < instance.constraints().size(); ++i) {
        std::size_t rep = result.representative_of[i];
        if (rep != i)
            transformed = replace_cost_function(
                transformed, i, instance.constraints()[rep].function);
    }
    result.instance = std::move(transformed);

    // Gamma'_i: restrictions of representatives lying in Gamma_i, closed.
    std::vector<std::size_t> reps;
    for (std::size_t i = 0; i < instance.constraints().size(); ++i)
        if (result.representative_of[i] == i) reps.push_back(i);
    for (std::size_t i = 0; i < family.size(); ++i) {
        std::vector<CostFunction> members;
        for (std::size_t rep : reps) {
            for_each_restriction(instance.constraints()[rep], instance.domain_size(),
                                 [&](unsigned, const CostFunction& restricted) {
                                     if (family[i].contains(restricted))
                                         members.push_back(restricted);
                                 });
        }
        Language collected = Language::finite_explicit(family[i].name() + "'",
                                                       instance.domain_size(), q,
                                                       std::move(members));
        result.languages.push_back(closure_under_partial_assignments(collected));
    }
    return result;
}

std::optional<int> ExtendedDomain::index_of_cost(const Cost& value) const {
    for (std::size_t i = 0; i < cost_values.size(); ++i)
        if (cost_values[i] == value) return base_domain_size + static_cast<int>(i);
    return std::nullopt;
}

std::string ExtendedDomain::label(int index) const {
    if (is_domain_value(index)) return std::to_string(index);
    if (is_cost_value(index)) return "cost:" + cost_at(index).str();
    if (index == epsilon_index()) return "eps";
    throw Error("ExtendedDomain: index out of range");
}

namespace {

// (t+1)-ary crisp relation over the extended domain pairing every tuple of
// original-domain values with the encoding of its cost.
CostFunction cost_table_relation(const CostFunction& f, const ExtendedDomain& domain) {
    int t = f.arity();
    int dd = domain.size();
    std::vector<Cost> table(table_size(dd, t + 1), Cost::infinity());
    std::size_t rows = f.table().size();
    std::vector<int> extended(static_cast<std::size_t>(t) + 1);
    for (std::size_t row = 0; row < rows; ++row) {
        std::vector<int> tuple = index_to_tuple(row, f.domain_size(), t);
        for (int i = 0; i < t; ++i) extended[static_cast<std::size_t>(i)] = tuple[static_cast<std::size_t>(i)];
        std::optional<int> encoded = domain.index_of_cost(f.at_index(row));
        extended[static_cast<std::size_t>(t)] = encoded ? *encoded : domain.epsilon_index();
        table[tuple_to_index(extended, dd)] = Cost::zero();
    }
    return CostFunction(t + 1, dd, std::move(table));
}

CostFunction empty_relation(int arity, int domain_size) {
    return CostFunction(arity, domain_size,
                        std::vector<Cost>(table_size(domain_size, arity), Cost::infinity()));
}

} // namespace

CspReduction vcsp_to_csp(const FinitizeResult& finitized, const LanguageFamily& family, int k,
                         const TransformOptions& options) {
    if (k < 0) throw Error("vcsp_to_csp: negative k");
    const Instance& prime = finitized.instance;
    int d = prime.domain_size();
    int q = family.arity_bound();

    // T: every value returned by some language cost function, ascending,
    // infinity last when the convention includes it.
    std::vector<Cost> values;
    bool saw_infinite = false;
    for (const Language& g : finitized.languages) {
        for (const CostFunction& f : g.functions()) {
            for (const Cost& c : f.table()) {
                if (c.is_infinite())
                    saw_infinite = true;
                else if (std::find(values.begin(), values.end(), c) == values.end())
                    values.push_back(c);
            }
        }
    }
    std::sort(values.begin(), values.end());
    if (saw_infinite && options.infinity_in_value_set) values.push_back(Cost::infinity());

    CspReduction out{Instance(0, 1), {}, ExtendedDomain{d, std::move(values)}, {}};
    int dd = out.domain.size();

    for (std::size_t i = 0; i < finitized.languages.size(); ++i) {
        const Language& g = finitized.languages[i];
        std::vector<CostFunction> relations;
        for (const CostFunction& f : g.functions())
            relations.push_back(cost_table_relation(f, out.domain));
        for (int arity = 1; arity <= q + 1; ++arity)
            relations.push_back(empty_relation(arity, dd));
        Language collected = Language::finite_explicit(g.name() + "'", dd, q + 1,
                                                       std::move(relations));
        out.languages.push_back(closure_under_partial_assignments(collected));
    }

    int next_variable = prime.num_variables();
    std::vector<ValuedConstraint> constraints;
    for (const ValuedConstraint& c : prime.constraints()) {
        CostFunction relation = cost_table_relation(c.function, out.domain);
        std::vector<int> fresh;
        for (int copy = 0; copy < k + 1; ++copy) {
            std::vector<int> scope = c.scope;
            scope.push_back(next_variable);
            fresh.push_back(next_variable);
            ++next_variable;
            constraints.emplace_back(std::move(scope), relation);
        }
        out.fresh_variables.push_back(std::move(fresh));
    }
    out.instance = Instance(next_variable, dd, std::move(constraints));
    return out;
}

std::optional<PipelineOutcome> pipeline_solve(const Instance& instance,
                                              const LanguageFamily& family, int k,
                                              const PipelineOptions& options,
                                              const SolverRegistry& registry) {
    for (const Language& g : family.languages()) {
        if (!g.declared_conservative())
            throw Error("pipeline_solve: language '" + g.name() + "' is not declared conservative");
        if (!g.declared_closed_under_partial_assignments())
            throw Error("pipeline_solve: language '" + g.name() +
                        "' is not declared closed under partial assignments");
        if (!registry.find(g.name()))
            throw Error("pipeline_solve: no registered solver for language '" + g.name() + "'");
    }

    std::optional<FinitizeResult> finitized = finitize(instance, family, k);
    if (!finitized) return std::nullopt;
    CspReduction csp = vcsp_to_csp(*finitized, family, k, options.transform);

    LanguageFamily csp_family(csp.languages);
    SearchStats stats;
    std::optional<std::vector<int>> backdoor = detect_backdoor_exhaustive(
        csp.instance, k, csp_family, /*scattered=*/true, options.detection_budget, &stats);
    if (!backdoor) return std::nullopt;

    for (int v : *backdoor)
        if (v >= instance.num_variables())
            throw Error("pipeline_solve: detected backdoor uses a fresh variable, "
                        "contradicting minimality");
    if (!is_backdoor(instance, *backdoor, family, /*scattered=*/true))
        throw Error("pipeline_solve: detected set fails verification against the original "
                    "instance");

    Solution solution =
        solve_with_backdoor(instance, *backdoor, family, /*scattered=*/true, &stats, registry);
    return PipelineOutcome{std::move(*backdoor), std::move(solution), stats};
}

} // namespace vcsp
