#include "vcsp/generators.hpp"

#include <algorithm>

namespace vcsp {

LanguageFamily builtin_family() {
    return LanguageFamily({Language::min_closed_crisp(2), Language::submodular_boolean()});
}

CostFunction random_cost_function(Rng& rng, int arity, int domain_size,
                                  const std::vector<Cost>& pool) {
    std::vector<Cost> table;
    table.reserve(table_size(domain_size, arity));
    for (std::size_t i = 0; i < table_size(domain_size, arity); ++i) table.push_back(rng.pick(pool));
    return CostFunction(arity, domain_size, std::move(table));
}

CostFunction random_min_closed_function(Rng& rng, int arity, int domain_size) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<Cost> table;
        for (std::size_t i = 0; i < table_size(domain_size, arity); ++i)
            table.push_back(rng.chance(3, 5) ? Cost::zero() : Cost::infinity());
        CostFunction f(arity, domain_size, std::move(table));
        if (is_min_closed_crisp_function(f)) return f;
    }
    throw Error("random_min_closed_function: rejection sampling failed");
}

CostFunction random_submodular_function(Rng& rng, int arity, const std::vector<Cost>& pool) {
    if (arity > 2)
        throw Error("random_submodular_function: arity above 2 unsupported");
    for (int attempt = 0; attempt < 10000; ++attempt) {
        CostFunction f = random_cost_function(rng, arity, 2, pool);
        if (is_submodular_boolean_function(f)) return f;
    }
    throw Error("random_submodular_function: rejection sampling failed");
}

Instance random_instance(Rng& rng, int num_variables, int domain_size, int num_constraints,
                         int max_arity, const std::vector<Cost>& pool) {
    std::vector<ValuedConstraint> constraints;
    for (int i = 0; i < num_constraints; ++i) {
        int arity = rng.chance(1, 8) ? 0 : 1 + rng.below(max_arity);
        std::vector<int> scope;
        for (int j = 0; j < arity; ++j) scope.push_back(rng.below(num_variables));
        constraints.emplace_back(std::move(scope),
                                 random_cost_function(rng, arity, domain_size, pool));
    }
    return Instance(num_variables, domain_size, std::move(constraints));
}

namespace {

const std::vector<Cost>& soft_pool() {
    static const std::vector<Cost> pool = {Cost(0), Cost(1), Cost(2), Cost(1, 2),
                                           Cost(3, 2), Cost::infinity()};
    return pool;
}

// The binary NAND relation {(0,0),(0,1),(1,0)}: min-closed but not
// submodular (inf = phi(1,1) > phi(0,1)+phi(1,0) = 0).
CostFunction nand_relation() {
    return CostFunction(2, 2, {Cost(0), Cost(0), Cost(0), Cost::infinity()});
}

// Submodular, finite-valued, and not crisp (so outside min_closed_crisp).
CostFunction random_soft_submodular_binary(Rng& rng) {
    static const std::vector<Cost> finite_pool = {Cost(0), Cost(1), Cost(2), Cost(1, 2), Cost(3, 2)};
    for (int attempt = 0; attempt < 10000; ++attempt) {
        CostFunction f = random_cost_function(rng, 2, 2, finite_pool);
        if (is_submodular_boolean_function(f) && !f.is_crisp()) return f;
    }
    throw Error("random_soft_submodular_binary: rejection sampling failed");
}

// Ternary table on (x,u,v) whose x=0 block is `zero_block` and x=1 block is
// `one_block`, both binary over the boolean domain.
CostFunction switch_table(const CostFunction& zero_block, const CostFunction& one_block) {
    std::vector<Cost> table;
    table.reserve(8);
    for (const Cost& c : zero_block.table()) table.push_back(c);
    for (const Cost& c : one_block.table()) table.push_back(c);
    return CostFunction(3, 2, std::move(table));
}

void check(bool condition, const std::string& what) {
    if (!condition) throw Error("generator postcondition failed: " + what);
}

std::string join_ints(const std::vector<int>& values) {
    std::string out;
    for (int v : values) out += (out.empty() ? "" : ",") + std::to_string(v);
    return out;
}

} // namespace

InstanceDocument generate_cut_vertex(std::uint64_t seed, int n1, int n2) {
    if (n1 < 2 || n2 < 2)
        throw Error("generate_cut_vertex: side sizes must be >= 2");
    Rng rng(seed ^ 0xc07ULL);
    int n = 1 + n1 + n2;
    std::vector<ValuedConstraint> constraints;
    // Side 1 chains 1..n1 through x=0 Horn / x=1 submodular switches;
    // side 2 swaps the roles.
    for (int i = 1; i < n1; ++i)
        constraints.emplace_back(std::vector<int>{0, i, i + 1},
                                 switch_table(nand_relation(), random_soft_submodular_binary(rng)));
    for (int i = n1 + 1; i < n1 + n2; ++i)
        constraints.emplace_back(std::vector<int>{0, i, i + 1},
                                 switch_table(random_soft_submodular_binary(rng), nand_relation()));
    Instance instance(n, 2, std::move(constraints));

    LanguageFamily family = builtin_family();
    for (int x_value = 0; x_value < 2; ++x_value) {
        PartialAssignment tau;
        tau.bind(0, x_value);
        Instance reduced = apply_assignment(instance, tau);
        ComponentDecomposition parts = connected_components(reduced);
        check(parts.components.size() == 2, "assigning x must split V1 from V2");
        // after dropping x, side 1 is 0..n1-1 and side 2 is n1..n1+n2-1
        const Component& side1 = parts.components[0];
        const Component& side2 = parts.components[1];
        check(static_cast<int>(side1.variables.size()) == n1 &&
                  side1.variables.front() == 0 && side1.variables.back() == n1 - 1,
              "side 1 variables form one component");
        check(static_cast<int>(side2.variables.size()) == n2 &&
                  side2.variables.front() == n1 && side2.variables.back() == n1 + n2 - 1,
              "side 2 variables form one component");
        const Language& horn = family[0];
        const Language& submodular = family[1];
        const Language& expect1 = (x_value == 0) ? horn : submodular;
        const Language& expect2 = (x_value == 0) ? submodular : horn;
        check(instance_in_language(component_instance(reduced, side1), expect1),
              "side 1 lands in the expected language");
        check(instance_in_language(component_instance(reduced, side2), expect2),
              "side 2 lands in the expected language");
    }
    check(is_backdoor(instance, {0}, family, /*scattered=*/true),
          "{x} is a scattered backdoor");

    InstanceDocument doc(std::move(instance));
    doc.metadata["generator"] = "cut_vertex";
    doc.metadata["seed"] = std::to_string(seed);
    doc.metadata["n1"] = std::to_string(n1);
    doc.metadata["n2"] = std::to_string(n2);
    doc.metadata["cut_variable"] = "0";
    return doc;
}

InstanceDocument generate_planted_backdoor(std::uint64_t seed, int n, int k) {
    if (k < 1 || n < k + 2)
        throw Error("generate_planted_backdoor: need k >= 1 and n >= k+2");
    Rng rng(seed ^ 0x9147ULL);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(rng.below(i + 1))]);
    std::vector<int> planted(order.begin(), order.begin() + k);
    std::sort(planted.begin(), planted.end());
    std::vector<int> rest(order.begin() + k, order.end());
    std::sort(rest.begin(), rest.end());

    auto random_block = [&](Rng& r) {
        return r.chance(1, 2) ? random_min_closed_function(r, 2, 2)
                              : random_soft_submodular_binary(r);
    };
    std::vector<ValuedConstraint> constraints;
    for (std::size_t i = 0; i + 1 < rest.size(); i += 2) {
        int x = planted[static_cast<std::size_t>(rng.below(k))];
        constraints.emplace_back(std::vector<int>{x, rest[i], rest[i + 1]},
                                 switch_table(random_block(rng), random_block(rng)));
    }
    Instance instance(n, 2, std::move(constraints));
    check(is_backdoor(instance, planted, builtin_family(), /*scattered=*/true),
          "planted set is a scattered backdoor");

    InstanceDocument doc(std::move(instance));
    doc.metadata["generator"] = "planted_backdoor";
    doc.metadata["seed"] = std::to_string(seed);
    doc.metadata["n"] = std::to_string(n);
    doc.metadata["k"] = std::to_string(k);
    doc.metadata["planted"] = join_ints(planted);
    return doc;
}

InstanceDocument generate_random_scattered(std::uint64_t seed, int components,
                                           int component_size) {
    if (components < 1 || component_size < 1)
        throw Error("generate_random_scattered: degenerate sizes");
    Rng rng(seed ^ 0x5ca77ULL);
    std::vector<ValuedConstraint> constraints;
    int n = components * component_size;
    for (int block = 0; block < components; ++block) {
        int base = block * component_size;
        bool horn = rng.chance(1, 2);
        for (int j = 0; j < component_size; ++j) {
            int arity = (component_size >= 2 && rng.chance(3, 4)) ? 2 : 1;
            std::vector<int> scope{base + rng.below(component_size)};
            if (arity == 2) {
                int other = base + rng.below(component_size);
                scope.push_back(other);
            }
            CostFunction f = horn ? random_min_closed_function(rng, arity, 2)
                                  : random_submodular_function(rng, arity, soft_pool());
            constraints.emplace_back(std::move(scope), std::move(f));
        }
    }
    if (rng.chance(1, 2))
        constraints.emplace_back(std::vector<int>{},
                                 CostFunction::constant(2, rng.pick(soft_pool())));
    Instance instance(n, 2, std::move(constraints));
    check(scattered_membership(instance, builtin_family()),
          "every component lies in a built-in language");

    InstanceDocument doc(std::move(instance));
    doc.metadata["generator"] = "random_scattered";
    doc.metadata["seed"] = std::to_string(seed);
    doc.metadata["components"] = std::to_string(components);
    doc.metadata["component_size"] = std::to_string(component_size);
    return doc;
}

InstanceDocument generate_random_submodular(std::uint64_t seed, int n, int m) {
    if (n < 1 || m < 0)
        throw Error("generate_random_submodular: degenerate sizes");
    Rng rng(seed ^ 0x50bULL);
    std::vector<ValuedConstraint> constraints;
    for (int i = 0; i < m; ++i) {
        int arity = (n >= 2 && rng.chance(3, 4)) ? 2 : 1;
        std::vector<int> scope{rng.below(n)};
        if (arity == 2) scope.push_back(rng.below(n));
        constraints.emplace_back(std::move(scope),
                                 random_submodular_function(rng, arity, soft_pool()));
    }
    Instance instance(n, 2, std::move(constraints));
    check(instance_in_language(instance, Language::submodular_boolean()),
          "all tables pass the submodular recognizer");

    InstanceDocument doc(std::move(instance));
    doc.metadata["generator"] = "random_submodular";
    doc.metadata["seed"] = std::to_string(seed);
    doc.metadata["n"] = std::to_string(n);
    doc.metadata["m"] = std::to_string(m);
    return doc;
}

InstanceDocument generate_random_horn(std::uint64_t seed, int n, int m) {
    if (n < 1 || m < 0)
        throw Error("generate_random_horn: degenerate sizes");
    Rng rng(seed ^ 0x40217ULL);
    std::vector<ValuedConstraint> constraints;
    for (int i = 0; i < m; ++i) {
        int arity = (n >= 2 && rng.chance(3, 4)) ? 2 : 1;
        std::vector<int> scope{rng.below(n)};
        if (arity == 2) scope.push_back(rng.below(n));
        constraints.emplace_back(std::move(scope), random_min_closed_function(rng, arity, 2));
    }
    Instance instance(n, 2, std::move(constraints));
    check(instance_in_language(instance, Language::min_closed_crisp(2)),
          "all tables pass the min-closed recognizer");

    InstanceDocument doc(std::move(instance));
    doc.metadata["generator"] = "random_horn";
    doc.metadata["seed"] = std::to_string(seed);
    doc.metadata["n"] = std::to_string(n);
    doc.metadata["m"] = std::to_string(m);
    return doc;
}

InstanceDocument generate(const std::string& kind, std::uint64_t seed, const GenParams& params) {
    if (kind == "cut_vertex") return generate_cut_vertex(seed, params.n1, params.n2);
    if (kind == "planted_backdoor") return generate_planted_backdoor(seed, params.n, params.k);
    if (kind == "random_scattered")
        return generate_random_scattered(seed, params.m, params.n);
    if (kind == "random_submodular") return generate_random_submodular(seed, params.n, params.m);
    if (kind == "random_horn") return generate_random_horn(seed, params.n, params.m);
    throw Error("generate: unknown kind '" + kind + "'");
}

} // namespace vcsp
