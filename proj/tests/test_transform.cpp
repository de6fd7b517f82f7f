#include "vcsp/generators.hpp"
#include "vcsp/transform.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace vcsp;

namespace {

CostFunction crisp_relation(int arity, int domain_size, const std::vector<std::vector<int>>& tuples) {
    std::vector<Cost> table(table_size(domain_size, arity), Cost::infinity());
    for (const auto& t : tuples) table[tuple_to_index(t, domain_size)] = Cost::zero();
    return CostFunction(arity, domain_size, std::move(table));
}

CostFunction xor_relation() { return crisp_relation(2, 2, {{0, 1}, {1, 0}}); }

const std::vector<Cost>& small_pool() {
    static const std::vector<Cost> pool = {Cost(0), Cost(1), Cost::infinity()};
    return pool;
}

Instance random_transform_instance(Rng& rng, int n, int m) {
    std::vector<ValuedConstraint> constraints;
    for (int i = 0; i < m; ++i) {
        int arity = 1 + rng.below(2);
        std::vector<int> scope;
        for (int j = 0; j < arity; ++j) scope.push_back(rng.below(n));
        constraints.emplace_back(std::move(scope),
                                 random_cost_function(rng, arity, 2, small_pool()));
    }
    return Instance(n, 2, std::move(constraints));
}

} // namespace

TEST_CASE("replace_cost_function: identity, locality, commutation with application") {
    Rng rng(113);
    Instance instance = random_transform_instance(rng, 4, 3);
    CHECK(replace_cost_function(instance, 0, instance.constraints()[0].function) == instance);

    CostFunction soft(instance.constraints()[1].function.arity(), 2,
                      std::vector<Cost>(instance.constraints()[1].function.table().size(),
                                        Cost(1, 2)));
    Instance replaced = replace_cost_function(instance, 1, soft);
    for (std::size_t i = 0; i < instance.constraints().size(); ++i) {
        if (i == 1)
            CHECK(replaced.constraints()[i].function == soft);
        else
            CHECK(replaced.constraints()[i] == instance.constraints()[i]);
    }
    CHECK_THROWS_AS(replace_cost_function(instance, 0, CostFunction::constant(2, Cost(1))), Error);

    for (int round = 0; round < 40; ++round) {
        Instance base = random_transform_instance(rng, 4, 3);
        std::size_t index = static_cast<std::size_t>(rng.below(3));
        const ValuedConstraint& target = base.constraints()[index];
        CostFunction replacement =
            random_cost_function(rng, target.function.arity(), 2, small_pool());
        PartialAssignment tau;
        for (int v = 0; v < 4; ++v)
            if (rng.chance(1, 3)) tau.bind(v, rng.below(2));
        // replace then apply == apply then replace-with-restricted
        Instance left = apply_assignment(replace_cost_function(base, index, replacement), tau);
        std::map<int, int> bound;
        for (std::size_t pos = 0; pos < target.scope.size(); ++pos)
            if (tau.binds(target.scope[pos]))
                bound.emplace(static_cast<int>(pos), tau.value_of(target.scope[pos]));
        Instance right = replace_cost_function(apply_assignment(base, tau), index,
                                               replacement.restrict_positions(bound));
        CHECK(left == right);
    }
}

TEST_CASE("compute_type: nullary, determinism, xor fingerprint entries") {
    LanguageFamily family = builtin_family();
    ValuedConstraint nullary({}, CostFunction::constant(2, Cost(7)));
    TypeKey key = compute_type(nullary, family, 1);
    CHECK(key.scope_shape.empty());
    REQUIRE(key.fingerprint.size() == 1);
    CHECK(key.fingerprint[0] == 0b11); // all languages accept nullaries

    ValuedConstraint first({0, 1}, xor_relation());
    ValuedConstraint second({2, 3}, xor_relation());
    CHECK(compute_type(first, family, 1) == compute_type(second, family, 1));

    TypeKey xor_key = compute_type(first, family, 1);
    // entries: Q bitmask ascending over 2 ranks; Q={} first
    REQUIRE(xor_key.fingerprint.size() == 9);
    CHECK(xor_key.fingerprint[0] == 0); // xor itself: neither min-closed nor submodular
    // |Q|=1 restrictions are unary crisp: members of both languages
    for (std::size_t entry = 1; entry <= 4; ++entry) CHECK(xor_key.fingerprint[entry] == 0b11);

    ValuedConstraint wide({0, 1, 2, 3}, CostFunction(4, 2, std::vector<Cost>(16)));
    CHECK_THROWS_AS(compute_type(wide, family, 1), Error);

    // repeated scopes with matching fingerprints stay apart via the shape
    ValuedConstraint repeated({0, 0}, CostFunction(2, 2, std::vector<Cost>(4)));
    ValuedConstraint plain({0, 1}, CostFunction(2, 2, std::vector<Cost>(4)));
    CHECK(compute_type(repeated, family, 1).scope_shape == std::vector<int>{0, 0});
    CHECK_FALSE(compute_type(repeated, family, 1) == compute_type(plain, family, 1));
}

TEST_CASE("finitize: single type group, arity gate, representative choice") {
    LanguageFamily family = builtin_family();
    Instance same_type(4, 2, {ValuedConstraint({0, 1}, xor_relation()),
                              ValuedConstraint({1, 2}, xor_relation()),
                              ValuedConstraint({2, 3}, xor_relation())});
    auto finitized = finitize(same_type, family, 1);
    REQUIRE(finitized.has_value());
    CHECK(finitized->type_count == 1);
    for (const ValuedConstraint& c : finitized->instance.constraints())
        CHECK(c.function == same_type.constraints()[0].function);
    for (std::size_t rep : finitized->representative_of) CHECK(rep == 0);

    // a constraint with q+k+1 distinct variables forces NO
    Instance wide(4, 2, {ValuedConstraint({0, 1, 2, 3}, CostFunction(4, 2, std::vector<Cost>(16)))});
    CHECK_FALSE(finitize(wide, family, 1).has_value());
    CHECK(finitize(wide, family, 2).has_value()); // 4 distinct vars <= q+k

    Language open_language = Language::finite_explicit("open", 2, 2, {xor_relation()});
    CHECK_THROWS_AS(finitize(same_type, LanguageFamily({open_language}), 1), Error);
}

TEST_CASE("finitized languages are subsets of the family, closed, and bounded") {
    Rng rng(127);
    LanguageFamily family = builtin_family();
    for (int round = 0; round < 25; ++round) {
        Instance instance = random_transform_instance(rng, 4, 3);
        int k = rng.below(3);
        auto finitized = finitize(instance, family, k);
        REQUIRE(finitized.has_value());
        REQUIRE(finitized->languages.size() == family.size());
        std::size_t restriction_count = 0;
        std::set<std::size_t> reps(finitized->representative_of.begin(),
                                   finitized->representative_of.end());
        for (std::size_t rep : reps) {
            int r = static_cast<int>(instance.constraints()[rep].variables().size());
            std::size_t combos = 1;
            for (int i = 0; i < r; ++i) combos *= 3; // (1+d)^r restriction patterns
            restriction_count += combos;
        }
        for (std::size_t i = 0; i < family.size(); ++i) {
            const Language& prime = finitized->languages[i];
            CHECK(prime.declared_closed_under_partial_assignments());
            for (const CostFunction& f : prime.functions()) {
                CHECK(f.arity() <= family.arity_bound());
                CHECK(family[i].contains(f));
            }
            // concrete run bound: every member is a restriction of a
            // restriction of some representative
            CHECK(prime.functions().size() <= restriction_count * 9); // * (1+d)^q
        }
    }
}

TEST_CASE("finitize preserves minimal backdoors of size <= k") {
    Rng rng(131);
    LanguageFamily family = builtin_family();
    for (int round = 0; round < 15; ++round) {
        int n = 3 + rng.below(3);
        Instance instance = random_transform_instance(rng, n, 2 + rng.below(2));
        int k = 1 + rng.below(2);
        auto finitized = finitize(instance, family, k);
        REQUIRE(finitized.has_value());
        LanguageFamily prime_family(finitized->languages);
        auto original = testutil::all_backdoors(instance, family, k, true);
        auto transformed = testutil::all_backdoors(finitized->instance, prime_family, k, true);
        CHECK(testutil::minimal_sets(original) == testutil::minimal_sets(transformed));
    }
}

TEST_CASE("observation: components of P and P' correspond with equal types") {
    Rng rng(137);
    LanguageFamily family = builtin_family();
    for (int round = 0; round < 15; ++round) {
        int n = 4 + rng.below(2);
        Instance instance = random_transform_instance(rng, n, 3);
        int k = 1;
        auto finitized = finitize(instance, family, k);
        REQUIRE(finitized.has_value());
        PartialAssignment gamma;
        for (int v = 0; v < n; ++v)
            if (rng.chance(1, 3)) gamma.bind(v, rng.below(2));
        Instance reduced = apply_assignment(instance, gamma);
        Instance reduced_prime = apply_assignment(finitized->instance, gamma);
        ComponentDecomposition parts = connected_components(reduced);
        ComponentDecomposition parts_prime = connected_components(reduced_prime);
        REQUIRE(parts.components.size() == parts_prime.components.size());
        for (std::size_t i = 0; i < parts.components.size(); ++i) {
            CHECK(parts.components[i].variables == parts_prime.components[i].variables);
            REQUIRE(parts.components[i].constraint_indices ==
                    parts_prime.components[i].constraint_indices);
            for (std::size_t idx : parts.components[i].constraint_indices) {
                // both reduced constraints have few enough variables to type
                TypeKey left = compute_type(reduced.constraints()[idx], family, k);
                TypeKey right = compute_type(reduced_prime.constraints()[idx], family, k);
                CHECK(left == right);
            }
        }
    }
}

TEST_CASE("vcsp_to_csp: encoding shape, counting, crispness") {
    LanguageFamily family = builtin_family();
    // crisp unary over d=2 becomes an arity-2 relation pairing values with
    // cost markers
    Instance crisp(2, 2, {ValuedConstraint({0}, crisp_relation(1, 2, {{1}})),
                          ValuedConstraint({0, 1}, xor_relation())});
    int k = 1;
    auto finitized = finitize(crisp, family, k);
    REQUIRE(finitized.has_value());
    CspReduction csp = vcsp_to_csp(*finitized, family, k);

    CHECK(csp.domain.base_domain_size == 2);
    CHECK(csp.domain.index_of_cost(Cost::zero()).has_value());
    CHECK(csp.domain.index_of_cost(Cost::infinity()).has_value()); // default convention
    CHECK(csp.domain.label(csp.domain.epsilon_index()) == "eps");

    std::size_t m = crisp.constraints().size();
    CHECK(csp.instance.num_variables() ==
          crisp.num_variables() + static_cast<int>(m) * (k + 1));
    CHECK(csp.instance.constraints().size() == m * static_cast<std::size_t>(k + 1));
    REQUIRE(csp.fresh_variables.size() == m);
    for (const auto& fresh : csp.fresh_variables) CHECK(fresh.size() == static_cast<std::size_t>(k + 1));

    for (const ValuedConstraint& c : csp.instance.constraints())
        CHECK(c.function.is_crisp());
    for (const Language& g : csp.languages) {
        CHECK(g.declared_closed_under_partial_assignments());
        for (const CostFunction& f : g.functions()) {
            CHECK(f.is_crisp());
            CHECK(f.arity() <= family.arity_bound() + 1);
        }
    }

    // the unary crisp constraint encodes as rows (value, cost marker)
    const ValuedConstraint& encoded = csp.instance.constraints()[0];
    REQUIRE(encoded.function.arity() == 2);
    int zero_index = *csp.domain.index_of_cost(Cost::zero());
    int inf_index = *csp.domain.index_of_cost(Cost::infinity());
    CHECK(encoded.function(std::vector<int>{1, zero_index}).is_zero());
    CHECK(encoded.function(std::vector<int>{0, inf_index}).is_zero());
    CHECK(encoded.function(std::vector<int>{0, zero_index}).is_infinite());
}

TEST_CASE("epsilon convention: infinity rows map to eps when excluded from T") {
    LanguageFamily family = builtin_family();
    Instance crisp(2, 2, {ValuedConstraint({0}, crisp_relation(1, 2, {{1}}))});
    auto finitized = finitize(crisp, family, 1);
    REQUIRE(finitized.has_value());
    TransformOptions options;
    options.infinity_in_value_set = false;
    CspReduction csp = vcsp_to_csp(*finitized, family, 1, options);
    CHECK_FALSE(csp.domain.index_of_cost(Cost::infinity()).has_value());
    const ValuedConstraint& encoded = csp.instance.constraints()[0];
    CHECK(encoded.function(std::vector<int>{0, csp.domain.epsilon_index()}).is_zero());
}

TEST_CASE("csp reduction preserves minimal backdoors and avoids fresh variables") {
    Rng rng(139);
    LanguageFamily family = builtin_family();
    for (int round = 0; round < 8; ++round) {
        int n = 3 + rng.below(2);
        Instance instance = random_transform_instance(rng, n, 2);
        int k = 1;
        for (bool infinity_in_T : {true, false}) {
            auto finitized = finitize(instance, family, k);
            REQUIRE(finitized.has_value());
            TransformOptions options;
            options.infinity_in_value_set = infinity_in_T;
            CspReduction csp = vcsp_to_csp(*finitized, family, k, options);
            LanguageFamily prime_family(finitized->languages);
            LanguageFamily csp_family(csp.languages);
            auto prime_minimal = testutil::minimal_sets(
                testutil::all_backdoors(finitized->instance, prime_family, k, true));
            auto csp_minimal = testutil::minimal_sets(
                testutil::all_backdoors(csp.instance, csp_family, k, true));
            CHECK(prime_minimal == csp_minimal);
            for (const std::vector<int>& backdoor : csp_minimal)
                for (int v : backdoor) CHECK(v < instance.num_variables());
        }
    }
}

TEST_CASE("transform equivalences hold with ternary and repeated scopes") {
    Rng rng(31337);
    LanguageFamily family = builtin_family();
    int reduction_checks = 0;
    for (int round = 0; round < 40; ++round) {
        int k = 1 + rng.below(2);
        int n = 3 + rng.below(2);
        int m = 1 + rng.below(2);
        std::vector<ValuedConstraint> constraints;
        for (int i = 0; i < m; ++i) {
            int arity = (k == 2 && rng.chance(1, 2)) ? 3 : 1 + rng.below(2);
            std::vector<int> scope;
            for (int j = 0; j < arity; ++j) scope.push_back(rng.below(n));
            constraints.emplace_back(std::move(scope),
                                     random_cost_function(rng, arity, 2, small_pool()));
        }
        Instance instance(n, 2, std::move(constraints));
        auto finitized = finitize(instance, family, k);
        REQUIRE(finitized.has_value()); // distinct variables stay below q+k+1
        LanguageFamily prime_family(finitized->languages);
        auto original = testutil::minimal_sets(testutil::all_backdoors(instance, family, k, true));
        auto transformed = testutil::minimal_sets(
            testutil::all_backdoors(finitized->instance, prime_family, k, true));
        CHECK(original == transformed);
        if (finitized->instance.num_variables() +
                static_cast<int>(finitized->instance.constraints().size()) * (k + 1) >
            12)
            continue;
        CspReduction csp = vcsp_to_csp(*finitized, family, k);
        LanguageFamily csp_family(csp.languages);
        auto crisp = testutil::minimal_sets(
            testutil::all_backdoors(csp.instance, csp_family, k, true));
        CHECK(transformed == crisp);
        for (const std::vector<int>& backdoor : crisp)
            for (int v : backdoor) CHECK(v < n);
        ++reduction_checks;
    }
    CHECK(reduction_checks >= 30);
}

TEST_CASE("pipeline agrees with direct detection and brute force") {
    Rng rng(40961);
    LanguageFamily family = builtin_family();
    int solved = 0, refused = 0;
    for (int round = 0; round < 40; ++round) {
        int k = rng.below(3);
        int n = 2 + rng.below(4);
        int m = 1 + rng.below(3);
        std::vector<ValuedConstraint> constraints;
        for (int i = 0; i < m; ++i) {
            int arity = (k >= 1 && rng.chance(1, 4)) ? 3 : 1 + rng.below(2);
            if (arity > n) arity = 1;
            std::vector<int> scope;
            for (int j = 0; j < arity; ++j) scope.push_back(rng.below(n));
            constraints.emplace_back(std::move(scope),
                                     random_cost_function(rng, arity, 2, small_pool()));
        }
        Instance instance(n, 2, std::move(constraints));
        auto direct = detect_backdoor_exhaustive(instance, k, family, true);
        for (bool infinity_in_T : {true, false}) {
            PipelineOptions options;
            options.transform.infinity_in_value_set = infinity_in_T;
            auto outcome = pipeline_solve(instance, family, k, options);
            CHECK(outcome.has_value() == direct.has_value());
            if (outcome) {
                CHECK(outcome->backdoor == *direct);
                CHECK(outcome->solution.cost == brute_force_solve(instance).cost);
                CHECK(evaluate(instance, outcome->solution.assignment) == outcome->solution.cost);
                ++solved;
            } else {
                ++refused;
            }
        }
    }
    CHECK(solved >= 20);
    CHECK(refused >= 5);
}

TEST_CASE("pipeline: in-class, cut vertex, arity gate, flag preconditions") {
    LanguageFamily family = builtin_family();

    Instance scattered_instance = generate_random_scattered(149, 2, 3).instance;
    auto outcome = pipeline_solve(scattered_instance, family, 0);
    REQUIRE(outcome.has_value());
    CHECK(outcome->backdoor.empty());
    CHECK(outcome->solution.cost == solve_scattered(scattered_instance, family).cost);

    Instance cut = generate_cut_vertex(151, 3, 3).instance;
    auto cut_outcome = pipeline_solve(cut, family, 1);
    REQUIRE(cut_outcome.has_value());
    CHECK(cut_outcome->backdoor == std::vector<int>{0});
    CHECK(cut_outcome->solution.cost == brute_force_solve(cut).cost);
    CHECK(evaluate(cut, cut_outcome->solution.assignment) == cut_outcome->solution.cost);

    Instance wide(5, 2,
                  {ValuedConstraint({0, 1, 2, 3, 4}, CostFunction(5, 2, std::vector<Cost>(32)))});
    CHECK_FALSE(pipeline_solve(wide, family, 1).has_value());

    Language not_conservative =
        Language::finite_explicit("plain", 2, 2, {xor_relation()}, false, true);
    CHECK_THROWS_AS(pipeline_solve(cut, LanguageFamily({not_conservative}), 1), Error);
}
