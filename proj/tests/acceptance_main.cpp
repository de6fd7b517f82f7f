// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// All corpora are seed-deterministic; every expected value is exact.

#include "vcsp/generators.hpp"
#include "vcsp/transform.hpp"

#include "test_util.hpp"

#include <functional>
#include <iostream>
#include <sstream>

using namespace vcsp;

namespace {

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& what) {
    if (!condition) throw Failure(what);
}

std::string show(const std::vector<int>& values) {
    std::string out = "{";
    for (std::size_t i = 0; i < values.size(); ++i)
        out += (i ? "," : "") + std::to_string(values[i]);
    return out + "}";
}

const std::vector<Cost>& crisp_pool() {
    static const std::vector<Cost> pool = {Cost(0), Cost(1), Cost::infinity()};
    return pool;
}

const std::vector<Cost>& wide_pool() {
    static const std::vector<Cost> pool = {Cost(0), Cost(1), Cost(2), Cost::infinity()};
    return pool;
}

// Mixed corpus for detection: random tables with an in-class bias so both
// YES and NO cases appear.
Instance random_detection_instance(Rng& rng, int n, int m, int max_arity) {
    std::vector<ValuedConstraint> constraints;
    for (int i = 0; i < m; ++i) {
        int arity = 1 + rng.below(max_arity);
        std::vector<int> scope;
        for (int j = 0; j < arity; ++j) scope.push_back(rng.below(n));
        CostFunction f = (arity <= 2 && rng.chance(1, 2))
                             ? (rng.chance(1, 2) ? random_min_closed_function(rng, arity, 2)
                                                 : random_submodular_function(rng, arity, wide_pool()))
                             : random_cost_function(rng, arity, 2, wide_pool());
        constraints.emplace_back(std::move(scope), std::move(f));
    }
    return Instance(n, 2, std::move(constraints));
}

// criterion 1: base-class solvers equal the brute-force oracle exactly
void criterion_1() {
    Rng rng(1001);
    for (int round = 0; round < 500; ++round) {
        int n = 1 + rng.below(10);
        int m = rng.below(8);
        Instance horn = generate_random_horn(rng.next(), n, m).instance;
        require(solve_min_closed(horn).cost == brute_force_solve(horn).cost,
                "min_closed cost mismatch at round " + std::to_string(round));
        Instance submodular = generate_random_submodular(rng.next(), n, m).instance;
        require(solve_submodular_boolean(submodular).cost == brute_force_solve(submodular).cost,
                "submodular cost mismatch at round " + std::to_string(round));
    }
}

// criterion 2: solving through a planted backdoor is exact and enumerates
// exactly d^|X| assignments
void criterion_2() {
    Rng rng(2002);
    LanguageFamily family = builtin_family();
    for (int round = 0; round < 200; ++round) {
        int k = 1 + rng.below(3);
        int n = k + 2 + rng.below(5);
        InstanceDocument doc = generate_planted_backdoor(rng.next(), n, k);
        std::vector<int> planted;
        std::stringstream stream(doc.metadata.at("planted"));
        for (std::string item; std::getline(stream, item, ',');)
            planted.push_back(std::stoi(item));
        SearchStats stats;
        Solution via = solve_with_backdoor(doc.instance, planted, family, true, &stats);
        Solution direct = brute_force_solve(doc.instance);
        require(via.cost == direct.cost,
                "backdoor solve cost mismatch at round " + std::to_string(round));
        require(evaluate(doc.instance, via.assignment) == via.cost,
                "solution invariant violated at round " + std::to_string(round));
        require(stats.assignments_checked == table_size(2, static_cast<int>(planted.size())),
                "enumeration count != d^|X| at round " + std::to_string(round));
    }
}

// criterion 3: branching detector agrees with the exhaustive oracle, returns
// sound sets, and respects the (l*(q+1))^k search-tree bound
void criterion_3() {
    Rng rng(3003);
    LanguageFamily family = builtin_family();
    std::size_t yes_cases = 0;
    for (int round = 0; round < 300; ++round) {
        int n = 2 + rng.below(7);
        int m = 1 + rng.below(5);
        Instance instance = random_detection_instance(rng, n, m, 3);
        int k = rng.below(3);
        SearchStats stats;
        auto branching = detect_backdoor_branching(instance, k, family, &stats);
        auto exhaustive = detect_backdoor_exhaustive(instance, k, family, false);
        require(branching.has_value() == exhaustive.has_value(),
                "existence disagreement at round " + std::to_string(round));
        if (branching) {
            ++yes_cases;
            require(static_cast<int>(branching->size()) <= k,
                    "oversized backdoor at round " + std::to_string(round));
            require(is_backdoor(instance, *branching, family, false),
                    "unsound branching result at round " + std::to_string(round));
            require(is_backdoor(instance, *exhaustive, family, false),
                    "unsound exhaustive result at round " + std::to_string(round));
        }
        std::size_t bound = 1;
        for (int i = 0; i < k; ++i) bound *= family.size() * (family.arity_bound() + 1);
        require(stats.nodes_visited >= 1 && stats.nodes_visited <= bound,
                "search tree bound violated at round " + std::to_string(round) + ": " +
                    std::to_string(stats.nodes_visited) + " > " + std::to_string(bound));
    }
    require(yes_cases >= 50, "corpus too skewed: only " + std::to_string(yes_cases) + " YES cases");
}

// shared corpus for criteria 4 and 5
struct TransformCase {
    Instance instance;
    int k;
};

std::vector<TransformCase> transform_corpus() {
    Rng rng(4004);
    std::vector<TransformCase> corpus;
    for (int round = 0; round < 100; ++round) {
        int k = round % 3;
        int n = (k == 2) ? 2 + rng.below(4) : 2 + rng.below(5);
        int m = (k == 2) ? 1 + rng.below(3) : 1 + rng.below(4);
        const std::vector<Cost>& pool = rng.chance(1, 3) ? wide_pool() : crisp_pool();
        std::vector<ValuedConstraint> constraints;
        for (int i = 0; i < m; ++i) {
            int arity = 1 + rng.below(2);
            std::vector<int> scope;
            for (int j = 0; j < arity; ++j) scope.push_back(rng.below(n));
            constraints.emplace_back(std::move(scope), random_cost_function(rng, arity, 2, pool));
        }
        corpus.push_back({Instance(n, 2, std::move(constraints)), k});
    }
    return corpus;
}

// criterion 4: finitization preserves minimal scattered backdoors of size <= k
void criterion_4() {
    LanguageFamily family = builtin_family();
    std::size_t compared = 0;
    int index = 0;
    for (const TransformCase& item : transform_corpus()) {
        auto finitized = finitize(item.instance, family, item.k);
        require(finitized.has_value(), "unexpected NO at case " + std::to_string(index));
        LanguageFamily prime_family(finitized->languages);
        auto original =
            testutil::minimal_sets(testutil::all_backdoors(item.instance, family, item.k, true));
        auto transformed = testutil::minimal_sets(
            testutil::all_backdoors(finitized->instance, prime_family, item.k, true));
        require(original == transformed,
                "minimal backdoor sets differ at case " + std::to_string(index));
        compared += original.size();
        ++index;
    }
    require(compared > 50, "corpus degenerate: almost no minimal backdoors seen");
}

// criterion 5: the CSP reduction preserves minimal backdoors and no minimal
// backdoor of P'' touches a fresh variable
void criterion_5() {
    LanguageFamily family = builtin_family();
    int index = 0;
    for (const TransformCase& item : transform_corpus()) {
        auto finitized = finitize(item.instance, family, item.k);
        require(finitized.has_value(), "unexpected NO at case " + std::to_string(index));
        CspReduction csp = vcsp_to_csp(*finitized, family, item.k);
        LanguageFamily prime_family(finitized->languages);
        LanguageFamily csp_family(csp.languages);
        auto prime_minimal = testutil::minimal_sets(
            testutil::all_backdoors(finitized->instance, prime_family, item.k, true));
        auto csp_minimal = testutil::minimal_sets(
            testutil::all_backdoors(csp.instance, csp_family, item.k, true));
        require(prime_minimal == csp_minimal,
                "minimal backdoor sets differ at case " + std::to_string(index));
        for (const std::vector<int>& backdoor : csp_minimal)
            for (int v : backdoor)
                require(v < item.instance.num_variables(),
                        "minimal backdoor " + show(backdoor) + " uses fresh variable at case " +
                            std::to_string(index));
        ++index;
    }
}

// criterion 6: the cut-vertex construction behaves as advertised
void criterion_6() {
    LanguageFamily family = builtin_family();
    Rng rng(6006);
    for (int round = 0; round < 10; ++round) {
        std::uint64_t seed = rng.next();
        int n1 = 2 + rng.below(3);
        int n2 = 2 + rng.below(3);
        Instance instance = generate_cut_vertex(seed, n1, n2).instance;
        require(is_backdoor(instance, {0}, family, true),
                "cut variable is not a scattered backdoor, seed " + std::to_string(seed));
        for (std::size_t i = 0; i < family.size(); ++i) {
            LanguageFamily single({family[i]});
            require(!detect_backdoor_exhaustive(instance, 1, single, false).has_value(),
                    "union backdoor into " + family[i].name() + " exists, seed " +
                        std::to_string(seed));
            require(!detect_backdoor_exhaustive(instance, 1, single, true).has_value(),
                    "scattered backdoor into " + family[i].name() + " alone exists, seed " +
                        std::to_string(seed));
        }
        auto outcome = pipeline_solve(instance, family, 1);
        require(outcome.has_value(), "pipeline returned NO, seed " + std::to_string(seed));
        Solution direct = brute_force_solve(instance);
        require(outcome->solution.cost == direct.cost,
                "pipeline cost mismatch, seed " + std::to_string(seed));
    }
}

// criterion 7: built-in languages are closed under partial assignments;
// finite closure is an idempotent fixpoint
void criterion_7() {
    Rng rng(7007);
    Language horn = Language::min_closed_crisp(2);
    Language submodular = Language::submodular_boolean();
    for (int round = 0; round < 1000; ++round) {
        CostFunction h = random_min_closed_function(rng, 1 + rng.below(2), 2);
        CostFunction s = random_submodular_function(rng, 1 + rng.below(2), wide_pool());
        std::map<int, int> bound_h, bound_s;
        for (int pos = 0; pos < h.arity(); ++pos)
            if (rng.chance(1, 2)) bound_h.emplace(pos, rng.below(2));
        for (int pos = 0; pos < s.arity(); ++pos)
            if (rng.chance(1, 2)) bound_s.emplace(pos, rng.below(2));
        require(horn.contains(h.restrict_positions(bound_h)),
                "min_closed restriction escaped at round " + std::to_string(round));
        require(submodular.contains(s.restrict_positions(bound_s)),
                "submodular restriction escaped at round " + std::to_string(round));
    }
    for (int round = 0; round < 50; ++round) {
        std::vector<CostFunction> members;
        int count = 1 + rng.below(3);
        for (int i = 0; i < count; ++i)
            members.push_back(random_cost_function(rng, 1 + rng.below(2), 2, wide_pool()));
        Language once = closure_under_partial_assignments(
            Language::finite_explicit("f", 2, 2, std::move(members)));
        Language twice = closure_under_partial_assignments(once);
        require(once.functions() == twice.functions(),
                "closure not idempotent at round " + std::to_string(round));
    }
}

// criterion 8: a constraint of arity >= q+k+1 forces NO from finitize and
// from the pipeline
void criterion_8() {
    LanguageFamily family = builtin_family();
    int q = family.arity_bound();
    Rng rng(8008);
    for (int k = 0; k <= 2; ++k) {
        int arity = q + k + 1;
        std::vector<int> scope;
        for (int v = 0; v < arity; ++v) scope.push_back(v);
        std::vector<ValuedConstraint> constraints;
        constraints.emplace_back(std::move(scope),
                                 random_cost_function(rng, arity, 2, crisp_pool()));
        Instance instance(arity + 1, 2, std::move(constraints));
        require(!finitize(instance, family, k).has_value(),
                "finitize accepted arity " + std::to_string(arity) + " with k=" + std::to_string(k));
        require(!pipeline_solve(instance, family, k).has_value(),
                "pipeline accepted arity " + std::to_string(arity) + " with k=" + std::to_string(k));
        // one variable fewer in the scope and the gate opens again
        std::vector<int> narrow_scope;
        for (int v = 0; v < arity - 1; ++v) narrow_scope.push_back(v);
        std::vector<ValuedConstraint> narrow;
        narrow.emplace_back(std::move(narrow_scope),
                            random_cost_function(rng, arity - 1, 2, crisp_pool()));
        require(finitize(Instance(arity, 2, std::move(narrow)), family, k).has_value(),
                "gate misfires below the threshold with k=" + std::to_string(k));
    }
}

} // namespace

int main() {
    struct Criterion {
        const char* label;
        std::function<void()> run;
    };
    const std::vector<Criterion> criteria = {
        {"criterion 1: base-class solvers match brute force on 500 instances each", criterion_1},
        {"criterion 2: backdoor exploitation exact on 200 planted instances, d^|X| enumerations",
         criterion_2},
        {"criterion 3: branching vs exhaustive detection on 300 instances, FPT node bound",
         criterion_3},
        {"criterion 4: finitization preserves minimal scattered backdoors (100 instances)",
         criterion_4},
        {"criterion 5: CSP reduction preserves minimal backdoors, fresh variables excluded",
         criterion_5},
        {"criterion 6: cut-vertex reproduction: scattered {x}, no single-class escape, pipeline",
         criterion_6},
        {"criterion 7: closure under partial assignments (1000 members/class), idempotence",
         criterion_7},
        {"criterion 8: arity >= q+k+1 forces NO from finitize and pipeline", criterion_8},
    };

    int failures = 0;
    for (const Criterion& criterion : criteria) {
        try {
            criterion.run();
            std::cout << "PASS " << criterion.label << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "FAIL " << criterion.label << " — " << e.what() << "\n";
        }
        std::cout.flush();
    }
    if (failures) {
        std::cout << failures << " criteria failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
