#include "vcsp/solvers.hpp"

#include <algorithm>
#include <deque>
#include <utility>

namespace vcsp {

Cost evaluate_tuple(const Instance& instance, std::span<const int> values) {
    Cost total;
    std::vector<int> tuple;
    for (const ValuedConstraint& c : instance.constraints()) {
        tuple.clear();
        for (int v : c.scope) tuple.push_back(values[static_cast<std::size_t>(v)]);
        total += c.function(tuple);
    }
    return total;
}

namespace {

PartialAssignment to_assignment(std::span<const int> values) {
    std::map<int, int> m;
    for (std::size_t v = 0; v < values.size(); ++v) m.emplace(static_cast<int>(v), values[v]);
    return PartialAssignment(std::move(m));
}

// When the optimum is infinite every assignment ties, and the lexicographic
// tie-break selects all zeros.
Solution finalize_solution(const Instance& instance, std::vector<int> values) {
    Cost cost = evaluate_tuple(instance, values);
    if (cost.is_infinite()) {
        std::fill(values.begin(), values.end(), 0);
        cost = evaluate_tuple(instance, values);
    }
    return Solution{to_assignment(values), cost};
}

} // namespace

Solution brute_force_solve(const Instance& instance, std::size_t budget) {
    int n = instance.num_variables();
    int d = instance.domain_size();
    std::size_t count = 1;
    for (int i = 0; i < n; ++i) {
        if (count > budget / static_cast<std::size_t>(d))
            throw BudgetExceeded("brute_force_solve: d^n = " + std::to_string(d) + "^" +
                                 std::to_string(n) + " exceeds budget " + std::to_string(budget));
        count *= static_cast<std::size_t>(d);
    }
    std::vector<int> values(static_cast<std::size_t>(n), 0);
    std::vector<int> best = values;
    Cost best_cost = evaluate_tuple(instance, values);
    for (std::size_t row = 1; row < count; ++row) {
        values = index_to_tuple(row, d, n);
        Cost c = evaluate_tuple(instance, values);
        if (c < best_cost) { // strict: lexicographically first optimum wins
            best_cost = c;
            best = values;
        }
    }
    return Solution{to_assignment(best), best_cost};
}

Solution solve_min_closed(const Instance& instance) {
    for (std::size_t i = 0; i < instance.constraints().size(); ++i)
        if (!is_min_closed_crisp_function(instance.constraints()[i].function) &&
            instance.constraints()[i].function.arity() > 0)
            throw Error("solve_min_closed: constraint " + std::to_string(i) +
                        " is not a min-closed crisp function");

    int n = instance.num_variables();
    int d = instance.domain_size();
    std::vector<std::vector<bool>> domain(static_cast<std::size_t>(n),
                                          std::vector<bool>(static_cast<std::size_t>(d), true));
    auto infeasible_solution = [&]() {
        return finalize_solution(instance, std::vector<int>(static_cast<std::size_t>(n), 0));
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const ValuedConstraint& c : instance.constraints()) {
            if (c.scope.empty()) continue;
            std::vector<int> vars = c.variables();
            // supported[var][value]: some finite row realizable under the
            // current domains assigns value to every occurrence of var.
            std::map<int, std::vector<bool>> supported;
            for (int v : vars) supported[v] = std::vector<bool>(static_cast<std::size_t>(d), false);
            std::size_t rows = c.function.table().size();
            for (std::size_t row = 0; row < rows; ++row) {
                if (c.function.at_index(row).is_infinite()) continue;
                std::vector<int> tuple = index_to_tuple(row, d, c.function.arity());
                std::map<int, int> value_of;
                bool realizable = true;
                for (std::size_t i = 0; i < c.scope.size() && realizable; ++i) {
                    int var = c.scope[i];
                    int val = tuple[i];
                    if (!domain[static_cast<std::size_t>(var)][static_cast<std::size_t>(val)]) {
                        realizable = false;
                        break;
                    }
                    auto [it, inserted] = value_of.emplace(var, val);
                    if (!inserted && it->second != val) realizable = false;
                }
                if (!realizable) continue;
                for (const auto& [var, val] : value_of)
                    supported[var][static_cast<std::size_t>(val)] = true;
            }
            for (int v : vars) {
                for (int val = 0; val < d; ++val) {
                    if (domain[static_cast<std::size_t>(v)][static_cast<std::size_t>(val)] &&
                        !supported[v][static_cast<std::size_t>(val)]) {
                        domain[static_cast<std::size_t>(v)][static_cast<std::size_t>(val)] = false;
                        changed = true;
                    }
                }
            }
        }
    }

    std::vector<int> values(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        int min_val = -1;
        for (int val = 0; val < d; ++val)
            if (domain[static_cast<std::size_t>(v)][static_cast<std::size_t>(val)]) {
                min_val = val;
                break;
            }
        if (min_val < 0) return infeasible_solution();
        values[static_cast<std::size_t>(v)] = min_val;
    }
    return finalize_solution(instance, std::move(values));
}

namespace {

// Signed exact value extended with +infinity; only used while assembling the
// cut network, where finite differences of table entries occur.
struct Ext {
    bool inf = false;
    Rational v = 0;

    static Ext infinite() { return Ext{true, 0}; }
    static Ext of(const Cost& c) { return c.is_infinite() ? infinite() : Ext{false, c.value()}; }

    Ext& operator+=(const Ext& o) {
        if (o.inf) inf = true;
        if (!inf) v += o.v;
        return *this;
    }
};

Ext ext_min(const Ext& a, const Ext& b) {
    if (a.inf) return b;
    if (b.inf) return a;
    return a.v <= b.v ? a : b;
}

// a - b for b finite and a >= b; infinity stays infinity.
Cost ext_sub(const Ext& a, const Ext& b) {
    if (a.inf) return Cost::infinity();
    return Cost(Rational(a.v - b.v));
}

struct FlowEdge {
    int to;
    Cost cap;
    std::size_t rev;
};

class FlowNetwork {
public:
    explicit FlowNetwork(int nodes) : adj_(static_cast<std::size_t>(nodes)) {}

    void add_edge(int from, int to, Cost cap) {
        if (cap.is_zero()) return;
        adj_[static_cast<std::size_t>(from)].push_back({to, cap, adj_[static_cast<std::size_t>(to)].size()});
        adj_[static_cast<std::size_t>(to)].push_back({from, Cost::zero(), adj_[static_cast<std::size_t>(from)].size() - 1});
    }

    // Edmonds-Karp. Returns false if an all-infinite augmenting path exists,
    // i.e. the minimum cut is infinite.
    bool max_flow(int s, int t) {
        for (;;) {
            std::vector<std::pair<int, std::size_t>> pred(adj_.size(), {-1, 0});
            std::deque<int> queue{s};
            pred[static_cast<std::size_t>(s)] = {s, 0};
            while (!queue.empty() && pred[static_cast<std::size_t>(t)].first < 0) {
                int u = queue.front();
                queue.pop_front();
                for (std::size_t e = 0; e < adj_[static_cast<std::size_t>(u)].size(); ++e) {
                    const FlowEdge& edge = adj_[static_cast<std::size_t>(u)][e];
                    if (edge.cap.is_zero() || pred[static_cast<std::size_t>(edge.to)].first >= 0)
                        continue;
                    pred[static_cast<std::size_t>(edge.to)] = {u, e};
                    queue.push_back(edge.to);
                }
            }
            if (pred[static_cast<std::size_t>(t)].first < 0) return true; // no augmenting path
            Cost bottleneck = Cost::infinity();
            for (int v = t; v != s;) {
                auto [u, e] = pred[static_cast<std::size_t>(v)];
                bottleneck = std::min(bottleneck, adj_[static_cast<std::size_t>(u)][e].cap);
                v = u;
            }
            if (bottleneck.is_infinite()) return false;
            for (int v = t; v != s;) {
                auto [u, e] = pred[static_cast<std::size_t>(v)];
                FlowEdge& fwd = adj_[static_cast<std::size_t>(u)][e];
                FlowEdge& bwd = adj_[static_cast<std::size_t>(fwd.to)][fwd.rev];
                if (fwd.cap.is_finite()) fwd.cap = Cost(Rational(fwd.cap.value() - bottleneck.value()));
                bwd.cap += bottleneck;
                v = u;
            }
        }
    }

    // Nodes with a residual path to t. Their complement is the maximal
    // source side among minimum cuts, which yields the coordinatewise (and
    // hence lexicographically) smallest optimal assignment.
    std::vector<bool> reaches_sink(int t) const {
        std::vector<std::vector<int>> rev_adj(adj_.size());
        for (std::size_t u = 0; u < adj_.size(); ++u)
            for (const FlowEdge& e : adj_[u])
                if (!e.cap.is_zero()) rev_adj[static_cast<std::size_t>(e.to)].push_back(static_cast<int>(u));
        std::vector<bool> reach(adj_.size(), false);
        std::deque<int> queue{t};
        reach[static_cast<std::size_t>(t)] = true;
        while (!queue.empty()) {
            int w = queue.front();
            queue.pop_front();
            for (int u : rev_adj[static_cast<std::size_t>(w)]) {
                if (!reach[static_cast<std::size_t>(u)]) {
                    reach[static_cast<std::size_t>(u)] = true;
                    queue.push_back(u);
                }
            }
        }
        return reach;
    }

private:
    std::vector<std::vector<FlowEdge>> adj_;
};

} // namespace

Solution solve_submodular_boolean(const Instance& instance) {
    if (instance.domain_size() != 2)
        throw Error("solve_submodular_boolean: domain size must be 2");
    for (std::size_t i = 0; i < instance.constraints().size(); ++i) {
        const ValuedConstraint& c = instance.constraints()[i];
        if (c.function.arity() > 2)
            throw Error("solve_submodular_boolean: constraint " + std::to_string(i) +
                        " has arity " + std::to_string(c.function.arity()) + " > 2");
        if (!is_submodular_boolean_function(c.function))
            throw Error("solve_submodular_boolean: constraint " + std::to_string(i) +
                        " is not submodular");
    }

    int n = instance.num_variables();
    auto all_infinite_solution = [&]() {
        return finalize_solution(instance, std::vector<int>(static_cast<std::size_t>(n), 0));
    };

    // Per-variable unary accumulators (cost of value 0 / value 1) and
    // pairwise cut weights; the posiform constant is tracked but the final
    // cost is recomputed by evaluation.
    std::vector<Ext> unary0(static_cast<std::size_t>(n));
    std::vector<Ext> unary1(static_cast<std::size_t>(n));
    std::map<std::pair<int, int>, Cost> pair_weight; // (from,to) -> capacity

    auto add_pair = [&](int from, int to, const Cost& w) {
        if (w.is_zero()) return;
        auto [it, inserted] = pair_weight.emplace(std::make_pair(from, to), w);
        if (!inserted) it->second += w;
    };

    for (const ValuedConstraint& c : instance.constraints()) {
        const CostFunction& f = c.function;
        if (f.arity() == 0) continue; // constants never affect the argmin
        if (f.arity() == 1) {
            unary0[static_cast<std::size_t>(c.scope[0])] += Ext::of(f.at_index(0));
            unary1[static_cast<std::size_t>(c.scope[0])] += Ext::of(f.at_index(1));
            continue;
        }
        const Cost& a = f.at_index(0); // (0,0)
        const Cost& b = f.at_index(1); // (0,1)
        const Cost& cc = f.at_index(2); // (1,0)
        const Cost& dd = f.at_index(3); // (1,1)
        int x = c.scope[0];
        int y = c.scope[1];
        if (x == y) { // only the diagonal is realizable
            unary0[static_cast<std::size_t>(x)] += Ext::of(a);
            unary1[static_cast<std::size_t>(x)] += Ext::of(dd);
            continue;
        }
        int inf_mask = (a.is_infinite() ? 1 : 0) | (b.is_infinite() ? 2 : 0) |
                       (cc.is_infinite() ? 4 : 0) | (dd.is_infinite() ? 8 : 0);
        switch (inf_mask) {
        case 0:   // all finite
        case 2: { // only (0,1) infinite: pairwise weight absorbs it
            Ext ca = Ext::of(cc);
            ca += Ext{false, -a.value()};
            unary1[static_cast<std::size_t>(x)] += ca;
            Ext dc = Ext::of(dd);
            dc += Ext{false, -cc.value()};
            unary1[static_cast<std::size_t>(y)] += dc;
            if (b.is_infinite())
                add_pair(x, y, Cost::infinity());
            else
                add_pair(x, y, Cost(Rational(b.value() + cc.value() - a.value() - dd.value())));
            break;
        }
        case 4: { // only (1,0) infinite: mirrored split, weight on y->x
            Ext db = Ext::of(dd);
            db += Ext{false, -b.value()};
            unary1[static_cast<std::size_t>(x)] += db;
            Ext ba = Ext::of(b);
            ba += Ext{false, -a.value()};
            unary1[static_cast<std::size_t>(y)] += ba;
            add_pair(y, x, Cost::infinity());
            break;
        }
        case 6: { // (0,1) and (1,0) infinite: equality constraint
            Ext da = Ext::of(dd);
            da += Ext{false, -a.value()};
            unary1[static_cast<std::size_t>(y)] += da;
            add_pair(x, y, Cost::infinity());
            add_pair(y, x, Cost::infinity());
            break;
        }
        case 3: // x forced to 1
            unary0[static_cast<std::size_t>(x)] = Ext::infinite();
            unary0[static_cast<std::size_t>(y)] += Ext::of(cc);
            unary1[static_cast<std::size_t>(y)] += Ext::of(dd);
            break;
        case 12: // x forced to 0
            unary1[static_cast<std::size_t>(x)] = Ext::infinite();
            unary0[static_cast<std::size_t>(y)] += Ext::of(a);
            unary1[static_cast<std::size_t>(y)] += Ext::of(b);
            break;
        case 5: // y forced to 1
            unary0[static_cast<std::size_t>(y)] = Ext::infinite();
            unary0[static_cast<std::size_t>(x)] += Ext::of(b);
            unary1[static_cast<std::size_t>(x)] += Ext::of(dd);
            break;
        case 10: // y forced to 0
            unary1[static_cast<std::size_t>(y)] = Ext::infinite();
            unary0[static_cast<std::size_t>(x)] += Ext::of(a);
            unary1[static_cast<std::size_t>(x)] += Ext::of(cc);
            break;
        case 7: // single finite tuple (1,1)
            unary0[static_cast<std::size_t>(x)] = Ext::infinite();
            unary0[static_cast<std::size_t>(y)] = Ext::infinite();
            break;
        case 11: // single finite tuple (1,0)
            unary0[static_cast<std::size_t>(x)] = Ext::infinite();
            unary1[static_cast<std::size_t>(y)] = Ext::infinite();
            break;
        case 13: // single finite tuple (0,1)
            unary1[static_cast<std::size_t>(x)] = Ext::infinite();
            unary0[static_cast<std::size_t>(y)] = Ext::infinite();
            break;
        case 14: // single finite tuple (0,0)
            unary1[static_cast<std::size_t>(x)] = Ext::infinite();
            unary1[static_cast<std::size_t>(y)] = Ext::infinite();
            break;
        case 15: // no finite tuple
            return all_infinite_solution();
        default:
            // {A}, {D}, {A,D} cannot pass the recognizer
            throw Error("solve_submodular_boolean: internal: non-submodular infinity pattern");
        }
    }

    // Normalize unaries to nonnegative capacities; a variable with both
    // values infinite makes every assignment infinite.
    int source = n;
    int sink = n + 1;
    FlowNetwork net(n + 2);
    for (int v = 0; v < n; ++v) {
        Ext shift = ext_min(unary0[static_cast<std::size_t>(v)], unary1[static_cast<std::size_t>(v)]);
        if (shift.inf) return all_infinite_solution();
        net.add_edge(v, sink, ext_sub(unary0[static_cast<std::size_t>(v)], shift));
        net.add_edge(source, v, ext_sub(unary1[static_cast<std::size_t>(v)], shift));
    }
    for (const auto& [edge, w] : pair_weight) net.add_edge(edge.first, edge.second, w);

    if (!net.max_flow(source, sink)) return all_infinite_solution();

    std::vector<bool> reach = net.reaches_sink(sink);
    std::vector<int> values(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) values[static_cast<std::size_t>(v)] = reach[static_cast<std::size_t>(v)] ? 1 : 0;
    return finalize_solution(instance, std::move(values));
}

const SolverRegistry& SolverRegistry::builtins() {
    static const SolverRegistry registry = [] {
        SolverRegistry r;
        r.register_solver("min_closed_crisp", [](const Instance& p) { return solve_min_closed(p); });
        r.register_solver("submodular_boolean",
                          [](const Instance& p) { return solve_submodular_boolean(p); });
        return r;
    }();
    return registry;
}

void SolverRegistry::register_solver(std::string language_name, ComponentSolver solver) {
    solvers_[std::move(language_name)] = std::move(solver);
}

const SolverRegistry::ComponentSolver* SolverRegistry::find(const std::string& language_name) const {
    auto it = solvers_.find(language_name);
    return it == solvers_.end() ? nullptr : &it->second;
}

Solution solve_scattered(const Instance& instance, const LanguageFamily& family,
                         const SolverRegistry& registry) {
    if (family.domain_size() != instance.domain_size())
        throw Error("solve_scattered: family domain size mismatch");
    ComponentDecomposition decomposition = connected_components(instance);
    std::vector<int> values(static_cast<std::size_t>(instance.num_variables()), 0);
    for (const Component& component : decomposition.components) {
        if (component.constraint_indices.empty()) continue; // isolated: keep zeros
        Instance sub = component_instance(instance, component);
        std::size_t chosen = family.size();
        for (std::size_t i = 0; i < family.size(); ++i) {
            if (instance_in_language(sub, family[i])) {
                chosen = i;
                break;
            }
        }
        if (chosen == family.size()) {
            std::string vars;
            for (int v : component.variables) vars += (vars.empty() ? "" : ",") + std::to_string(v);
            throw Error("solve_scattered: component {" + vars + "} is in no family language");
        }
        const auto* solver = registry.find(family[chosen].name());
        if (!solver)
            throw Error("solve_scattered: no registered solver for language '" +
                        family[chosen].name() + "'");
        Solution sub_solution = (*solver)(sub);
        for (std::size_t i = 0; i < component.variables.size(); ++i)
            values[static_cast<std::size_t>(component.variables[i])] =
                sub_solution.assignment.value_of(static_cast<int>(i));
    }
    return finalize_solution(instance, std::move(values));
}

} // namespace vcsp
