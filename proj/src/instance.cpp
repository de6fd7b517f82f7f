#include "vcsp/instance.hpp"

#include <algorithm>
#include <numeric>

namespace vcsp {

int PartialAssignment::value_of(int variable) const {
    auto it = bindings_.find(variable);
    if (it == bindings_.end())
        throw Error("assignment does not bind variable " + std::to_string(variable));
    return it->second;
}

PartialAssignment PartialAssignment::merged(const PartialAssignment& a, const PartialAssignment& b) {
    std::map<int, int> m = a.bindings_;
    for (const auto& [var, val] : b.bindings_) {
        auto [it, inserted] = m.emplace(var, val);
        if (!inserted && it->second != val)
            throw Error("merged: conflicting bindings for variable " + std::to_string(var));
    }
    return PartialAssignment(std::move(m));
}

ValuedConstraint::ValuedConstraint(std::vector<int> scope_in, CostFunction function_in)
    : scope(std::move(scope_in)), function(std::move(function_in)) {
    if (static_cast<int>(scope.size()) != function.arity())
        throw Error("constraint scope length " + std::to_string(scope.size()) +
                    " does not match function arity " + std::to_string(function.arity()));
}

std::vector<int> ValuedConstraint::variables() const {
    std::set<int> vars(scope.begin(), scope.end());
    return {vars.begin(), vars.end()};
}

Instance::Instance(int num_variables, int domain_size, std::vector<ValuedConstraint> constraints)
    : num_variables_(num_variables), domain_size_(domain_size), constraints_(std::move(constraints)) {
    if (num_variables_ < 0)
        throw Error("Instance: negative variable count");
    if (domain_size_ < 1)
        throw Error("Instance: domain size must be >= 1");
    for (std::size_t i = 0; i < constraints_.size(); ++i) {
        const ValuedConstraint& c = constraints_[i];
        if (c.function.domain_size() != domain_size_)
            throw Error("constraint " + std::to_string(i) + ": domain size mismatch");
        for (int v : c.scope)
            if (v < 0 || v >= num_variables_)
                throw Error("constraint " + std::to_string(i) + ": scope variable " +
                            std::to_string(v) + " out of range");
    }
}

Cost evaluate(const Instance& instance, const PartialAssignment& assignment) {
    for (int v = 0; v < instance.num_variables(); ++v)
        if (!assignment.binds(v))
            throw Error("evaluate: assignment is not total, variable " + std::to_string(v) +
                        " unbound");
    Cost total;
    std::vector<int> tuple;
    for (const ValuedConstraint& c : instance.constraints()) {
        tuple.clear();
        for (int v : c.scope) tuple.push_back(assignment.value_of(v));
        total += c.function(tuple);
    }
    return total;
}

Instance apply_assignment(const Instance& instance, const PartialAssignment& tau,
                          std::vector<int>* kept_variables) {
    for (const auto& [var, val] : tau.bindings()) {
        if (var < 0 || var >= instance.num_variables())
            throw Error("apply_assignment: variable " + std::to_string(var) + " out of range");
        if (val < 0 || val >= instance.domain_size())
            throw Error("apply_assignment: value " + std::to_string(val) + " out of domain range");
    }
    // Order-preserving renumbering of V \ V'.
    std::vector<int> new_index(static_cast<std::size_t>(instance.num_variables()), -1);
    std::vector<int> kept;
    for (int v = 0; v < instance.num_variables(); ++v) {
        if (!tau.binds(v)) {
            new_index[static_cast<std::size_t>(v)] = static_cast<int>(kept.size());
            kept.push_back(v);
        }
    }
    std::vector<ValuedConstraint> reduced;
    reduced.reserve(instance.constraints().size());
    for (const ValuedConstraint& c : instance.constraints()) {
        std::map<int, int> bound_positions;
        std::vector<int> new_scope;
        for (std::size_t i = 0; i < c.scope.size(); ++i) {
            int var = c.scope[i];
            if (tau.binds(var))
                bound_positions.emplace(static_cast<int>(i), tau.value_of(var));
            else
                new_scope.push_back(new_index[static_cast<std::size_t>(var)]);
        }
        reduced.emplace_back(std::move(new_scope), c.function.restrict_positions(bound_positions));
    }
    if (kept_variables) *kept_variables = kept;
    return Instance(static_cast<int>(kept.size()), instance.domain_size(), std::move(reduced));
}

ComponentDecomposition connected_components(const Instance& instance) {
    int n = instance.num_variables();
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    };

    ComponentDecomposition result;
    for (std::size_t i = 0; i < instance.constraints().size(); ++i) {
        const auto& scope = instance.constraints()[i].scope;
        if (scope.empty()) {
            result.nullary_constraints.push_back(i);
            continue;
        }
        for (std::size_t j = 1; j < scope.size(); ++j) unite(scope[0], scope[j]);
    }

    std::map<int, Component> by_root;
    for (int v = 0; v < n; ++v) by_root[find(v)].variables.push_back(v);
    for (std::size_t i = 0; i < instance.constraints().size(); ++i) {
        const auto& scope = instance.constraints()[i].scope;
        if (!scope.empty()) by_root[find(scope[0])].constraint_indices.push_back(i);
    }
    for (auto& [root, comp] : by_root) result.components.push_back(std::move(comp));
    return result;
}

Instance component_instance(const Instance& instance, const Component& component) {
    std::map<int, int> local;
    for (std::size_t i = 0; i < component.variables.size(); ++i)
        local.emplace(component.variables[i], static_cast<int>(i));
    std::vector<ValuedConstraint> constraints;
    constraints.reserve(component.constraint_indices.size());
    for (std::size_t idx : component.constraint_indices) {
        const ValuedConstraint& c = instance.constraints()[idx];
        std::vector<int> scope;
        scope.reserve(c.scope.size());
        for (int v : c.scope) scope.push_back(local.at(v));
        constraints.emplace_back(std::move(scope), c.function);
    }
    return Instance(static_cast<int>(component.variables.size()), instance.domain_size(),
                    std::move(constraints));
}

} // namespace vcsp
