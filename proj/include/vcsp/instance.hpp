#ifndef VCSP_INSTANCE_HPP
#define VCSP_INSTANCE_HPP

#include "vcsp/cost_function.hpp"

#include <map>
#include <set>
#include <vector>

namespace vcsp {

// A mapping from a subset of the variables to domain values.
class PartialAssignment {
public:
    PartialAssignment() = default;
    explicit PartialAssignment(std::map<int, int> bindings) : bindings_(std::move(bindings)) {}

    void bind(int variable, int value) { bindings_[variable] = value; }
    bool binds(int variable) const { return bindings_.count(variable) != 0; }
    int value_of(int variable) const;
    std::size_t size() const { return bindings_.size(); }
    bool empty() const { return bindings_.empty(); }
    const std::map<int, int>& bindings() const { return bindings_; }

    // Union of two assignments with disjoint (or agreeing) supports.
    static PartialAssignment merged(const PartialAssignment& a, const PartialAssignment& b);

    friend bool operator==(const PartialAssignment&, const PartialAssignment&) = default;

private:
    std::map<int, int> bindings_;
};

// A scope (repeats permitted) paired with a cost function of matching arity.
struct ValuedConstraint {
    std::vector<int> scope;
    CostFunction function;

    ValuedConstraint(std::vector<int> scope_in, CostFunction function_in);

    // Distinct variables of the scope, ascending.
    std::vector<int> variables() const;

    friend bool operator==(const ValuedConstraint&, const ValuedConstraint&) = default;
};

// A VCSP instance: variables 0..n-1 over domain {0..d-1} and an ordered
// multiset of valued constraints. Immutable after construction.
class Instance {
public:
    Instance(int num_variables, int domain_size, std::vector<ValuedConstraint> constraints = {});

    int num_variables() const { return num_variables_; }
    int domain_size() const { return domain_size_; }
    const std::vector<ValuedConstraint>& constraints() const { return constraints_; }

    friend bool operator==(const Instance&, const Instance&) = default;

private:
    int num_variables_;
    int domain_size_;
    std::vector<ValuedConstraint> constraints_;
};

// Total cost of a total assignment: sum over constraints of phi(tau(scope)).
// Throws if some variable is unbound.
Cost evaluate(const Instance& instance, const PartialAssignment& assignment);

// Applies tau to every constraint (pruning each table independently) and
// drops the bound variables. Remaining variables are renumbered order
// preservingly; kept_variables, when non-null, receives old index per new
// index. Fully assigned constraints become nullary constants.
Instance apply_assignment(const Instance& instance, const PartialAssignment& tau,
                          std::vector<int>* kept_variables = nullptr);

struct Component {
    std::vector<int> variables;               // ascending
    std::vector<std::size_t> constraint_indices; // ascending
};

struct ComponentDecomposition {
    std::vector<Component> components;          // ordered by smallest variable
    std::vector<std::size_t> nullary_constraints; // join no component
};

// Maximal groups of variables connected by co-occurrence in a scope.
// Isolated variables form singleton components with no constraints.
ComponentDecomposition connected_components(const Instance& instance);

// Sub-instance induced by a component: variables renumbered by ascending
// original index (component.variables[i] -> i).
Instance component_instance(const Instance& instance, const Component& component);

} // namespace vcsp

#endif
