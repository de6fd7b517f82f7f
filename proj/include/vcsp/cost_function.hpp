#ifndef VCSP_COST_FUNCTION_HPP
#define VCSP_COST_FUNCTION_HPP

#include "vcsp/cost.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace vcsp {

// Row index of a tuple in a dense cost table. The first coordinate is the
// most significant digit: index = sum a_i * d^(m-1-i).
std::size_t tuple_to_index(std::span<const int> tuple, int domain_size);
std::vector<int> index_to_tuple(std::size_t index, int domain_size, int arity);
std::size_t table_size(int domain_size, int arity);

// An arity-m cost function over domain {0..d-1}, stored as a dense table of
// d^m costs. Crispness (range {0, inf}) is derived from the entries.
class CostFunction {
public:
    CostFunction(int arity, int domain_size, std::vector<Cost> table);

    // Constant function of arity 0.
    static CostFunction constant(int domain_size, Cost value);

    int arity() const { return arity_; }
    int domain_size() const { return domain_size_; }
    const std::vector<Cost>& table() const { return table_; }

    const Cost& operator()(std::span<const int> tuple) const {
        return table_[tuple_to_index(tuple, domain_size_)];
    }
    const Cost& operator()(std::initializer_list<int> tuple) const {
        return (*this)(std::span<const int>(tuple.begin(), tuple.size()));
    }
    const Cost& at_index(std::size_t row) const { return table_[row]; }

    bool is_crisp() const;

    // Fixes the given coordinate positions to values and returns the cost
    // function on the remaining coordinates, in their original order.
    CostFunction restrict_positions(const std::map<int, int>& bound) const;

    friend bool operator==(const CostFunction& a, const CostFunction& b) {
        return a.arity_ == b.arity_ && a.domain_size_ == b.domain_size_ && a.table_ == b.table_;
    }

    std::size_t hash() const;

    // Lexicographic order on (arity, domain_size, table); gives languages a
    // canonical serialization order.
    friend bool operator<(const CostFunction& a, const CostFunction& b);

private:
    int arity_;
    int domain_size_;
    std::vector<Cost> table_;
};

struct CostFunctionHash {
    std::size_t operator()(const CostFunction& f) const { return f.hash(); }
};

} // namespace vcsp

#endif
