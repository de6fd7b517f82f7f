#include "vcsp/cost_function.hpp"

#include <limits>

namespace vcsp {

std::size_t table_size(int domain_size, int arity) {
    if (domain_size < 1)
        throw Error("table_size: domain size must be >= 1");
    if (arity < 0)
        throw Error("table_size: negative arity");
    std::size_t size = 1;
    for (int i = 0; i < arity; ++i) {
        if (size > std::numeric_limits<std::size_t>::max() / static_cast<std::size_t>(domain_size))
            throw Error("table_size: d^m overflows");
        size *= static_cast<std::size_t>(domain_size);
    }
    return size;
}

std::size_t tuple_to_index(std::span<const int> tuple, int domain_size) {
    std::size_t index = 0;
    for (int v : tuple) {
        if (v < 0 || v >= domain_size)
            throw Error("tuple_to_index: value out of domain range");
        index = index * static_cast<std::size_t>(domain_size) + static_cast<std::size_t>(v);
    }
    return index;
}

std::vector<int> index_to_tuple(std::size_t index, int domain_size, int arity) {
    std::vector<int> tuple(static_cast<std::size_t>(arity));
    for (int i = arity - 1; i >= 0; --i) {
        tuple[static_cast<std::size_t>(i)] = static_cast<int>(index % static_cast<std::size_t>(domain_size));
        index /= static_cast<std::size_t>(domain_size);
    }
    return tuple;
}

CostFunction::CostFunction(int arity, int domain_size, std::vector<Cost> table)
    : arity_(arity), domain_size_(domain_size), table_(std::move(table)) {
    if (table_.size() != table_size(domain_size, arity))
        throw Error("CostFunction: table length " + std::to_string(table_.size()) +
                    ", expected d^m = " + std::to_string(table_size(domain_size, arity)));
}

CostFunction CostFunction::constant(int domain_size, Cost value) {
    return CostFunction(0, domain_size, {std::move(value)});
}

bool CostFunction::is_crisp() const {
    for (const Cost& c : table_)
        if (!c.is_zero() && !c.is_infinite()) return false;
    return true;
}

CostFunction CostFunction::restrict_positions(const std::map<int, int>& bound) const {
    for (const auto& [pos, value] : bound) {
        if (pos < 0 || pos >= arity_)
            throw Error("restrict_positions: position out of range");
        if (value < 0 || value >= domain_size_)
            throw Error("restrict_positions: value out of domain range");
    }
    int new_arity = arity_ - static_cast<int>(bound.size());
    std::vector<Cost> new_table;
    new_table.reserve(table_size(domain_size_, new_arity));
    std::vector<int> full(static_cast<std::size_t>(arity_));
    std::size_t rows = table_size(domain_size_, new_arity);
    for (std::size_t row = 0; row < rows; ++row) {
        std::vector<int> partial = index_to_tuple(row, domain_size_, new_arity);
        std::size_t next = 0;
        for (int i = 0; i < arity_; ++i) {
            auto it = bound.find(i);
            full[static_cast<std::size_t>(i)] = (it != bound.end()) ? it->second : partial[next++];
        }
        new_table.push_back(table_[tuple_to_index(full, domain_size_)]);
    }
    return CostFunction(new_arity, domain_size_, std::move(new_table));
}

std::size_t CostFunction::hash() const {
    std::size_t seed = static_cast<std::size_t>(arity_) * 1000003u + static_cast<std::size_t>(domain_size_);
    for (const Cost& c : table_)
        seed ^= c.hash() + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    return seed;
}

bool operator<(const CostFunction& a, const CostFunction& b) {
    if (a.arity_ != b.arity_) return a.arity_ < b.arity_;
    if (a.domain_size_ != b.domain_size_) return a.domain_size_ < b.domain_size_;
    for (std::size_t i = 0; i < a.table_.size(); ++i) {
        auto cmp = a.table_[i] <=> b.table_[i];
        if (cmp != 0) return cmp < 0;
    }
    return false;
}

} // namespace vcsp
