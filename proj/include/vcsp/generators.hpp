#ifndef VCSP_GENERATORS_HPP
#define VCSP_GENERATORS_HPP

#include "vcsp/io.hpp"

#include <cstdint>

namespace vcsp {

// splitmix64: tiny, stable across platforms, good enough for test corpora.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

    bool chance(int numerator, int denominator) { return below(denominator) < numerator; }

    template <typename T>
    const T& pick(const std::vector<T>& pool) {
        return pool[static_cast<std::size_t>(below(static_cast<int>(pool.size())))];
    }

private:
    std::uint64_t state_;
};

// Random tables. The *_member variants rejection-sample until the family
// recognizer accepts.
CostFunction random_cost_function(Rng& rng, int arity, int domain_size,
                                  const std::vector<Cost>& pool);
CostFunction random_min_closed_function(Rng& rng, int arity, int domain_size);
CostFunction random_submodular_function(Rng& rng, int arity, const std::vector<Cost>& pool);

// Small general-purpose random instance used by the property suites.
Instance random_instance(Rng& rng, int num_variables, int domain_size, int num_constraints,
                         int max_arity, const std::vector<Cost>& pool);

struct GenParams {
    int n = 6;  // variable count for random kinds
    int n1 = 3; // cut_vertex side sizes
    int n2 = 3;
    int m = 4;  // constraint count
    int k = 1;  // planted backdoor size
};

// Deterministic in (kind, seed, params). Every generator machine-checks its
// advertised post-conditions before returning and records them in metadata.
// Kinds: planted_backdoor | cut_vertex | random_scattered | random_submodular
// | random_horn.
InstanceDocument generate(const std::string& kind, std::uint64_t seed, const GenParams& params);

InstanceDocument generate_cut_vertex(std::uint64_t seed, int n1, int n2);
InstanceDocument generate_planted_backdoor(std::uint64_t seed, int n, int k);
InstanceDocument generate_random_scattered(std::uint64_t seed, int components, int component_size);
InstanceDocument generate_random_submodular(std::uint64_t seed, int n, int m);
InstanceDocument generate_random_horn(std::uint64_t seed, int n, int m);

// The family the generators target: {min_closed_crisp, submodular_boolean}
// over the boolean domain.
LanguageFamily builtin_family();

} // namespace vcsp

#endif
