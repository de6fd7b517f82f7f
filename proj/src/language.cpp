#include "vcsp/language.hpp"

#include <algorithm>
#include <deque>

namespace vcsp {

Language::Language(std::string name, LanguageKind kind, int domain_size, int arity_bound,
                   bool conservative, bool closed, std::vector<CostFunction> functions)
    : name_(std::move(name)),
      kind_(kind),
      domain_size_(domain_size),
      arity_bound_(arity_bound),
      conservative_(conservative),
      closed_(closed),
      functions_(std::move(functions)) {
    if (domain_size_ < 1)
        throw Error("Language: domain size must be >= 1");
    if (arity_bound_ < 0)
        throw Error("Language: negative arity bound");
    for (const CostFunction& f : functions_) {
        if (f.domain_size() != domain_size_)
            throw Error("Language '" + name_ + "': member domain size mismatch");
        if (f.arity() > arity_bound_)
            throw Error("Language '" + name_ + "': member arity exceeds bound");
    }
    member_set_.insert(functions_.begin(), functions_.end());
}

Language Language::finite_explicit(std::string name, int domain_size, int arity_bound,
                                   std::vector<CostFunction> functions,
                                   bool declared_conservative, bool declared_closed) {
    // Deduplicate by table equality, then keep a canonical order.
    std::unordered_set<CostFunction, CostFunctionHash> seen;
    std::vector<CostFunction> unique;
    for (CostFunction& f : functions)
        if (seen.insert(f).second) unique.push_back(std::move(f));
    std::sort(unique.begin(), unique.end());
    return Language(std::move(name), LanguageKind::FiniteExplicit, domain_size, arity_bound,
                    declared_conservative, declared_closed, std::move(unique));
}

Language Language::min_closed_crisp(int domain_size, int arity_bound, std::string name) {
    return Language(std::move(name), LanguageKind::MinClosedCrisp, domain_size, arity_bound,
                    /*conservative=*/true, /*closed=*/true, {});
}

Language Language::submodular_boolean(int arity_bound, std::string name) {
    return Language(std::move(name), LanguageKind::SubmodularBoolean, 2, arity_bound,
                    /*conservative=*/true, /*closed=*/true, {});
}

bool is_min_closed_crisp_function(const CostFunction& f) {
    if (!f.is_crisp()) return false;
    std::size_t rows = f.table().size();
    std::vector<std::size_t> finite_rows;
    for (std::size_t r = 0; r < rows; ++r)
        if (f.at_index(r).is_finite()) finite_rows.push_back(r);
    std::vector<int> meet(static_cast<std::size_t>(f.arity()));
    for (std::size_t a : finite_rows) {
        std::vector<int> s = index_to_tuple(a, f.domain_size(), f.arity());
        for (std::size_t b : finite_rows) {
            std::vector<int> t = index_to_tuple(b, f.domain_size(), f.arity());
            for (std::size_t i = 0; i < s.size(); ++i) meet[i] = std::min(s[i], t[i]);
            if (f(meet).is_infinite()) return false;
        }
    }
    return true;
}

bool is_submodular_boolean_function(const CostFunction& f) {
    if (f.domain_size() != 2) return false;
    std::size_t rows = f.table().size();
    std::vector<int> meet(static_cast<std::size_t>(f.arity()));
    std::vector<int> join(static_cast<std::size_t>(f.arity()));
    for (std::size_t a = 0; a < rows; ++a) {
        std::vector<int> s = index_to_tuple(a, 2, f.arity());
        for (std::size_t b = a + 1; b < rows; ++b) {
            std::vector<int> t = index_to_tuple(b, 2, f.arity());
            for (std::size_t i = 0; i < s.size(); ++i) {
                meet[i] = std::min(s[i], t[i]);
                join[i] = std::max(s[i], t[i]);
            }
            if (f(meet) + f(join) > f.at_index(a) + f.at_index(b)) return false;
        }
    }
    return true;
}

bool Language::contains(const CostFunction& f) const {
    if (f.domain_size() != domain_size_)
        throw Error("Language '" + name_ + "': membership query with domain size " +
                    std::to_string(f.domain_size()) + ", language has " +
                    std::to_string(domain_size_));
    if (f.arity() == 0) return true; // every language contains all nullary functions
    if (f.arity() > arity_bound_) return false;
    switch (kind_) {
    case LanguageKind::FiniteExplicit:
        return member_set_.count(f) != 0;
    case LanguageKind::MinClosedCrisp:
        return is_min_closed_crisp_function(f);
    case LanguageKind::SubmodularBoolean:
        return is_submodular_boolean_function(f);
    }
    return false;
}

bool operator==(const Language& a, const Language& b) {
    return a.name_ == b.name_ && a.kind_ == b.kind_ && a.domain_size_ == b.domain_size_ &&
           a.arity_bound_ == b.arity_bound_ && a.functions_ == b.functions_;
}

Language closure_under_partial_assignments(const Language& language) {
    if (language.kind() != LanguageKind::FiniteExplicit)
        throw Error("closure_under_partial_assignments: language '" + language.name() +
                    "' is not finite_explicit");
    int d = language.domain_size();
    std::unordered_set<CostFunction, CostFunctionHash> seen;
    std::deque<CostFunction> queue;
    for (const CostFunction& f : language.functions())
        if (seen.insert(f).second) queue.push_back(f);
    std::vector<CostFunction> members(queue.begin(), queue.end());
    while (!queue.empty()) {
        CostFunction f = std::move(queue.front());
        queue.pop_front();
        int m = f.arity();
        for (unsigned mask = 1; mask < (1u << m); ++mask) {
            std::vector<int> positions;
            for (int i = 0; i < m; ++i)
                if (mask & (1u << i)) positions.push_back(i);
            std::size_t combos = table_size(d, static_cast<int>(positions.size()));
            for (std::size_t combo = 0; combo < combos; ++combo) {
                std::vector<int> values = index_to_tuple(combo, d, static_cast<int>(positions.size()));
                std::map<int, int> bound;
                for (std::size_t j = 0; j < positions.size(); ++j)
                    bound.emplace(positions[j], values[j]);
                CostFunction g = f.restrict_positions(bound);
                if (seen.insert(g).second) {
                    members.push_back(g);
                    queue.push_back(std::move(g));
                }
            }
        }
    }
    return Language::finite_explicit(language.name(), d, language.arity_bound(),
                                     std::move(members), language.declared_conservative(),
                                     /*declared_closed=*/true);
}

bool instance_in_language(const Instance& instance, const Language& language) {
    for (const ValuedConstraint& c : instance.constraints())
        if (!language.contains(c.function)) return false;
    return true;
}

LanguageFamily::LanguageFamily(std::vector<Language> languages)
    : languages_(std::move(languages)), domain_size_(0) {
    if (languages_.empty())
        throw Error("LanguageFamily: needs at least one language");
    domain_size_ = languages_.front().domain_size();
    for (const Language& g : languages_)
        if (g.domain_size() != domain_size_)
            throw Error("LanguageFamily: member languages disagree on domain size");
}

int LanguageFamily::arity_bound() const {
    int q = 0;
    for (const Language& g : languages_) q = std::max(q, g.arity_bound());
    return q;
}

} // namespace vcsp
