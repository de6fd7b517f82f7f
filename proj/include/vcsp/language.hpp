#ifndef VCSP_LANGUAGE_HPP
#define VCSP_LANGUAGE_HPP

#include "vcsp/instance.hpp"

#include <string>
#include <unordered_set>
#include <vector>

namespace vcsp {

enum class LanguageKind {
    FiniteExplicit,
    MinClosedCrisp,
    SubmodularBoolean,
};

// A valued constraint language: a membership recognizer over cost functions
// with a declared arity bound. Every language accepts all nullary cost
// functions; functions of arity above the bound are rejected.
//
// Conservativity and closure under partial assignments are declared flags,
// not runtime checks: a conservative valued language is infinite, so no
// finite verification exists. The built-ins carry both flags; property tests
// back them up.
class Language {
public:
    static Language finite_explicit(std::string name, int domain_size, int arity_bound,
                                    std::vector<CostFunction> functions,
                                    bool declared_conservative = false,
                                    bool declared_closed = false);
    // Crisp relations whose finite tuples are closed under coordinatewise min
    // (Horn-style). Conservative in the crisp sense.
    static Language min_closed_crisp(int domain_size, int arity_bound = 2,
                                     std::string name = "min_closed_crisp");
    // Submodular cost functions over the boolean domain.
    static Language submodular_boolean(int arity_bound = 2,
                                       std::string name = "submodular_boolean");

    const std::string& name() const { return name_; }
    LanguageKind kind() const { return kind_; }
    int domain_size() const { return domain_size_; }
    int arity_bound() const { return arity_bound_; }
    bool declared_conservative() const { return conservative_; }
    bool declared_closed_under_partial_assignments() const { return closed_; }

    // Explicit members, in canonical order (finite_explicit only).
    const std::vector<CostFunction>& functions() const { return functions_; }

    // Membership. Throws on domain size mismatch.
    bool contains(const CostFunction& f) const;

    friend bool operator==(const Language& a, const Language& b);

private:
    Language(std::string name, LanguageKind kind, int domain_size, int arity_bound,
             bool conservative, bool closed, std::vector<CostFunction> functions);

    std::string name_;
    LanguageKind kind_;
    int domain_size_;
    int arity_bound_;
    bool conservative_;
    bool closed_;
    std::vector<CostFunction> functions_;
    std::unordered_set<CostFunction, CostFunctionHash> member_set_;
};

// True iff s,t-pairwise min stays finite whenever both endpoints are finite;
// the function must additionally be crisp to be min-closed here.
bool is_min_closed_crisp_function(const CostFunction& f);

// phi(s AND t) + phi(s OR t) <= phi(s) + phi(t) for all tuple pairs, under
// the infinity conventions (x <= inf always, inf <= finite never).
bool is_submodular_boolean_function(const CostFunction& f);

// Least fixpoint containing the input and closed under fixing any subset of
// coordinates to any values. Result carries the closed flag.
Language closure_under_partial_assignments(const Language& language);

// True iff every constraint function of the instance is a member.
bool instance_in_language(const Instance& instance, const Language& language);

// An ordered family Gamma_1..Gamma_l over a shared domain size.
class LanguageFamily {
public:
    explicit LanguageFamily(std::vector<Language> languages);

    const std::vector<Language>& languages() const { return languages_; }
    std::size_t size() const { return languages_.size(); }
    const Language& operator[](std::size_t i) const { return languages_[i]; }
    int domain_size() const { return domain_size_; }
    // q: maximum arity bound across the member languages.
    int arity_bound() const;

private:
    std::vector<Language> languages_;
    int domain_size_;
};

} // namespace vcsp

#endif
