#ifndef VCSP_COST_HPP
#define VCSP_COST_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/functional/hash.hpp>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace vcsp {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

// A cost is a nonnegative exact rational or positive infinity.
// Finite values are kept in lowest terms with positive denominator
// (cpp_rational canonicalizes on construction). Addition is exact and
// absorbs into infinity: a + inf = inf + a = inf.
class Cost {
public:
    Cost() : infinite_(false), value_(0) {}

    Cost(long long numerator, long long denominator = 1)
        : infinite_(false), value_(make_checked(BigInt(numerator), BigInt(denominator))) {}

    explicit Cost(Rational value) : infinite_(false), value_(std::move(value)) {
        if (value_ < 0)
            throw Error("Cost: negative value " + value_.str());
    }

    static Cost infinity() {
        Cost c;
        c.infinite_ = true;
        return c;
    }

    static Cost zero() { return Cost(); }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }
    bool is_zero() const { return !infinite_ && value_ == 0; }

    // Finite value accessors; calling them on infinity is a logic error.
    const Rational& value() const {
        if (infinite_)
            throw Error("Cost: infinity has no rational value");
        return value_;
    }
    BigInt numerator() const { return boost::multiprecision::numerator(value()); }
    BigInt denominator() const { return boost::multiprecision::denominator(value()); }

    Cost& operator+=(const Cost& other) {
        if (infinite_ || other.infinite_) {
            infinite_ = true;
            value_ = 0;
        } else {
            value_ += other.value_;
        }
        return *this;
    }

    friend Cost operator+(Cost lhs, const Cost& rhs) {
        lhs += rhs;
        return lhs;
    }

    friend bool operator==(const Cost& a, const Cost& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.value_ == b.value_;
    }

    // Total order with infinity as the greatest element.
    friend std::strong_ordering operator<=>(const Cost& a, const Cost& b) {
        if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
        if (a.infinite_) return std::strong_ordering::greater;
        if (b.infinite_) return std::strong_ordering::less;
        if (a.value_ < b.value_) return std::strong_ordering::less;
        if (a.value_ == b.value_) return std::strong_ordering::equal;
        return std::strong_ordering::greater;
    }

    // "inf", "p", or "p/q" in lowest terms.
    std::string str() const;

    // Parses the serialized forms; accepts unreduced fractions and
    // canonicalizes. Rejects negatives, zero denominators, garbage.
    static Cost parse(const std::string& text);

    std::size_t hash() const {
        if (infinite_) return 0x9e3779b97f4a7c15ULL;
        return boost::hash<Rational>()(value_);
    }

private:
    static Rational make_checked(const BigInt& num, const BigInt& den) {
        if (den == 0)
            throw Error("Cost: zero denominator");
        Rational r(num, den);
        if (r < 0)
            throw Error("Cost: negative value " + r.str());
        return r;
    }

    bool infinite_;
    Rational value_;
};

struct CostHash {
    std::size_t operator()(const Cost& c) const { return c.hash(); }
};

} // namespace vcsp

#endif
