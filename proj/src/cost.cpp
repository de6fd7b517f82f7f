#include "vcsp/cost.hpp"

#include <cctype>

namespace vcsp {

std::string Cost::str() const {
    if (infinite_) return "inf";
    BigInt den = boost::multiprecision::denominator(value_);
    if (den == 1) return boost::multiprecision::numerator(value_).str();
    return boost::multiprecision::numerator(value_).str() + "/" + den.str();
}

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char ch : s)
        if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
}

} // namespace

Cost Cost::parse(const std::string& text) {
    if (text == "inf") return Cost::infinity();
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!all_digits(text))
            throw ParseError("malformed cost '" + text + "'");
        return Cost(Rational(BigInt(text)));
    }
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
        throw ParseError("malformed cost '" + text + "'");
    BigInt d(den);
    if (d == 0)
        throw ParseError("malformed cost '" + text + "': zero denominator");
    return Cost(Rational(BigInt(num), d));
}

} // namespace vcsp
