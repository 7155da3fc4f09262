#include "rwprune/rational.hpp"

#include <limits>

#include <fmt/format.h>

namespace rwprune {

void Rational::assign(Int128 num, Int128 den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    Int128 a = num < 0 ? -num : num;
    Int128 b = den;
    while (b != 0) {
        const Int128 t = a % b;
        a = b;
        b = t;
    }
    const Int128 g = a == 0 ? 1 : a;
    num /= g;
    den /= g;
    constexpr Int128 lo = std::numeric_limits<std::int64_t>::min();
    constexpr Int128 hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) throw std::overflow_error("rational overflow");
    num_ = static_cast<std::int64_t>(num);
    den_ = static_cast<std::int64_t>(den);
}

std::string Rational::str() const {
    if (den_ == 1) return std::to_string(num_);
    return fmt::format("{}/{}", num_, den_);
}

} // namespace rwprune
