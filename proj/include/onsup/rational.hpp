#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace onsup {

// Exact rational arithmetic for the experiments that claim exact ratios.
using Rat = boost::multiprecision::cpp_rational;

// Power the numerator and denominator separately: they stay coprime, and
// squaring a cpp_rational directly would re-run a huge gcd at every step.
inline Rat rat_pow(const Rat& base, unsigned e) {
    using boost::multiprecision::cpp_int;
    cpp_int num = pow(numerator(base), e);
    cpp_int den = pow(denominator(base), e);
    return Rat(std::move(num), std::move(den));
}

}  // namespace onsup
