#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace flipgraphs {

// Arbitrary-precision integer. Geodesic counts, eigenvalue multiplicities
// and hook-length products outgrow 64 bits well before the graphs do.
using BigInt = boost::multiprecision::cpp_int;

inline BigInt factorial(int n) {
    BigInt r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// (2n-1)!! = 1*3*5*...*(2n-1), the number of perfect matchings of K_{2n}.
inline BigInt odd_double_factorial(int n) {
    BigInt r = 1;
    for (int j = 1; j <= n; ++j) r *= 2 * j - 1;
    return r;
}

inline long long binomial2(long long m) { return m * (m - 1) / 2; }

}  // namespace flipgraphs
