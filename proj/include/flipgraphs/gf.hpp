#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace flipgraphs {

// GF(p^e) described by a monic irreducible modulus. Coefficients are stored
// little-endian: modulus[i] multiplies x^i, modulus[e] == 1.
struct FieldSpec {
    long long p = 0;
    int e = 0;
    long long q = 0;  // p^e
    std::vector<int> modulus;

    std::string to_string() const {
        std::ostringstream os;
        os << "GF(" << p;
        if (e > 1) os << "^" << e;
        os << ") mod [";
        for (std::size_t i = 0; i < modulus.size(); ++i) os << (i ? " " : "") << modulus[i];
        os << "]";
        return os.str();
    }
};

// Polynomial representation of degree < e; coeffs[i] in [0, p).
struct FieldElement {
    std::vector<int> coeffs;
    bool operator==(const FieldElement&) const = default;
};

namespace detail {

inline bool is_prime_ll(long long x) {
    if (x < 2) return false;
    for (long long d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

// Remainder of a mod b over GF(p); both little-endian, b monic.
inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, long long p) {
    const int db = static_cast<int>(b.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= db; --i) {
        const long long f = a[i];
        if (f == 0) continue;
        for (int j = 0; j <= db; ++j) {
            long long v = (a[i - db + j] - f * b[j]) % p;
            a[i - db + j] = static_cast<int>((v + p) % p);
        }
    }
    a.resize(std::max(db, 1));
    return a;
}

inline bool poly_is_zero(const std::vector<int>& a) {
    for (int c : a)
        if (c) return false;
    return true;
}

// Monic polynomial of degree d whose non-leading coefficients are the base-p
// digits of v (little-endian). Enumerating v = 0,1,2,... walks all of them.
inline std::vector<int> monic_from_counter(long long v, int d, long long p) {
    std::vector<int> poly(d + 1, 0);
    for (int i = 0; i < d; ++i) {
        poly[i] = static_cast<int>(v % p);
        v /= p;
    }
    poly[d] = 1;
    return poly;
}

inline bool is_irreducible(const std::vector<int>& poly, long long p) {
    const int d = static_cast<int>(poly.size()) - 1;
    for (int dd = 1; 2 * dd <= d; ++dd) {
        long long count = 1;
        for (int i = 0; i < dd; ++i) count *= p;
        for (long long v = 0; v < count; ++v) {
            if (poly_is_zero(poly_mod(poly, monic_from_counter(v, dd, p), p))) return false;
        }
    }
    return true;
}

}  // namespace detail

inline FieldSpec make_field_spec(long long p, int e) {
    if (!detail::is_prime_ll(p)) throw std::invalid_argument("make_field_spec: p not prime");
    if (e < 1) throw std::invalid_argument("make_field_spec: exponent must be >= 1");
    FieldSpec spec;
    spec.p = p;
    spec.e = e;
    spec.q = 1;
    for (int i = 0; i < e; ++i) spec.q *= p;
    if (e == 1) {
        spec.modulus = {0, 1};  // x
        return spec;
    }
    for (long long v = 0;; ++v) {
        auto poly = detail::monic_from_counter(v, e, p);
        if (detail::is_irreducible(poly, p)) {
            spec.modulus = std::move(poly);
            return spec;
        }
    }
}

// Minimal prime power q = p^e >= m, with the first irreducible modulus in
// counter order (a fixed choice keeps colorings reproducible).
inline FieldSpec smallest_prime_power_at_least(long long m) {
    if (m < 2) throw std::invalid_argument("smallest_prime_power_at_least: m must be >= 2");
    for (long long q = m;; ++q) {
        long long p = q;
        for (long long d = 2; d * d <= q; ++d) {
            if (q % d == 0) {
                p = d;
                break;
            }
        }
        long long r = q;
        int e = 0;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        if (r == 1) return make_field_spec(p, e);
    }
}

class GaloisField {
public:
    explicit GaloisField(FieldSpec spec) : spec_(std::move(spec)) {
        if (static_cast<int>(spec_.modulus.size()) != spec_.e + 1 || spec_.modulus[spec_.e] != 1)
            throw std::invalid_argument("GaloisField: modulus must be monic of degree e");
    }

    const FieldSpec& spec() const { return spec_; }
    long long order() const { return spec_.q; }

    FieldElement zero() const { return {std::vector<int>(spec_.e, 0)}; }

    FieldElement one() const {
        auto r = zero();
        r.coeffs[0] = 1 % static_cast<int>(spec_.p);
        return r;
    }

    // index -> element via base-p digits, little-endian. element(0) == 0.
    FieldElement element(long long index) const {
        if (index < 0 || index >= spec_.q) throw std::out_of_range("GaloisField: index");
        auto r = zero();
        for (int i = 0; i < spec_.e; ++i) {
            r.coeffs[i] = static_cast<int>(index % spec_.p);
            index /= spec_.p;
        }
        return r;
    }

    long long index_of(const FieldElement& a) const {
        check(a);
        long long idx = 0;
        for (int i = spec_.e - 1; i >= 0; --i) idx = idx * spec_.p + a.coeffs[i];
        return idx;
    }

    bool is_zero(const FieldElement& a) const {
        check(a);
        return detail::poly_is_zero(a.coeffs);
    }

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        check(a);
        check(b);
        FieldElement r = a;
        for (int i = 0; i < spec_.e; ++i)
            r.coeffs[i] = static_cast<int>((r.coeffs[i] + b.coeffs[i]) % spec_.p);
        return r;
    }

    FieldElement neg(const FieldElement& a) const {
        check(a);
        FieldElement r = a;
        for (int i = 0; i < spec_.e; ++i)
            r.coeffs[i] = static_cast<int>((spec_.p - r.coeffs[i]) % spec_.p);
        return r;
    }

    FieldElement sub(const FieldElement& a, const FieldElement& b) const {
        return add(a, neg(b));
    }

    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        check(a);
        check(b);
        std::vector<int> prod(2 * spec_.e - 1, 0);
        for (int i = 0; i < spec_.e; ++i) {
            if (a.coeffs[i] == 0) continue;
            for (int j = 0; j < spec_.e; ++j) {
                prod[i + j] = static_cast<int>(
                    (prod[i + j] + static_cast<long long>(a.coeffs[i]) * b.coeffs[j]) % spec_.p);
            }
        }
        auto red = detail::poly_mod(std::move(prod), spec_.modulus, spec_.p);
        red.resize(spec_.e, 0);
        return {std::move(red)};
    }

    FieldElement pow(FieldElement base, long long exp) const {
        FieldElement r = one();
        while (exp > 0) {
            if (exp & 1) r = mul(r, base);
            base = mul(base, base);
            exp >>= 1;
        }
        return r;
    }

    FieldElement inverse(const FieldElement& a) const {
        if (is_zero(a)) throw std::domain_error("GaloisField: zero has no inverse");
        return pow(a, spec_.q - 2);
    }

private:
    void check(const FieldElement& a) const {
        if (static_cast<int>(a.coeffs.size()) != spec_.e)
            throw std::invalid_argument("GaloisField: element from mismatched field spec");
        for (int c : a.coeffs)
            if (c < 0 || c >= spec_.p)
                throw std::invalid_argument("GaloisField: coefficient out of range");
    }

    FieldSpec spec_;
};

}  // namespace flipgraphs
