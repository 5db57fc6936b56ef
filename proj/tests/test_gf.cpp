#include <catch2/catch_amalgamated.hpp>

#include "flipgraphs/gf.hpp"

using namespace flipgraphs;

TEST_CASE("smallest prime power at least m") {
    REQUIRE(smallest_prime_power_at_least(7).q == 7);
    REQUIRE(smallest_prime_power_at_least(7).e == 1);
    REQUIRE(smallest_prime_power_at_least(15).q == 16);
    REQUIRE(smallest_prime_power_at_least(15).p == 2);
    REQUIRE(smallest_prime_power_at_least(15).e == 4);
    REQUIRE(smallest_prime_power_at_least(21).q == 23);

    // the full q >= 2n+1 row for n = 2..11
    const std::vector<long long> expected{5, 7, 9, 11, 13, 16, 17, 19, 23, 23};
    for (int n = 2; n <= 11; ++n)
        REQUIRE(smallest_prime_power_at_least(2 * n + 1).q == expected[n - 2]);

    REQUIRE_THROWS_AS(smallest_prime_power_at_least(1), std::invalid_argument);
}

TEST_CASE("deterministic moduli") {
    // first irreducible monic polynomial in counter order
    REQUIRE(make_field_spec(2, 2).modulus == std::vector<int>{1, 1, 1});     // x^2+x+1
    REQUIRE(make_field_spec(2, 3).modulus == std::vector<int>{1, 1, 0, 1});  // x^3+x+1
    REQUIRE(make_field_spec(3, 2).modulus == std::vector<int>{1, 0, 1});     // x^2+1
    REQUIRE(make_field_spec(2, 4).modulus == std::vector<int>{1, 1, 0, 0, 1});
    REQUIRE(make_field_spec(3, 3).modulus == std::vector<int>{1, 2, 0, 1});  // x^3+2x+1
    REQUIRE(make_field_spec(5, 1).to_string() == "GF(5) mod [0 1]");
    REQUIRE_THROWS_AS(make_field_spec(4, 1), std::invalid_argument);
}

TEST_CASE("basic arithmetic") {
    GaloisField gf5(make_field_spec(5, 1));
    REQUIRE(gf5.mul(gf5.element(3), gf5.element(4)) == gf5.element(2));

    GaloisField gf4(make_field_spec(2, 2));
    // element(2) = x: x * x = x + 1 = element(3) under x^2+x+1
    REQUIRE(gf4.mul(gf4.element(2), gf4.element(2)) == gf4.element(3));

    // element index round trip
    for (long long i = 0; i < gf4.order(); ++i) REQUIRE(gf4.index_of(gf4.element(i)) == i);

    REQUIRE_THROWS_AS(gf5.element(5), std::out_of_range);
    REQUIRE_THROWS_AS(gf5.add(gf5.element(1), gf4.element(1)), std::invalid_argument);
    REQUIRE_THROWS_AS(gf5.inverse(gf5.zero()), std::domain_error);
}

TEST_CASE("field axioms hold exhaustively") {
    const std::vector<std::pair<long long, int>> fields{
        {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4}, {5, 2}, {3, 3}};
    for (auto [p, e] : fields) {
        GaloisField f(make_field_spec(p, e));
        const long long q = f.order();
        std::vector<FieldElement> elems;
        for (long long i = 0; i < q; ++i) elems.push_back(f.element(i));

        for (long long a = 0; a < q; ++a) {
            REQUIRE(f.add(elems[a], f.zero()) == elems[a]);
            REQUIRE(f.mul(elems[a], f.one()) == elems[a]);
            REQUIRE(f.add(elems[a], f.neg(elems[a])) == f.zero());
            if (a != 0) REQUIRE(f.mul(elems[a], f.inverse(elems[a])) == f.one());
            for (long long b = 0; b < q; ++b) {
                REQUIRE(f.add(elems[a], elems[b]) == f.add(elems[b], elems[a]));
                REQUIRE(f.mul(elems[a], elems[b]) == f.mul(elems[b], elems[a]));
                for (long long c = 0; c < q; ++c) {
                    REQUIRE(f.mul(f.mul(elems[a], elems[b]), elems[c]) ==
                            f.mul(elems[a], f.mul(elems[b], elems[c])));
                    REQUIRE(f.mul(elems[a], f.add(elems[b], elems[c])) ==
                            f.add(f.mul(elems[a], elems[b]), f.mul(elems[a], elems[c])));
                }
            }
        }
    }
}

TEST_CASE("no zero divisors for any prime power up to 32") {
    for (long long q = 2; q <= 32; ++q) {
        long long p = q;
        for (long long d = 2; d * d <= q; ++d)
            if (q % d == 0) {
                p = d;
                break;
            }
        long long r = q;
        int e = 0;
        while (r % p == 0) {
            r /= p;
            ++e;
        }
        if (r != 1) continue;  // not a prime power
        GaloisField f(make_field_spec(p, e));
        for (long long a = 1; a < q; ++a)
            for (long long b = 1; b < q; ++b)
                REQUIRE_FALSE(f.is_zero(f.mul(f.element(a), f.element(b))));
    }
}
