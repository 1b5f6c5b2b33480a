#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>
#include <set>

#include "paracount/ff.hpp"

using namespace paracount;

TEST_CASE("make_field basics") {
    const FqField& F2 = make_field(2, 1);
    CHECK(F2.size == 2);
    CHECK(F2.add(1, 1) == 0);

    // unique monic irreducible quadratic over F_2 is t^2+t+1
    const FqField& F4 = make_field(2, 2);
    CHECK(F4.size == 4);
    CHECK(F4.modulus == std::vector<fcode>({1, 1, 1}));

    CHECK_THROWS(make_field(4, 1));  // non-prime characteristic
    CHECK_THROWS(FqField::extension(F2, 0));
}

TEST_CASE("x^{p^k} = x for all elements of F_9") {
    const FqField& F9 = make_field(3, 2);
    for (fcode a = 0; a < 9; ++a) CHECK(F9.pow(a == 0 ? 1 : a, Int(9)) == (a == 0 ? 1 : a));
    for (fcode a = 1; a < 9; ++a) {
        fcode x = a;
        for (int i = 0; i < 2; ++i) x = F9.frobenius(x);
        CHECK(x == a);
    }
}

TEST_CASE("field axioms on small fields") {
    for (auto [p, k] : std::vector<std::pair<long, int>>{{2, 1}, {2, 2}, {3, 2}, {5, 1}, {2, 3}}) {
        const FqField& F = make_field(p, k);
        for (fcode a = 0; a < F.size; ++a)
            for (fcode b = 0; b < F.size; ++b) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                if (b != 0) CHECK(F.mul(F.mul(a, b), F.inv(b)) == a);
            }
        // distributivity spot check
        for (fcode a = 0; a < F.size; ++a) {
            fcode b = static_cast<fcode>((a * 7 + 3) % F.size);
            fcode c = static_cast<fcode>((a * 5 + 1) % F.size);
            CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
    }
}

TEST_CASE("frobenius is additive/multiplicative bijection, trace surjective") {
    for (auto [p, k] : std::vector<std::pair<long, int>>{{2, 3}, {3, 2}, {5, 2}}) {
        const FqField& F = make_field(p, k);
        std::set<fcode> image;
        std::set<long> traces;
        for (fcode a = 0; a < F.size; ++a) {
            image.insert(F.frobenius(a));
            traces.insert(F.trace_to_prime(a));
            fcode b = static_cast<fcode>((a + 1) % F.size);
            CHECK(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
            CHECK(F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b)));
            // trace is F_p-linear: additive
            CHECK((F.trace_to_prime(F.add(a, b)) - F.trace_to_prime(a) - F.trace_to_prime(b)) % p ==
                  0);
        }
        CHECK(image.size() == F.size);
        CHECK(traces.size() == static_cast<size_t>(p));
    }
}

TEST_CASE("closed points") {
    const FqField& F2 = make_field(2, 1);
    auto pts = closed_points(F2, 1, 2);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].poly.c == std::vector<fcode>({0, 1}));  // t
    CHECK(pts[1].poly.c == std::vector<fcode>({1, 1}));  // t+1
    CHECK_THROWS_WITH_AS(static_cast<void>(closed_points(F2, 1, 3)),
                         doctest::Contains("insufficient points"), std::domain_error);

    auto quad = closed_points(F2, 2, 1);
    CHECK(quad[0].poly.c == std::vector<fcode>({1, 1, 1}));  // t^2+t+1

    auto cubs = closed_points(F2, 3, 2);
    CHECK(cubs.size() == 2);
    CHECK(all_closed_points(F2, 3).size() == 2);
}

TEST_CASE("sum over e|d of e*(#irreducibles of degree e) = q^d") {
    for (long q : {2L, 3L, 4L, 5L}) {
        long p = (q == 4) ? 2 : q;
        int k = (q == 4) ? 2 : 1;
        const FqField& F = make_field(p, k);
        for (int d = 1; d <= 6; ++d) {
            Int total = 0;
            for (long e : divisors(d))
                total += Int(e) * necklace_count(Int(q), e);
            CHECK(total == int_pow(Int(q), d));
        }
        // enumerated counts match the formula at small degree
        for (int d = 1; d <= 3; ++d)
            CHECK(Int(static_cast<long>(all_closed_points(F, d).size())) ==
                  necklace_count(Int(q), d));
    }
}

TEST_CASE("base change of closed points") {
    const FqField& F2 = make_field(2, 1);
    // quadratic point splits over F_4 into two rational points
    auto quad = closed_points(F2, 2, 1)[0];
    auto split = base_change_point(quad, 2);
    REQUIRE(split.size() == 2);
    CHECK(split[0].degree() == 1);
    CHECK(split[1].degree() == 1);

    // rational point stays rational over F_8
    auto rat = closed_points(F2, 1, 1)[0];
    auto up = base_change_point(rat, 3);
    REQUIRE(up.size() == 1);
    CHECK(up[0].degree() == 1);

    // degree-3 point over F_2 stays degree-3 over F_4 (gcd(2,3)=1)
    auto cub = closed_points(F2, 3, 1)[0];
    auto bc = base_change_point(cub, 2);
    REQUIRE(bc.size() == 1);
    CHECK(bc[0].degree() == 3);

    // total degree preserved in general
    for (int d = 1; d <= 4; ++d) {
        auto pt = closed_points(F2, d, 1)[0];
        for (int e = 1; e <= 4; ++e) {
            auto parts = base_change_point(pt, e);
            int total = 0;
            for (const auto& pp : parts) total += pp.degree();
            CHECK(total == d);
            CHECK(static_cast<int>(parts.size()) == std::gcd(e, d));
        }
    }
}

TEST_CASE("polynomial factorization") {
    const FqField& F3 = make_field(3, 1);
    // (t^2+1)(t+1)^2 over F_3; t^2+1 is irreducible mod 3
    FPoly f = fp_mul(FPoly(&F3, {1, 0, 1}), fp_mul(FPoly(&F3, {1, 1}), FPoly(&F3, {1, 1})));
    auto facs = fp_factor(f);
    REQUIRE(facs.size() == 2);
    CHECK(facs[0].first.c == std::vector<fcode>({1, 1}));
    CHECK(facs[0].second == 2);
    CHECK(facs[1].first.c == std::vector<fcode>({1, 0, 1}));
    CHECK(facs[1].second == 1);

    // roots of t^2 - 1 over F_5
    const FqField& F5 = make_field(5, 1);
    auto roots = fp_roots(FPoly(&F5, {4, 0, 1}));
    CHECK(roots == std::vector<fcode>({1, 4}));
}

TEST_CASE("embeddings") {
    const FqField& F2 = make_field(2, 1);
    const FqField& F4 = make_field(2, 2);
    const FqField& F16 = make_field(2, 4);
    // F_4 embeds in F_16: image closed under arithmetic
    for (fcode a = 0; a < 4; ++a)
        for (fcode b = 0; b < 4; ++b) {
            fcode ia = F16.embed_from(F4, a), ib = F16.embed_from(F4, b);
            CHECK(F16.add(ia, ib) == F16.embed_from(F4, F4.add(a, b)));
            CHECK(F16.mul(ia, ib) == F16.embed_from(F4, F4.mul(a, b)));
        }
    CHECK(F16.embed_from(F2, 1) == F16.one());
    // residue field construction embeds into the canonical extension
    auto quad = closed_points(F2, 2, 1)[0];
    const FqField& R = FqField::extension(F2, quad.poly);
    for (fcode a = 0; a < 4; ++a)
        for (fcode b = 0; b < 4; ++b)
            CHECK(F16.embed_from(R, R.mul(a, b)) ==
                  F16.mul(F16.embed_from(R, a), F16.embed_from(R, b)));
}

TEST_CASE("trace and norm to base") {
    const FqField& F3 = make_field(3, 1);
    const FqField& F9 = FqField::extension(F3, 2);
    for (fcode a = 0; a < 9; ++a) {
        fcode tr = F9.trace_to_base(a);
        CHECK(tr < 3);  // lands in the prime subfield (digit-0 code)
        CHECK(F9.trace_to_base(F9.frobenius_base(a)) == tr);
        if (a != 0) CHECK(F9.norm_to_base(a) == F9.pow(a, Int(4)));  // x^{q+1} = x^4
    }
}
