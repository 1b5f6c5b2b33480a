#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paracount/bundle.hpp"

using namespace paracount;

TEST_CASE("aut_order closed forms") {
    const FqField& F2 = make_field(2, 1);
    // O(a)^n: |GL_n(q)|
    BundleContext triv(BundleShape({0}, {2}), F2);
    CHECK(triv.aut_order(Int(2)) == 6);
    CHECK(triv.aut_order(Int(3)) == 48);
    // O(1)+O(0) at q=2: (q-1)^2 q^2 = 4
    BundleContext s10(BundleShape({1, 0}, {1, 1}), F2);
    CHECK(s10.aut_order(Int(2)) == 4);
    // O(2)+O(0) at q=2: (q-1)^2 q^3 = 8
    BundleContext s20(BundleShape({2, 0}, {1, 1}), F2);
    CHECK(s20.aut_order(Int(2)) == 8);
    // symbolic matches numeric
    CHECK(s20.aut_order_poly().eval(Rat(5)) == Rat(16 * 125));
}

TEST_CASE("enumerate end/aut counts") {
    const FqField& F2 = make_field(2, 1);
    // O(0)^2 over F_2: |End| = 16, |Aut| = 6
    BundleContext triv(BundleShape({0}, {2}), F2);
    int end_count = 0, aut_count = 0;
    triv.for_each_end([&](const EndElement&) { ++end_count; });
    triv.for_each_aut([&](const EndElement&) { ++aut_count; });
    CHECK(end_count == 16);
    CHECK(aut_count == 6);

    // O(1)+O(0) over F_2: dim End = 1+1+2 = 4, |End| = 16, |Aut| = 4
    BundleContext s10(BundleShape({1, 0}, {1, 1}), F2);
    CHECK(s10.dim_end() == 4);
    end_count = aut_count = 0;
    s10.for_each_end([&](const EndElement&) { ++end_count; });
    s10.for_each_aut([&](const EndElement&) { ++aut_count; });
    CHECK(end_count == 16);
    CHECK(aut_count == 4);

    // O(0)^3 over F_2: |Aut| = |GL_3(2)| = 168
    BundleContext t3(BundleShape({0}, {3}), F2);
    aut_count = 0;
    t3.for_each_aut([&](const EndElement&) { ++aut_count; });
    CHECK(aut_count == 168);

    // enumerate_aut count equals aut_order on several shapes and fields
    const FqField& F3 = make_field(3, 1);
    for (const auto& sh : {BundleShape({0}, {2}), BundleShape({1, 0}, {1, 1}),
                           BundleShape({1, -1}, {1, 1})}) {
        BundleContext ctx(sh, F3);
        Int c = 0;
        ctx.for_each_aut([&](const EndElement&) { ++c; });
        CHECK(c == ctx.aut_order(Int(3)));
    }
}

TEST_CASE("evaluation is a ring homomorphism") {
    const FqField& F2 = make_field(2, 1);
    BundleContext ctx(BundleShape({1, 0}, {1, 1}), F2);
    auto pts = closed_points(F2, 1, 2);
    auto quad = closed_points(F2, 2, 1)[0];

    // identity evaluates to identity
    for (const auto& pt : {pts[0], pts[1], quad}) {
        MatFF I = ctx.evaluate(ctx.identity_elt(), pt);
        CHECK(I == MatFF::identity(&ctx.residue_field(pt), 2));
    }

    // h with off-diagonal entry t at point t+1 gives entry 1
    EndElement h = ctx.zero_elt();
    h[ctx.coord_index(0, 1, 0, 0, 1)] = F2.one();  // t in the (0,1) block
    MatFF M = ctx.evaluate(h, pts[1]);              // point t+1, residue t = 1
    CHECK(M.at(0, 1) == F2.one());
    // same h at point t gives entry 0
    CHECK(ctx.evaluate(h, pts[0]).at(0, 1) == 0);
    // at t^2+t+1 the entry is the class of t (the generator of F_4)
    MatFF M4 = ctx.evaluate(h, quad);
    const FqField& F4r = ctx.residue_field(quad);
    CHECK(M4.at(0, 1) == F4r.from_digits({0, F2.one()}));

    // multiplicativity on a sweep of pairs
    std::vector<EndElement> all;
    ctx.for_each_end([&](const EndElement& e) { all.push_back(e); });
    for (const auto& pt : {pts[0], quad}) {
        for (size_t i = 0; i < all.size(); i += 3)
            for (size_t j = 0; j < all.size(); j += 5) {
                MatFF lhs = ctx.evaluate(ctx.mul_elt(all[i], all[j]), pt);
                MatFF rhs = mat_mul(ctx.evaluate(all[i], pt), ctx.evaluate(all[j], pt));
                CHECK(lhs == rhs);
            }
    }
}

TEST_CASE("algebra min poly and invertibility flags") {
    const FqField& F3 = make_field(3, 1);
    BundleContext ctx(BundleShape({0}, {2}), F3);
    // scalar: min poly x - c
    EndElement two = ctx.scale_elt(ctx.identity_elt(), F3.from_int(2));
    FPoly mp = ctx.algebra_min_poly(two);
    CHECK(mp.deg() == 1);
    CHECK(ctx.is_scalar(two));
    CHECK(ctx.is_invertible(two));
    // nilpotent Jordan block
    EndElement nil = ctx.zero_elt();
    nil[ctx.coord_index(0, 0, 0, 1, 0)] = F3.one();
    CHECK(ctx.is_nilpotent(nil));
    FPoly mpn = ctx.algebra_min_poly(nil);
    CHECK(mpn.deg() == 2);
    CHECK(mpn.coeff(0) == 0);
    CHECK(mpn.coeff(1) == 0);
    // idempotent diag(1,0): min poly x^2 - x, squarefree, non-scalar
    EndElement idem = ctx.zero_elt();
    idem[ctx.coord_index(0, 0, 0, 0, 0)] = F3.one();
    FPoly mpi = ctx.algebra_min_poly(idem);
    CHECK(mpi.deg() == 2);
    CHECK(fp_gcd(mpi, fp_derivative(mpi)).deg() == 0);
    CHECK(!ctx.is_scalar(idem));
}

TEST_CASE("delta of split shapes") {
    const FqField& F2 = make_field(2, 1);
    CHECK(BundleContext(BundleShape({1, -1}, {1, 1}), F2).delta() == 1);
    CHECK(BundleContext(BundleShape({1, 0}, {1, 1}), F2).delta() == 0);
    CHECK(BundleContext(BundleShape({0}, {2}), F2).delta() == 0);
}

TEST_CASE("shapes_of_degree") {
    // n=2, d=0, bound 4: (0;2) and (1,-1;1,1); gap-4 shape excluded
    auto s = shapes_of_degree(2, 0, 4);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == BundleShape({0}, {2}));
    CHECK(s[1] == BundleShape({1, -1}, {1, 1}));
    // n=2, d=1, bound 3: only (1,0;1,1)
    auto s1 = shapes_of_degree(2, 1, 3);
    REQUIRE(s1.size() == 1);
    CHECK(s1[0] == BundleShape({1, 0}, {1, 1}));
    // n=1: single shape
    auto s2 = shapes_of_degree(1, 7, 3);
    REQUIRE(s2.size() == 1);
    CHECK(s2[0] == BundleShape({7}, {1}));
    // rank 3, degree 0, bound 3: gaps <= 1
    for (const auto& sh : shapes_of_degree(3, 0, 3)) {
        CHECK(sh.rank() == 3);
        CHECK(sh.degree() == 0);
        for (size_t i = 0; i + 1 < sh.b.size(); ++i) CHECK(sh.b[i] - sh.b[i + 1] <= 1);
    }
}

TEST_CASE("divisor from profile is deterministic and validated") {
    const FqField& F3 = make_field(3, 1);
    auto D = DivisorSpec::from_profile(F3, {1, 1, 2});
    CHECK(D.degrees() == std::vector<int>({1, 1, 2}));
    CHECK(D.total_degree() == 4);
    auto D2 = DivisorSpec::from_profile(F3, {1, 1, 2});
    for (size_t i = 0; i < D.points.size(); ++i) CHECK(D.points[i] == D2.points[i]);
    const FqField& F2 = make_field(2, 1);
    CHECK_THROWS(DivisorSpec::from_profile(F2, {1, 1, 1}));  // only two rational points
}
