#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "paracount/ffmat.hpp"

using namespace paracount;

namespace {

MatFF from_rows(const FqField& F, std::vector<std::vector<long>> rows) {
    MatFF M(&F, static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            M.at(static_cast<int>(i), static_cast<int>(j)) = F.from_int(rows[i][j]);
    return M;
}

}  // namespace

TEST_CASE("classify: spec examples") {
    const FqField& F2 = make_field(2, 1);
    // zero 3x3 matrix: nilpotent, type (1,1,1)
    MatFF Z(&F2, 3, 3);
    auto inv = classify(Z);
    CHECK(inv.nilpotent);
    CHECK(inv.semisimple);
    CHECK(!inv.invertible);
    CHECK(nilpotent_type(Z).value() == std::vector<int>({1, 1, 1}));

    // single 2x2 Jordan block eigenvalue 0 over F_2: nilpotent, type (2)
    MatFF J = from_rows(F2, {{0, 1}, {0, 0}});
    CHECK(classify(J).nilpotent);
    CHECK(nilpotent_type(J).value() == std::vector<int>({2}));

    // companion matrix of t^2+t+1 over F_2: semisimple, invertible, not unipotent
    MatFF C = from_rows(F2, {{0, 1}, {1, 1}});
    auto ci = classify(C);
    CHECK(ci.semisimple);
    CHECK(ci.invertible);
    CHECK(!ci.unipotent);
    CHECK(!ci.nilpotent);
    CHECK(min_poly(C).deg() == 2);
}

TEST_CASE("classify invariants under conjugation; ss+nilpotent => zero") {
    const FqField& F3 = make_field(3, 1);
    MatFF M = from_rows(F3, {{1, 1, 0}, {0, 1, 0}, {0, 0, 2}});
    auto key = classify(M).key();
    for (const auto& g : enumerate_gln(3, F3, 1ULL << 22)) {
        MatFF conj = mat_mul(mat_mul(*mat_inverse(g), M), g);
        CHECK(classify(conj).key() == key);
        break;  // one representative is enough here; full sweep is slow
    }
    // a matrix that is semisimple and nilpotent must be zero
    for (std::uint64_t code = 0; code < 81; ++code) {
        MatFF A(&F3, 2, 2);
        std::uint64_t v = code;
        for (int i = 0; i < 4; ++i) {
            A.a[i] = static_cast<fcode>(v % 3);
            v /= 3;
        }
        auto ci = classify(A);
        if (ci.semisimple && ci.nilpotent) {
            bool zero = true;
            for (int i = 0; i < 4; ++i) zero = zero && A.a[i] == 0;
            CHECK(zero);
        }
    }
}

TEST_CASE("char_poly and min_poly consistency") {
    const FqField& F4 = make_field(2, 2);
    MatFF M = from_rows(F4, {{0, 1}, {0, 0}});
    M.at(0, 1) = 2;  // an F_4 scalar outside F_2
    FPoly cp = char_poly(M);
    CHECK(cp.deg() == 2);
    // Cayley-Hamilton spot check on random-ish matrices
    const FqField& F3 = make_field(3, 1);
    for (std::uint64_t code = 0; code < 200; ++code) {
        MatFF A(&F3, 3, 3);
        std::uint64_t v = code * 2654435761u;
        for (int i = 0; i < 9; ++i) {
            A.a[i] = static_cast<fcode>(v % 3);
            v /= 3;
        }
        FPoly f = char_poly(A);
        MatFF acc(&F3, 3, 3);
        for (int i = f.deg(); i >= 0; --i) {
            acc = mat_mul(acc, A);
            fcode c = f.coeff(i);
            if (c != 0)
                for (int d = 0; d < 3; ++d) acc.at(d, d) = F3.add(acc.at(d, d), c);
        }
        bool zero = true;
        for (int i = 0; i < 9; ++i) zero = zero && acc.a[i] == 0;
        CHECK(zero);
        // min poly divides char poly
        FPoly mp = min_poly(A);
        CHECK(fp_divmod(f, mp).second.is_zero());
    }
}

TEST_CASE("flag enumeration counts |GL|/|P|") {
    const FqField& F2 = make_field(2, 1);
    const FqField& F4 = make_field(2, 2);
    // 3 lines in F_2^2
    CHECK(enumerate_flags(2, {1}, F2).size() == 3);
    // 5 full flags in F_4^2
    CHECK(enumerate_flags(2, {1}, F4).size() == 5);
    // 7 lines in F_2^3
    CHECK(enumerate_flags(3, {1}, F2).size() == 7);
    // full flags in F_2^3: (q^2+q+1)(q+1) = 21
    CHECK(enumerate_flags(3, {2, 1}, F2).size() == 21);
    for (auto [n, q] : std::vector<std::pair<int, long>>{{2, 2}, {2, 4}, {3, 2}}) {
        const FqField& F = (q == 4) ? F4 : F2;
        std::vector<int> dims;
        for (int d = n - 1; d >= 1; --d) dims.push_back(d);
        CHECK(Int(static_cast<long>(enumerate_flags(n, dims, F).size())) ==
              flag_space_size(n, dims, Int(q)));
    }
}

TEST_CASE("fixed_flag_count: spec examples") {
    const FqField& F2 = make_field(2, 1);
    const FqField& F3 = make_field(3, 1);
    // identity fixes all 3 full flags of F_2^2
    CHECK(fixed_flag_count(MatFF::identity(&F2, 2), {1}) == 3);
    // regular unipotent in GL_2(F_2): unique invariant line
    MatFF u = from_rows(F2, {{1, 1}, {0, 1}});
    CHECK(fixed_flag_count(u, {1}) == 1);
    // split regular semisimple in GL_2(F_3): two eigenlines
    MatFF s = from_rows(F3, {{1, 0}, {0, 2}});
    CHECK(fixed_flag_count(s, {1}) == 2);
}

TEST_CASE("fixed flag count depends only on the class") {
    const FqField& F3 = make_field(3, 1);
    MatFF u = from_rows(F3, {{1, 1}, {0, 1}});
    auto gl = enumerate_gln(2, F3, 1ULL << 22);
    Int expect = fixed_flag_count(u, {1});
    int checked = 0;
    for (size_t i = 0; i < gl.size(); i += 7) {
        MatFF conj = mat_mul(mat_mul(*mat_inverse(gl[i]), u), gl[i]);
        Int direct = 0;
        for (const auto& fl : enumerate_flags(2, {1}, F3))
            if (flag_fixed_by(conj, fl)) ++direct;
        CHECK(direct == expect);
        ++checked;
    }
    CHECK(checked > 3);
}

TEST_CASE("unipotent classes") {
    const FqField& F2 = make_field(2, 1);
    const FqField& F3 = make_field(3, 1);
    // lambda=(1,1): identity class, size 1
    CHECK(unipotent_class({1, 1}, 2, F2).second == 1);
    // lambda=(2) over F_2: size |GL_2(2)|/2 = 3
    CHECK(unipotent_class({2}, 2, F2).second == 3);
    // lambda=(2,1) over F_2: size 21
    CHECK(unipotent_class({2, 1}, 3, F2).second == 21);
    CHECK_THROWS(unipotent_class({2}, 3, F2));
    // formula path matches brute force at q=3 (brute runs under the size cap)
    CHECK(unipotent_class({2, 1}, 3, F3).second ==
          gl_order(3, Int(3)) / unipotent_centralizer_order({2, 1}, Int(3)));
    // representative lies in its own class
    auto [rep, size] = unipotent_class({2, 1}, 3, F3);
    CHECK(unipotent_type(rep).value() == std::vector<int>({2, 1}));
    CHECK(nilpotent_orbit_size({2}, Int(2)) == 3);
}

TEST_CASE("gl_order and gl_order_poly") {
    CHECK(gl_order(2, Int(2)) == 6);
    CHECK(gl_order(3, Int(2)) == 168);
    CHECK(gl_order(2, Int(3)) == 48);
    CHECK(gl_order_poly(2).eval(Rat(3)) == Rat(48));
    CHECK(gl_order_poly(3).eval(Rat(2)) == Rat(168));
}

TEST_CASE("hc_value: spec examples") {
    const FqField& F2 = make_field(2, 1);
    const FqField& F3 = make_field(3, 1);
    // trivial character of the full Levi (L = GL_n) is 1 at any g
    MatFF g = from_rows(F2, {{1, 1}, {0, 1}});
    CHECK(hc_trivial_value({2}, g) == 1);
    // L = GL_1 x GL_1 at identity of GL_2(F_2): |G/B| = 3
    CHECK(hc_trivial_value({1, 1}, MatFF::identity(&F2, 2)) == 3);
    // trivial character at regular unipotent over F_3: 1
    MatFF u3 = from_rows(F3, {{1, 1}, {0, 1}});
    CHECK(hc_trivial_value({1, 1}, u3) == 1);
    // cross-check against fixed_flag_count on several classes
    for (const auto& rows : std::vector<std::vector<std::vector<long>>>{
             {{1, 0}, {0, 2}}, {{1, 1}, {0, 1}}, {{2, 0}, {0, 2}}, {{0, 1}, {1, 1}}}) {
        MatFF m = from_rows(F3, rows);
        if (!mat_invertible(m)) continue;
        CHECK(hc_trivial_value({1, 1}, m) == fixed_flag_count(m, {1}));
    }
}
