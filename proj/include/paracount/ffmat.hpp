#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "paracount/cyclotomic.hpp"
#include "paracount/ff.hpp"
#include "paracount/qpoly.hpp"

namespace paracount {

constexpr int kMaxN = 4;

// Small dense matrix over a finite field, row-major.
struct MatFF {
    const FqField* F = nullptr;
    int rows = 0, cols = 0;
    std::array<fcode, kMaxN * kMaxN> a{};

    MatFF() = default;
    MatFF(const FqField* f, int r, int c) : F(f), rows(r), cols(c) { a.fill(0); }
    fcode& at(int i, int j) { return a[static_cast<size_t>(i * cols + j)]; }
    fcode at(int i, int j) const { return a[static_cast<size_t>(i * cols + j)]; }
    bool operator==(const MatFF& o) const;
    static MatFF identity(const FqField* f, int n);
};

MatFF mat_add(const MatFF& A, const MatFF& B);
MatFF mat_sub(const MatFF& A, const MatFF& B);
MatFF mat_mul(const MatFF& A, const MatFF& B);
MatFF mat_scale(const MatFF& A, fcode s);
fcode mat_trace(const MatFF& A);
fcode mat_det(const MatFF& A);
MatFF mat_pow(const MatFF& A, long e);
int mat_rank(MatFF A);
MatFF mat_rref(MatFF A);                      // reduced row echelon, zero rows dropped
std::optional<MatFF> mat_inverse(const MatFF& A);
bool mat_invertible(const MatFF& A);
MatFF mat_frobenius(const MatFF& A, long s);  // entrywise x -> x^{p^s}
// entrywise embedding into an extension field
MatFF mat_embed(const FqField& K, const MatFF& A);

FPoly char_poly(const MatFF& M);
FPoly min_poly(const MatFF& M);

// Elementary-divisor data of a conjugacy class / adjoint orbit.
struct ClassInvariant {
    // (monic irreducible, partition) sorted by polynomial; sum deg*|partition| = n
    std::vector<std::pair<FPoly, std::vector<int>>> elementary;
    bool semisimple = false, nilpotent = false, invertible = false, unipotent = false;
    std::string key() const;  // canonical serialization
};

ClassInvariant classify(const MatFF& M);
bool in_class(const MatFF& M, const ClassInvariant& inv);  // no factorization
// Jordan type if M is nilpotent, else nullopt.
std::optional<std::vector<int>> nilpotent_type(const MatFF& M);
// Jordan type of M - 1 if M is unipotent, else nullopt.
std::optional<std::vector<int>> unipotent_type(const MatFF& M);

// |GL_n(q)|, exact.
Int gl_order(int n, const Int& q);
QPoly gl_order_poly(int n);

// ------------------------------------------------------------------ flags ----

// A partial flag: chain of subspaces with strictly decreasing dims, each given
// by its reduced row-echelon basis in global coordinates (rows span).
struct PartialFlag {
    std::vector<MatFF> subs;
    std::string key() const;
};

// Flag dims from a parabolic-type column given by partition parts:
// s_j = n - (mu_1 + ... + mu_j), zeros dropped, repeats collapsed.
std::vector<int> column_from_partition(int n, const std::vector<int>& mu);

std::vector<PartialFlag> enumerate_flags(int n, const std::vector<int>& dims, const FqField& F);
PartialFlag apply_flag(const MatFF& g, const PartialFlag& fl);
bool flag_fixed_by(const MatFF& g, const PartialFlag& fl);
Int flag_space_size(int n, const std::vector<int>& dims, const Int& q);

// #{flags of given dims fixed by g}; memoized on (classify(g), dims).
Int fixed_flag_count(const MatFF& g, const std::vector<int>& dims);

// ------------------------------------------------------- unipotent classes ----

// Representative (Jordan blocks, eigenvalue 1) and class size.
std::pair<MatFF, Int> unipotent_class(const std::vector<int>& lambda, int n, const FqField& F);
// Centralizer order of a unipotent of type lambda in GL_n(q), closed form.
Int unipotent_centralizer_order(const std::vector<int>& lambda, const Int& q);
// Nilpotent orbit size |N_lambda(q)| in gl_n.
Int nilpotent_orbit_size(const std::vector<int>& lambda, const Int& q);

// all invertible n x n matrices (guarded by cap on q^{n^2})
std::vector<MatFF> enumerate_gln(int n, const FqField& F, std::uint64_t cap = (1ULL << 22));

// ------------------------------------------------- Harish-Chandra induction ----

// Literal-definition Harish-Chandra induction values.  `levi` is a composition
// of n giving the block sizes; f maps the block-diagonal parts to a value.
// Group mode sums over h in GL_n(Q) with h^{-1} g h in the standard parabolic
// P; Lie mode is the same with g in gl_n.  Division by |P(Q)| is exact.
Cyclotomic hc_value(const std::vector<int>& levi, const MatFF& g,
                    const std::function<Cyclotomic(const std::vector<MatFF>&)>& f,
                    std::uint64_t cap = 10'000'000);

// R_L^G(1)(g) as an integer (trivial character).
Int hc_trivial_value(const std::vector<int>& levi, const MatFF& g,
                     std::uint64_t cap = 10'000'000);

}  // namespace paracount
