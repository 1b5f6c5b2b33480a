#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "paracount/rat.hpp"

namespace paracount {

// Packed code of a field element.  For a field built as base[t]/(modulus),
// the element sum c_j t^j is coded as sum code(c_j) * |base|^j; the prime
// field codes an element by its representative in [0, p).
using fcode = std::uint32_t;

class FqField;

// Polynomial over a finite field, ascending coefficient codes, no trailing zeros.
struct FPoly {
    const FqField* F = nullptr;
    std::vector<fcode> c;

    FPoly() = default;
    FPoly(const FqField* f, std::vector<fcode> coeffs);
    int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    bool is_monic() const;
    fcode coeff(int i) const { return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : 0; }
    fcode eval(fcode x) const;
    bool operator==(const FPoly& o) const { return F == o.F && c == o.c; }
    bool operator<(const FPoly& o) const;  // by degree, then packed codes (deterministic)
    std::string to_string(const std::string& var = "t") const;
};

FPoly fp_zero(const FqField* F);
FPoly fp_one(const FqField* F);
FPoly fp_var(const FqField* F);  // t
FPoly fp_add(const FPoly& a, const FPoly& b);
FPoly fp_sub(const FPoly& a, const FPoly& b);
FPoly fp_neg(const FPoly& a);
FPoly fp_mul(const FPoly& a, const FPoly& b);
FPoly fp_scale(const FPoly& a, fcode s);
std::pair<FPoly, FPoly> fp_divmod(const FPoly& a, const FPoly& b);
FPoly fp_mod(const FPoly& a, const FPoly& b);
FPoly fp_gcd(FPoly a, FPoly b);  // monic
FPoly fp_derivative(const FPoly& a);
FPoly fp_monic(const FPoly& a);
FPoly fp_powmod(const FPoly& a, const Int& e, const FPoly& mod);
bool fp_is_irreducible(const FPoly& f);
// Irreducible factors with multiplicities, deterministically ordered.
std::vector<std::pair<FPoly, int>> fp_factor(const FPoly& f);
std::vector<fcode> fp_roots(const FPoly& f);  // roots in F, ascending codes

// A finite field F_{p^k}; immutable after construction, shared via factory.
class FqField {
public:
    long p;                     // characteristic
    int abs_deg;                // [F : F_p]
    const FqField* base;        // nullptr for the prime field
    int rel_deg;                // [F : base] (1 for prime field)
    std::uint64_t size;         // p^abs_deg
    std::vector<fcode> modulus;  // over base, monic, length rel_deg+1 (empty for prime)
    int uid = 0;                 // registry id, distinguishes same-size constructions

    static const FqField& prime(long p);
    // Canonical degree-k extension: lexicographically least monic irreducible
    // modulus (ascending packed code of the non-leading coefficients).
    static const FqField& extension(const FqField& base, int k);
    static const FqField& extension(const FqField& base, const FPoly& modulus);

    fcode zero() const { return 0; }
    fcode one() const { return 1; }
    fcode add(fcode a, fcode b) const;
    fcode sub(fcode a, fcode b) const;
    fcode neg(fcode a) const;
    fcode mul(fcode a, fcode b) const {
        if (a == 0 || b == 0) return 0;
        std::uint64_t e = static_cast<std::uint64_t>(log_[a]) + log_[b];
        if (e >= size - 1) e -= size - 1;
        return exp_[e];
    }
    fcode inv(fcode a) const {
        if (a == 0) throw std::domain_error("FqField: inverse of zero");
        std::uint32_t l = log_[a];
        return exp_[l == 0 ? 0 : size - 1 - l];
    }
    fcode pow(fcode a, Int e) const;
    fcode from_int(long v) const;
    long dlog(fcode a) const {  // w.r.t. the stored generator
        if (a == 0) throw std::domain_error("FqField: dlog of zero");
        return static_cast<long>(log_[a]);
    }
    fcode generator() const { return exp_[1]; }
    fcode frobenius(fcode a) const { return frob_p_[a]; }  // x -> x^p
    fcode frobenius_pow(fcode a, long s) const;            // x -> x^{p^s}
    fcode frobenius_base(fcode a) const;                   // x -> x^{|base|}
    long trace_to_prime(fcode a) const { return tr_p_[a]; }  // in [0, p)
    fcode trace_to_base(fcode a) const;
    fcode norm_to_base(fcode a) const;

    // Embedding of a subfield (same p, S.abs_deg | abs_deg); deterministic
    // (least-root image of S's generator), cached per pair.
    fcode embed_from(const FqField& S, fcode a) const;

    // coefficient digits of a over the base field (length rel_deg)
    std::vector<fcode> digits(fcode a) const;
    fcode from_digits(const std::vector<fcode>& d) const;

    std::string elt_to_string(fcode a) const;

    FqField(const FqField&) = delete;
    FqField& operator=(const FqField&) = delete;

private:
    FqField() = default;
    void build_tables();
    fcode raw_mul(fcode a, fcode b) const;  // tower polynomial arithmetic

    fcode one_ = 1;
    std::vector<std::uint32_t> log_;   // element code -> exponent
    std::vector<fcode> exp_;           // exponent -> element code
    std::vector<fcode> frob_p_;        // x -> x^p
    std::vector<std::uint8_t> tr_p_;   // absolute trace in [0,p)
    mutable std::map<const FqField*, std::vector<fcode>> embed_cache_;  // powers of root image
    mutable std::mutex embed_mu_;
    static std::mutex registry_mu_;
    static std::map<std::pair<const FqField*, std::vector<fcode>>, std::unique_ptr<FqField>>&
    registry();
    static std::map<long, std::unique_ptr<FqField>>& prime_registry();
};

// make_field(p, k): F_{p^k} as the canonical extension of F_p.
const FqField& make_field(long p, int k);

// A closed point of the affine line over `base`: a monic irreducible polynomial.
struct ClosedPoint {
    const FqField* base = nullptr;
    FPoly poly;
    int degree() const { return poly.deg(); }
    bool operator==(const ClosedPoint& o) const { return poly == o.poly; }
    bool operator<(const ClosedPoint& o) const { return poly < o.poly; }
};

// First `count` monic irreducibles of degree d over `field`, ascending packed
// code; throws if fewer exist ("insufficient points for this base field").
std::vector<ClosedPoint> closed_points(const FqField& field, int d, int count);

// All monic irreducibles of degree d (ascending).
std::vector<ClosedPoint> all_closed_points(const FqField& field, int d);

// Factorization of the point's polynomial over the canonical extension
// F_{q^e}; gcd(e,d) points each of degree d/gcd(e,d), ascending.
std::vector<ClosedPoint> base_change_point(const ClosedPoint& point, int e);

}  // namespace paracount
