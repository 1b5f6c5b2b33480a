#pragma once

#include "paracount/count.hpp"
#include "paracount/symfunc.hpp"

namespace paracount {

// Combinatorial type: finite multiset of (degree e, multipartition nu) with
// all coordinates of each nu nonempty of equal size.
struct TypeOmega {
    struct Entry {
        int e;
        Multipartition nu;
        int mult;
        bool operator<(const Entry& o) const;
    };
    std::vector<Entry> entries;  // sorted, multiplicities positive

    int size() const;    // sum e * |nu| * mult  (Levi decomposition size)
    int length() const;  // sum mult
    bool single_degree(int* e_out = nullptr) const;
    std::string to_string() const;
};

// All types of size n with r coordinates per multipartition.
std::vector<TypeOmega> enumerate_types(int n, int r);

// Log-expansion coefficient; zero unless the type has a single degree.
Rat c_omega(const TypeOmega& w);

using DegreeProfile = std::vector<int>;

// number of w-invariant m-subsets of {1..l}, w of cycle type `profile`
long chi_subsets(int l, int m, const DegreeProfile& profile);

// ascending prime-power sample fields with enough closed points per degree
std::vector<const FqField*> sampling_fields(const DegreeProfile& profile, int count,
                                            std::uint64_t min_q = 2);

// ------------------------------------------------------------ H-polynomials ----

// Interpolated unipotent H-functions H_nu^{(b;v)}(q) and their raw numerators,
// cached in memory and optionally on disk (content-addressed JSON files).
class HPolyCache {
public:
    explicit HPolyCache(std::string cache_dir = "", int jobs = 0);

    // exponent vector v over `ladder` (the fixed b-list), one partition of
    // rank(v) per point of the profile
    QRat h_polynomial(const std::vector<int>& ladder, const std::vector<int>& v,
                      const Multipartition& nu, const DegreeProfile& profile);

    int jobs() const { return jobs_; }

private:
    // numerator counts for all nu at one sample field, batched
    const std::map<Multipartition, Int>& batch(const BundleShape& sub, const DegreeProfile& profile,
                                               const FqField& F);
    std::string cache_dir_;
    int jobs_;
    std::map<std::string, QRat> hpoly_;
    std::map<std::string, std::map<Multipartition, Int>> batches_;
    std::mutex mu_;
};

// --------------------------------------------------------------- formulas ----

// A_mu^{(b;m)}(q) by the master formula; asserts integer coefficients.
QPoly a_formula(const BundleShape& shape, const DegreeProfile& profile, const Multipartition& mu,
                HPolyCache& cache);

// Same pipeline with the Hall pairing taken against power sums p_lambda.
QPoly pair_with_power(const BundleShape& shape, const DegreeProfile& profile,
                      const Multipartition& lam, HPolyCache& cache);

// Rank-2 closed forms (bundle O(a) + O(b), borelic structures).
QPoly rank2_closed(int a, int b, const DegreeProfile& profile);
// Closed form of the d-independent degree sum over rank-2 shapes.
QPoly sumind_closed(const DegreeProfile& profile);

// Sum of a_formula over all shapes of rank n and degree d (gap-bounded).
QPoly degree_sum_A(int n, int d, const DegreeProfile& profile, const Multipartition& mu,
                   HPolyCache& cache);

struct VerifyReport {
    bool pass = true;
    std::vector<std::string> lines;
    void check(bool ok, const std::string& what);
};

// Hua/plethystic-log consistency at rank <= n_max (supported: n_max <= 2):
// the Log of the interpolated M-count series must reproduce the interpolated
// A-count polynomials coefficient by coefficient.
VerifyReport verify_hua(int n_max, const DegreeProfile& profile);

// degree-sum independence report: compares degree d against d+1 and, in rank
// 2, against the closed form
VerifyReport verify_degree_sum(int n, int d, const DegreeProfile& profile,
                               const Multipartition& mu, HPolyCache& cache);

// Galois-descent relations on the divisible example O(0)^n, mu = ((n),...):
// I(q) = A(q) + sum_{1<d|n} sum_{r|d} mu(r)/d A_{/d}(q^{d/r}) with the
// base-changed divisors on the right.
VerifyReport verify_descent(long q, const DegreeProfile& profile);

// A-counts are identical across all choices of points with the given degree
// profile (numeric evidence for position independence).
VerifyReport verify_position(const BundleShape& shape, long p, int k,
                             const DegreeProfile& profile, const Multipartition& mu);

// charge-statistic Kostka-Foulkes matches the finite-field oracle (n <= nmax)
// and has nonnegative integer coefficients up to nmax+1
VerifyReport verify_kostka(int nmax);

}  // namespace paracount
