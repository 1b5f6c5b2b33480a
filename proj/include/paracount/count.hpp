#pragma once

#include <map>

#include "paracount/bundle.hpp"
#include "paracount/cyclotomic.hpp"

namespace paracount {

// r-tuple of partitions, all of the same size n
using Multipartition = std::vector<std::vector<int>>;

std::string multipartition_to_string(const Multipartition& mu);
Multipartition full_flags(int n, int r);   // ((1^n), ..., (1^n))
Multipartition no_flags(int n, int r);     // ((n), ..., (n))

// Enumeration cap; PARACOUNT_CAP overrides the default 2^24.
std::uint64_t enumeration_cap();

// Parallel width of the inner sums (default: available parallelism).
void set_jobs(int jobs);
int get_jobs();

// Basis of the subalgebra End(E,E) of endomorphisms preserving one flag per point.
struct EndAlgebra {
    const BundleContext* ctx = nullptr;
    std::vector<EndElement> basis;
    int dim() const { return static_cast<int>(basis.size()); }
};

EndAlgebra end_algebra(const BundleContext& ctx, const DivisorSpec& D,
                       const std::vector<PartialFlag>& flags);

// Geometric indecomposability: no non-scalar element with squarefree minimal
// polynomial.  Indecomposability: every element nilpotent or invertible.
bool is_geom_indecomposable(const EndAlgebra& alg, std::uint64_t cap = (1ULL << 20));
bool is_indecomposable(const EndAlgebra& alg, std::uint64_t cap = (1ULL << 20));

// number of Aut(E)-orbits on flag tuples of type mu (Burnside average)
Int count_M(const BundleContext& ctx, const DivisorSpec& D, const Multipartition& mu);

// orbit counts filtered by the indecomposability tests (union-find over Aut)
Int count_A_direct(const BundleContext& ctx, const DivisorSpec& D, const Multipartition& mu);
Int count_I_direct(const BundleContext& ctx, const DivisorSpec& D, const Multipartition& mu);

// Burnside sum weighted by an order-n character of F_q^x composed with det;
// requires n | q-1, asserts the cyclotomic sum is a rational integer.
Int count_A_twist(const BundleContext& ctx, const DivisorSpec& D, const Multipartition& mu);

// (#{h in Aut : evaluate(h, a_i) in C_i for all i}) / |Aut|
Rat class_count_H(const BundleContext& ctx, const DivisorSpec& D,
                  const std::vector<ClassInvariant>& classes);

// Batched unipotent-specialization numerators: for every multipartition nu,
// #{h in End(E) : h(a_i) nilpotent of type nu^i for all i}.  Closed form for
// single-block shapes, direct enumeration otherwise.
std::map<Multipartition, Int> nilpotent_eval_counts(const BundleContext& ctx,
                                                    const DivisorSpec& D,
                                                    std::uint64_t cap = 0 /*=enumeration_cap*/);

}  // namespace paracount
