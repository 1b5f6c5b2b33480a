#pragma once

#include "paracount/formula.hpp"

namespace paracount {

// Semisimple adjoint orbit of gl_n over a residue field, given by its
// characteristic polynomial factored into irreducibles with multiplicities.
struct OrbitSpec {
    const FqField* R = nullptr;
    std::vector<std::pair<FPoly, int>> factors;  // distinct monic irreducibles

    int rank() const;
    FPoly characteristic() const;
    long dim_closure() const;  // dim of the orbit over the closure
    Partition type() const;    // eigenvalue multiplicities, sorted decreasing
    fcode trace() const;       // in R
    std::string to_string() const;
};

struct GenericityReport {
    bool generic = false;
    std::string witness;  // violating selection or trace defect when not generic
};

// Genericity over the splitting field: no partial eigenvalue selection sums to
// zero and the total trace vanishes; Frobenius translates of each orbit are
// included per the base-change description.
GenericityReport check_generic(const std::vector<OrbitSpec>& specs, const DivisorSpec& D);

// Deterministic search (ascending characteristic-polynomial codes) for a
// generic tuple of semisimple orbits of type mu; throws when the search space
// is exhausted or char(k) divides d! for d = min_i max_j mu^i_j.
std::vector<OrbitSpec> find_generic(int n, const DivisorSpec& D, const Multipartition& mu);

// Twisted regular variant: at point i the factor degrees follow the parts of
// lambda^i, all multiplicities 1.
std::vector<OrbitSpec> find_generic_twisted(int n, const DivisorSpec& D,
                                            const Multipartition& lambda);

// |Y_A^E|: tuples in the orbits satisfying the trace pairing against End(E).
Int y_count(const BundleContext& ctx, const DivisorSpec& D, const std::vector<OrbitSpec>& specs);
// |X_A^E| = q^{delta_E} |Y_A^E|
Int x_count(const BundleContext& ctx, const DivisorSpec& D, const std::vector<OrbitSpec>& specs);
// |X_A^E| by gl_n Fourier transforms; must agree with x_count
Int fourier_count(const BundleContext& ctx, const DivisorSpec& D,
                  const std::vector<OrbitSpec>& specs);

// d_A = sum d_i dim A_i - 2n^2 + 2
long d_dim(const std::vector<OrbitSpec>& specs, const DivisorSpec& D);
// epsilon_lambda = (-1)^{rn + sum_i l(lambda^i)}
int epsilon_r(int n, const Multipartition& lambda);

// |X|/|PAut| = q^{d_A/2} A_mu(q), A by brute force (and by the master formula
// when a cache is supplied).
VerifyReport verify_maintheo(const BundleShape& shape, const DivisorSpec& D,
                             const Multipartition& mu, HPolyCache* cache = nullptr);

// epsilon_lambda q^{-d_S/2} |X_{S_lambda}|/|PAut| equals the p-pairing value.
VerifyReport verify_lasttheo(const BundleShape& shape, const DivisorSpec& D,
                             const Multipartition& lambda, HPolyCache& cache);

// Literal-summation check of the group/Lie character-sum identity
// (q-1) sum_{End} prod R^{gl}(eta_i) = q sum_{Aut} prod R^{GL}(alpha_i).
VerifyReport verify_charsum(const BundleShape& shape, const DivisorSpec& D,
                            const Multipartition& mu);

}  // namespace paracount
