#pragma once

#include <map>
#include <vector>

#include "paracount/qpoly.hpp"

namespace paracount {

using Partition = std::vector<int>;                 // weakly decreasing positive parts
using Multipartition = std::vector<Partition>;      // shared with the counting module

std::vector<Partition> partitions_of(int n);
int partition_size(const Partition& lam);
Partition partition_conjugate(const Partition& lam);
Int z_lambda(const Partition& lam);                 // prod i^{m_i} m_i!
long n_stat(const Partition& lam);                  // sum (i-1) lam_i
int sign_eps(const Partition& lam);                 // (-1)^{|lam| - l(lam)}
std::string partition_to_string(const Partition& lam);

enum class SymBasis { m, h, p, s, e };

// An element of Q(q) (x) Lambda(x_tag): finite coefficient map in one basis.
struct SymExpr {
    int var_tag = 0;
    SymBasis basis = SymBasis::p;
    std::map<Partition, QRat> coeff;
};

SymExpr sym_unit(int tag, SymBasis basis, const Partition& lam);  // one basis element
SymExpr sym_convert(const SymExpr& f, SymBasis target);
SymExpr sym_add(const SymExpr& a, const SymExpr& b);
SymExpr sym_mul(const SymExpr& a, const SymExpr& b);
SymExpr sym_scale(const SymExpr& a, const QRat& c);
QRat hall_pair(const SymExpr& a, const SymExpr& b);
// p_k -> p_{ke} on the symmetric part and q -> q^e on coefficients
SymExpr plethysm_power(const SymExpr& f, long e);
// q -> q^e on coefficients only
SymExpr sym_subst_q_power(const SymExpr& f, long e);

// character chi^lam at cycle type rho (Murnaghan-Nakayama), |lam| = |rho|
Int symchar(const Partition& lam, const Partition& rho);
// Kostka number <s_lam, h_mu>
Int kostka_number(const Partition& lam, const Partition& mu);
// classical Kostka-Foulkes K_{lam,mu}(q): charge generating function over SSYT
QPoly charge_kostka_foulkes(const Partition& lam, const Partition& mu);
// coefficient of s_lam in the modified Hall-Littlewood H~_mu: cocharge version
QPoly kostka_foulkes_modified(const Partition& lam, const Partition& mu);
// spec orientation: K~_{lam,mu}(q) with H~_lam = sum_mu K~_{lam,mu}(q) s_mu
QPoly kostka_foulkes(const Partition& lam, const Partition& mu);

// H~_lam(x_tag; q) in the s-basis
SymExpr modified_hl(int tag, const Partition& lam);

// Independent finite-field determination of the K~ matrix for size n: the
// fixed-flag-count polynomials of unipotent classes are interpolated in q and
// the unitriangular Kostka system is solved.  Returns K~[lam][mu] with the
// same orientation as kostka_foulkes.
std::map<Partition, std::map<Partition, QPoly>> kostka_foulkes_oracle(int n);

// ------------------------------------------------------------ TruncSeries ----

// Truncated series in bundle-type variables Y^m (m over a fixed ladder) with
// per-point symmetric content, exact Q(q) coefficients.  A key stores the
// exponent vector and the per-point partitions; the symmetric content is held
// in the p-basis internally.  Only the positive-rank part is stored: a series
// g = 1 + f is represented by f.
class TruncSeries {
public:
    TruncSeries(int rank_cap, int npoints, int ladder_len);

    struct Key {
        std::vector<int> m;
        Multipartition lam;  // p-basis indices, one per point
        bool operator<(const Key& o) const;
        bool operator==(const Key& o) const { return m == o.m && lam == o.lam; }
    };

    int rank_cap() const { return rank_cap_; }
    int npoints() const { return npoints_; }
    int ladder_len() const { return ladder_len_; }
    const std::map<Key, QRat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_p_term(const std::vector<int>& m, const Multipartition& lam, const QRat& c);
    // m-basis interface (used for M/A-count coefficients)
    void add_m_term(const std::vector<int>& m, const Multipartition& mu, const QRat& c);
    QRat m_coeff(const std::vector<int>& m, const Multipartition& mu) const;

    TruncSeries add(const TruncSeries& o) const;
    TruncSeries scale(const QRat& c) const;
    TruncSeries mul(const TruncSeries& o) const;   // truncated at rank_cap
    TruncSeries psi(long d) const;                 // q->q^d, Y->Y^d, p_k->p_{kd}

    // Log(1 + f) where f = *this (requires pure positive rank)
    TruncSeries pleth_log_of_one_plus() const;
    // Exp(f) - 1
    TruncSeries pleth_exp_minus_one() const;

    bool operator==(const TruncSeries& o) const;

private:
    int rank_of(const Key& k) const;
    TruncSeries pow(int k) const;
    int rank_cap_, npoints_, ladder_len_;
    std::map<Key, QRat> terms_;
};

}  // namespace paracount
