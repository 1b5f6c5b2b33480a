#include "paracount/symfunc.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>

#include "paracount/ffmat.hpp"

namespace paracount {

std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    Partition cur;
    std::function<void(int, int)> rec = [&](int left, int maxp) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(left, maxp); part >= 1; --part) {
            cur.push_back(part);
            rec(left - part, part);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

int partition_size(const Partition& lam) { return std::accumulate(lam.begin(), lam.end(), 0); }

Partition partition_conjugate(const Partition& lam) {
    Partition c;
    for (int s = 1;; ++s) {
        int cnt = 0;
        for (int part : lam)
            if (part >= s) ++cnt;
        if (cnt == 0) break;
        c.push_back(cnt);
    }
    return c;
}

Int z_lambda(const Partition& lam) {
    std::map<int, int> mult;
    for (int part : lam) mult[part]++;
    Int z = 1;
    for (auto [part, m] : mult) {
        for (int i = 1; i <= m; ++i) z *= Int(part) * i;
    }
    return z;
}

long n_stat(const Partition& lam) {
    long s = 0;
    for (size_t i = 0; i < lam.size(); ++i) s += static_cast<long>(i) * lam[i];
    return s;
}

int sign_eps(const Partition& lam) {
    return ((partition_size(lam) - static_cast<int>(lam.size())) % 2 == 0) ? 1 : -1;
}

std::string partition_to_string(const Partition& lam) {
    std::string s = "(";
    for (size_t i = 0; i < lam.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(lam[i]);
    }
    return s + ")";
}

// ------------------------------------------------------- transition tables ----

namespace {

struct DegreeTables {
    std::vector<Partition> parts;
    std::map<Partition, int> index;
    // h_mu = sum_rho H[mu][rho] p_rho
    std::vector<std::vector<Rat>> H;
    // p_rho = sum_mu B[rho][mu] h_mu (B = H^{-1})
    std::vector<std::vector<Rat>> B;
    // s_lam = sum_rho S[lam][rho] p_rho, S[lam][rho] = chi^lam(rho)/z_rho
    std::vector<std::vector<Rat>> S;
    // e_mu = sum_rho E[mu][rho] p_rho
    std::vector<std::vector<Rat>> E;
};

Int symchar_impl(Partition lam, Partition rho, std::map<std::pair<Partition, Partition>, Int>& memo);

const DegreeTables& degree_tables(int n) {
    static std::map<int, DegreeTables> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    DegreeTables T;
    T.parts = partitions_of(n);
    for (size_t i = 0; i < T.parts.size(); ++i) T.index[T.parts[i]] = static_cast<int>(i);
    size_t N = T.parts.size();
    // p-expansions of h_mu and e_mu by multiplying single-row expansions
    auto expand_prod = [&](const Partition& mu, bool elementary) {
        // start with the empty product: coefficient 1 on the empty partition
        std::map<Partition, Rat> acc;
        acc[{}] = 1;
        for (int part : mu) {
            std::map<Partition, Rat> next;
            for (const auto& rho : partitions_of(part)) {
                Rat c = Rat(1) / Rat(z_lambda(rho));
                if (elementary && sign_eps(rho) < 0) c = -c;
                for (const auto& [base, bc] : acc) {
                    Partition merged = base;
                    merged.insert(merged.end(), rho.begin(), rho.end());
                    std::sort(merged.rbegin(), merged.rend());
                    next[merged] += bc * c;
                }
            }
            acc = std::move(next);
        }
        std::vector<Rat> row(N, Rat(0));
        for (const auto& [rho, c] : acc) row[T.index.at(rho)] = c;
        return row;
    };
    T.H.resize(N);
    T.E.resize(N);
    for (size_t i = 0; i < N; ++i) {
        T.H[i] = expand_prod(T.parts[i], false);
        T.E[i] = expand_prod(T.parts[i], true);
    }
    // invert H by Gaussian elimination over Q
    std::vector<std::vector<Rat>> M(N, std::vector<Rat>(2 * N, Rat(0)));
    for (size_t i = 0; i < N; ++i) {
        for (size_t j = 0; j < N; ++j) M[i][j] = T.H[i][j];
        M[i][N + i] = 1;
    }
    for (size_t col = 0, row = 0; col < N && row < N; ++col) {
        size_t piv = row;
        while (piv < N && M[piv][col] == 0) ++piv;
        if (piv == N) throw std::logic_error("degree_tables: singular transition matrix");
        std::swap(M[piv], M[row]);
        Rat inv = 1 / M[row][col];
        for (size_t j = 0; j < 2 * N; ++j) M[row][j] *= inv;
        for (size_t i = 0; i < N; ++i) {
            if (i == row) continue;
            Rat f = M[i][col];
            if (f == 0) continue;
            for (size_t j = 0; j < 2 * N; ++j) M[i][j] -= f * M[row][j];
        }
        ++row;
    }
    // M now holds [I | H^{-1}]; B[rho][mu] = (H^{-1})[rho][mu]
    T.B.assign(N, std::vector<Rat>(N, Rat(0)));
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) T.B[i][j] = M[i][N + j];
    // Schur functions via characters
    std::map<std::pair<Partition, Partition>, Int> memo;
    T.S.assign(N, std::vector<Rat>(N, Rat(0)));
    for (size_t l = 0; l < N; ++l)
        for (size_t r = 0; r < N; ++r)
            T.S[l][r] = Rat(symchar_impl(T.parts[l], T.parts[r], memo)) / Rat(z_lambda(T.parts[r]));
    return cache.emplace(n, std::move(T)).first->second;
}

// Murnaghan-Nakayama via beta-sets
Int symchar_impl(Partition lam, Partition rho,
                 std::map<std::pair<Partition, Partition>, Int>& memo) {
    while (!lam.empty() && lam.back() == 0) lam.pop_back();
    while (!rho.empty() && rho.back() == 0) rho.pop_back();
    if (rho.empty()) return lam.empty() ? 1 : 0;
    auto key = std::make_pair(lam, rho);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    int r = rho[0];
    Partition rho_rest(rho.begin() + 1, rho.end());
    int L = static_cast<int>(lam.size());
    std::vector<int> beta(L);
    for (int i = 0; i < L; ++i) beta[i] = lam[i] + (L - 1 - i);
    std::set<int> bs(beta.begin(), beta.end());
    Int total = 0;
    for (int i = 0; i < L; ++i) {
        int target = beta[i] - r;
        if (target < 0 || bs.count(target)) continue;
        int between = 0;
        for (int b : beta)
            if (b > target && b < beta[i]) ++between;
        std::vector<int> nb = beta;
        nb[i] = target;
        std::sort(nb.rbegin(), nb.rend());
        Partition nl(L);
        for (int k = 0; k < L; ++k) nl[k] = nb[k] - (L - 1 - k);
        while (!nl.empty() && nl.back() == 0) nl.pop_back();
        for (int part : nl)
            if (part < 0) throw std::logic_error("symchar: bad strip removal");
        Int term = symchar_impl(nl, rho_rest, memo);
        total += (between % 2 == 0) ? term : -term;
    }
    memo.emplace(key, total);
    return total;
}

}  // namespace

Int symchar(const Partition& lam, const Partition& rho) {
    static std::map<std::pair<Partition, Partition>, Int> memo;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    return symchar_impl(lam, rho, memo);
}

Int kostka_number(const Partition& lam, const Partition& mu) {
    const auto& T = degree_tables(partition_size(lam));
    int li = T.index.at(lam), mi = T.index.at(mu);
    Rat acc = 0;
    for (size_t r = 0; r < T.parts.size(); ++r)
        acc += T.S[li][r] * T.H[mi][r] * Rat(z_lambda(T.parts[r]));
    if (!is_integer(acc)) throw std::logic_error("kostka_number: non-integer");
    return acc.get_num();
}

// ---------------------------------------------------------------- SymExpr ----

SymExpr sym_unit(int tag, SymBasis basis, const Partition& lam) {
    SymExpr f;
    f.var_tag = tag;
    f.basis = basis;
    f.coeff[lam] = QRat(QPoly(Rat(1)));
    return f;
}

namespace {

// expansion of one basis element into the p-basis, per degree tables
std::vector<std::pair<Partition, Rat>> to_p_row(SymBasis basis, const Partition& lam) {
    std::vector<std::pair<Partition, Rat>> out;
    if (lam.empty()) {
        out.emplace_back(Partition{}, Rat(1));
        return out;
    }
    const auto& T = degree_tables(partition_size(lam));
    int li = T.index.at(lam);
    switch (basis) {
        case SymBasis::p:
            out.emplace_back(lam, Rat(1));
            break;
        case SymBasis::h:
            for (size_t r = 0; r < T.parts.size(); ++r)
                if (T.H[li][r] != 0) out.emplace_back(T.parts[r], T.H[li][r]);
            break;
        case SymBasis::e:
            for (size_t r = 0; r < T.parts.size(); ++r)
                if (T.E[li][r] != 0) out.emplace_back(T.parts[r], T.E[li][r]);
            break;
        case SymBasis::s:
            for (size_t r = 0; r < T.parts.size(); ++r)
                if (T.S[li][r] != 0) out.emplace_back(T.parts[r], T.S[li][r]);
            break;
        case SymBasis::m:
            for (size_t r = 0; r < T.parts.size(); ++r) {
                Rat c = T.B[r][li] / Rat(z_lambda(T.parts[r]));
                if (c != 0) out.emplace_back(T.parts[r], c);
            }
            break;
    }
    return out;
}

// coefficient functional: value of <p_rho, basis-dual read-off> used when
// converting from p to the target basis
QRat from_p_coeff(SymBasis target, const Partition& tgt, const std::map<Partition, QRat>& pc) {
    // c_tgt = sum_rho a_rho * <dual pairing>
    QRat acc;
    if (pc.empty()) return acc;
    for (const auto& [rho, a] : pc) {
        if (partition_size(rho) != partition_size(tgt)) continue;
        const auto& T = degree_tables(partition_size(rho));
        int ri = T.index.at(rho), ti = T.index.at(tgt);
        Rat w;
        switch (target) {
            case SymBasis::p:
                w = (rho == tgt) ? Rat(1) : Rat(0);
                break;
            case SymBasis::m:
                // coefficient on m_tgt: <f, h_tgt> = sum a_rho z_rho H[tgt][rho]
                w = T.H[ti][ri] * Rat(z_lambda(rho));
                break;
            case SymBasis::h:
                // coefficient on h_tgt: <f, m_tgt> = sum a_rho z_rho M2P[tgt][rho]
                w = T.B[ri][ti];
                break;
            case SymBasis::s:
                // <f, s_tgt> = sum a_rho z_rho S[tgt][rho]
                w = T.S[ti][ri] * Rat(z_lambda(rho));
                break;
            case SymBasis::e:
                throw std::domain_error("sym_convert: conversion to e not supported");
        }
        if (w != 0) acc += a * QRat(QPoly(w));
    }
    return acc;
}

}  // namespace

SymExpr sym_convert(const SymExpr& f, SymBasis target) {
    if (f.basis == target) return f;
    // to p first
    SymExpr p;
    p.var_tag = f.var_tag;
    p.basis = SymBasis::p;
    for (const auto& [lam, c] : f.coeff) {
        if (c.is_zero()) continue;
        for (const auto& [rho, w] : to_p_row(f.basis, lam)) {
            auto itr = p.coeff.find(rho);
            QRat add = c * QRat(QPoly(w));
            if (itr == p.coeff.end())
                p.coeff[rho] = add;
            else
                itr->second += add;
        }
    }
    if (target == SymBasis::p) return p;
    SymExpr out;
    out.var_tag = f.var_tag;
    out.basis = target;
    std::set<int> degrees;
    for (const auto& [rho, c] : p.coeff)
        if (!c.is_zero()) degrees.insert(partition_size(rho));
    for (int n : degrees) {
        std::map<Partition, QRat> layer;
        for (const auto& [rho, c] : p.coeff)
            if (partition_size(rho) == n && !c.is_zero()) layer[rho] = c;
        for (const auto& tgt : partitions_of(n)) {
            QRat c = from_p_coeff(target, tgt, layer);
            if (!c.is_zero()) out.coeff[tgt] = c;
        }
    }
    return out;
}

SymExpr sym_add(const SymExpr& a, const SymExpr& b) {
    if (a.var_tag != b.var_tag) throw std::domain_error("sym_add: mixed variable sets");
    SymExpr bb = sym_convert(b, a.basis);
    SymExpr out = a;
    for (const auto& [lam, c] : bb.coeff) {
        auto it = out.coeff.find(lam);
        if (it == out.coeff.end())
            out.coeff[lam] = c;
        else
            it->second += c;
    }
    return out;
}

SymExpr sym_mul(const SymExpr& a, const SymExpr& b) {
    if (a.var_tag != b.var_tag) throw std::domain_error("sym_mul: mixed variable sets");
    SymExpr pa = sym_convert(a, SymBasis::p), pb = sym_convert(b, SymBasis::p);
    SymExpr out;
    out.var_tag = a.var_tag;
    out.basis = SymBasis::p;
    for (const auto& [la, ca] : pa.coeff)
        for (const auto& [lb, cb] : pb.coeff) {
            Partition merged = la;
            merged.insert(merged.end(), lb.begin(), lb.end());
            std::sort(merged.rbegin(), merged.rend());
            QRat add = ca * cb;
            auto it = out.coeff.find(merged);
            if (it == out.coeff.end())
                out.coeff[merged] = add;
            else
                it->second += add;
        }
    return out;
}

SymExpr sym_scale(const SymExpr& a, const QRat& c) {
    SymExpr out = a;
    for (auto& [lam, v] : out.coeff) v *= c;
    return out;
}

QRat hall_pair(const SymExpr& a, const SymExpr& b) {
    if (a.var_tag != b.var_tag) throw std::domain_error("hall_pair: mixed variable sets");
    SymExpr pa = sym_convert(a, SymBasis::p), pb = sym_convert(b, SymBasis::p);
    QRat acc;
    for (const auto& [lam, ca] : pa.coeff) {
        auto it = pb.coeff.find(lam);
        if (it == pb.coeff.end()) continue;
        acc += ca * it->second * QRat(QPoly(Rat(z_lambda(lam))));
    }
    return acc;
}

SymExpr plethysm_power(const SymExpr& f, long e) {
    SymExpr p = sym_convert(f, SymBasis::p);
    SymExpr out;
    out.var_tag = f.var_tag;
    out.basis = SymBasis::p;
    for (const auto& [lam, c] : p.coeff) {
        Partition scaled = lam;
        for (int& part : scaled) part = static_cast<int>(part * e);
        out.coeff[scaled] = c.subst_power(e);
    }
    return out;
}

SymExpr sym_subst_q_power(const SymExpr& f, long e) {
    SymExpr out = f;
    for (auto& [lam, c] : out.coeff) c = c.subst_power(e);
    return out;
}

// ------------------------------------------------------------------ charge ----

namespace {

long charge_of_standard(const std::vector<int>& pos) {
    // pos[k] = position of letter k+1; index(1) = 0, and index increments
    // exactly when the next letter sits to the right of the previous one
    long charge = 0, idx = 0;
    for (size_t k = 1; k < pos.size(); ++k) {
        if (pos[k] > pos[k - 1]) ++idx;
        charge += idx;
    }
    return charge;
}

long charge_of_word(std::vector<int> w) {
    long total = 0;
    while (!w.empty()) {
        int maxval = *std::max_element(w.begin(), w.end());
        std::vector<bool> chosen(w.size(), false);
        std::vector<int> pos(maxval, -1);
        // rightmost 1, then scan left (cyclically) for 2, 3, ...
        int cur = -1;
        for (int i = static_cast<int>(w.size()) - 1; i >= 0; --i)
            if (w[i] == 1) {
                cur = i;
                break;
            }
        if (cur < 0) throw std::logic_error("charge: content not a partition");
        chosen[cur] = true;
        pos[0] = cur;
        for (int val = 2; val <= maxval; ++val) {
            int found = -1;
            for (int step = 1; step <= static_cast<int>(w.size()); ++step) {
                int i = cur - step;
                while (i < 0) i += static_cast<int>(w.size());
                if (!chosen[i] && w[i] == val) {
                    found = i;
                    break;
                }
            }
            if (found < 0) throw std::logic_error("charge: content not a partition");
            chosen[found] = true;
            pos[val - 1] = found;
            cur = found;
        }
        total += charge_of_standard(pos);
        std::vector<int> rest;
        for (size_t i = 0; i < w.size(); ++i)
            if (!chosen[i]) rest.push_back(w[i]);
        w = std::move(rest);
    }
    return total;
}

void enumerate_ssyt(const Partition& shape, const Partition& content,
                    const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
    int rows = static_cast<int>(shape.size());
    std::vector<std::vector<int>> T(rows);
    for (int r = 0; r < rows; ++r) T[r].assign(shape[r], 0);
    std::vector<int> quota(content.begin(), content.end());
    std::function<void(int, int)> rec = [&](int r, int c) {
        if (r == rows) {
            fn(T);
            return;
        }
        int nr = r, nc = c + 1;
        if (nc >= shape[r]) {
            nr = r + 1;
            nc = 0;
        }
        int lo = 1;
        if (c > 0) lo = std::max(lo, T[r][c - 1]);
        if (r > 0) lo = std::max(lo, T[r - 1][c] + 1);
        for (int v = lo; v <= static_cast<int>(quota.size()); ++v) {
            if (quota[v - 1] == 0) continue;
            --quota[v - 1];
            T[r][c] = v;
            rec(nr, nc);
            ++quota[v - 1];
        }
    };
    if (rows == 0) {
        fn(T);
        return;
    }
    rec(0, 0);
}

}  // namespace

QPoly charge_kostka_foulkes(const Partition& lam, const Partition& mu) {
    if (partition_size(lam) != partition_size(mu))
        throw std::domain_error("kostka_foulkes: size mismatch");
    std::map<long, long> hist;
    enumerate_ssyt(lam, mu, [&](const std::vector<std::vector<int>>& T) {
        std::vector<int> word;
        for (int r = static_cast<int>(T.size()) - 1; r >= 0; --r)
            for (int v : T[r]) word.push_back(v);
        hist[charge_of_word(word)] += 1;
    });
    std::vector<Rat> coeffs;
    for (const auto& [c, n] : hist) {
        if (static_cast<size_t>(c) >= coeffs.size()) coeffs.resize(c + 1, Rat(0));
        coeffs[c] = Rat(n);
    }
    return QPoly::from_coeffs(std::move(coeffs));
}

QPoly kostka_foulkes_modified(const Partition& lam, const Partition& mu) {
    // coefficient of s_lam in H~_mu: cocharge = n(mu) - charge
    QPoly K = charge_kostka_foulkes(lam, mu);
    long nmu = n_stat(mu);
    std::vector<Rat> coeffs(nmu + 1, Rat(0));
    for (int i = 0; i <= K.degree(); ++i) {
        if (i > nmu) throw std::logic_error("kostka_foulkes_modified: charge exceeds n(mu)");
        coeffs[nmu - i] = K.coeff(i);
    }
    return QPoly::from_coeffs(std::move(coeffs));
}

QPoly kostka_foulkes(const Partition& lam, const Partition& mu) {
    return kostka_foulkes_modified(mu, lam);
}

SymExpr modified_hl(int tag, const Partition& lam) {
    SymExpr f;
    f.var_tag = tag;
    f.basis = SymBasis::s;
    for (const auto& mu : partitions_of(partition_size(lam))) {
        QPoly c = kostka_foulkes_modified(mu, lam);
        if (!c.is_zero()) f.coeff[mu] = QRat(c);
    }
    return f;
}

std::map<Partition, std::map<Partition, QPoly>> kostka_foulkes_oracle(int n) {
    auto parts = partitions_of(n);
    // sample fields: enough for degree <= dim GL_n/B = n(n-1)/2, plus 2 checks
    int maxdeg = n * (n - 1) / 2;
    std::vector<std::pair<long, int>> fields = {{2, 1}, {3, 1}, {2, 2}, {5, 1},
                                                {7, 1}, {2, 3}, {3, 2}};
    int needed = maxdeg + 3;
    if (needed > static_cast<int>(fields.size()))
        throw std::domain_error("kostka_foulkes_oracle: not enough sample fields");
    // flag-count polynomials F[nu][mu]
    std::map<Partition, std::map<Partition, QPoly>> F;
    for (const auto& nu : parts) {
        for (const auto& mu : parts) {
            std::vector<std::pair<Rat, Rat>> pts;
            auto dims = column_from_partition(n, mu);
            for (int s = 0; s < needed; ++s) {
                const FqField& Fq = make_field(fields[s].first, fields[s].second);
                auto [rep, size] = unipotent_class(nu, n, Fq);
                Int cnt = fixed_flag_count(rep, dims);
                pts.push_back({Rat(static_cast<long>(Fq.size)), Rat(cnt)});
            }
            std::vector<std::pair<Rat, Rat>> fit(pts.begin(), pts.begin() + maxdeg + 1);
            QPoly poly = QPoly::lagrange(fit);
            for (int s = maxdeg + 1; s < needed; ++s)
                if (poly.eval(pts[s].first) != pts[s].second)
                    throw std::logic_error("kostka_foulkes_oracle: flag count not polynomial");
            F[nu][mu] = poly;
        }
    }
    // solve sum_lam X[lam] K_{lam,mu} = F[nu][mu] for each nu
    size_t N = parts.size();
    std::vector<std::vector<Rat>> K(N, std::vector<Rat>(N));
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j) K[i][j] = Rat(kostka_number(parts[i], parts[j]));
    // invert K over Q
    std::vector<std::vector<Rat>> M(N, std::vector<Rat>(2 * N, Rat(0)));
    for (size_t i = 0; i < N; ++i) {
        for (size_t j = 0; j < N; ++j) M[i][j] = K[i][j];
        M[i][N + i] = 1;
    }
    for (size_t col = 0, row = 0; col < N && row < N; ++col) {
        size_t piv = row;
        while (piv < N && M[piv][col] == 0) ++piv;
        if (piv == N) throw std::logic_error("kostka_foulkes_oracle: singular Kostka matrix");
        std::swap(M[piv], M[row]);
        Rat inv = 1 / M[row][col];
        for (size_t j = 0; j < 2 * N; ++j) M[row][j] *= inv;
        for (size_t i = 0; i < N; ++i) {
            if (i == row) continue;
            Rat f = M[i][col];
            if (f == 0) continue;
            for (size_t j = 0; j < 2 * N; ++j) M[i][j] -= f * M[row][j];
        }
        ++row;
    }
    std::map<Partition, std::map<Partition, QPoly>> out;
    for (const auto& nu : parts) {
        for (size_t l = 0; l < N; ++l) {
            QPoly x;
            for (size_t m = 0; m < N; ++m) x = x + F[nu][parts[m]] * M[m][N + l];
            out[nu][parts[l]] = x;
        }
    }
    return out;
}

// ------------------------------------------------------------ TruncSeries ----

TruncSeries::TruncSeries(int rank_cap, int npoints, int ladder_len)
    : rank_cap_(rank_cap), npoints_(npoints), ladder_len_(ladder_len) {}

bool TruncSeries::Key::operator<(const Key& o) const {
    if (m != o.m) return m < o.m;
    return lam < o.lam;
}

int TruncSeries::rank_of(const Key& k) const {
    return std::accumulate(k.m.begin(), k.m.end(), 0);
}

void TruncSeries::add_p_term(const std::vector<int>& m, const Multipartition& lam, const QRat& c) {
    if (static_cast<int>(m.size()) != ladder_len_ || static_cast<int>(lam.size()) != npoints_)
        throw std::domain_error("TruncSeries: bad key shape");
    Key k{m, lam};
    if (rank_of(k) > rank_cap_ || c.is_zero()) return;
    auto it = terms_.find(k);
    if (it == terms_.end())
        terms_[k] = c;
    else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void TruncSeries::add_m_term(const std::vector<int>& m, const Multipartition& mu, const QRat& c) {
    // expand prod_i m_{mu^i}(x_i) into the p-basis and distribute
    std::vector<std::vector<std::pair<Partition, Rat>>> rows;
    for (const auto& part : mu) rows.push_back(to_p_row(SymBasis::m, part));
    std::vector<size_t> pick(mu.size(), 0);
    for (;;) {
        Multipartition lam(mu.size());
        Rat w = 1;
        for (size_t i = 0; i < mu.size(); ++i) {
            lam[i] = rows[i][pick[i]].first;
            w *= rows[i][pick[i]].second;
        }
        add_p_term(m, lam, c * QRat(QPoly(w)));
        size_t i = 0;
        while (i < mu.size()) {
            if (++pick[i] < rows[i].size()) break;
            pick[i] = 0;
            ++i;
        }
        if (i == mu.size()) break;
    }
}

QRat TruncSeries::m_coeff(const std::vector<int>& m, const Multipartition& mu) const {
    // <f, prod_i h_{mu^i}(x_i)> on the Y^m layer
    QRat acc;
    for (const auto& [k, c] : terms_) {
        if (k.m != m) continue;
        Rat w = 1;
        bool ok = true;
        for (int i = 0; i < npoints_ && ok; ++i) {
            const Partition& rho = k.lam[i];
            if (partition_size(rho) != partition_size(mu[i])) {
                ok = false;
                break;
            }
            if (rho.empty()) continue;
            const auto& T = degree_tables(partition_size(rho));
            // <p_rho, h_mu> = z_rho * H[mu][rho]
            w *= T.H[T.index.at(mu[i])][T.index.at(rho)] * Rat(z_lambda(rho));
        }
        if (!ok || w == 0) continue;
        acc += c * QRat(QPoly(w));
    }
    return acc;
}

TruncSeries TruncSeries::add(const TruncSeries& o) const {
    TruncSeries out = *this;
    for (const auto& [k, c] : o.terms_) out.add_p_term(k.m, k.lam, c);
    return out;
}

TruncSeries TruncSeries::scale(const QRat& c) const {
    TruncSeries out(rank_cap_, npoints_, ladder_len_);
    for (const auto& [k, v] : terms_) out.add_p_term(k.m, k.lam, v * c);
    return out;
}

TruncSeries TruncSeries::mul(const TruncSeries& o) const {
    TruncSeries out(rank_cap_, npoints_, ladder_len_);
    for (const auto& [k1, c1] : terms_)
        for (const auto& [k2, c2] : o.terms_) {
            std::vector<int> m(ladder_len_);
            int rank = 0;
            for (int i = 0; i < ladder_len_; ++i) {
                m[i] = k1.m[i] + k2.m[i];
                rank += m[i];
            }
            if (rank > rank_cap_) continue;
            Multipartition lam(npoints_);
            for (int i = 0; i < npoints_; ++i) {
                lam[i] = k1.lam[i];
                lam[i].insert(lam[i].end(), k2.lam[i].begin(), k2.lam[i].end());
                std::sort(lam[i].rbegin(), lam[i].rend());
            }
            out.add_p_term(m, lam, c1 * c2);
        }
    return out;
}

TruncSeries TruncSeries::psi(long d) const {
    TruncSeries out(rank_cap_, npoints_, ladder_len_);
    for (const auto& [k, c] : terms_) {
        std::vector<int> m(ladder_len_);
        for (int i = 0; i < ladder_len_; ++i) m[i] = static_cast<int>(k.m[i] * d);
        Multipartition lam = k.lam;
        for (auto& part : lam)
            for (int& x : part) x = static_cast<int>(x * d);
        out.add_p_term(m, lam, c.subst_power(d));
    }
    return out;
}

TruncSeries TruncSeries::pow(int k) const {
    TruncSeries acc(rank_cap_, npoints_, ladder_len_);
    if (k == 0) throw std::domain_error("TruncSeries: pow(0) unsupported");
    acc = *this;
    for (int i = 1; i < k; ++i) acc = acc.mul(*this);
    return acc;
}

TruncSeries TruncSeries::pleth_log_of_one_plus() const {
    for (const auto& [k, c] : terms_)
        if (rank_of(k) == 0)
            throw std::domain_error("pleth_log: series must have constant term 1");
    // log(1+f) truncated
    TruncSeries logf(rank_cap_, npoints_, ladder_len_);
    TruncSeries power = *this;
    for (int k = 1; k <= rank_cap_; ++k) {
        Rat c = Rat((k % 2 == 1) ? 1 : -1, k);
        logf = logf.add(power.scale(QRat(QPoly(c))));
        if (k < rank_cap_) power = power.mul(*this);
    }
    // Log = sum_d mu(d)/d psi_d(log)
    TruncSeries out(rank_cap_, npoints_, ladder_len_);
    for (long d = 1; d <= rank_cap_; ++d) {
        int mu = moebius(d);
        if (mu == 0) continue;
        out = out.add(logf.psi(d).scale(QRat(QPoly(Rat(mu, d)))));
    }
    return out;
}

TruncSeries TruncSeries::pleth_exp_minus_one() const {
    for (const auto& [k, c] : terms_)
        if (rank_of(k) == 0)
            throw std::domain_error("pleth_exp: series must have constant term 0");
    TruncSeries G(rank_cap_, npoints_, ladder_len_);
    for (long d = 1; d <= rank_cap_; ++d) G = G.add(psi(d).scale(QRat(QPoly(Rat(1, d)))));
    TruncSeries out(rank_cap_, npoints_, ladder_len_);
    TruncSeries power = G;
    Rat fact = 1;  // running 1/k!
    for (int k = 1; k <= rank_cap_; ++k) {
        fact /= k;
        out = out.add(power.scale(QRat(QPoly(fact))));
        if (k < rank_cap_) power = power.mul(G);
    }
    return out;
}

bool TruncSeries::operator==(const TruncSeries& o) const {
    return rank_cap_ == o.rank_cap_ && npoints_ == o.npoints_ && ladder_len_ == o.ladder_len_ &&
           terms_ == o.terms_;
}

}  // namespace paracount
