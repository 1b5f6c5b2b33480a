#include "paracount/ffmat.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace paracount {

bool MatFF::operator==(const MatFF& o) const {
    if (F != o.F || rows != o.rows || cols != o.cols) return false;
    for (int i = 0; i < rows * cols; ++i)
        if (a[i] != o.a[i]) return false;
    return true;
}

MatFF MatFF::identity(const FqField* f, int n) {
    MatFF m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f->one();
    return m;
}

MatFF mat_add(const MatFF& A, const MatFF& B) {
    MatFF C(A.F, A.rows, A.cols);
    for (int i = 0; i < A.rows * A.cols; ++i) C.a[i] = A.F->add(A.a[i], B.a[i]);
    return C;
}

MatFF mat_sub(const MatFF& A, const MatFF& B) {
    MatFF C(A.F, A.rows, A.cols);
    for (int i = 0; i < A.rows * A.cols; ++i) C.a[i] = A.F->sub(A.a[i], B.a[i]);
    return C;
}

MatFF mat_mul(const MatFF& A, const MatFF& B) {
    MatFF C(A.F, A.rows, B.cols);
    for (int i = 0; i < A.rows; ++i)
        for (int k = 0; k < A.cols; ++k) {
            fcode v = A.at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < B.cols; ++j)
                C.at(i, j) = A.F->add(C.at(i, j), A.F->mul(v, B.at(k, j)));
        }
    return C;
}

MatFF mat_scale(const MatFF& A, fcode s) {
    MatFF C(A.F, A.rows, A.cols);
    for (int i = 0; i < A.rows * A.cols; ++i) C.a[i] = A.F->mul(A.a[i], s);
    return C;
}

fcode mat_trace(const MatFF& A) {
    fcode t = 0;
    for (int i = 0; i < A.rows; ++i) t = A.F->add(t, A.at(i, i));
    return t;
}

MatFF mat_pow(const MatFF& A, long e) {
    MatFF r = MatFF::identity(A.F, A.rows), b = A;
    while (e > 0) {
        if (e & 1) r = mat_mul(r, b);
        b = mat_mul(b, b);
        e >>= 1;
    }
    return r;
}

namespace {

// In-place Gauss-Jordan; returns rank.  If inv != nullptr it must start as the
// identity and receives the inverse when the matrix is square invertible.
int gauss(MatFF& A, MatFF* inv) {
    const FqField* F = A.F;
    int rank = 0;
    for (int col = 0; col < A.cols && rank < A.rows; ++col) {
        int piv = -1;
        for (int i = rank; i < A.rows; ++i)
            if (A.at(i, col) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank) {
            for (int j = 0; j < A.cols; ++j) std::swap(A.at(piv, j), A.at(rank, j));
            if (inv)
                for (int j = 0; j < inv->cols; ++j) std::swap(inv->at(piv, j), inv->at(rank, j));
        }
        fcode s = F->inv(A.at(rank, col));
        for (int j = 0; j < A.cols; ++j) A.at(rank, j) = F->mul(A.at(rank, j), s);
        if (inv)
            for (int j = 0; j < inv->cols; ++j) inv->at(rank, j) = F->mul(inv->at(rank, j), s);
        for (int i = 0; i < A.rows; ++i) {
            if (i == rank) continue;
            fcode f = A.at(i, col);
            if (f == 0) continue;
            for (int j = 0; j < A.cols; ++j)
                A.at(i, j) = F->sub(A.at(i, j), F->mul(f, A.at(rank, j)));
            if (inv)
                for (int j = 0; j < inv->cols; ++j)
                    inv->at(i, j) = F->sub(inv->at(i, j), F->mul(f, inv->at(rank, j)));
        }
        ++rank;
    }
    return rank;
}

}  // namespace

int mat_rank(MatFF A) { return gauss(A, nullptr); }

MatFF mat_rref(MatFF A) {
    int r = gauss(A, nullptr);
    MatFF out(A.F, r, A.cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < A.cols; ++j) out.at(i, j) = A.at(i, j);
    return out;
}

std::optional<MatFF> mat_inverse(const MatFF& A) {
    MatFF work = A, inv = MatFF::identity(A.F, A.rows);
    if (gauss(work, &inv) != A.rows) return std::nullopt;
    return inv;
}

bool mat_invertible(const MatFF& A) { return mat_det(A) != 0; }

fcode mat_det(const MatFF& A) {
    const FqField* F = A.F;
    int n = A.rows;
    if (n == 1) return A.at(0, 0);
    if (n == 2)
        return F->sub(F->mul(A.at(0, 0), A.at(1, 1)), F->mul(A.at(0, 1), A.at(1, 0)));
    // expansion along first row
    fcode det = 0;
    for (int j = 0; j < n; ++j) {
        if (A.at(0, j) == 0) continue;
        MatFF minor(F, n - 1, n - 1);
        for (int i = 1; i < n; ++i) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(i - 1, cc++) = A.at(i, c);
            }
        }
        fcode term = F->mul(A.at(0, j), mat_det(minor));
        det = (j % 2 == 0) ? F->add(det, term) : F->sub(det, term);
    }
    return det;
}

MatFF mat_frobenius(const MatFF& A, long s) {
    MatFF C = A;
    for (int i = 0; i < A.rows * A.cols; ++i) C.a[i] = A.F->frobenius_pow(A.a[i], s);
    return C;
}

MatFF mat_embed(const FqField& K, const MatFF& A) {
    MatFF C(&K, A.rows, A.cols);
    for (int i = 0; i < A.rows * A.cols; ++i) C.a[i] = K.embed_from(*A.F, A.a[i]);
    return C;
}

// ------------------------------------------------------------- invariants ----

FPoly char_poly(const MatFF& M) {
    const FqField* F = M.F;
    int n = M.rows;
    // determinant of xI - M by cofactor expansion over F[x]
    std::vector<std::vector<FPoly>> P(n, std::vector<FPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::vector<fcode> c;
            if (i == j)
                c = {F->neg(M.at(i, j)), F->one()};
            else
                c = {F->neg(M.at(i, j))};
            P[i][j] = FPoly(F, std::move(c));
        }
    std::function<FPoly(std::vector<int>, std::vector<int>)> det =
        [&](std::vector<int> rs, std::vector<int> cs) -> FPoly {
        if (rs.size() == 1) return P[rs[0]][cs[0]];
        FPoly acc = fp_zero(F);
        std::vector<int> sub_rs(rs.begin() + 1, rs.end());
        for (size_t j = 0; j < cs.size(); ++j) {
            std::vector<int> sub_cs;
            for (size_t k = 0; k < cs.size(); ++k)
                if (k != j) sub_cs.push_back(cs[k]);
            FPoly term = fp_mul(P[rs[0]][cs[j]], det(sub_rs, sub_cs));
            acc = (j % 2 == 0) ? fp_add(acc, term) : fp_sub(acc, term);
        }
        return acc;
    };
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    return det(idx, idx);
}

FPoly min_poly(const MatFF& M) {
    const FqField* F = M.F;
    int n = M.rows;
    FPoly m = fp_one(F);
    for (int v0 = 0; v0 < n && m.deg() < n; ++v0) {
        // Krylov iterates e, Me, M^2 e, ... until the first linear dependence
        std::vector<std::vector<fcode>> raw;
        std::vector<fcode> cur(n, 0);
        cur[v0] = F->one();
        while (true) {
            raw.push_back(cur);
            MatFF A(F, static_cast<int>(raw.size()), n);
            for (size_t i = 0; i < raw.size(); ++i)
                for (int j = 0; j < n; ++j) A.at(static_cast<int>(i), j) = raw[i][j];
            if (mat_rank(A) < static_cast<int>(raw.size())) break;
            std::vector<fcode> nxt(n, 0);
            for (int i = 0; i < n; ++i) {
                if (cur[i] == 0) continue;
                for (int j = 0; j < n; ++j) nxt[j] = F->add(nxt[j], F->mul(M.at(j, i), cur[i]));
            }
            cur = std::move(nxt);
        }
        // express the last iterate in the previous ones (columns of A below)
        size_t k = raw.size() - 1;
        MatFF A(F, n, static_cast<int>(k) + 1);
        for (size_t c = 0; c <= k; ++c)
            for (int r = 0; r < n; ++r) A.at(r, static_cast<int>(c)) = raw[c][r];
        gauss(A, nullptr);
        std::vector<fcode> ann(k + 1, 0);
        ann[k] = F->one();
        for (size_t r = 0; r < k; ++r) ann[r] = F->neg(A.at(static_cast<int>(r), static_cast<int>(k)));
        FPoly mv(F, std::move(ann));
        FPoly g = fp_gcd(m, mv);
        m = fp_monic(fp_divmod(fp_mul(m, mv), g).first);
    }
    return m;
}

namespace {

std::vector<int> conjugate_partition(const std::vector<int>& lambda) {
    std::vector<int> c;
    for (int s = 1;; ++s) {
        int cnt = 0;
        for (int part : lambda)
            if (part >= s) ++cnt;
        if (cnt == 0) break;
        c.push_back(cnt);
    }
    return c;
}

// partition of the f-primary part from kernel dimension jumps
std::vector<int> primary_partition(const MatFF& M, const FPoly& f, int mult) {
    const FqField* F = M.F;
    int n = M.rows;
    // f(M) by Horner
    MatFF fM(F, n, n);
    for (int i = f.deg(); i >= 0; --i) {
        fM = mat_mul(fM, M);
        fcode c = f.coeff(i);
        if (c != 0)
            for (int d = 0; d < n; ++d) fM.at(d, d) = F->add(fM.at(d, d), c);
    }
    int degf = f.deg();
    std::vector<int> jumps;  // #blocks of size >= s
    MatFF p = MatFF::identity(F, n);
    int prev_ker = 0;
    for (int s = 1; s <= mult; ++s) {
        p = mat_mul(p, fM);
        int ker = n - mat_rank(p);
        int blocks_ge_s = (ker - prev_ker) / degf;
        if (blocks_ge_s == 0) break;
        jumps.push_back(blocks_ge_s);
        prev_ker = ker;
    }
    return conjugate_partition(jumps);
}

}  // namespace

ClassInvariant classify(const MatFF& M) {
    const FqField* F = M.F;
    int n = M.rows;
    ClassInvariant inv;
    FPoly cp = char_poly(M);
    auto facs = fp_factor(cp);
    for (const auto& [f, mult] : facs)
        inv.elementary.emplace_back(f, primary_partition(M, f, mult));
    std::sort(inv.elementary.begin(), inv.elementary.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    // semisimple iff every elementary partition is all-ones (equivalently the
    // minimal polynomial is squarefree)
    inv.semisimple = true;
    for (const auto& [f, lam] : inv.elementary)
        for (int part : lam)
            if (part > 1) inv.semisimple = false;
    FPoly x = fp_var(F);
    inv.nilpotent = (facs.size() == 1 && facs[0].first == x);
    inv.invertible = cp.coeff(0) != 0;
    FPoly xm1 = FPoly(F, {F->neg(F->one()), F->one()});
    inv.unipotent = (facs.size() == 1 && facs[0].first == xm1);
    return inv;
}

std::string ClassInvariant::key() const {
    std::string s;
    for (const auto& [f, lam] : elementary) {
        s += "(";
        for (fcode c : f.c) s += std::to_string(c) + ",";
        s += "|";
        for (int part : lam) s += std::to_string(part) + ",";
        s += ")";
    }
    return s;
}

bool in_class(const MatFF& M, const ClassInvariant& inv) {
    const FqField* F = M.F;
    int n = M.rows;
    // char poly must match prod f^{|lambda|}
    FPoly cp = char_poly(M);
    FPoly expect = fp_one(F);
    for (const auto& [f, lam] : inv.elementary) {
        int tot = 0;
        for (int part : lam) tot += part;
        for (int i = 0; i < tot; ++i) expect = fp_mul(expect, f);
    }
    if (!(cp == expect)) return false;
    for (const auto& [f, lam] : inv.elementary) {
        int mult = 0;
        for (int part : lam) mult += part;
        if (primary_partition(M, f, mult) != lam) return false;
    }
    return true;
}

std::optional<std::vector<int>> nilpotent_type(const MatFF& M) {
    int n = M.rows;
    if (n == 0) return std::vector<int>{};
    std::vector<int> jumps;
    MatFF acc = M;
    int prev = 0;
    int ker = n - mat_rank(acc);
    if (ker == 0) return std::nullopt;  // invertible
    jumps.push_back(ker);
    prev = ker;
    for (int s = 2; s <= n && prev < n; ++s) {
        acc = mat_mul(acc, M);
        ker = n - mat_rank(acc);
        if (ker == prev) break;
        jumps.push_back(ker - prev);
        prev = ker;
    }
    if (prev != n) return std::nullopt;  // kernel never fills up: not nilpotent
    return conjugate_partition(jumps);
}

std::optional<std::vector<int>> unipotent_type(const MatFF& M) {
    MatFF N = mat_sub(M, MatFF::identity(M.F, M.rows));
    return nilpotent_type(N);
}

Int gl_order(int n, const Int& q) {
    Int o = 1;
    Int qn = int_pow(q, static_cast<unsigned long>(n));
    for (int i = 0; i < n; ++i) o *= qn - int_pow(q, static_cast<unsigned long>(i));
    return o;
}

QPoly gl_order_poly(int n) {
    QPoly o{Rat(1)};
    QPoly q = QPoly::var();
    QPoly qn = q.subst_power(n);  // q^n
    for (int i = 0; i < n; ++i) {
        QPoly qi = (i == 0) ? QPoly(Rat(1)) : q.subst_power(i);
        o = o * (qn - qi);
    }
    return o;
}

// ------------------------------------------------------------------ flags ----

std::string PartialFlag::key() const {
    std::string s;
    for (const auto& m : subs) {
        s += std::to_string(m.rows) + ":";
        for (int i = 0; i < m.rows * m.cols; ++i) s += std::to_string(m.a[i]) + ",";
        s += ";";
    }
    return s;
}

std::vector<int> column_from_partition(int n, const std::vector<int>& mu) {
    std::vector<int> dims;
    int s = n;
    for (size_t i = 0; i + 1 <= mu.size(); ++i) {
        s -= mu[i];
        if (s > 0 && (dims.empty() || dims.back() != s)) dims.push_back(s);
        if (s == 0) break;
    }
    return dims;
}

namespace {

// all k-dim subspaces of the row space of `ambient` (RREF rows), as global RREF
std::vector<MatFF> subspaces_of(const MatFF& ambient, int k) {
    const FqField* F = ambient.F;
    int m = ambient.rows;  // ambient dimension
    std::vector<MatFF> out;
    if (k == 0 || k > m) return out;
    // enumerate RREF k x m matrices: pivot column subsets + free entries
    std::vector<int> piv(k);
    std::function<void(int, int)> rec_piv = [&](int idx, int from) {
        if (idx == k) {
            // free positions: entries to the right of pivot, not in pivot cols
            std::vector<std::pair<int, int>> free_pos;
            for (int r = 0; r < k; ++r)
                for (int c = piv[r] + 1; c < m; ++c) {
                    bool is_piv = false;
                    for (int r2 = 0; r2 < k; ++r2) is_piv = is_piv || (piv[r2] == c);
                    if (!is_piv) free_pos.emplace_back(r, c);
                }
            std::uint64_t total = 1;
            for (size_t i = 0; i < free_pos.size(); ++i) total *= F->size;
            for (std::uint64_t code = 0; code < total; ++code) {
                MatFF local(F, k, m);
                for (int r = 0; r < k; ++r) local.at(r, piv[r]) = F->one();
                std::uint64_t v = code;
                for (auto [r, c] : free_pos) {
                    local.at(r, c) = static_cast<fcode>(v % F->size);
                    v /= F->size;
                }
                // lift to global coordinates and canonicalize
                MatFF global = mat_mul(local, ambient);
                out.push_back(mat_rref(global));
            }
            return;
        }
        for (int c = from; c < m; ++c) {
            piv[idx] = c;
            rec_piv(idx + 1, c + 1);
        }
    };
    rec_piv(0, 0);
    return out;
}

}  // namespace

std::vector<PartialFlag> enumerate_flags(int n, const std::vector<int>& dims, const FqField& F) {
    std::vector<PartialFlag> out;
    MatFF full = MatFF::identity(&F, n);
    std::function<void(const MatFF&, size_t, PartialFlag&)> rec = [&](const MatFF& ambient,
                                                                      size_t idx, PartialFlag& fl) {
        if (idx == dims.size()) {
            out.push_back(fl);
            return;
        }
        for (const auto& sub : subspaces_of(ambient, dims[idx])) {
            fl.subs.push_back(sub);
            rec(sub, idx + 1, fl);
            fl.subs.pop_back();
        }
    };
    PartialFlag fl;
    rec(full, 0, fl);
    return out;
}

PartialFlag apply_flag(const MatFF& g, const PartialFlag& fl) {
    PartialFlag out;
    MatFF gt(g.F, g.cols, g.rows);
    for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j) gt.at(j, i) = g.at(i, j);
    for (const auto& sub : fl.subs) out.subs.push_back(mat_rref(mat_mul(sub, gt)));
    return out;
}

bool flag_fixed_by(const MatFF& g, const PartialFlag& fl) {
    MatFF gt(g.F, g.cols, g.rows);
    for (int i = 0; i < g.rows; ++i)
        for (int j = 0; j < g.cols; ++j) gt.at(j, i) = g.at(i, j);
    for (const auto& sub : fl.subs) {
        if (!(mat_rref(mat_mul(sub, gt)) == sub)) return false;
    }
    return true;
}

Int flag_space_size(int n, const std::vector<int>& dims, const Int& q) {
    // |GL_n|/|P| with P the parabolic of the flag type; compute via product of
    // Gaussian binomials along the chain
    Int total = 1;
    int prev = n;
    auto gauss_binom = [&](int m, int k) -> Int {
        Int num = 1, den = 1;
        for (int i = 0; i < k; ++i) {
            num *= int_pow(q, static_cast<unsigned long>(m - i)) - 1;
            den *= int_pow(q, static_cast<unsigned long>(i + 1)) - 1;
        }
        return num / den;
    };
    for (int d : dims) {
        total *= gauss_binom(prev, d);
        prev = d;
    }
    return total;
}

Int fixed_flag_count(const MatFF& g, const std::vector<int>& dims) {
    static std::map<std::string, Int> memo;
    static std::mutex mu;
    std::string key = classify(g).key() + "#";
    for (int d : dims) key += std::to_string(d) + ",";
    key += "@" + std::to_string(g.F->uid);
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    Int cnt = 0;
    for (const auto& fl : enumerate_flags(g.rows, dims, *g.F))
        if (flag_fixed_by(g, fl)) ++cnt;
    std::lock_guard<std::mutex> lk(mu);
    memo.emplace(key, cnt);
    return cnt;
}

// ------------------------------------------------------- unipotent classes ----

Int unipotent_centralizer_order(const std::vector<int>& lambda, const Int& q) {
    std::vector<int> conj = conjugate_partition(lambda);
    long sumsq = 0;
    for (int c : conj) sumsq += static_cast<long>(c) * c;
    std::map<int, int> mult;
    for (int part : lambda) mult[part]++;
    Int o = 1;
    long gl_exp = 0;
    for (auto [part, m] : mult) {
        o *= gl_order(m, q);
        gl_exp += static_cast<long>(m) * m;
    }
    return o * int_pow(q, static_cast<unsigned long>(sumsq - gl_exp));
}

Int nilpotent_orbit_size(const std::vector<int>& lambda, const Int& q) {
    int n = 0;
    for (int part : lambda) n += part;
    return gl_order(n, q) / unipotent_centralizer_order(lambda, q);
}

std::pair<MatFF, Int> unipotent_class(const std::vector<int>& lambda, int n, const FqField& F) {
    int tot = 0;
    for (int part : lambda) tot += part;
    if (tot != n) throw std::domain_error("unipotent_class: |lambda| != n");
    MatFF rep(&F, n, n);
    int pos = 0;
    for (int part : lambda) {
        for (int i = 0; i < part; ++i) {
            rep.at(pos + i, pos + i) = F.one();
            if (i + 1 < part) rep.at(pos + i, pos + i + 1) = F.one();
        }
        pos += part;
    }
    Int q(static_cast<unsigned long>(F.size));
    Int size;
    // orbit-stabilizer by brute force when small, closed form otherwise
    std::uint64_t cells = 1;
    bool small = true;
    for (int i = 0; i < n * n; ++i) {
        cells *= F.size;
        if (cells > (1ULL << 21)) {
            small = false;
            break;
        }
    }
    if (small && n <= 3) {
        Int cent = 0;
        std::uint64_t total = cells;
        for (std::uint64_t code = 0; code < total; ++code) {
            MatFF M(&F, n, n);
            std::uint64_t v = code;
            for (int i = 0; i < n * n; ++i) {
                M.a[i] = static_cast<fcode>(v % F.size);
                v /= F.size;
            }
            if (!mat_invertible(M)) continue;
            if (mat_mul(M, rep) == mat_mul(rep, M)) ++cent;
        }
        size = gl_order(n, q) / cent;
        if (cent != unipotent_centralizer_order(lambda, q))
            throw std::logic_error("unipotent_class: centralizer formula mismatch");
    } else {
        size = gl_order(n, q) / unipotent_centralizer_order(lambda, q);
    }
    return {rep, size};
}

std::vector<MatFF> enumerate_gln(int n, const FqField& F, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (int i = 0; i < n * n; ++i) {
        total *= F.size;
        if (total > cap) throw std::domain_error("enumerate_gln: direct summation infeasible");
    }
    std::vector<MatFF> out;
    for (std::uint64_t code = 0; code < total; ++code) {
        MatFF M(&F, n, n);
        std::uint64_t v = code;
        for (int i = 0; i < n * n; ++i) {
            M.a[i] = static_cast<fcode>(v % F.size);
            v /= F.size;
        }
        if (mat_invertible(M)) out.push_back(M);
    }
    return out;
}

// ------------------------------------------------- Harish-Chandra induction ----

namespace {

// block-diagonal parts if X is in the standard parabolic p (block upper
// triangular w.r.t. the composition); nullopt otherwise
std::optional<std::vector<MatFF>> parabolic_projection(const std::vector<int>& levi,
                                                       const MatFF& X) {
    const FqField* F = X.F;
    std::vector<int> offs(1, 0);
    for (int b : levi) offs.push_back(offs.back() + b);
    for (size_t bi = 0; bi < levi.size(); ++bi)
        for (size_t bj = 0; bj < bi; ++bj)
            for (int i = offs[bi]; i < offs[bi + 1]; ++i)
                for (int j = offs[bj]; j < offs[bj + 1]; ++j)
                    if (X.at(i, j) != 0) return std::nullopt;
    std::vector<MatFF> parts;
    for (size_t bi = 0; bi < levi.size(); ++bi) {
        MatFF blk(F, levi[bi], levi[bi]);
        for (int i = 0; i < levi[bi]; ++i)
            for (int j = 0; j < levi[bi]; ++j) blk.at(i, j) = X.at(offs[bi] + i, offs[bi] + j);
        parts.push_back(blk);
    }
    return parts;
}

Int parabolic_order(const std::vector<int>& levi, const Int& q) {
    Int o = 1;
    int n = 0;
    long u_dim = 0;
    for (size_t i = 0; i < levi.size(); ++i) {
        o *= gl_order(levi[i], q);
        for (size_t j = i + 1; j < levi.size(); ++j) u_dim += static_cast<long>(levi[i]) * levi[j];
        n += levi[i];
    }
    return o * int_pow(q, static_cast<unsigned long>(u_dim));
}

}  // namespace

Cyclotomic hc_value(const std::vector<int>& levi, const MatFF& g,
                    const std::function<Cyclotomic(const std::vector<MatFF>&)>& f,
                    std::uint64_t cap) {
    const FqField* F = g.F;
    int n = g.rows;
    Int q(static_cast<unsigned long>(F->size));
    auto gln = enumerate_gln(n, *F, cap);
    Cyclotomic acc(1);
    bool first = true;
    for (const auto& h : gln) {
        MatFF hinv = *mat_inverse(h);
        MatFF conj = mat_mul(mat_mul(hinv, g), h);
        auto parts = parabolic_projection(levi, conj);
        if (!parts) continue;
        Cyclotomic val = f(*parts);
        if (first) {
            acc = val;
            first = false;
        } else {
            acc = acc + val;
        }
    }
    if (first) return Cyclotomic(1, Rat(0));
    Int po = parabolic_order(levi, q);
    return acc * Rat(Int(1), po);
}

Int hc_trivial_value(const std::vector<int>& levi, const MatFF& g, std::uint64_t cap) {
    Cyclotomic one(1, Rat(1));
    Cyclotomic v = hc_value(levi, g, [&](const std::vector<MatFF>&) { return one; }, cap);
    Rat r = v.rational_value();
    if (!is_integer(r)) throw std::logic_error("hc_trivial_value: non-integer");
    return r.get_num();
}

}  // namespace paracount
