#include "paracount/count.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <thread>
#include <unordered_map>

namespace paracount {

std::string multipartition_to_string(const Multipartition& mu) {
    std::string s;
    for (size_t i = 0; i < mu.size(); ++i) {
        if (i) s += ";";
        for (size_t j = 0; j < mu[i].size(); ++j) {
            if (j) s += ",";
            s += std::to_string(mu[i][j]);
        }
    }
    return s;
}

Multipartition full_flags(int n, int r) {
    return Multipartition(r, std::vector<int>(n, 1));
}

Multipartition no_flags(int n, int r) { return Multipartition(r, std::vector<int>{n}); }

std::uint64_t enumeration_cap() {
    if (const char* env = std::getenv("PARACOUNT_CAP")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 1ULL << 24;
}

namespace {
std::atomic<int> g_jobs{0};
}

void set_jobs(int jobs) { g_jobs.store(jobs); }

int get_jobs() {
    int j = g_jobs.load();
    if (j > 0) return j;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// ------------------------------------------------------------ end_algebra ----

EndAlgebra end_algebra(const BundleContext& ctx, const DivisorSpec& D,
                       const std::vector<PartialFlag>& flags) {
    if (flags.size() != D.points.size())
        throw std::domain_error("end_algebra: one flag per point required");
    const FqField& Fq = ctx.field();
    int dim = ctx.dim_end();
    int n = ctx.rank();
    std::vector<std::vector<fcode>> rows;  // conditions over F_q
    for (size_t i = 0; i < D.points.size(); ++i) {
        const ClosedPoint& pt = D.points[i];
        const FqField& R = ctx.residue_field(pt);
        int d = pt.degree();
        std::vector<MatFF> basis_eval(dim);
        {
            EndElement e = ctx.zero_elt();
            for (int k = 0; k < dim; ++k) {
                e[k] = Fq.one();
                basis_eval[k] = ctx.evaluate(e, pt);
                e[k] = 0;
            }
        }
        for (const MatFF& sub : flags[i].subs) {
            int k = sub.rows;
            std::vector<int> pivots(k);
            for (int r = 0; r < k; ++r) {
                int c = 0;
                while (sub.at(r, c) == 0) ++c;
                pivots[r] = c;
            }
            std::vector<bool> is_pivot(n, false);
            for (int c : pivots) is_pivot[c] = true;
            for (int vrow = 0; vrow < k; ++vrow) {
                // w(h) = M(h) v; entries linear in the End coordinates of h
                std::vector<std::vector<fcode>> w_coeff(n, std::vector<fcode>(dim, 0));
                for (int kk = 0; kk < dim; ++kk)
                    for (int r = 0; r < n; ++r) {
                        fcode acc = 0;
                        for (int c = 0; c < n; ++c)
                            acc = R.add(acc, R.mul(basis_eval[kk].at(r, c), sub.at(vrow, c)));
                        w_coeff[r][kk] = acc;
                    }
                // membership in the row space: residual at non-pivot columns
                for (int c = 0; c < n; ++c) {
                    if (is_pivot[c]) continue;
                    std::vector<fcode> cond(dim, 0);
                    for (int kk = 0; kk < dim; ++kk) {
                        fcode acc = w_coeff[c][kk];
                        for (int j = 0; j < k; ++j)
                            acc = R.sub(acc, R.mul(w_coeff[pivots[j]][kk], sub.at(j, c)));
                        cond[kk] = acc;
                    }
                    for (int digit = 0; digit < d; ++digit) {
                        std::vector<fcode> row(dim, 0);
                        bool nonzero = false;
                        for (int kk = 0; kk < dim; ++kk) {
                            fcode dg = (d == 1) ? cond[kk] : R.digits(cond[kk])[digit];
                            row[kk] = dg;
                            nonzero = nonzero || dg != 0;
                        }
                        if (nonzero) rows.push_back(std::move(row));
                    }
                }
            }
        }
    }
    int nrows = static_cast<int>(rows.size());
    int rank = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < dim && rank < nrows; ++col) {
        int piv = -1;
        for (int i = rank; i < nrows; ++i)
            if (rows[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[piv], rows[rank]);
        fcode inv = Fq.inv(rows[rank][col]);
        for (int j = 0; j < dim; ++j) rows[rank][j] = Fq.mul(rows[rank][j], inv);
        for (int i = 0; i < nrows; ++i) {
            if (i == rank) continue;
            fcode f = rows[i][col];
            if (f == 0) continue;
            for (int j = 0; j < dim; ++j)
                rows[i][j] = Fq.sub(rows[i][j], Fq.mul(f, rows[rank][j]));
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_piv(dim, false);
    for (int c : pivot_col) is_piv[c] = true;
    EndAlgebra alg;
    alg.ctx = &ctx;
    for (int freec = 0; freec < dim; ++freec) {
        if (is_piv[freec]) continue;
        EndElement v = ctx.zero_elt();
        v[freec] = Fq.one();
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = Fq.neg(rows[r][freec]);
        alg.basis.push_back(std::move(v));
    }
    return alg;
}

namespace {

template <typename Fn>
void for_each_algebra_element(const EndAlgebra& alg, std::uint64_t cap, Fn fn) {
    const BundleContext& ctx = *alg.ctx;
    const FqField& Fq = ctx.field();
    std::uint64_t total = 1;
    for (int i = 0; i < alg.dim(); ++i) {
        if (total > cap) throw std::domain_error("EndAlgebra: element sweep cap exceeded");
        total *= Fq.size;
    }
    if (total > cap) throw std::domain_error("EndAlgebra: element sweep cap exceeded");
    std::vector<fcode> coef(static_cast<size_t>(alg.dim()), 0);
    for (;;) {
        EndElement h = ctx.zero_elt();
        for (int i = 0; i < alg.dim(); ++i) {
            if (coef[i] == 0) continue;
            h = ctx.add_elt(h, ctx.scale_elt(alg.basis[i], coef[i]));
        }
        fn(h);
        int i = 0;
        while (i < alg.dim()) {
            if (++coef[i] < Fq.size) break;
            coef[i] = 0;
            ++i;
        }
        if (i == alg.dim()) break;
    }
}

}  // namespace

bool is_geom_indecomposable(const EndAlgebra& alg, std::uint64_t cap) {
    const BundleContext& ctx = *alg.ctx;
    bool ok = true;
    for_each_algebra_element(alg, cap, [&](const EndElement& h) {
        if (!ok || ctx.is_scalar(h)) return;
        FPoly mp = ctx.algebra_min_poly(h);
        FPoly dmp = fp_derivative(mp);
        bool squarefree = !dmp.is_zero() && fp_gcd(mp, dmp).deg() == 0;
        if (squarefree) ok = false;  // non-scalar semisimple element
    });
    return ok;
}

bool is_indecomposable(const EndAlgebra& alg, std::uint64_t cap) {
    const BundleContext& ctx = *alg.ctx;
    bool ok = true;
    for_each_algebra_element(alg, cap, [&](const EndElement& h) {
        if (!ok) return;
        if (!ctx.is_nilpotent(h) && !ctx.is_invertible(h)) ok = false;
    });
    return ok;
}

// ------------------------------------------------------------ orbit counts ----

namespace {

struct FlagSpace {
    std::vector<std::vector<PartialFlag>> flags;
    std::vector<std::unordered_map<std::string, int>> index;
    std::uint64_t total = 1;
};

FlagSpace build_flag_space(const BundleContext& ctx, const DivisorSpec& D,
                           const Multipartition& mu, std::uint64_t cap) {
    FlagSpace fs;
    int n = ctx.rank();
    for (size_t i = 0; i < D.points.size(); ++i) {
        const FqField& R = ctx.residue_field(D.points[i]);
        auto dims = column_from_partition(n, mu[i]);
        fs.flags.push_back(enumerate_flags(n, dims, R));
        fs.index.emplace_back();
        auto& idx = fs.index.back();
        for (size_t k = 0; k < fs.flags.back().size(); ++k)
            idx[fs.flags.back()[k].key()] = static_cast<int>(k);
        fs.total *= fs.flags.back().size();
        if (fs.total > cap) throw std::domain_error("flag tuple space exceeds cap");
    }
    return fs;
}

void check_sizes(const BundleContext& ctx, const DivisorSpec& D, const Multipartition& mu) {
    if (mu.size() != D.points.size())
        throw std::domain_error("multipartition size must match number of points");
    for (const auto& part : mu) {
        int tot = std::accumulate(part.begin(), part.end(), 0);
        if (tot != ctx.rank()) throw std::domain_error("partition size must equal the rank");
    }
}

// fixed-flag counts memoized on the raw evaluation matrix (cheap key); the
// class-keyed fixed_flag_count remains the public API
Int fixed_count_by_matrix(const MatFF& g, const std::vector<int>& dims) {
    static std::map<std::string, std::vector<PartialFlag>> flag_lists;
    static std::map<std::string, Int> counts;
    static std::mutex mu;
    std::string fkey = std::to_string(g.F->uid) + "/" + std::to_string(g.rows) + "/";
    for (int d : dims) fkey += std::to_string(d) + ",";
    std::string mkey = fkey + "#";
    for (int i = 0; i < g.rows * g.cols; ++i) mkey += std::to_string(g.a[i]) + ",";
    std::lock_guard<std::mutex> lk(mu);
    auto it = counts.find(mkey);
    if (it != counts.end()) return it->second;
    auto fit = flag_lists.find(fkey);
    if (fit == flag_lists.end())
        fit = flag_lists.emplace(fkey, enumerate_flags(g.rows, dims, *g.F)).first;
    Int cnt = 0;
    for (const auto& fl : fit->second)
        if (flag_fixed_by(g, fl)) ++cnt;
    counts.emplace(mkey, cnt);
    return cnt;
}

// Orbit decomposition by breadth-first search along a generating set of Aut.
std::vector<std::uint64_t> orbit_representatives(const BundleContext& ctx, const DivisorSpec& D,
                                                 const FlagSpace& fs, std::uint64_t cap) {
    (void)cap;
    size_t r = fs.flags.size();
    std::vector<std::vector<std::vector<int>>> perms;  // per generator, per point
    for (const EndElement& f : ctx.aut_generators()) {
        std::vector<std::vector<int>> perm(r);
        for (size_t i = 0; i < r; ++i) {
            MatFF g = ctx.evaluate(f, D.points[i]);
            perm[i].resize(fs.flags[i].size());
            for (size_t k = 0; k < fs.flags[i].size(); ++k) {
                PartialFlag img = apply_flag(g, fs.flags[i][k]);
                perm[i][k] = fs.index[i].at(img.key());
            }
        }
        perms.push_back(std::move(perm));
    }
    std::vector<bool> visited(fs.total, false);
    std::vector<std::uint64_t> reps, stack;
    std::vector<int> coords(r);
    for (std::uint64_t t0 = 0; t0 < fs.total; ++t0) {
        if (visited[t0]) continue;
        reps.push_back(t0);
        visited[t0] = true;
        stack.assign(1, t0);
        while (!stack.empty()) {
            std::uint64_t t = stack.back();
            stack.pop_back();
            std::uint64_t v = t;
            for (size_t i = 0; i < r; ++i) {
                coords[i] = static_cast<int>(v % fs.flags[i].size());
                v /= fs.flags[i].size();
            }
            for (const auto& perm : perms) {
                std::uint64_t img = 0;
                for (size_t i = r; i-- > 0;) img = img * fs.flags[i].size() + perm[i][coords[i]];
                if (!visited[img]) {
                    visited[img] = true;
                    stack.push_back(img);
                }
            }
        }
    }
    return reps;
}

std::vector<PartialFlag> decode_tuple(const FlagSpace& fs, std::uint64_t t) {
    std::vector<PartialFlag> out;
    std::uint64_t v = t;
    for (size_t i = 0; i < fs.flags.size(); ++i) {
        out.push_back(fs.flags[i][v % fs.flags[i].size()]);
        v /= fs.flags[i].size();
    }
    return out;
}

}  // namespace

Int count_M(const BundleContext& ctx, const DivisorSpec& D, const Multipartition& mu) {
    check_sizes(ctx, D, mu);
    int n = ctx.rank();
    std::vector<std::vector<int>> dims;
    for (size_t i = 0; i < mu.size(); ++i) dims.push_back(column_from_partition(n, mu[i]));
    Int total = 0;
    std::uint64_t count = 0;
    ctx.for_each_aut(
        [&](const EndElement& f) {
            Int prod = 1;
            for (size_t i = 0; i < D.points.size(); ++i) {
                MatFF g = ctx.evaluate(f, D.points[i]);
                prod *= fixed_count_by_matrix(g, dims[i]);
                if (prod == 0) break;
            }
            total += prod;
            ++count;
        },
        enumeration_cap());
    Int aut = ctx.aut_order(Int(static_cast<unsigned long>(ctx.field().size)));
    if (Int(static_cast<unsigned long>(count)) != aut)
        throw std::logic_error("count_M: enumeration does not match |Aut|");
    if (total % aut != 0) throw std::logic_error("count_M: Burnside sum not divisible by |Aut|");
    return Int(total / aut);
}

namespace {

Int count_orbits_filtered(const BundleContext& ctx, const DivisorSpec& D, const Multipartition& mu,
                          bool geometric) {
    check_sizes(ctx, D, mu);
    std::uint64_t cap = enumeration_cap();
    FlagSpace fs = build_flag_space(ctx, D, mu, cap);
    auto reps = orbit_representatives(ctx, D, fs, cap);
    Int cnt = 0;
    for (std::uint64_t t : reps) {
        EndAlgebra alg = end_algebra(ctx, D, decode_tuple(fs, t));
        bool pass = geometric ? is_geom_indecomposable(alg) : is_indecomposable(alg);
        if (pass) ++cnt;
    }
    return cnt;
}

}  // namespace

Int count_A_direct(const BundleContext& ctx, const DivisorSpec& D, const Multipartition& mu) {
    return count_orbits_filtered(ctx, D, mu, true);
}

Int count_I_direct(const BundleContext& ctx, const DivisorSpec& D, const Multipartition& mu) {
    return count_orbits_filtered(ctx, D, mu, false);
}

Int count_A_twist(const BundleContext& ctx, const DivisorSpec& D, const Multipartition& mu) {
    check_sizes(ctx, D, mu);
    const FqField& Fq = ctx.field();
    int n = ctx.rank();
    long qm1 = static_cast<long>(Fq.size) - 1;
    if (qm1 % n != 0)
        throw std::domain_error(
            "count_A_twist: no order-n character for this q (n must divide q-1)");
    std::vector<std::vector<int>> dims;
    for (size_t i = 0; i < mu.size(); ++i) dims.push_back(column_from_partition(n, mu[i]));
    Cyclotomic total(n, Rat(0));
    ctx.for_each_aut(
        [&](const EndElement& f) {
            Int prod = 1;
            for (size_t i = 0; i < D.points.size(); ++i) {
                MatFF g = ctx.evaluate(f, D.points[i]);
                prod *= fixed_count_by_matrix(g, dims[i]);
                if (prod == 0) break;
            }
            if (prod == 0) return;
            fcode det = Fq.one();
            for (int u = 0; u < ctx.shape().blocks(); ++u) {
                MatFF blk(&Fq, ctx.shape().m[u], ctx.shape().m[u]);
                for (int r = 0; r < blk.rows; ++r)
                    for (int c = 0; c < blk.cols; ++c)
                        blk.at(r, c) = f[ctx.coord_index(u, u, r, c, 0)];
                det = Fq.mul(det, mat_det(blk));
            }
            long k = Fq.dlog(det) % n;
            total = total + Cyclotomic::root(n, k) * Rat(prod);
        },
        enumeration_cap());
    Rat value = total.rational_value();  // throws on internal inconsistency
    Int aut = ctx.aut_order(Int(static_cast<unsigned long>(Fq.size)));
    Rat avg = value / Rat(aut);
    if (!is_integer(avg)) throw std::logic_error("count_A_twist: non-integer result");
    return Int(avg.get_num());
}

Rat class_count_H(const BundleContext& ctx, const DivisorSpec& D,
                  const std::vector<ClassInvariant>& classes) {
    if (classes.size() != D.points.size())
        throw std::domain_error("class_count_H: one class per point required");
    Int cnt = 0;
    ctx.for_each_aut(
        [&](const EndElement& f) {
            for (size_t i = 0; i < D.points.size(); ++i) {
                MatFF g = ctx.evaluate(f, D.points[i]);
                if (!in_class(g, classes[i])) return;
            }
            ++cnt;
        },
        enumeration_cap());
    return Rat(cnt) / Rat(ctx.aut_order(Int(static_cast<unsigned long>(ctx.field().size))));
}

std::map<Multipartition, Int> nilpotent_eval_counts(const BundleContext& ctx,
                                                    const DivisorSpec& D, std::uint64_t cap) {
    if (cap == 0) cap = enumeration_cap();
    std::map<Multipartition, Int> counts;
    size_t r = D.points.size();
    Int q(static_cast<unsigned long>(ctx.field().size));
    if (ctx.shape().blocks() == 1) {
        // O(b)^n: endomorphisms are constant matrices; the nilpotent type does
        // not change under field extension, so all coordinates agree
        int n = ctx.rank();
        std::vector<int> cur;
        std::function<void(int, int)> parts = [&](int left, int maxp) {
            if (left == 0) {
                counts[Multipartition(r, cur)] = nilpotent_orbit_size(cur, q);
                return;
            }
            for (int part = std::min(left, maxp); part >= 1; --part) {
                cur.push_back(part);
                parts(left - part, part);
                cur.pop_back();
            }
        };
        parts(n, n);
        return counts;
    }
    int jobs = get_jobs();
    if (jobs <= 1) {
        ctx.for_each_nilpotent_levi(
            [&](const EndElement& eta) {
                Multipartition key(r);
                for (size_t i = 0; i < r; ++i) {
                    auto ty = nilpotent_type(ctx.evaluate(eta, D.points[i]));
                    if (!ty) return;
                    key[i] = *ty;
                }
                counts[key] += 1;
            },
            cap);
        return counts;
    }
    // parallel over a residue class of the packed free-coordinate counter
    std::vector<std::map<Multipartition, Int>> partial(jobs);
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) {
        threads.emplace_back([&, t]() {
            std::uint64_t counter = 0;
            ctx.for_each_nilpotent_levi(
                [&](const EndElement& eta) {
                    if (static_cast<int>(counter++ % jobs) != t) return;
                    Multipartition key(r);
                    for (size_t i = 0; i < r; ++i) {
                        auto ty = nilpotent_type(ctx.evaluate(eta, D.points[i]));
                        if (!ty) return;
                        key[i] = *ty;
                    }
                    partial[t][key] += 1;
                },
                cap);
        });
    }
    for (auto& th : threads) th.join();
    for (const auto& m : partial)
        for (const auto& [k, v] : m) counts[k] += v;
    return counts;
}

}  // namespace paracount
