#include "paracount/bundle.hpp"

#include <algorithm>
#include <set>

namespace paracount {

BundleShape::BundleShape(std::vector<int> bs, std::vector<int> ms)
    : b(std::move(bs)), m(std::move(ms)) {
    if (b.size() != m.size() || b.empty()) throw std::domain_error("BundleShape: bad lists");
    for (size_t i = 0; i + 1 < b.size(); ++i)
        if (b[i] <= b[i + 1]) throw std::domain_error("BundleShape: b not strictly decreasing");
    for (int mi : m)
        if (mi <= 0) throw std::domain_error("BundleShape: multiplicities must be positive");
}

BundleShape BundleShape::from_degrees(std::vector<int> degs) {
    if (degs.empty()) throw std::domain_error("BundleShape: empty");
    std::sort(degs.rbegin(), degs.rend());
    std::vector<int> b, m;
    for (int d : degs) {
        if (!b.empty() && b.back() == d)
            ++m.back();
        else {
            b.push_back(d);
            m.push_back(1);
        }
    }
    return BundleShape(std::move(b), std::move(m));
}

int BundleShape::rank() const {
    int n = 0;
    for (int mi : m) n += mi;
    return n;
}

int BundleShape::degree() const {
    int d = 0;
    for (size_t i = 0; i < b.size(); ++i) d += b[i] * m[i];
    return d;
}

BundleShape BundleShape::twist(int c) const {
    BundleShape s = *this;
    for (int& bi : s.b) bi += c;
    return s;
}

bool BundleShape::operator<(const BundleShape& o) const {
    if (b != o.b) return b < o.b;
    return m < o.m;
}

std::string BundleShape::to_string() const {
    std::string s;
    for (size_t i = 0; i < b.size(); ++i) {
        if (i) s += "+";
        s += "O(" + std::to_string(b[i]) + ")";
        if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
}

DivisorSpec::DivisorSpec(const FqField& F, std::vector<ClosedPoint> pts)
    : base(&F), points(std::move(pts)) {
    std::set<std::vector<fcode>> seen;
    for (const auto& pt : points) {
        if (pt.base != &F) throw std::domain_error("DivisorSpec: point over wrong field");
        if (!seen.insert(pt.poly.c).second)
            throw std::domain_error("DivisorSpec: points must be pairwise distinct");
    }
}

DivisorSpec DivisorSpec::from_profile(const FqField& F, const std::vector<int>& profile) {
    std::map<int, int> need;
    for (int d : profile) {
        if (d <= 0) throw std::domain_error("DivisorSpec: degrees must be positive");
        need[d]++;
    }
    std::map<int, std::vector<ClosedPoint>> pool;
    for (auto [d, cnt] : need) pool[d] = closed_points(F, d, cnt);
    std::map<int, int> used;
    std::vector<ClosedPoint> pts;
    for (int d : profile) pts.push_back(pool[d][used[d]++]);
    return DivisorSpec(F, std::move(pts));
}

std::vector<int> DivisorSpec::degrees() const {
    std::vector<int> ds;
    for (const auto& pt : points) ds.push_back(pt.degree());
    return ds;
}

int DivisorSpec::total_degree() const {
    int l = 0;
    for (const auto& pt : points) l += pt.degree();
    return l;
}

// ---------------------------------------------------------- BundleContext ----

BundleContext::BundleContext(BundleShape shape, const FqField& Fq)
    : shape_(std::move(shape)), Fq_(&Fq), n_(shape_.rank()) {
    if (n_ > kMaxN) throw std::domain_error("BundleContext: rank exceeds supported bound");
    int f = shape_.blocks();
    offset_.assign(f + 1, 0);
    for (int u = 0; u < f; ++u) offset_[u + 1] = offset_[u] + shape_.m[u];
    block_base_.assign(f, std::vector<int>(f, -1));
    for (int u = 0; u < f; ++u)
        for (int v = 0; v < f; ++v) {
            if (shape_.b[u] < shape_.b[v]) continue;  // Hom(O(b_v), O(b_u)) = 0
            block_base_[u][v] = layout_.dim();
            int degbound = shape_.b[u] - shape_.b[v];
            for (int row = 0; row < shape_.m[u]; ++row)
                for (int col = 0; col < shape_.m[v]; ++col)
                    for (int j = 0; j <= degbound; ++j)
                        layout_.coords.push_back({u, v, row, col, j});
        }
    // multiplication pairs: block (u,v) x block (v,w) -> block (u,w)
    for (int i1 = 0; i1 < layout_.dim(); ++i1) {
        const auto& c1 = layout_.coords[i1];
        for (int i2 = 0; i2 < layout_.dim(); ++i2) {
            const auto& c2 = layout_.coords[i2];
            if (c1.v != c2.u || c1.col != c2.row) continue;
            int t = coord_index(c1.u, c2.v, c1.row, c2.col, c1.j + c2.j);
            if (t < 0) throw std::logic_error("BundleContext: degree bound violated in product");
            mult_pairs_.push_back({i1, i2, t});
        }
    }
}

int BundleContext::coord_index(int u, int v, int row, int col, int j) const {
    if (block_base_[u][v] < 0) return -1;
    int degbound = shape_.b[u] - shape_.b[v];
    if (j < 0 || j > degbound) return -1;
    return block_base_[u][v] + (row * shape_.m[v] + col) * (degbound + 1) + j;
}

long BundleContext::delta() const {
    long d = 0;
    int f = shape_.blocks();
    for (int u = 0; u < f; ++u)
        for (int v = u + 1; v < f; ++v)
            d += static_cast<long>(shape_.m[u]) * shape_.m[v] * (shape_.b[u] - shape_.b[v] - 1);
    return d;
}

EndElement BundleContext::identity_elt() const {
    EndElement h = zero_elt();
    for (int u = 0; u < shape_.blocks(); ++u)
        for (int r = 0; r < shape_.m[u]; ++r) h[coord_index(u, u, r, r, 0)] = Fq_->one();
    return h;
}

EndElement BundleContext::add_elt(const EndElement& a, const EndElement& b) const {
    EndElement c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = Fq_->add(a[i], b[i]);
    return c;
}

EndElement BundleContext::sub_elt(const EndElement& a, const EndElement& b) const {
    EndElement c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = Fq_->sub(a[i], b[i]);
    return c;
}

EndElement BundleContext::mul_elt(const EndElement& a, const EndElement& b) const {
    EndElement c = zero_elt();
    for (const auto& [i1, i2, t] : mult_pairs_) {
        if (a[i1] == 0 || b[i2] == 0) continue;
        c[t] = Fq_->add(c[t], Fq_->mul(a[i1], b[i2]));
    }
    return c;
}

EndElement BundleContext::scale_elt(const EndElement& a, fcode s) const {
    EndElement c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = Fq_->mul(a[i], s);
    return c;
}

namespace {

MatFF levi_block(const BundleContext& ctx, const EndElement& h, int u) {
    const auto& shape = ctx.shape();
    MatFF blk(&ctx.field(), shape.m[u], shape.m[u]);
    for (int r = 0; r < shape.m[u]; ++r)
        for (int c = 0; c < shape.m[u]; ++c) blk.at(r, c) = h[ctx.coord_index(u, u, r, c, 0)];
    return blk;
}

}  // namespace

bool BundleContext::is_invertible(const EndElement& h) const {
    for (int u = 0; u < shape_.blocks(); ++u)
        if (!mat_invertible(levi_block(*this, h, u))) return false;
    return true;
}

bool BundleContext::is_nilpotent(const EndElement& h) const {
    for (int u = 0; u < shape_.blocks(); ++u)
        if (!nilpotent_type(levi_block(*this, h, u))) return false;
    return true;
}

bool BundleContext::is_scalar(const EndElement& h) const {
    fcode s = h[coord_index(0, 0, 0, 0, 0)];
    return scale_elt(identity_elt(), s) == h;
}

FPoly BundleContext::algebra_min_poly(const EndElement& h) const {
    const int d = dim_end();
    std::vector<EndElement> pows;
    pows.push_back(identity_elt());
    auto rank_of = [&](const std::vector<EndElement>& vs) {
        std::vector<EndElement> rows = vs;
        int k = static_cast<int>(rows.size()), rank = 0;
        for (int col = 0; col < d && rank < k; ++col) {
            int piv = -1;
            for (int i = rank; i < k; ++i)
                if (rows[i][col] != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) continue;
            std::swap(rows[piv], rows[rank]);
            fcode inv = Fq_->inv(rows[rank][col]);
            for (int j = 0; j < d; ++j) rows[rank][j] = Fq_->mul(rows[rank][j], inv);
            for (int i = 0; i < k; ++i) {
                if (i == rank) continue;
                fcode f = rows[i][col];
                if (f == 0) continue;
                for (int j = 0; j < d; ++j)
                    rows[i][j] = Fq_->sub(rows[i][j], Fq_->mul(f, rows[rank][j]));
            }
            ++rank;
        }
        return rank;
    };
    while (rank_of(pows) == static_cast<int>(pows.size()))
        pows.push_back(mul_elt(pows.back(), h));
    // last power depends on the previous (independent) ones; solve for it
    size_t k = pows.size() - 1;
    std::vector<std::vector<fcode>> M(d, std::vector<fcode>(k + 1, 0));
    for (size_t c = 0; c <= k; ++c)
        for (int r = 0; r < d; ++r) M[r][c] = pows[c][r];
    int rank = 0;
    for (size_t col = 0; col < k && rank < d; ++col) {
        int piv = -1;
        for (int i = rank; i < d; ++i)
            if (M[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) throw std::logic_error("algebra_min_poly: unexpected dependence");
        std::swap(M[piv], M[rank]);
        fcode inv = Fq_->inv(M[rank][col]);
        for (size_t j = 0; j <= k; ++j) M[rank][j] = Fq_->mul(M[rank][j], inv);
        for (int i = 0; i < d; ++i) {
            if (i == rank) continue;
            fcode f = M[i][col];
            if (f == 0) continue;
            for (size_t j = 0; j <= k; ++j) M[i][j] = Fq_->sub(M[i][j], Fq_->mul(f, M[rank][j]));
        }
        ++rank;
    }
    std::vector<fcode> ann(k + 1, 0);
    ann[k] = Fq_->one();
    for (size_t r = 0; r < k; ++r) ann[r] = Fq_->neg(M[r][k]);
    return FPoly(Fq_, std::move(ann));
}

const BundleContext::PointData& BundleContext::point_data(const ClosedPoint& pt) const {
    if (pt.base != Fq_) throw std::domain_error("BundleContext: point over wrong base field");
    std::lock_guard<std::mutex> lk(point_mu_);
    auto it = point_cache_.find(pt.poly.c);
    if (it == point_cache_.end()) {
        PointData pd;
        fcode tbar;
        if (pt.degree() == 1) {
            pd.R = Fq_;
            tbar = Fq_->neg(pt.poly.c[0]);  // root of t + c_0
        } else {
            pd.R = &FqField::extension(*Fq_, pt.poly);
            tbar = pd.R->from_digits({0, Fq_->one()});  // class of t
        }
        int maxdeg = shape_.b.front() - shape_.b.back();
        pd.tpow.assign(maxdeg + 1, pd.R->one());
        for (int j = 1; j <= maxdeg; ++j) pd.tpow[j] = pd.R->mul(pd.tpow[j - 1], tbar);
        it = point_cache_.emplace(pt.poly.c, std::move(pd)).first;
    }
    return it->second;
}

const FqField& BundleContext::residue_field(const ClosedPoint& pt) const {
    return *point_data(pt).R;
}

MatFF BundleContext::evaluate(const EndElement& h, const ClosedPoint& pt) const {
    const PointData& pd = point_data(pt);
    MatFF M(pd.R, n_, n_);
    for (int i = 0; i < layout_.dim(); ++i) {
        if (h[i] == 0) continue;
        const auto& c = layout_.coords[i];
        int gr = offset_[c.u] + c.row, gc = offset_[c.v] + c.col;
        // F_q coefficient codes are valid residue-field codes (digit-0 packing)
        M.at(gr, gc) = pd.R->add(M.at(gr, gc), pd.R->mul(h[i], pd.tpow[c.j]));
    }
    return M;
}

Int BundleContext::aut_order(const Int& q) const {
    Int o = 1;
    long u_dim = 0;
    int f = shape_.blocks();
    for (int u = 0; u < f; ++u) {
        o *= gl_order(shape_.m[u], q);
        for (int v = u + 1; v < f; ++v)
            u_dim += static_cast<long>(shape_.m[u]) * shape_.m[v] * (shape_.b[u] - shape_.b[v] + 1);
    }
    return o * int_pow(q, static_cast<unsigned long>(u_dim));
}

QPoly BundleContext::aut_order_poly() const {
    QPoly o{Rat(1)};
    long u_dim = 0;
    int f = shape_.blocks();
    for (int u = 0; u < f; ++u) {
        o = o * gl_order_poly(shape_.m[u]);
        for (int v = u + 1; v < f; ++v)
            u_dim += static_cast<long>(shape_.m[u]) * shape_.m[v] * (shape_.b[u] - shape_.b[v] + 1);
    }
    if (u_dim > 0) o = o * QPoly::var().subst_power(u_dim);
    return o;
}

Int BundleContext::end_order(const Int& q) const {
    return int_pow(q, static_cast<unsigned long>(dim_end()));
}

std::uint64_t BundleContext::end_size() const {
    std::uint64_t s = 1;
    for (int i = 0; i < dim_end(); ++i) {
        if (s > (1ULL << 62) / Fq_->size) throw std::domain_error("BundleContext: |End| overflow");
        s *= Fq_->size;
    }
    return s;
}

std::uint64_t BundleContext::aut_size() const {
    Int o = aut_order(Int(static_cast<unsigned long>(Fq_->size)));
    if (!o.fits_ulong_p()) throw std::domain_error("BundleContext: |Aut| overflow");
    return o.get_ui();
}

void BundleContext::for_each_end(const std::function<void(const EndElement&)>& fn,
                                 std::uint64_t cap) const {
    if (end_size() > cap)
        throw std::domain_error("BundleContext: enumeration cap exceeded (|End|)");
    EndElement h = zero_elt();
    std::uint64_t q = Fq_->size;
    for (;;) {
        fn(h);
        int i = 0;
        while (i < dim_end()) {
            if (++h[i] < q) break;
            h[i] = 0;
            ++i;
        }
        if (i == dim_end()) break;
    }
}

namespace {

// all m x m matrices over F satisfying pred, as flat entry lists
std::vector<std::vector<fcode>> block_list(const FqField& F, int m,
                                           const std::function<bool(const MatFF&)>& pred) {
    std::vector<std::vector<fcode>> out;
    std::uint64_t total = 1;
    for (int i = 0; i < m * m; ++i) total *= F.size;
    for (std::uint64_t code = 0; code < total; ++code) {
        MatFF M(&F, m, m);
        std::uint64_t v = code;
        for (int i = 0; i < m * m; ++i) {
            M.a[i] = static_cast<fcode>(v % F.size);
            v /= F.size;
        }
        if (!pred(M)) continue;
        out.emplace_back(M.a.begin(), M.a.begin() + m * m);
    }
    return out;
}

}  // namespace

void BundleContext::for_each_aut(const std::function<void(const EndElement&)>& fn,
                                 std::uint64_t cap) const {
    if (aut_size() > cap)
        throw std::domain_error("BundleContext: enumeration cap exceeded (|Aut|)");
    int f = shape_.blocks();
    std::vector<std::vector<std::vector<fcode>>> lists(f);
    for (int u = 0; u < f; ++u)
        lists[u] = block_list(*Fq_, shape_.m[u], [](const MatFF& M) { return mat_invertible(M); });
    std::vector<int> free_idx;
    for (int i = 0; i < dim_end(); ++i) {
        const auto& c = layout_.coords[i];
        if (c.u == c.v && c.j == 0) continue;
        free_idx.push_back(i);
    }
    EndElement h = zero_elt();
    std::uint64_t q = Fq_->size;
    std::function<void(int)> rec_levi = [&](int u) {
        if (u == f) {
            for (int idx : free_idx) h[idx] = 0;
            for (;;) {
                fn(h);
                size_t i = 0;
                while (i < free_idx.size()) {
                    if (++h[free_idx[i]] < q) break;
                    h[free_idx[i]] = 0;
                    ++i;
                }
                if (i == free_idx.size()) break;
            }
            return;
        }
        for (const auto& blk : lists[u]) {
            for (int r = 0; r < shape_.m[u]; ++r)
                for (int c = 0; c < shape_.m[u]; ++c)
                    h[coord_index(u, u, r, c, 0)] = blk[r * shape_.m[u] + c];
            rec_levi(u + 1);
        }
    };
    rec_levi(0);
}

void BundleContext::for_each_nilpotent_levi(const std::function<void(const EndElement&)>& fn,
                                            std::uint64_t cap) const {
    int f = shape_.blocks();
    std::vector<std::vector<std::vector<fcode>>> lists(f);
    std::uint64_t total = 1;
    for (int u = 0; u < f; ++u) {
        lists[u] = block_list(*Fq_, shape_.m[u],
                              [](const MatFF& M) { return nilpotent_type(M).has_value(); });
        total *= lists[u].size();
    }
    std::vector<int> free_idx;
    for (int i = 0; i < dim_end(); ++i) {
        const auto& c = layout_.coords[i];
        if (c.u == c.v && c.j == 0) continue;
        free_idx.push_back(i);
    }
    for (size_t i = 0; i < free_idx.size(); ++i) {
        if (total > cap) break;
        total *= Fq_->size;
    }
    if (total > cap)
        throw std::domain_error("BundleContext: enumeration cap exceeded (nilpotent part)");
    EndElement h = zero_elt();
    std::uint64_t q = Fq_->size;
    std::function<void(int)> rec_levi = [&](int u) {
        if (u == f) {
            for (int idx : free_idx) h[idx] = 0;
            for (;;) {
                fn(h);
                size_t i = 0;
                while (i < free_idx.size()) {
                    if (++h[free_idx[i]] < q) break;
                    h[free_idx[i]] = 0;
                    ++i;
                }
                if (i == free_idx.size()) break;
            }
            return;
        }
        for (const auto& blk : lists[u]) {
            for (int r = 0; r < shape_.m[u]; ++r)
                for (int c = 0; c < shape_.m[u]; ++c)
                    h[coord_index(u, u, r, c, 0)] = blk[r * shape_.m[u] + c];
            rec_levi(u + 1);
        }
    };
    rec_levi(0);
}

std::vector<EndElement> BundleContext::aut_generators() const {
    std::vector<EndElement> gens;
    const FqField& F = *Fq_;
    int f = shape_.blocks();
    fcode g = F.generator();
    for (int u = 0; u < f; ++u) {
        int m = shape_.m[u];
        if (m == 1) {
            if (F.size > 2) {
                EndElement h = identity_elt();
                h[coord_index(u, u, 0, 0, 0)] = g;
                gens.push_back(h);
            }
        } else {
            // diag(g,1,...,1), the m-cycle permutation, and a transvection
            if (F.size > 2) {
                EndElement h = identity_elt();
                h[coord_index(u, u, 0, 0, 0)] = g;
                gens.push_back(h);
            }
            EndElement cyc = identity_elt();
            for (int r = 0; r < m; ++r) cyc[coord_index(u, u, r, r, 0)] = 0;
            for (int r = 0; r < m; ++r) cyc[coord_index(u, u, (r + 1) % m, r, 0)] = F.one();
            gens.push_back(cyc);
            EndElement tr = identity_elt();
            tr[coord_index(u, u, 0, 1, 0)] = F.one();
            gens.push_back(tr);
        }
    }
    // unipotent coordinate shifts: one per off-diagonal coordinate and F_p-basis element
    std::function<std::vector<fcode>(const FqField&)> fbasis = [&](const FqField& K) {
        if (K.base == nullptr) return std::vector<fcode>{1};
        auto bb = fbasis(*K.base);
        std::vector<fcode> out;
        std::uint64_t mul = 1;
        for (int j = 0; j < K.rel_deg; ++j) {
            for (fcode c : bb) out.push_back(static_cast<fcode>(c * mul));
            mul *= K.base->size;
        }
        return out;
    };
    std::vector<fcode> basis = fbasis(F);
    for (int i = 0; i < dim_end(); ++i) {
        const auto& c = layout_.coords[i];
        if (c.u == c.v) continue;
        for (fcode b : basis) {
            EndElement h = identity_elt();
            h[i] = b;
            gens.push_back(h);
        }
    }
    return gens;
}

std::vector<BundleShape> shapes_of_degree(int n, int d, int gap_bound) {
    std::vector<BundleShape> out;
    int gmax = gap_bound - 2;
    std::vector<int> ms;
    std::function<void(int)> rec_m = [&](int left) {
        if (left == 0) {
            int f = static_cast<int>(ms.size());
            if (f == 1) {
                if (d % n == 0) out.push_back(BundleShape({d / n}, {n}));
                return;
            }
            if (gmax < 1) return;
            std::vector<int> gaps(f - 1, 1);
            std::function<void(int)> rec_g = [&](int gi) {
                if (gi == f - 1) {
                    std::vector<int> suffix(f, 0);
                    for (int i = f - 2; i >= 0; --i) suffix[i] = suffix[i + 1] + gaps[i];
                    long weighted = 0;
                    for (int i = 0; i < f; ++i) weighted += static_cast<long>(ms[i]) * suffix[i];
                    long num = d - weighted;
                    if (num % n != 0) return;
                    long bf = num / n;
                    std::vector<int> b(f);
                    for (int i = 0; i < f; ++i) b[i] = static_cast<int>(bf) + suffix[i];
                    out.push_back(BundleShape(b, ms));
                    return;
                }
                for (int g = 1; g <= gmax; ++g) {
                    gaps[gi] = g;
                    rec_g(gi + 1);
                }
            };
            rec_g(0);
            return;
        }
        for (int mi = 1; mi <= left; ++mi) {
            ms.push_back(mi);
            rec_m(left - mi);
            ms.pop_back();
        }
    };
    rec_m(n);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace paracount
