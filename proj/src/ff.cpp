#include "paracount/ff.hpp"

#include <algorithm>

namespace paracount {

// ---------------------------------------------------------------- FPoly ----

FPoly::FPoly(const FqField* f, std::vector<fcode> coeffs) : F(f), c(std::move(coeffs)) {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

bool FPoly::is_monic() const { return !c.empty() && c.back() == F->one(); }

fcode FPoly::eval(fcode x) const {
    fcode v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = F->add(F->mul(v, x), *it);
    return v;
}

bool FPoly::operator<(const FPoly& o) const {
    if (deg() != o.deg()) return deg() < o.deg();
    for (int i = deg(); i >= 0; --i)
        if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
}

std::string FPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = deg(); i >= 0; --i) {
        if (c[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || c[i] != F->one()) s += F->elt_to_string(c[i]);
        if (i > 0) {
            if (c[i] != F->one()) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

FPoly fp_zero(const FqField* F) { return FPoly(F, {}); }
FPoly fp_one(const FqField* F) { return FPoly(F, {F->one()}); }
FPoly fp_var(const FqField* F) { return FPoly(F, {0, F->one()}); }

FPoly fp_add(const FPoly& a, const FPoly& b) {
    const FqField* F = a.F;
    std::vector<fcode> c(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < c.size(); ++i) c[i] = F->add(a.coeff(i), b.coeff(i));
    return FPoly(F, std::move(c));
}

FPoly fp_neg(const FPoly& a) {
    std::vector<fcode> c = a.c;
    for (auto& x : c) x = a.F->neg(x);
    return FPoly(a.F, std::move(c));
}

FPoly fp_sub(const FPoly& a, const FPoly& b) { return fp_add(a, fp_neg(b)); }

FPoly fp_mul(const FPoly& a, const FPoly& b) {
    const FqField* F = a.F;
    if (a.is_zero() || b.is_zero()) return fp_zero(F);
    std::vector<fcode> c(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            c[i + j] = F->add(c[i + j], F->mul(a.c[i], b.c[j]));
    }
    return FPoly(F, std::move(c));
}

FPoly fp_scale(const FPoly& a, fcode s) {
    std::vector<fcode> c = a.c;
    for (auto& x : c) x = a.F->mul(x, s);
    return FPoly(a.F, std::move(c));
}

std::pair<FPoly, FPoly> fp_divmod(const FPoly& a, const FPoly& b) {
    const FqField* F = a.F;
    if (b.is_zero()) throw std::domain_error("FPoly: division by zero");
    std::vector<fcode> r = a.c;
    std::vector<fcode> q;
    int db = b.deg();
    if (static_cast<int>(r.size()) - 1 >= db) q.assign(r.size() - db, 0);
    fcode lead_inv = F->inv(b.c.back());
    while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
        fcode f = F->mul(r.back(), lead_inv);
        size_t shift = r.size() - 1 - db;
        q[shift] = f;
        for (int i = 0; i <= db; ++i)
            r[shift + i] = F->sub(r[shift + i], F->mul(f, b.c[i]));
        while (!r.empty() && r.back() == 0) r.pop_back();
    }
    return {FPoly(F, std::move(q)), FPoly(F, std::move(r))};
}

FPoly fp_mod(const FPoly& a, const FPoly& b) { return fp_divmod(a, b).second; }

FPoly fp_monic(const FPoly& a) {
    if (a.is_zero()) return a;
    return fp_scale(a, a.F->inv(a.c.back()));
}

FPoly fp_gcd(FPoly a, FPoly b) {
    while (!b.is_zero()) {
        FPoly r = fp_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(a);
}

FPoly fp_derivative(const FPoly& a) {
    const FqField* F = a.F;
    if (a.deg() <= 0) return fp_zero(F);
    std::vector<fcode> c(a.c.size() - 1, 0);
    for (size_t i = 1; i < a.c.size(); ++i) {
        fcode k = F->from_int(static_cast<long>(i % static_cast<size_t>(F->p)));
        c[i - 1] = F->mul(a.c[i], k);
    }
    return FPoly(F, std::move(c));
}

FPoly fp_powmod(const FPoly& a, const Int& e, const FPoly& mod) {
    const FqField* F = a.F;
    FPoly result = fp_one(F);
    FPoly b = fp_mod(a, mod);
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) result = fp_mod(fp_mul(result, b), mod);
        b = fp_mod(fp_mul(b, b), mod);
        k >>= 1;
    }
    return result;
}

bool fp_is_irreducible(const FPoly& f) {
    const FqField* F = f.F;
    int d = f.deg();
    if (d <= 0) return false;
    if (d == 1) return true;
    Int Q(static_cast<unsigned long>(F->size));
    FPoly x = fp_var(F);
    FPoly xqd = fp_powmod(x, int_pow(Q, d), f);
    if (!fp_sub(xqd, x).is_zero()) return false;
    for (long l : prime_factors(d)) {
        FPoly xq = fp_powmod(x, int_pow(Q, static_cast<unsigned long>(d / l)), f);
        FPoly g = fp_gcd(f, fp_sub(xq, x));
        if (g.deg() != 0) return false;
    }
    return true;
}

namespace {

// Deterministic splitting randomness.
struct SplitRng {
    std::uint64_t s = 0x9e3779b97f4a7c15ULL;
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
};

void edf(const FPoly& h, int d, SplitRng& rng, std::vector<FPoly>& out) {
    const FqField* F = h.F;
    if (h.deg() == 0) return;
    if (h.deg() == d) {
        out.push_back(fp_monic(h));
        return;
    }
    Int Q(static_cast<unsigned long>(F->size));
    while (true) {
        std::vector<fcode> rc(static_cast<size_t>(h.deg()), 0);
        for (auto& x : rc) x = static_cast<fcode>(rng.next() % F->size);
        FPoly r(F, std::move(rc));
        if (r.is_zero()) continue;
        FPoly g;
        if (F->p == 2) {
            // additive trace map to F_2
            long bits = F->abs_deg * d;
            FPoly t = fp_mod(r, h), acc = t;
            for (long i = 1; i < bits; ++i) {
                t = fp_mod(fp_mul(t, t), h);
                acc = fp_add(acc, t);
            }
            g = fp_gcd(h, acc);
        } else {
            Int e = (int_pow(Q, static_cast<unsigned long>(d)) - 1) / 2;
            FPoly s = fp_powmod(r, e, h);
            g = fp_gcd(h, fp_sub(s, fp_one(F)));
        }
        if (g.deg() > 0 && g.deg() < h.deg()) {
            edf(g, d, rng, out);
            edf(fp_divmod(h, g).first, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<FPoly, int>> fp_factor(const FPoly& f0) {
    const FqField* F = f0.F;
    if (f0.deg() < 1) throw std::domain_error("fp_factor: constant polynomial");
    FPoly f = fp_monic(f0);
    std::vector<std::pair<FPoly, int>> factors;
    Int Q(static_cast<unsigned long>(F->size));
    SplitRng rng;
    FPoly x = fp_var(F);
    for (int d = 1; f.deg() > 0; ++d) {
        if (f.deg() < 2 * d) {
            factors.emplace_back(f, 1);
            break;
        }
        FPoly xqd = fp_powmod(x, int_pow(Q, static_cast<unsigned long>(d)), f);
        FPoly h = fp_gcd(f, fp_sub(xqd, x));
        if (h.deg() == 0) continue;
        std::vector<FPoly> irr;
        edf(h, d, rng, irr);
        for (const auto& pi : irr) {
            int mult = 0;
            while (true) {
                auto [q, r] = fp_divmod(f, pi);
                if (!r.is_zero()) break;
                f = q;
                ++mult;
            }
            factors.emplace_back(pi, mult);
        }
    }
    std::sort(factors.begin(), factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return factors;
}

std::vector<fcode> fp_roots(const FPoly& f) {
    std::vector<fcode> roots;
    for (const auto& [pi, mult] : fp_factor(f)) {
        if (pi.deg() == 1) roots.push_back(f.F->neg(pi.c[0]));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// -------------------------------------------------------------- FqField ----

std::mutex FqField::registry_mu_;

namespace {
int next_uid() {
    static int n = 0;
    return ++n;
}
}  // namespace

std::map<std::pair<const FqField*, std::vector<fcode>>, std::unique_ptr<FqField>>&
FqField::registry() {
    static std::map<std::pair<const FqField*, std::vector<fcode>>, std::unique_ptr<FqField>> r;
    return r;
}

std::map<long, std::unique_ptr<FqField>>& FqField::prime_registry() {
    static std::map<long, std::unique_ptr<FqField>> r;
    return r;
}

const FqField& FqField::prime(long p) {
    if (!is_prime(p)) throw std::domain_error("FqField: characteristic must be prime");
    std::lock_guard<std::mutex> lk(registry_mu_);
    auto& reg = prime_registry();
    auto it = reg.find(p);
    if (it == reg.end()) {
        auto F = std::unique_ptr<FqField>(new FqField());
        F->p = p;
        F->abs_deg = 1;
        F->base = nullptr;
        F->rel_deg = 1;
        F->size = static_cast<std::uint64_t>(p);
        F->uid = next_uid();
        F->build_tables();
        it = reg.emplace(p, std::move(F)).first;
    }
    return *it->second;
}

const FqField& FqField::extension(const FqField& base, const FPoly& modulus) {
    if (modulus.F != &base) throw std::domain_error("FqField: modulus over wrong field");
    if (!modulus.is_monic()) throw std::domain_error("FqField: modulus must be monic");
    if (!fp_is_irreducible(modulus)) throw std::domain_error("FqField: modulus must be irreducible");
    std::lock_guard<std::mutex> lk(registry_mu_);
    auto key = std::make_pair(&base, modulus.c);
    auto& reg = registry();
    auto it = reg.find(key);
    if (it == reg.end()) {
        auto F = std::unique_ptr<FqField>(new FqField());
        F->p = base.p;
        F->base = &base;
        F->rel_deg = modulus.deg();
        F->abs_deg = base.abs_deg * F->rel_deg;
        F->size = 1;
        for (int i = 0; i < F->rel_deg; ++i) F->size *= base.size;
        F->modulus = modulus.c;
        F->uid = next_uid();
        F->build_tables();
        it = reg.emplace(key, std::move(F)).first;
    }
    return *it->second;
}

const FqField& FqField::extension(const FqField& base, int k) {
    if (k < 1) throw std::domain_error("FqField: extension degree must be positive");
    if (k == 1) return base;
    // lexicographically least monic irreducible of degree k
    std::uint64_t total = 1;
    for (int i = 0; i < k; ++i) {
        total *= base.size;
        if (total > (1ULL << 26)) throw std::domain_error("FqField: modulus search space too large");
    }
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<fcode> c(k + 1, 0);
        std::uint64_t v = code;
        for (int i = 0; i < k; ++i) {
            c[i] = static_cast<fcode>(v % base.size);
            v /= base.size;
        }
        c[k] = base.one();
        FPoly f(&base, std::move(c));
        if (fp_is_irreducible(f)) return extension(base, f);
    }
    throw std::logic_error("FqField: no irreducible polynomial found");
}

const FqField& make_field(long p, int k) {
    const FqField& Fp = FqField::prime(p);
    return FqField::extension(Fp, k);
}

fcode FqField::raw_mul(fcode a, fcode b) const {
    if (base == nullptr) return static_cast<fcode>((static_cast<std::uint64_t>(a) * b) % p);
    std::uint64_t bs = base->size;
    std::vector<fcode> da(rel_deg, 0), db(rel_deg, 0);
    {
        std::uint64_t v = a;
        for (int i = 0; i < rel_deg; ++i) {
            da[i] = static_cast<fcode>(v % bs);
            v /= bs;
        }
        v = b;
        for (int i = 0; i < rel_deg; ++i) {
            db[i] = static_cast<fcode>(v % bs);
            v /= bs;
        }
    }
    std::vector<fcode> prod(2 * rel_deg - 1, 0);
    for (int i = 0; i < rel_deg; ++i) {
        if (da[i] == 0) continue;
        for (int j = 0; j < rel_deg; ++j)
            prod[i + j] = base->add(prod[i + j], base->mul(da[i], db[j]));
    }
    // reduce modulo the monic modulus
    for (int i = 2 * rel_deg - 2; i >= rel_deg; --i) {
        fcode f = prod[i];
        if (f == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < rel_deg; ++j)
            prod[i - rel_deg + j] = base->sub(prod[i - rel_deg + j], base->mul(f, modulus[j]));
    }
    std::uint64_t out = 0;
    for (int i = rel_deg - 1; i >= 0; --i) out = out * bs + prod[i];
    return static_cast<fcode>(out);
}

void FqField::build_tables() {
    if (size > (1ULL << 22))
        throw std::domain_error("FqField: field too large for table-based arithmetic");
    const std::uint64_t n = size - 1;  // multiplicative order
    auto raw_pow = [&](fcode a, std::uint64_t e) {
        fcode r = one_;
        while (e) {
            if (e & 1) r = raw_mul(r, a);
            a = raw_mul(a, a);
            e >>= 1;
        }
        return r;
    };
    std::vector<long> ls = prime_factors(static_cast<long>(n));
    fcode g = 0;
    for (std::uint64_t cand = 1; cand < size; ++cand) {
        bool ok = true;
        for (long l : ls) {
            if (raw_pow(static_cast<fcode>(cand), n / static_cast<std::uint64_t>(l)) == one_) {
                ok = false;
                break;
            }
        }
        if (ok) {
            g = static_cast<fcode>(cand);
            break;
        }
    }
    exp_.assign(n, 0);
    log_.assign(size, 0);
    fcode cur = one_;
    for (std::uint64_t i = 0; i < n; ++i) {
        exp_[i] = cur;
        log_[cur] = static_cast<std::uint32_t>(i);
        cur = raw_mul(cur, g);
    }
    frob_p_.assign(size, 0);
    for (std::uint64_t i = 0; i < n; ++i)
        frob_p_[exp_[i]] = exp_[(i * static_cast<std::uint64_t>(p)) % n];
    // absolute trace
    tr_p_.assign(size, 0);
    std::vector<fcode> fromint(p);
    for (long v = 0; v < p; ++v) fromint[v] = from_int(v);
    std::vector<std::uint8_t> code_to_int(size, 255);
    for (long v = 0; v < p; ++v) code_to_int[fromint[v]] = static_cast<std::uint8_t>(v);
    for (std::uint64_t a = 0; a < size; ++a) {
        fcode t = 0, x = static_cast<fcode>(a);
        for (int s = 0; s < abs_deg; ++s) {
            t = add(t, x);
            x = frob_p_[x];
        }
        if (code_to_int[t] == 255) throw std::logic_error("FqField: trace not in prime field");
        tr_p_[a] = code_to_int[t];
    }
}

fcode FqField::add(fcode a, fcode b) const {
    if (base == nullptr) {
        std::uint64_t s = static_cast<std::uint64_t>(a) + b;
        if (s >= static_cast<std::uint64_t>(p)) s -= p;
        return static_cast<fcode>(s);
    }
    std::uint64_t bs = base->size, out = 0, mul = 1, va = a, vb = b;
    for (int i = 0; i < rel_deg; ++i) {
        out += mul * base->add(static_cast<fcode>(va % bs), static_cast<fcode>(vb % bs));
        va /= bs;
        vb /= bs;
        mul *= bs;
    }
    return static_cast<fcode>(out);
}

fcode FqField::neg(fcode a) const {
    if (base == nullptr) return a == 0 ? 0 : static_cast<fcode>(p - a);
    std::uint64_t bs = base->size, out = 0, mul = 1, va = a;
    for (int i = 0; i < rel_deg; ++i) {
        out += mul * base->neg(static_cast<fcode>(va % bs));
        va /= bs;
        mul *= bs;
    }
    return static_cast<fcode>(out);
}

fcode FqField::sub(fcode a, fcode b) const { return add(a, neg(b)); }

fcode FqField::pow(fcode a, Int e) const {
    if (a == 0) {
        if (e <= 0) throw std::domain_error("FqField: 0^nonpositive");
        return 0;
    }
    Int n(static_cast<unsigned long>(size - 1));
    Int ee = e % n;
    if (ee < 0) ee += n;
    std::uint64_t l = (static_cast<std::uint64_t>(log_[a]) * ee.get_ui()) % (size - 1);
    return exp_[l];
}

fcode FqField::from_int(long v) const {
    v %= p;
    if (v < 0) v += p;
    if (base == nullptr) return static_cast<fcode>(v);
    return base->from_int(v);  // digit-0 embedding: same code value
}

fcode FqField::frobenius_pow(fcode a, long s) const {
    s %= abs_deg;
    if (s < 0) s += abs_deg;
    for (long i = 0; i < s; ++i) a = frob_p_[a];
    return a;
}

fcode FqField::frobenius_base(fcode a) const {
    if (base == nullptr) return a;
    return frobenius_pow(a, base->abs_deg);
}

fcode FqField::trace_to_base(fcode a) const {
    fcode t = 0, x = a;
    for (int s = 0; s < rel_deg; ++s) {
        t = add(t, x);
        x = frobenius_base(x);
    }
    return t;
}

fcode FqField::norm_to_base(fcode a) const {
    fcode t = one_, x = a;
    for (int s = 0; s < rel_deg; ++s) {
        t = mul(t, x);
        x = frobenius_base(x);
    }
    return t;
}

std::vector<fcode> FqField::digits(fcode a) const {
    std::uint64_t bs = (base == nullptr) ? static_cast<std::uint64_t>(p) : base->size;
    std::vector<fcode> d(rel_deg, 0);
    std::uint64_t v = a;
    for (int i = 0; i < rel_deg; ++i) {
        d[i] = static_cast<fcode>(v % bs);
        v /= bs;
    }
    return d;
}

fcode FqField::from_digits(const std::vector<fcode>& d) const {
    std::uint64_t bs = (base == nullptr) ? static_cast<std::uint64_t>(p) : base->size;
    std::uint64_t out = 0;
    for (size_t i = d.size(); i-- > 0;) out = out * bs + d[i];
    return static_cast<fcode>(out);
}

fcode FqField::embed_from(const FqField& S, fcode a) const {
    if (&S == this) return a;
    if (S.p != p || abs_deg % S.abs_deg != 0)
        throw std::domain_error("FqField: no embedding between these fields");
    if (S.base == nullptr) return from_int(static_cast<long>(a));
    std::vector<fcode> powers;
    {
        std::lock_guard<std::mutex> lk(embed_mu_);
        auto it = embed_cache_.find(&S);
        if (it != embed_cache_.end()) powers = it->second;
    }
    if (powers.empty()) {
        // image of S's generator: least root of S.modulus (coefficients embedded)
        std::vector<fcode> mc(S.modulus.size());
        for (size_t i = 0; i < mc.size(); ++i) mc[i] = embed_from(*S.base, S.modulus[i]);
        FPoly m(this, std::move(mc));
        std::vector<fcode> roots = fp_roots(m);
        if (roots.empty()) throw std::logic_error("FqField: embedding root not found");
        powers.assign(S.rel_deg, one_);
        for (int j = 1; j < S.rel_deg; ++j) powers[j] = mul(powers[j - 1], roots[0]);
        std::lock_guard<std::mutex> lk(embed_mu_);
        embed_cache_.emplace(&S, powers);
    }
    auto d = S.digits(a);
    fcode out = 0;
    for (int j = 0; j < S.rel_deg; ++j)
        out = add(out, mul(embed_from(*S.base, d[j]), powers[j]));
    return out;
}

std::string FqField::elt_to_string(fcode a) const {
    if (base == nullptr) return std::to_string(a);
    auto d = digits(a);
    std::string s;
    for (int i = rel_deg - 1; i >= 0; --i) {
        if (d[i] == 0) continue;
        if (!s.empty()) s += "+";
        std::string coeff = base->elt_to_string(d[i]);
        if (i == 0) {
            s += coeff;
        } else {
            if (d[i] != base->one()) s += "(" + coeff + ")*";
            s += "u";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

// ---------------------------------------------------------- closed points ----

std::vector<ClosedPoint> closed_points(const FqField& field, int d, int count) {
    if (count < 0) throw std::domain_error("closed_points: negative count");
    Int avail = necklace_count(Int(static_cast<unsigned long>(field.size)), d);
    if (avail < count)
        throw std::domain_error("closed_points: insufficient points for this base field (degree " +
                                std::to_string(d) + " over size " + std::to_string(field.size) +
                                ")");
    std::vector<ClosedPoint> pts;
    std::uint64_t total = 1;
    for (int i = 0; i < d; ++i) total *= field.size;
    for (std::uint64_t code = 0; code < total && static_cast<int>(pts.size()) < count; ++code) {
        std::vector<fcode> c(d + 1, 0);
        std::uint64_t v = code;
        for (int i = 0; i < d; ++i) {
            c[i] = static_cast<fcode>(v % field.size);
            v /= field.size;
        }
        c[d] = field.one();
        FPoly f(&field, std::move(c));
        if (fp_is_irreducible(f)) pts.push_back(ClosedPoint{&field, f});
    }
    return pts;
}

std::vector<ClosedPoint> all_closed_points(const FqField& field, int d) {
    Int avail = necklace_count(Int(static_cast<unsigned long>(field.size)), d);
    return closed_points(field, d, static_cast<int>(avail.get_si()));
}

std::vector<ClosedPoint> base_change_point(const ClosedPoint& point, int e) {
    const FqField& K = FqField::extension(*point.base, e);
    std::vector<fcode> c(point.poly.c.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = K.embed_from(*point.base, point.poly.c[i]);
    FPoly f(&K, std::move(c));
    std::vector<ClosedPoint> out;
    if (e == 1) {
        out.push_back(point);
        return out;
    }
    for (const auto& [pi, mult] : fp_factor(f)) {
        for (int i = 0; i < mult; ++i) out.push_back(ClosedPoint{&K, pi});
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace paracount
