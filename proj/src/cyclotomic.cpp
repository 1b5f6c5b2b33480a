#include "paracount/cyclotomic.hpp"

#include <map>
#include <mutex>

namespace paracount {

namespace {

// Exact division of integer polynomials, ascending coeffs, b monic-ish (divides exactly).
std::vector<Int> zpoly_div_exact(std::vector<Int> r, const std::vector<Int>& b) {
    std::vector<Int> q(r.size() - b.size() + 1, Int(0));
    while (true) {
        while (r.size() > 1 && r.back() == 0) r.pop_back();
        if (r.size() < b.size() || (r.size() == 1 && r[0] == 0)) break;
        Int f = r.back() / b.back();
        size_t shift = r.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) r[shift + i] -= f * b[i];
    }
    return q;
}

std::vector<Int> compute_phi(long m);

std::map<long, std::vector<Int>>& phi_cache() {
    static std::map<long, std::vector<Int>> cache;
    return cache;
}

std::vector<Int> compute_phi(long m) {
    if (m == 1) return {Int(-1), Int(1)};  // x - 1
    std::vector<Int> f(m + 1, Int(0));
    f[0] = -1;
    f[m] = 1;
    for (long d : divisors(m)) {
        if (d == m) continue;
        auto it = phi_cache().find(d);
        if (it == phi_cache().end()) it = phi_cache().emplace(d, compute_phi(d)).first;
        f = zpoly_div_exact(std::move(f), it->second);
    }
    return f;
}

std::mutex& phi_mutex() {
    static std::mutex mu;
    return mu;
}

}  // namespace

const std::vector<Int>& Cyclotomic::phi_poly(long m) {
    std::lock_guard<std::mutex> lk(phi_mutex());
    auto it = phi_cache().find(m);
    if (it == phi_cache().end()) it = phi_cache().emplace(m, compute_phi(m)).first;
    return it->second;
}

Cyclotomic::Cyclotomic(long m, const Rat& c0) : m_(m) {
    c_.assign(static_cast<size_t>(euler_phi(m)), Rat(0));
    c_[0] = c0;
}

Cyclotomic Cyclotomic::root(long m, long k) {
    Cyclotomic z(m);
    k %= m;
    if (k < 0) k += m;
    std::vector<Rat> raw(static_cast<size_t>(k) + 1, Rat(0));
    raw[k] = 1;
    z.set_from_raw(std::move(raw));
    return z;
}

void Cyclotomic::set_from_raw(std::vector<Rat> raw) {
    const auto& phi = phi_poly(m_);
    size_t d = phi.size() - 1;  // = euler_phi(m_)
    for (size_t i = raw.size(); i-- > d;) {
        Rat f = raw[i];
        if (f == 0) continue;
        raw[i] = 0;
        for (size_t j = 0; j < d; ++j) raw[i - d + j] -= f * Rat(phi[j]);
    }
    for (size_t j = 0; j < c_.size(); ++j) c_[j] = (j < raw.size()) ? raw[j] : Rat(0);
}

bool Cyclotomic::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::domain_error("Cyclotomic: value not rational: " + to_string());
    return c_[0];
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    if (m_ != o.m_) {
        // lift a rational (order-1) operand into the other order
        if (m_ == 1 && is_rational()) return Cyclotomic(o.m_, c_[0]) + o;
        if (o.m_ == 1 && o.is_rational()) return *this + Cyclotomic(m_, o.c_[0]);
        throw std::domain_error("Cyclotomic: mixed orders");
    }
    Cyclotomic r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    if (m_ != o.m_) {
        if (m_ == 1 && is_rational()) return Cyclotomic(o.m_, c_[0]) * o;
        if (o.m_ == 1 && o.is_rational()) return *this * Cyclotomic(m_, o.c_[0]);
        throw std::domain_error("Cyclotomic: mixed orders");
    }
    Cyclotomic r(m_);
    std::vector<Rat> raw(2 * c_.size(), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            raw[i + j] += c_[i] * o.c_[j];
        }
    }
    r.set_from_raw(std::move(raw));
    return r;
}

Cyclotomic Cyclotomic::operator*(const Rat& s) const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const { return m_ == o.m_ && c_ == o.c_; }

std::string Cyclotomic::to_string() const {
    std::string s = "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) s += ",";
        s += rat_to_string(c_[i]);
    }
    return s + "]@z" + std::to_string(m_);
}

}  // namespace paracount
