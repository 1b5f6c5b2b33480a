#include "paracount/qpoly.hpp"

#include <algorithm>

namespace paracount {

QPoly QPoly::var() {
    QPoly p;
    p.c_ = {Rat(0), Rat(1)};
    return p;
}

QPoly QPoly::from_coeffs(std::vector<Rat> c) {
    QPoly p;
    p.c_ = std::move(c);
    p.normalize();
    return p;
}

QPoly QPoly::operator-() const {
    QPoly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

QPoly QPoly::operator+(const QPoly& o) const {
    std::vector<Rat> c(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
    return from_coeffs(std::move(c));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator*(const QPoly& o) const {
    if (is_zero() || o.is_zero()) return QPoly();
    std::vector<Rat> c(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return from_coeffs(std::move(c));
}

QPoly QPoly::operator*(const Rat& s) const {
    if (s == 0) return QPoly();
    QPoly r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
}

std::pair<QPoly, QPoly> QPoly::divmod(const QPoly& d) const {
    if (d.is_zero()) throw std::domain_error("QPoly: division by zero");
    QPoly r = *this;
    std::vector<Rat> q;
    int dd = d.degree();
    if (r.degree() >= dd) q.assign(r.degree() - dd + 1, Rat(0));
    while (r.degree() >= dd) {
        Rat f = r.c_.back() / d.c_.back();
        int shift = r.degree() - dd;
        q[shift] = f;
        for (int i = 0; i <= dd; ++i) r.c_[shift + i] -= f * d.c_[i];
        r.normalize();
    }
    return {from_coeffs(std::move(q)), r};
}

QPoly QPoly::divide_exact(const QPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw std::domain_error("QPoly: inexact division");
    return q;
}

Rat QPoly::eval(const Rat& x) const {
    Rat v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
}

QPoly QPoly::subst_power(long e) const {
    if (is_zero()) return QPoly();
    std::vector<Rat> c(static_cast<size_t>(degree()) * e + 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) c[i * e] = c_[i];
    return from_coeffs(std::move(c));
}

bool QPoly::integer_coeffs() const {
    for (const auto& x : c_)
        if (!is_integer(x)) return false;
    return true;
}

std::string QPoly::to_string(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        Rat c = c_[i];
        if (c == 0) continue;
        if (!s.empty()) {
            s += (c > 0) ? " + " : " - ";
            if (c < 0) c = -c;
        } else if (c < 0) {
            s += "-";
            c = -c;
        }
        if (i == 0 || c != 1) s += rat_to_string(c);
        if (i > 0) {
            if (c != 1) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

QPoly QPoly::gcd(QPoly a, QPoly b) {
    while (!b.is_zero()) {
        QPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero() && a.leading() != 1) {
        Rat inv = 1 / a.leading();
        a = a * inv;
    }
    return a;
}

QPoly QPoly::lagrange(const std::vector<std::pair<Rat, Rat>>& pts) {
    QPoly acc;
    for (size_t i = 0; i < pts.size(); ++i) {
        QPoly term{pts[i].second};
        for (size_t j = 0; j < pts.size(); ++j) {
            if (j == i) continue;
            // (x - x_j) / (x_i - x_j)
            Rat inv = 1 / (pts[i].first - pts[j].first);
            term = term * from_coeffs({-pts[j].first * inv, inv});
        }
        acc = acc + term;
    }
    return acc;
}

QRat::QRat(QPoly n, QPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("QRat: zero denominator");
    reduce();
}

void QRat::reduce() {
    if (num_.is_zero()) {
        den_ = QPoly(Rat(1));
        return;
    }
    QPoly g = QPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divide_exact(g);
        den_ = den_.divide_exact(g);
    }
    Rat lead = den_.leading();
    if (lead != 1) {
        Rat inv = 1 / lead;
        num_ = num_ * inv;
        den_ = den_ * inv;
    }
}

QPoly QRat::as_polynomial() const {
    if (!is_polynomial()) throw std::domain_error("QRat: not a polynomial: " + to_string());
    return num_ * (1 / den_.coeff(0));
}

QRat QRat::operator-() const {
    QRat r = *this;
    r.num_ = -r.num_;
    return r;
}

QRat QRat::operator+(const QRat& o) const {
    return QRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

QRat QRat::operator-(const QRat& o) const { return *this + (-o); }

QRat QRat::operator*(const QRat& o) const { return QRat(num_ * o.num_, den_ * o.den_); }

QRat QRat::operator/(const QRat& o) const {
    if (o.is_zero()) throw std::domain_error("QRat: division by zero");
    return QRat(num_ * o.den_, den_ * o.num_);
}

Rat QRat::eval(const Rat& x) const {
    Rat d = den_.eval(x);
    if (d == 0) throw std::domain_error("QRat: pole at evaluation point");
    return num_.eval(x) / d;
}

QRat QRat::subst_power(long e) const {
    return QRat(num_.subst_power(e), den_.subst_power(e));
}

std::string QRat::to_string(const std::string& var) const {
    if (is_polynomial()) return as_polynomial().to_string(var);
    return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

}  // namespace paracount
