#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "paracount/rat.hpp"

namespace paracount {

// Exact univariate polynomial in the formal variable q, rational coefficients,
// dense ascending storage.  The zero polynomial has an empty coefficient list.
class QPoly {
public:
    QPoly() = default;
    explicit QPoly(const Rat& c) {
        if (c != 0) c_.push_back(c);
    }
    explicit QPoly(long c) : QPoly(Rat(c)) {}
    static QPoly var();                          // q
    static QPoly from_coeffs(std::vector<Rat> c);  // ascending

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const std::vector<Rat>& coeffs() const { return c_; }
    Rat coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0);
    }
    Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }

    QPoly operator-() const;
    QPoly operator+(const QPoly& o) const;
    QPoly operator-(const QPoly& o) const;
    QPoly operator*(const QPoly& o) const;
    QPoly operator*(const Rat& s) const;
    bool operator==(const QPoly& o) const { return c_ == o.c_; }
    bool operator!=(const QPoly& o) const { return c_ != o.c_; }

    // Exact division; throws if remainder nonzero.
    QPoly divide_exact(const QPoly& d) const;
    // Euclidean division.
    std::pair<QPoly, QPoly> divmod(const QPoly& d) const;

    Rat eval(const Rat& x) const;
    // q -> q^e
    QPoly subst_power(long e) const;

    bool integer_coeffs() const;
    std::string to_string(const std::string& var = "q") const;

    static QPoly gcd(QPoly a, QPoly b);  // monic
    static QPoly lagrange(const std::vector<std::pair<Rat, Rat>>& pts);

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rat> c_;
};

// Rational function in q, kept reduced with monic denominator.
class QRat {
public:
    QRat() : num_(), den_(Rat(1)) {}
    QRat(const QPoly& n) : num_(n), den_(Rat(1)) {}  // NOLINT(implicit)
    QRat(const Rat& c) : num_(QPoly(c)), den_(Rat(1)) {}
    QRat(QPoly n, QPoly d);

    const QPoly& num() const { return num_; }
    const QPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    QPoly as_polynomial() const;  // throws unless den == 1

    QRat operator-() const;
    QRat operator+(const QRat& o) const;
    QRat operator-(const QRat& o) const;
    QRat operator*(const QRat& o) const;
    QRat operator/(const QRat& o) const;
    QRat& operator+=(const QRat& o) { return *this = *this + o; }
    QRat& operator*=(const QRat& o) { return *this = *this * o; }
    bool operator==(const QRat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const QRat& o) const { return !(*this == o); }

    Rat eval(const Rat& x) const;  // throws on pole
    QRat subst_power(long e) const;
    std::string to_string(const std::string& var = "q") const;

private:
    void reduce();
    QPoly num_, den_;
};

}  // namespace paracount
