#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "paracount/rat.hpp"

namespace paracount {

// Exact arithmetic in Q(zeta_m) = Q[x]/Phi_m(x), coordinates in the power
// basis 1, x, ..., x^{phi(m)-1}.
class Cyclotomic {
public:
    explicit Cyclotomic(long m = 1, const Rat& c0 = Rat(0));
    static Cyclotomic root(long m, long k = 1);  // zeta_m^k

    long order() const { return m_; }
    long dim() const { return static_cast<long>(c_.size()); }
    const std::vector<Rat>& coords() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;  // throws if not rational

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator*(const Rat& s) const;
    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    bool operator==(const Cyclotomic& o) const;

    std::string to_string() const;

    // Coefficients of Phi_m, ascending, integer.
    static const std::vector<Int>& phi_poly(long m);

private:
    void set_from_raw(std::vector<Rat> raw);  // reduce mod Phi_m into c_
    long m_;
    std::vector<Rat> c_;  // size phi(m)
};

}  // namespace paracount
