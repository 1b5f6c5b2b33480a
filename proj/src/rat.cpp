#include "paracount/rat.hpp"

#include <algorithm>
#include <stdexcept>

namespace paracount {

int moebius(long n) {
    int m = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    }
    if (n > 1) m = -m;
    return m;
}

long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            r -= r / p;
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::pair<long, int> prime_power_decompose(long q) {
    if (q < 2) throw std::domain_error("prime_power_decompose: q must be at least 2");
    long p = q;
    for (long d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    int k = 0;
    long v = q;
    while (v % p == 0) {
        v /= p;
        ++k;
    }
    if (v != 1) throw std::domain_error("prime_power_decompose: not a prime power");
    return {p, k};
}

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

std::vector<long> divisors(long n) {
    std::vector<long> ds;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            ds.push_back(d);
            if (d != n / d) ds.push_back(n / d);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

Int necklace_count(const Int& q, long d) {
    Int s = 0;
    for (long e : divisors(d)) {
        int mu = moebius(e);
        if (mu == 0) continue;
        s += mu * int_pow(q, static_cast<unsigned long>(d / e));
    }
    return s / d;
}

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

}  // namespace paracount
