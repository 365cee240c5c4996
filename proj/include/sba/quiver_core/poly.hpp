#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace sba::quiver_core {

// Integer polynomial in q; coeffs[k] multiplies q^k, no trailing zeros.
class Poly {
public:
    Poly() = default;
    Poly(long c);
    Poly(const mpz_class& c);
    static Poly monomial(const mpz_class& c, int degree);
    static Poly from_coeffs(std::vector<mpz_class> coeffs);

    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    mpz_class eval(const mpz_class& q) const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    // Exact division; throws InvalidInput on a nonzero remainder.
    Poly exact_div(const Poly& d) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Ascending degree, e.g. "1 - q^2", "1 + 2*q".
    std::string to_string() const;

private:
    void trim();
    std::vector<mpz_class> c_;
};

// Fraction-free elimination; pivot = lowest row index with a nonzero entry.
Poly bareiss_det(std::vector<std::vector<Poly>> m);

}  // namespace sba::quiver_core
