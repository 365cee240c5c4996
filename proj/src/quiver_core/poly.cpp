#include "sba/quiver_core/poly.hpp"

#include <algorithm>

#include "sba/error.hpp"

namespace sba::quiver_core {

Poly::Poly(long c) {
    if (c) c_.push_back(mpz_class(c));
}

Poly::Poly(const mpz_class& c) {
    if (c != 0) c_.push_back(c);
}

Poly Poly::monomial(const mpz_class& c, int degree) {
    Poly p;
    if (c == 0) return p;
    p.c_.assign(degree + 1, mpz_class(0));
    p.c_[degree] = c;
    return p;
}

Poly Poly::from_coeffs(std::vector<mpz_class> coeffs) {
    Poly p;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpz_class Poly::eval(const mpz_class& q) const {
    mpz_class acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + *it;
    return acc;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r;
    r.c_.assign(std::max(c_.size(), o.c_.size()), mpz_class(0));
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r.c_[i] += o.c_[i];
    r.trim();
    return r;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return {};
    Poly r;
    r.c_.assign(c_.size() + o.c_.size() - 1, mpz_class(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r.c_[i + j] += c_[i] * o.c_[j];
    r.trim();
    return r;
}

Poly Poly::exact_div(const Poly& d) const {
    if (d.is_zero()) throw Error(ErrorKind::InvalidInput, "polynomial division by zero");
    std::vector<mpz_class> rem = c_;
    std::vector<mpz_class> quot(c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0, mpz_class(0));
    const mpz_class& lead = d.c_.back();
    for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
        mpz_class top = rem[k + d.c_.size() - 1];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
            throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
        mpz_class f = top / lead;
        quot[k] = f;
        for (size_t j = 0; j < d.c_.size(); ++j) rem[k + j] -= f * d.c_[j];
    }
    for (const auto& x : rem)
        if (x != 0) throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
    return from_coeffs(std::move(quot));
}

std::string Poly::to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        mpz_class mag = abs(c_[k]);
        bool neg = c_[k] < 0;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        first = false;
        std::string var = k == 0 ? "" : (k == 1 ? "q" : "q^" + std::to_string(k));
        if (k == 0)
            s += mag.get_str();
        else if (mag == 1)
            s += var;
        else
            s += mag.get_str() + "*" + var;
    }
    return s;
}

Poly bareiss_det(std::vector<std::vector<Poly>> m) {
    const size_t n = m.size();
    if (n == 0) return Poly(1);
    int sign = 1;
    Poly prev(1);
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && m[piv][k].is_zero()) ++piv;
        if (piv == n) return {};
        if (piv != k) {
            std::swap(m[piv], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev);
            m[i][k] = Poly();
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace sba::quiver_core
