#include "eqcheb/polynomial.hpp"

#include <algorithm>
#include <cmath>

namespace eqcheb {

Polynomial::Polynomial(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {}

Polynomial Polynomial::monomial(int degree, cplx coeff) {
    std::vector<cplx> c(static_cast<size_t>(degree) + 1, 0.0);
    c.back() = coeff;
    return Polynomial(std::move(c));
}

Polynomial Polynomial::from_descending(const std::vector<cplx>& desc) {
    return Polynomial(std::vector<cplx>(desc.rbegin(), desc.rend()));
}

Polynomial Polynomial::from_roots(const std::vector<cplx>& roots) {
    std::vector<cplx> c{1.0};
    for (cplx r : roots) {
        c.push_back(0.0);
        for (size_t k = c.size() - 1; k > 0; --k)
            c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return Polynomial(std::move(c));
}

int Polynomial::degree() const {
    for (int k = static_cast<int>(c_.size()) - 1; k >= 0; --k)
        if (c_[k] != 0.0) return k;
    return -1;
}

cplx Polynomial::leading() const {
    int d = degree();
    return d < 0 ? cplx(0.0) : c_[d];
}

bool Polynomial::is_monic(double tol) const {
    int d = degree();
    return d >= 0 && std::abs(c_[d] - 1.0) <= tol;
}

bool Polynomial::has_real_coefficients(double tol) const {
    return std::all_of(c_.begin(), c_.end(), [&](cplx a) { return std::abs(a.imag()) <= tol; });
}

cplx Polynomial::operator()(cplx z) const {
    cplx p = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) p = p * z + *it;
    return p;
}

void Polynomial::eval_with_derivative(cplx z, cplx& p, cplx& dp) const {
    p = 0.0;
    dp = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial();
    std::vector<cplx> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::taylor_shift(cplx center, double scale) const {
    // synthetic division repeated: b_k = p^{(k)}(center)/k!
    std::vector<cplx> b = c_;
    const size_t n = b.size();
    for (size_t i = 0; i + 1 < n; ++i)
        for (size_t k = n - 1; k > i; --k) b[k - 1] += center * b[k];
    double s = 1.0;
    for (auto& bk : b) {
        bk *= s;
        s *= scale;
    }
    return Polynomial(std::move(b));
}

Polynomial& Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    return *this;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
}

Polynomial& Polynomial::operator*=(cplx s) {
    for (auto& a : c_) a *= s;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return Polynomial();
    std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, 0.0);
    for (size_t i = 0; i < a.c_.size(); ++i)
        for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
}

Polynomial pow(const Polynomial& p, int n) {
    Polynomial result({1.0});
    Polynomial base = p;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

double coefficient_distance(const Polynomial& a, const Polynomial& b) {
    size_t len = std::max(a.coeffs().size(), b.coeffs().size());
    double d = 0.0;
    for (size_t k = 0; k < len; ++k)
        d = std::max(d, std::abs(a[static_cast<int>(k)] - b[static_cast<int>(k)]));
    return d;
}

}  // namespace eqcheb
