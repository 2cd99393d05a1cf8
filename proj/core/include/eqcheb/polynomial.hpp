#pragma once

#include <complex>
#include <vector>

namespace eqcheb {

using cplx = std::complex<double>;

// Dense polynomial, coefficients in ascending degree.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<cplx> coeffs);
    static Polynomial monomial(int degree, cplx coeff = 1.0);
    // from P(z) = a_m z^m + ... + a_0 given as {a_m, ..., a_0}
    static Polynomial from_descending(const std::vector<cplx>& desc);
    // monic polynomial with the given roots
    static Polynomial from_roots(const std::vector<cplx>& roots);

    const std::vector<cplx>& coeffs() const { return c_; }
    std::vector<cplx>& coeffs() { return c_; }
    int degree() const;  // -1 for the zero polynomial
    bool is_zero() const { return degree() < 0; }
    cplx leading() const;
    cplx operator[](int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0.0; }

    bool is_monic(double tol = 0.0) const;
    bool has_real_coefficients(double tol = 0.0) const;

    cplx operator()(cplx z) const;
    // p and p' in one Horner pass
    void eval_with_derivative(cplx z, cplx& p, cplx& dp) const;
    Polynomial derivative() const;
    // coefficients of p(center + scale * t)
    Polynomial taylor_shift(cplx center, double scale = 1.0) const;
    // strips exact trailing zeros (high degree)
    Polynomial& trim();

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(cplx s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, cplx s) { return a *= s; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

private:
    std::vector<cplx> c_;
};

Polynomial pow(const Polynomial& p, int n);

// max_k |a_k - b_k|, missing coefficients count as zero
double coefficient_distance(const Polynomial& a, const Polynomial& b);

}  // namespace eqcheb
