#pragma once

#include <climits>
#include <vector>

#include "eqcheb/polynomial.hpp"

namespace eqcheb {

// c z + t_0 + t_1/z + ... + t_m/z^m, truncated at depth m = tail.size() - 1.
// A terminating series has no omitted terms (all lower coefficients are zero).
struct ExteriorSeries {
    double c = 1.0;
    std::vector<cplx> tail{0.0};
    bool terminating = false;

    int depth() const { return static_cast<int>(tail.size()) - 1; }
    // depth usable by the exactness bookkeeping; unlimited for terminating series
    int effective_depth() const { return terminating ? INT_MAX : depth(); }
    cplx operator()(cplx z) const;
    ExteriorSeries normalized() const;  // divided by c, so the leading coefficient is 1

    friend bool operator==(const ExteriorSeries&, const ExteriorSeries&) = default;
};

// General truncated Laurent series: coef[k] multiplies z^(top - k); every retained
// coefficient is exact (given exact inputs). Powers below low() are unknown unless
// the series is terminating, in which case they vanish.
struct Laurent {
    int top = 0;
    std::vector<cplx> coef;
    bool terminating = false;

    int low() const { return top - static_cast<int>(coef.size()) + 1; }
    cplx at(int power) const;  // zero above top or (terminating) below low
    static Laurent from(const ExteriorSeries& s);
    static Laurent from(const Polynomial& p);
    friend bool operator==(const Laurent&, const Laurent&) = default;
};

Laurent laurent_mul(const Laurent& a, const Laurent& b);
Laurent laurent_sub(const Laurent& a, const Laurent& b);
// phi^n; exact down to z^(n-1-depth). Demands depth >= n.
Laurent laurent_pow(const ExteriorSeries& phi, int n);
Polynomial polynomial_part(const Laurent& s);

Polynomial faber_polynomial(const ExteriorSeries& phi, int n);
// c^-n F_n with leading coefficient exactly 1
Polynomial monic_faber(const ExteriorSeries& phi, int n);

struct FaberExpansion {
    int n = 0;
    std::vector<cplx> alpha;  // alpha[k] multiplies the monic Faber polynomial of degree k
    ExteriorSeries phi;
    friend bool operator==(const FaberExpansion&, const FaberExpansion&) = default;
};

// Monic Faber polynomials of degree 0..n_max, built once and reused.
class FaberBasis {
public:
    FaberBasis(const ExteriorSeries& phi, int n_max);
    int n_max() const { return static_cast<int>(basis_.size()) - 1; }
    const Polynomial& operator[](int k) const { return basis_.at(static_cast<size_t>(k)); }
    const ExteriorSeries& phi() const { return phi_; }

    // q monic of degree n <= n_max
    FaberExpansion expand(const Polynomial& q, double monic_tol = 1e-12) const;
    // coefficients of a polynomial of degree < n in F^_0..F^_{n-1}; no cancellation
    // against F^_n, which matters when q - F^_n is tiny
    FaberExpansion expand_lower(const Polynomial& lower, int n) const;
    Polynomial reconstruct(const FaberExpansion& e) const;

private:
    ExteriorSeries phi_;
    std::vector<Polynomial> basis_;
};

FaberExpansion faber_basis_expand(const Polynomial& q, const ExteriorSeries& phi);
Polynomial reconstruct(const FaberExpansion& e);

// Compositional inverse: psi(w) = b w + h_0 + h_1/w + ... gives phi with psi(phi(z)) = z,
// returned to the requested depth. Needs psi.depth() >= depth.
ExteriorSeries revert_series(const ExteriorSeries& psi, int depth);

// Value of a truncated sum at a point, with a flag telling whether its last
// terms have died out to round-off.
struct CheckedValue {
    cplx value = 0.0;
    double last_term = 0.0;  // largest modulus among the final few terms
    bool converged = false;
};

// c z + sum t_k z^-k; converged when the final terms are below rel_tol |value|
CheckedValue evaluate_checked(const ExteriorSeries& s, cplx z, double rel_tol = 1e-17);
// sum over the retained negative powers of s at z (the part O(1/z)); converged when
// the final terms are below rel_tol |value| + abs_floor
CheckedValue negative_part_checked(const Laurent& s, cplx z, double rel_tol = 1e-17, double abs_floor = 0.0);

// Power series in u, truncated to N terms.
namespace ps {
std::vector<cplx> mul(const std::vector<cplx>& a, const std::vector<cplx>& b, size_t N);
std::vector<cplx> reciprocal(const std::vector<cplx>& a, size_t N);
// a^alpha with principal a_0^alpha; a_0 must be nonzero
std::vector<cplx> pow(const std::vector<cplx>& a, double alpha, size_t N);
// f(v) = sum f_k v^k at v = g(u), g(0) = 0
std::vector<cplx> compose(const std::vector<cplx>& f, const std::vector<cplx>& g, size_t N);
}  // namespace ps

}  // namespace eqcheb
