#include "eqcheb/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eqcheb {

namespace {

double snapped_arg(cplx z) {
    if (std::abs(z.imag()) <= 1e-14 * (1.0 + std::abs(z))) return z.real() < 0 ? std::numbers::pi : 0.0;
    return std::arg(z);
}

// Fujiwara bound for |z - shift| over roots of p
double fujiwara(const Polynomial& q) {
    const int n = q.degree();
    const auto& c = q.coeffs();
    const double an = std::abs(c[static_cast<size_t>(n)]);
    double b = 0.0;
    for (int k = 1; k <= n; ++k) {
        double t = std::abs(c[static_cast<size_t>(n - k)]) / an;
        if (k == n) t /= 2.0;
        b = std::max(b, std::pow(t, 1.0 / k));
    }
    return 2.0 * b;
}

double abs_eval(const Polynomial& p, double x) {
    double acc = 0.0;
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) acc = acc * x + std::abs(*it);
    return acc;
}

}  // namespace

void sort_roots(std::vector<cplx>& roots) {
    std::stable_sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
        double aa = snapped_arg(a), ab = snapped_arg(b);
        if (std::abs(aa - ab) > 1e-12) return aa < ab;
        return std::abs(a) < std::abs(b);
    });
}

RootSet all_roots(const Polynomial& p_in, double tol, int max_iter) {
    Polynomial p = p_in;
    p.trim();
    const int n = p.degree();
    if (n < 1) throw InvalidArgument("all_roots: degree must be at least 1");

    RootSet out;
    if (n == 1) {
        out.roots = {-p[0] / p[1]};
        out.residuals = {std::abs(p(out.roots[0]))};
        return out;
    }

    const cplx centroid = -p[n - 1] / (static_cast<double>(n) * p[n]);
    double radius = fujiwara(p.taylor_shift(centroid));
    if (radius == 0.0) radius = 1.0;  // all roots coincide with the centroid
    std::vector<cplx> z(static_cast<size_t>(n));
    const double offset = 0.4 * std::numbers::sqrt2;  // irrational rotation breaks symmetry
    for (int k = 0; k < n; ++k)
        z[static_cast<size_t>(k)] =
            centroid + radius * std::polar(1.0, 2.0 * std::numbers::pi * k / n + offset);

    bool converged = false;
    int it = 0;
    for (; it < max_iter && !converged; ++it) {
        converged = true;
        for (int i = 0; i < n; ++i) {
            cplx& zi = z[static_cast<size_t>(i)];
            cplx v, dv;
            p.eval_with_derivative(zi, v, dv);
            if (v == 0.0) continue;
            // residual at round-off level: nothing more to gain
            const bool at_noise = std::abs(v) <= 16.0 * 2.2e-16 * abs_eval(p, std::abs(zi));
            const cplx ratio = v / dv;
            cplx sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) sum += 1.0 / (zi - z[static_cast<size_t>(j)]);
            cplx step = ratio / (1.0 - ratio * sum);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = ratio;
            zi -= step;
            if (std::abs(step) > tol * (1.0 + std::abs(zi)) && !at_noise) converged = false;
        }
    }

    sort_roots(z);
    out.roots = z;
    out.iterations = it;
    out.residuals.reserve(z.size());
    for (cplx r : z) out.residuals.push_back(std::abs(p(r)));
    if (!converged) throw RootFindError("all_roots: no convergence within max_iter", out);
    return out;
}

}  // namespace eqcheb
