#include "eqcheb/series.hpp"

#include <algorithm>
#include <cmath>

#include "eqcheb/errors.hpp"

namespace eqcheb {

cplx ExteriorSeries::operator()(cplx z) const {
    const cplx u = 1.0 / z;
    cplx acc = 0.0;
    for (auto it = tail.rbegin(); it != tail.rend(); ++it) acc = acc * u + *it;
    return c * z + acc;
}

ExteriorSeries ExteriorSeries::normalized() const {
    ExteriorSeries s = *this;
    for (auto& t : s.tail) t /= c;
    s.c = 1.0;
    return s;
}

cplx Laurent::at(int power) const {
    if (power > top) return 0.0;
    if (power < low()) {
        if (terminating) return 0.0;
        throw DepthExhausted(power, low());
    }
    return coef[static_cast<size_t>(top - power)];
}

Laurent Laurent::from(const ExteriorSeries& s) {
    Laurent l;
    l.top = 1;
    l.coef.reserve(s.tail.size() + 1);
    l.coef.push_back(s.c);
    l.coef.insert(l.coef.end(), s.tail.begin(), s.tail.end());
    l.terminating = s.terminating;
    return l;
}

Laurent Laurent::from(const Polynomial& p) {
    Laurent l;
    l.top = std::max(p.degree(), 0);
    l.coef.assign(static_cast<size_t>(l.top) + 1, 0.0);
    for (int k = 0; k <= l.top; ++k) l.coef[static_cast<size_t>(l.top - k)] = p[k];
    l.terminating = true;
    return l;
}

Laurent laurent_mul(const Laurent& a, const Laurent& b) {
    Laurent out;
    out.top = a.top + b.top;
    int low = a.low() + b.low();
    if (!b.terminating) low = std::max(low, a.top + b.low());
    if (!a.terminating) low = std::max(low, b.top + a.low());
    out.terminating = a.terminating && b.terminating;
    out.coef.assign(static_cast<size_t>(out.top - low + 1), 0.0);
    for (size_t i = 0; i < a.coef.size(); ++i) {
        for (size_t j = 0; j < b.coef.size(); ++j) {
            size_t k = i + j;
            if (k >= out.coef.size()) break;
            out.coef[k] += a.coef[i] * b.coef[j];
        }
    }
    return out;
}

Laurent laurent_sub(const Laurent& a, const Laurent& b) {
    Laurent out;
    out.top = std::max(a.top, b.top);
    int low = std::min(a.low(), b.low());
    if (!a.terminating || !b.terminating) {
        low = INT_MIN;
        if (!a.terminating) low = std::max(low, a.low());
        if (!b.terminating) low = std::max(low, b.low());
    }
    out.terminating = a.terminating && b.terminating;
    out.coef.assign(static_cast<size_t>(out.top - low + 1), 0.0);
    for (int p = out.top; p >= low; --p) {
        cplx va = (p > a.top || p < a.low()) ? cplx(0.0) : a.coef[static_cast<size_t>(a.top - p)];
        cplx vb = (p > b.top || p < b.low()) ? cplx(0.0) : b.coef[static_cast<size_t>(b.top - p)];
        out.coef[static_cast<size_t>(out.top - p)] = va - vb;
    }
    return out;
}

Laurent laurent_pow(const ExteriorSeries& phi, int n) {
    if (n < 0) throw InvalidArgument("laurent_pow: negative exponent");
    if (phi.effective_depth() < n) throw DepthExhausted(n, phi.depth());
    Laurent result{0, {1.0}, true};
    Laurent base = Laurent::from(phi);
    while (n > 0) {
        if (n & 1) result = laurent_mul(result, base);
        n >>= 1;
        if (n) base = laurent_mul(base, base);
    }
    return result;
}

Polynomial polynomial_part(const Laurent& s) {
    if (s.top < 0) return Polynomial();
    if (s.low() > 0 && !s.terminating) throw DepthExhausted(0, s.low());
    std::vector<cplx> c(static_cast<size_t>(s.top) + 1, 0.0);
    for (int p = 0; p <= s.top; ++p)
        if (p >= s.low()) c[static_cast<size_t>(p)] = s.coef[static_cast<size_t>(s.top - p)];
    return Polynomial(std::move(c));
}

Polynomial faber_polynomial(const ExteriorSeries& phi, int n) {
    Polynomial f = polynomial_part(laurent_pow(phi, n));
    f.coeffs().resize(static_cast<size_t>(n) + 1, 0.0);
    return f;
}

Polynomial monic_faber(const ExteriorSeries& phi, int n) {
    Polynomial f = polynomial_part(laurent_pow(phi.normalized(), n));
    f.coeffs().resize(static_cast<size_t>(n) + 1, 0.0);
    f.coeffs()[static_cast<size_t>(n)] = 1.0;
    return f;
}

FaberBasis::FaberBasis(const ExteriorSeries& phi, int n_max) : phi_(phi) {
    if (n_max < 0) throw InvalidArgument("FaberBasis: negative degree");
    if (phi.effective_depth() < n_max) throw DepthExhausted(n_max, phi.depth());
    const Laurent unit = Laurent::from(phi.normalized());
    Laurent power{0, {1.0}, true};
    basis_.reserve(static_cast<size_t>(n_max) + 1);
    for (int k = 0; k <= n_max; ++k) {
        if (k > 0) power = laurent_mul(power, unit);
        Polynomial f = polynomial_part(power);
        f.coeffs().resize(static_cast<size_t>(k) + 1, 0.0);
        f.coeffs()[static_cast<size_t>(k)] = 1.0;
        basis_.push_back(std::move(f));
    }
}

FaberExpansion FaberBasis::expand(const Polynomial& q, double monic_tol) const {
    const int n = q.degree();
    if (n < 0 || !q.is_monic(monic_tol)) throw NotMonic("faber_basis_expand: polynomial is not monic");
    if (n > n_max()) throw DepthExhausted(n, n_max());
    Polynomial rest = q;
    rest.coeffs().resize(static_cast<size_t>(n) + 1);
    rest -= basis_[static_cast<size_t>(n)];
    rest.coeffs().resize(static_cast<size_t>(n));
    return expand_lower(rest, n);
}

FaberExpansion FaberBasis::expand_lower(const Polynomial& lower, int n) const {
    if (n > n_max()) throw DepthExhausted(n, n_max());
    if (lower.degree() >= n) throw InvalidArgument("expand_lower: degree must be below n");
    std::vector<cplx> rest(static_cast<size_t>(n), 0.0);
    for (int k = 0; k < n; ++k) rest[static_cast<size_t>(k)] = lower[k];
    FaberExpansion e{n, std::vector<cplx>(static_cast<size_t>(n), 0.0), phi_};
    for (int k = n - 1; k >= 0; --k) {
        const cplx a = rest[static_cast<size_t>(k)];
        e.alpha[static_cast<size_t>(k)] = a;
        const auto& fk = basis_[static_cast<size_t>(k)].coeffs();
        for (int j = 0; j <= k; ++j) rest[static_cast<size_t>(j)] -= a * fk[static_cast<size_t>(j)];
    }
    return e;
}

Polynomial FaberBasis::reconstruct(const FaberExpansion& e) const {
    Polynomial q = basis_.at(static_cast<size_t>(e.n));
    for (int k = 0; k < e.n; ++k) q += basis_[static_cast<size_t>(k)] * e.alpha[static_cast<size_t>(k)];
    return q;
}

FaberExpansion faber_basis_expand(const Polynomial& q, const ExteriorSeries& phi) {
    const int n = q.degree();
    if (n < 0 || !q.is_monic(1e-12)) throw NotMonic("faber_basis_expand: polynomial is not monic");
    return FaberBasis(phi, n).expand(q);
}

Polynomial reconstruct(const FaberExpansion& e) { return FaberBasis(e.phi, e.n).reconstruct(e); }

CheckedValue evaluate_checked(const ExteriorSeries& s, cplx z, double rel_tol) {
    CheckedValue out;
    if (z == 0.0) return out;
    const cplx u = 1.0 / z;
    const size_t T = s.tail.size();
    cplx acc = 0.0;
    cplx upow = std::pow(u, static_cast<int>(T) - 1);
    for (size_t k = T; k-- > 0;) {
        acc = acc * u + s.tail[k];
        if (k + 4 >= T) out.last_term = std::max(out.last_term, std::abs(s.tail[k] * upow));
        upow *= z;
    }
    out.value = s.c * z + acc;
    out.converged = std::isfinite(std::abs(out.value)) &&
                    (s.terminating || out.last_term <= rel_tol * std::abs(out.value));
    return out;
}

CheckedValue negative_part_checked(const Laurent& s, cplx z, double rel_tol, double abs_floor) {
    CheckedValue out;
    const int K = -s.low();
    if (K <= 0) {
        out.converged = true;
        return out;
    }
    if (z == 0.0) return out;
    const cplx u = 1.0 / z;
    cplx acc = 0.0;
    cplx up = std::pow(u, K);
    for (int k = K; k >= 1; --k) {
        const cplx d = s.at(-k);
        acc = acc * u + d;
        if (k + 4 > K) out.last_term = std::max(out.last_term, std::abs(d * up));
        up *= z;
    }
    out.value = acc * u;
    out.converged = std::isfinite(std::abs(out.value)) &&
                    (s.terminating || out.last_term <= rel_tol * std::abs(out.value) + abs_floor);
    return out;
}

namespace ps {

std::vector<cplx> mul(const std::vector<cplx>& a, const std::vector<cplx>& b, size_t N) {
    std::vector<cplx> c(N, 0.0);
    for (size_t i = 0; i < std::min(a.size(), N); ++i) {
        if (a[i] == 0.0) continue;
        for (size_t j = 0; j < b.size() && i + j < N; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

std::vector<cplx> reciprocal(const std::vector<cplx>& a, size_t N) {
    if (a.empty() || a[0] == 0.0) throw InvalidArgument("ps::reciprocal: zero constant term");
    std::vector<cplx> r(N, 0.0);
    const cplx inv = 1.0 / a[0];
    for (size_t n = 0; n < N; ++n) {
        cplx s = n == 0 ? cplx(1.0) : cplx(0.0);
        for (size_t k = 1; k <= n && k < a.size(); ++k) s -= a[k] * r[n - k];
        r[n] = s * inv;
    }
    return r;
}

std::vector<cplx> pow(const std::vector<cplx>& a, double alpha, size_t N) {
    if (a.empty() || a[0] == 0.0) throw InvalidArgument("ps::pow: zero constant term");
    std::vector<cplx> g(N, 0.0);
    if (N == 0) return g;
    g[0] = std::pow(a[0], alpha);
    for (size_t n = 1; n < N; ++n) {
        cplx s = 0.0;
        for (size_t k = 1; k <= n && k < a.size(); ++k)
            s += (alpha * static_cast<double>(k) - static_cast<double>(n - k)) * a[k] * g[n - k];
        g[n] = s / (static_cast<double>(n) * a[0]);
    }
    return g;
}

std::vector<cplx> compose(const std::vector<cplx>& f, const std::vector<cplx>& g, size_t N) {
    std::vector<cplx> acc(N, 0.0);
    const size_t K = std::min(f.size(), N);
    for (size_t k = K; k-- > 0;) {
        acc = mul(acc, g, N);
        acc[0] += f[k];
    }
    return acc;
}

}  // namespace ps

ExteriorSeries revert_series(const ExteriorSeries& psi, int depth) {
    if (depth < 0) throw InvalidArgument("revert_series: negative depth");
    if (psi.effective_depth() < depth) throw DepthExhausted(depth, psi.depth());
    const double b = psi.c;
    const size_t N = static_cast<size_t>(depth) + 2;
    // psi(w) = b w + H(1/w); phi(z) = z p(u), u = 1/z, solves b p + u H(u/p) - 1 = 0
    std::vector<cplx> H(N, 0.0), dH(N, 0.0);
    for (size_t k = 0; k < N && k < psi.tail.size(); ++k) H[k] = psi.tail[k];
    for (size_t k = 0; k + 1 < N; ++k) dH[k] = static_cast<double>(k + 1) * H[k + 1];

    std::vector<cplx> p(N, 0.0);
    p[0] = 1.0 / b;
    if (N > 1) p[1] = -H[0] / b;

    auto shift = [](const std::vector<cplx>& s, size_t by, size_t len) {
        std::vector<cplx> out(len, 0.0);
        for (size_t k = 0; k + by < len && k < s.size(); ++k) out[k + by] = s[k];
        return out;
    };

    size_t prec = 2;
    bool final_pass = false;
    while (true) {
        prec = std::min(2 * prec, N);
        std::vector<cplx> pp(p.begin(), p.begin() + static_cast<long>(prec));
        auto r = ps::reciprocal(pp, prec);
        auto v = shift(r, 1, prec);
        auto G = shift(ps::compose(H, v, prec), 1, prec);
        for (size_t k = 0; k < prec; ++k) G[k] += b * pp[k];
        G[0] -= 1.0;
        auto t = shift(ps::mul(ps::mul(r, r, prec), ps::compose(dH, v, prec), prec), 2, prec);
        std::vector<cplx> denom(prec);
        for (size_t k = 0; k < prec; ++k) denom[k] = -t[k];
        denom[0] += b;
        auto delta = ps::mul(G, ps::reciprocal(denom, prec), prec);
        for (size_t k = 0; k < prec; ++k) p[k] = pp[k] - delta[k];
        if (prec == N) {
            if (final_pass) break;
            final_pass = true;
        }
    }
    ExteriorSeries phi;
    phi.c = p[0].real();
    phi.tail.assign(p.begin() + 1, p.end());
    return phi;
}

}  // namespace eqcheb
