#include "eqcheb/curves.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "eqcheb/errors.hpp"
#include "eqcheb/rootfind.hpp"

namespace eqcheb {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double two_pi = 2.0 * std::numbers::pi;

// x + sqrt(x^2 - 1) on the branch with modulus >= 1
cplx joukowski_inverse(cplx x) {
    cplx s = std::sqrt(x * x - 1.0);
    cplx a = x + s, b = x - s;
    return std::abs(a) >= std::abs(b) ? a : b;
}

cplx joukowski(cplx w) { return 0.5 * (w + 1.0 / w); }

// z * S(u) with S a power series in u = 1/z, scaled by c
ExteriorSeries from_power_series(double c, const std::vector<cplx>& S, int depth) {
    ExteriorSeries phi;
    phi.c = c;
    phi.tail.assign(static_cast<size_t>(depth) + 1, 0.0);
    for (int k = 0; k <= depth; ++k) phi.tail[static_cast<size_t>(k)] = c * S[static_cast<size_t>(k) + 1];
    return phi;
}

// coefficients of P(z) / (lead z^m) as a power series in u
std::vector<cplx> normalized_reverse(const Polynomial& P, size_t N) {
    const int m = P.degree();
    std::vector<cplx> h(N, 0.0);
    for (int k = 0; k <= m && static_cast<size_t>(k) < N; ++k)
        h[static_cast<size_t>(k)] = P[m - k] / P[m];
    return h;
}

std::vector<cplx> dedupe(std::vector<cplx>& pts, std::vector<double>& theta) {
    if (pts.empty()) return pts;
    double diam = 0.0;
    cplx lo = pts[0], hi = pts[0];
    for (cplx z : pts) {
        lo = {std::min(lo.real(), z.real()), std::min(lo.imag(), z.imag())};
        hi = {std::max(hi.real(), z.real()), std::max(hi.imag(), z.imag())};
    }
    diam = std::abs(hi - lo);
    const double tol = 1e-12 * std::max(diam, 1e-300);
    std::vector<size_t> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pts[a].real() < pts[b].real(); });
    std::vector<bool> drop(pts.size(), false);
    for (size_t a = 0; a < order.size(); ++a) {
        if (drop[order[a]]) continue;
        for (size_t b = a + 1; b < order.size(); ++b) {
            if (pts[order[b]].real() - pts[order[a]].real() > tol) break;
            if (std::abs(pts[order[b]] - pts[order[a]]) <= tol) drop[std::max(order[a], order[b])] = true;
        }
    }
    std::vector<cplx> kept;
    std::vector<double> kept_theta;
    for (size_t i = 0; i < pts.size(); ++i) {
        if (drop[i]) continue;
        kept.push_back(pts[i]);
        kept_theta.push_back(theta[i]);
    }
    theta = std::move(kept_theta);
    return kept;
}

std::vector<cplx> critical_points(const Polynomial& P) {
    Polynomial d = P.derivative();
    if (d.degree() < 1) return {};
    return all_roots(d).roots;
}

// newton polish of z so that phi(z) = zeta
cplx polish_on_level(const ExteriorSeries& phi, cplx z, cplx zeta) {
    for (int it = 0; it < 4; ++it) {
        const double h = 1e-6 * std::max(1.0, std::abs(z));
        cplx d = (phi(z + h) - phi(z - h)) / (2.0 * h);
        cplx step = (phi(z) - zeta) / d;
        z -= step;
        if (std::abs(step) < 1e-16 * std::abs(z)) break;
    }
    return z;
}

}  // namespace

CurveFamily make_circle(double R) {
    CurveFamily f = Circle{R};
    validate(f);
    return f;
}

CurveFamily make_interval() { return Interval{}; }

CurveFamily make_lemniscate(Polynomial P, double R) {
    P.trim();
    CurveFamily f = Lemniscate{std::move(P), R};
    validate(f);
    return f;
}

CurveFamily make_inverse_polynomial_image(Polynomial P, std::vector<double> alternation) {
    P.trim();
    InversePolynomialImage ipi{std::move(P), std::move(alternation), false};
    const int m = ipi.P.degree();
    if (m >= 1 && ipi.P.has_real_coefficients(0.0) && !ipi.alternation.empty()) {
        if (static_cast<int>(ipi.alternation.size()) != m + 1)
            throw InvalidArgument("alternation certificate needs deg P + 1 points");
        for (int k = 0; k <= m; ++k) {
            const double x = ipi.alternation[static_cast<size_t>(k)];
            if (k > 0 && !(x > ipi.alternation[static_cast<size_t>(k) - 1]))
                throw InvalidArgument("alternation points must increase");
            const double want = ((m - k) % 2 == 0) ? 1.0 : -1.0;
            if (std::abs(ipi.P(x) - want) > 1e-9)
                throw InvalidArgument("alternation certificate fails at x_" + std::to_string(k));
        }
        ipi.period_verified = true;
    }
    CurveFamily f = std::move(ipi);
    validate(f);
    return f;
}

CurveFamily make_explicit_map(std::optional<ExteriorSeries> phi, std::optional<ExteriorSeries> psi) {
    CurveFamily f = ExplicitMap{std::move(phi), std::move(psi)};
    validate(f);
    return f;
}

void validate(const CurveFamily& f) {
    std::visit(overloaded{
                   [](const Circle& c) {
                       if (!(c.R > 0.0) || !std::isfinite(c.R)) throw InvalidArgument("circle: R must be > 0");
                   },
                   [](const Interval&) {},
                   [](const Lemniscate& l) {
                       if (l.P.degree() < 1) throw InvalidArgument("lemniscate: P must have degree >= 1");
                       if (!l.P.is_monic(1e-12)) throw InvalidArgument("lemniscate: P must be monic");
                       if (!(l.R > 0.0) || !std::isfinite(l.R)) throw InvalidArgument("lemniscate: R must be > 0");
                   },
                   [](const InversePolynomialImage& p) {
                       if (p.P.degree() < 1) throw InvalidArgument("preimage family: P must have degree >= 1");
                       if (!p.P.has_real_coefficients(0.0))
                           throw InvalidArgument("preimage family: P must have real coefficients");
                   },
                   [](const ExplicitMap& e) {
                       if (!e.phi && !e.psi) throw InvalidArgument("explicit map: need phi or psi");
                       if (e.phi && !(e.phi->c > 0.0)) throw InvalidArgument("explicit map: phi leading coefficient must be > 0");
                       if (e.psi && !(e.psi->c > 0.0)) throw InvalidArgument("explicit map: psi leading coefficient must be > 0");
                   },
               },
               f);
}

std::string family_name(const CurveFamily& f) {
    return std::visit(overloaded{
                          [](const Circle&) { return std::string("circle"); },
                          [](const Interval&) { return std::string("interval"); },
                          [](const Lemniscate&) { return std::string("lemniscate"); },
                          [](const InversePolynomialImage&) { return std::string("ipi"); },
                          [](const ExplicitMap&) { return std::string("explicit"); },
                      },
                      f);
}

int family_degree(const CurveFamily& f) {
    if (auto* l = std::get_if<Lemniscate>(&f)) return l->P.degree();
    if (auto* p = std::get_if<InversePolynomialImage>(&f)) return p->P.degree();
    return 1;
}

double capacity_leading_coefficient(const CurveFamily& f) {
    return std::visit(overloaded{
                          [](const Circle& c) { return 1.0 / c.R; },
                          [](const Interval&) { return 2.0; },
                          [](const Lemniscate& l) { return std::pow(l.R, -1.0 / l.P.degree()); },
                          [](const InversePolynomialImage& p) {
                              const int m = p.P.degree();
                              return std::pow(2.0 * std::abs(p.P[m].real()), 1.0 / m);
                          },
                          [](const ExplicitMap& e) { return e.phi ? e.phi->c : 1.0 / e.psi->c; },
                      },
                      f);
}

ExteriorSeries phi_series(const CurveFamily& f, int depth) {
    if (depth < 0) throw InvalidArgument("phi_series: negative depth");
    const size_t N = static_cast<size_t>(depth) + 2;
    return std::visit(
        overloaded{
            [&](const Circle& c) {
                ExteriorSeries s;
                s.c = 1.0 / c.R;
                s.tail.assign(static_cast<size_t>(depth) + 1, 0.0);
                s.terminating = true;
                return s;
            },
            [&](const Interval&) {
                return phi_series(make_inverse_polynomial_image(Polynomial({0.0, 1.0})), depth);
            },
            [&](const Lemniscate& l) {
                const int m = l.P.degree();
                auto S = ps::pow(normalized_reverse(l.P, N), 1.0 / m, N);
                ExteriorSeries s = from_power_series(std::pow(l.R, -1.0 / m), S, depth);
                s.terminating = (m == 1);
                return s;
            },
            [&](const InversePolynomialImage& p) {
                const int m = p.P.degree();
                const double am = p.P[m].real();
                auto h = normalized_reverse(p.P, N);
                auto disc = ps::mul(h, h, N);
                if (static_cast<size_t>(2 * m) < N) disc[static_cast<size_t>(2 * m)] -= 1.0 / (am * am);
                auto root = ps::pow(disc, 0.5, N);
                std::vector<cplx> G(N);
                for (size_t k = 0; k < N; ++k) G[k] = 0.5 * (h[k] + root[k]);
                auto S = ps::pow(G, 1.0 / m, N);
                return from_power_series(std::pow(2.0 * std::abs(am), 1.0 / m), S, depth);
            },
            [&](const ExplicitMap& e) {
                if (e.phi) {
                    if (e.phi->effective_depth() < depth) throw DepthExhausted(depth, e.phi->depth());
                    ExteriorSeries s = *e.phi;
                    s.tail.resize(static_cast<size_t>(depth) + 1, 0.0);
                    return s;
                }
                return revert_series(*e.psi, depth);
            },
        },
        f);
}

bool is_non_jordan(const CurveFamily& f, double r) {
    if (auto* l = std::get_if<Lemniscate>(&f)) {
        const int m = l->P.degree();
        const double level = l->R * std::pow(r, m);
        for (cplx z : critical_points(l->P))
            if (level <= std::abs(l->P(z)) * (1.0 + 1e-12)) return true;
        return false;
    }
    if (auto* p = std::get_if<InversePolynomialImage>(&f)) {
        const int m = p->P.degree();
        const double level = std::pow(r, m);
        for (cplx z : critical_points(p->P))
            if (std::abs(joukowski_inverse(p->P(z))) >= level * (1.0 - 1e-12)) return true;
        return false;
    }
    return false;
}

CurveSample sample_level_curve(const CurveFamily& f, double r, int M, SampleOptions opts) {
    validate(f);
    if (M < 1) throw InvalidArgument("sample_level_curve: M must be positive");
    const bool lemniscate = std::holds_alternative<Lemniscate>(f);
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("sample_level_curve: r must be > 0");
    if (r <= 1.0 && !(lemniscate && opts.allow_inner_levels))
        throw InvalidArgument("sample_level_curve: r must exceed 1");

    CurveSample s;
    s.r = r;
    s.M = M;
    s.family = f;
    s.non_jordan = r <= 1.0 || is_non_jordan(f, r);
    std::vector<cplx> pts;
    std::vector<double> theta;

    auto polynomial_level = [&](const Polynomial& P, auto target_of) {
        const int m = P.degree();
        const int J = (M + m - 1) / m;
        for (int j = 0; j < J; ++j) {
            const double om = two_pi * j / J;
            Polynomial Q = P;
            Q.coeffs()[0] -= target_of(om);
            RootSet rs = all_roots(Q);
            for (cplx z : rs.roots) {
                pts.push_back(z);
                theta.push_back(om / m);
            }
        }
    };

    std::visit(overloaded{
                   [&](const Circle& c) {
                       for (int j = 0; j < M; ++j) {
                           const double t = two_pi * j / M;
                           pts.push_back(c.R * r * std::polar(1.0, t));
                           theta.push_back(t);
                       }
                   },
                   [&](const Interval&) {
                       for (int j = 0; j < M; ++j) {
                           const double t = two_pi * j / M;
                           pts.push_back(joukowski(r * std::polar(1.0, t)));
                           theta.push_back(t);
                       }
                   },
                   [&](const Lemniscate& l) {
                       const double level = l.R * std::pow(r, l.P.degree());
                       polynomial_level(l.P, [&](double om) { return level * std::polar(1.0, om); });
                   },
                   [&](const InversePolynomialImage& p) {
                       const double rho = std::pow(r, p.P.degree());
                       polynomial_level(p.P, [&](double om) { return joukowski(rho * std::polar(1.0, om)); });
                   },
                   [&](const ExplicitMap& e) {
                       const int depth = 48;
                       ExteriorSeries psi = e.psi ? *e.psi : revert_series(*e.phi, std::min(depth, e.phi->depth()));
                       for (int j = 0; j < M; ++j) {
                           const double t = two_pi * j / M;
                           const cplx zeta = r * std::polar(1.0, t);
                           cplx z = psi(zeta);
                           if (e.phi) z = polish_on_level(*e.phi, z, zeta);
                           pts.push_back(z);
                           theta.push_back(t);
                       }
                   },
               },
               f);

    s.points = dedupe(pts, theta);
    s.theta = std::move(theta);
    return s;
}

std::optional<cplx> level_curve_point(const CurveFamily& f, double r, double theta, cplx near) {
    // Newton on P(z) = target from `near`
    auto track = [&](const Polynomial& P, cplx target) -> std::optional<cplx> {
        cplx z = near;
        for (int it = 0; it < 30; ++it) {
            cplx v, dv;
            P.eval_with_derivative(z, v, dv);
            if (dv == 0.0) return std::nullopt;
            const cplx step = (v - target) / dv;
            z -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) return z;
        }
        return std::nullopt;
    };
    return std::visit(overloaded{
                          [&](const Circle& c) -> std::optional<cplx> { return c.R * r * std::polar(1.0, theta); },
                          [&](const Interval&) -> std::optional<cplx> { return joukowski(r * std::polar(1.0, theta)); },
                          [&](const Lemniscate& l) {
                              const int m = l.P.degree();
                              return track(l.P, l.R * std::pow(r, m) * std::polar(1.0, m * theta));
                          },
                          [&](const InversePolynomialImage& p) {
                              const int m = p.P.degree();
                              return track(p.P, joukowski(std::pow(r, m) * std::polar(1.0, m * theta)));
                          },
                          [&](const ExplicitMap& e) -> std::optional<cplx> {
                              const cplx zeta = r * std::polar(1.0, theta);
                              cplx z = e.psi ? (*e.psi)(zeta) : near;
                              if (e.phi) z = polish_on_level(*e.phi, z, zeta);
                              return z;
                          },
                      },
                      f);
}

int rotational_symmetry(const CurveFamily& f) {
    // P(z) = z^s Q(z^d) gives |P(w z)| = |P(z)| and P(w z) = w^m P(z) for w^d = 1
    auto from_poly = [](const Polynomial& P) {
        const int m = P.degree();
        int d = 0;
        for (int k = 0; k < m; ++k)
            if (P[k] != 0.0) d = std::gcd(d, m - k);
        return d;
    };
    return std::visit(overloaded{
                          [](const Circle&) { return 0; },
                          [](const Interval&) { return 2; },
                          [&](const Lemniscate& l) { return from_poly(l.P); },
                          [&](const InversePolynomialImage& p) {
                              // w^m must be +-1 to keep [-1, 1] in place
                              const int m = p.P.degree();
                              return std::gcd(from_poly(p.P), 2 * m);
                          },
                          [](const ExplicitMap&) { return 1; },
                      },
                      f);
}

int winding_number(const std::vector<cplx>& path, cplx z0) {
    double total = 0.0;
    for (size_t i = 0; i < path.size(); ++i) {
        cplx a = path[i] - z0, b = path[(i + 1) % path.size()] - z0;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / two_pi));
}

}  // namespace eqcheb
