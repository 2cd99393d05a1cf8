#include "eqcheb/minimax.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "eqcheb/errors.hpp"
#include "eqcheb/series.hpp"

namespace eqcheb {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

// number of negative powers of (phi/c)^n used for the Faber error tail
constexpr int kTailTerms = 200;

struct Basis {
    cplx center = 0.0;
    double scale = 1.0;
};

Basis make_basis(const std::vector<cplx>& z) {
    Basis b;
    for (cplx p : z) b.center += p;
    b.center /= static_cast<double>(z.size());
    double s = 0.0;
    for (cplx p : z) s = std::max(s, std::abs(p - b.center));
    b.scale = s > 0.0 ? s : 1.0;
    return b;
}

VectorXcd to_t(const std::vector<cplx>& z, const Basis& b) {
    VectorXcd t(static_cast<Eigen::Index>(z.size()));
    for (size_t j = 0; j < z.size(); ++j) t[static_cast<Eigen::Index>(j)] = (z[j] - b.center) / b.scale;
    return t;
}

// monic-in-t least squares; returns beta_0..beta_n with beta_n = 1
VectorXcd ls_t(const VectorXcd& t, const VectorXd& w, int n) {
    const Eigen::Index M = t.size();
    MatrixXcd A(M, n);
    VectorXcd rhs(M);
    for (Eigen::Index j = 0; j < M; ++j) {
        const double sw = std::sqrt(w[j]);
        cplx pw = 1.0;
        for (int k = 0; k < n; ++k) {
            A(j, k) = sw * pw;
            pw *= t[j];
        }
        rhs[j] = -sw * pw;
    }
    Eigen::ColPivHouseholderQR<MatrixXcd> qr(A);
    if (qr.rank() < n) throw RankDeficient("weighted_ls_monic: points insufficiently distinct for degree " +
                                          std::to_string(n));
    VectorXcd beta(n + 1);
    beta.head(n) = qr.solve(rhs);
    beta[n] = 1.0;
    return beta;
}

cplx horner(const VectorXcd& c, cplx t) {
    cplx acc = 0.0;
    for (Eigen::Index k = c.size(); k-- > 0;) acc = acc * t + c[k];
    return acc;
}

// q(t) with t = (z - center)/scale, as z-coefficients
Polynomial t_to_z(const VectorXcd& beta, const Basis& b) {
    std::vector<cplx> c(beta.data(), beta.data() + beta.size());
    return Polynomial(std::move(c)).taylor_shift(-b.center / b.scale, 1.0 / b.scale);
}

Polynomial monic_from_t(const VectorXcd& beta, const Basis& b, int n) {
    Polynomial p = t_to_z(beta, b) * std::pow(b.scale, n);
    p.coeffs().resize(static_cast<size_t>(n) + 1, 0.0);
    p.coeffs()[static_cast<size_t>(n)] = 1.0;
    return p;
}

// The certificate phase works with u_j = Q(z_j)/D_j - 1, where Q = R + L,
// R is a fixed monic reference and L(z) = rho * sum x_k t^k. On curve samples
// R is the monic Faber polynomial and D_j = (phi(z_j)/c)^n, so a_j = u_j(0) comes
// from the Laurent tail of (phi/c)^n with no cancellation even when |Q| is flat
// to 1e-20 on the curve. Elsewhere D_j = rho and a_j = R(z_j)/rho - 1.
struct Formulation {
    Polynomial R;
    double rho = 1.0;
    VectorXcd a;
    MatrixXcd B;  // rho/D_j * t_j^k
    Basis basis;
    int relative_points = 0;
};

struct PhiData {
    ExteriorSeries unit;  // phi / c, deep
    Laurent power;        // (phi/c)^n
    double c = 1.0;
    double r = 0.0;
};

Formulation build_formulation(const std::vector<cplx>& z, int n, const Polynomial& fallback,
                              const std::optional<PhiData>& phi) {
    Formulation F;
    const Eigen::Index M = static_cast<Eigen::Index>(z.size());
    F.basis = make_basis(z);
    F.a.resize(M);
    VectorXcd w = VectorXcd::Ones(M);
    if (phi) {
        F.R = polynomial_part(phi->power);
        F.R.coeffs().resize(static_cast<size_t>(n) + 1, 0.0);
        F.R.coeffs()[static_cast<size_t>(n)] = 1.0;
        F.rho = std::pow(phi->r / phi->c, n);
    } else {
        F.R = fallback;
        double m = 0.0;
        for (cplx p : z) m = std::max(m, std::abs(F.R(p)));
        F.rho = m > 0.0 ? m : 1.0;
    }
    for (Eigen::Index j = 0; j < M; ++j) {
        const cplx zj = z[static_cast<size_t>(j)];
        bool relative = false;
        if (phi) {
            const CheckedValue ph = evaluate_checked(phi->unit, zj);
            if (ph.converged && ph.value != 0.0) {
                const cplx D = std::pow(ph.value, n);
                const CheckedValue E = negative_part_checked(phi->power, zj, 1e-17, 1e-32 * std::abs(D));
                if (E.converged) {
                    F.a[j] = -E.value / D;
                    w[j] = F.rho / D;
                    relative = true;
                    ++F.relative_points;
                }
            }
        }
        if (!relative) F.a[j] = F.R(zj) / F.rho - 1.0;
    }
    F.B.resize(M, n);
    for (Eigen::Index j = 0; j < M; ++j) {
        const cplx t = (z[static_cast<size_t>(j)] - F.basis.center) / F.basis.scale;
        cplx pw = w[j];
        for (int k = 0; k < n; ++k) {
            F.B(j, k) = pw;
            pw *= t;
        }
    }
    return F;
}

void evaluate_g(const Formulation& F, const VectorXd& x, int n, VectorXcd& u, VectorXd& g) {
    VectorXcd xc(n);
    for (int k = 0; k < n; ++k) xc[k] = cplx(x[k], x[n + k]);
    u = F.a + F.B * xc;
    g.resize(u.size());
    for (Eigen::Index j = 0; j < u.size(); ++j) g[j] = 2.0 * u[j].real() + std::norm(u[j]);
}

// correction L (z-basis, degree < n) to x coordinates
VectorXd correction_to_x(const Polynomial& L, const Formulation& F, int n) {
    Polynomial in_t = L.taylor_shift(F.basis.center, F.basis.scale);
    VectorXd x = VectorXd::Zero(2 * n);
    for (int k = 0; k < n; ++k) {
        const cplx v = in_t[k] / F.rho;
        x[k] = v.real();
        x[n + k] = v.imag();
    }
    return x;
}

Polynomial x_to_correction(const VectorXd& x, const Formulation& F, int n) {
    VectorXcd beta(n);
    for (int k = 0; k < n; ++k) beta[k] = F.rho * cplx(x[k], x[n + k]);
    Polynomial L = t_to_z(beta, F.basis);
    L.coeffs().resize(static_cast<size_t>(n), 0.0);
    return L;
}

struct Certificate {
    VectorXd x;
    VectorXd lambda;
    int newton = 0;
};

// Log-barrier path following for  min s  s.t.  g_j(x) <= s.
Certificate certify(const Formulation& F, VectorXd x, int n, double tol_rel, int budget) {
    const Eigen::Index M = F.a.size();
    const int nv = 2 * n + 1;
    Certificate out;
    VectorXcd u;
    VectorXd g;
    evaluate_g(F, x, n, u, g);
    const double gmax = g.maxCoeff(), gmin = g.minCoeff();
    const double spread = gmax - gmin;
    out.x = x;
    out.lambda = VectorXd::Constant(M, 1.0 / static_cast<double>(M));
    if (!(spread > 0.0) || n == 0) return out;

    double s = gmax + 0.5 * spread;
    double tau = static_cast<double>(M) / spread;
    const double target = std::min(1e-10 * spread, 0.5 * tol_rel * (1.0 + gmax));
    const double mu = 50.0;

    MatrixXd H(nv, nv), A(M, nv);
    MatrixXd G(M, 2 * n);
    VectorXd grad(nv), d(M), gn;
    VectorXcd un;
    bool stalled = false;
    while (!stalled && out.newton < budget) {
        bool centered = false;
        for (int inner = 0; inner < 200 && out.newton < budget; ++inner) {
            evaluate_g(F, x, n, u, g);
            d = (s - g.array()).matrix();
            for (Eigen::Index j = 0; j < M; ++j) {
                const cplx q = std::conj(1.0 + u[j]);
                for (int k = 0; k < n; ++k) {
                    const cplx v = q * F.B(j, k);
                    G(j, k) = 2.0 * v.real();
                    G(j, n + k) = -2.0 * v.imag();
                }
            }
            const VectorXd invd = d.cwiseInverse();
            grad.head(2 * n) = G.transpose() * invd;
            grad[2 * n] = tau - invd.sum();
            A.leftCols(2 * n) = invd.asDiagonal() * G;
            A.col(2 * n) = -invd;
            H.setZero();
            H.selfadjointView<Eigen::Lower>().rankUpdate(A.transpose());
            H = H.selfadjointView<Eigen::Lower>();
            const MatrixXcd C = F.B.adjoint() * (invd.asDiagonal() * F.B);
            H.block(0, 0, n, n) += 2.0 * C.real();
            H.block(n, n, n, n) += 2.0 * C.real();
            H.block(0, n, n, n) -= 2.0 * C.imag();
            H.block(n, 0, n, n) += 2.0 * C.imag();
            // symmetric diagonal scaling; s and x live on very different scales late in the path
            const VectorXd sc = H.diagonal().cwiseAbs().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
            const MatrixXd Hs = sc.asDiagonal() * H * sc.asDiagonal();
            Eigen::LDLT<MatrixXd> ldlt(Hs);
            VectorXd step = -(sc.asDiagonal() * ldlt.solve(sc.asDiagonal() * grad)).eval();
            const VectorXd res = H * step + grad;
            step -= sc.asDiagonal() * ldlt.solve(sc.asDiagonal() * res);
            ++out.newton;
            const double dec = -grad.dot(step);
            if (!std::isfinite(dec) || dec < 0.0) {
                stalled = true;
                break;
            }
            if (dec < 1e-6) {
                centered = true;
                break;
            }
            double alpha = 1.0;
            bool moved = false;
            while (alpha > 1e-12) {
                VectorXd xn = x + alpha * step.head(2 * n);
                const double sn = s + alpha * step[2 * n];
                evaluate_g(F, xn, n, un, gn);
                const VectorXd dn = (sn - gn.array()).matrix();
                if (dn.minCoeff() <= 0.0) {
                    alpha *= 0.5;
                    continue;
                }
                // barrier change as a sum of small terms; the barrier itself is too large to difference
                double change = tau * (sn - s);
                for (Eigen::Index j = 0; j < M; ++j) change -= std::log1p((dn[j] - d[j]) / d[j]);
                if (change <= -0.25 * alpha * dec) {
                    x = xn;
                    s = sn;
                    moved = true;
                    break;
                }
                alpha *= 0.5;
            }
            if (!moved) {
                // the remaining decrease is below the rounding of the slacks
                if (dec < 1e-3) centered = true;
                else stalled = true;
                break;
            }
        }
        if (!centered) stalled = true;
        out.x = x;
        evaluate_g(F, x, n, u, g);
        out.lambda = ((s - g.array()).inverse() / tau).matrix();
        if (static_cast<double>(M) / tau <= target) break;
        tau *= mu;
    }
    const double total = out.lambda.sum();
    if (total > 0.0 && std::isfinite(total)) out.lambda /= total;
    return out;
}

// gap between max e_j and sum lambda_j e_j, relative to max e_j, computed from g
double relative_gap(const VectorXd& g, const VectorXd& lambda) {
    const double gmax = g.maxCoeff();
    const double smax = std::sqrt(1.0 + gmax);
    double gap = 0.0;
    for (Eigen::Index j = 0; j < g.size(); ++j)
        gap += lambda[j] * (gmax - g[j]) / ((smax + std::sqrt(1.0 + g[j])) * smax);
    return gap;
}

std::optional<PhiData> phi_data(const CurveFamily& f, int n, double r) {
    PhiData d;
    d.c = capacity_leading_coefficient(f);
    d.r = r;
    int depth = n + kTailTerms - 1;
    if (auto* e = std::get_if<ExplicitMap>(&f); e && e->phi && !e->phi->terminating)
        depth = std::min(depth, e->phi->depth());
    if (depth < n) return std::nullopt;
    try {
        d.unit = phi_series(f, depth).normalized();
        d.power = laurent_pow(d.unit, n);
    } catch (const Error&) {
        return std::nullopt;
    }
    return d;
}

struct Level {
    MinimaxSolution sol;
    double gmax = 0.0;
};

MinimaxSolution solve_points(const std::vector<cplx>& z, int n, double r, const std::optional<PhiData>& phi,
                             const MinimaxOptions& opts, const std::optional<Polynomial>& warm,
                             const std::vector<double>& init_weights) {
    const int M = static_cast<int>(z.size());
    if (M <= n) throw InvalidArgument("solve_chebyshev: need more than n points");
    MinimaxSolution sol;
    sol.n = n;
    sol.r = r;
    sol.sample_size = M;
    if (n == 0) {
        sol.polynomial = Polynomial({1.0});
        sol.reference = sol.polynomial;
        sol.sup_norm = 1.0;
        sol.weights.assign(static_cast<size_t>(M), 1.0 / M);
        sol.converged = true;
        return sol;
    }

    int used = 0;
    std::optional<LawsonRun> lawson;
    if (!warm) {
        const int iters = std::max(1, std::min(opts.lawson_iter, opts.max_iter));
        lawson = run_lawson(z, n, iters, opts.tol_rel, init_weights);
        used += lawson->iterations;
    }

    Formulation F = build_formulation(z, n, lawson ? lawson->best : *warm + Polynomial::monomial(n), phi);
    sol.basis_center = F.basis.center;
    sol.basis_scale = F.basis.scale;
    sol.reference = F.R;

    // starting point: the better of the reference itself and the warm/Lawson iterate
    VectorXd x0 = VectorXd::Zero(2 * n);
    VectorXcd u;
    VectorXd g;
    evaluate_g(F, x0, n, u, g);
    double best0 = g.maxCoeff();
    Polynomial start = warm ? *warm : lawson->best - F.R;
    start.coeffs().resize(static_cast<size_t>(n), 0.0);
    VectorXd x1 = correction_to_x(start, F, n);
    evaluate_g(F, x1, n, u, g);
    if (g.maxCoeff() <= best0) {
        x0 = x1;
        best0 = g.maxCoeff();
    }

    Certificate cert = certify(F, x0, n, opts.tol_rel, std::max(0, opts.max_iter - used));
    used += cert.newton;
    evaluate_g(F, cert.x, n, u, g);
    VectorXd lambda = cert.lambda;
    double gap = relative_gap(g, lambda);
    VectorXd xfinal = cert.x;
    // Lawson's own weights are the certificate when the problem is already flat
    if (cert.newton == 0 && lawson) {
        Eigen::Map<const VectorXd> lw(lawson->best_weights.data(), static_cast<Eigen::Index>(M));
        const double lgap = relative_gap(g, lw);
        if (lgap < gap) {
            lambda = lw;
            gap = lgap;
        }
    }

    sol.correction = x_to_correction(xfinal, F, n);
    sol.polynomial = F.R + sol.correction;
    sol.polynomial.coeffs().resize(static_cast<size_t>(n) + 1, 0.0);
    sol.polynomial.coeffs()[static_cast<size_t>(n)] = 1.0;
    double sup = 0.0;
    for (cplx p : z) sup = std::max(sup, std::abs(sol.polynomial(p)));
    sol.sup_norm = sup;
    sol.weights.assign(lambda.data(), lambda.data() + lambda.size());
    sol.equioscillation_gap = std::max(gap, 0.0);
    sol.iterations = used;
    sol.converged = std::isfinite(gap) && gap < opts.tol_rel && used <= opts.max_iter;
    return sol;
}

// g(z) = |Q(z)/D(z)|^2 - 1 for Q = reference + L, evaluated the same way as in the
// certificate: through the Laurent tail where it converges, directly elsewhere
double g_at(cplx z, int n, const Polynomial& R, const Polynomial& L, double rho, const std::optional<PhiData>& phi,
            bool* plain = nullptr) {
    cplx u;
    bool relative = false;
    if (phi) {
        const CheckedValue ph = evaluate_checked(phi->unit, z);
        if (ph.converged && ph.value != 0.0) {
            const cplx D = std::pow(ph.value, n);
            const CheckedValue E = negative_part_checked(phi->power, z, 1e-17, 1e-32 * std::abs(D));
            if (E.converged) {
                u = (L(z) - E.value) / D;
                relative = true;
            }
        }
    }
    if (!relative) {
        u = (R(z) + L(z)) / rho - 1.0;
        if (plain) *plain = true;
    }
    return 2.0 * u.real() + std::norm(u);
}

struct Refinement {
    double gmax = 0.0, gmin = 0.0;  // over the current points
    double peak = 0.0;              // largest g found near the active points
    bool plain = false;             // some g was formed as |Q/rho|^2 - 1, so it carries absolute round-off
    std::vector<cplx> points;
    std::vector<double> theta;
};

// golden-section search for max g along the curve within one grid step of each active point
Refinement refine_active(const MinimaxSolution& sol, const CurveFamily& f, double r, const std::vector<cplx>& pts,
                         const std::vector<double>& theta, const std::optional<PhiData>& phi, double rho, double h) {
    const int n = sol.n;
    Refinement out;
    out.gmax = -std::numeric_limits<double>::infinity();
    out.gmin = std::numeric_limits<double>::infinity();
    for (cplx z : pts) {
        const double g = g_at(z, n, sol.reference, sol.correction, rho, phi, &out.plain);
        out.gmax = std::max(out.gmax, g);
        out.gmin = std::min(out.gmin, g);
    }
    out.peak = out.gmax;
    struct Found {
        double g, t;
        cplx z;
    };
    std::vector<Found> found;
    double lmax = 0.0;
    for (double l : sol.weights) lmax = std::max(lmax, l);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (size_t j = 0; j < pts.size() && j < sol.weights.size(); ++j) {
        if (!(sol.weights[j] >= 1e-3 * lmax)) continue;
        cplx near = pts[j];
        const double jump = 0.5 * std::abs(pts[j]) + 1.0;
        auto value = [&](double t, cplx& z) {
            const auto p = level_curve_point(f, r, t, near);
            if (!p || std::abs(*p - near) > jump) return -std::numeric_limits<double>::infinity();
            z = *p;
            near = z;
            return g_at(z, n, sol.reference, sol.correction, rho, phi, &out.plain);
        };
        double a = theta[j] - h, b = theta[j] + h;
        cplx zc, zd;
        double c = b - gr * (b - a), d = a + gr * (b - a);
        double fc = value(c, zc), fd = value(d, zd);
        for (int it = 0; it < 40; ++it) {
            if (fc >= fd) {
                b = d, d = c, fd = fc, zd = zc;
                c = b - gr * (b - a);
                fc = value(c, zc);
            } else {
                a = c, c = d, fc = fd, zc = zd;
                d = a + gr * (b - a);
                fd = value(d, zd);
            }
        }
        const double best = std::max(fc, fd);
        const double t = fc >= fd ? c : d;
        // a search that ran into its bracket end has not found a maximum; the
        // neighbouring active point covers that side
        const bool interior = t - (theta[j] - h) > 0.01 * h && (theta[j] + h) - t > 0.01 * h;
        if (interior && best > out.gmax) {
            found.push_back({best, t, fc >= fd ? zc : zd});
            out.peak = std::max(out.peak, best);
        }
    }
    // neighbouring active points often climb to the same maximizer; keep the
    // significant ones, once each
    std::sort(found.begin(), found.end(), [](const Found& a, const Found& b) { return a.g > b.g; });
    const double cut = out.gmax + 0.01 * (out.peak - out.gmax);
    for (const Found& c : found) {
        if (c.g < cut) break;
        bool dup = false;
        for (size_t i = 0; i < out.points.size() && !dup; ++i)
            dup = std::abs(std::remainder(out.theta[i] - c.t, 2.0 * std::numbers::pi)) < 1e-3 * h &&
                  std::abs(out.points[i] - c.z) < 1e-2 * h * std::max(1.0, std::abs(c.z));
        if (dup) continue;
        out.points.push_back(c.z);
        out.theta.push_back(c.t);
    }
    return out;
}

}  // namespace

Polynomial weighted_ls_monic(const std::vector<cplx>& points, const std::vector<double>& weights, int n,
                             cplx center, double scale) {
    if (n < 0) throw InvalidArgument("weighted_ls_monic: negative degree");
    if (static_cast<int>(points.size()) <= n) throw InvalidArgument("weighted_ls_monic: need more than n points");
    if (weights.size() != points.size()) throw InvalidArgument("weighted_ls_monic: weights/points size mismatch");
    if (!(scale > 0.0)) throw InvalidArgument("weighted_ls_monic: scale must be > 0");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw InvalidArgument("weighted_ls_monic: weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-8) throw InvalidArgument("weighted_ls_monic: weights must sum to 1");
    if (n == 0) return Polynomial({1.0});
    const Basis b{center, scale};
    const VectorXcd t = to_t(points, b);
    const VectorXd w = Eigen::Map<const VectorXd>(weights.data(), static_cast<Eigen::Index>(weights.size()));
    return monic_from_t(ls_t(t, w, n), b, n);
}

LawsonRun run_lawson(const std::vector<cplx>& points, int n, int max_iter, double tol_rel,
                     std::vector<double> initial_weights) {
    const Eigen::Index M = static_cast<Eigen::Index>(points.size());
    if (M <= n) throw InvalidArgument("run_lawson: need more than n points");
    const Basis b = make_basis(points);
    const VectorXcd t = to_t(points, b);
    VectorXd w(M);
    if (static_cast<Eigen::Index>(initial_weights.size()) == M) {
        for (Eigen::Index j = 0; j < M; ++j) w[j] = initial_weights[static_cast<size_t>(j)];
        w /= w.sum();
    } else {
        w.setConstant(1.0 / static_cast<double>(M));
    }
    const double sn = std::pow(b.scale, n);
    LawsonRun run;
    run.best_sup = std::numeric_limits<double>::infinity();
    VectorXd e(M);
    for (int it = 0; it < max_iter; ++it) {
        const VectorXcd beta = ls_t(t, w, n);
        for (Eigen::Index j = 0; j < M; ++j) e[j] = sn * std::abs(horner(beta, t[j]));
        const double emax = e.maxCoeff();
        const double mean = w.dot(e);
        const double gap = emax > 0.0 ? (emax - mean) / emax : 0.0;
        double lb = 0.0;
        for (Eigen::Index j = 0; j < M; ++j)
            if (w[j] > 0.0) lb += w[j] * std::log(e[j]);
        run.lower_bound.push_back(lb);
        run.gap.push_back(gap);
        run.iterations = it + 1;
        // ties go to the later iterate
        if (emax <= run.best_sup * (1.0 + 1e-15)) {
            run.best_sup = emax;
            run.best = monic_from_t(beta, b, n);
            run.best_weights.assign(w.data(), w.data() + M);
        }
        if (gap < tol_rel || !(mean > 0.0)) break;
        w = (w.array() * e.array() / mean).matrix();
    }
    run.weights.assign(w.data(), w.data() + M);
    return run;
}

MinimaxSolution solve_chebyshev(const std::vector<cplx>& points, int n, const MinimaxOptions& opts) {
    if (n < 0) throw InvalidArgument("solve_chebyshev: negative degree");
    return solve_points(points, n, 0.0, std::nullopt, opts, std::nullopt, opts.initial_weights);
}

MinimaxSolution solve_chebyshev(const CurveSample& sample, int n, const MinimaxOptions& opts) {
    if (n < 0) throw InvalidArgument("solve_chebyshev: negative degree");
    const auto phi = phi_data(sample.family, n, sample.r);
    MinimaxSolution sol = solve_points(sample.points, n, sample.r, phi, opts, std::nullopt, opts.initial_weights);
    if (!opts.adapt || n == 0) return sol;

    const double rho = phi ? std::pow(sample.r / phi->c, n) : sol.sup_norm;
    SampleOptions sopt;
    sopt.allow_inner_levels = sample.r <= 1.0;
    int total = sol.iterations;
    int M = sample.M;
    std::vector<cplx> base = sample.points, pts = base;
    std::vector<double> base_theta = sample.theta, theta = base_theta;
    // Each round adds the continuous local maxima found next to the active points;
    // when that stops settling the grid is doubled.
    while (true) {
        bool settled = false;
        const double h = 2.0 * std::numbers::pi / static_cast<double>(base.size());
        for (int round = 0; round < 30 && !settled; ++round) {
            const Refinement ref = refine_active(sol, sample.family, sample.r, pts, theta, phi, rho, h);
            // the excess over the discrete max, relative to the spread of g, bounds the
            // relative error of the correction; the floor is the rounding level of g
            const double excess = ref.peak - ref.gmax;
            const double floor = 1e-15 * (std::max(std::abs(ref.gmax), std::abs(ref.gmin)) + (ref.plain ? 1.0 : 0.0));
            if (excess <= 1e-3 * opts.adapt_tol * (ref.gmax - ref.gmin) + floor) {
                settled = true;
                break;
            }
            // earlier maximizers stay: dropping them lets conjugate pairs take turns
            pts.insert(pts.end(), ref.points.begin(), ref.points.end());
            theta.insert(theta.end(), ref.theta.begin(), ref.theta.end());
            MinimaxOptions lvl = opts;
            lvl.max_iter = std::max(1, opts.max_iter - total);
            sol = solve_points(pts, n, sample.r, phi, lvl, sol.correction, {});
            total += sol.iterations;
        }
        if (settled) break;
        if (2 * M > opts.max_points) {
            sol.converged = false;
            break;
        }
        M *= 2;
        CurveSample finer = sample_level_curve(sample.family, sample.r, M, sopt);
        base = pts = std::move(finer.points);
        base_theta = theta = std::move(finer.theta);
        MinimaxOptions lvl = opts;
        lvl.max_iter = std::max(1, opts.max_iter - total);
        sol = solve_points(pts, n, sample.r, phi, lvl, sol.correction, {});
        total += sol.iterations;
    }
    sol.iterations = total;
    if (total > opts.max_iter) sol.converged = false;
    return sol;
}

double sup_norm_on_curve(const Polynomial& p, const CurveFamily& f, double r, int M_eval) {
    if (M_eval < 8 * std::max(p.degree(), 1)) throw InvalidArgument("sup_norm_on_curve: M_eval must be >= 8 deg(p)");
    SampleOptions sopt;
    sopt.allow_inner_levels = r <= 1.0;
    const CurveSample s = sample_level_curve(f, r, M_eval, sopt);
    double m = 0.0;
    for (cplx z : s.points) m = std::max(m, std::abs(p(z)));
    return m;
}

}  // namespace eqcheb
