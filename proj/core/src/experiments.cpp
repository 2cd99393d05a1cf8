#include "eqcheb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "eqcheb/series.hpp"

namespace eqcheb {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void check_grid(const std::vector<double>& r_grid) {
    for (size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 1.0)) throw InvalidArgument("r-grid values must exceed 1");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1])) throw InvalidArgument("r-grid must be strictly ascending");
    }
}

int eval_size(const ExperimentOptions& opts, int n) {
    return opts.M_eval > 0 ? opts.M_eval : std::max(4096, 64 * n);
}

// T - F^_n without cancellation when the solver kept the Faber reference
Polynomial deviation(const MinimaxSolution& sol, const Polynomial& faber) {
    if (coefficient_distance(sol.reference, faber) == 0.0) return sol.correction;
    Polynomial d = sol.polynomial - faber;
    d.coeffs().resize(static_cast<size_t>(sol.n), 0.0);
    return d;
}

double sup_on(const Polynomial& p, const std::vector<cplx>& pts) {
    double m = 0.0;
    for (cplx z : pts) m = std::max(m, std::abs(p(z)));
    return m;
}

MinimaxSolution solve_at(const CurveFamily& f, int n, double r, const ExperimentOptions& opts) {
    const int M0 = opts.M0 > 0 ? opts.M0 : default_sample_size(n);
    SampleOptions sopt;
    sopt.allow_inner_levels = r <= 1.0;
    return solve_chebyshev(sample_level_curve(f, r, M0, sopt), n, opts.minimax);
}

std::string diagnostics(const MinimaxSolution& s) {
    std::ostringstream os;
    os << "n=" << s.n << " r=" << s.r << " iterations=" << s.iterations << " gap=" << s.equioscillation_gap
       << " M=" << s.sample_size;
    return os.str();
}

}  // namespace

int default_sample_size(int n) { return std::max(256, 16 * n); }

LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!(y[i] > 0.0) || !(x[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++m;
    }
    LineFit fit;
    fit.points = m;
    if (m < 2) {
        fit.slope = fit.intercept = nan;
        return fit;
    }
    const double den = m * sxx - sx * sx;
    fit.slope = (m * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / m;
    return fit;
}

RateReport rate_experiment(const CurveFamily& f, int n, const std::vector<double>& r_grid,
                           const ExperimentOptions& opts) {
    if (n < 1) throw InvalidArgument("rate_experiment: n must be >= 1");
    if (r_grid.size() < 4) throw InvalidArgument("rate_experiment: need at least 4 grid points");
    check_grid(r_grid);
    if (r_grid.back() < 8.0 * r_grid.front()) throw InvalidArgument("rate_experiment: grid must span a factor 8");

    const double c = capacity_leading_coefficient(f);
    const FaberBasis basis(phi_series(f, n), n);
    const Polynomial& faber = basis[n];
    RateReport rep;
    rep.family = f;
    rep.n = n;
    bool exact = true;
    for (double r : r_grid) {
        const MinimaxSolution sol = solve_at(f, n, r, opts);
        if (!sol.converged) throw UnconvergedError("rate_experiment: unconverged solve (" + diagnostics(sol) + ")");
        RateEntry e;
        e.r = r;
        const Polynomial dev = deviation(sol, faber);
        e.D = sup_norm_on_curve(dev, f, r, eval_size(opts, n));
        const FaberExpansion ex = basis.expand_lower(dev, n);
        e.alpha = ex.alpha;
        for (int k = 0; k < n; ++k) e.scaled.push_back(std::abs(ex.alpha[static_cast<size_t>(k)]) * std::pow(r, k + 1));
        e.sup_norm = sol.sup_norm;
        e.faber_sup_norm = sup_on(faber, sample_level_curve(f, r, sol.sample_size).points);
        e.gap = sol.equioscillation_gap;
        e.iterations = sol.iterations;
        e.sample_size = sol.sample_size;
        e.converged = sol.converged;
        if (e.D > 1e-12 * std::pow(r / c, n)) exact = false;
        rep.entries.push_back(std::move(e));
    }
    rep.exact_match = exact;
    if (!exact) {
        std::vector<double> xs, ys;
        for (const auto& e : rep.entries) {
            xs.push_back(e.r);
            ys.push_back(e.D);
        }
        rep.fit = fit_loglog(xs, ys);
        if (rep.fit->points < 2) rep.fit.reset();
    }
    return rep;
}

std::vector<AlphaDecay> alpha_decay(const RateReport& report, double r_min) {
    const int d = rotational_symmetry(report.family);
    std::vector<AlphaDecay> out;
    for (int k = 0; k < report.n; ++k) {
        AlphaDecay a;
        a.k = k;
        a.min_scaled = std::numeric_limits<double>::infinity();
        for (const auto& e : report.entries) {
            if (e.r < r_min) continue;
            const double v = e.scaled[static_cast<size_t>(k)];
            a.max_scaled = std::max(a.max_scaled, v);
            a.min_scaled = std::min(a.min_scaled, v);
        }
        a.vanishing = d == 0 || (d > 1 && (report.n - k) % d != 0);
        a.ratio = a.min_scaled > 0.0 ? a.max_scaled / a.min_scaled : std::numeric_limits<double>::infinity();
        out.push_back(a);
    }
    return out;
}

Polynomial monic_classical_chebyshev(int n) {
    if (n < 0) throw InvalidArgument("monic_classical_chebyshev: negative degree");
    // T_{k+1} = 2 z T_k - T_{k-1}, then divide by 2^(n-1)
    Polynomial prev({1.0}), cur({0.0, 1.0});
    if (n == 0) return prev;
    for (int k = 1; k < n; ++k) {
        Polynomial next = Polynomial({0.0, 2.0}) * cur - prev;
        prev = cur;
        cur = next;
    }
    cur *= std::pow(2.0, 1 - n);
    cur.coeffs()[static_cast<size_t>(n)] = 1.0;
    return cur;
}

std::optional<Polynomial> chebyshev_oracle(const CurveFamily& f, int n) {
    if (std::holds_alternative<Circle>(f)) return Polynomial::monomial(n);
    if (std::holds_alternative<Interval>(f)) return monic_classical_chebyshev(n);
    if (auto* l = std::get_if<Lemniscate>(&f)) {
        const int m = l->P.degree();
        if (n % m == 0) return pow(l->P, n / m);
    }
    return std::nullopt;
}

InvarianceReport invariance_experiment(const CurveFamily& f, int n, double r1, double r2,
                                       const ExperimentOptions& opts) {
    if (n < 1) throw InvalidArgument("invariance_experiment: n must be >= 1");
    if (!(r1 > 1.0) || !(r2 > 1.0)) throw InvalidArgument("invariance_experiment: r values must exceed 1");
    InvarianceReport rep;
    rep.family = f;
    rep.n = n;
    rep.r1 = r1;
    rep.r2 = r2;
    const int m = family_degree(f);
    if (std::holds_alternative<ExplicitMap>(f)) {
        rep.note = "not applicable: no invariance theorem covers explicit maps";
        return rep;
    }
    if (n % m != 0) {
        rep.note = "not applicable: n is not a multiple of deg P";
        return rep;
    }
    rep.applicable = true;
    const MinimaxSolution s1 = solve_at(f, n, r1, opts);
    const MinimaxSolution s2 = solve_at(f, n, r2, opts);
    if (!s1.converged || !s2.converged)
        throw UnconvergedError("invariance_experiment: unconverged solve (" +
                               diagnostics(s1.converged ? s2 : s1) + ")");
    rep.T1 = s1.polynomial;
    rep.T2 = s2.polynomial;
    rep.coefficient_distance = coefficient_distance(rep.T1, rep.T2);
    rep.oracle = chebyshev_oracle(f, n);
    if (rep.oracle)
        rep.oracle_distance = std::max(coefficient_distance(rep.T1, *rep.oracle), coefficient_distance(rep.T2, *rep.oracle));
    if (auto* p = std::get_if<InversePolynomialImage>(&f); p && !p->period_verified)
        rep.note = "period-set unverified (no alternation certificate)";
    return rep;
}

WidomReport widom_experiment(const CurveFamily& f, double r, int n_max, const ExperimentOptions& opts) {
    if (!(r > 1.0)) throw InvalidArgument("widom_experiment: r must exceed 1");
    if (n_max < 1) throw InvalidArgument("widom_experiment: n_max must be >= 1");
    if (is_non_jordan(f, r)) throw InvalidArgument("widom_experiment: L_r is not a Jordan curve at this r");
    const double c = capacity_leading_coefficient(f);
    const FaberBasis basis(phi_series(f, n_max), n_max);
    WidomReport rep;
    rep.family = f;
    rep.r = r;
    rep.n_max = n_max;
    for (int n = 1; n <= n_max; ++n) {
        WidomEntry e;
        e.n = n;
        const MinimaxSolution sol = solve_at(f, n, r, opts);
        if (sol.converged) {
            const double D = sup_norm_on_curve(deviation(sol, basis[n]), f, r, eval_size(opts, n));
            e.value = std::pow(c / r, n) * D;
        }
        rep.entries.push_back(e);
    }
    std::optional<double> first, last;
    for (const auto& e : rep.entries) {
        if (!e.value) continue;
        if (!first) first = e.value;
        last = e.value;
    }
    if (first && last && *first != 0.0) rep.ratio_last_first = *last / *first;
    return rep;
}

bool no_sustained_increase(const WidomReport& report, int window) {
    int run = 1;
    bool have_prev = false;
    double prev = 0.0;
    for (const auto& e : report.entries) {
        if (!e.value) {
            run = 1;
            have_prev = false;
            continue;
        }
        run = (have_prev && *e.value > prev) ? run + 1 : 1;
        if (run >= window) return false;
        prev = *e.value;
        have_prev = true;
    }
    return true;
}

std::vector<double> default_trajectory_grid() {
    std::vector<double> g(100);
    const double a = std::log(1.05), b = std::log(8.0);
    for (int i = 0; i < 100; ++i) g[static_cast<size_t>(i)] = std::exp(a + (b - a) * i / 99.0);
    g.back() = 8.0;
    return g;
}

std::vector<int> greedy_match(const std::vector<cplx>& from, const std::vector<cplx>& to) {
    struct Pair {
        double d;
        int i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(from.size() * to.size());
    for (size_t i = 0; i < from.size(); ++i)
        for (size_t j = 0; j < to.size(); ++j)
            pairs.push_back({std::abs(from[i] - to[j]), static_cast<int>(i), static_cast<int>(j)});
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.d < b.d; });
    std::vector<int> match(from.size(), -1);
    std::vector<bool> used(to.size(), false);
    for (const auto& p : pairs) {
        if (match[static_cast<size_t>(p.i)] >= 0 || used[static_cast<size_t>(p.j)]) continue;
        match[static_cast<size_t>(p.i)] = p.j;
        used[static_cast<size_t>(p.j)] = true;
    }
    return match;
}

TrajectorySet zero_trajectories(const CurveFamily& f, int n, const std::vector<double>& r_grid,
                                const ExperimentOptions& opts) {
    if (n < 1) throw InvalidArgument("zero_trajectories: n must be >= 1");
    if (r_grid.empty()) throw InvalidArgument("zero_trajectories: empty r-grid");
    for (size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0.0)) throw InvalidArgument("zero_trajectories: r must be > 0");
        if (i > 0 && !(r_grid[i] > r_grid[i - 1])) throw InvalidArgument("zero_trajectories: r-grid must ascend");
    }
    TrajectorySet set;
    set.family = f;
    set.n = n;
    set.r_grid = r_grid;
    set.faber_roots = all_roots(monic_faber(phi_series(f, n), n)).roots;

    std::vector<cplx> last;
    for (double r : r_grid) {
        TrajectoryStep step;
        step.r = r;
        try {
            if (r <= 1.0 && !std::holds_alternative<Lemniscate>(f)) throw InvalidArgument("level below 1");
            const MinimaxSolution sol = solve_at(f, n, r, opts);
            if (sol.converged) {
                step.roots = all_roots(sol.polynomial).roots;
                step.ok = true;
            }
        } catch (const Error&) {
            step.ok = false;
        }
        if (step.ok) {
            if (last.empty()) {
                set.polylines.assign(step.roots.size(), {});
            } else {
                const auto match = greedy_match(last, step.roots);
                std::vector<cplx> ordered(step.roots.size());
                double min_gap = std::numeric_limits<double>::infinity();
                for (size_t i = 0; i < last.size(); ++i)
                    for (size_t j = i + 1; j < last.size(); ++j) min_gap = std::min(min_gap, std::abs(last[i] - last[j]));
                for (size_t i = 0; i < last.size(); ++i) {
                    ordered[i] = step.roots[static_cast<size_t>(match[i])];
                    step.max_displacement = std::max(step.max_displacement, std::abs(ordered[i] - last[i]));
                }
                step.roots = ordered;
                step.flagged = step.max_displacement > 0.25 * min_gap;
                set.flagged = set.flagged || step.flagged;
            }
            for (size_t i = 0; i < step.roots.size(); ++i) set.polylines[i].push_back(step.roots[i]);
            last = step.roots;
        }
        set.steps.push_back(std::move(step));
    }
    if (!last.empty()) {
        set.endpoint_match = greedy_match(last, set.faber_roots);
        for (size_t i = 0; i < last.size(); ++i)
            set.endpoint_distance.push_back(std::abs(last[i] - set.faber_roots[static_cast<size_t>(set.endpoint_match[i])]));
    }
    return set;
}

RivlinTerms rivlin_terms(const Polynomial& p, int n, int grid_M) {
    RivlinTerms t;
    for (int j = 0; j < grid_M; ++j) {
        const cplx z = std::polar(1.0, 2.0 * std::numbers::pi * j / grid_M);
        const cplx v = p(z);
        t.max_p = std::max(t.max_p, std::abs(v));
        t.max_p_plus_zn = std::max(t.max_p_plus_zn, std::abs(v + std::pow(z, n)));
    }
    t.slack = n * (t.max_p_plus_zn - 1.0) - t.max_p;
    return t;
}

RivlinReport rivlin_check(int n, int trials, int grid_M, std::uint64_t seed) {
    if (n < 1) throw InvalidArgument("rivlin_check: n must be >= 1");
    if (trials < 1) throw InvalidArgument("rivlin_check: trials must be >= 1");
    if (grid_M < 64 * n) throw InvalidArgument("rivlin_check: grid_M must be >= 64 n");
    RivlinReport rep;
    rep.n = n;
    rep.trials = trials;
    rep.grid_M = grid_M;
    rep.seed = seed;
    rep.worst_slack = std::numeric_limits<double>::infinity();
    rep.min_ratio = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));  // unit-variance complex normal
    for (int t = 0; t < trials; ++t) {
        std::vector<cplx> c(static_cast<size_t>(n));
        for (auto& a : c) {
            const double re = normal(rng);
            a = cplx(re, normal(rng));
        }
        const RivlinTerms terms = rivlin_terms(Polynomial(c), n, grid_M);
        rep.worst_slack = std::min(rep.worst_slack, terms.slack);
        if (terms.max_p > 0.0) rep.min_ratio = std::min(rep.min_ratio, (terms.max_p_plus_zn - 1.0) / terms.max_p);
    }
    return rep;
}

FaberErrorReport faber_error_decay(const CurveFamily& f, int n, const std::vector<double>& r_grid, int M_eval) {
    if (n < 1) throw InvalidArgument("faber_error_decay: n must be >= 1");
    check_grid(r_grid);
    const int M = M_eval > 0 ? M_eval : std::max(4096, 64 * n);
    const int depth = n + 199;
    const ExteriorSeries unit = phi_series(f, depth).normalized();
    const Laurent power = laurent_pow(unit, n);
    Polynomial faber = polynomial_part(power);
    faber.coeffs().resize(static_cast<size_t>(n) + 1, 0.0);
    faber.coeffs()[static_cast<size_t>(n)] = 1.0;
    const double c = capacity_leading_coefficient(f);
    const int m = family_degree(f);
    // families whose sampler parameter is arg(phi) exactly
    const bool theta_exact = std::holds_alternative<Circle>(f) || std::holds_alternative<Interval>(f) ||
                             std::holds_alternative<ExplicitMap>(f);

    FaberErrorReport rep;
    rep.family = f;
    rep.n = n;
    for (double r : r_grid) {
        const CurveSample s = sample_level_curve(f, r, M);
        double sup = 0.0;
        for (size_t j = 0; j < s.points.size(); ++j) {
            const cplx z = s.points[j];
            const CheckedValue tail = negative_part_checked(power, z);
            double err;
            if (tail.converged) {
                err = std::abs(tail.value);
            } else {
                // direct difference on the branch of phi nearest to the principal one
                const cplx fz = faber(z);
                err = std::numeric_limits<double>::infinity();
                const int branches = theta_exact ? 1 : m;
                for (int k = 0; k < branches; ++k) {
                    const cplx zeta = r * std::polar(1.0, s.theta[j] + 2.0 * std::numbers::pi * k / m);
                    err = std::min(err, std::abs(fz - std::pow(zeta / c, n)));
                }
            }
            sup = std::max(sup, err);
        }
        rep.entries.push_back({r, sup});
    }
    std::vector<double> xs, ys;
    for (const auto& e : rep.entries) {
        xs.push_back(e.r);
        ys.push_back(e.sup);
    }
    if (LineFit fit = fit_loglog(xs, ys); fit.points >= 2) rep.fit = fit;
    return rep;
}

}  // namespace eqcheb
