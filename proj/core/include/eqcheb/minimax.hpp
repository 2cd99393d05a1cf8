#pragma once

#include <optional>
#include <vector>

#include "eqcheb/curves.hpp"
#include "eqcheb/polynomial.hpp"

namespace eqcheb {

struct MinimaxOptions {
    double tol_rel = 1e-10;   // equioscillation gap target
    int max_iter = 20000;     // Lawson steps plus certificate Newton steps, over all refinements
    bool adapt = true;        // double M until sup_norm settles
    double adapt_tol = 1e-8;  // relative sup_norm change that stops the doubling
    int max_points = 1 << 15;
    int lawson_iter = 60;     // Lawson steps before the certificate phase takes over
    std::vector<double> initial_weights;  // used when the size matches the sample
};

struct MinimaxSolution {
    int n = 0;
    double r = 0.0;
    Polynomial polynomial;  // monic
    double sup_norm = 0.0;
    std::vector<double> weights;
    int iterations = 0;
    bool converged = false;
    double equioscillation_gap = 0.0;
    cplx basis_center = 0.0;
    double basis_scale = 1.0;
    // polynomial == reference + correction up to round-off; for curve samples the
    // reference is the monic Faber polynomial, so the correction carries T - F^_n
    // without cancellation
    Polynomial reference;
    Polynomial correction;
    int sample_size = 0;
    friend bool operator==(const MinimaxSolution&, const MinimaxSolution&) = default;
};

// argmin sum w_j |p(z_j)|^2 over monic p of degree n, solved in the basis ((z-center)/scale)^k
Polynomial weighted_ls_monic(const std::vector<cplx>& points, const std::vector<double>& weights, int n,
                             cplx center, double scale);

struct LawsonRun {
    Polynomial best;             // best iterate by sup norm
    double best_sup = 0.0;
    std::vector<double> best_weights;  // weights that produced `best`
    std::vector<double> weights;       // last weights
    std::vector<double> lower_bound;   // sum w_j log e_j per iteration
    std::vector<double> gap;           // equioscillation gap per iteration
    int iterations = 0;
};

// Plain Lawson iteration: w <- w e / sum(w e).
LawsonRun run_lawson(const std::vector<cplx>& points, int n, int max_iter, double tol_rel,
                     std::vector<double> initial_weights = {});

MinimaxSolution solve_chebyshev(const CurveSample& sample, int n, const MinimaxOptions& opts = {});
// bare point set: no resampling, no Faber reference
MinimaxSolution solve_chebyshev(const std::vector<cplx>& points, int n, const MinimaxOptions& opts = {});

// max |p| over a fresh M_eval-point sample of L_r (a lower bound for the true sup)
double sup_norm_on_curve(const Polynomial& p, const CurveFamily& f, double r, int M_eval);

}  // namespace eqcheb
