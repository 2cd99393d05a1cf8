#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqcheb/curves.hpp"
#include "eqcheb/errors.hpp"
#include "eqcheb/minimax.hpp"
#include "eqcheb/rootfind.hpp"

namespace eqcheb {

// A harness refused to use an unconverged minimax solve.
class UnconvergedError : public Error {
public:
    using Error::Error;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    int points = 0;
    friend bool operator==(const LineFit&, const LineFit&) = default;
};

// least-squares line through (log x, log y), skipping y <= 0
LineFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct RateEntry {
    double r = 0.0;
    double D = 0.0;                // sup over L_r of |T - F^_n|
    std::vector<cplx> alpha;       // T = F^_n + sum alpha_k F^_k
    std::vector<double> scaled;    // |alpha_k| r^(k+1)
    double sup_norm = 0.0;         // of T on its sample
    double faber_sup_norm = 0.0;   // of F^_n on the same sample
    double gap = 0.0;
    int iterations = 0;
    int sample_size = 0;
    bool converged = false;
    friend bool operator==(const RateEntry&, const RateEntry&) = default;
};

struct RateReport {
    CurveFamily family;
    int n = 0;
    std::vector<RateEntry> entries;  // ascending r
    std::optional<LineFit> fit;      // absent when T matches F^_n exactly
    bool exact_match = false;
    friend bool operator==(const RateReport&, const RateReport&) = default;
};

struct ExperimentOptions {
    MinimaxOptions minimax;
    int M0 = 0;      // initial sample size; 0 means max(256, 16 n)
    int M_eval = 0;  // evaluation sample for sup norms; 0 means max(4096, 64 n)
};

int default_sample_size(int n);

RateReport rate_experiment(const CurveFamily& f, int n, const std::vector<double>& r_grid,
                           const ExperimentOptions& opts = {});

struct AlphaDecay {
    int k = 0;
    double max_scaled = 0.0;
    double min_scaled = 0.0;
    double ratio = 0.0;      // max/min
    bool vanishing = false;  // zero by rotational symmetry, excluded from the ratio test
};

// per-k spread of |alpha_k| r^(k+1) over entries with r >= r_min. When K is invariant
// under rotation by 2 pi/d, T_n and every F^_k pick up the factor of a monomial, so
// alpha_k = 0 unless k = n mod d; those k are reported as vanishing.
std::vector<AlphaDecay> alpha_decay(const RateReport& report, double r_min);

struct InvarianceReport {
    CurveFamily family;
    int n = 0;
    double r1 = 0.0, r2 = 0.0;
    bool applicable = false;
    std::string note;
    Polynomial T1, T2;
    double coefficient_distance = 0.0;
    std::optional<Polynomial> oracle;
    std::optional<double> oracle_distance;  // max over both solves
    friend bool operator==(const InvarianceReport&, const InvarianceReport&) = default;
};

InvarianceReport invariance_experiment(const CurveFamily& f, int n, double r1, double r2,
                                       const ExperimentOptions& opts = {});

// closed-form T_n for families that have one (circle, interval, lemniscate with m | n)
std::optional<Polynomial> chebyshev_oracle(const CurveFamily& f, int n);
Polynomial monic_classical_chebyshev(int n);

struct WidomEntry {
    int n = 0;
    std::optional<double> value;  // (c/r)^n sup|T_n - F^_n|; empty for an unconverged solve
    friend bool operator==(const WidomEntry&, const WidomEntry&) = default;
};

struct WidomReport {
    CurveFamily family;
    double r = 0.0;
    int n_max = 0;
    std::vector<WidomEntry> entries;
    std::optional<double> ratio_last_first;
    friend bool operator==(const WidomReport&, const WidomReport&) = default;
};

WidomReport widom_experiment(const CurveFamily& f, double r, int n_max, const ExperimentOptions& opts = {});
// true when no run of `window` consecutive defined values is strictly increasing
bool no_sustained_increase(const WidomReport& report, int window = 5);

struct TrajectoryStep {
    double r = 0.0;
    bool ok = false;
    bool flagged = false;          // displacement above a quarter of the previous minimal gap
    double max_displacement = 0.0;
    std::vector<cplx> roots;       // in trajectory order when ok
    friend bool operator==(const TrajectoryStep&, const TrajectoryStep&) = default;
};

struct TrajectorySet {
    CurveFamily family;
    int n = 0;
    std::vector<double> r_grid;
    std::vector<TrajectoryStep> steps;
    std::vector<std::vector<cplx>> polylines;  // one per zero, one point per successful step
    std::vector<cplx> faber_roots;
    std::vector<int> endpoint_match;           // trajectory -> index into faber_roots
    std::vector<double> endpoint_distance;
    bool flagged = false;
    friend bool operator==(const TrajectorySet&, const TrajectorySet&) = default;
};

// log-spaced 1.05 .. 8, 100 levels
std::vector<double> default_trajectory_grid();
// greedy bijection on sorted pair distances; result[i] = index in `to`
std::vector<int> greedy_match(const std::vector<cplx>& from, const std::vector<cplx>& to);

TrajectorySet zero_trajectories(const CurveFamily& f, int n, const std::vector<double>& r_grid,
                                const ExperimentOptions& opts = {});

struct RivlinReport {
    int n = 0;
    int trials = 0;
    int grid_M = 0;
    std::uint64_t seed = 0;
    double worst_slack = 0.0;
    double min_ratio = 0.0;  // infinity if every trial drew p = 0
    friend bool operator==(const RivlinReport&, const RivlinReport&) = default;
};

struct RivlinTerms {
    double max_p = 0.0;         // max |p| on the grid
    double max_p_plus_zn = 0.0; // max |p + z^n| on the grid
    double slack = 0.0;         // n (max|p + z^n| - 1) - max|p|
};

RivlinTerms rivlin_terms(const Polynomial& p, int n, int grid_M);
RivlinReport rivlin_check(int n, int trials, int grid_M, std::uint64_t seed);

struct FaberErrorEntry {
    double r = 0.0;
    double sup = 0.0;  // sup over L_r of |F^_n - (phi/c)^n|
    friend bool operator==(const FaberErrorEntry&, const FaberErrorEntry&) = default;
};

struct FaberErrorReport {
    CurveFamily family;
    int n = 0;
    std::vector<FaberErrorEntry> entries;
    std::optional<LineFit> fit;
    friend bool operator==(const FaberErrorReport&, const FaberErrorReport&) = default;
};

FaberErrorReport faber_error_decay(const CurveFamily& f, int n, const std::vector<double>& r_grid, int M_eval = 0);

}  // namespace eqcheb
