#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eqcheb/polynomial.hpp"
#include "eqcheb/series.hpp"

namespace eqcheb {

struct Circle {
    double R = 1.0;
    friend bool operator==(const Circle&, const Circle&) = default;
};

// K = [-1, 1]
struct Interval {
    friend bool operator==(const Interval&, const Interval&) = default;
};

// K = {|P(z)| <= R}, P monic of degree m
struct Lemniscate {
    Polynomial P;
    double R = 1.0;
    friend bool operator==(const Lemniscate&, const Lemniscate&) = default;
};

// K = P^{-1}([-1, 1]) for real P
struct InversePolynomialImage {
    Polynomial P;
    std::vector<double> alternation;  // x_0 < ... < x_m with P(x_k) = (-1)^(m-k), optional
    bool period_verified = false;
    friend bool operator==(const InversePolynomialImage&, const InversePolynomialImage&) = default;
};

struct ExplicitMap {
    std::optional<ExteriorSeries> phi;
    std::optional<ExteriorSeries> psi;
    friend bool operator==(const ExplicitMap&, const ExplicitMap&) = default;
};

using CurveFamily = std::variant<Circle, Interval, Lemniscate, InversePolynomialImage, ExplicitMap>;

// Validating constructors; they throw InvalidArgument on bad input.
CurveFamily make_circle(double R);
CurveFamily make_interval();
CurveFamily make_lemniscate(Polynomial P, double R);
CurveFamily make_inverse_polynomial_image(Polynomial P, std::vector<double> alternation = {});
CurveFamily make_explicit_map(std::optional<ExteriorSeries> phi, std::optional<ExteriorSeries> psi);
void validate(const CurveFamily& f);

std::string family_name(const CurveFamily& f);
// m for lemniscates and polynomial preimages, 1 otherwise
int family_degree(const CurveFamily& f);

// c = 1/cap(K)
double capacity_leading_coefficient(const CurveFamily& f);

// Exterior map at infinity. For degree-m lemniscates and preimages this is the
// principal m-th root branch, single-valued near infinity.
ExteriorSeries phi_series(const CurveFamily& f, int depth);

struct CurveSample {
    double r = 0.0;
    std::vector<cplx> points;
    std::vector<double> theta;  // sampling parameter per point
    CurveFamily family;
    int M = 0;                  // requested count
    bool non_jordan = false;    // level passes through or below a critical value
    friend bool operator==(const CurveSample&, const CurveSample&) = default;
};

struct SampleOptions {
    // lemniscates only: sample {|P| = R r^m} for 0 < r <= 1 as well
    bool allow_inner_levels = false;
};

CurveSample sample_level_curve(const CurveFamily& f, double r, int M, SampleOptions opts = {});

// The point of L_r with sampling parameter theta, continued from a nearby curve point
// `near` (the branch is ambiguous for lemniscates and preimages). Empty when the
// continuation fails to settle.
std::optional<cplx> level_curve_point(const CurveFamily& f, double r, double theta, cplx near);

// Largest d with K invariant under z -> e^(2 pi i/d) z, read off the defining data.
// 0 means every rotation (discs about the origin); 1 means none detected.
int rotational_symmetry(const CurveFamily& f);

// True when L_r is not a Jordan curve (lemniscates and preimages only).
bool is_non_jordan(const CurveFamily& f, double r);

// Winding number of a closed polyline around z0.
int winding_number(const std::vector<cplx>& closed_path, cplx z0);

}  // namespace eqcheb
