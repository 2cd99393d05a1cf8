#pragma once

#include <complex>
#include <ostream>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "eqcheb/curves.hpp"
#include "eqcheb/experiments.hpp"
#include "eqcheb/minimax.hpp"
#include "eqcheb/polynomial.hpp"
#include "eqcheb/series.hpp"

// complex numbers as [re, im], or a bare number when the imaginary part is zero.
// Non-finite doubles anywhere in a report are written "inf", "-inf", "nan".
namespace nlohmann {
template <>
struct adl_serializer<std::complex<double>> {
    static void to_json(json& j, const std::complex<double>& z);
    static void from_json(const json& j, std::complex<double>& z);
};

template <>
struct adl_serializer<eqcheb::CurveFamily> {
    static void to_json(json& j, const eqcheb::CurveFamily& f);
    static void from_json(const json& j, eqcheb::CurveFamily& f);
};
}  // namespace nlohmann

namespace eqcheb {

using nlohmann::json;

json number_to_json(double v);
double number_from_json(const json& j);

void to_json(json& j, const Polynomial& p);
void from_json(const json& j, Polynomial& p);
void to_json(json& j, const ExteriorSeries& s);
void from_json(const json& j, ExteriorSeries& s);
void to_json(json& j, const FaberExpansion& e);
void from_json(const json& j, FaberExpansion& e);
void to_json(json& j, const CurveSample& s);
void from_json(const json& j, CurveSample& s);
void to_json(json& j, const MinimaxSolution& s);
void from_json(const json& j, MinimaxSolution& s);
void to_json(json& j, const LineFit& f);
void from_json(const json& j, LineFit& f);
void to_json(json& j, const RateEntry& e);
void from_json(const json& j, RateEntry& e);
void to_json(json& j, const RateReport& r);
void from_json(const json& j, RateReport& r);
void to_json(json& j, const InvarianceReport& r);
void from_json(const json& j, InvarianceReport& r);
void to_json(json& j, const WidomEntry& e);
void from_json(const json& j, WidomEntry& e);
void to_json(json& j, const WidomReport& r);
void from_json(const json& j, WidomReport& r);
void to_json(json& j, const TrajectoryStep& s);
void from_json(const json& j, TrajectoryStep& s);
void to_json(json& j, const TrajectorySet& t);
void from_json(const json& j, TrajectorySet& t);
void to_json(json& j, const RivlinReport& r);
void from_json(const json& j, RivlinReport& r);
void to_json(json& j, const FaberErrorEntry& e);
void from_json(const json& j, FaberErrorEntry& e);
void to_json(json& j, const FaberErrorReport& r);
void from_json(const json& j, FaberErrorReport& r);

// CSV tables
void write_sample_csv(std::ostream& os, const CurveSample& s);           // theta,re,im
void write_rate_csv(std::ostream& os, const RateReport& r);             // r,D,alpha_0,...
void write_trajectories_csv(std::ostream& os, const TrajectorySet& t);  // step,traj_id,re,im
void write_widom_csv(std::ostream& os, const WidomReport& r);           // n,value
void write_faber_error_csv(std::ostream& os, const FaberErrorReport& r);  // r,sup

// SVG plots. The viewBox comes from the data extents only.
std::string trajectories_svg(const TrajectorySet& t);
std::string rate_svg(const RateReport& r);  // log D against log r

}  // namespace eqcheb
