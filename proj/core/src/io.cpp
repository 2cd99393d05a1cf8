#include "eqcheb/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "eqcheb/errors.hpp"

namespace nlohmann {

void adl_serializer<std::complex<double>>::to_json(json& j, const std::complex<double>& z) {
    // real values stay plain numbers so coefficient lists read naturally
    if (z.imag() == 0.0) {
        j = eqcheb::number_to_json(z.real());
        return;
    }
    j = json::array({eqcheb::number_to_json(z.real()), eqcheb::number_to_json(z.imag())});
}

void adl_serializer<std::complex<double>>::from_json(const json& j, std::complex<double>& z) {
    if (!j.is_array()) {
        z = {eqcheb::number_from_json(j), 0.0};
        return;
    }
    if (j.size() != 2) throw eqcheb::InvalidArgument("complex value must be a number or [re, im]");
    z = {eqcheb::number_from_json(j[0]), eqcheb::number_from_json(j[1])};
}

void adl_serializer<eqcheb::CurveFamily>::to_json(json& j, const eqcheb::CurveFamily& f) {
    using namespace eqcheb;
    j = json::object();
    j["family"] = family_name(f);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Circle>) {
                j["R"] = v.R;
            } else if constexpr (std::is_same_v<T, Lemniscate>) {
                j["P"] = v.P.coeffs();
                j["R"] = v.R;
            } else if constexpr (std::is_same_v<T, InversePolynomialImage>) {
                j["P"] = v.P.coeffs();
                j["alternation"] = v.alternation;
                j["period_verified"] = v.period_verified;
            } else if constexpr (std::is_same_v<T, ExplicitMap>) {
                j["phi"] = v.phi ? json(*v.phi) : json(nullptr);
                j["psi"] = v.psi ? json(*v.psi) : json(nullptr);
            }
        },
        f);
}

void adl_serializer<eqcheb::CurveFamily>::from_json(const json& j, eqcheb::CurveFamily& f) {
    using namespace eqcheb;
    if (!j.is_object() || !j.contains("family")) throw InvalidArgument("family spec needs a \"family\" field");
    const std::string name = j.at("family").get<std::string>();
    if (name == "circle") {
        f = make_circle(j.value("R", 1.0));
    } else if (name == "interval") {
        f = make_interval();
    } else if (name == "lemniscate") {
        f = make_lemniscate(Polynomial(j.at("P").get<std::vector<cplx>>()), j.value("R", 1.0));
    } else if (name == "ipi") {
        InversePolynomialImage p;
        p.P = Polynomial(j.at("P").get<std::vector<cplx>>());
        if (j.contains("alternation")) p.alternation = j.at("alternation").get<std::vector<double>>();
        f = make_inverse_polynomial_image(p.P, p.alternation);
        // trust a recorded flag only when it agrees with the certificate check
        if (j.contains("period_verified") && j.at("period_verified").get<bool>() !=
                                                 std::get<InversePolynomialImage>(f).period_verified)
            throw InvalidArgument("ipi: period_verified does not match the alternation certificate");
    } else if (name == "explicit") {
        std::optional<ExteriorSeries> phi, psi;
        if (j.contains("phi") && !j.at("phi").is_null()) phi = j.at("phi").get<ExteriorSeries>();
        if (j.contains("psi") && !j.at("psi").is_null()) psi = j.at("psi").get<ExteriorSeries>();
        f = make_explicit_map(phi, psi);
    } else {
        throw InvalidArgument("unknown family \"" + name + "\" (circle, interval, lemniscate, ipi, explicit)");
    }
}

}  // namespace nlohmann

namespace eqcheb {

namespace {

template <class T>
json opt_to_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> opt_from_json(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

json numbers(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number_to_json(x));
    return a;
}

std::vector<double> numbers_from(const json& j) {
    std::vector<double> v;
    for (const auto& x : j) v.push_back(number_from_json(x));
    return v;
}

double num(const json& j, const char* key) { return number_from_json(j.at(key)); }

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Extent {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    void add(double x, double y) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    // padded box, never degenerate
    void finish() {
        if (!(x0 <= x1)) x0 = -1, x1 = 1, y0 = -1, y1 = 1;
        double w = x1 - x0, h = y1 - y0;
        const double s = std::max({w, h, 1e-12});
        if (w < 1e-3 * s) x0 -= 0.5 * s, x1 += 0.5 * s;
        if (h < 1e-3 * s) y0 -= 0.5 * s, y1 += 0.5 * s;
        w = x1 - x0;
        h = y1 - y0;
        x0 -= 0.05 * w, x1 += 0.05 * w, y0 -= 0.05 * h, y1 += 0.05 * h;
    }
};

std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// y is flipped so the imaginary axis points up
std::string svg_open(const Extent& e) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"" << svg_num(e.x0) << ' '
       << svg_num(-e.y1) << ' ' << svg_num(e.x1 - e.x0) << ' ' << svg_num(e.y1 - e.y0)
       << "\" preserveAspectRatio=\"xMidYMid meet\">\n";
    return os.str();
}

std::string svg_path(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width,
                     const std::string& id) {
    std::ostringstream os;
    os << "  <path id=\"" << id << "\" fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << svg_num(width)
       << "\" d=\"";
    for (size_t i = 0; i < pts.size(); ++i)
        os << (i == 0 ? "M" : " L") << svg_num(pts[i].first) << ',' << svg_num(-pts[i].second);
    os << "\"/>\n";
    return os.str();
}

const char* palette(size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
    return colors[i % 8];
}

}  // namespace

json number_to_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double number_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw InvalidArgument("expected a number, got " + j.dump());
}

void to_json(json& j, const Polynomial& p) { j = json{{"coeffs", p.coeffs()}}; }
void from_json(const json& j, Polynomial& p) { p = Polynomial(j.at("coeffs").get<std::vector<cplx>>()); }

void to_json(json& j, const ExteriorSeries& s) {
    j = json{{"c", s.c}, {"tail", s.tail}, {"terminating", s.terminating}};
}
void from_json(const json& j, ExteriorSeries& s) {
    s.c = j.at("c").get<double>();
    s.tail = j.at("tail").get<std::vector<cplx>>();
    if (s.tail.empty()) throw InvalidArgument("series tail must hold at least t_0");
    s.terminating = j.value("terminating", false);
}

void to_json(json& j, const FaberExpansion& e) { j = json{{"n", e.n}, {"alpha", e.alpha}, {"phi", e.phi}}; }
void from_json(const json& j, FaberExpansion& e) {
    e.n = j.at("n").get<int>();
    e.alpha = j.at("alpha").get<std::vector<cplx>>();
    e.phi = j.at("phi").get<ExteriorSeries>();
}

void to_json(json& j, const CurveSample& s) {
    j = json{{"r", s.r}, {"points", s.points}, {"theta", s.theta}, {"family", s.family}, {"M", s.M},
             {"non_jordan", s.non_jordan}};
}
void from_json(const json& j, CurveSample& s) {
    s.r = j.at("r").get<double>();
    s.points = j.at("points").get<std::vector<cplx>>();
    s.theta = j.at("theta").get<std::vector<double>>();
    s.family = j.at("family").get<CurveFamily>();
    s.M = j.at("M").get<int>();
    s.non_jordan = j.at("non_jordan").get<bool>();
}

void to_json(json& j, const MinimaxSolution& s) {
    j = json{{"n", s.n},
             {"r", s.r},
             {"coeffs", s.polynomial.coeffs()},
             {"sup_norm", number_to_json(s.sup_norm)},
             {"iterations", s.iterations},
             {"converged", s.converged},
             {"equioscillation_gap", number_to_json(s.equioscillation_gap)},
             {"weights", numbers(s.weights)},
             {"basis_center", s.basis_center},
             {"basis_scale", s.basis_scale},
             {"reference", s.reference.coeffs()},
             {"correction", s.correction.coeffs()},
             {"sample_size", s.sample_size}};
}
void from_json(const json& j, MinimaxSolution& s) {
    s = MinimaxSolution{};
    s.n = j.at("n").get<int>();
    s.r = j.at("r").get<double>();
    s.polynomial = Polynomial(j.at("coeffs").get<std::vector<cplx>>());
    s.sup_norm = num(j, "sup_norm");
    s.iterations = j.at("iterations").get<int>();
    s.converged = j.at("converged").get<bool>();
    // the remaining fields are diagnostics and may be absent in hand-written files
    if (j.contains("equioscillation_gap")) s.equioscillation_gap = num(j, "equioscillation_gap");
    if (j.contains("weights")) s.weights = numbers_from(j.at("weights"));
    if (j.contains("basis_center")) s.basis_center = j.at("basis_center").get<cplx>();
    if (j.contains("basis_scale")) s.basis_scale = j.at("basis_scale").get<double>();
    if (j.contains("reference")) s.reference = Polynomial(j.at("reference").get<std::vector<cplx>>());
    if (j.contains("correction")) s.correction = Polynomial(j.at("correction").get<std::vector<cplx>>());
    if (j.contains("sample_size")) s.sample_size = j.at("sample_size").get<int>();
}

void to_json(json& j, const LineFit& f) {
    j = json{{"slope", number_to_json(f.slope)}, {"intercept", number_to_json(f.intercept)}, {"points", f.points}};
}
void from_json(const json& j, LineFit& f) {
    f.slope = num(j, "slope");
    f.intercept = num(j, "intercept");
    f.points = j.at("points").get<int>();
}

void to_json(json& j, const RateEntry& e) {
    j = json{{"r", e.r},
             {"D", number_to_json(e.D)},
             {"alpha", e.alpha},
             {"scaled", numbers(e.scaled)},
             {"sup_norm", number_to_json(e.sup_norm)},
             {"faber_sup_norm", number_to_json(e.faber_sup_norm)},
             {"gap", number_to_json(e.gap)},
             {"iterations", e.iterations},
             {"sample_size", e.sample_size},
             {"converged", e.converged}};
}
void from_json(const json& j, RateEntry& e) {
    e.r = j.at("r").get<double>();
    e.D = num(j, "D");
    e.alpha = j.at("alpha").get<std::vector<cplx>>();
    e.scaled = numbers_from(j.at("scaled"));
    e.sup_norm = num(j, "sup_norm");
    e.faber_sup_norm = num(j, "faber_sup_norm");
    e.gap = num(j, "gap");
    e.iterations = j.at("iterations").get<int>();
    e.sample_size = j.at("sample_size").get<int>();
    e.converged = j.at("converged").get<bool>();
}

void to_json(json& j, const RateReport& r) {
    j = json{{"kind", "rate"}, {"family", r.family}, {"n", r.n}, {"entries", r.entries},
             {"fit", opt_to_json(r.fit)}, {"exact_match", r.exact_match}};
}
void from_json(const json& j, RateReport& r) {
    r.family = j.at("family").get<CurveFamily>();
    r.n = j.at("n").get<int>();
    r.entries = j.at("entries").get<std::vector<RateEntry>>();
    r.fit = opt_from_json<LineFit>(j, "fit");
    r.exact_match = j.at("exact_match").get<bool>();
}

void to_json(json& j, const InvarianceReport& r) {
    j = json{{"kind", "invariance"},
             {"family", r.family},
             {"n", r.n},
             {"r1", r.r1},
             {"r2", r.r2},
             {"applicable", r.applicable},
             {"note", r.note},
             {"T1", r.T1},
             {"T2", r.T2},
             {"coefficient_distance", number_to_json(r.coefficient_distance)},
             {"oracle", opt_to_json(r.oracle)},
             {"oracle_distance", r.oracle_distance ? number_to_json(*r.oracle_distance) : json(nullptr)}};
}
void from_json(const json& j, InvarianceReport& r) {
    r.family = j.at("family").get<CurveFamily>();
    r.n = j.at("n").get<int>();
    r.r1 = j.at("r1").get<double>();
    r.r2 = j.at("r2").get<double>();
    r.applicable = j.at("applicable").get<bool>();
    r.note = j.at("note").get<std::string>();
    r.T1 = j.at("T1").get<Polynomial>();
    r.T2 = j.at("T2").get<Polynomial>();
    r.coefficient_distance = num(j, "coefficient_distance");
    r.oracle = opt_from_json<Polynomial>(j, "oracle");
    r.oracle_distance.reset();
    if (j.contains("oracle_distance") && !j.at("oracle_distance").is_null())
        r.oracle_distance = number_from_json(j.at("oracle_distance"));
}

void to_json(json& j, const WidomEntry& e) {
    j = json{{"n", e.n}, {"value", e.value ? number_to_json(*e.value) : json(nullptr)}};
}
void from_json(const json& j, WidomEntry& e) {
    e.n = j.at("n").get<int>();
    e.value.reset();
    if (!j.at("value").is_null()) e.value = number_from_json(j.at("value"));
}

void to_json(json& j, const WidomReport& r) {
    j = json{{"kind", "widom"},
             {"family", r.family},
             {"r", r.r},
             {"n_max", r.n_max},
             {"entries", r.entries},
             {"ratio_last_first", r.ratio_last_first ? number_to_json(*r.ratio_last_first) : json(nullptr)}};
}
void from_json(const json& j, WidomReport& r) {
    r.family = j.at("family").get<CurveFamily>();
    r.r = j.at("r").get<double>();
    r.n_max = j.at("n_max").get<int>();
    r.entries = j.at("entries").get<std::vector<WidomEntry>>();
    r.ratio_last_first.reset();
    if (!j.at("ratio_last_first").is_null()) r.ratio_last_first = number_from_json(j.at("ratio_last_first"));
}

void to_json(json& j, const TrajectoryStep& s) {
    j = json{{"r", s.r},
             {"ok", s.ok},
             {"flagged", s.flagged},
             {"max_displacement", number_to_json(s.max_displacement)},
             {"roots", s.roots}};
}
void from_json(const json& j, TrajectoryStep& s) {
    s.r = j.at("r").get<double>();
    s.ok = j.at("ok").get<bool>();
    s.flagged = j.at("flagged").get<bool>();
    s.max_displacement = num(j, "max_displacement");
    s.roots = j.at("roots").get<std::vector<cplx>>();
}

void to_json(json& j, const TrajectorySet& t) {
    j = json{{"kind", "zeros"},
             {"family", t.family},
             {"n", t.n},
             {"r_grid", t.r_grid},
             {"steps", t.steps},
             {"polylines", t.polylines},
             {"faber_roots", t.faber_roots},
             {"endpoint_match", t.endpoint_match},
             {"endpoint_distance", numbers(t.endpoint_distance)},
             {"flagged", t.flagged}};
}
void from_json(const json& j, TrajectorySet& t) {
    t.family = j.at("family").get<CurveFamily>();
    t.n = j.at("n").get<int>();
    t.r_grid = j.at("r_grid").get<std::vector<double>>();
    t.steps = j.at("steps").get<std::vector<TrajectoryStep>>();
    t.polylines = j.at("polylines").get<std::vector<std::vector<cplx>>>();
    t.faber_roots = j.at("faber_roots").get<std::vector<cplx>>();
    t.endpoint_match = j.at("endpoint_match").get<std::vector<int>>();
    t.endpoint_distance = numbers_from(j.at("endpoint_distance"));
    t.flagged = j.at("flagged").get<bool>();
}

void to_json(json& j, const RivlinReport& r) {
    j = json{{"kind", "rivlin"},
             {"n", r.n},
             {"trials", r.trials},
             {"grid_M", r.grid_M},
             {"seed", r.seed},
             {"worst_slack", number_to_json(r.worst_slack)},
             {"min_ratio", number_to_json(r.min_ratio)}};
}
void from_json(const json& j, RivlinReport& r) {
    r.n = j.at("n").get<int>();
    r.trials = j.at("trials").get<int>();
    r.grid_M = j.at("grid_M").get<int>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.worst_slack = num(j, "worst_slack");
    r.min_ratio = num(j, "min_ratio");
}

void to_json(json& j, const FaberErrorEntry& e) { j = json{{"r", e.r}, {"sup", number_to_json(e.sup)}}; }
void from_json(const json& j, FaberErrorEntry& e) {
    e.r = j.at("r").get<double>();
    e.sup = num(j, "sup");
}

void to_json(json& j, const FaberErrorReport& r) {
    j = json{{"kind", "faber"}, {"family", r.family}, {"n", r.n}, {"entries", r.entries}, {"fit", opt_to_json(r.fit)}};
}
void from_json(const json& j, FaberErrorReport& r) {
    r.family = j.at("family").get<CurveFamily>();
    r.n = j.at("n").get<int>();
    r.entries = j.at("entries").get<std::vector<FaberErrorEntry>>();
    r.fit = opt_from_json<LineFit>(j, "fit");
}

void write_sample_csv(std::ostream& os, const CurveSample& s) {
    os << "theta,re,im\n";
    for (size_t i = 0; i < s.points.size(); ++i)
        os << fmt_double(s.theta[i]) << ',' << fmt_double(s.points[i].real()) << ',' << fmt_double(s.points[i].imag())
           << '\n';
}

void write_rate_csv(std::ostream& os, const RateReport& r) {
    os << "r,D";
    for (int k = 0; k < r.n; ++k) os << ",alpha_" << k << "_re,alpha_" << k << "_im";
    os << '\n';
    for (const auto& e : r.entries) {
        os << fmt_double(e.r) << ',' << fmt_double(e.D);
        for (cplx a : e.alpha) os << ',' << fmt_double(a.real()) << ',' << fmt_double(a.imag());
        os << '\n';
    }
}

void write_trajectories_csv(std::ostream& os, const TrajectorySet& t) {
    os << "step,traj_id,re,im\n";
    for (size_t s = 0; s < t.steps.size(); ++s) {
        if (!t.steps[s].ok) continue;
        for (size_t i = 0; i < t.steps[s].roots.size(); ++i)
            os << s << ',' << i << ',' << fmt_double(t.steps[s].roots[i].real()) << ','
               << fmt_double(t.steps[s].roots[i].imag()) << '\n';
    }
}

void write_widom_csv(std::ostream& os, const WidomReport& r) {
    os << "n,value\n";
    for (const auto& e : r.entries) os << e.n << ',' << (e.value ? fmt_double(*e.value) : std::string()) << '\n';
}

void write_faber_error_csv(std::ostream& os, const FaberErrorReport& r) {
    os << "r,sup\n";
    for (const auto& e : r.entries) os << fmt_double(e.r) << ',' << fmt_double(e.sup) << '\n';
}

std::string trajectories_svg(const TrajectorySet& t) {
    Extent ext;
    for (const auto& line : t.polylines)
        for (cplx z : line) ext.add(z.real(), z.imag());
    for (cplx z : t.faber_roots) ext.add(z.real(), z.imag());
    ext.finish();
    const double stroke = 0.004 * std::max(ext.x1 - ext.x0, ext.y1 - ext.y0);
    std::string out = svg_open(ext);
    for (size_t i = 0; i < t.polylines.size(); ++i) {
        std::vector<std::pair<double, double>> pts;
        for (cplx z : t.polylines[i]) pts.emplace_back(z.real(), z.imag());
        out += svg_path(pts, palette(i), stroke, "traj" + std::to_string(i));
    }
    for (cplx z : t.faber_roots)
        out += "  <circle cx=\"" + svg_num(z.real()) + "\" cy=\"" + svg_num(-z.imag()) + "\" r=\"" +
               svg_num(2.5 * stroke) + "\" fill=\"black\"/>\n";
    out += "</svg>\n";
    return out;
}

std::string rate_svg(const RateReport& r) {
    std::vector<std::pair<double, double>> data;
    for (const auto& e : r.entries)
        if (e.D > 0.0) data.emplace_back(std::log10(e.r), std::log10(e.D));
    Extent ext;
    for (auto [x, y] : data) ext.add(x, y);
    std::vector<std::pair<double, double>> line;
    if (r.fit && std::isfinite(r.fit->slope) && !data.empty()) {
        // fit is in natural logs; the plot uses log10 on both axes, so only the intercept moves
        for (double x : {data.front().first, data.back().first})
            line.emplace_back(x, r.fit->slope * x + r.fit->intercept / std::log(10.0));
        for (auto [x, y] : line) ext.add(x, y);
    }
    ext.finish();
    const double stroke = 0.004 * std::max(ext.x1 - ext.x0, ext.y1 - ext.y0);
    std::string out = svg_open(ext);
    out += svg_path(data, palette(0), stroke, "D");
    if (!line.empty()) out += svg_path(line, palette(1), stroke, "fit");
    out += "</svg>\n";
    return out;
}

}  // namespace eqcheb
