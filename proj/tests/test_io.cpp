#include <gtest/gtest.h>

#include <limits>
#include <sstream>

#include "eqcheb/io.hpp"

using namespace eqcheb;

namespace {

CurveFamily bernoulli() { return make_lemniscate(Polynomial::from_descending({1.0, 0.0, -1.0}), 1.0); }

template <class T>
T round_trip(const T& v) {
    const json j = v;
    return json::parse(j.dump()).get<T>();
}

// Tiny well-formedness check: balanced tags, quoted attributes, single root.
bool well_formed_xml(const std::string& s, int* paths) {
    std::vector<std::string> stack;
    int roots = 0;
    *paths = 0;
    size_t i = 0;
    while ((i = s.find('<', i)) != std::string::npos) {
        const size_t close = s.find('>', i);
        if (close == std::string::npos) return false;
        std::string tag = s.substr(i + 1, close - i - 1);
        i = close + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;
        if (tag[0] == '/') {
            if (stack.empty() || stack.back() != tag.substr(1)) return false;
            stack.pop_back();
            continue;
        }
        const bool self_closing = tag.back() == '/';
        if (self_closing) tag.pop_back();
        if (std::count(tag.begin(), tag.end(), '"') % 2) return false;
        const std::string name = tag.substr(0, tag.find_first_of(" \t\n"));
        if (name == "path") ++*paths;
        if (stack.empty()) ++roots;
        if (!self_closing) stack.push_back(name);
    }
    return stack.empty() && roots == 1;
}

TrajectorySet small_trajectories() {
    return zero_trajectories(bernoulli(), 3, {2.0, 2.5, 3.0});
}

}  // namespace

TEST(Io, ComplexEncoding) {
    EXPECT_EQ(json(cplx(1.5, 0.0)).dump(), "1.5");
    EXPECT_EQ(json(cplx(1.0, -2.0)).dump(), "[1.0,-2.0]");
    EXPECT_EQ(json::parse("[0, 3]").get<cplx>(), cplx(0, 3));
    EXPECT_EQ(json::parse("2").get<cplx>(), cplx(2, 0));
    EXPECT_THROW(json::parse("[1, 2, 3]").get<cplx>(), InvalidArgument);
}

TEST(Io, NonFiniteNumbersSurvive) {
    const double inf = std::numeric_limits<double>::infinity();
    EXPECT_EQ(number_to_json(inf), json("inf"));
    EXPECT_EQ(number_from_json(json("-inf")), -inf);
    EXPECT_TRUE(std::isnan(number_from_json(number_to_json(std::nan("")))));
    RivlinReport r;
    r.min_ratio = inf;
    EXPECT_EQ(round_trip(r), r);
}

TEST(Io, FamiliesRoundTrip) {
    const std::vector<CurveFamily> fams{
        make_circle(2.5), make_interval(), bernoulli(),
        make_inverse_polynomial_image(Polynomial::from_descending({1.0, 0.0, -3.0}), {-2.0, -std::sqrt(2.0), 2.0}),
        make_explicit_map(phi_series(bernoulli(), 6), std::nullopt)};
    for (const auto& f : fams) EXPECT_EQ(round_trip(f), f) << family_name(f);
    EXPECT_THROW(json::parse(R"({"family": "blob"})").get<CurveFamily>(), InvalidArgument);
}

TEST(Io, PolynomialAndSeriesRoundTrip) {
    const Polynomial p({cplx(1, 2), -0.125, 0.0, 1.0});
    EXPECT_EQ(round_trip(p), p);
    const auto phi = phi_series(bernoulli(), 10);
    EXPECT_EQ(round_trip(phi), phi);
    const FaberBasis basis(phi, 4);
    const auto e = basis.expand(Polynomial({0.1, 0.2, 0.3, 0.4, 1.0}));
    EXPECT_EQ(round_trip(e), e);
}

TEST(Io, SolutionAndSampleRoundTrip) {
    const auto s = sample_level_curve(bernoulli(), 2.0, 64);
    EXPECT_EQ(round_trip(s), s);
    const auto sol = solve_chebyshev(s, 3);
    EXPECT_EQ(round_trip(sol), sol);
}

TEST(Io, ReportsRoundTrip) {
    const auto rate = rate_experiment(bernoulli(), 3, {2, 4, 8, 16});
    EXPECT_EQ(round_trip(rate), rate);
    const auto inv = invariance_experiment(bernoulli(), 2, 1.5, 3.0);
    EXPECT_EQ(round_trip(inv), inv);
    const auto widom = widom_experiment(make_interval(), 2.0, 4);
    EXPECT_EQ(round_trip(widom), widom);
    const auto traj = small_trajectories();
    EXPECT_EQ(round_trip(traj), traj);
    const auto riv = rivlin_check(3, 5, 256, 1);
    EXPECT_EQ(round_trip(riv), riv);
    const auto fe = faber_error_decay(make_interval(), 4, {2, 4, 8});
    EXPECT_EQ(round_trip(fe), fe);
}

TEST(Io, CsvTables) {
    std::ostringstream os;
    write_sample_csv(os, sample_level_curve(make_circle(1.0), 2.0, 8));
    std::string text = os.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "theta,re,im");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 9);

    std::ostringstream ts;
    const auto traj = small_trajectories();
    write_trajectories_csv(ts, traj);
    text = ts.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "step,traj_id,re,im");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 3 * 3);
}

TEST(Io, TrajectorySvgIsWellFormed) {
    const auto traj = small_trajectories();
    const auto svg = trajectories_svg(traj);
    int paths = 0;
    EXPECT_TRUE(well_formed_xml(svg, &paths));
    EXPECT_EQ(paths, 3);
    EXPECT_EQ(svg, trajectories_svg(traj));  // deterministic
    EXPECT_NE(svg.find("viewBox=\""), std::string::npos);
}

TEST(Io, RateSvgIsWellFormed) {
    const auto rate = rate_experiment(bernoulli(), 3, {2, 4, 8, 16});
    int paths = 0;
    EXPECT_TRUE(well_formed_xml(rate_svg(rate), &paths));
    EXPECT_GE(paths, 1);
}
