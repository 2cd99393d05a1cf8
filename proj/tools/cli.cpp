#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "eqcheb/experiments.hpp"
#include "eqcheb/io.hpp"
#include "eqcheb/rootfind.hpp"
#include "eqcheb/series.hpp"

namespace fs = std::filesystem;

namespace eqcheb::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(trim(item));
    if (!text.empty() && text.back() == ',') parts.emplace_back();
    return parts;
}

// strtod over the whole token, or nothing
std::optional<double> read_real(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) return std::nullopt;
    return v;
}

struct Config {
    std::string family;
    std::string P;
    double R = 1.0;
    std::string alternation;
    std::string family_json;

    int n = -1;
    double r = 0.0;
    std::string r_list;
    int n_max = 25;
    int window = 5;
    int trials = 1000;
    int grid_M = 4096;
    std::uint64_t seed = 1;

    int M = 0;
    int M_eval = 0;
    double tol = 1e-10;
    double adapt_tol = 1e-8;
    int max_iter = 20000;

    std::string out;
    std::string name;
};

void add_family(CLI::App* sub, Config& c) {
    sub->add_option("--family", c.family, "circle | interval | lemniscate | ipi");
    sub->add_option("--P", c.P, "defining polynomial, highest degree first, e.g. 1,0,-1 or 1,0,1+2i");
    sub->add_option("--R", c.R, "circle radius or lemniscate level");
    sub->add_option("--alternation", c.alternation, "ipi only: alternation points x_0 < ... < x_m");
    sub->add_option("--family-json", c.family_json, "read the family from a JSON file instead");
}

void add_solver(CLI::App* sub, Config& c) {
    sub->add_option("--M", c.M, "initial sample size (default max(256, 16 n))");
    sub->add_option("--M-eval", c.M_eval, "evaluation sample for sup norms");
    sub->add_option("--tol", c.tol, "equioscillation gap target");
    sub->add_option("--adapt-tol", c.adapt_tol, "refinement stopping tolerance");
    sub->add_option("--max-iter", c.max_iter, "iteration budget per solve");
}

void add_output(CLI::App* sub, Config& c) {
    sub->add_option("--out", c.out, "output directory (default $EQCHEB_OUT, else .)");
    sub->add_option("--name", c.name, "file stem for the artifacts (default: the subcommand)");
}

CurveFamily build_family(const Config& c) {
    if (!c.family_json.empty()) {
        std::ifstream in(c.family_json);
        if (!in) throw InvalidArgument("cannot read family file " + c.family_json);
        json j;
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw InvalidArgument("family file " + c.family_json + " is not valid JSON: " + e.what());
        }
        auto f = j.get<CurveFamily>();
        validate(f);
        return f;
    }
    if (c.family.empty()) throw InvalidArgument("--family is required (circle, interval, lemniscate, ipi)");
    auto need_P = [&] {
        if (c.P.empty()) throw InvalidArgument("--family " + c.family + " needs --P, e.g. --P 1,0,-1");
        return Polynomial::from_descending(parse_coefficients(c.P));
    };
    if (c.family == "circle") return make_circle(c.R);
    if (c.family == "interval") return make_interval();
    if (c.family == "lemniscate") return make_lemniscate(need_P(), c.R);
    if (c.family == "ipi") {
        std::vector<double> alt;
        if (!c.alternation.empty()) alt = parse_doubles(c.alternation);
        return make_inverse_polynomial_image(need_P(), alt);
    }
    throw InvalidArgument("unknown family '" + c.family + "'; expected circle, interval, lemniscate or ipi");
}

void require_degree(const Config& c) {
    if (c.n < 0) throw InvalidArgument("--n must be given and >= 0");
    if (c.M != 0 && c.M <= c.n) throw InvalidArgument("--M must exceed --n");
}

void require_positive(double r, const char* what) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument(std::string(what) + " must be a positive number");
}

std::vector<double> positive_list(const std::string& text, const char* what) {
    auto v = parse_doubles(text);
    if (v.empty()) throw InvalidArgument(std::string(what) + " is empty");
    for (double r : v) require_positive(r, what);
    return v;
}

ExperimentOptions experiment_options(const Config& c) {
    if (!(c.tol > 0.0) || !(c.adapt_tol > 0.0)) throw InvalidArgument("--tol and --adapt-tol must be positive");
    if (c.max_iter <= 0) throw InvalidArgument("--max-iter must be positive");
    if (c.M_eval < 0 || c.M < 0) throw InvalidArgument("sample sizes must be positive");
    ExperimentOptions o;
    o.M0 = c.M;
    o.M_eval = c.M_eval;
    o.minimax.tol_rel = c.tol;
    o.minimax.adapt_tol = c.adapt_tol;
    o.minimax.max_iter = c.max_iter;
    return o;
}

class Artifacts {
public:
    Artifacts(const Config& c, const std::string& sub) {
        std::string dir = c.out;
        if (dir.empty()) {
            const char* env = std::getenv("EQCHEB_OUT");
            dir = env && *env ? env : ".";
        }
        dir_ = dir;
        stem_ = c.name.empty() ? sub : c.name;
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_))
            throw InvalidArgument("cannot create output directory " + dir_.string() + "; pass a writable --out");
        const fs::path probe = dir_ / (stem_ + ".probe");
        {
            std::ofstream t(probe);
            if (!t) throw InvalidArgument("output directory " + dir_.string() + " is not writable; pass --out");
        }
        fs::remove(probe, ec);
    }

    fs::path path(const std::string& ext) const { return dir_ / (stem_ + ext); }

    void write(const std::string& ext, const std::string& text) {
        const auto p = path(ext);
        std::ofstream o(p);
        o << text;
        if (!o) throw Error("failed writing " + p.string());
        written_.push_back(p.string());
    }
    void json_report(const json& j) { write(".json", j.dump(2) + "\n"); }
    template <class Fn>
    void csv(Fn&& fn) {
        std::ostringstream os;
        fn(os);
        write(".csv", os.str());
    }

    const std::vector<std::string>& written() const { return written_; }

private:
    fs::path dir_;
    std::string stem_;
    std::vector<std::string> written_;
};

int do_faber(const Config& c, std::ostream& out) {
    const auto f = build_family(c);
    require_degree(c);
    std::vector<double> grid;
    if (!c.r_list.empty()) grid = positive_list(c.r_list, "--r-grid");
    Artifacts art(c, "faber");

    if (!grid.empty()) {
        const auto rep = faber_error_decay(f, c.n, grid, c.M_eval);
        art.json_report(rep);
        art.csv([&](std::ostream& os) { write_faber_error_csv(os, rep); });
        if (rep.fit) out << "slope " << rep.fit->slope << "\n";
    } else {
        const auto F = monic_faber(phi_series(f, c.n), c.n);
        json j{{"kind", "faber"}, {"family", f}, {"n", c.n}, {"polynomial", F}};
        j["roots"] = all_roots(F).roots;
        art.json_report(j);
    }
    for (const auto& p : art.written()) out << p << "\n";
    return kOk;
}

int do_cheb(const Config& c, std::ostream& out, std::ostream& err) {
    const auto f = build_family(c);
    require_degree(c);
    require_positive(c.r, "--r");
    const auto opts = experiment_options(c);
    Artifacts art(c, "cheb");

    const int M = c.M ? c.M : default_sample_size(c.n);
    const auto sample = sample_level_curve(f, c.r, M);
    const auto sol = solve_chebyshev(sample, c.n, opts.minimax);
    json j = sol;
    j["family"] = f;
    art.json_report(j);
    art.csv([&](std::ostream& os) { write_sample_csv(os, sample); });
    out << "sup_norm " << sol.sup_norm << (sol.converged ? "" : " (unconverged)") << "\n";
    for (const auto& p : art.written()) out << p << "\n";
    if (!sol.converged) {
        err << "solve did not converge: gap " << sol.equioscillation_gap << " after " << sol.iterations
            << " iterations; raise --max-iter or loosen --tol\n";
        return kUnconverged;
    }
    return kOk;
}

int do_rate(const Config& c, std::ostream& out) {
    const auto f = build_family(c);
    require_degree(c);
    if (c.r_list.empty()) throw InvalidArgument("--r-grid is required, e.g. --r-grid 2,4,8,16,32");
    const auto grid = positive_list(c.r_list, "--r-grid");
    const auto opts = experiment_options(c);
    Artifacts art(c, "rate");

    const auto rep = rate_experiment(f, c.n, grid, opts);
    art.json_report(rep);
    art.csv([&](std::ostream& os) { write_rate_csv(os, rep); });
    art.write(".svg", rate_svg(rep));
    if (rep.exact_match)
        out << "T_n equals the Faber polynomial on every level\n";
    else if (rep.fit)
        out << "slope " << rep.fit->slope << "\n";
    for (const auto& p : art.written()) out << p << "\n";
    return kOk;
}

int do_invariance(const Config& c, std::ostream& out) {
    const auto f = build_family(c);
    require_degree(c);
    const auto rs = positive_list(c.r_list, "--r");
    if (rs.size() != 2) throw InvalidArgument("invariance takes two levels, e.g. --r 1.5,4");
    const auto opts = experiment_options(c);
    Artifacts art(c, "invariance");

    const auto rep = invariance_experiment(f, c.n, rs[0], rs[1], opts);
    art.json_report(rep);
    out << "coefficient distance " << rep.coefficient_distance << "\n";
    if (rep.oracle_distance) out << "oracle distance " << *rep.oracle_distance << "\n";
    if (!rep.note.empty()) out << rep.note << "\n";
    for (const auto& p : art.written()) out << p << "\n";
    return kOk;
}

int do_widom(const Config& c, std::ostream& out) {
    const auto f = build_family(c);
    require_positive(c.r, "--r");
    if (c.n_max < 1) throw InvalidArgument("--n-max must be at least 1");
    if (c.window < 2) throw InvalidArgument("--window must be at least 2");
    const auto opts = experiment_options(c);
    Artifacts art(c, "widom");

    const auto rep = widom_experiment(f, c.r, c.n_max, opts);
    art.json_report(rep);
    art.csv([&](std::ostream& os) { write_widom_csv(os, rep); });
    if (rep.ratio_last_first) out << "last/first " << *rep.ratio_last_first << "\n";
    out << "no sustained increase: " << (no_sustained_increase(rep, c.window) ? "yes" : "no") << "\n";
    for (const auto& p : art.written()) out << p << "\n";
    return kOk;
}

int do_zeros(const Config& c, std::ostream& out) {
    const auto f = build_family(c);
    require_degree(c);
    auto grid = default_trajectory_grid();
    if (!c.r_list.empty()) grid = positive_list(c.r_list, "--r-grid");
    const auto opts = experiment_options(c);
    Artifacts art(c, "zeros");

    const auto set = zero_trajectories(f, c.n, grid, opts);
    art.json_report(set);
    art.csv([&](std::ostream& os) { write_trajectories_csv(os, set); });
    art.write(".svg", trajectories_svg(set));
    int ok = 0;
    for (const auto& s : set.steps) ok += s.ok ? 1 : 0;
    out << ok << "/" << set.steps.size() << " levels solved" << (set.flagged ? ", some steps flagged" : "") << "\n";
    for (const auto& p : art.written()) out << p << "\n";
    return kOk;
}

int do_rivlin(const Config& c, std::ostream& out) {
    if (c.n < 1) throw InvalidArgument("--n must be given and >= 1");
    if (c.trials < 1) throw InvalidArgument("--trials must be positive");
    if (c.grid_M <= c.n) throw InvalidArgument("--grid-M must exceed --n");
    Artifacts art(c, "rivlin");

    const auto rep = rivlin_check(c.n, c.trials, c.grid_M, c.seed);
    art.json_report(rep);
    out << "worst slack " << rep.worst_slack << ", min ratio " << rep.min_ratio << "\n";
    for (const auto& p : art.written()) out << p << "\n";
    return kOk;
}

}  // namespace

cplx parse_complex(const std::string& token) {
    const std::string s = trim(token);
    if (s.empty()) throw InvalidArgument("empty coefficient");
    if (s.back() != 'i') {
        if (auto v = read_real(s)) return {*v, 0.0};
        throw InvalidArgument("cannot read coefficient '" + token + "'");
    }
    const std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not an exponent sign
    size_t cut = std::string::npos;
    for (size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            cut = k;
            break;
        }
    }
    std::string re = cut == std::string::npos ? "" : body.substr(0, cut);
    std::string im = cut == std::string::npos ? body : body.substr(cut);
    if (im.empty() || im == "+") im = "1";
    if (im == "-") im = "-1";
    const auto vr = re.empty() ? std::optional<double>(0.0) : read_real(re);
    const auto vi = read_real(im);
    if (!vr || !vi) throw InvalidArgument("cannot read coefficient '" + token + "'; use forms like 2, -i, 1.5-2i");
    return {*vr, *vi};
}

std::vector<cplx> parse_coefficients(const std::string& text) {
    std::vector<cplx> v;
    for (const auto& t : split_commas(text)) v.push_back(parse_complex(t));
    if (v.empty()) throw InvalidArgument("no coefficients given");
    return v;
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> v;
    for (const auto& t : split_commas(text)) {
        auto x = read_real(t);
        if (!x) throw InvalidArgument("cannot read number '" + t + "' in '" + text + "'");
        v.push_back(*x);
    }
    return v;
}

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chebyshev polynomials on equipotential curves", "eqcheb"};
    app.require_subcommand(1, 1);
    Config c;

    auto* faber = app.add_subcommand("faber", "monic Faber polynomial, or its error decay with --r-grid");
    add_family(faber, c);
    faber->add_option("--n", c.n, "degree");
    faber->add_option("--r-grid", c.r_list, "levels for the error decay, e.g. 2,4,8,16");
    faber->add_option("--M-eval", c.M_eval, "evaluation sample size");
    add_output(faber, c);

    auto* cheb = app.add_subcommand("cheb", "Chebyshev polynomial of one level curve");
    add_family(cheb, c);
    cheb->add_option("--n", c.n, "degree");
    cheb->add_option("--r", c.r, "level, r > 0");
    add_solver(cheb, c);
    add_output(cheb, c);

    auto* rate = app.add_subcommand("rate", "distance to the Faber polynomial across levels");
    add_family(rate, c);
    rate->add_option("--n", c.n, "degree");
    rate->add_option("--r-grid", c.r_list, "levels, e.g. 2,4,8,16,32");
    add_solver(rate, c);
    add_output(rate, c);

    auto* inv = app.add_subcommand("invariance", "compare T_n on two levels");
    add_family(inv, c);
    inv->add_option("--n", c.n, "degree");
    inv->add_option("--r", c.r_list, "two levels, e.g. 1.5,4");
    add_solver(inv, c);
    add_output(inv, c);

    auto* widom = app.add_subcommand("widom", "normalized distances for n = 1..n-max");
    add_family(widom, c);
    widom->add_option("--r", c.r, "level");
    widom->add_option("--n-max", c.n_max, "largest degree");
    widom->add_option("--window", c.window, "run length for the monotonicity check");
    add_solver(widom, c);
    add_output(widom, c);

    auto* zeros = app.add_subcommand("zeros", "zero trajectories of T_n as the level shrinks");
    add_family(zeros, c);
    zeros->add_option("--n", c.n, "degree");
    zeros->add_option("--r-grid", c.r_list, "levels (default 100 log-spaced from 1.05 to 8)");
    add_solver(zeros, c);
    add_output(zeros, c);

    auto* rivlin = app.add_subcommand("rivlin", "random trials of the Rivlin inequality on the unit circle");
    rivlin->add_option("--n", c.n, "degree");
    rivlin->add_option("--trials", c.trials, "number of random polynomials");
    rivlin->add_option("--grid-M", c.grid_M, "circle grid size");
    rivlin->add_option("--seed", c.seed, "RNG seed");
    add_output(rivlin, c);

    std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
    std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        // prints help for --help, the message otherwise
        return app.exit(e, out, err) == 0 ? kOk : kValidation;
    }

    try {
        if (faber->parsed()) return do_faber(c, out);
        if (cheb->parsed()) return do_cheb(c, out, err);
        if (rate->parsed()) return do_rate(c, out);
        if (inv->parsed()) return do_invariance(c, out);
        if (widom->parsed()) return do_widom(c, out);
        if (zeros->parsed()) return do_zeros(c, out);
        return do_rivlin(c, out);
    } catch (const UnconvergedError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kUnconverged;
    } catch (const RootFindError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kUnconverged;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const json::exception& e) {
        err << "error: malformed JSON input: " << e.what() << "\n";
        return kValidation;
    }
}

int run(int argc, char** argv) {
    return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace eqcheb::cli
