// greenquad command-line front end.

#include <greenquad/greenquad.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace gq = greenquad;

namespace {

struct Options {
    std::string region;
    std::string expr;
    std::string mode = "spectralpe";
    std::optional<int> k, Q, P;
    int l = 0;
    bool fix_orientation = false;
    bool allow_nonpositive_weights = false;
    std::string out;
    std::string sweep;
    std::string points;
    int random_points = 50;
    unsigned long seed = 1;
};

std::string fmt(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gq::ArgumentError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

gq::Region load_region(const Options& o) {
    if (o.region.empty()) throw gq::ArgumentError("--region is required");
    gq::ParseOptions po;
    po.fix_orientation = o.fix_orientation;
    po.allow_nonpositive_weights = o.allow_nonpositive_weights;
    return gq::parse_region(read_file(o.region), po);
}

gq::Mode parse_mode(const std::string& m) {
    if (m == "spectral") return gq::Mode::Spectral;
    if (m == "spectralpe") return gq::Mode::SpectralPE;
    throw gq::ArgumentError("--mode must be spectral or spectralpe (got '" + m + "')");
}

// Spectral defaults to Q = 20; SpectralPE takes k from --k, else the integrand degree, else 0.
gq::RuleConfig make_config(const Options& o, std::optional<int> integrand_degree) {
    gq::RuleConfig cfg;
    if (parse_mode(o.mode) == gq::Mode::Spectral) {
        cfg = gq::RuleConfig::spectral(o.Q.value_or(20), o.P.value_or(0));
    } else {
        int k = 0;
        if (o.k) k = *o.k;
        else if (integrand_degree) k = *integrand_degree;
        else if (!o.expr.empty())
            throw gq::ArgumentError("integrand is not a polynomial; pass --k or use --mode spectral");
        cfg = gq::RuleConfig::spectral_pe(k, o.l, o.P.value_or(0));
    }
    cfg.validate();
    return cfg;
}

// Output sink: --out file if given, else stdout.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw gq::ArgumentError("cannot write '" + path + "'");
        }
    }
    std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }
    bool is_stdout() const { return !file_.is_open(); }

private:
    std::ofstream file_;
};

// "a..b" or "a,b,c".
std::vector<int> parse_sweep(const std::string& text) {
    std::vector<int> out;
    const auto dots = text.find("..");
    auto to_int = [&](std::string_view s) {
        int v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw gq::ArgumentError("malformed --sweep '" + text + "'");
        return v;
    };
    if (dots != std::string::npos) {
        const int a = to_int(std::string_view(text).substr(0, dots));
        const int b = to_int(std::string_view(text).substr(dots + 2));
        if (b < a) throw gq::ArgumentError("--sweep range is empty");
        for (int v = a; v <= b; ++v) out.push_back(v);
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(to_int(item));
    }
    if (out.empty()) throw gq::ArgumentError("--sweep is empty");
    return out;
}

int cmd_rule(const Options& o) {
    const auto region = load_region(o);
    const auto rule = gq::build_rule(region, make_config(o, std::nullopt));
    Sink sink(o.out);
    auto& os = sink.os();
    os << "x,y,weight,curve_index,q,zeta\n";
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto& p = rule.points[i];
        const auto& pr = rule.provenance[i];
        os << fmt(p.x) << ',' << fmt(p.y) << ',' << fmt(rule.weights[i]) << ',' << pr.curve << ',' << pr.q << ','
           << pr.zeta << '\n';
    }
    (sink.is_stdout() ? std::cerr : std::cout) << rule.size() << '\n';
    return 0;
}

gq::Integrand load_integrand(const Options& o) {
    if (o.expr.empty()) throw gq::ArgumentError("--expr is required");
    return gq::parse_expression(o.expr);
}

int cmd_integrate(const Options& o) {
    const auto region = load_region(o);
    const auto f = load_integrand(o);
    const auto rule = gq::build_rule(region, make_config(o, f.polynomial_degree));
    std::cout << fmt17(gq::integrate(rule, f)) << '\n';
    return 0;
}

int cmd_moments(const Options& o) {
    const auto g = gq::geometric_summary(load_region(o));
    std::cout << "area " << fmt17(g.area) << '\n'
              << "centroid " << fmt17(g.centroid.x) << ' ' << fmt17(g.centroid.y) << '\n'
              << "inertia " << fmt17(g.ixx) << ' ' << fmt17(g.ixy) << ' ' << fmt17(g.iyy) << '\n';
    return 0;
}

int cmd_convergence(const Options& o) {
    const auto region = load_region(o);
    const auto f = load_integrand(o);
    const double reference = gq::reference_integral(region, f);

    std::vector<double> ns, errs;
    Sink sink(o.out);
    auto& os = sink.os();
    os << "n_q,error\n";
    auto row = [&](std::size_t n, double value) {
        const double err = std::abs(value - reference);
        os << n << ',' << fmt(err) << '\n';
        ns.push_back(static_cast<double>(n));
        errs.push_back(err);
    };

    if (o.mode == "quadtree") {
        for (int depth : parse_sweep(o.sweep.empty() ? "4..10" : o.sweep)) {
            gq::OracleConfig cfg;
            cfg.max_depth = depth;
            const auto r = gq::quadtree_integral(region, f, cfg);
            row(r.point_count, r.value);
        }
    } else if (parse_mode(o.mode) == gq::Mode::Spectral) {
        const std::string sweep = o.sweep.empty() ? std::to_string(o.Q.value_or(20)) : o.sweep;
        for (int q : parse_sweep(sweep)) {
            const auto rule = gq::build_rule(region, gq::RuleConfig::spectral(q, o.P.value_or(q)));
            row(rule.size(), gq::integrate(rule, f));
        }
    } else {
        std::string sweep = o.sweep;
        if (sweep.empty()) sweep = std::to_string(o.k.value_or(f.polynomial_degree.value_or(0)));
        for (int k : parse_sweep(sweep)) {
            const auto rule = gq::build_rule(region, gq::RuleConfig::spectral_pe(k, o.l, o.P.value_or(0)));
            row(rule.size(), gq::integrate(rule, f));
        }
    }

    // Fitted algebraic order over rows with a nonzero error.
    std::vector<double> fx, fy;
    for (std::size_t i = 0; i < ns.size(); ++i)
        if (errs[i] > 0) {
            fx.push_back(std::log(ns[i]));
            fy.push_back(std::log(errs[i]));
        }
    if (fx.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < fx.size(); ++i) {
            sx += fx[i];
            sy += fy[i];
            sxx += fx[i] * fx[i];
            sxy += fx[i] * fy[i];
        }
        const double m = static_cast<double>(fx.size());
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        std::cerr << "fitted order " << fmt17(-slope) << '\n';
    }
    return 0;
}

int cmd_nurbs_extract(const std::string& input, const std::string& out) {
    if (input.empty()) throw gq::ArgumentError("--nurbs is required");
    gq::BoundaryLoop loop;
    for (const auto& n : gq::parse_nurbs(read_file(input)))
        for (auto& c : gq::nurbs_extract(n)) loop.curves.push_back(std::move(c));
    gq::Region region{{loop}};
    // Orientation is computed only for closed input; open chains keep the default flag.
    if (gq::chain_gap(loop) <= gq::kChainTolerance) region.loops[0].orientation = gq::loop_orientation(loop);
    Sink sink(out);
    sink.os() << gq::serialize_region(region);
    return 0;
}

std::vector<gq::Point2> read_points_csv(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<gq::Point2> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto comma = line.find(',');
        double x = 0, y = 0;
        const char* b = line.data();
        const char* e = b + line.size();
        bool ok = comma != std::string::npos;
        if (ok) {
            const auto rx = std::from_chars(b, b + comma, x);
            const auto ry = std::from_chars(b + comma + 1, e, y);
            ok = rx.ec == std::errc() && ry.ec == std::errc() && rx.ptr == b + comma;
        }
        if (!ok) {
            if (lineno == 1) continue; // header
            throw gq::ValidationError(path + ":" + std::to_string(lineno) + ": expected 'x,y'");
        }
        out.push_back({x, y});
    }
    return out;
}

std::vector<gq::Point2> random_interior_points(const gq::Region& region, int count, unsigned long seed) {
    if (count < 1) throw gq::ArgumentError("--random must be >= 1");
    const auto box = gq::bounding_box(region);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(box.x_min, box.x_max), uy(box.y_min, box.y_max);
    std::vector<gq::Point2> out;
    for (long tries = 0; static_cast<int>(out.size()) < count; ++tries) {
        if (tries > 1000L * count) throw gq::ArgumentError("could not sample interior points; is the region empty?");
        const gq::Point2 p{ux(rng), uy(rng)};
        try {
            if (gq::winding_number(region, p) > 0) out.push_back(p);
        } catch (const gq::BoundaryProximityError&) {
        }
    }
    return out;
}

int cmd_fit(const Options& o) {
    const auto region = load_region(o);
    const int k = o.k.value_or(2);
    const auto pts = o.points.empty() ? random_interior_points(region, o.random_points, o.seed)
                                      : read_points_csv(o.points);
    const auto fit = gq::fit_weights(pts, gq::monomial_moments(region, k));
    Sink sink(o.out);
    auto& os = sink.os();
    os << "x,y,weight\n";
    for (std::size_t i = 0; i < pts.size(); ++i)
        os << fmt(pts[i].x) << ',' << fmt(pts[i].y) << ',' << fmt(fit.weights[i]) << '\n';
    std::cerr << "residual " << fmt17(fit.residual) << '\n';
    return 0;
}

void add_region_flags(CLI::App* sub, Options& o) {
    sub->add_option("--region", o.region, "Region JSON file")->required();
    sub->add_flag("--fix-orientation", o.fix_orientation, "Replace declared loop orientations by computed ones");
    sub->add_flag("--allow-nonpositive-weights", o.allow_nonpositive_weights,
                  "Accept nonpositive control weights (Spectral mode only)");
}

void add_rule_flags(CLI::App* sub, Options& o) {
    sub->add_option("--mode", o.mode, "spectral or spectralpe");
    sub->add_option("--k", o.k, "Polynomial degree for SpectralPE");
    sub->add_option("--Q", o.Q, "Intermediate points per curve for Spectral (default 20)");
    sub->add_option("--P", o.P, "Antiderivative points (default: Q, or ceil((k+1)/2))");
    sub->add_option("--l", o.l, "Extra polynomial degree of the SpectralPE intermediate rule");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quadrature for regions bounded by rational Bezier curves"};
    app.require_subcommand(1);
    Options o;
    std::string nurbs;

    auto* rule = app.add_subcommand("rule", "Write the quadrature rule as CSV");
    add_region_flags(rule, o);
    add_rule_flags(rule, o);
    rule->add_option("--out", o.out, "Output CSV (default stdout)");

    auto* integ = app.add_subcommand("integrate", "Integrate an expression over the region");
    add_region_flags(integ, o);
    add_rule_flags(integ, o);
    integ->add_option("--expr", o.expr, "Integrand f(x, y)")->required();

    auto* moments = app.add_subcommand("moments", "Area, centroid and central second moments");
    add_region_flags(moments, o);

    auto* conv = app.add_subcommand("convergence", "Error against the P = Q = 55 reference as CSV");
    add_region_flags(conv, o);
    conv->add_option("--expr", o.expr, "Integrand f(x, y)")->required();
    conv->add_option("--mode", o.mode, "spectral, spectralpe or quadtree");
    conv->add_option("--k", o.k, "SpectralPE degree when --sweep is absent");
    conv->add_option("--Q", o.Q, "Spectral Q when --sweep is absent");
    conv->add_option("--P", o.P, "Fixed antiderivative points (default: P = Q, or the SpectralPE default)");
    conv->add_option("--l", o.l, "Extra SpectralPE degree");
    conv->add_option("--sweep", o.sweep, "Q (spectral), k (spectralpe) or depth (quadtree) values: a..b or a,b,c");
    conv->add_option("--out", o.out, "Output CSV (default stdout)");

    auto* extract = app.add_subcommand("nurbs-extract", "Convert clamped NURBS curves into a region file");
    extract->add_option("--nurbs", nurbs, "NURBS JSON file")->required();
    extract->add_option("--out", o.out, "Output region file (default stdout)");

    auto* fit = app.add_subcommand("fit", "Moment-fit weights at given or random interior points");
    add_region_flags(fit, o);
    fit->add_option("--k", o.k, "Moment degree (default 2)");
    fit->add_option("--points", o.points, "CSV of x,y points (default: random interior points)");
    fit->add_option("--random", o.random_points, "Number of random interior points (default 50)");
    fit->add_option("--seed", o.seed, "Random seed (default 1)");
    fit->add_option("--out", o.out, "Output CSV (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*rule) return cmd_rule(o);
        if (*integ) return cmd_integrate(o);
        if (*moments) return cmd_moments(o);
        if (*conv) return cmd_convergence(o);
        if (*extract) return cmd_nurbs_extract(nurbs, o.out);
        if (*fit) return cmd_fit(o);
    } catch (const gq::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const gq::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
