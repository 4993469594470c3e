// Command-line front end: reproducible experiments over the library with
// diffable CSV/JSON/SVG artifacts.  Exit codes: 0 success, 1 invalid input,
// 2 a fuzz campaign or property suite found a violation.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "relmet/ball.hpp"
#include "relmet/boundary_metrics.hpp"
#include "relmet/expr.hpp"
#include "relmet/fuzz.hpp"
#include "relmet/mobius.hpp"
#include "relmet/quasiconvex.hpp"
#include "relmet/quasihyperbolic.hpp"
#include "relmet/relative.hpp"
#include "relmet/weight.hpp"

using nlohmann::json;
using namespace relmet;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitViolation = 2;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// coordinates inside one CSV field are joined by ';' so fields never need
// quoting for commas
std::string join_coords(const Vec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += fmt17(v[i]);
    }
    return out;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

Vec parse_point(const std::string& s) {
    Vec v;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        std::size_t used = 0;
        double c = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("bad coordinate '" + tok + "'");
        v.push_back(c);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (v.empty()) throw std::invalid_argument("empty point");
    return v;
}

json vec_json(const Vec& v) {
    json a = json::array();
    for (double c : v) a.push_back(c);
    return a;
}

void write_artifact(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    f << content;
}

// Shared flag bundle; NaN doubles mean "not given".
struct Options {
    std::uint64_t seed = 0;
    std::size_t samples = 0;  // 0 = subcommand default
    std::string out, format = "csv";
    double p = std::nan(""), q = std::nan(""), alpha = std::nan("");
    double radius = 0.5;
    std::string weight, domain, x, y, center;
    std::size_t dim = 3;
};

bool has(double v) { return !std::isnan(v); }

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--seed", o.seed, "RNG seed; fully determines randomized output");
    cmd->add_option("--samples", o.samples, "sample count (subcommand-specific default)");
    cmd->add_option("--out", o.out, "output file (default: stdout)");
    cmd->add_option("--format", o.format, "csv, json, or svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
}

WeightFunction resolve_weight(const Options& o) {
    if (!o.weight.empty()) {
        if (has(o.p) || has(o.q))
            throw std::invalid_argument("give either --weight or --p/--q, not both");
        WeightExpr e(o.weight);
        return WeightFunction([e](double x, double y) { return e(x, y); }, e.source());
    }
    if (has(o.p) && has(o.q)) return pq_weight(o.p, o.q);
    throw std::invalid_argument("need --weight or both --p and --q");
}

DomainSpec load_domain(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot read domain file '" + path + "'");
    json j = json::parse(f);
    if (j.contains("boundary")) {
        std::vector<ExtendedPoint> pts;
        for (const json& e : j["boundary"]) {
            if (e.is_string() && e.get<std::string>() == "inf")
                pts.push_back(ExtendedPoint::infinity());
            else
                pts.push_back(ExtendedPoint::at(e.get<std::vector<double>>()));
        }
        return DomainSpec::finite(std::move(pts));
    }
    if (j.contains("sphere")) {
        const json& s = j["sphere"];
        return DomainSpec::sphere(s.at("center").get<std::vector<double>>(),
                                  s.at("radius").get<double>(),
                                  s.value("samples", std::size_t{2048}));
    }
    if (j.contains("plane")) {
        const json& s = j["plane"];
        return DomainSpec::half_space(s.at("point").get<std::vector<double>>(),
                                      s.at("normal").get<std::vector<double>>(),
                                      s.value("samples", std::size_t{2048}));
    }
    throw std::invalid_argument("domain file needs a 'boundary', 'sphere', or 'plane' key");
}

// Minimal deterministic SVG: one polyline over a light frame, endpoint dots,
// corner-extent labels.
std::string svg_polyline(const std::vector<std::pair<double, double>>& pts,
                         const std::string& title) {
    double xlo = pts[0].first, xhi = xlo, ylo = pts[0].second, yhi = ylo;
    for (auto& [px, py] : pts) {
        xlo = std::min(xlo, px);
        xhi = std::max(xhi, px);
        ylo = std::min(ylo, py);
        yhi = std::max(yhi, py);
    }
    double span = std::max({xhi - xlo, yhi - ylo, 1e-12});
    double pad = 0.08 * span;
    xlo -= pad;
    ylo -= pad;
    span += 2.0 * pad;
    const double side = 640.0;
    auto sx = [&](double x) { return (x - xlo) / span * side; };
    auto sy = [&](double y) { return side - (y - ylo) / span * side; };
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 672\">\n";
    s += "<title>" + title + "</title>\n";
    s += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"672\" fill=\"white\"/>\n";
    if (xlo < 0.0 && xlo + span > 0.0)
        s += "<line x1=\"" + fmt6(sx(0)) + "\" y1=\"0\" x2=\"" + fmt6(sx(0)) +
             "\" y2=\"640\" stroke=\"#cccccc\"/>\n";
    if (ylo < 0.0 && ylo + span > 0.0)
        s += "<line x1=\"0\" y1=\"" + fmt6(sy(0)) + "\" x2=\"640\" y2=\"" + fmt6(sy(0)) +
             "\" stroke=\"#cccccc\"/>\n";
    s += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ' ';
        s += fmt6(sx(pts[i].first)) + "," + fmt6(sy(pts[i].second));
    }
    s += "\"/>\n";
    s += "<circle cx=\"" + fmt6(sx(pts.front().first)) + "\" cy=\"" +
         fmt6(sy(pts.front().second)) + "\" r=\"4\" fill=\"#2060c0\"/>\n";
    s += "<circle cx=\"" + fmt6(sx(pts.back().first)) + "\" cy=\"" +
         fmt6(sy(pts.back().second)) + "\" r=\"4\" fill=\"#c03030\"/>\n";
    s += "<text x=\"8\" y=\"660\" font-size=\"13\" font-family=\"monospace\">x: [" +
         fmt6(xlo + pad) + ", " + fmt6(xlo + span - pad) + "]  y: [" + fmt6(ylo + pad) + ", " +
         fmt6(ylo + span - pad) + "]</text>\n";
    s += "</svg>\n";
    return s;
}

json fuzz_json(const char* name, const FuzzReport& rep) {
    json j{{"name", name},
           {"samples", rep.samples},
           {"seed", rep.seed},
           {"worst_violation", rep.worst_violation},
           {"worst_relative", rep.worst_relative}};
    if (rep.witness)
        j["witness"] = {{"a", vec_json(rep.witness->a)},
                        {"b", vec_json(rep.witness->b)},
                        {"c", vec_json(rep.witness->c)}};
    else
        j["witness"] = nullptr;
    return j;
}

std::string fuzz_csv_row(const char* name, const Options& o, const std::string& label,
                         std::size_t dim, const FuzzReport& rep) {
    std::string row = std::string(name) + "," + (has(o.p) ? fmt17(o.p) : "") + "," +
                      (has(o.q) ? fmt17(o.q) : "") + "," + csv_quote(label) + "," +
                      std::to_string(dim) + "," + std::to_string(rep.samples) + "," +
                      std::to_string(rep.seed) + "," + fmt17(rep.worst_violation) + "," +
                      fmt17(rep.worst_relative) + ",";
    row += rep.witness ? join_coords(rep.witness->a) : "";
    row += ",";
    row += rep.witness ? join_coords(rep.witness->b) : "";
    row += ",";
    row += rep.witness ? join_coords(rep.witness->c) : "";
    return row + "\n";
}

constexpr const char* kFuzzCsvHeader =
    "campaign,p,q,weight,dim,samples,seed,worst_violation,worst_relative,"
    "witness_a,witness_b,witness_c\n";

int run_metric_check(const Options& o) {
    if (o.format == "svg") throw std::invalid_argument("metric-check has no svg output");
    WeightFunction m = resolve_weight(o);
    std::size_t n = o.samples ? o.samples : 100000;
    std::optional<bool> in_region;
    if (has(o.p) && has(o.q)) in_region = pq_is_metric(o.p, o.q);
    FuzzReport line = metric_on_line_fuzz(m, n, o.seed);
    FuzzReport rn = metric_fuzz_rn(m, o.dim, n, o.seed + 1);
    bool violated = line.worst_violation > 0.0 || rn.worst_violation > 0.0;
    std::string artifact;
    if (o.format == "json") {
        json j{{"subcommand", "metric-check"},
               {"weight", m.label()},
               {"dim", o.dim},
               {"verdict", violated ? "violation" : "metric"},
               {"campaigns", json::array({fuzz_json("line", line), fuzz_json("rn", rn)})}};
        if (has(o.p)) j["p"] = o.p;
        if (has(o.q)) j["q"] = o.q;
        if (in_region) j["in_region"] = *in_region;
        artifact = j.dump(2) + "\n";
    } else {
        artifact = "# verdict=" + std::string(violated ? "violation" : "metric") + "\n";
        if (in_region) artifact += std::string("# in_region=") + (*in_region ? "true" : "false") + "\n";
        artifact += kFuzzCsvHeader;
        artifact += fuzz_csv_row("line", o, m.label(), 1, line);
        artifact += fuzz_csv_row("rn", o, m.label(), o.dim, rn);
    }
    write_artifact(o.out, artifact);
    std::fprintf(stderr, "metric: %s\n", violated ? "false" : "true");
    return violated ? kExitViolation : kExitOk;
}

int run_quasiconvexity(const Options& o) {
    if (o.format == "svg") throw std::invalid_argument("quasiconvexity has no svg output");
    if (!o.weight.empty())
        throw std::invalid_argument("quasiconvexity runs on the (p,q) family; use --p/--q");
    double q = has(o.q) ? o.q : 0.5;
    std::vector<double> ps;
    if (has(o.p))
        ps.push_back(o.p);
    else
        ps = {0.5, 0.75, 1.0, 2.0, 4.0, 10.0, inf};
    json rows = json::array();
    std::string csv = "p,q,lower,estimate,upper,argmax_r,converged\n";
    for (double p : ps) {
        auto [lo, hi] = c_pq_bounds(p, q);
        QuasiconvexityEstimate est = c_pq(p, q);
        rows.push_back(json{{"p", p},
                            {"q", q},
                            {"lower", lo},
                            {"estimate", est.c_estimate},
                            {"upper", hi},
                            {"argmax_r", est.argmax_r},
                            {"converged", est.converged}});
        csv += fmt17(p) + "," + fmt17(q) + "," + fmt17(lo) + "," + fmt17(est.c_estimate) + "," +
               fmt17(hi) + "," + fmt17(est.argmax_r) + "," + (est.converged ? "true" : "false") +
               "\n";
    }
    std::string artifact =
        o.format == "json"
            ? json{{"subcommand", "quasiconvexity"}, {"rows", rows}}.dump(2) + "\n"
            : csv;
    write_artifact(o.out, artifact);
    return kExitOk;
}

int run_geodesic(const Options& o) {
    if (!has(o.alpha)) throw std::invalid_argument("geodesic needs --alpha");
    if (o.x.empty() || o.y.empty()) throw std::invalid_argument("geodesic needs --x and --y");
    Vec x = parse_point(o.x), y = parse_point(o.y);
    if (x.size() != y.size()) throw std::invalid_argument("--x and --y dimensions differ");
    GeodesicPolar g = geodesic(o.alpha, x, y);
    double k = k_alpha(o.alpha, x, y);
    double L = path_length(o.alpha, g.sample(4097));
    std::size_t n = o.samples ? o.samples : 257;
    if (n < 2) throw std::invalid_argument("--samples must be >= 2");
    std::vector<Vec> pts = g.sample(n);

    if (o.format == "svg") {
        std::vector<std::pair<double, double>> plane(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i)
            plane[i] = {dot(pts[i], g.frame.u), dot(pts[i], g.frame.v)};
        write_artifact(o.out, svg_polyline(plane, "geodesic trace, length " + fmt6(k)));
        return kExitOk;
    }
    if (o.format == "json") {
        json samples = json::array();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double t = static_cast<double>(i) / static_cast<double>(n - 1);
            samples.push_back(json{{"t", t},
                                   {"theta", g.radial ? 0.0 : t * g.theta1},
                                   {"magnitude", norm(pts[i])},
                                   {"point", vec_json(pts[i])}});
        }
        json j{{"subcommand", "geodesic"}, {"alpha", o.alpha},
               {"x", vec_json(x)},         {"y", vec_json(y)},
               {"closed_form", k},         {"polyline_length", L},
               {"abs_diff", std::abs(L - k)}, {"c1", g.c1},
               {"c2", g.c2},               {"beta", g.beta},
               {"radial", g.radial},       {"samples", samples}};
        write_artifact(o.out, j.dump(2) + "\n");
        return kExitOk;
    }
    std::string csv;
    csv += "# alpha=" + fmt17(o.alpha) + "\n";
    csv += "# x=" + join_coords(x) + "\n";
    csv += "# y=" + join_coords(y) + "\n";
    csv += "# closed_form=" + fmt17(k) + "\n";
    csv += "# polyline_length=" + fmt17(L) + "\n";
    csv += "# abs_diff=" + fmt17(std::abs(L - k)) + "\n";
    csv += "# c1=" + fmt17(g.c1) + "\n# c2=" + fmt17(g.c2) + "\n# beta=" + fmt17(g.beta) + "\n";
    csv += std::string("# radial=") + (g.radial ? "true" : "false") + "\n";
    csv += "t,theta,magnitude";
    for (std::size_t d = 0; d < x.size(); ++d) csv += ",p_" + std::to_string(d);
    csv += "\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double t = static_cast<double>(i) / static_cast<double>(n - 1);
        csv += fmt17(t) + "," + fmt17(g.radial ? 0.0 : t * g.theta1) + "," + fmt17(norm(pts[i]));
        for (double c : pts[i]) csv += "," + fmt17(c);
        csv += "\n";
    }
    write_artifact(o.out, csv);
    return kExitOk;
}

int run_ball(const Options& o) {
    WeightFunction m = resolve_weight(o);
    Vec z = parse_point(o.center.empty() ? "1,0,0" : o.center);
    if (!(o.radius > 0.0)) throw std::invalid_argument("--radius must be positive");
    std::size_t n = o.samples ? o.samples : 256;
    BallTrace t = trace_sphere(m, z, o.radius, n);
    bool finite = t.all_finite();
    std::optional<ConvexityReport> conv;
    if (finite) conv = convexity_check(t);

    if (o.format == "svg") {
        std::vector<std::pair<double, double>> plane;
        plane.reserve(t.thetas.size() + 1);
        double cap = 1e3 * o.radius;
        for (std::size_t i = 0; i < t.thetas.size(); ++i) {
            double s = std::isfinite(t.s_values[i]) ? std::min(t.s_values[i], cap) : cap;
            plane.push_back({s * std::cos(t.thetas[i]), s * std::sin(t.thetas[i])});
        }
        plane.push_back(plane.front());  // close the loop
        write_artifact(o.out, svg_polyline(plane, "metric sphere trace, r = " + fmt6(o.radius)));
        return kExitOk;
    }
    json corners = json::array();
    std::string corner_list;
    if (conv)
        for (std::size_t i = 0; i < conv->corner_thetas.size(); ++i) {
            corners.push_back(conv->corner_thetas[i]);
            if (i) corner_list += ';';
            corner_list += fmt17(conv->corner_thetas[i]);
        }
    if (o.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < t.thetas.size(); ++i)
            rows.push_back(json{{"theta", t.thetas[i]},
                                {"s", t.s_values[i]},
                                {"point", vec_json(t.point(i))}});
        json j{{"subcommand", "ball"},
               {"weight", m.label()},
               {"center", vec_json(z)},
               {"radius", o.radius},
               {"all_finite", finite},
               {"convex", conv ? json(conv->convex) : json(nullptr)},
               {"corner_thetas", corners},
               {"trace", rows}};
        if (has(o.p)) j["p"] = o.p;
        if (has(o.q)) j["q"] = o.q;
        write_artifact(o.out, j.dump(2) + "\n");
        return kExitOk;
    }
    std::string csv;
    csv += "# weight=" + m.label() + "\n";
    csv += "# center=" + join_coords(z) + "\n";
    csv += "# radius=" + fmt17(o.radius) + "\n";
    csv += std::string("# all_finite=") + (finite ? "true" : "false") + "\n";
    csv += std::string("# convex=") + (conv ? (conv->convex ? "true" : "false") : "unknown") + "\n";
    csv += "# corners=" + corner_list + "\n";
    csv += "theta,s";
    for (std::size_t d = 0; d < z.size(); ++d) csv += ",w_" + std::to_string(d);
    csv += "\n";
    for (std::size_t i = 0; i < t.thetas.size(); ++i) {
        csv += fmt17(t.thetas[i]) + "," + fmt17(t.s_values[i]);
        for (double c : t.point(i)) csv += "," + fmt17(c);
        csv += "\n";
    }
    write_artifact(o.out, csv);
    return kExitOk;
}

int run_hyperbolic(const Options& o) {
    if (o.format == "svg") throw std::invalid_argument("hyperbolic has no svg output");
    if (!o.domain.empty()) {
        if (o.x.empty() || o.y.empty())
            throw std::invalid_argument("--domain evaluation needs --x and --y");
        DomainSpec G = load_domain(o.domain);
        Vec x = parse_point(o.x), y = parse_point(o.y);
        double p = has(o.p) ? o.p : -inf;
        double v_rho = rho_g(G, x, y);
        double v_sei = seittenranta(p, G, x, y);
        if (o.format == "json") {
            json j{{"subcommand", "hyperbolic"},
                   {"domain", o.domain},
                   {"x", vec_json(x)},
                   {"y", vec_json(y)},
                   {"p", p},
                   {"rho_g", v_rho},
                   {"seittenranta", v_sei}};
            write_artifact(o.out, j.dump(2) + "\n");
        } else {
            std::string csv = "# domain=" + o.domain + "\n# p=" + fmt17(p) + "\n";
            csv += "metric,value\n";
            csv += "rho_g," + fmt17(v_rho) + "\n";
            csv += "seittenranta," + fmt17(v_sei) + "\n";
            write_artifact(o.out, csv);
        }
        return kExitOk;
    }
    std::size_t n = o.samples ? o.samples : 50;
    RhoGPropertiesReport rep = rho_g_properties_test(n, o.seed);
    bool all_ok = rep.mobius_ok && rep.monotone_ok && rep.cosh_bound_ok && rep.hyperbolic_ok;
    struct Row {
        const char* name;
        double value;
        double threshold;
        bool ok;
    } rows[] = {
        {"mobius_drift", rep.mobius_drift, 1e-9, rep.mobius_ok},
        {"monotonicity_slack", rep.monotonicity_slack, 1e-12, rep.monotone_ok},
        {"cosh_bound_slack", rep.cosh_bound_slack, -1e-12, rep.cosh_bound_ok},
        {"ball_deviation", rep.ball_deviation, 1e-4, rep.hyperbolic_ok},
        {"half_space_deviation", rep.half_space_deviation, 1e-4, rep.hyperbolic_ok},
    };
    if (o.format == "json") {
        json jr = json::array();
        for (const Row& r : rows)
            jr.push_back(json{{"check", r.name},
                              {"value", r.value},
                              {"threshold", r.threshold},
                              {"ok", r.ok}});
        json j{{"subcommand", "hyperbolic"},
               {"samples", n},
               {"seed", o.seed},
               {"all_ok", all_ok},
               {"checks", jr}};
        write_artifact(o.out, j.dump(2) + "\n");
    } else {
        std::string csv = "# samples=" + std::to_string(n) + "\n";
        csv += "# seed=" + std::to_string(o.seed) + "\n";
        csv += std::string("# all_ok=") + (all_ok ? "true" : "false") + "\n";
        csv += "check,value,threshold,ok\n";
        for (const Row& r : rows)
            csv += std::string(r.name) + "," + fmt17(r.value) + "," + fmt17(r.threshold) + "," +
                   (r.ok ? "true" : "false") + "\n";
        write_artifact(o.out, csv);
    }
    return all_ok ? kExitOk : kExitViolation;
}

int run_fuzz(const Options& o) {
    if (o.format == "svg") throw std::invalid_argument("fuzz has no svg output");
    WeightFunction m = resolve_weight(o);
    std::size_t n = o.samples ? o.samples : 100000;
    FuzzReport rep = o.dim <= 1 ? metric_on_line_fuzz(m, n, o.seed)
                                : metric_fuzz_rn(m, o.dim, n, o.seed);
    const char* campaign = o.dim <= 1 ? "line" : "rn";
    bool violated = rep.worst_violation > 0.0;
    std::string artifact;
    if (o.format == "json") {
        json j{{"subcommand", "fuzz"},
               {"weight", m.label()},
               {"dim", o.dim},
               {"verdict", violated ? "violation" : "clean"},
               {"campaigns", json::array({fuzz_json(campaign, rep)})}};
        artifact = j.dump(2) + "\n";
    } else {
        artifact = "# verdict=" + std::string(violated ? "violation" : "clean") + "\n";
        artifact += kFuzzCsvHeader;
        artifact += fuzz_csv_row(campaign, o, m.label(), o.dim <= 1 ? 1 : o.dim, rep);
    }
    write_artifact(o.out, artifact);
    return violated ? kExitViolation : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relative-metric toolkit: metric checks, quasiconvexity scans, geodesics,\n"
                 "metric-sphere traces, cross-ratio metrics, and triangle fuzzing"};
    app.require_subcommand(1);
    Options o;

    CLI::App* mc = app.add_subcommand("metric-check",
                                      "region membership and triangle fuzz for a weight");
    add_common(mc, o);
    mc->add_option("--p", o.p, "exponent p of the (p,q) family");
    mc->add_option("--q", o.q, "exponent q of the (p,q) family");
    mc->add_option("--weight", o.weight, "weight expression in x and y");
    mc->add_option("--dim", o.dim, "ambient dimension for the R^n campaign");

    CLI::App* qc = app.add_subcommand("quasiconvexity",
                                      "bounds/estimate table for the (p,q) family");
    add_common(qc, o);
    qc->add_option("--p", o.p, "single exponent p (default: a small grid)");
    qc->add_option("--q", o.q, "exponent q (default 0.5)");

    CLI::App* ge = app.add_subcommand("geodesic", "analytic geodesic trace and length check");
    add_common(ge, o);
    ge->add_option("--alpha", o.alpha, "metric exponent in [0,1)")->required();
    ge->add_option("--x", o.x, "start point, comma-separated coordinates")->required();
    ge->add_option("--y", o.y, "end point, comma-separated coordinates")->required();

    CLI::App* ba = app.add_subcommand("ball", "metric sphere trace with shape diagnostics");
    add_common(ba, o);
    ba->add_option("--p", o.p, "exponent p of the (p,q) family");
    ba->add_option("--q", o.q, "exponent q of the (p,q) family");
    ba->add_option("--weight", o.weight, "weight expression in x and y");
    ba->add_option("--center", o.center, "sphere center (default 1,0,0)");
    ba->add_option("--radius", o.radius, "metric radius (default 0.5)");

    CLI::App* hy = app.add_subcommand("hyperbolic",
                                      "cross-ratio metric suite, or point evaluation on a domain");
    add_common(hy, o);
    hy->add_option("--domain", o.domain, "JSON domain file for point evaluation");
    hy->add_option("--x", o.x, "first point (with --domain)");
    hy->add_option("--y", o.y, "second point (with --domain)");
    hy->add_option("--p", o.p, "cross-ratio mean exponent (default -inf)");

    CLI::App* fz = app.add_subcommand("fuzz", "triangle-inequality campaign for any weight");
    add_common(fz, o);
    fz->add_option("--p", o.p, "exponent p of the (p,q) family");
    fz->add_option("--q", o.q, "exponent q of the (p,q) family");
    fz->add_option("--weight", o.weight, "weight expression in x and y");
    fz->add_option("--dim", o.dim, "1 for the line campaign, else R^n");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInvalid;
    }

    try {
        if (mc->parsed()) return run_metric_check(o);
        if (qc->parsed()) return run_quasiconvexity(o);
        if (ge->parsed()) return run_geodesic(o);
        if (ba->parsed()) return run_ball(o);
        if (hy->parsed()) return run_hyperbolic(o);
        if (fz->parsed()) return run_fuzz(o);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvalid;
    }
    return kExitInvalid;
}
