#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "lemniscate/contour.hpp"
#include "lemniscate/hermite.hpp"
#include "lemniscate/laurent.hpp"
#include "lemniscate/region.hpp"
#include "lemniscate/taylor.hpp"

namespace lemniscate {

namespace {

using Json = nlohmann::ordered_json;

enum class Mode { Taylor, Laurent, TaylorLaurent };
enum class Method { Cauchy, Derivative, Both };

struct RunConfig {
    std::string function;
    std::string foci;
    int N = 6;
    std::string method = "derivative";
    std::string mode = "taylor";
    int split = 0;
    double delta = 0.0;
    std::vector<std::string> singularities;
    std::string out;
    std::string sidecar;
    double tol = 1e-12;
    int max_nodes = 1 << 16;
    double check_tol = 1e-10;
    std::vector<std::string> probes;
    int resolution = 512;
    std::vector<double> clip;
};

// f with its declared singularity list replaced
class Overridden final : public ComplexFunction {
public:
    Overridden(const ComplexFunction& f, std::vector<Singularity> list) : f_(f), list_(std::move(list)) {}
    Complex value(Complex z) const override { return f_.value(z); }
    Series series(Complex center, int order) const override { return f_.series(center, order); }
    std::span<const Singularity> singularities() const override { return list_; }

private:
    const ComplexFunction& f_;
    std::vector<Singularity> list_;
};

Singularity parse_singularity(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3) throw ParseError("singularity must be 'location:kind[:order]'", 0);
    Singularity s;
    s.location = parse_complex(parts[0]);
    if (parts[1] == "pole") {
        s.kind = SingularityKind::Pole;
        s.order = 1;
        if (parts.size() == 3) {
            try {
                s.order = std::stoi(parts[2]);
            } catch (const std::exception&) {
                throw ParseError("bad pole order '" + parts[2] + "'", 0);
            }
            if (s.order < 1) throw ParseError("pole order must be positive", 0);
        }
    } else if (parts[1] == "essential") {
        s.kind = SingularityKind::Essential;
    } else if (parts[1] == "branch") {
        s.kind = SingularityKind::BranchPoint;
    } else {
        throw ParseError("unknown singularity kind '" + parts[1] + "'", 0);
    }
    if (s.kind != SingularityKind::Pole && parts.size() == 3) throw ParseError("only poles take an order", 0);
    return s;
}

Mode parse_mode(const std::string& m) {
    if (m == "taylor") return Mode::Taylor;
    if (m == "laurent") return Mode::Laurent;
    if (m == "taylor-laurent") return Mode::TaylorLaurent;
    throw ParseError("unknown mode '" + m + "'", 0);
}

Method parse_method(const std::string& m) {
    if (m == "cauchy") return Method::Cauchy;
    if (m == "derivative") return Method::Derivative;
    if (m == "both") return Method::Both;
    throw ParseError("unknown method '" + m + "'", 0);
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json real_json(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

Json tensor_json(const CoefficientTensor& t) {
    Json blocks = Json::array();
    for (int n = 0; n < t.blocks(); ++n) {
        Json foci = Json::array();
        for (std::size_t j = t.first_focus(); j < t.last_focus(); ++j) {
            Json entries = Json::array();
            for (int l = 0; l < t.multiplicity(j); ++l) entries.push_back(complex_json(t(n, j, l)));
            foci.push_back(std::move(entries));
        }
        blocks.push_back(std::move(foci));
    }
    return blocks;
}

Json points_json(const PointSet& s) {
    Json out = Json::array();
    for (const auto& f : s.foci()) out.push_back({{"z", complex_json(f.z)}, {"multiplicity", f.multiplicity}});
    return out;
}

Json region_json(const RegionSpec& r) {
    Json out;
    out["kind"] = std::string(region_kind_name(r.kind));
    if (r.kind == RegionKind::Lemniscate) {
        out["r"] = real_json(r.r);
    } else {
        out["r1"] = real_json(r.r1);
        out["r2"] = real_json(r.r2);
        out["delta"] = r.delta;
    }
    if (r.kind == RegionKind::TaylorLaurent) out["split"] = r.split;
    return out;
}

// Loaded function, point set and options shared by every subcommand.
struct Problem {
    AnalyticFunction parsed;
    std::optional<Overridden> overridden;
    PointSet points;
    Mode mode = Mode::Taylor;
    Method method = Method::Derivative;
    QuadratureOptions quad;

    const ComplexFunction& f() const {
        if (overridden) return *overridden;
        return parsed;
    }
};

Problem load(const RunConfig& c) {
    Problem p{parse_function(c.function), std::nullopt, parse_point_set(c.foci), parse_mode(c.mode),
              parse_method(c.method), {}};
    if (!c.singularities.empty()) {
        std::vector<Singularity> list;
        for (const auto& s : c.singularities) list.push_back(parse_singularity(s));
        p.overridden.emplace(p.parsed, std::move(list));
    }
    if (c.N < 1) throw DomainError("N must be at least 1");
    if (p.mode == Mode::TaylorLaurent) {
        if (c.split < 1) throw DomainError("taylor-laurent mode needs --split q with 1 <= q < p");
    } else if (c.split != 0) {
        throw DomainError("--split applies to taylor-laurent mode only");
    }
    p.quad.tol = c.tol;
    p.quad.max_nodes = c.max_nodes;
    return p;
}

RegionSpec region_for(const Problem& p, const RunConfig& c) {
    const auto sings = p.f().singularities();
    switch (p.mode) {
        case Mode::Taylor: return lemniscate_region(p.points, sings);
        case Mode::Laurent: return annulus_region(p.points, sings, c.delta);
        case Mode::TaylorLaurent:
            return taylor_laurent_region(p.points, static_cast<std::size_t>(c.split), sings, c.delta);
    }
    return {};
}

// Writes to --out when given, otherwise to stdout.
void emit(const RunConfig& c, std::ostream& out, const std::string& text) {
    if (c.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(c.out);
    if (!file) throw DomainError("cannot write " + c.out);
    file << text;
}

CoefficientMethod primary(Method m) { return m == Method::Cauchy ? CoefficientMethod::Cauchy : CoefficientMethod::Derivative; }

// ---------------------------------------------------------------------------

int cmd_expand(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const Problem p = load(c);
    for (const auto& w : p.points.warnings()) err << "warning: " << w << '\n';
    const ComplexFunction& f = p.f();
    Json doc;
    doc["mode"] = c.mode;
    doc["points"] = points_json(p.points);
    if (p.mode == Mode::TaylorLaurent) doc["split"] = c.split;
    doc["N"] = c.N;
    doc["method"] = c.method;
    std::optional<double> cross;
    double est = 0.0;
    switch (p.mode) {
        case Mode::Taylor: {
            const auto e = expand_taylor(f, p.points, c.N, primary(p.method), p.quad);
            est = e.est_error;
            if (p.method == Method::Both) {
                const auto other = expand_taylor(f, p.points, c.N, CoefficientMethod::Cauchy, p.quad);
                cross = max_abs_diff(e.a, other.a);
                est = other.est_error;
            }
            doc["a"] = tensor_json(e.a);
            break;
        }
        case Mode::Laurent: {
            const auto e = expand_laurent(f, p.points, c.N, primary(p.method), c.delta, p.quad);
            est = e.est_error;
            if (p.method == Method::Both) {
                const auto other = expand_laurent(f, p.points, c.N, CoefficientMethod::Cauchy, c.delta, p.quad);
                cross = std::max(max_abs_diff(e.a, other.a), max_abs_diff(e.b, other.b));
                est = other.est_error;
            }
            doc["delta"] = e.delta;
            doc["a"] = tensor_json(e.a);
            doc["b"] = tensor_json(e.b);
            break;
        }
        case Mode::TaylorLaurent: {
            const auto q = static_cast<std::size_t>(c.split);
            const auto e = expand_taylor_laurent(f, p.points, q, c.N, primary(p.method), c.delta, p.quad);
            est = e.est_error;
            if (p.method == Method::Both) {
                const auto other =
                    expand_taylor_laurent(f, p.points, q, c.N, CoefficientMethod::Cauchy, c.delta, p.quad);
                cross = std::max(
                    {max_abs_diff(e.a, other.a), max_abs_diff(e.b, other.b), max_abs_diff(e.c, other.c)});
                est = other.est_error;
            }
            doc["delta"] = e.delta;
            doc["a"] = tensor_json(e.a);
            doc["b"] = tensor_json(e.b);
            doc["c"] = tensor_json(e.c);
            break;
        }
    }
    if (cross) doc["cross_check_max_abs_diff"] = *cross;
    if (p.method != Method::Derivative) doc["quadrature_est_error"] = est;
    doc["region"] = region_json(region_for(p, c));
    emit(c, out, doc.dump(2) + "\n");
    return 0;
}

int cmd_region(const RunConfig& c, std::ostream& out, std::ostream& err) {
    const Problem p = load(c);
    const RegionSpec region = region_for(p, c);
    for (const auto& w : region.warnings) err << "warning: " << w << '\n';
    std::optional<ClipBox> clip;
    if (!c.clip.empty()) {
        if (c.clip.size() != 4) throw DomainError("--clip takes xmin ymin xmax ymax");
        clip = ClipBox{c.clip[0], c.clip[1], c.clip[2], c.clip[3]};
    }
    const auto lines = boundary_sample(region, c.resolution, clip);
    std::ostringstream csv;
    write_boundary_csv(csv, lines);
    emit(c, out, csv.str());

    Json side = region_json(region);
    if (region.kind == RegionKind::Lemniscate) {
        side["r1"] = nullptr;
        side["r2"] = nullptr;
        side["delta"] = nullptr;
    } else {
        side["r"] = nullptr;
    }
    side["resolution"] = c.resolution;
    side["component_count"] = lines.size();
    side["warnings"] = region.warnings;
    const std::string path = !c.sidecar.empty() ? c.sidecar : (!c.out.empty() ? c.out + ".json" : std::string());
    if (!path.empty()) {
        std::ofstream file(path);
        if (!file) throw DomainError("cannot write " + path);
        file << side.dump(2) << '\n';
    }
    return 0;
}

double abs_product(const PointSet& s, Complex z, std::size_t first, std::size_t last) {
    double acc = 1.0;
    for (std::size_t k = first; k < last; ++k) acc *= std::pow(std::abs(z - s[k].z), s[k].multiplicity);
    return acc;
}

double predicted_ratio(const RegionSpec& r, Complex z) {
    const PointSet& s = r.points;
    const double prod = abs_product(s, z, 0, s.size());
    switch (r.kind) {
        case RegionKind::Lemniscate: return prod / r.r;
        case RegionKind::Annulus: return std::max(prod / r.r1, r.r2 / prod);
        case RegionKind::TaylorLaurent: {
            const double a = abs_product(s, z, 0, r.split), b = abs_product(s, z, r.split, s.size());
            return std::max(prod / r.r1, a / (r.r2 * b));
        }
    }
    return 0.0;
}

int cmd_converge(const RunConfig& c, std::ostream& out, std::ostream&) {
    const Problem p = load(c);
    if (c.probes.empty()) throw DomainError("converge needs at least one --probe");
    const ComplexFunction& f = p.f();
    const RegionSpec region = region_for(p, c);
    std::vector<Complex> probes;
    for (const auto& text : c.probes) probes.push_back(parse_complex(text));

    // partial sums for every N come from the largest expansion: block n does not depend on N
    std::function<Complex(int, Complex)> partial;
    std::optional<TaylorExpansion> taylor;
    std::optional<LaurentExpansion> laurent;
    std::optional<TaylorLaurentExpansion> mixed;
    switch (p.mode) {
        case Mode::Taylor:
            taylor = expand_taylor(f, p.points, c.N, primary(p.method), p.quad);
            partial = [&](int N, Complex z) {
                TaylorExpansion e = *taylor;
                e.N = N;
                return eval_expansion(e, z);
            };
            break;
        case Mode::Laurent:
            laurent = expand_laurent(f, p.points, c.N, primary(p.method), c.delta, p.quad);
            partial = [&](int N, Complex z) {
                LaurentExpansion e = *laurent;
                e.N = N;
                return eval_expansion(e, z);
            };
            break;
        case Mode::TaylorLaurent:
            mixed = expand_taylor_laurent(f, p.points, static_cast<std::size_t>(c.split), c.N, primary(p.method),
                                          c.delta, p.quad);
            partial = [&](int N, Complex z) {
                TaylorLaurentExpansion e = *mixed;
                e.N = N;
                return eval_expansion(e, z);
            };
            break;
    }
    std::ostringstream csv;
    csv << "z_re,z_im,N,abs_remainder,predicted_ratio\n" << std::setprecision(15);
    for (Complex z : probes) {
        const Complex fz = f.value(z);
        const double ratio = predicted_ratio(region, z);
        for (int N = 1; N <= c.N; ++N) {
            csv << z.real() << ',' << z.imag() << ',' << N << ',' << std::abs(fz - partial(N, z)) << ',';
            if (std::isinf(ratio)) {
                csv << "inf";
            } else {
                csv << ratio;
            }
            csv << '\n';
        }
    }
    emit(c, out, csv.str());
    return 0;
}

// ---------------------------------------------------------------------------

struct Report {
    std::ostringstream text;
    bool ok = true;

    void line(const std::string& name, double value, double limit) {
        const bool pass = value <= limit;
        ok = ok && pass;
        text << std::left << std::setw(44) << name << std::scientific << std::setprecision(3) << value
             << "  (limit " << limit << ")  " << (pass ? "PASS" : "FAIL") << '\n';
    }
    void skip(const std::string& name, const std::string& why) {
        text << std::left << std::setw(44) << name << "skipped: " << why << '\n';
    }
};

double scaled_gap(Complex x, Complex y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

void verify_taylor(const Problem& p, const RunConfig& c, Report& report) {
    const ComplexFunction& f = p.f();
    const auto orders = declared_pole_profile(f, p.points).orders;
    const bool focal_poles = std::any_of(orders.begin(), orders.end(), [](int r) { return r > 0; });
    const Contour contour = enclosing_contour(p.points, f.singularities());
    double cd = 0.0, cr = 0.0, dr = 0.0;
    const bool rational = p.parsed.rational().has_value() && !p.overridden;
    for (int n = 0; n < c.N; ++n) {
        for (std::size_t j = 0; j < p.points.size(); ++j) {
            for (int l = 0; l < p.points[j].multiplicity; ++l) {
                const Complex x = coeff_cauchy(f, p.points, n, j, l, contour, p.quad);
                const Complex y = coeff_derivative(f, p.points, n, j, l, orders);
                cd = std::max(cd, scaled_gap(x, y));
                if (rational) {
                    const Complex z = residue_coeffs_rational(p.parsed, p.points, n, j, l);
                    cr = std::max(cr, scaled_gap(x, z));
                    dr = std::max(dr, scaled_gap(y, z));
                }
            }
        }
    }
    report.line("a: cauchy vs derivative", cd, c.check_tol);
    if (rational) {
        report.line("a: cauchy vs residue", cr, c.check_tol);
        report.line("a: derivative vs residue", dr, c.check_tol);
    } else {
        report.skip("a: residue oracle", "f is not rational");
    }
    if (focal_poles) {
        report.skip("hermite interpolation", "f has a pole at a focus");
        return;
    }
    const auto e = expand_taylor(f, p.points, c.N, CoefficientMethod::Cauchy, p.quad);
    const auto h = hermite_interpolate(f, p.points, c.N);
    double gap = 0.0;
    const Complex center = p.points.centroid();
    const double half = 0.5 * p.points.scale();
    for (int i = 0; i < 10; ++i) {
        for (int k = 0; k < 5; ++k) {
            const Complex z = center + Complex(-half + 2.0 * half * i / 9.0, -half + 2.0 * half * k / 4.0);
            gap = std::max(gap, scaled_gap(eval_hermite(h, z), eval_expansion(e, z)));
        }
    }
    report.line("hermite vs partial sum (50 probes)", gap, 1e-9);
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream&) {
    const Problem p = load(c);
    const ComplexFunction& f = p.f();
    Report report;
    report.text << "function " << c.function << "  points " << c.foci << "  N " << c.N << "  mode " << c.mode
                << '\n';
    switch (p.mode) {
        case Mode::Taylor: verify_taylor(p, c, report); break;
        case Mode::Laurent: {
            const auto x = expand_laurent(f, p.points, c.N, CoefficientMethod::Cauchy, c.delta, p.quad);
            const auto y = expand_laurent(f, p.points, c.N, CoefficientMethod::Derivative, c.delta, p.quad);
            report.line("a: cauchy vs derivative", max_abs_diff(x.a, y.a) / std::max(1.0, y.a.max_abs()),
                        c.check_tol);
            report.line("b: cauchy vs derivative", max_abs_diff(x.b, y.b) / std::max(1.0, y.b.max_abs()),
                        c.check_tol);
            break;
        }
        case Mode::TaylorLaurent: {
            const auto q = static_cast<std::size_t>(c.split);
            const auto x = expand_taylor_laurent(f, p.points, q, c.N, CoefficientMethod::Cauchy, c.delta, p.quad);
            const auto y =
                expand_taylor_laurent(f, p.points, q, c.N, CoefficientMethod::Derivative, c.delta, p.quad);
            report.line("a: cauchy vs derivative", max_abs_diff(x.a, y.a) / std::max(1.0, y.a.max_abs()),
                        c.check_tol);
            report.line("b: cauchy vs derivative", max_abs_diff(x.b, y.b) / std::max(1.0, y.b.max_abs()),
                        c.check_tol);
            report.line("c: cauchy vs derivative", max_abs_diff(x.c, y.c) / std::max(1.0, y.c.max_abs()),
                        c.check_tol);
            break;
        }
    }
    report.text << (report.ok ? "verify: PASS" : "verify: FAIL") << '\n';
    emit(c, out, report.text.str());
    return report.ok ? 0 : 1;
}

void add_common(CLI::App* app, RunConfig& c) {
    app->add_option("--f", c.function, "function of z, e.g. \"exp(z)/(z-3)\"")->required();
    app->add_option("--points", c.foci, "foci as \"z:m,z:m,...\"")->required();
    app->add_option("--mode", c.mode, "taylor | laurent | taylor-laurent")->capture_default_str();
    app->add_option("--split", c.split, "number of regular foci (taylor-laurent)");
    app->add_option("--delta", c.delta, "excluded disk radius (default: 0.1 x nearest feature)");
    app->add_option("--singularity", c.singularities, "override declared singularities: loc:pole[:order]|loc:essential|loc:branch");
    app->add_option("--out", c.out, "output file (default stdout)");
}

void add_numeric(CLI::App* app, RunConfig& c) {
    app->add_option("--N", c.N, "number of blocks")->capture_default_str();
    app->add_option("--method", c.method, "cauchy | derivative | both")->capture_default_str();
    app->add_option("--tol", c.tol, "quadrature tolerance")->capture_default_str();
    app->add_option("--max-nodes", c.max_nodes, "quadrature node budget per circle")->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-point Taylor and Laurent expansions"};
    app.require_subcommand(1);
    RunConfig c;
    auto* expand = app.add_subcommand("expand", "coefficient tensors as JSON");
    add_common(expand, c);
    add_numeric(expand, c);
    auto* region = app.add_subcommand("region", "convergence-region boundary as CSV");
    add_common(region, c);
    region->add_option("--resolution", c.resolution, "grid cells per side")->capture_default_str();
    region->add_option("--clip", c.clip, "sampling box xmin ymin xmax ymax")->expected(4);
    region->add_option("--sidecar", c.sidecar, "JSON summary path (default <out>.json)");
    auto* converge = app.add_subcommand("converge", "remainder table at probe points as CSV");
    add_common(converge, c);
    add_numeric(converge, c);
    converge->add_option("--probe", c.probes, "probe point (repeatable)");
    auto* verify = app.add_subcommand("verify", "cross-check coefficient routes");
    add_common(verify, c);
    add_numeric(verify, c);
    verify->add_option("--check-tol", c.check_tol, "agreement tolerance")->capture_default_str();

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }
    try {
        if (expand->parsed()) return cmd_expand(c, out, err);
        if (region->parsed()) return cmd_region(c, out, err);
        if (converge->parsed()) return cmd_converge(c, out, err);
        return cmd_verify(c, out, err);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const GeometryError& e) {
        err << "geometry error: " << e.what() << '\n';
        return 3;
    } catch (const ConvergenceError& e) {
        err << "quadrature did not converge: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace lemniscate
