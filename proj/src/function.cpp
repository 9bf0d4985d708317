#include "lemniscate/function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lemniscate {

namespace {

constexpr int kCutSamples = 32;

double point_tolerance(Complex z) { return 1e-14 * std::max(1.0, std::abs(z)); }

// Result of walking the tree: either an exact rational form, or a list of
// singularities collected by composition rules.
struct Analysis {
    std::optional<Rational> rational;
    std::vector<Singularity> singular;

    std::vector<Singularity> singularities() const {
        if (!rational) return singular;
        std::vector<Singularity> out;
        for (const auto& r : rational->poles()) out.push_back({r.location, SingularityKind::Pole, r.multiplicity, {}});
        return out;
    }
};

enum class Combine { Max, Sum };

void add_singularity(std::vector<Singularity>& list, const Singularity& s, Combine combine) {
    for (auto& existing : list) {
        if (!same_point(existing.location, s.location)) continue;
        if (existing.kind == SingularityKind::Pole && s.kind == SingularityKind::Pole) {
            existing.order = combine == Combine::Sum ? existing.order + s.order : std::max(existing.order, s.order);
        } else if (existing.kind == SingularityKind::Essential || s.kind == SingularityKind::Essential) {
            existing.kind = SingularityKind::Essential;
            existing.order = 0;
        } else {
            existing.kind = SingularityKind::BranchPoint;
            existing.order = 0;
        }
        return;
    }
    list.push_back(s);
}

std::vector<Singularity> merged(const std::vector<Singularity>& a, const std::vector<Singularity>& b, Combine combine) {
    std::vector<Singularity> out = a;
    for (const auto& s : b) add_singularity(out, s, combine);
    return out;
}

std::vector<Singularity> as_kind(const std::vector<Singularity>& list, SingularityKind from, SingularityKind to) {
    std::vector<Singularity> out;
    for (auto s : list) {
        if (s.kind == from) {
            s.kind = to;
            s.order = 0;
        }
        add_singularity(out, s, Combine::Max);
    }
    return out;
}

void add_branch_points(std::vector<Singularity>& list, const std::vector<Root>& roots) {
    for (const auto& r : roots) add_singularity(list, {r.location, SingularityKind::BranchPoint, 0, {}}, Combine::Max);
}

Analysis analyze(const Node& node) {
    switch (node.kind) {
        case NodeKind::Constant: return {Rational::constant(Complex(node.number)), {}};
        case NodeKind::ImaginaryUnit: return {Rational::constant(Complex(0.0, 1.0)), {}};
        case NodeKind::Pi: return {Rational::constant(Complex(std::numbers::pi)), {}};
        case NodeKind::Variable: return {Rational::identity(), {}};
        case NodeKind::Negate: {
            Analysis a = analyze(*node.lhs);
            if (a.rational) a.rational = -*a.rational;
            return a;
        }
        case NodeKind::Add:
        case NodeKind::Subtract: {
            const Analysis a = analyze(*node.lhs);
            const Analysis b = analyze(*node.rhs);
            if (a.rational && b.rational) {
                return {node.kind == NodeKind::Add ? *a.rational + *b.rational : *a.rational - *b.rational, {}};
            }
            return {std::nullopt, merged(a.singularities(), b.singularities(), Combine::Max)};
        }
        case NodeKind::Multiply: {
            const Analysis a = analyze(*node.lhs);
            const Analysis b = analyze(*node.rhs);
            if (a.rational && b.rational) return {*a.rational * *b.rational, {}};
            return {std::nullopt, merged(a.singularities(), b.singularities(), Combine::Sum)};
        }
        case NodeKind::Divide: {
            const Analysis a = analyze(*node.lhs);
            const Analysis b = analyze(*node.rhs);
            if (b.rational && b.rational->is_zero()) {
                throw ParseError("division by a denominator that is identically zero");
            }
            if (a.rational && b.rational) return {*a.rational / *b.rational, {}};
            std::vector<Singularity> out = a.singularities();
            for (const auto& s : b.singularities()) {
                if (s.kind != SingularityKind::Pole) add_singularity(out, s, Combine::Max);
            }
            if (b.rational) {
                for (const auto& r : b.rational->zeros()) {
                    add_singularity(out, {r.location, SingularityKind::Pole, r.multiplicity, {}}, Combine::Sum);
                }
            }
            return {std::nullopt, out};
        }
        case NodeKind::Power: {
            const Analysis base = analyze(*node.lhs);
            if (node.integer_exponent()) {
                const auto n = static_cast<long long>(node.exponent);
                if (base.rational) {
                    if (n < 0 && base.rational->is_zero()) {
                        throw ParseError("negative power of an expression that is identically zero");
                    }
                    return {base.rational->pow(n), {}};
                }
                std::vector<Singularity> out;
                for (auto s : base.singularities()) {
                    if (s.kind == SingularityKind::Pole) {
                        if (n <= 0) continue;
                        s.order *= static_cast<int>(n);
                    }
                    add_singularity(out, s, Combine::Max);
                }
                return {std::nullopt, out};
            }
            std::vector<Singularity> out = as_kind(base.singularities(), SingularityKind::Pole, SingularityKind::BranchPoint);
            if (base.rational) add_branch_points(out, base.rational->zeros());
            return {std::nullopt, out};
        }
        case NodeKind::Function: {
            const Analysis arg = analyze(*node.lhs);
            switch (node.function) {
                case FunctionKind::Exp:
                case FunctionKind::Sin:
                case FunctionKind::Cos:
                    return {std::nullopt, as_kind(arg.singularities(), SingularityKind::Pole, SingularityKind::Essential)};
                case FunctionKind::Log:
                case FunctionKind::Sqrt: {
                    std::vector<Singularity> out =
                        as_kind(arg.singularities(), SingularityKind::Pole, SingularityKind::BranchPoint);
                    if (arg.rational) add_branch_points(out, arg.rational->zeros());
                    return {std::nullopt, out};
                }
            }
        }
    }
    return {};
}

Series series_node(const Node& node, Complex center, int order) {
    switch (node.kind) {
        case NodeKind::Constant: return Series::constant(Complex(node.number), order);
        case NodeKind::ImaginaryUnit: return Series::constant(Complex(0.0, 1.0), order);
        case NodeKind::Pi: return Series::constant(Complex(std::numbers::pi), order);
        case NodeKind::Variable: return Series::variable(center, order);
        case NodeKind::Negate: return -series_node(*node.lhs, center, order);
        case NodeKind::Add: return series_node(*node.lhs, center, order) + series_node(*node.rhs, center, order);
        case NodeKind::Subtract: return series_node(*node.lhs, center, order) - series_node(*node.rhs, center, order);
        case NodeKind::Multiply: return series_node(*node.lhs, center, order) * series_node(*node.rhs, center, order);
        case NodeKind::Divide: return series_node(*node.lhs, center, order) / series_node(*node.rhs, center, order);
        case NodeKind::Power: {
            const Series base = series_node(*node.lhs, center, order);
            if (node.integer_exponent()) return base.pow(static_cast<long long>(node.exponent));
            return base.pow(node.exponent);
        }
        case NodeKind::Function: {
            const Series arg = series_node(*node.lhs, center, order);
            switch (node.function) {
                case FunctionKind::Exp: return exp(arg);
                case FunctionKind::Log: return log(arg);
                case FunctionKind::Sin: return sin(arg);
                case FunctionKind::Cos: return cos(arg);
                case FunctionKind::Sqrt: return sqrt(arg);
            }
        }
    }
    return {};
}

}  // namespace

std::string_view singularity_kind_name(SingularityKind kind) {
    switch (kind) {
        case SingularityKind::Pole: return "pole";
        case SingularityKind::Essential: return "essential";
        case SingularityKind::BranchPoint: return "branch";
    }
    return "?";
}

AnalyticFunction::AnalyticFunction(Expression expression) : expression_(std::move(expression)) {
    Analysis analysis = analyze(expression_.root());
    singularities_ = analysis.singularities();
    rational_ = std::move(analysis.rational);
}

AnalyticFunction::AnalyticFunction(Expression expression, std::vector<Singularity> singularities)
    : expression_(std::move(expression)), singularities_(std::move(singularities)) {
    Analysis analysis = analyze(expression_.root());
    rational_ = std::move(analysis.rational);
}

AnalyticFunction AnalyticFunction::with_singularities(std::vector<Singularity> singularities) const {
    AnalyticFunction out = *this;
    out.singularities_ = std::move(singularities);
    return out;
}

Complex AnalyticFunction::value(Complex z) const {
    for (const auto& s : singularities_) {
        if (std::abs(z - s.location) <= point_tolerance(s.location)) {
            throw DomainError("evaluation at a declared singularity");
        }
    }
    return expression_.eval(z);
}

Series AnalyticFunction::series(Complex center, int order) const {
    int working = order;
    for (int attempt = 0; attempt < 8; ++attempt) {
        Series s = series_node(expression_.root(), center, working);
        if (s.precision() > order) return s;
        working += order + 1 - s.precision();
    }
    throw DomainError("series precision could not be recovered at the requested order");
}

AnalyticFunction parse_function(std::string_view text) { return AnalyticFunction(parse_expression(text)); }

Complex eval(const ComplexFunction& f, Complex z) { return f.value(z); }

bool near_singularity(const ComplexFunction& f, Complex z, double tolerance) {
    for (const auto& s : f.singularities()) {
        if (std::abs(z - s.location) <= tolerance) return true;
    }
    return false;
}

Jet jet_eval(const ComplexFunction& f, Complex center, int order) {
    if (order < 0) throw DomainError("jet order must be nonnegative");
    if (near_singularity(f, center, point_tolerance(center))) {
        throw DomainError("jet requested at a declared singularity");
    }
    const Series s = f.series(center, order);
    if (s.valuation() < 0) throw DomainError("function is singular at the jet center");
    Jet jet{center, std::vector<Complex>(static_cast<std::size_t>(order + 1), Complex(0.0))};
    for (int n = 0; n <= order; ++n) jet.coeffs[static_cast<std::size_t>(n)] = s[n];
    return jet;
}

int declared_pole_order(const ComplexFunction& f, Complex z) {
    for (const auto& s : f.singularities()) {
        if (s.kind == SingularityKind::Pole && same_point(s.location, z)) return s.order;
    }
    return 0;
}

std::vector<Complex> singular_points(std::span<const Singularity> singularities) {
    std::vector<Complex> points;
    for (const auto& s : singularities) {
        points.push_back(s.location);
        Complex previous = s.location;
        for (const auto& vertex : s.cut) {
            for (int k = 1; k <= kCutSamples; ++k) {
                points.push_back(previous + (vertex - previous) * (static_cast<double>(k) / kCutSamples));
            }
            previous = vertex;
        }
    }
    return points;
}

}  // namespace lemniscate
