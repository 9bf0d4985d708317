#include "lemniscate/point_set.hpp"

#include <algorithm>
#include <charconv>
#include <cctype>
#include <cmath>

#include "lemniscate/expression.hpp"

namespace lemniscate {

namespace {

constexpr double kMerge = 1e-8;
constexpr double kWarn = 1e-4;

double max_pairwise(const std::vector<Focus>& foci) {
    double d = 0.0;
    for (std::size_t i = 0; i < foci.size(); ++i) {
        for (std::size_t j = i + 1; j < foci.size(); ++j) d = std::max(d, std::abs(foci[i].z - foci[j].z));
    }
    return d;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

PointSet::PointSet(std::vector<Focus> foci) {
    if (foci.empty()) throw DomainError("point set needs at least one focus");
    for (const auto& f : foci) {
        if (f.multiplicity < 1) throw DomainError("focus multiplicity must be a positive integer");
        if (!std::isfinite(f.z.real()) || !std::isfinite(f.z.imag())) throw DomainError("focus must be finite");
    }
    const double raw_scale = max_pairwise(foci);
    scale_ = raw_scale > 0.0 ? raw_scale : 1.0;
    for (const auto& f : foci) {
        auto same = std::find_if(foci_.begin(), foci_.end(),
                                 [&](const Focus& g) { return std::abs(g.z - f.z) < kMerge * scale_; });
        if (same != foci_.end()) {
            same->multiplicity += f.multiplicity;
        } else {
            foci_.push_back(f);
        }
    }
    for (std::size_t i = 0; i < foci_.size(); ++i) {
        for (std::size_t j = i + 1; j < foci_.size(); ++j) {
            if (std::abs(foci_[i].z - foci_[j].z) < kWarn * scale_) {
                warnings_.push_back("foci " + std::to_string(i) + " and " + std::to_string(j) +
                                    " are nearly coincident; coefficients may be ill-conditioned");
            }
        }
    }
    for (const auto& f : foci_) total_ += f.multiplicity;
}

Complex PointSet::product(Complex z) const { return product(z, 0, foci_.size()); }

Complex PointSet::product(Complex z, std::size_t first, std::size_t last) const {
    Complex out(1.0);
    for (std::size_t k = first; k < last; ++k) {
        const Complex d = z - foci_[k].z;
        for (int e = 0; e < foci_[k].multiplicity; ++e) out *= d;
    }
    return out;
}

std::size_t PointSet::find(Complex z) const {
    for (std::size_t k = 0; k < foci_.size(); ++k) {
        if (std::abs(foci_[k].z - z) < kMerge * scale_) return k;
    }
    return foci_.size();
}

Complex PointSet::centroid() const {
    Complex c(0.0);
    for (const auto& f : foci_) c += f.z;
    return c / static_cast<double>(foci_.size());
}

double PointSet::min_pairwise_distance() const {
    double d = INFINITY;
    for (std::size_t i = 0; i < foci_.size(); ++i) {
        for (std::size_t j = i + 1; j < foci_.size(); ++j) d = std::min(d, std::abs(foci_[i].z - foci_[j].z));
    }
    return d;
}

Complex parse_complex(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw ParseError("empty complex literal", 0);
    // allow the usual "2i" / "1-0.5i" shorthand for a number times i
    std::string expanded;
    for (std::size_t k = 0; k < text.size(); ++k) {
        const char c = text[k];
        if (c == 'i' && k > 0 && (std::isdigit(static_cast<unsigned char>(text[k - 1])) || text[k - 1] == '.')) {
            expanded += '*';
        }
        expanded += c;
    }
    const Expression e = parse_expression(expanded);
    if (e.depends_on_z()) throw ParseError("complex literal must not depend on z", 0);
    const Complex value = e.eval(0.0);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        throw ParseError("complex literal is not finite", 0);
    }
    return value;
}

PointSet parse_point_set(std::string_view text) {
    std::vector<Focus> foci;
    std::size_t offset = 0;
    while (offset <= text.size()) {
        const std::size_t comma = std::min(text.find(',', offset), text.size());
        const std::string_view item = text.substr(offset, comma - offset);
        const std::size_t colon = item.rfind(':');
        Focus f;
        try {
            f.z = parse_complex(item.substr(0, colon));
        } catch (const ParseError& e) {
            throw ParseError(std::string("bad focus '") + std::string(trim(item)) + "': " + e.what(), offset);
        }
        if (colon != std::string_view::npos) {
            const std::string_view m = trim(item.substr(colon + 1));
            auto [ptr, ec] = std::from_chars(m.data(), m.data() + m.size(), f.multiplicity);
            if (ec != std::errc() || ptr != m.data() + m.size() || f.multiplicity < 1) {
                throw ParseError("multiplicity must be a positive integer", offset + colon + 1);
            }
        }
        foci.push_back(f);
        offset = comma + 1;
    }
    try {
        return PointSet(std::move(foci));
    } catch (const DomainError& e) {
        throw ParseError(e.what(), 0);
    }
}

}  // namespace lemniscate
