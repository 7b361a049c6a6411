#include "fracalc/fractal_sets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "detail/base_sets.hpp"
#include "detail/tree.hpp"
#include "fracalc/config.hpp"
#include "fracalc/error.hpp"

namespace fracalc {

using detail::BaseSet;

double Subdivision::mesh() const {
    double m = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) m = std::max(m, points[i] - points[i - 1]);
    return m;
}

Subdivision Subdivision::uniform(double a, double b, std::size_t n) {
    if (!(a <= b)) throw Error(Errc::invalid_spec, "subdivision needs a <= b");
    Subdivision P;
    if (a == b || n == 0) {
        P.points = {a};
        if (a < b) P.points.push_back(b);
        return P;
    }
    P.points.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        P.points.push_back(i == n ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n));
    return P;
}

Subdivision Subdivision::from(std::vector<double> pts) {
    if (pts.empty()) throw Error(Errc::invalid_spec, "subdivision needs at least one point");
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (!(pts[i - 1] < pts[i])) throw Error(Errc::invalid_spec, "subdivision points must increase strictly");
    return Subdivision{std::move(pts)};
}

bool Subdivision::refines(const Subdivision& coarser) const {
    return std::includes(points.begin(), points.end(), coarser.points.begin(), coarser.points.end());
}

// ---- construction

SetSpec SetSpec::cantor() { return SetSpec(std::make_shared<detail::CantorSet>(), 1.0, 0.0); }

SetSpec SetSpec::gap_ifs(std::vector<double> ratios, std::vector<double> offsets) {
    return SetSpec(std::make_shared<detail::GapIfsSet>(std::move(ratios), std::move(offsets)), 1.0, 0.0);
}

SetSpec SetSpec::finite(std::vector<double> points) {
    return SetSpec(std::make_shared<detail::FiniteSet>(std::move(points)), 1.0, 0.0);
}

SetSpec SetSpec::harmonic() { return SetSpec(std::make_shared<detail::HarmonicSet>(), 1.0, 0.0); }

SetSpec SetSpec::interval(double lo, double hi) {
    return SetSpec(std::make_shared<detail::IntervalSet>(lo, hi), 1.0, 0.0);
}

SetSpec SetSpec::empty() { return finite({}); }

SetSpec SetSpec::translated(double lambda) const {
    if (!std::isfinite(lambda)) throw Error(Errc::invalid_spec, "translation must be finite");
    return SetSpec(base_, scale_, shift_ + lambda);
}

SetSpec SetSpec::scaled(double lambda) const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw Error(Errc::invalid_spec, "scale factor must be finite and >= 0");
    if (lambda == 0.0) return is_empty() ? empty() : finite({0.0});
    return SetSpec(base_, scale_ * lambda, shift_ * lambda);
}

SetKind SetSpec::kind() const { return base_->kind(); }

bool SetSpec::is_empty() const { return !base_->root().has_value(); }

std::string SetSpec::describe() const {
    std::ostringstream os;
    os.precision(17);
    if (is_identity_map()) return base_->describe();
    os << base_->describe() << " mapped by x -> " << shift_ << " + " << scale_ << " x";
    return os.str();
}

// ---- queries

namespace {

Interval base_interval(const SetSpec& F, Interval I) { return {F.to_base(I.lo), F.to_base(I.hi)}; }

}  // namespace

bool SetSpec::intersects(Interval I) const {
    if (I.lo > I.hi) return false;
    return detail::tree_intersects(*base_, base_interval(*this, I));
}

bool SetSpec::contains(double x) const {
    if (is_identity_map()) return detail::tree_intersects(*base_, {x, x});
    double u = to_base(x);
    double slack = 8.0 * std::numeric_limits<double>::epsilon() *
                   (std::abs(u) + std::abs(shift_ / scale_) + 1.0);
    return detail::tree_intersects(*base_, {u - slack, u + slack});
}

std::vector<Interval> SetSpec::gaps(Interval I, double min_len) const {
    if (I.lo > I.hi) return {};
    auto g = detail::tree_gaps(*base_, base_interval(*this, I), min_len / scale_);
    if (is_identity_map()) return g;
    for (auto& iv : g) {
        iv.lo = std::max(I.lo, from_base(iv.lo));
        iv.hi = std::min(I.hi, from_base(iv.hi));
    }
    return g;
}

std::vector<double> SetSpec::net(int level, Interval I) const {
    if (level < 0) throw Error(Errc::invalid_spec, "net level must be >= 0");
    if (level > max_level())
        throw Error(Errc::resolution_exceeded,
                    "net level " + std::to_string(level) + " above maximum " + std::to_string(max_level()));
    std::vector<double> out;
    if (I.lo > I.hi) return out;
    if (is_identity_map()) {
        detail::tree_net(*base_, level, I, out);
        return out;
    }
    Interval B = base_interval(*this, I);
    double pad = 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(B.lo) + std::abs(B.hi) + 1.0);
    detail::tree_net(*base_, level, {B.lo - pad, B.hi + pad}, out);
    std::vector<double> mapped;
    mapped.reserve(out.size());
    for (double u : out) {
        double x = from_base(u);
        if (I.contains(x)) mapped.push_back(x);
    }
    mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());
    return mapped;
}

double SetSpec::resolution(int level) const { return scale_ * base_->resolution(level); }

int SetSpec::depth_limit() const { return base_->depth_limit(); }

std::optional<double> SetSpec::first_at_or_after(double x, bool strict) const {
    auto r = detail::tree_first(*base_, to_base(x), strict);
    if (!r) return r;
    return std::max(from_base(*r), x);
}

std::optional<double> SetSpec::last_at_or_before(double x, bool strict) const {
    auto r = detail::tree_last(*base_, to_base(x), strict);
    if (!r) return r;
    return std::min(from_base(*r), x);
}

std::optional<Interval> SetSpec::extent(Interval I) const {
    if (I.lo > I.hi) return std::nullopt;
    auto f = first_at_or_after(I.lo);
    if (!f || *f > I.hi) return std::nullopt;
    auto l = last_at_or_before(I.hi);
    if (!l || *l < *f) return std::nullopt;
    return Interval{*f, *l};
}

std::optional<Interval> SetSpec::hull() const {
    auto r = base_->root();
    if (!r) return std::nullopt;
    return Interval{from_base(r->lo), from_base(r->hi)};
}

double similarity_dimension(const std::vector<double>& ratios) {
    auto excess = [&](double s) {
        double t = -1.0;
        for (double r : ratios) t += std::pow(r, s);
        return t;
    };
    double lo = 0.0, hi = 1.0;
    if (excess(hi) > 0.0) return 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        double mid = 0.5 * (lo + hi);
        (excess(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool is_point_of_change(const StaircaseFn& S, double x, double h_min) {
    if (!(h_min > 0.0)) throw Error(Errc::invalid_spec, "h_min must be positive");
    for (double h = 1.0; h >= h_min; h /= 3.0)
        if (!(S(x + h) > S(x - h))) return false;
    return true;
}

}  // namespace fracalc
