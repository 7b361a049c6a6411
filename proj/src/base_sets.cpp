#include "detail/base_sets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "fracalc/error.hpp"

namespace fracalc::detail {

namespace {

std::array<double, 34> make_pow3() {
    std::array<double, 34> t{};
    double v = 1.0;
    for (auto& x : t) {
        x = v;
        v *= 3.0;
    }
    return t;
}

const std::array<double, 34> kPow3 = make_pow3();

}  // namespace

double pow3(int n) { return kPow3.at(static_cast<std::size_t>(n)); }

// ---- cantor

Node CantorSet::node(std::uint64_t k, int depth) {
    Node n;
    n.kind = NodeKind::piece;
    n.depth = depth;
    n.a = k;
    double d = kPow3[depth];
    n.lo = static_cast<double>(k) / d;
    n.hi = static_cast<double>(k + 1) / d;
    return n;
}

std::optional<Node> CantorSet::root() const { return node(0, 0); }

void CantorSet::children(const Node& n, std::vector<Node>& out) const {
    out.clear();
    if (n.depth >= kDepth) return;
    out.push_back(node(3 * n.a, n.depth + 1));
    out.push_back(node(3 * n.a + 2, n.depth + 1));
}

double CantorSet::resolution(int level) const { return std::pow(3.0, -level); }

// ---- gap ifs

GapIfsSet::GapIfsSet(std::vector<double> ratios, std::vector<double> offsets)
    : r_(std::move(ratios)), o_(std::move(offsets)) {
    const std::size_t m = r_.size();
    if (m < 2 || m > kMaxMaps)
        throw Error(Errc::invalid_spec, "gap_ifs needs between 2 and 10 maps");
    if (o_.size() != m) throw Error(Errc::invalid_spec, "gap_ifs ratios and offsets differ in length");
    for (std::size_t i = 0; i < m; ++i) {
        if (!(r_[i] > 0.0 && r_[i] < 1.0))
            throw Error(Errc::invalid_spec, "gap_ifs ratio outside (0,1)");
        if (!(o_[i] >= 0.0 && o_[i] + r_[i] <= 1.0))
            throw Error(Errc::invalid_spec, "gap_ifs copy leaves [0,1]");
        if (i > 0 && o_[i - 1] + r_[i - 1] > o_[i])
            throw Error(Errc::invalid_spec, "gap_ifs copies must be sorted and interior-disjoint");
        rmax_ = std::max(rmax_, r_[i]);
    }
    h0_ = o_.front() / (1.0 - r_.front());
    h1_ = o_.back() / (1.0 - r_.back());
}

std::optional<Node> GapIfsSet::root() const {
    Node n;
    n.kind = NodeKind::piece;
    n.lo = h0_;
    n.hi = h1_;
    return n;
}

void GapIfsSet::children(const Node& n, std::vector<Node>& out) const {
    out.clear();
    if (n.depth >= kDepth || n.length() < 1e-15) return;
    std::uint64_t digit = 1;
    for (std::size_t i = 0; i < r_.size(); ++i, digit <<= 6) {
        Node c;
        c.kind = NodeKind::piece;
        c.depth = n.depth + 1;
        c.t = n.t + n.s * o_[i];
        c.s = n.s * r_[i];
        c.lo = c.t + c.s * h0_;
        c.hi = c.t + c.s * h1_;
        // keep hulls nested under rounding
        c.lo = std::clamp(c.lo, n.lo, n.hi);
        c.hi = std::clamp(c.hi, c.lo, n.hi);
        c.b = n.b + digit;
        out.push_back(c);
    }
}

double GapIfsSet::resolution(int level) const { return (h1_ - h0_) * std::pow(rmax_, level); }

std::string GapIfsSet::describe() const {
    std::ostringstream os;
    os << "gap_ifs(ratios=[";
    for (std::size_t i = 0; i < r_.size(); ++i) os << (i ? "," : "") << r_[i];
    os << "], offsets=[";
    for (std::size_t i = 0; i < o_.size(); ++i) os << (i ? "," : "") << o_[i];
    os << "])";
    return os.str();
}

// ---- finite

FiniteSet::FiniteSet(std::vector<double> pts) : p_(std::move(pts)) {
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (!std::isfinite(p_[i])) throw Error(Errc::invalid_spec, "finite point is not a number");
        if (i > 0 && !(p_[i - 1] < p_[i]))
            throw Error(Errc::invalid_spec, "finite points must be strictly increasing");
    }
}

std::optional<Node> FiniteSet::root() const {
    if (p_.empty()) return std::nullopt;
    Node n;
    n.kind = NodeKind::block;
    n.lo = p_.front();
    n.hi = p_.back();
    n.a = 0;
    n.b = p_.size();
    return n;
}

std::string FiniteSet::describe() const {
    std::ostringstream os;
    os << "finite(" << p_.size() << " points)";
    return os.str();
}

// ---- harmonic

std::optional<Node> HarmonicSet::root() const {
    Node n;
    n.kind = NodeKind::tail;
    n.lo = 0.0;
    n.hi = 1.0;
    n.a = 1;
    return n;
}

void HarmonicSet::children(const Node& n, std::vector<Node>& out) const {
    out.clear();
    if (n.kind != NodeKind::tail || n.depth >= kDepth) return;
    const std::uint64_t m = n.a;
    Node t;
    t.kind = NodeKind::tail;
    t.depth = n.depth + 1;
    t.a = 2 * m;
    t.lo = 0.0;
    t.hi = 1.0 / static_cast<double>(2 * m);
    Node b;
    b.kind = NodeKind::block;
    b.depth = n.depth + 1;
    b.a = m;
    b.lo = 1.0 / static_cast<double>(2 * m - 1);
    b.hi = 1.0 / static_cast<double>(m);
    out.push_back(t);
    out.push_back(b);
}

// block(n) holds 1/m for n <= m < 2n, ascending
double HarmonicSet::block_point(const Node& n, std::size_t i) const {
    return 1.0 / static_cast<double>(2 * n.a - 1 - i);
}

double HarmonicSet::resolution(int level) const { return std::ldexp(1.0, -level); }

// ---- interval

IntervalSet::IntervalSet(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo <= hi))
        throw Error(Errc::invalid_spec, "interval needs finite lo <= hi");
}

std::optional<Node> IntervalSet::root() const {
    Node n;
    n.kind = NodeKind::solid;
    n.lo = lo_;
    n.hi = hi_;
    return n;
}

double IntervalSet::resolution(int level) const { return (hi_ - lo_) * std::ldexp(1.0, -level); }

std::string IntervalSet::describe() const {
    std::ostringstream os;
    os << "interval[" << lo_ << "," << hi_ << "]";
    return os.str();
}

}  // namespace fracalc::detail
