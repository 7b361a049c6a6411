#include "detail/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracalc::detail {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool overlaps(const Node& n, Interval I) { return !(n.hi < I.lo || n.lo > I.hi); }

// first index with point >= c (> c when strict)
std::size_t block_lower(const BaseSet& B, const Node& n, double c, bool strict) {
    std::size_t lo = 0, hi = B.block_size(n);
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        double p = B.block_point(n, mid);
        bool before = strict ? p <= c : p < c;
        if (before)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

bool hit(const BaseSet& B, const Node& n, Interval I) {
    if (!overlaps(n, I)) return false;
    if (I.contains(n.lo) || I.contains(n.hi)) return true;
    switch (n.kind) {
        case NodeKind::solid: return true;
        case NodeKind::block: {
            std::size_t i = block_lower(B, n, I.lo, false);
            return i < B.block_size(n) && B.block_point(n, i) <= I.hi;
        }
        default: break;
    }
    std::vector<Node> ch;
    B.children(n, ch);
    if (ch.empty()) return true;
    for (const auto& c : ch)
        if (hit(B, c, I)) return true;
    return false;
}

}  // namespace

bool tree_intersects(const BaseSet& B, Interval I) {
    auto r = B.root();
    return r && hit(B, *r, I);
}

std::optional<double> node_first(const BaseSet& B, const Node& n, double c, bool strict) {
    if (strict ? n.hi <= c : n.hi < c) return std::nullopt;
    if (strict ? n.lo > c : n.lo >= c) return n.lo;
    switch (n.kind) {
        case NodeKind::solid: return strict ? std::nextafter(c, kInf) : c;
        case NodeKind::block: return B.block_point(n, block_lower(B, n, c, strict));
        default: break;
    }
    std::vector<Node> ch;
    B.children(n, ch);
    for (const auto& k : ch)
        if (auto r = node_first(B, k, c, strict)) return r;
    return n.hi;
}

std::optional<double> node_last(const BaseSet& B, const Node& n, double c, bool strict) {
    if (strict ? n.lo >= c : n.lo > c) return std::nullopt;
    if (strict ? n.hi < c : n.hi <= c) return n.hi;
    switch (n.kind) {
        case NodeKind::solid: return strict ? std::nextafter(c, -kInf) : c;
        case NodeKind::block: {
            // last index with point <= c (< c when strict)
            std::size_t i = block_lower(B, n, c, !strict);
            return B.block_point(n, i - 1);
        }
        default: break;
    }
    std::vector<Node> ch;
    B.children(n, ch);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it)
        if (auto r = node_last(B, *it, c, strict)) return r;
    return n.lo;
}

std::optional<double> tree_first(const BaseSet& B, double c, bool strict) {
    auto r = B.root();
    if (!r) return std::nullopt;
    return node_first(B, *r, c, strict);
}

std::optional<double> tree_last(const BaseSet& B, double c, bool strict) {
    auto r = B.root();
    if (!r) return std::nullopt;
    return node_last(B, *r, c, strict);
}

namespace {

struct GapCollector {
    const BaseSet& B;
    Interval I;
    double prune;
    std::vector<Interval> atoms;

    void add(double lo, double hi) { atoms.push_back({std::max(lo, I.lo), std::min(hi, I.hi)}); }

    void block(const Node& n) {
        std::size_t i0 = block_lower(B, n, I.lo, false);
        std::size_t i1 = block_lower(B, n, I.hi, true);
        if (i0 >= i1) return;
        std::size_t j = i0;
        if (B.block_spacing_increasing()) {
            // crowded prefix merges into one atom
            std::size_t lo = i0, hi = i1 - 1;
            while (lo < hi) {
                std::size_t mid = lo + (hi - lo) / 2;
                if (B.block_point(n, mid + 1) - B.block_point(n, mid) >= prune)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            j = lo;
            add(B.block_point(n, i0), B.block_point(n, j));
        }
        for (; j < i1; ++j) {
            double p = B.block_point(n, j);
            add(p, p);
        }
    }

    void visit(const Node& n) {
        if (!overlaps(n, I)) return;
        if (n.kind == NodeKind::solid) {
            add(n.lo, n.hi);
            return;
        }
        if (n.kind == NodeKind::block) {
            block(n);
            return;
        }
        std::vector<Node> ch;
        if (n.length() >= prune) B.children(n, ch);
        if (ch.empty()) {
            if (n.lo >= I.lo && n.hi <= I.hi) {
                add(n.lo, n.hi);
            } else {
                auto f = node_first(B, n, I.lo, false);
                auto l = node_last(B, n, I.hi, false);
                if (f && l && *f <= *l && *f <= I.hi && *l >= I.lo) add(*f, *l);
            }
            return;
        }
        for (const auto& c : ch) visit(c);
    }
};

}  // namespace

std::vector<Interval> tree_gaps(const BaseSet& B, Interval I, double min_len) {
    std::vector<Interval> out;
    if (!(I.hi > I.lo)) return out;
    GapCollector gc{B, I, std::max(min_len, 1e-9 * I.length()), {}};
    if (auto r = B.root()) gc.visit(*r);
    double prev = I.lo;
    for (const auto& a : gc.atoms) {
        if (a.lo > prev) {
            Interval g{prev, a.lo};
            if (g.length() >= min_len) out.push_back(g);
        }
        prev = std::max(prev, a.hi);
    }
    if (prev < I.hi) {
        Interval g{prev, I.hi};
        if (g.length() >= min_len) out.push_back(g);
    }
    return out;
}

namespace {

void net_visit(const BaseSet& B, const Node& n, int level, Interval I, std::vector<double>& out) {
    if (!overlaps(n, I)) return;
    auto emit = [&](double x) {
        if (I.contains(x)) out.push_back(x);
    };
    switch (n.kind) {
        case NodeKind::block: {
            std::size_t i0 = block_lower(B, n, I.lo, false);
            std::size_t i1 = block_lower(B, n, I.hi, true);
            for (std::size_t i = i0; i < i1; ++i) out.push_back(B.block_point(n, i));
            return;
        }
        case NodeKind::solid: {
            double lo = std::max(n.lo, I.lo), hi = std::min(n.hi, I.hi);
            out.push_back(lo);
            out.push_back(hi);
            if (n.hi > n.lo) {
                double cells = std::ldexp(1.0, level);
                double step = n.length() / cells;
                double k0 = std::ceil((lo - n.lo) / step);
                double k1 = std::floor((hi - n.lo) / step);
                for (double k = k0; k <= k1; k += 1.0) emit(n.lo + k * step);
            }
            return;
        }
        default: break;
    }
    std::vector<Node> ch;
    if (n.depth < level) B.children(n, ch);
    if (ch.empty()) {
        emit(n.lo);
        emit(n.hi);
        return;
    }
    for (const auto& c : ch) net_visit(B, c, level, I, out);
}

}  // namespace

void tree_net(const BaseSet& B, int level, Interval I, std::vector<double>& out) {
    out.clear();
    if (auto r = B.root()) net_visit(B, *r, level, I, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

}  // namespace fracalc::detail
