#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracalc/fractal_sets.hpp"

namespace fracalc::detail {

// piece: self-similar copy, hull endpoints belong to F
// tail:  harmonic cluster [0, 1/n]
// block: finite sorted run of points
// solid: every point of the hull belongs to F
enum class NodeKind { piece, tail, block, solid };

struct Node {
    NodeKind kind = NodeKind::piece;
    double lo = 0.0;
    double hi = 0.0;
    int depth = 0;
    std::uint64_t a = 0;  // cantor index, harmonic n, block start
    std::uint64_t b = 0;  // block count, gap-ifs memo key
    double t = 0.0;       // gap-ifs map x -> t + s x
    double s = 1.0;
    double length() const { return hi - lo; }
};

class BaseSet {
public:
    virtual ~BaseSet() = default;
    virtual SetKind kind() const = 0;
    virtual std::optional<Node> root() const = 0;
    // Ascending, non-overlapping. Empty for atoms (blocks, solids, capped pieces).
    virtual void children(const Node& n, std::vector<Node>& out) const = 0;
    virtual std::size_t block_size(const Node&) const { return 0; }
    virtual double block_point(const Node&, std::size_t) const { return 0.0; }
    // Spacing between consecutive block points grows with the index.
    virtual bool block_spacing_increasing() const { return false; }
    virtual double resolution(int level) const = 0;
    virtual int depth_limit() const = 0;
    // Nodes sharing a key are translates of each other (same subtree shape).
    virtual std::optional<std::uint64_t> memo_key(const Node&) const { return std::nullopt; }
    virtual std::string describe() const = 0;
};

class CantorSet final : public BaseSet {
public:
    static constexpr int kDepth = 33;
    SetKind kind() const override { return SetKind::cantor; }
    std::optional<Node> root() const override;
    void children(const Node& n, std::vector<Node>& out) const override;
    double resolution(int level) const override;
    int depth_limit() const override { return kDepth; }
    std::optional<std::uint64_t> memo_key(const Node& n) const override {
        return static_cast<std::uint64_t>(n.depth);
    }
    std::string describe() const override { return "cantor"; }
    static Node node(std::uint64_t k, int depth);
};

class GapIfsSet final : public BaseSet {
public:
    GapIfsSet(std::vector<double> ratios, std::vector<double> offsets);
    SetKind kind() const override { return SetKind::gap_ifs; }
    std::optional<Node> root() const override;
    void children(const Node& n, std::vector<Node>& out) const override;
    double resolution(int level) const override;
    int depth_limit() const override { return kDepth; }
    std::optional<std::uint64_t> memo_key(const Node& n) const override { return n.b; }
    std::string describe() const override;
    const std::vector<double>& ratios() const { return r_; }
    const std::vector<double>& offsets() const { return o_; }

    static constexpr int kDepth = 60;
    static constexpr std::size_t kMaxMaps = 10;

private:
    std::vector<double> r_, o_;
    double h0_ = 0.0, h1_ = 1.0;
    double rmax_ = 0.0;
};

class FiniteSet final : public BaseSet {
public:
    explicit FiniteSet(std::vector<double> pts);
    SetKind kind() const override { return SetKind::finite; }
    std::optional<Node> root() const override;
    void children(const Node&, std::vector<Node>&) const override {}
    std::size_t block_size(const Node& n) const override { return n.b; }
    double block_point(const Node& n, std::size_t i) const override { return p_[n.a + i]; }
    double resolution(int) const override { return 0.0; }
    int depth_limit() const override { return 0; }
    std::string describe() const override;
    const std::vector<double>& points() const { return p_; }

private:
    std::vector<double> p_;
};

class HarmonicSet final : public BaseSet {
public:
    static constexpr int kDepth = 60;
    SetKind kind() const override { return SetKind::harmonic; }
    std::optional<Node> root() const override;
    void children(const Node& n, std::vector<Node>& out) const override;
    std::size_t block_size(const Node& n) const override { return n.a; }
    double block_point(const Node& n, std::size_t i) const override;
    bool block_spacing_increasing() const override { return true; }
    double resolution(int level) const override;
    int depth_limit() const override { return kDepth; }
    std::string describe() const override { return "harmonic"; }
};

class IntervalSet final : public BaseSet {
public:
    IntervalSet(double lo, double hi);
    SetKind kind() const override { return SetKind::interval; }
    std::optional<Node> root() const override;
    void children(const Node&, std::vector<Node>&) const override {}
    double resolution(int level) const override;
    int depth_limit() const override { return 0; }
    std::string describe() const override;
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_, hi_;
};

// Exact 3^n for n <= 33.
double pow3(int n);

}  // namespace fracalc::detail
