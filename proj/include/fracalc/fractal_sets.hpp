#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fracalc {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

// Breakpoints x_0 < x_1 < ... < x_n.
struct Subdivision {
    std::vector<double> points;

    double mesh() const;
    double a() const { return points.front(); }
    double b() const { return points.back(); }
    std::size_t components() const { return points.size() < 2 ? 0 : points.size() - 1; }

    static Subdivision uniform(double a, double b, std::size_t n);
    // Throws invalid_spec unless strictly increasing with at least one point.
    static Subdivision from(std::vector<double> pts);
    bool refines(const Subdivision& coarser) const;
};

enum class SetKind { cantor, gap_ifs, finite, harmonic, interval };

namespace detail {
class BaseSet;
}

// A fractal subset of the line: one of the base sets composed with x -> shift + scale * x.
class SetSpec {
public:
    static SetSpec cantor();
    static SetSpec gap_ifs(std::vector<double> ratios, std::vector<double> offsets);
    static SetSpec finite(std::vector<double> points);
    static SetSpec harmonic();
    static SetSpec interval(double lo, double hi);
    static SetSpec empty();

    SetSpec translated(double lambda) const;
    SetSpec scaled(double lambda) const;

    SetKind kind() const;
    double scale() const { return scale_; }
    double shift() const { return shift_; }
    bool is_identity_map() const { return scale_ == 1.0 && shift_ == 0.0; }
    const detail::BaseSet& base() const { return *base_; }
    bool is_empty() const;
    std::string describe() const;

    bool intersects(Interval I) const;
    bool contains(double x) const;
    std::vector<Interval> gaps(Interval I, double min_len) const;
    std::vector<double> net(int level, Interval I) const;
    double resolution(int level) const;
    int depth_limit() const;

    std::optional<double> first_at_or_after(double x, bool strict = false) const;
    std::optional<double> last_at_or_before(double x, bool strict = false) const;
    // Smallest closed interval containing F ∩ I.
    std::optional<Interval> extent(Interval I) const;
    std::optional<Interval> hull() const;

    double to_base(double x) const { return (x - shift_) / scale_; }
    double from_base(double u) const { return shift_ + scale_ * u; }

private:
    SetSpec(std::shared_ptr<const detail::BaseSet> b, double scale, double shift)
        : base_(std::move(b)), scale_(scale), shift_(shift) {}
    std::shared_ptr<const detail::BaseSet> base_;
    double scale_ = 1.0;
    double shift_ = 0.0;
};

inline bool intersects(const SetSpec& F, Interval I) { return F.intersects(I); }
inline std::vector<Interval> gaps(const SetSpec& F, Interval I, double min_len) {
    return F.gaps(I, min_len);
}
inline std::vector<double> net(const SetSpec& F, int level, Interval I) { return F.net(level, I); }

// Sum of r_i^s equal to one, solved for s. Cantor gives ln2/ln3.
double similarity_dimension(const std::vector<double>& ratios);

using StaircaseFn = std::function<double(double)>;

// S non-constant on every (x-h, x+h), h = 1, 1/3, 1/9, ... down to h_min.
bool is_point_of_change(const StaircaseFn& S, double x, double h_min);

}  // namespace fracalc
