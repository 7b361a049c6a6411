#pragma once

#include <optional>
#include <vector>

#include "detail/base_sets.hpp"

namespace fracalc::detail {

// Queries on a base set in its own coordinates.
bool tree_intersects(const BaseSet& B, Interval I);
std::optional<double> tree_first(const BaseSet& B, double c, bool strict);
std::optional<double> tree_last(const BaseSet& B, double c, bool strict);
std::optional<double> node_first(const BaseSet& B, const Node& n, double c, bool strict);
std::optional<double> node_last(const BaseSet& B, const Node& n, double c, bool strict);
std::vector<Interval> tree_gaps(const BaseSet& B, Interval I, double min_len);
void tree_net(const BaseSet& B, int level, Interval I, std::vector<double>& out);

}  // namespace fracalc::detail
