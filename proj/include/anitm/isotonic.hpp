#pragma once

#include <span>
#include <vector>

namespace anitm {

/// Weighted least-squares projection of `y` onto nonincreasing sequences
/// (pool-adjacent-violators). Empty `weights` means unit weights.
std::vector<double> isotonic_nonincreasing(std::span<const double> y, std::span<const double> weights = {});

}  // namespace anitm
