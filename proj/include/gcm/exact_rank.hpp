#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gcm {

/// Rank over the rationals of an integer matrix (row-major, all rows the
/// same length) by fraction-free Bareiss elimination. Runs in checked 64-bit
/// arithmetic and restarts with arbitrary-precision integers on overflow.
std::size_t exact_rank(const std::vector<std::vector<std::int64_t>>& rows);

}  // namespace gcm
