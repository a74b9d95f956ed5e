#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace swf {

using IntMatrix = std::vector<std::vector<std::int64_t>>;

/// Rank over the rationals by fraction-free (Bareiss) elimination.
/// Entries stay integral; throws Error(input) if an intermediate overflows.
std::size_t rational_rank(IntMatrix rows);

/// Rank over F_2 of the same integer matrix reduced mod 2.
std::size_t mod2_rank(const IntMatrix& rows);

} // namespace swf
