#pragma once

// Brute-force reference computations used by tests and `swfcalc verify`.
// Only the public value types are shared with the main library; every
// algorithm here enumerates vectors or eliminates on plain byte arrays.

#include "swf/f2core.hpp"
#include "swf/rmodule.hpp"

#include <cstddef>
#include <map>

namespace swf::oracle {

/// Rank by Gaussian elimination over bytes.
std::size_t rank(const f2::BitMatrix& m);

/// dim H_d from independent ranks of the boundary maps.
std::map<int, std::size_t> homology_dims(const f2::ChainComplex& c);

/// Infinity-part dimensions by enumerating every vector in every degree.
/// Degrees above 20 dimensions are rejected with Error(input).
std::map<int, std::size_t> infinity_dims(const FiniteRModule& m);

} // namespace swf::oracle
