#pragma once

// Seeded random inputs for the property suites. Only raw mt19937_64 output
// and modular reduction are used so sequences agree across standard libraries.

#include "swf/floer.hpp"
#include "swf/rmodule.hpp"
#include "swf/swfclass.hpp"

#include <cstdint>
#include <random>

namespace swf::gen {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform-ish integer in [lo, hi].
    int between(int lo, int hi);
    bool chance(int percent) { return between(0, 99) < percent; }

private:
    std::mt19937_64 engine_;
};

IdealTriple triple(Rng& rng, int max_entry);

/// A valid graded R-module of total dimension <= max_total, built as the
/// submodule of a free-plus-truncated module spanned by random generators.
/// Homological modules are duals of cohomological ones.
FiniteRModule module(Rng& rng, Grading grading, std::size_t max_total);

/// κ-data whose restriction kernel is exactly (v^i, q v^j, q^2 v^k), with
/// U-thresholds e0 (char 0) >= e2 (char 2).
struct KappaCase {
    KappaData data;
    IdealTriple expected;
    int e0 = 0;
    int e2 = 0;
};
KappaCase kappa_case(Rng& rng);

RepDesc rep(Rng& rng, int max_rtilde, int max_quat);

/// A class built from κ-data followed by random suspensions and dualities.
SwfClass swf_class(Rng& rng);

/// MoyData with explicit ranks drawn from the consistent range.
MoyData moy(Rng& rng);

} // namespace swf::gen
