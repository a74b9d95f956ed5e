#pragma once

// The homological shadow of a space of type SWF: level, restriction-image
// ideal, Borel dimension table and the S^1 minima d_p.

#include "swf/f2core.hpp"
#include "swf/rmodule.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace swf {

enum class Field { char0 = 0, char2 = 2 };

inline constexpr std::array<Field, 2> kFields{Field::char0, Field::char2};

inline int characteristic(Field f) { return static_cast<int>(f); }

/// V = R~^rtilde ⊕ H^quat.
struct RepDesc {
    int rtilde = 0;
    int quat = 0;

    int dim() const noexcept { return rtilde + 4 * quat; }
    friend RepDesc operator+(RepDesc a, RepDesc b) { return {a.rtilde + b.rtilde, a.quat + b.quat}; }
    friend bool operator==(const RepDesc&, const RepDesc&) = default;
};

/// Graded dimensions: zero below `start`, explicit on the window, and the
/// pattern of R shifted to `origin` past the window. When `pattern_only` is
/// set the degrees below `start` are unknown rather than zero.
struct DimTable {
    int start = 0;
    std::vector<int> window;
    int origin = 0;
    bool pattern_only = false;

    int window_end() const noexcept { return start + static_cast<int>(window.size()); }
    std::optional<int> dim(int d) const;
    DimTable shifted(int by) const;
    friend bool operator==(const DimTable&, const DimTable&) = default;
};

struct SwfClass {
    int level = 0;
    IdealTriple ideal;
    DimTable borel;
    std::map<Field, int> s1_min;
    std::vector<std::string> provenance;

    AbcTriple abc() const { return abc_from_ideal(level, ideal); }

    /// Throws Error(internal) if a >= b >= c >= 0 or the mod-4 congruences fail.
    void validate() const;
};

/// Cohomology of Q = Z/G and the classifying-map data for the unreduced
/// suspension of a free G-space Z.
struct KappaData {
    std::map<int, int> qdims;                                  // dim H^d(Q; F2)
    std::map<Monomial, f2::BitVector> kappa;                   // κ*(q^a v^b) in H^{a+4b}(Q)
    std::map<int, std::vector<std::int64_t>> kappa_s1;         // image of U^e in H^{2e}(Q)
};

/// dim H^d(Q; F2) from a cellular chain complex of Q.
std::map<int, int> qdims_from_chain(const f2::ChainComplex& chains);

/// Fully 4-periodic graded dimensions, indexed by degree residue.
struct PeriodicGraded {
    std::array<int, 4> by_residue{};

    int dim(int d) const { return by_residue[static_cast<std::size_t>(mod(d, 4))]; }
    PeriodicGraded shifted(int by) const;
    friend bool operator==(const PeriodicGraded&, const PeriodicGraded&) = default;
};

struct Verdict {
    bool consistent = true;
    std::vector<std::string> violations;
};

SwfClass from_rep_sphere(int rtilde, int quat);

/// Throws Error(input) for malformed κ-data and Error(inconsistency) when
/// ker κ* is not an ideal, which cannot happen for an actual free G-space.
SwfClass from_unreduced_suspension(const KappaData& k);

SwfClass suspend(const SwfClass& x, const RepDesc& v);

/// Class of a V-dual. Only the eventual Borel pattern of the dual is known.
SwfClass dualize(const SwfClass& x, const RepDesc& v);

PeriodicGraded tate(const SwfClass& x);

/// Co-Borel dimensions from the Borel dimensions of a dual: d -> dual(m - d).
std::map<int, int> coborel_from_dual(const std::map<int, int>& dual_dims, int m);

/// Requires equal levels (Error(input) otherwise).
Verdict monotonicity_check(const SwfClass& x, const SwfClass& x2);

bool localization_check(const SwfClass& x);

int dp(const SwfClass& x, Field field);

} // namespace swf
