#pragma once

// Floer-theoretic correction terms read off an SwfClass, assembly of
// SWFH from critical-point data, and the Σ(2,3,n) presets.

#include "swf/swfclass.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace swf {

/// An exact rational with denominator 8.
struct Eighths {
    std::int64_t value = 0;

    static constexpr Eighths of_int(std::int64_t n) { return {8 * n}; }
    /// n/2, for the many invariants of the form (degree)/2.
    static constexpr Eighths of_half(std::int64_t n) { return {4 * n}; }

    /// Residue in [0, 16), i.e. the class modulo 2Z.
    int mod2z() const { return mod(static_cast<int>(value % 16), 16); }

    /// Reduced fraction with ASCII sign: "-1", "3/8", "1/2".
    std::string to_string() const;

    friend constexpr Eighths operator+(Eighths a, Eighths b) { return {a.value + b.value}; }
    friend constexpr Eighths operator-(Eighths a, Eighths b) { return {a.value - b.value}; }
    friend constexpr Eighths operator-(Eighths a) { return {-a.value}; }
    friend constexpr auto operator<=>(const Eighths&, const Eighths&) = default;
};

struct FloerContext {
    int dim_v0tau = 0;
    Eighths n;
};

struct InvariantReport {
    Eighths alpha;
    Eighths beta;
    Eighths gamma;
    std::map<Field, Eighths> delta;
    Eighths mu;
    /// SWFH dimensions in Floer grading; absent after orientation reversal.
    std::optional<DimTable> swfh;
    /// False when 2n is fractional and swfh is indexed by unshifted degrees.
    bool swfh_normalized = true;
    std::optional<int> lambda_reference;
    std::vector<std::string> provenance;
};

InvariantReport invariants(const SwfClass& x, const FloerContext& ctx);

enum class PresetFamily { minus5, minus1, plus1, plus5 };

/// "12k-5", "12k-1", "12k+1", "12k+5".
std::string to_string(PresetFamily f);
std::optional<PresetFamily> preset_from_string(const std::string& s);

struct IrreducibleBlock {
    int degree = 0;
    int pairs = 0;
};

/// Degrees are in the normalized Floer grading. A missing rank means "auto".
struct MoyData {
    int reducible_degree = 0;
    std::vector<IrreducibleBlock> irreducibles;
    std::optional<int> g_rank;
    std::optional<int> s1_rank;
    std::optional<PresetFamily> preset;
};

/// One row of the long exact sequence bookkeeping.
struct LedgerRow {
    int degree = 0;
    int tail_in = 0;
    int irr_in = 0;
    int tail_killed = 0;
    int irr_killed = 0;
    int out = 0;
};

struct MoyResult {
    SwfClass cls;
    FloerContext ctx;
    int g_rank = 0;
    int s1_rank = 0;
    DimTable swfh;                  // Pin(2) side, Floer grading
    std::map<int, int> s1_dims;     // S^1 side on the same window
    int s1_min = 0;                 // lowest surviving U-tail degree
    std::vector<LedgerRow> ledger;  // Pin(2) side over the explicit window
    IdealTriple infinity_triple;    // relative to the reducible
};

/// Throws Error(input) on inconsistent data and AmbiguityError when an
/// "auto" rank is not pinned.
MoyResult assemble_moy(const MoyData& d);

/// Casson invariant reference value for member k of a preset family.
int preset_lambda(PresetFamily f, int k);

/// The canonical MoyData for Σ(2,3,n) with n != 1; ranks left on "auto".
MoyData brieskorn_data(int n);

InvariantReport brieskorn(int n);

InvariantReport orientation_reverse(const InvariantReport& r);

struct CobordismData {
    int b2 = 0;
    bool spin = false;
    bool negative_definite = false;
};

/// consistent == false certifies no such cobordism exists.
Verdict cobordism_check(const InvariantReport& r0, const InvariantReport& r1, const CobordismData& c);

/// True when μ = 1, so Y # Y cannot be homology cobordant to S^3.
bool two_torsion_obstruction(const InvariantReport& r);

/// Ordering and mod-2Z congruences of a report.
Verdict check_report(const InvariantReport& r);

} // namespace swf
