#pragma once

// The coefficient ring R = F2[q, v]/(q^3) with |q| = 1, |v| = 4, its
// v-saturated graded ideals, and finite-window graded R-modules.

#include "swf/f2core.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace swf {

/// Mathematical modulus, always in [0, m).
constexpr int mod(int x, int m) { return ((x % m) + m) % m; }

struct Monomial {
    int qpow = 0; // 0, 1 or 2
    int vpow = 0;

    int degree() const noexcept { return qpow + 4 * vpow; }
    auto operator<=>(const Monomial&) const = default;

    /// The unique monomial of degree d, if any (none when d < 0 or d ≡ 3 mod 4).
    static std::optional<Monomial> of_degree(int d);
};

std::string to_string(const Monomial& m);

/// Dimension of R in degree d: 1 for residues 0, 1, 2 and d >= 0; else 0.
inline int ring_dim(int d) { return d >= 0 && mod(d, 4) != 3 ? 1 : 0; }

/// Dimension of R shifted so that 1 sits in degree `origin`.
inline int pattern_dim(int origin, int d) { return ring_dim(d - origin); }

struct IdealTriple {
    int i = 0;
    int j = 0;
    int k = 0;

    /// Throws Error(invalid_triple) unless i >= j >= k >= 0.
    void validate() const;
    int operator[](int row) const { return row == 0 ? i : row == 1 ? j : k; }
    friend bool operator==(const IdealTriple&, const IdealTriple&) = default;
};

struct AbcTriple {
    int a = 0;
    int b = 0;
    int c = 0;
    friend bool operator==(const AbcTriple&, const AbcTriple&) = default;
};

/// A graded ideal given by its members with vpow <= horizon. Every monomial
/// with vpow > horizon is implicitly a member.
class GradedIdeal {
public:
    GradedIdeal(int horizon, std::set<Monomial> members);

    int horizon() const noexcept { return horizon_; }
    const std::set<Monomial>& members() const noexcept { return members_; }
    bool contains(const Monomial& m) const;

private:
    int horizon_;
    std::set<Monomial> members_;
};

/// (i, j, k) = minimal vpow in each q-row. Throws Error(invalid_ideal) when the
/// set is not closed under q and v, or some q-row has no member.
IdealTriple classify_ideal(const GradedIdeal& ideal);

/// The ideal (v^i, q v^j, q^2 v^k), listed up to vpow = horizon (default i + 2).
GradedIdeal ideal_from_triple(const IdealTriple& t, std::optional<int> horizon = std::nullopt);

/// a = level + 4i, b = level + 4j, c = level + 4k.
AbcTriple abc_from_ideal(int level, const IdealTriple& t);

enum class Grading {
    cohomological, // q raises degree by 1, v by 4
    homological,   // q lowers degree by 1, v by 4
};

/// Graded R-module given on the explicit degree window [lo, hi].
///
/// q_map(d) is the action of q out of degree d and v_map(d) the action of v
/// out of degree d; they land in d ± 1 and d ± 4 according to the grading.
/// Maps whose target lies outside the window are not stored.
///
/// With a tail origin t, the module continues past the window as R shifted
/// to t: the top period [hi - 3, hi] must have the R pattern and v acts
/// isomorphically between it and the implicit degrees beyond.
class FiniteRModule {
public:
    FiniteRModule(Grading grading, int lo, std::vector<std::size_t> dims, std::optional<int> tail_origin = {});

    Grading grading() const noexcept { return grading_; }
    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return lo_ + static_cast<int>(dims_.size()) - 1; }
    std::optional<int> tail_origin() const noexcept { return tail_origin_; }
    std::size_t total_dim() const noexcept;

    std::size_t dim(int d) const;
    bool in_window(int d) const { return d >= lo_ && d <= hi(); }
    int step(int amount) const { return grading_ == Grading::cohomological ? amount : -amount; }

    f2::BitMatrix q_map(int d) const;
    f2::BitMatrix v_map(int d) const;
    void set_q(int d, f2::BitMatrix m);
    void set_v(int d, f2::BitMatrix m);

    /// v^l out of degree d (identity for l = 0). Zero once the target leaves
    /// the window unless the tail carries it.
    f2::BitMatrix v_power(int d, int l) const;

private:
    void check_shape(int d, int target, const f2::BitMatrix& m, const char* what) const;

    Grading grading_;
    int lo_;
    std::vector<std::size_t> dims_;
    std::optional<int> tail_origin_;
    std::map<int, f2::BitMatrix> q_;
    std::map<int, f2::BitMatrix> v_;
};

/// Free-module pattern R shifted to `origin`, explicit on [origin, hi], with tail.
FiniteRModule free_module(Grading grading, int origin, int hi);

struct AxiomDiagnostic {
    int degree;
    std::string message;
};

/// Every degree where q^3 != 0 or qv != vq, plus shape and tail-pattern problems.
std::vector<AxiomDiagnostic> check_module_axioms(const FiniteRModule& m);

struct InfinityPart {
    std::map<int, std::size_t> dims;    // on the explicit window
    std::optional<IdealTriple> triple; // relative to the tail origin, when ideal-shaped
    int iterations = 0;                // largest saturation depth used
};

/// Homological: ∩_l im(v^l). Cohomological: image in the v-localisation, i.e.
/// the quotient by the stable v-torsion. Throws Error(invalid_module) when
/// the axioms fail and Error(internal) if saturation does not stabilize.
InfinityPart infinity_part(const FiniteRModule& m);

/// The saturated module itself: the submodule ∩ im(v^l) (homological) or the
/// v-torsion-free quotient (cohomological), with the induced maps.
FiniteRModule infinity_module(const FiniteRModule& m);

} // namespace swf
