#include "swf/swfclass.hpp"

#include "swf/error.hpp"
#include "swf/rational_rank.hpp"

#include <algorithm>

namespace swf {

std::optional<int> DimTable::dim(int d) const
{
    if (d < start) return pattern_only ? std::nullopt : std::optional<int>(0);
    if (d < window_end()) return window[static_cast<std::size_t>(d - start)];
    return pattern_dim(origin, d);
}

DimTable DimTable::shifted(int by) const
{
    DimTable t = *this;
    t.start += by;
    t.origin += by;
    return t;
}

void SwfClass::validate() const
{
    const AbcTriple t = abc();
    if (!(t.a >= t.b && t.b >= t.c && t.c >= 0)) {
        throw Error(ErrorKind::internal, "class violates a >= b >= c >= 0");
    }
    if (mod(t.a - level, 4) != 0 || mod(t.b - level, 4) != 0 || mod(t.c - level, 4) != 0) {
        throw Error(ErrorKind::internal, "class violates a = b = c = level (mod 4)");
    }
    if (level < 0) throw Error(ErrorKind::internal, "negative level");
}

std::map<int, int> qdims_from_chain(const f2::ChainComplex& chains)
{
    std::map<int, int> out;
    for (const auto& [d, n] : f2::homology_dims(chains)) {
        if (n > 0) out[d] = static_cast<int>(n);
    }
    return out;
}

PeriodicGraded PeriodicGraded::shifted(int by) const
{
    PeriodicGraded p;
    for (int r = 0; r < 4; ++r) p.by_residue[static_cast<std::size_t>(mod(r + by, 4))] = by_residue[static_cast<std::size_t>(r)];
    return p;
}

SwfClass from_rep_sphere(int rtilde, int quat)
{
    if (rtilde < 0 || quat < 0) throw Error(ErrorKind::input, "representation multiplicities must be nonnegative");
    SwfClass x;
    x.level = rtilde;
    x.ideal = {quat, quat, quat};
    const int m = rtilde + 4 * quat;
    x.borel = DimTable{m, {}, rtilde, false};
    for (Field f : kFields) x.s1_min[f] = m;
    x.provenance.push_back("rep_sphere(rtilde=" + std::to_string(rtilde) + ", quat=" + std::to_string(quat) + ")");
    x.validate();
    return x;
}

namespace {

int qdim(const KappaData& k, int d)
{
    auto it = k.qdims.find(d);
    return it == k.qdims.end() ? 0 : it->second;
}

// Smallest e with kappa_s1(e) = 0 over the given field; U-multiples of a
// kernel element must stay in the kernel.
int s1_kernel_start(const KappaData& k, Field field, int top)
{
    auto nonzero = [&](int e) {
        auto it = k.kappa_s1.find(e);
        if (it == k.kappa_s1.end() || it->second.empty()) return false;
        IntMatrix col;
        for (auto x : it->second) col.push_back({x});
        const std::size_t r = field == Field::char2 ? mod2_rank(col) : rational_rank(col);
        return r > 0;
    };
    int first = -1;
    for (int e = 0; 2 * e <= std::max(top, 0); ++e) {
        if (!nonzero(e)) {
            first = e;
            break;
        }
    }
    if (first < 0) first = std::max(top, 0) / 2 + 1;
    for (const auto& [e, _] : k.kappa_s1) {
        if (e > first && nonzero(e)) {
            throw Error(ErrorKind::inconsistency,
                        "input does not come from a space: U^" + std::to_string(first) +
                            " maps to zero but U^" + std::to_string(e) + " does not (characteristic " +
                            std::to_string(characteristic(field)) + ")");
        }
    }
    return first;
}

} // namespace

SwfClass from_unreduced_suspension(const KappaData& k)
{
    int top = -1;
    for (const auto& [d, n] : k.qdims) {
        if (d < 0 || n < 0) throw Error(ErrorKind::input, "qdims must have nonnegative degrees and dimensions");
        if (n > 0) top = std::max(top, d);
    }
    for (const auto& [m, img] : k.kappa) {
        if (m.qpow < 0 || m.qpow > 2 || m.vpow < 0) throw Error(ErrorKind::input, "kappa key is not a monomial of R");
        if (static_cast<int>(img.size()) != qdim(k, m.degree())) {
            throw Error(ErrorKind::input, "kappa(" + to_string(m) + ") has length " + std::to_string(img.size()) +
                                              ", expected dim H^" + std::to_string(m.degree()) + "(Q) = " +
                                              std::to_string(qdim(k, m.degree())));
        }
    }
    for (const auto& [e, img] : k.kappa_s1) {
        if (e < 0) throw Error(ErrorKind::input, "kappa_s1 exponent must be nonnegative");
        if (static_cast<int>(img.size()) != qdim(k, 2 * e)) {
            throw Error(ErrorKind::input, "kappa_s1(" + std::to_string(e) + ") has length " +
                                              std::to_string(img.size()) + ", expected dim H^" +
                                              std::to_string(2 * e) + "(Q) = " + std::to_string(qdim(k, 2 * e)));
        }
    }

    const bool empty_q = top < 0;
    auto kappa_of = [&](const Monomial& m) {
        auto it = k.kappa.find(m);
        return it == k.kappa.end() ? f2::BitVector(static_cast<std::size_t>(qdim(k, m.degree()))) : it->second;
    };
    if (!empty_q) {
        if (qdim(k, 0) == 0) throw Error(ErrorKind::input, "nonempty Q must have dim H^0(Q) >= 1");
        if (!kappa_of({0, 0}).any()) throw Error(ErrorKind::input, "kappa(1) = 0 but Q is nonempty");
    }

    // κ* in each degree is a qdims(d) x dim R_d matrix (a single column or none).
    std::map<int, int> ker_dim;
    std::map<int, int> coker_dim;
    std::set<Monomial> kernel;
    const int horizon = std::max(top, 0) / 4 + 1;
    for (int d = 0; d <= top + 1; ++d) {
        const auto mono = Monomial::of_degree(d);
        std::size_t rk = 0;
        if (mono) {
            const f2::BitVector col = kappa_of(*mono);
            rk = f2::rank(f2::BitMatrix::from_columns(col.size(), std::span(&col, 1)));
        }
        ker_dim[d] = ring_dim(d) - static_cast<int>(rk);
        coker_dim[d] = qdim(k, d) - static_cast<int>(rk);
        if (mono && rk == 0 && mono->vpow <= horizon) kernel.insert(*mono);
    }
    for (int row = 0; row < 3; ++row) {
        for (int b = 0; b <= horizon; ++b) {
            if (row + 4 * b > top) kernel.insert({row, b});
        }
    }

    SwfClass x;
    x.level = 0;
    try {
        x.ideal = classify_ideal(GradedIdeal(horizon, kernel));
    } catch (const Error& e) {
        throw Error(ErrorKind::inconsistency, std::string("input does not come from a space: ker kappa* ") + e.what());
    }

    x.borel.start = 0;
    x.borel.origin = 0;
    for (int d = 0; d <= top + 1; ++d) {
        x.borel.window.push_back(ker_dim[d] + (d > 0 ? coker_dim[d - 1] : 0));
    }

    for (Field f : kFields) {
        if (empty_q) {
            x.s1_min[f] = 0;
            continue;
        }
        const int e0 = s1_kernel_start(k, f, top);
        if (e0 == 0) throw Error(ErrorKind::input, "kappa_s1(0) = 0 but Q is nonempty");
        x.s1_min[f] = 2 * e0;
    }

    x.provenance.push_back("unreduced_suspension(top degree of Q = " + std::to_string(top) + ")");
    x.validate();
    return x;
}

SwfClass suspend(const SwfClass& x, const RepDesc& v)
{
    if (v.rtilde < 0 || v.quat < 0) throw Error(ErrorKind::input, "representation multiplicities must be nonnegative");
    SwfClass y = x;
    const int m = v.dim();
    y.level += v.rtilde;
    y.ideal = {x.ideal.i + v.quat, x.ideal.j + v.quat, x.ideal.k + v.quat};
    y.borel = x.borel.shifted(m);
    for (auto& [f, d] : y.s1_min) d += m;
    if (m != 0) {
        y.provenance.push_back("suspend(rtilde=" + std::to_string(v.rtilde) + ", quat=" + std::to_string(v.quat) + ")");
    }
    for (const auto& [f, d] : y.s1_min) {
        if (mod(d - y.level, 2) != mod(x.s1_min.at(f) - x.level, 2)) {
            throw Error(ErrorKind::internal, "suspension changed the parity of d_p - level");
        }
    }
    y.validate();
    return y;
}

SwfClass dualize(const SwfClass& x, const RepDesc& v)
{
    const AbcTriple t = x.abc();
    const int m = v.dim();
    if (v.rtilde < 0 || v.quat < 0) throw Error(ErrorKind::input, "representation multiplicities must be nonnegative");
    if (x.level > v.rtilde) {
        throw Error(ErrorKind::duality_range, "level " + std::to_string(x.level) + " exceeds rtilde " +
                                                  std::to_string(v.rtilde) + "; the dual would have negative level");
    }
    if (t.a > m) {
        throw Error(ErrorKind::duality_range,
                    "a = " + std::to_string(t.a) + " exceeds dim V = " + std::to_string(m));
    }
    if (x.ideal.i > v.quat) {
        throw Error(ErrorKind::duality_range, "a - level = " + std::to_string(4 * x.ideal.i) +
                                                  " exceeds 4*quat = " + std::to_string(4 * v.quat));
    }

    SwfClass y;
    y.level = v.rtilde - x.level;
    y.ideal = {v.quat - x.ideal.k, v.quat - x.ideal.j, v.quat - x.ideal.i};
    const int a_dual = m - t.c;
    y.borel = DimTable{a_dual, {}, y.level, true};
    for (const auto& [f, d] : x.s1_min) y.s1_min[f] = m - d;
    y.provenance = x.provenance;
    y.provenance.push_back("dualize(rtilde=" + std::to_string(v.rtilde) + ", quat=" + std::to_string(v.quat) +
                           "); borel table pattern-only");
    for (const auto& [f, d] : y.s1_min) {
        const bool parity = mod(d - y.level, 2) == 0;
        y.provenance.push_back(std::string("d_") + std::to_string(characteristic(f)) + " = level mod 2: " +
                               (parity ? "yes" : "no"));
    }
    y.validate();
    return y;
}

PeriodicGraded tate(const SwfClass& x)
{
    PeriodicGraded p;
    for (int r = 0; r < 4; ++r) p.by_residue[static_cast<std::size_t>(r)] = 1;
    p.by_residue[static_cast<std::size_t>(mod(x.level + 1, 4))] = 0;
    return p;
}

std::map<int, int> coborel_from_dual(const std::map<int, int>& dual_dims, int m)
{
    std::map<int, int> out;
    for (const auto& [d, n] : dual_dims) out[m - d] = n;
    return out;
}

Verdict monotonicity_check(const SwfClass& x, const SwfClass& x2)
{
    if (x.level != x2.level) {
        throw Error(ErrorKind::input, "monotonicity requires equal levels (" + std::to_string(x.level) + " vs " +
                                          std::to_string(x2.level) + ")");
    }
    const AbcTriple s = x.abc();
    const AbcTriple t = x2.abc();
    Verdict v;
    auto check = [&](const char* name, int lhs, int rhs) {
        if (lhs > rhs) {
            v.consistent = false;
            v.violations.push_back(std::string(name) + ": " + std::to_string(lhs) + " > " + std::to_string(rhs));
        }
    };
    check("a", s.a, t.a);
    check("b", s.b, t.b);
    check("c", s.c, t.c);
    return v;
}

bool localization_check(const SwfClass& x)
{
    if (x.borel.pattern_only) return true;
    const int a = x.abc().a;
    for (int d = std::max(a, x.borel.start); d < x.borel.window_end(); ++d) {
        if (*x.borel.dim(d) != pattern_dim(x.level, d)) return false;
    }
    return pattern_dim(x.level, x.borel.window_end()) == pattern_dim(x.borel.origin, x.borel.window_end());
}

int dp(const SwfClass& x, Field field)
{
    auto it = x.s1_min.find(field);
    if (it == x.s1_min.end()) {
        throw Error(ErrorKind::unavailable,
                    "d_p not available for characteristic " + std::to_string(characteristic(field)));
    }
    return it->second;
}

} // namespace swf
