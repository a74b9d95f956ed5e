#include "swf/rmodule.hpp"

#include "swf/error.hpp"

#include <algorithm>
#include <array>

namespace swf {

using f2::BitMatrix;
using f2::BitVector;

std::optional<Monomial> Monomial::of_degree(int d)
{
    if (d < 0 || mod(d, 4) == 3) return std::nullopt;
    return Monomial{mod(d, 4), d / 4};
}

std::string to_string(const Monomial& m)
{
    std::string s;
    if (m.qpow == 0 && m.vpow == 0) return "1";
    if (m.qpow == 1) s += "q";
    if (m.qpow == 2) s += "q^2";
    if (m.vpow == 1) s += "v";
    if (m.vpow > 1) s += "v^" + std::to_string(m.vpow);
    return s;
}

void IdealTriple::validate() const
{
    if (!(i >= j && j >= k && k >= 0)) {
        throw Error(ErrorKind::invalid_triple, "ideal triple (" + std::to_string(i) + ", " + std::to_string(j) + ", " +
                                                   std::to_string(k) + ") violates i >= j >= k >= 0");
    }
}

// ---------------------------------------------------------------- ideals

GradedIdeal::GradedIdeal(int horizon, std::set<Monomial> members) : horizon_(horizon), members_(std::move(members))
{
    for (const auto& m : members_) {
        if (m.qpow < 0 || m.qpow > 2 || m.vpow < 0 || m.vpow > horizon_) {
            throw Error(ErrorKind::invalid_ideal, "monomial " + to_string(m) + " outside R or beyond the horizon");
        }
    }
}

bool GradedIdeal::contains(const Monomial& m) const { return m.vpow > horizon_ || members_.count(m) > 0; }

IdealTriple classify_ideal(const GradedIdeal& ideal)
{
    for (const auto& m : ideal.members()) {
        if (m.qpow < 2 && !ideal.contains({m.qpow + 1, m.vpow})) {
            throw Error(ErrorKind::invalid_ideal, "not closed under q: contains " + to_string(m) + " but not " +
                                                      to_string({m.qpow + 1, m.vpow}));
        }
        if (!ideal.contains({m.qpow, m.vpow + 1})) {
            throw Error(ErrorKind::invalid_ideal, "not closed under v: contains " + to_string(m) + " but not " +
                                                      to_string({m.qpow, m.vpow + 1}));
        }
    }
    std::array<int, 3> minima{};
    for (int row = 0; row < 3; ++row) {
        int best = -1;
        for (int b = 0; b <= ideal.horizon(); ++b) {
            if (ideal.contains({row, b})) {
                best = b;
                break;
            }
        }
        if (best < 0) {
            throw Error(ErrorKind::invalid_ideal,
                        "not v-saturated: no member q^" + std::to_string(row) + " v^b with b <= horizon");
        }
        minima[static_cast<std::size_t>(row)] = best;
    }
    IdealTriple t{minima[0], minima[1], minima[2]};
    t.validate(); // implied by q-closure
    return t;
}

GradedIdeal ideal_from_triple(const IdealTriple& t, std::optional<int> horizon)
{
    t.validate();
    const int h = horizon.value_or(t.i + 2);
    if (h < t.i) throw Error(ErrorKind::input, "ideal_from_triple: horizon below i");
    std::set<Monomial> members;
    for (int row = 0; row < 3; ++row) {
        for (int b = t[row]; b <= h; ++b) members.insert({row, b});
    }
    return GradedIdeal(h, std::move(members));
}

AbcTriple abc_from_ideal(int level, const IdealTriple& t)
{
    return {level + 4 * t.i, level + 4 * t.j, level + 4 * t.k};
}

// ---------------------------------------------------------------- modules

FiniteRModule::FiniteRModule(Grading grading, int lo, std::vector<std::size_t> dims, std::optional<int> tail_origin)
    : grading_(grading), lo_(lo), dims_(std::move(dims)), tail_origin_(tail_origin)
{
}

std::size_t FiniteRModule::total_dim() const noexcept
{
    std::size_t n = 0;
    for (auto d : dims_) n += d;
    return n;
}

std::size_t FiniteRModule::dim(int d) const { return in_window(d) ? dims_[static_cast<std::size_t>(d - lo_)] : 0; }

void FiniteRModule::check_shape(int d, int target, const BitMatrix& m, const char* what) const
{
    if (!in_window(d) || !in_window(target)) {
        throw Error(ErrorKind::invalid_module, std::string(what) + " map from degree " + std::to_string(d) +
                                                   " leaves the explicit window");
    }
    if (m.rows() != dim(target) || m.cols() != dim(d)) {
        throw Error(ErrorKind::invalid_module, std::string(what) + " map from degree " + std::to_string(d) +
                                                   " has shape " + std::to_string(m.rows()) + "x" +
                                                   std::to_string(m.cols()) + ", expected " +
                                                   std::to_string(dim(target)) + "x" + std::to_string(dim(d)));
    }
}

void FiniteRModule::set_q(int d, BitMatrix m)
{
    check_shape(d, d + step(1), m, "q");
    q_[d] = std::move(m);
}

void FiniteRModule::set_v(int d, BitMatrix m)
{
    check_shape(d, d + step(4), m, "v");
    v_[d] = std::move(m);
}

BitMatrix FiniteRModule::q_map(int d) const
{
    auto it = q_.find(d);
    return it == q_.end() ? BitMatrix(dim(d + step(1)), dim(d)) : it->second;
}

BitMatrix FiniteRModule::v_map(int d) const
{
    auto it = v_.find(d);
    return it == v_.end() ? BitMatrix(dim(d + step(4)), dim(d)) : it->second;
}

BitMatrix FiniteRModule::v_power(int d, int l) const
{
    BitMatrix acc = BitMatrix::identity(dim(d));
    int cur = d;
    for (int s = 0; s < l; ++s) {
        acc = v_map(cur) * acc;
        cur += step(4);
    }
    return acc;
}

FiniteRModule free_module(Grading grading, int origin, int hi)
{
    if (hi < origin + 3) throw Error(ErrorKind::input, "free_module: window shorter than one period");
    std::vector<std::size_t> dims;
    for (int d = origin; d <= hi; ++d) dims.push_back(static_cast<std::size_t>(pattern_dim(origin, d)));
    FiniteRModule m(grading, origin, std::move(dims), origin);
    for (int d = origin; d <= hi; ++d) {
        const int rel = d - origin;
        if (pattern_dim(origin, d) == 0) continue;
        if (grading == Grading::cohomological) {
            if (mod(rel, 4) < 2 && d + 1 <= hi) m.set_q(d, BitMatrix::identity(1));
            if (d + 4 <= hi) m.set_v(d, BitMatrix::identity(1));
        } else {
            if (mod(rel, 4) > 0) m.set_q(d, BitMatrix::identity(1));
            if (d - 4 >= origin) m.set_v(d, BitMatrix::identity(1));
        }
    }
    return m;
}

std::vector<AxiomDiagnostic> check_module_axioms(const FiniteRModule& m)
{
    std::vector<AxiomDiagnostic> out;
    const int s1 = m.step(1);
    const int s4 = m.step(4);
    for (int d = m.lo(); d <= m.hi(); ++d) {
        if (m.in_window(d + 3 * s1)) {
            const BitMatrix q3 = m.q_map(d + 2 * s1) * (m.q_map(d + s1) * m.q_map(d));
            if (!q3.is_zero()) out.push_back({d, "q^3 != 0 out of degree " + std::to_string(d)});
        }
        if (m.in_window(d + s1 + s4)) {
            const BitMatrix qv = m.q_map(d + s4) * m.v_map(d);
            const BitMatrix vq = m.v_map(d + s1) * m.q_map(d);
            if (!(qv == vq)) out.push_back({d, "qv != vq out of degree " + std::to_string(d)});
        }
    }
    if (auto t = m.tail_origin()) {
        if (m.hi() - m.lo() < 3) {
            out.push_back({m.hi(), "tail declared but window shorter than one period"});
        } else {
            for (int d = m.hi() - 3; d <= m.hi(); ++d) {
                if (m.dim(d) != static_cast<std::size_t>(pattern_dim(*t, d))) {
                    out.push_back({d, "top period does not match the R pattern at origin " + std::to_string(*t)});
                }
            }
        }
    }
    return out;
}

namespace {

void require_axioms(const FiniteRModule& m)
{
    const auto diags = check_module_axioms(m);
    if (!diags.empty()) {
        std::string msg = "module fails ring axioms:";
        for (const auto& dg : diags) msg += " [" + dg.message + "]";
        throw Error(ErrorKind::invalid_module, msg);
    }
}

int saturation_cap(const FiniteRModule& m) { return (m.hi() - m.lo() + 1) / 4 + 2; }

// Homological: basis (columns) of ∩_l im(v^l) in degree d.
BitMatrix saturate_homological(const FiniteRModule& m, int d, int& depth)
{
    BitMatrix cur = BitMatrix::identity(m.dim(d));
    for (int l = 1;; ++l) {
        if (l > saturation_cap(m)) throw Error(ErrorKind::internal, "v-image intersection did not stabilize");
        const int src = d + 4 * l;
        if (src > m.hi()) {
            // Past the window only the tail remains, and it maps isomorphically
            // onto the top period, whose image was already intersected.
            if (!m.tail_origin()) cur = BitMatrix(m.dim(d), 0);
            depth = std::max(depth, l);
            return cur;
        }
        const BitMatrix img = f2::image_basis(m.v_power(src, l));
        cur = f2::intersect_spans(cur, img);
        if (cur.cols() == 0) {
            depth = std::max(depth, l);
            return cur;
        }
    }
}

// Cohomological: basis (columns) of the stable kernel ∪_l ker(v^l) in degree d.
BitMatrix stable_torsion(const FiniteRModule& m, int d, int& depth)
{
    BitMatrix ker(m.dim(d), 0);
    for (int l = 1;; ++l) {
        if (l > saturation_cap(m)) throw Error(ErrorKind::internal, "v-torsion kernel did not stabilize");
        const int dst = d + 4 * l;
        if (dst > m.hi()) {
            if (!m.tail_origin()) ker = BitMatrix::identity(m.dim(d));
            depth = std::max(depth, l);
            return ker;
        }
        ker = f2::kernel_basis(m.v_power(d, l));
        if (ker.cols() == m.dim(d)) {
            depth = std::max(depth, l);
            return ker;
        }
    }
}

std::optional<IdealTriple> as_triple(const std::map<int, std::size_t>& dims, const FiniteRModule& m)
{
    const auto t = m.tail_origin();
    if (!t) return std::nullopt;
    std::array<std::optional<int>, 3> first{};
    for (const auto& [d, n] : dims) {
        if (n > 1) return std::nullopt;
        const int row = mod(d - *t, 4);
        if (row == 3) {
            if (n != 0) return std::nullopt;
            continue;
        }
        auto& f = first[static_cast<std::size_t>(row)];
        if (n == 1 && !f) f = d;
        if (n == 0 && f) return std::nullopt; // not v-periodic
    }
    std::array<int, 3> entry{};
    for (int row = 0; row < 3; ++row) {
        const auto& f = first[static_cast<std::size_t>(row)];
        if (!f || *f < *t + row) return std::nullopt;
        entry[static_cast<std::size_t>(row)] = (*f - *t - row) / 4;
    }
    IdealTriple triple{entry[0], entry[1], entry[2]};
    if (!(triple.i >= triple.j && triple.j >= triple.k)) return std::nullopt;
    return triple;
}

} // namespace

InfinityPart infinity_part(const FiniteRModule& m)
{
    require_axioms(m);
    InfinityPart out;
    for (int d = m.lo(); d <= m.hi(); ++d) {
        if (m.grading() == Grading::homological) {
            out.dims[d] = saturate_homological(m, d, out.iterations).cols();
        } else {
            out.dims[d] = m.dim(d) - stable_torsion(m, d, out.iterations).cols();
        }
    }
    out.triple = as_triple(out.dims, m);
    return out;
}

namespace {

// Coordinates modulo a subspace: reduce against the echelon form of the
// subspace and read off the non-pivot positions.
struct Quotient {
    f2::Echelon sub;                       // rows span the subspace
    std::vector<std::size_t> free_columns; // basis of the quotient

    explicit Quotient(const BitMatrix& basis_columns, std::size_t ambient)
    {
        sub = f2::row_reduce(basis_columns.transpose());
        std::vector<bool> pivot(ambient, false);
        for (auto p : sub.pivots) pivot[p] = true;
        for (std::size_t c = 0; c < ambient; ++c) {
            if (!pivot[c]) free_columns.push_back(c);
        }
    }

    BitVector coords(BitVector w) const
    {
        for (std::size_t r = 0; r < sub.pivots.size(); ++r) {
            if (w.get(sub.pivots[r])) w ^= sub.reduced.row(r);
        }
        BitVector out(free_columns.size());
        for (std::size_t i = 0; i < free_columns.size(); ++i) {
            if (w.get(free_columns[i])) out.set(i);
        }
        return out;
    }
};

} // namespace

FiniteRModule infinity_module(const FiniteRModule& m)
{
    require_axioms(m);
    int depth = 0;
    std::vector<std::size_t> dims;

    if (m.grading() == Grading::homological) {
        std::map<int, BitMatrix> basis;
        for (int d = m.lo(); d <= m.hi(); ++d) {
            basis[d] = saturate_homological(m, d, depth);
            dims.push_back(basis[d].cols());
        }
        FiniteRModule out(m.grading(), m.lo(), dims, m.tail_origin());
        auto restrict_map = [&](int d, const BitMatrix& map, int target, bool is_q) {
            if (!m.in_window(target)) return;
            std::vector<BitVector> cols;
            for (std::size_t c = 0; c < basis[d].cols(); ++c) {
                auto x = f2::solve(basis[target], map * basis[d].column(c));
                if (!x) throw Error(ErrorKind::internal, "saturated part is not a submodule");
                cols.push_back(*x);
            }
            BitMatrix r = BitMatrix::from_columns(basis[target].cols(), cols);
            if (is_q) {
                out.set_q(d, std::move(r));
            } else {
                out.set_v(d, std::move(r));
            }
        };
        for (int d = m.lo(); d <= m.hi(); ++d) {
            restrict_map(d, m.q_map(d), d + m.step(1), true);
            restrict_map(d, m.v_map(d), d + m.step(4), false);
        }
        return out;
    }

    std::map<int, Quotient> quot;
    for (int d = m.lo(); d <= m.hi(); ++d) {
        auto [it, _] = quot.emplace(d, Quotient(stable_torsion(m, d, depth), m.dim(d)));
        dims.push_back(it->second.free_columns.size());
    }
    FiniteRModule out(m.grading(), m.lo(), dims, m.tail_origin());
    auto induce = [&](int d, const BitMatrix& map, int target, bool is_q) {
        if (!m.in_window(target)) return;
        const Quotient& src = quot.at(d);
        const Quotient& dst = quot.at(target);
        std::vector<BitVector> cols;
        for (auto c : src.free_columns) {
            BitVector e(m.dim(d));
            e.set(c);
            cols.push_back(dst.coords(map * e));
        }
        BitMatrix r = BitMatrix::from_columns(dst.free_columns.size(), cols);
        if (is_q) {
            out.set_q(d, std::move(r));
        } else {
            out.set_v(d, std::move(r));
        }
    };
    for (int d = m.lo(); d <= m.hi(); ++d) {
        induce(d, m.q_map(d), d + m.step(1), true);
        induce(d, m.v_map(d), d + m.step(4), false);
    }
    return out;
}

} // namespace swf
