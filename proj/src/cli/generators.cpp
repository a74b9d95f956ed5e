#include "swf/cli/generators.hpp"

#include <algorithm>
#include <vector>

namespace swf::gen {

int Rng::between(int lo, int hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
}

IdealTriple triple(Rng& rng, int max_entry)
{
    const int i = rng.between(0, max_entry);
    const int j = rng.between(0, i);
    const int k = rng.between(0, j);
    return {i, j, k};
}

namespace {

// Basis element of the ambient module: summand index and monomial.
struct Cell {
    int summand;
    Monomial mono;
};

struct Ambient {
    int lo = 0;
    int hi = 0;
    std::vector<int> origin; // generator degree per summand
    std::vector<int> cap;    // last nonzero degree per summand (INT_MAX for free)
    std::map<int, std::vector<Cell>> cells;

    std::size_t dim(int d) const
    {
        auto it = cells.find(d);
        return it == cells.end() ? 0 : it->second.size();
    }

    int index(int d, const Cell& c) const
    {
        const auto& v = cells.at(d);
        for (std::size_t n = 0; n < v.size(); ++n) {
            if (v[n].summand == c.summand && v[n].mono == c.mono) return static_cast<int>(n);
        }
        return -1;
    }

    // Multiplication by q (dq = 1) or v (dq = 0) out of degree d.
    f2::BitVector act(int d, const f2::BitVector& x, bool by_q) const
    {
        const int target = d + (by_q ? 1 : 4);
        f2::BitVector y(dim(target));
        if (!cells.count(d)) return y;
        const auto& src = cells.at(d);
        for (std::size_t n = 0; n < src.size(); ++n) {
            if (!x.get(n)) continue;
            Monomial m = src[n].mono;
            if (by_q) {
                if (m.qpow == 2) continue;
                ++m.qpow;
            } else {
                ++m.vpow;
            }
            if (target > hi || target > cap[static_cast<std::size_t>(src[n].summand)]) continue;
            const int at = index(target, {src[n].summand, m});
            if (at >= 0) y.flip(static_cast<std::size_t>(at));
        }
        return y;
    }
};

Ambient make_ambient(int lo, int hi, const std::vector<int>& origin, const std::vector<int>& cap)
{
    Ambient a{lo, hi, origin, cap, {}};
    for (std::size_t s = 0; s < origin.size(); ++s) {
        for (int d = origin[s]; d <= std::min(hi, cap[s]); ++d) {
            if (auto m = Monomial::of_degree(d - origin[s])) a.cells[d].push_back({static_cast<int>(s), *m});
        }
    }
    return a;
}

f2::BitVector random_vector(Rng& rng, std::size_t n)
{
    f2::BitVector x(n);
    for (std::size_t b = 0; b < n; ++b) {
        if (rng.chance(50)) x.set(b);
    }
    return x;
}

FiniteRModule cohomological_module(Rng& rng)
{
    const bool with_tail = !rng.chance(20);
    const int t = rng.between(-3, 3);
    const int hi = t + rng.between(7, 11);
    std::vector<int> origin;
    std::vector<int> cap;
    if (with_tail) {
        origin.push_back(t);
        cap.push_back(hi);
    }
    const int torsion = rng.between(with_tail ? 0 : 1, 3);
    for (int s = 0; s < torsion; ++s) {
        const int g = rng.between(t, hi - 5);
        origin.push_back(g);
        cap.push_back(rng.between(g, hi - 4));
    }
    const Ambient amb = make_ambient(t, hi, origin, cap);

    // Generators: random homogeneous elements, plus one per q-row of the free
    // summand so the top period is the full tail pattern.
    std::map<int, std::vector<f2::BitVector>> gens;
    const int extra = rng.between(1, 5);
    for (int g = 0; g < extra; ++g) {
        const int d = rng.between(t, hi - 4);
        if (amb.dim(d) == 0) continue;
        gens[d].push_back(random_vector(rng, amb.dim(d)));
    }
    for (std::size_t s = with_tail ? 1 : 0; s < origin.size(); ++s) {
        if (rng.chance(25)) continue;
        const int d = origin[s];
        f2::BitVector x = random_vector(rng, amb.dim(d));
        x.set(static_cast<std::size_t>(amb.index(d, {static_cast<int>(s), Monomial{0, 0}})));
        gens[d].push_back(x);
    }
    if (with_tail) {
        for (int row = 0; row < 3; ++row) {
            const int d = t + row + 4 * rng.between(0, (hi - 4 - t - row) / 4);
            f2::BitVector x = random_vector(rng, amb.dim(d));
            const int at = amb.index(d, {0, *Monomial::of_degree(d - t)});
            x.set(static_cast<std::size_t>(at));
            gens[d].push_back(x);
        }
    }

    // Close under q and v degree by degree.
    std::map<int, f2::BitMatrix> basis;
    for (int d = t; d <= hi; ++d) {
        std::vector<f2::BitVector> span = gens[d];
        for (auto [from, by_q] : {std::pair{d - 1, true}, std::pair{d - 4, false}}) {
            auto it = basis.find(from);
            if (it == basis.end()) continue;
            for (std::size_t c = 0; c < it->second.cols(); ++c) span.push_back(amb.act(from, it->second.column(c), by_q));
        }
        basis[d] = f2::image_basis(f2::BitMatrix::from_columns(amb.dim(d), span));
    }

    std::vector<std::size_t> dims;
    for (int d = t; d <= hi; ++d) dims.push_back(basis[d].cols());
    std::optional<int> tail;
    if (with_tail) tail = t;
    FiniteRModule m(Grading::cohomological, t, dims, tail);
    for (int d = t; d <= hi; ++d) {
        for (auto [target, by_q] : {std::pair{d + 1, true}, std::pair{d + 4, false}}) {
            if (target > hi) continue;
            f2::BitMatrix map(basis[target].cols(), basis[d].cols());
            for (std::size_t c = 0; c < basis[d].cols(); ++c) {
                const auto image = amb.act(d, basis[d].column(c), by_q);
                const auto coords = f2::solve(basis[target], image);
                for (std::size_t r = 0; r < map.rows(); ++r) map.set(r, c, coords->get(r));
            }
            if (by_q) m.set_q(d, map);
            else m.set_v(d, map);
        }
    }
    return m;
}

FiniteRModule dual_of(const FiniteRModule& c)
{
    std::vector<std::size_t> dims;
    for (int d = c.lo(); d <= c.hi(); ++d) dims.push_back(c.dim(d));
    FiniteRModule h(Grading::homological, c.lo(), dims, c.tail_origin());
    for (int d = c.lo(); d <= c.hi(); ++d) {
        if (c.in_window(d + 1)) h.set_q(d + 1, c.q_map(d).transpose());
        if (c.in_window(d + 4)) h.set_v(d + 4, c.v_map(d).transpose());
    }
    return h;
}

} // namespace

FiniteRModule module(Rng& rng, Grading grading, std::size_t max_total)
{
    for (;;) {
        FiniteRModule m = cohomological_module(rng);
        if (m.total_dim() > max_total) continue;
        return grading == Grading::cohomological ? m : dual_of(m);
    }
}

KappaCase kappa_case(Rng& rng)
{
    KappaCase kc;
    IdealTriple t = triple(rng, 3);
    if (t.i == 0) t.i = 1;
    kc.expected = t;
    KappaData& k = kc.data;

    int top = 0;
    for (int row = 0; row < 3; ++row) {
        for (int b = 0; b < t[row]; ++b) top = std::max(top, row + 4 * b);
    }
    top += rng.between(0, 3);
    for (int d = 0; d <= top; ++d) k.qdims[d] = rng.between(0, 1);
    k.qdims[top] = std::max(k.qdims[top], 1);

    // Every monomial outside the ideal must map to something nonzero.
    for (int row = 0; row < 3; ++row) {
        for (int b = 0; b < t[row]; ++b) {
            const int d = row + 4 * b;
            k.qdims[d] = std::max(k.qdims[d], 1);
        }
    }
    for (int row = 0; row < 3; ++row) {
        for (int b = 0; b < t[row]; ++b) {
            const int d = row + 4 * b;
            f2::BitVector x = random_vector(rng, static_cast<std::size_t>(k.qdims[d]));
            if (!x.any()) x.set(0);
            k.kappa[{row, b}] = x;
        }
    }
    for (int row = 0; row < 3; ++row) {
        for (int b = t[row]; row + 4 * b <= top; ++b) {
            if (rng.chance(50)) k.kappa[{row, b}] = f2::BitVector(static_cast<std::size_t>(k.qdims[row + 4 * b]));
        }
    }

    // U-thresholds: odd entries below e2, even nonzero entries in [e2, e0).
    const int e_cap = top / 2 + 1;
    kc.e0 = rng.between(1, e_cap);
    kc.e2 = rng.between(1, kc.e0);
    for (int e = 0; e < kc.e0; ++e) k.qdims[2 * e] = std::max(k.qdims[2 * e], 1);
    for (int e = 0; 2 * e <= top; ++e) {
        const auto n = static_cast<std::size_t>(k.qdims[2 * e]);
        std::vector<std::int64_t> img(n, 0);
        if (e < kc.e2) {
            for (auto& x : img) x = rng.between(-3, 3);
            img[static_cast<std::size_t>(rng.between(0, static_cast<int>(n) - 1))] = 2 * rng.between(-2, 2) + 1;
        } else if (e < kc.e0) {
            for (auto& x : img) x = 2 * rng.between(-2, 2);
            img[static_cast<std::size_t>(rng.between(0, static_cast<int>(n) - 1))] = 2 * rng.between(1, 3);
        }
        if (n > 0 || rng.chance(50)) k.kappa_s1[e] = img;
    }
    // qdims bumps above may have changed lengths of earlier kappa entries.
    for (auto& [m, img] : k.kappa) {
        const auto n = static_cast<std::size_t>(k.qdims[m.degree()]);
        if (img.size() != n) {
            f2::BitVector grown(n);
            for (std::size_t b = 0; b < img.size(); ++b) grown.set(b, img.get(b));
            img = grown;
        }
    }
    return kc;
}

RepDesc rep(Rng& rng, int max_rtilde, int max_quat)
{
    return {rng.between(0, max_rtilde), rng.between(0, max_quat)};
}

SwfClass swf_class(Rng& rng)
{
    SwfClass x = rng.chance(25) ? from_rep_sphere(rng.between(0, 3), rng.between(0, 2))
                                : from_unreduced_suspension(kappa_case(rng).data);
    const int steps = rng.between(0, 3);
    for (int s = 0; s < steps; ++s) {
        if (rng.chance(50)) {
            x = suspend(x, rep(rng, 3, 2));
        } else {
            const RepDesc v{x.level + rng.between(0, 2), x.ideal.i + rng.between(0, 2)};
            x = dualize(x, v);
        }
    }
    return x;
}

MoyData moy(Rng& rng)
{
    MoyData d;
    d.reducible_degree = rng.between(-4, 4);
    const int blocks = rng.between(0, 3);
    std::set<int> used;
    for (int b = 0; b < blocks; ++b) {
        const int deg = rng.chance(50) ? d.reducible_degree + 1 : d.reducible_degree + rng.between(-5, 6);
        if (!used.insert(deg).second) continue;
        d.irreducibles.push_back({deg, rng.between(0, 3)});
    }
    int at = 0;
    for (const auto& b : d.irreducibles) {
        if (b.degree == d.reducible_degree + 1) at = b.pairs;
    }
    d.g_rank = rng.between(0, std::min(1, at));
    d.s1_rank = rng.between(0, std::min(1, 2 * at));
    return d;
}

} // namespace swf::gen
