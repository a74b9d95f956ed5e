#include "swf/floer.hpp"

#include "swf/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace swf {

std::string Eighths::to_string() const
{
    const std::int64_t g = std::gcd(value < 0 ? -value : value, std::int64_t{8});
    const std::int64_t num = value / (g == 0 ? 8 : g);
    const std::int64_t den = 8 / (g == 0 ? 8 : g);
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

InvariantReport invariants(const SwfClass& x, const FloerContext& ctx)
{
    if (ctx.dim_v0tau < 0) throw Error(ErrorKind::context, "dim_v0tau must be nonnegative");
    if (mod(ctx.dim_v0tau - x.level, 4) != 0) {
        throw Error(ErrorKind::context, "dim_v0tau = " + std::to_string(ctx.dim_v0tau) +
                                            " is not congruent to level " + std::to_string(x.level) + " mod 4");
    }
    const AbcTriple t = x.abc();
    const int dv = ctx.dim_v0tau;
    auto read = [&](int degree) { return Eighths::of_half(degree - dv) - ctx.n; };

    InvariantReport r;
    r.alpha = read(t.a);
    r.beta = read(t.b);
    r.gamma = read(t.c);
    for (const auto& [f, d] : x.s1_min) r.delta[f] = read(d);
    r.mu = Eighths{(-r.beta).mod2z()};
    r.provenance = x.provenance;
    if (ctx.n.value % 4 == 0) {
        r.swfh = x.borel.shifted(-dv - static_cast<int>(ctx.n.value / 4));
        r.swfh_normalized = true;
    } else {
        r.swfh = x.borel;
        r.swfh_normalized = false;
        r.provenance.push_back("2n = " + Eighths{2 * ctx.n.value}.to_string() +
                               " is fractional; SWFH indexed by unshifted Borel degrees");
    }
    return r;
}

std::string to_string(PresetFamily f)
{
    switch (f) {
    case PresetFamily::minus5: return "12k-5";
    case PresetFamily::minus1: return "12k-1";
    case PresetFamily::plus1: return "12k+1";
    case PresetFamily::plus5: return "12k+5";
    }
    return "?";
}

std::optional<PresetFamily> preset_from_string(const std::string& s)
{
    for (auto f : {PresetFamily::minus5, PresetFamily::minus1, PresetFamily::plus1, PresetFamily::plus5}) {
        if (to_string(f) == s) return f;
    }
    return std::nullopt;
}

namespace {

// Connecting-map ranks pinned by each family: nontrivial for 12k-5 and
// 12k-1, zero for grading reasons otherwise.
int pinned_rank(PresetFamily f)
{
    return f == PresetFamily::minus5 || f == PresetFamily::minus1 ? 1 : 0;
}

struct ResolvedRanks {
    int g = 0;
    int s1 = 0;
};

ResolvedRanks resolve_ranks(const MoyData& d, int g_max, int s1_max)
{
    auto check = [](const char* name, int r, int max) {
        if (r < 0 || r > max) {
            throw Error(ErrorKind::input, std::string(name) + " = " + std::to_string(r) +
                                              " is outside the consistent range 0.." + std::to_string(max));
        }
    };
    ResolvedRanks out;
    std::vector<int> g_opts;
    std::vector<int> s1_opts;
    if (d.g_rank) {
        check("g_rank", *d.g_rank, g_max);
        g_opts = {*d.g_rank};
    } else if (d.preset) {
        g_opts = {pinned_rank(*d.preset)};
        check("g_rank (preset)", g_opts[0], g_max);
    } else {
        for (int r = 0; r <= g_max; ++r) g_opts.push_back(r);
    }
    if (d.s1_rank) {
        check("s1_rank", *d.s1_rank, s1_max);
        s1_opts = {*d.s1_rank};
    } else if (d.preset) {
        s1_opts = {pinned_rank(*d.preset)};
        check("s1_rank (preset)", s1_opts[0], s1_max);
    } else {
        for (int r = 0; r <= s1_max; ++r) s1_opts.push_back(r);
    }
    if (g_opts.size() > 1 || s1_opts.size() > 1) {
        std::vector<std::string> alts;
        for (int g : g_opts) {
            for (int s : s1_opts) alts.push_back("g_rank=" + std::to_string(g) + ", s1_rank=" + std::to_string(s));
        }
        throw AmbiguityError("connecting ranks are not determined by the degree data", std::move(alts));
    }
    out.g = g_opts[0];
    out.s1 = s1_opts[0];
    return out;
}

} // namespace

MoyResult assemble_moy(const MoyData& d)
{
    const int r0 = d.reducible_degree;
    std::map<int, int> irr;
    for (const auto& b : d.irreducibles) {
        if (b.pairs < 0) throw Error(ErrorKind::input, "pair count must be nonnegative");
        if (irr.count(b.degree)) {
            throw Error(ErrorKind::input, "irreducible degree " + std::to_string(b.degree) + " listed twice");
        }
        irr[b.degree] = b.pairs;
    }
    auto irr_at = [&](int deg) {
        auto it = irr.find(deg);
        return it == irr.end() ? 0 : it->second;
    };

    // The connecting map can only reach the bottom tail class, which is
    // killed by q and v (resp. U).
    const int g_max = std::min(1, irr_at(r0 + 1));
    const int s1_max = std::min(1, 2 * irr_at(r0 + 1));
    const ResolvedRanks ranks = resolve_ranks(d, g_max, s1_max);

    int lo = r0;
    int top_irr = r0;
    for (const auto& [deg, n] : irr) {
        lo = std::min(lo, deg);
        top_irr = std::max(top_irr, deg);
    }
    const int hi = std::max(r0 + 3, top_irr + 4);

    auto tail_at = [&](int deg) {
        if (deg == r0 && ranks.g > 0) return 0;
        return pattern_dim(r0, deg);
    };

    std::vector<std::size_t> dims;
    std::vector<LedgerRow> ledger;
    for (int deg = lo; deg <= hi; ++deg) {
        LedgerRow row;
        row.degree = deg;
        row.tail_in = pattern_dim(r0, deg);
        row.irr_in = irr_at(deg);
        row.tail_killed = deg == r0 ? ranks.g : 0;
        row.irr_killed = deg == r0 + 1 ? ranks.g : 0;
        row.out = row.tail_in - row.tail_killed + row.irr_in - row.irr_killed;
        ledger.push_back(row);
        dims.push_back(static_cast<std::size_t>(row.out));
    }

    // Basis in each degree: the surviving tail class first, then irreducibles.
    FiniteRModule m(Grading::homological, lo, dims, r0);
    for (int deg = lo; deg <= hi; ++deg) {
        const int tq = deg - 1;
        if (m.in_window(tq)) {
            f2::BitMatrix q(m.dim(tq), m.dim(deg));
            if (tail_at(deg) && tail_at(tq) && mod(deg - r0, 4) != 0) q.set(0, 0);
            m.set_q(deg, q);
        }
        const int tv = deg - 4;
        if (m.in_window(tv)) {
            f2::BitMatrix v(m.dim(tv), m.dim(deg));
            if (tail_at(deg) && tail_at(tv)) v.set(0, 0);
            m.set_v(deg, v);
        }
    }
    const InfinityPart inf = infinity_part(m);
    if (!inf.triple) throw Error(ErrorKind::internal, "assembled infinity part is not ideal-shaped");

    MoyResult out;
    out.g_rank = ranks.g;
    out.s1_rank = ranks.s1;
    out.ledger = std::move(ledger);
    out.infinity_triple = *inf.triple;
    out.swfh = DimTable{lo, {}, r0, false};
    for (auto n : dims) out.swfh.window.push_back(static_cast<int>(n));

    for (int deg = lo; deg <= hi; ++deg) {
        int n = (deg >= r0 && mod(deg - r0, 2) == 0) ? 1 : 0;
        if (deg == r0) n -= ranks.s1;
        n += 2 * irr_at(deg);
        if (deg == r0 + 1) n -= ranks.s1;
        out.s1_dims[deg] = n;
    }
    out.s1_min = r0 + 2 * ranks.s1;

    // Normalized class: SWFH_d = Borel_{d + 4p - r0}, with n = -r0/2.
    const int p = std::max(0, (r0 - lo + 3) / 4);
    const int shift = 4 * p - r0;
    out.ctx = FloerContext{4 * p, Eighths{-4 * static_cast<std::int64_t>(r0)}};
    SwfClass& c = out.cls;
    c.level = 0;
    c.ideal = {inf.triple->i + p, inf.triple->j + p, inf.triple->k + p};
    c.borel = out.swfh.shifted(shift);
    for (Field f : kFields) c.s1_min[f] = out.s1_min + shift;
    std::string prov = "assemble_moy(reducible " + std::to_string(r0) + ", g_rank " + std::to_string(ranks.g) +
                       ", s1_rank " + std::to_string(ranks.s1);
    if (d.preset) prov += ", preset " + to_string(*d.preset);
    c.provenance.push_back(prov + ")");
    c.validate();
    return out;
}

int preset_lambda(PresetFamily f, int k)
{
    switch (f) {
    case PresetFamily::minus5: return -2 * k + 1;
    case PresetFamily::minus1: return -2 * k;
    case PresetFamily::plus1: return -2 * k;
    case PresetFamily::plus5: return -2 * k - 1;
    }
    return 0;
}

MoyData brieskorn_data(int n)
{
    if (n < 1 || std::gcd(n, 6) != 1) {
        throw Error(ErrorKind::input, "Brieskorn parameter n = " + std::to_string(n) + " must be positive and coprime to 6");
    }
    if (n == 1) throw Error(ErrorKind::input, "n = 1 is S^3, which has no critical-point presentation here");
    MoyData d;
    switch (n % 12) {
    case 7: // 12k - 5
        d = {-2, {{-1, (n + 5) / 12}}, std::nullopt, std::nullopt, PresetFamily::minus5};
        break;
    case 11: // 12k - 1
        d = {0, {{1, (n + 1) / 12}}, std::nullopt, std::nullopt, PresetFamily::minus1};
        break;
    case 1: // 12k + 1
        d = {0, {{-1, (n - 1) / 12}}, std::nullopt, std::nullopt, PresetFamily::plus1};
        break;
    default: // 12k + 5
        d = {2, {{1, (n - 5) / 12}}, std::nullopt, std::nullopt, PresetFamily::plus5};
        break;
    }
    return d;
}

InvariantReport brieskorn(int n)
{
    if (n == 1) {
        InvariantReport r = invariants(from_rep_sphere(0, 0), FloerContext{});
        r.lambda_reference = 0;
        r.provenance.push_back("brieskorn(2,3,1) = S^3");
        return r;
    }
    const MoyData d = brieskorn_data(n);
    const MoyResult m = assemble_moy(d);
    InvariantReport r = invariants(m.cls, m.ctx);
    const int k = d.irreducibles.front().pairs;
    r.lambda_reference = preset_lambda(*d.preset, k);
    r.provenance.push_back("brieskorn(2,3," + std::to_string(n) + "), family " + to_string(*d.preset) +
                           ", k = " + std::to_string(k));
    return r;
}

InvariantReport orientation_reverse(const InvariantReport& r)
{
    InvariantReport o;
    o.alpha = -r.gamma;
    o.beta = -r.beta;
    o.gamma = -r.alpha;
    for (const auto& [f, v] : r.delta) o.delta[f] = -v;
    o.mu = Eighths{(-o.beta).mod2z()};
    o.swfh = std::nullopt;
    o.swfh_normalized = false;
    if (r.lambda_reference) o.lambda_reference = -*r.lambda_reference;
    o.provenance = r.provenance;
    o.provenance.push_back("orientation reversed; SWFH unavailable");
    return o;
}

Verdict cobordism_check(const InvariantReport& r0, const InvariantReport& r1, const CobordismData& c)
{
    if (!c.spin) throw Error(ErrorKind::not_applicable, "cobordism constraints need a spin cobordism");
    if (c.b2 < 0) throw Error(ErrorKind::input, "b2 must be nonnegative");
    if (c.b2 > 0 && !c.negative_definite) {
        throw Error(ErrorKind::not_applicable, "b2 > 0 constraints need a negative-definite cobordism");
    }
    Verdict v;
    const Eighths slack{c.b2};
    auto check = [&](const char* name, Eighths x0, Eighths x1) {
        if (c.b2 == 0) {
            if (x0 != x1) {
                v.consistent = false;
                v.violations.push_back(std::string(name) + ": " + x1.to_string() + " != " + x0.to_string());
            }
        } else if (x1 < x0 + slack) {
            v.consistent = false;
            v.violations.push_back(std::string(name) + ": " + x1.to_string() + " < " + x0.to_string() + " + " +
                                   slack.to_string());
        }
    };
    check("alpha", r0.alpha, r1.alpha);
    check("beta", r0.beta, r1.beta);
    check("gamma", r0.gamma, r1.gamma);
    return v;
}

bool two_torsion_obstruction(const InvariantReport& r)
{
    return r.mu.value == 8;
}

Verdict check_report(const InvariantReport& r)
{
    Verdict v;
    auto fail = [&](std::string msg) {
        v.consistent = false;
        v.violations.push_back(std::move(msg));
    };
    if (r.alpha < r.beta) fail("alpha < beta");
    if (r.beta < r.gamma) fail("beta < gamma");
    if (r.alpha.mod2z() != r.beta.mod2z()) fail("alpha != beta mod 2Z");
    if (r.beta.mod2z() != r.gamma.mod2z()) fail("beta != gamma mod 2Z");
    if (r.mu.value != (-r.beta).mod2z()) fail("mu != -beta mod 2Z");
    if ((r.alpha + r.mu).mod2z() != 0) fail("alpha != -mu mod 2Z");
    return v;
}

} // namespace swf
