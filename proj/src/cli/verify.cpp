#include "swf/cli/verify.hpp"

#include "swf/cli/generators.hpp"
#include "swf/error.hpp"
#include "swf/floer.hpp"
#include "swf/oracle.hpp"

#include <functional>
#include <sstream>

namespace swf::verify {

namespace {

constexpr std::size_t kMaxSamples = 5;

class Tally {
public:
    Tally(std::string id, std::string name) { r_.id = std::move(id); r_.name = std::move(name); }

    void check(bool ok, const std::function<std::string()>& describe)
    {
        ++r_.cases;
        if (ok) return;
        ++r_.failures;
        if (r_.samples.size() < kMaxSamples) r_.samples.push_back(describe());
    }

    // Runs one case, turning an unexpected exception into a failure.
    void guard(const std::function<void()>& body, const std::string& label)
    {
        try {
            body();
        } catch (const std::exception& e) {
            check(false, [&] { return label + ": threw " + e.what(); });
        }
    }

    SuiteResult done() { return std::move(r_); }

private:
    SuiteResult r_;
};

gen::Rng rng_for(const Options& o, int suite)
{
    return gen::Rng(o.seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(suite));
}

std::string str(const IdealTriple& t)
{
    return "(" + std::to_string(t.i) + "," + std::to_string(t.j) + "," + std::to_string(t.k) + ")";
}

// Independent restatement of the class inequalities and congruences.
bool class_ok(const SwfClass& x)
{
    const int a = x.level + 4 * x.ideal.i;
    const int b = x.level + 4 * x.ideal.j;
    const int c = x.level + 4 * x.ideal.k;
    return a >= b && b >= c && c >= 0 && (a - x.level) % 4 == 0 && (b - x.level) % 4 == 0 &&
           (c - x.level) % 4 == 0 && x.level >= 0;
}

bool same_core(const SwfClass& x, const SwfClass& y)
{
    return x.level == y.level && x.ideal == y.ideal && x.s1_min == y.s1_min;
}

} // namespace

SuiteResult ideal_roundtrip(const Options& o)
{
    Tally t("i", "classify/ideal roundtrip");
    auto rng = rng_for(o, 1);
    for (int n = 0; n < o.iters; ++n) {
        const IdealTriple tr = gen::triple(rng, 8);
        const int horizon = tr.i + rng.between(0, 3);
        t.guard(
            [&] {
                const GradedIdeal ideal = ideal_from_triple(tr, horizon);
                bool members_ok = true;
                for (int row = 0; row < 3; ++row) {
                    for (int b = 0; b <= horizon + 2; ++b) {
                        members_ok = members_ok && ideal.contains({row, b}) == (b >= tr[row]);
                    }
                }
                const IdealTriple back = classify_ideal(ideal);
                const int level = rng.between(0, 7);
                const AbcTriple abc = abc_from_ideal(level, tr);
                const IdealTriple from_abc{(abc.a - level) / 4, (abc.b - level) / 4, (abc.c - level) / 4};
                t.check(members_ok && back == tr && from_abc == tr,
                        [&] { return "triple " + str(tr) + " came back as " + str(back); });
            },
            "triple " + str(tr));
    }
    return t.done();
}

SuiteResult infinity_oracle(const Options& o)
{
    Tally t("ii", "infinity part vs enumeration oracle");
    auto rng = rng_for(o, 2);
    for (int n = 0; n < o.iters; ++n) {
        const Grading g = n % 2 == 0 ? Grading::homological : Grading::cohomological;
        const FiniteRModule m = gen::module(rng, g, 20);
        t.guard(
            [&] {
                const auto fast = infinity_part(m).dims;
                const auto slow = oracle::infinity_dims(m);
                t.check(fast == slow, [&] {
                    std::ostringstream s;
                    s << "module #" << n << " (" << (g == Grading::homological ? "homological" : "cohomological")
                      << ", window " << m.lo() << ".." << m.hi() << "):";
                    for (const auto& [d, k] : slow) {
                        const auto it = fast.find(d);
                        if (it == fast.end() || it->second != k) {
                            s << " degree " << d << " fast " << (it == fast.end() ? 0 : it->second) << " oracle " << k;
                        }
                    }
                    return s.str();
                });
            },
            "module #" + std::to_string(n));
    }
    return t.done();
}

SuiteResult suspension_duality(const Options& o)
{
    Tally t("iii", "suspension additivity and duality involution");
    auto rng = rng_for(o, 3);
    for (int n = 0; n < o.iters; ++n) {
        t.guard(
            [&] {
                const auto kc = gen::kappa_case(rng);
                const SwfClass z = from_unreduced_suspension(kc.data);
                t.check(z.ideal == kc.expected && dp(z, Field::char0) == 2 * kc.e0 &&
                            dp(z, Field::char2) == 2 * kc.e2,
                        [&] { return "planted " + str(kc.expected) + " recovered " + str(z.ideal); });

                const SwfClass x = gen::swf_class(rng);
                const RepDesc v1 = gen::rep(rng, 4, 3);
                const RepDesc v2 = gen::rep(rng, 4, 3);
                const SwfClass lhs = suspend(suspend(x, v1), v2);
                const SwfClass rhs = suspend(x, v1 + v2);
                t.check(same_core(lhs, rhs) && lhs.borel == rhs.borel,
                        [&] { return "suspension not additive on " + str(x.ideal); });

                const RepDesc v{x.level + rng.between(0, 3), x.ideal.i + rng.between(0, 3)};
                const SwfClass back = dualize(dualize(x, v), v);
                t.check(same_core(back, x), [&] { return "double dual of " + str(x.ideal) + " is " + str(back.ideal); });

                const PeriodicGraded tx = tate(x);
                t.check(tate(suspend(x, {0, 1})) == tx && tate(suspend(x, {1, 0})) == tx.shifted(1),
                        [&] { return "Tate periodicity fails at level " + std::to_string(x.level); });
            },
            "case #" + std::to_string(n));
    }
    return t.done();
}

SuiteResult class_inequalities(const Options& o)
{
    Tally t("iv", "class inequalities and mod-4 congruences");
    auto rng = rng_for(o, 4);
    for (int n = 0; n < o.iters; ++n) {
        t.guard(
            [&] {
                SwfClass x = from_unreduced_suspension(gen::kappa_case(rng).data);
                t.check(class_ok(x), [&] { return "unreduced suspension " + str(x.ideal); });
                for (int s = 0; s < 4; ++s) {
                    if (rng.chance(50)) {
                        x = suspend(x, gen::rep(rng, 3, 2));
                    } else {
                        x = dualize(x, {x.level + rng.between(0, 2), x.ideal.i + rng.between(0, 2)});
                    }
                    t.check(class_ok(x), [&] { return "derived class " + str(x.ideal); });
                }
                const SwfClass r = from_rep_sphere(rng.between(0, 5), rng.between(0, 3));
                t.check(class_ok(r) && mod(dp(r, Field::char2) - r.level, 2) == 0,
                        [&] { return "rep sphere " + str(r.ideal); });
                const MoyResult m = assemble_moy(gen::moy(rng));
                t.check(class_ok(m.cls), [&] { return "assembled class " + str(m.cls.ideal); });
            },
            "case #" + std::to_string(n));
    }
    return t.done();
}

SuiteResult report_congruences(const Options& o)
{
    Tally t("v", "report congruences and reversal involution");
    const std::array<std::array<int, 4>, 4> expected{{{1, -1, -1, 0}, {2, 0, 0, 1}, {0, 0, 0, 0}, {1, 1, 1, 1}}};
    const std::array<int, 4> offset{-5, -1, 1, 5};
    for (int k = 1; k <= 10; ++k) {
        for (std::size_t f = 0; f < 4; ++f) {
            const int n = 12 * k + offset[f];
            t.guard(
                [&] {
                    const InvariantReport r = brieskorn(n);
                    const Verdict v = check_report(r);
                    t.check(v.consistent, [&] { return "n = " + std::to_string(n) + ": " + v.violations.front(); });
                    const InvariantReport rr = orientation_reverse(orientation_reverse(r));
                    t.check(rr.alpha == r.alpha && rr.beta == r.beta && rr.gamma == r.gamma && rr.delta == r.delta,
                            [&] { return "double reversal differs for n = " + std::to_string(n); });
                    t.check(check_report(orientation_reverse(r)).consistent,
                            [&] { return "reversed report inconsistent for n = " + std::to_string(n); });
                    const auto& e = expected[f];
                    t.check(r.alpha == Eighths::of_int(e[0]) && r.beta == Eighths::of_int(e[1]) &&
                                r.gamma == Eighths::of_int(e[2]) && r.delta.at(Field::char0) == Eighths::of_int(e[3]),
                            [&] { return "family values wrong for n = " + std::to_string(n); });
                },
                "n = " + std::to_string(n));
        }
    }
    // The normalization cancels suspension exactly.
    auto rng = rng_for(o, 5);
    for (int n = 0; n < o.iters; ++n) {
        t.guard(
            [&] {
                const SwfClass x = gen::swf_class(rng);
                const FloerContext ctx{x.level + 4 * rng.between(0, 3), Eighths{rng.between(-40, 40)}};
                const RepDesc v = gen::rep(rng, 3, 3);
                const InvariantReport r0 = invariants(x, ctx);
                const InvariantReport r1 = invariants(suspend(x, v), {ctx.dim_v0tau + v.dim(), ctx.n});
                t.check(r0.alpha == r1.alpha && r0.beta == r1.beta && r0.gamma == r1.gamma && r0.delta == r1.delta &&
                            (!r0.swfh_normalized || r0.swfh == r1.swfh),
                        [&] { return "suspension changed invariants of " + str(x.ideal); });
                t.check(check_report(r0).consistent, [&] { return "report of " + str(x.ideal) + " inconsistent"; });
            },
            "case #" + std::to_string(n));
    }
    return t.done();
}

SuiteResult moy_ledger(const Options& o)
{
    Tally t("vi", "assembly alternating-sum ledger");
    auto rng = rng_for(o, 6);
    for (int n = 0; n < o.iters; ++n) {
        const MoyData d = gen::moy(rng);
        t.guard(
            [&] {
                const MoyResult m = assemble_moy(d);
                long alt_in = 0;
                long alt_out = 0;
                bool rows_ok = true;
                int killed_balance = 0;
                for (const auto& row : m.ledger) {
                    const int sign = mod(row.degree, 2) == 0 ? 1 : -1;
                    alt_in += sign * (row.tail_in + row.irr_in);
                    alt_out += sign * row.out;
                    rows_ok = rows_ok && row.out == row.tail_in - row.tail_killed + row.irr_in - row.irr_killed &&
                              row.out == *m.swfh.dim(row.degree);
                    killed_balance += row.tail_killed - row.irr_killed;
                }
                t.check(rows_ok && killed_balance == 0 && alt_in == alt_out, [&] {
                    return "ledger mismatch for reducible " + std::to_string(d.reducible_degree);
                });

                long s1_in = 0;
                long s1_out = 0;
                for (const auto& [deg, dim] : m.s1_dims) {
                    const int sign = mod(deg, 2) == 0 ? 1 : -1;
                    int in = deg >= d.reducible_degree && mod(deg - d.reducible_degree, 2) == 0 ? 1 : 0;
                    for (const auto& b : d.irreducibles) {
                        if (b.degree == deg) in += 2 * b.pairs;
                    }
                    s1_in += sign * in;
                    s1_out += sign * dim;
                }
                t.check(s1_in == s1_out, [&] { return "S1 ledger mismatch"; });

                if (m.g_rank == 0 && m.s1_rank == 0) {
                    bool sum_ok = m.infinity_triple == IdealTriple{0, 0, 0};
                    for (const auto& row : m.ledger) sum_ok = sum_ok && row.out == row.tail_in + row.irr_in;
                    t.check(sum_ok, [&] { return "zero ranks are not a direct sum"; });
                }
            },
            "moy #" + std::to_string(n));
    }
    return t.done();
}

std::vector<SuiteResult> run_all(const Options& o)
{
    return {ideal_roundtrip(o), infinity_oracle(o), suspension_duality(o),
            class_inequalities(o), report_congruences(o), moy_ledger(o)};
}

} // namespace swf::verify
