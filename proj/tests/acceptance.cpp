// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include "swf/cli/spec_io.hpp"
#include "swf/cli/verify.hpp"
#include "swf/floer.hpp"
#include "swf/swfclass.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace swf;
namespace fs = std::filesystem;

namespace {

// Wall-clock budgets.
constexpr double kFastBudget = 1.0;     // seconds, criteria 1, 2 and each brieskorn row
constexpr double kVerifyBudget = 60.0;  // seconds, criterion 7 at 500 iterations
constexpr int kVerifyIters = 500;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Check {
    bool ok = true;
    std::ostringstream why;

    void expect(bool cond, const std::string& msg)
    {
        if (!cond && ok) why << msg;
        ok = ok && cond;
    }
};

std::string data(const std::string& name)
{
    return std::string(SWF_DATA_DIR) + "/" + name;
}

cli::Evaluated eval_file(const std::string& name)
{
    std::ifstream in(data(name), std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return cli::evaluate(cli::parse_space(ss.str()).spec);
}

int ceil_half(int n) { return (n + 1) / 2; }

int family_n(PresetFamily f, int k)
{
    switch (f) {
        case PresetFamily::minus5: return 12 * k - 5;
        case PresetFamily::minus1: return 12 * k - 1;
        case PresetFamily::plus1: return 12 * k + 1;
        case PresetFamily::plus5: return 12 * k + 5;
    }
    return 0;
}

constexpr std::array<PresetFamily, 4> kFamilies{PresetFamily::minus5, PresetFamily::minus1, PresetFamily::plus1,
                                                PresetFamily::plus5};

bool same_invariants(const InvariantReport& a, const InvariantReport& b)
{
    return a.alpha == b.alpha && a.beta == b.beta && a.gamma == b.gamma && a.delta == b.delta && a.mu == b.mu &&
           a.lambda_reference == b.lambda_reference;
}

Check borel_of_g_tilde()
{
    Check c;
    const auto t0 = Clock::now();
    KappaData point;
    point.qdims = {{0, 1}};
    const std::array<int, 1> one{1};
    point.kappa[Monomial{0, 0}] = f2::BitVector::from_bits(one);
    point.kappa_s1[0] = {1};
    const SwfClass g = from_unreduced_suspension(point);
    for (int d = 0; d <= 20; ++d) {
        const int want = (d == 0 || d == 3) ? 0 : (d < 3 ? 1 : (d % 4 == 3 ? 0 : 1));
        c.expect(g.borel.dim(d) == want, "degree " + std::to_string(d));
    }
    c.expect(g.abc() == AbcTriple{4, 0, 0}, "abc");
    c.expect(eval_file("g-tilde.json").cls.borel == g.borel, "data file disagrees");
    c.expect(seconds_since(t0) < kFastBudget, "time");
    return c;
}

Check z_tilde()
{
    Check c;
    const auto t0 = Clock::now();
    for (int n = 1; n <= 6; ++n) {
        const SwfClass x = eval_file("z" + std::to_string(n) + ".json").cls;
        c.expect(x.abc() == AbcTriple{4 * ceil_half(n), 0, 0}, "abc n=" + std::to_string(n));
        for (Field f : kFields) c.expect(dp(x, f) == 2 * n, "d_p n=" + std::to_string(n));
    }
    c.expect(seconds_since(t0) < kFastBudget, "time");
    return c;
}

Check z_prime()
{
    Check c;
    for (int n = 1; n <= 6; ++n) {
        const SwfClass x = eval_file("zprime" + std::to_string(n) + ".json").cls;
        c.expect(x.abc() == AbcTriple{4 * n, 4 * n, 4 * n - 4 * ceil_half(n)}, "abc n=" + std::to_string(n));
        for (Field f : kFields) c.expect(dp(x, f) == 2 * n, "d_p n=" + std::to_string(n));
    }
    return c;
}

Check tate_of_s0()
{
    Check c;
    const SwfClass s0 = from_rep_sphere(0, 0);
    const PeriodicGraded t = tate(s0);
    for (int d = -20; d < 20; ++d) c.expect(t.dim(d) == (mod(d, 4) == 1 ? 0 : 1), "degree " + std::to_string(d));
    for (int p = 1; p <= 3; ++p) {
        const PeriodicGraded tp = tate(suspend(s0, RepDesc{0, p}));
        for (int d = -20; d < 20; ++d) c.expect(tp.dim(d) == t.dim(d), "H^" + std::to_string(p) + " suspension");
    }
    return c;
}

Check brieskorn_table()
{
    Check c;
    const std::array<std::array<int, 4>, 4> want{{{1, -1, -1, 0}, {2, 0, 0, 1}, {0, 0, 0, 0}, {1, 1, 1, 1}}};
    for (std::size_t fi = 0; fi < kFamilies.size(); ++fi) {
        for (int k = 1; k <= 5; ++k) {
            const int n = family_n(kFamilies[fi], k);
            const auto t0 = Clock::now();
            const InvariantReport r = brieskorn(n);
            const std::string tag = "n=" + std::to_string(n);
            const auto& w = want[fi];
            c.expect(r.alpha == Eighths::of_int(w[0]), tag + " alpha");
            c.expect(r.beta == Eighths::of_int(w[1]), tag + " beta");
            c.expect(r.gamma == Eighths::of_int(w[2]), tag + " gamma");
            for (Field f : kFields) c.expect(r.delta.at(f) == Eighths::of_int(w[3]), tag + " delta");
            const int lambda = std::array<int, 4>{-2 * k + 1, -2 * k, -2 * k, -2 * k - 1}[fi];
            c.expect(r.lambda_reference == lambda, tag + " lambda");
            c.expect(seconds_since(t0) < kFastBudget, tag + " time");
        }
    }
    return c;
}

Check swfh_window()
{
    Check c;
    const InvariantReport r = brieskorn(23);
    c.expect(r.swfh.has_value() && r.swfh_normalized, "no normalized SWFH");
    if (!r.swfh) return c;
    const std::array<int, 5> want{0, 2, 1, 0, 1};
    for (int d = 0; d < 5; ++d) c.expect(r.swfh->dim(d) == want[static_cast<std::size_t>(d)], "degree " + std::to_string(d));
    return c;
}

Check property_suite(double& elapsed)
{
    Check c;
    const auto t0 = Clock::now();
    const auto results = verify::run_all(verify::Options{kVerifyIters, 1});
    elapsed = seconds_since(t0);
    for (const auto& s : results) c.expect(s.passed() && s.cases >= kVerifyIters, "suite " + s.id + " " + s.name);
    c.expect(results.size() == 6, "suite count");
    c.expect(elapsed < kVerifyBudget, "time");
    return c;
}

Check orientation()
{
    Check c;
    const InvariantReport r = orientation_reverse(brieskorn(11));
    c.expect(r.alpha == Eighths::of_int(0) && r.beta == Eighths::of_int(0) && r.gamma == Eighths::of_int(-2),
             "Sigma(2,3,11) reversed");
    for (PresetFamily f : kFamilies)
        for (int k = 1; k <= 5; ++k) {
            const InvariantReport x = brieskorn(family_n(f, k));
            c.expect(same_invariants(orientation_reverse(orientation_reverse(x)), x),
                     "double reversal n=" + std::to_string(family_n(f, k)));
        }
    return c;
}

Check cobordism()
{
    Check c;
    const InvariantReport s3 = invariants(from_rep_sphere(0, 0), FloerContext{});
    const CobordismData spin0{0, true, false};
    const Verdict v = cobordism_check(s3, brieskorn(7), spin0);
    c.expect(!v.consistent, "S^3 vs Sigma(2,3,7) accepted");
    c.expect(std::any_of(v.violations.begin(), v.violations.end(),
                         [](const std::string& m) { return m.rfind("beta:", 0) == 0; }),
             "no violation at beta");
    for (PresetFamily f : kFamilies)
        for (int k = 1; k <= 5; ++k) {
            const InvariantReport x = brieskorn(family_n(f, k));
            c.expect(cobordism_check(x, x, spin0).consistent, "self n=" + std::to_string(family_n(f, k)));
        }
    return c;
}

std::string capture(const std::string& cmd, int& status)
{
    std::string out;
    FILE* p = ::popen(cmd.c_str(), "r");
    if (!p) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    status = ::pclose(p);
    return out;
}

Check determinism()
{
    Check c;
    std::random_device rd;
    const fs::path dir = fs::temp_directory_path() / ("swfcalc-accept-" + std::to_string(rd()));
    fs::create_directories(dir);

    std::vector<std::string> commands;
    for (const char* f : {"s0", "g-tilde", "z1", "z2", "z3", "z4", "z5", "z6", "zprime1", "zprime2", "zprime3",
                          "zprime4", "zprime5", "zprime6", "sigma-2-3-23"})
        commands.push_back("eval " + data(std::string(f) + ".json"));
    for (int n : {5, 7, 11, 13, 23}) commands.push_back("brieskorn 2 3 " + std::to_string(n));
    commands.push_back("table 2 3 --k-max 5");
    commands.push_back("dualize " + data("z2.json") + " --rtilde 0 --quat 2");
    commands.push_back("reverse " + data("sigma-2-3-11.json"));
    commands.push_back("check-cobordism " + data("s0.json") + " " + data("sigma-2-3-7.json") + " --b2 0 --spin");
    commands.push_back("verify --iters 50 --seed 11");

    const std::string bin = SWFCALC_BIN;
    for (const auto& cmd : commands)
        for (const char* fmt : {"md", "json", "csv"}) {
            const std::string base = "'" + bin + "' " + cmd + " --format " + fmt;
            const std::string cached = base + " --cache-dir '" + dir.string() + "' 2>/dev/null";
            int s1 = 0;
            int s2 = 0;
            int s3 = 0;
            const std::string cold = capture(cached, s1);
            const std::string warm = capture(cached, s2);
            const std::string bypass = capture(base + " --no-cache 2>/dev/null", s3);
            c.expect(s1 == 0 && s2 == 0 && s3 == 0, "nonzero exit: " + cmd);
            c.expect(!cold.empty() && cold == warm && cold == bypass, "output differs: " + cmd + " (" + fmt + ")");
        }
    std::error_code ec;
    fs::remove_all(dir, ec);
    return c;
}

} // namespace

int main()
{
    double verify_seconds = 0;
    const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
        {"Borel table of G~ and abc = (4,0,0)", borel_of_g_tilde},
        {"Z~_n classes and d_p, n = 1..6", z_tilde},
        {"Z~'_n via duality, n = 1..6", z_prime},
        {"Tate homology of S^0 and H-periodicity", tate_of_s0},
        {"Sigma(2,3,n) table, four families, k = 1..5", brieskorn_table},
        {"SWFH window of Sigma(2,3,23)", swfh_window},
        {"property suites at 500 iterations", [&] { return property_suite(verify_seconds); }},
        {"orientation reversal", orientation},
        {"cobordism validator", cobordism},
        {"byte-identical output, cold and warm cache", determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        try {
            c = criteria[i].second();
        } catch (const std::exception& e) {
            c.ok = false;
            c.why << "exception: " << e.what();
        }
        std::cout << (c.ok ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << criteria[i].first;
        if (i == 6) std::cout << " (" << verify_seconds << " s)";
        if (!c.ok) std::cout << ": " << c.why.str();
        std::cout << "\n";
        failed += c.ok ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
