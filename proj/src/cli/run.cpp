#include "swf/cli/run.hpp"

#include "swf/cli/cache.hpp"
#include "swf/cli/render.hpp"
#include "swf/cli/spec_io.hpp"
#include "swf/cli/verify.hpp"
#include "swf/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <regex>
#include <sstream>

namespace swf::cli {

const char* tool_version()
{
    return SWFCALC_VERSION;
}

namespace {

struct DegreeWindow {
    int lo = 0;
    int hi = 0;
};

struct Options {
    std::string format = "md";
    std::string degrees;
    std::string cache_dir;
    bool no_cache = false;
};

std::optional<DegreeWindow> parse_degrees(const std::string& s)
{
    if (s.empty()) return std::nullopt;
    static const std::regex re(R"(^(-?\d{1,6})\.\.(-?\d{1,6})$)");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw Error(ErrorKind::input, "--degrees expects LO..HI, got \"" + s + "\"");
    DegreeWindow w{std::stoi(m[1]), std::stoi(m[2])};
    if (w.lo > w.hi) throw Error(ErrorKind::input, "--degrees: LO must not exceed HI");
    if (w.hi - w.lo > 2000) throw Error(ErrorKind::input, "--degrees: window wider than 2000 degrees");
    return w;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::input, "cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Result new_result(const std::string& command)
{
    Result r;
    r["command"] = command;
    r["summary"] = Result::object();
    r["tables"] = Result::array();
    r["notes"] = Result::array();
    return r;
}

Result dim_cell(std::optional<int> d)
{
    return d ? Result(*d) : Result(nullptr);
}

void add_table(Result& r, const std::string& name, const std::string& title, std::vector<std::string> columns,
               Result rows)
{
    Result t;
    t["name"] = name;
    t["title"] = title;
    t["columns"] = columns;
    t["rows"] = std::move(rows);
    r["tables"].push_back(std::move(t));
}

void add_degree_table(Result& r, const std::string& name, const std::string& title, DegreeWindow w,
                      const std::function<std::optional<int>(int)>& dim)
{
    Result rows = Result::array();
    for (int d = w.lo; d <= w.hi; ++d) rows.push_back(Result::array({d, dim_cell(dim(d))}));
    add_table(r, name, title, {"degree", "dim"}, std::move(rows));
}

DegreeWindow around(int a, const std::optional<DegreeWindow>& forced)
{
    return forced ? *forced : DegreeWindow{a - 12, a + 8};
}

void class_summary(Result& s, const SwfClass& x)
{
    const AbcTriple t = x.abc();
    s["level"] = x.level;
    s["i"] = x.ideal.i;
    s["j"] = x.ideal.j;
    s["k"] = x.ideal.k;
    s["a"] = t.a;
    s["b"] = t.b;
    s["c"] = t.c;
    s["d_0"] = dp(x, Field::char0);
    s["d_2"] = dp(x, Field::char2);
    s["borel_pattern_only"] = x.borel.pattern_only;
    s["localization_ok"] = localization_check(x);
}

void report_summary(Result& s, const InvariantReport& r)
{
    s["alpha"] = eighths_json(r.alpha);
    s["beta"] = eighths_json(r.beta);
    s["gamma"] = eighths_json(r.gamma);
    s["delta0"] = eighths_json(r.delta.at(Field::char0));
    s["delta2"] = eighths_json(r.delta.at(Field::char2));
    s["mu"] = eighths_json(r.mu);
    s["lambda"] = r.lambda_reference ? Result(*r.lambda_reference) : Result(nullptr);
    s["congruences_ok"] = check_report(r).consistent;
    s["two_torsion_obstruction"] = two_torsion_obstruction(r);
}

void add_notes(Result& r, const std::vector<std::string>& notes)
{
    for (const auto& n : notes) r["notes"].push_back(n);
}

void add_swfh(Result& res, const InvariantReport& rep, const std::optional<DegreeWindow>& forced)
{
    if (!rep.swfh) return;
    int a_floer = rep.swfh->start;
    if (rep.swfh_normalized) {
        // a in Floer grading is 2 alpha.
        a_floer = static_cast<int>(rep.alpha.value / 4);
    }
    const DimTable t = *rep.swfh;
    add_degree_table(res, "swfh", rep.swfh_normalized ? "SWFH (Pin(2)), Floer grading" : "SWFH (Pin(2)), Borel grading",
                     around(a_floer, forced), [&](int d) { return t.dim(d); });
}

// eval, and dualize by wrapping the input.
Result eval_result(const std::string& command, const ParsedSpace& p, const std::optional<DegreeWindow>& forced)
{
    const Evaluated e = evaluate(p.spec);
    InvariantReport rep = invariants(e.cls, e.ctx);
    rep.lambda_reference = e.lambda_reference;

    Result r = new_result(command);
    Result& s = r["summary"];
    s["construct"] = to_string(p.spec.kind);
    class_summary(s, e.cls);
    s["dim_v0tau"] = e.ctx.dim_v0tau;
    s["n"] = eighths_json(e.ctx.n);
    report_summary(s, rep);
    if (e.moy) {
        s["g_rank"] = e.moy->g_rank;
        s["s1_rank"] = e.moy->s1_rank;
    }

    const DegreeWindow w = around(e.cls.abc().a, forced);
    add_degree_table(r, "borel", "Borel homology", w, [&](int d) { return e.cls.borel.dim(d); });
    const PeriodicGraded tt = tate(e.cls);
    add_degree_table(r, "tate", "Tate homology", w, [&](int d) { return std::optional<int>(tt.dim(d)); });
    if (p.spec.kind == SpaceSpec::Kind::dualize) {
        // co-Borel of the dual is the Borel homology of the original, reflected.
        const Evaluated inner = evaluate(*p.spec.of);
        const int m = p.spec.rep.dim();
        add_degree_table(r, "coborel", "co-Borel homology", w, [&](int d) { return inner.cls.borel.dim(m - d); });
    }
    add_swfh(r, rep, forced);
    if (e.moy) {
        const DegreeWindow fw = around(static_cast<int>(rep.alpha.value / 4), forced);
        add_degree_table(r, "s1", "SWFH (S^1), Floer grading", fw, [&](int d) -> std::optional<int> {
            auto it = e.moy->s1_dims.find(d);
            if (it != e.moy->s1_dims.end()) return it->second;
            const int r0 = p.spec.moy.reducible_degree;
            return d >= r0 && mod(d - r0, 2) == 0 ? 1 : 0;
        });
        Result rows = Result::array();
        for (const auto& l : e.moy->ledger) {
            rows.push_back(Result::array({l.degree, l.tail_in, l.irr_in, l.tail_killed, l.irr_killed, l.out}));
        }
        add_table(r, "ledger", "Exact sequence ledger",
                  {"degree", "tail", "irreducible", "tail_killed", "irreducible_killed", "swfh"}, std::move(rows));
    }
    add_notes(r, rep.provenance);
    return r;
}

Result brieskorn_result(int p, int q, int n, const std::optional<DegreeWindow>& forced)
{
    if (!((p == 2 && q == 3) || (p == 3 && q == 2))) {
        throw Error(ErrorKind::input, "only Brieskorn spheres with {p, q} = {2, 3} are supported");
    }
    const InvariantReport rep = brieskorn(n);
    Result r = new_result("brieskorn");
    Result& s = r["summary"];
    s["p"] = 2;
    s["q"] = 3;
    s["n"] = n;
    if (n == 1) {
        s["family"] = "S^3";
        s["k"] = 0;
    } else {
        const MoyData d = brieskorn_data(n);
        s["family"] = to_string(*d.preset);
        s["k"] = d.irreducibles.front().pairs;
    }
    report_summary(s, rep);
    add_swfh(r, rep, forced);
    add_notes(r, rep.provenance);
    return r;
}

Result table_result(int p, int q, int k_max)
{
    if (!((p == 2 && q == 3) || (p == 3 && q == 2))) {
        throw Error(ErrorKind::input, "only Brieskorn spheres with {p, q} = {2, 3} are supported");
    }
    if (k_max < 1 || k_max > 10000) throw Error(ErrorKind::input, "--k-max must be in 1..10000");
    Result r = new_result("table");
    Result rows = Result::array();
    for (int k = 1; k <= k_max; ++k) {
        for (int off : {-5, -1, 1, 5}) {
            const int n = 12 * k + off;
            const InvariantReport rep = brieskorn(n);
            rows.push_back(Result::array({n, to_string(*brieskorn_data(n).preset), k, eighths_json(rep.alpha),
                                          eighths_json(rep.beta), eighths_json(rep.gamma),
                                          eighths_json(rep.delta.at(Field::char0)),
                                          eighths_json(rep.delta.at(Field::char2)), eighths_json(rep.mu),
                                          *rep.lambda_reference}));
        }
    }
    add_table(r, "brieskorn", "Brieskorn spheres Sigma(2,3,n)",
              {"n", "family", "k", "alpha", "beta", "gamma", "delta0", "delta2", "mu", "lambda"}, std::move(rows));
    return r;
}

InvariantReport report_of(const ParsedSpace& p)
{
    const Evaluated e = evaluate(p.spec);
    InvariantReport rep = invariants(e.cls, e.ctx);
    rep.lambda_reference = e.lambda_reference;
    return rep;
}

Result reverse_result(const ParsedSpace& p)
{
    const InvariantReport rep = orientation_reverse(report_of(p));
    Result r = new_result("reverse");
    report_summary(r["summary"], rep);
    r["summary"]["swfh_available"] = false;
    add_notes(r, rep.provenance);
    return r;
}

Result cobordism_result(const ParsedSpace& p0, const ParsedSpace& p1, const CobordismData& c)
{
    const InvariantReport r0 = report_of(p0);
    const InvariantReport r1 = report_of(p1);
    const Verdict v = cobordism_check(r0, r1, c);
    Result r = new_result("check-cobordism");
    Result& s = r["summary"];
    s["b2"] = c.b2;
    s["spin"] = c.spin;
    s["negative_definite"] = c.negative_definite;
    s["consistent"] = v.consistent;
    s["verdict"] = v.consistent ? "consistent" : "violated: no such cobordism exists";
    Result rows = Result::array();
    for (const char* name : {"alpha", "beta", "gamma"}) {
        const Eighths x0 = name[0] == 'a' ? r0.alpha : name[0] == 'b' ? r0.beta : r0.gamma;
        const Eighths x1 = name[0] == 'a' ? r1.alpha : name[0] == 'b' ? r1.beta : r1.gamma;
        rows.push_back(Result::array({name, eighths_json(x0), eighths_json(x1)}));
    }
    add_table(r, "invariants", "Invariants of the two ends", {"invariant", "Y0", "Y1"}, std::move(rows));
    add_notes(r, v.violations);
    return r;
}

Result verify_result(const verify::Options& o, bool& all_passed)
{
    const auto suites = verify::run_all(o);
    Result r = new_result("verify");
    all_passed = true;
    Result rows = Result::array();
    for (const auto& s : suites) {
        all_passed = all_passed && s.passed();
        rows.push_back(Result::array({s.id, s.name, s.cases, s.failures, s.passed() ? "pass" : "FAIL"}));
        for (const auto& sample : s.samples) r["notes"].push_back("(" + s.id + ") " + sample);
    }
    r["summary"]["iters"] = o.iters;
    r["summary"]["seed"] = o.seed;
    r["summary"]["passed"] = all_passed;
    add_table(r, "suites", "Property suites", {"suite", "name", "cases", "failures", "status"}, std::move(rows));
    return r;
}

int exit_code(ErrorKind k)
{
    switch (k) {
    case ErrorKind::invalid_module:
    case ErrorKind::internal: return 2;
    case ErrorKind::ambiguity: return 3;
    default: return 1;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Pin(2)-equivariant Floer invariant calculator", "swfcalc"};
    app.set_version_flag("--version", std::string("swfcalc ") + tool_version());
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"md", "json", "csv"}));
    app.add_option("--degrees", opt.degrees, "Degree window LO..HI for homology tables");
    app.add_option("--cache-dir", opt.cache_dir, "Result cache directory");
    app.add_flag("--no-cache", opt.no_cache, "Bypass the result cache");

    std::string file;
    std::string file1;
    int p = 0;
    int q = 0;
    int n = 0;
    int k_max = 0;
    RepDesc v;
    CobordismData cob;
    verify::Options vopt;
    std::string cache_action;

    auto* eval = app.add_subcommand("eval", "Evaluate a space file");
    eval->add_option("file", file)->required();

    auto* bries = app.add_subcommand("brieskorn", "Invariants of Sigma(p,q,n)");
    bries->add_option("p", p)->required();
    bries->add_option("q", q)->required();
    bries->add_option("n", n)->required();

    auto* table = app.add_subcommand("table", "Table of Sigma(2,3,n) for k = 1..K");
    table->add_option("p", p)->required();
    table->add_option("q", q)->required();
    table->add_option("--k-max", k_max)->required();

    auto* dual = app.add_subcommand("dualize", "V-dual of a space file");
    dual->add_option("file", file)->required();
    dual->add_option("--rtilde", v.rtilde)->required();
    dual->add_option("--quat", v.quat)->required();

    auto* rev = app.add_subcommand("reverse", "Invariants after orientation reversal");
    rev->add_option("file", file)->required();

    auto* cobc = app.add_subcommand("check-cobordism", "Test cobordism constraints between two files");
    cobc->add_option("file0", file)->required();
    cobc->add_option("file1", file1)->required();
    cobc->add_option("--b2", cob.b2)->required();
    cobc->add_flag("--negative-definite", cob.negative_definite);
    cobc->add_flag("--spin", cob.spin);

    auto* ver = app.add_subcommand("verify", "Run the property suites");
    ver->add_option("--iters", vopt.iters)->check(CLI::Range(1, 1000000));
    ver->add_option("--seed", vopt.seed);

    auto* cache_cmd = app.add_subcommand("cache", "Inspect or clear the result cache");
    cache_cmd->add_option("action", cache_action)->required()->check(CLI::IsMember({"stats", "clear"}));

    std::vector<std::string> argv_store{"swfcalc"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_store) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        const Format fmt = *format_from_string(opt.format);
        const auto window = parse_degrees(opt.degrees);

        if (*ver) {
            bool ok = false;
            out << render(verify_result(vopt, ok), fmt);
            return ok ? 0 : 1;
        }

        std::optional<std::filesystem::path> dir;
        if (!opt.no_cache) dir = opt.cache_dir.empty() ? default_cache_dir() : std::filesystem::path(opt.cache_dir);
        Cache cache(dir, tool_version(), err);

        if (*cache_cmd) {
            Result r = new_result("cache");
            r["summary"]["directory"] = cache.dir() ? cache.dir()->string() : std::string("(disabled)");
            if (cache_action == "stats") {
                const auto st = cache.stats();
                r["summary"]["entries"] = st.entries;
                r["summary"]["bytes"] = st.bytes;
            } else {
                r["summary"]["removed"] = cache.clear();
            }
            out << render(r, fmt);
            return 0;
        }

        // Every remaining command is a pure function of this request.
        nlohmann::json request;
        request["version"] = tool_version();
        request["degrees"] = window ? nlohmann::json::array({window->lo, window->hi}) : nlohmann::json(nullptr);
        std::function<Result()> compute;

        if (*eval || *rev) {
            auto parsed = std::make_shared<ParsedSpace>(parse_space(read_file(file)));
            request["command"] = *eval ? "eval" : "reverse";
            request["inputs"] = nlohmann::json::array({parsed->canonical});
            if (*eval) compute = [parsed, window] { return eval_result("eval", *parsed, window); };
            else compute = [parsed] { return reverse_result(*parsed); };
        } else if (*dual) {
            if (v.rtilde < 0 || v.quat < 0) throw Error(ErrorKind::input, "--rtilde and --quat must be nonnegative");
            const ParsedSpace inner = parse_space(read_file(file));
            if (inner.spec.floer) {
                throw Error(ErrorKind::input, "$.floer: not allowed in a file passed to dualize");
            }
            nlohmann::json wrapped = {{"construct", "dualize"}, {"rtilde", v.rtilde}, {"quat", v.quat}, {"of", inner.canonical}};
            auto parsed = std::make_shared<ParsedSpace>(parse_space(wrapped.dump()));
            request["command"] = "dualize";
            request["inputs"] = nlohmann::json::array({parsed->canonical});
            compute = [parsed, window] { return eval_result("dualize", *parsed, window); };
        } else if (*bries) {
            request["command"] = "brieskorn";
            request["args"] = {p, q, n};
            compute = [=] { return brieskorn_result(p, q, n, window); };
        } else if (*table) {
            request["command"] = "table";
            request["args"] = {p, q, k_max};
            compute = [=] { return table_result(p, q, k_max); };
        } else if (*cobc) {
            auto p0 = std::make_shared<ParsedSpace>(parse_space(read_file(file)));
            auto p1 = std::make_shared<ParsedSpace>(parse_space(read_file(file1)));
            request["command"] = "check-cobordism";
            request["inputs"] = nlohmann::json::array({p0->canonical, p1->canonical});
            request["args"] = {{"b2", cob.b2}, {"spin", cob.spin}, {"negative_definite", cob.negative_definite}};
            compute = [p0, p1, cob] { return cobordism_result(*p0, *p1, cob); };
        }

        const std::string key = sha256_hex(request.dump());
        std::optional<Result> result = cache.lookup(key);
        if (!result) {
            result = compute();
            cache.store(key, *result);
        }
        out << render(*result, fmt);
        return 0;
    } catch (const AmbiguityError& e) {
        err << "swfcalc: error (ambiguity): " << e.what() << "\n";
        for (const auto& a : e.alternatives()) err << "  alternative: " << a << "\n";
        return 3;
    } catch (const Error& e) {
        err << "swfcalc: error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        err << "swfcalc: internal error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace swf::cli
