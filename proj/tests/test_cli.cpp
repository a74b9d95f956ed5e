#include "swf/cli/cache.hpp"
#include "swf/cli/run.hpp"
#include "swf/cli/spec_io.hpp"
#include "swf/error.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace swf;
using namespace swf::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = run(args, out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string data(const std::string& name)
{
    return std::string(SWF_DATA_DIR) + "/" + name;
}

class TempDir {
public:
    TempDir()
    {
        std::random_device rd;
        path_ = fs::temp_directory_path() / ("swfcalc-test-" + std::to_string(rd()) + std::to_string(rd()));
        fs::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    const fs::path& path() const { return path_; }
    std::string file(const std::string& name, const std::string& body) const
    {
        const fs::path p = path_ / name;
        std::ofstream(p) << body;
        return p.string();
    }

private:
    fs::path path_;
};

std::string parse_error(const std::string& text)
{
    try {
        parse_space(text);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::input);
        return e.what();
    }
    FAIL("expected a parse error for " << text);
    return {};
}

nlohmann::json summary_of(const std::string& json_text)
{
    return nlohmann::json::parse(json_text).at("summary");
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("parser accepts the documented constructs")
{
    const ParsedSpace p = parse_space(R"({"construct":"rep_sphere","rtilde":1,"quat":2})");
    CHECK(p.spec.kind == SpaceSpec::Kind::rep_sphere);
    CHECK(p.spec.rep == RepDesc{1, 2});
    CHECK(p.canonical.dump() == R"({"construct":"rep_sphere","quat":2,"rtilde":1})");

    const ParsedSpace d = parse_space(R"({"construct":"dualize","rtilde":0,"quat":3,"of":
        {"construct":"unreduced_suspension","qdims":[1,0,1,0,1],
         "kappa":[{"q":0,"v":0,"image":[1]},{"q":0,"v":1,"image":[1]}],
         "kappa_s1":[{"e":0,"image":[1]},{"e":1,"image":[1]},{"e":2,"image":[1]}]}})");
    const Evaluated e = evaluate(d.spec);
    CHECK(e.cls.abc() == AbcTriple{12, 12, 4});
    CHECK(e.ctx.dim_v0tau == 12);
}

TEST_CASE("parser diagnostics carry the offending path")
{
    CHECK(parse_error(R"({"construct":"rep_sphere","rtilde":-1,"quat":0})").find("$.rtilde") == 0);
    CHECK(parse_error(R"({"construct":"rep_sphere","rtilde":1,"quat":0,"extra":1})").find("$.extra") == 0);
    CHECK(parse_error(R"({"construct":"suspend","rtilde":0,"quat":1.5,"of":{}})").find("$.quat") == 0);
    CHECK(parse_error(R"({"construct":"suspend","rtilde":0,"quat":1,"of":{"construct":"rep_sphere","rtilde":0}})")
              .find("$.of.quat") == 0);
    CHECK(parse_error(R"({"construct":"blob"})").find("$.construct") == 0);
    CHECK(parse_error(R"({"construct":"rep_sphere",)").find("$: malformed JSON") == 0);
    CHECK(parse_error(R"([1,2])").find("$: expected an object") == 0);
    CHECK(parse_error(R"({"construct":"unreduced_suspension","qdims":[1],"kappa":[{"q":3,"v":0,"image":[1]}]})")
              .find("$.kappa[0].q") == 0);
    CHECK(parse_error(R"({"construct":"suspend","rtilde":0,"quat":0,"of":{"construct":"rep_sphere","rtilde":0,"quat":0,"floer":{"dim_v0tau":0,"n_eighths":0}}})")
              .find("$.of.floer") == 0);
}

TEST_CASE("nesting depth is capped")
{
    auto nest = [](int depth) {
        std::string s = R"({"construct":"rep_sphere","rtilde":0,"quat":0})";
        for (int n = 1; n < depth; ++n) s = R"({"construct":"suspend","rtilde":0,"quat":0,"of":)" + s + "}";
        return s;
    };
    CHECK_NOTHROW(parse_space(nest(kMaxNesting)));
    CHECK(parse_error(nest(kMaxNesting + 1)).find("nesting depth exceeds 32") != std::string::npos);
    CHECK(parse_error(std::string(5000, '[') + std::string(5000, ']')).find("$") == 0);
}

TEST_CASE("chain-complex input matches plain dimensions")
{
    const ParsedSpace a = parse_space(R"({"construct":"unreduced_suspension",
        "qchain":{"dims":[1,1,1],"boundaries":[{"degree":1,"matrix":[[0]]},{"degree":2,"matrix":[[0]]}]},
        "kappa":[{"q":0,"v":0,"image":[1]},{"q":1,"v":0,"image":[1]},{"q":2,"v":0,"image":[1]}],
        "kappa_s1":[{"e":0,"image":[1]},{"e":1,"image":[1]}]})");
    const SwfClass x = evaluate(a.spec).cls;
    CHECK(x.abc() == AbcTriple{4, 4, 4});
    CHECK(parse_error(R"({"construct":"unreduced_suspension","qchain":{"dims":[1,1],"boundaries":[{"degree":1,"matrix":[[1,1]]}]}})")
              .find("$.qchain.boundaries[0].matrix[0]") == 0);
}

TEST_CASE("brieskorn JSON output")
{
    const Outcome o = call({"brieskorn", "2", "3", "11", "--format", "json", "--no-cache"});
    REQUIRE(o.code == 0);
    const auto s = summary_of(o.out);
    CHECK(s.at("alpha").at("eighths") == 16);
    CHECK(s.at("beta").at("eighths") == 0);
    CHECK(s.at("gamma").at("eighths") == 0);
    CHECK(s.at("delta0").at("value") == "1");
    CHECK(s.at("delta2").at("value") == "1");
    CHECK(s.at("mu").at("eighths") == 0);
    CHECK(s.at("lambda") == -2);
    CHECK(call({"brieskorn", "2", "5", "11", "--no-cache"}).code == 1);
    CHECK(call({"brieskorn", "2", "3", "9", "--no-cache"}).code == 1);
}

TEST_CASE("formats carry the same numbers")
{
    const Outcome j = call({"brieskorn", "2", "3", "7", "--format", "json", "--no-cache"});
    const Outcome m = call({"brieskorn", "2", "3", "7", "--format", "md", "--no-cache"});
    const Outcome c = call({"brieskorn", "2", "3", "7", "--format", "csv", "--no-cache"});
    REQUIRE(j.code == 0);
    CHECK(m.out.find("| beta | -1 |") != std::string::npos);
    CHECK(c.out.find("beta,-1\n") != std::string::npos);
    CHECK(summary_of(j.out).at("beta").at("value") == "-1");
    CHECK(summary_of(j.out).at("two_torsion_obstruction") == true);
}

TEST_CASE("table has one row per family and k")
{
    const Outcome o = call({"table", "2", "3", "--k-max", "3", "--format", "csv", "--no-cache"});
    REQUIRE(o.code == 0);
    std::istringstream in(o.out);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);) lines.push_back(l);
    REQUIRE(lines.size() == 13);
    CHECK(lines[0] == "n,family,k,alpha,beta,gamma,delta0,delta2,mu,lambda");
    CHECK(lines[1] == "7,12k-5,1,1,-1,-1,0,0,1,-1");
    CHECK(lines[2] == "11,12k-1,1,2,0,0,1,1,0,-2");
    CHECK(lines[3] == "13,12k+1,1,0,0,0,0,0,0,-2");
    CHECK(lines[4] == "17,12k+5,1,1,1,1,1,1,1,-3");
    CHECK(lines[12] == "41,12k+5,3,1,1,1,1,1,1,-7");
}

TEST_CASE("eval, dualize, reverse and cobordism over the data files")
{
    const auto s0 = summary_of(call({"eval", data("s0.json"), "--format", "json", "--no-cache"}).out);
    CHECK(s0.at("alpha").at("eighths") == 0);
    CHECK(s0.at("delta2").at("eighths") == 0);

    const Outcome d = call({"dualize", data("z3.json"), "--rtilde", "0", "--quat", "3", "--format", "json", "--no-cache"});
    REQUIRE(d.code == 0);
    const auto ds = summary_of(d.out);
    CHECK(ds.at("a") == 12);
    CHECK(ds.at("b") == 12);
    CHECK(ds.at("c") == 4);
    CHECK(ds.at("d_0") == 6);
    CHECK(call({"dualize", data("z3.json"), "--rtilde", "0", "--quat", "1", "--no-cache"}).code == 1);

    const auto r = summary_of(call({"reverse", data("sigma-2-3-11.json"), "--format", "json", "--no-cache"}).out);
    CHECK(r.at("alpha").at("eighths") == 0);
    CHECK(r.at("gamma").at("eighths") == -16);

    const Outcome c = call({"check-cobordism", data("s0.json"), data("sigma-2-3-7.json"), "--b2", "0", "--spin",
                            "--format", "json", "--no-cache"});
    REQUIRE(c.code == 0);
    CHECK(summary_of(c.out).at("consistent") == false);
    CHECK(nlohmann::json::parse(c.out).at("notes") ==
          nlohmann::json::array({"alpha: 1 != 0", "beta: -1 != 0", "gamma: -1 != 0"}));
    CHECK(call({"check-cobordism", data("s0.json"), data("s0.json"), "--b2", "0", "--no-cache"}).code == 1);
}

TEST_CASE("exit codes")
{
    const Outcome amb = call({"eval", data("moy-ambiguous.json"), "--no-cache"});
    CHECK(amb.code == 3);
    CHECK(amb.err.find("alternative: g_rank=1, s1_rank=1") != std::string::npos);
    TempDir t;
    CHECK(call({"eval", t.file("neg.json", R"({"construct":"rep_sphere","rtilde":-1,"quat":0})"), "--no-cache"}).code == 1);
    CHECK(call({"eval", (t.path() / "missing.json").string(), "--no-cache"}).code == 1);
    CHECK(call({"frobnicate"}).code == 1);
    CHECK(call({"eval", data("s0.json"), "--format", "xml"}).code == 1);
    CHECK(call({"eval", data("s0.json"), "--degrees", "5..1", "--no-cache"}).code == 1);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("cache: warm equals cold, corrupt and stale entries are recomputed")
{
    TempDir t;
    const std::string dir = t.path().string();
    const std::vector<std::string> args{"brieskorn", "2", "3", "23", "--format", "json", "--cache-dir", dir};
    const Outcome cold = call(args);
    const Outcome warm = call(args);
    REQUIRE(cold.code == 0);
    CHECK(cold.out == warm.out);
    CHECK(cold.out == call({"brieskorn", "2", "3", "23", "--format", "json", "--no-cache"}).out);

    std::vector<fs::path> entries;
    for (const auto& e : fs::directory_iterator(dir)) entries.push_back(e.path());
    REQUIRE(entries.size() == 1);

    // Truncate: evicted, recomputed, identical.
    const auto size = fs::file_size(entries[0]);
    fs::resize_file(entries[0], size / 2);
    const Outcome healed = call(args);
    CHECK(healed.code == 0);
    CHECK(healed.out == cold.out);
    CHECK(fs::file_size(entries[0]) == size);

    // Stale version stamp: recomputed and rewritten.
    {
        std::ifstream in(entries[0]);
        auto j = nlohmann::ordered_json::parse(in);
        j["version"] = "0.0.0-old";
        j["result"]["summary"]["alpha"]["eighths"] = 999;
        std::ofstream(entries[0]) << j.dump();
    }
    const Outcome fresh = call(args);
    CHECK(fresh.out == cold.out);

    const Outcome stats = call({"cache", "stats", "--cache-dir", dir, "--format", "json"});
    CHECK(summary_of(stats.out).at("entries") == 1);
    const Outcome cleared = call({"cache", "clear", "--cache-dir", dir, "--format", "json"});
    CHECK(summary_of(cleared.out).at("removed") == 1);
    CHECK(fs::is_empty(dir));
}

TEST_CASE("cache location precedence and unwritable directories")
{
    TempDir t;
    ::setenv("SWFCALC_CACHE", t.path().string().c_str(), 1);
    CHECK(default_cache_dir() == t.path());
    const Outcome o = call({"brieskorn", "2", "3", "13"});
    CHECK(o.code == 0);
    CHECK_FALSE(fs::is_empty(t.path()));
    ::unsetenv("SWFCALC_CACHE");

    const std::string blocked = t.file("plainfile", "x") + "/sub";
    const Outcome w = call({"brieskorn", "2", "3", "13", "--cache-dir", blocked});
    CHECK(w.code == 0);
    CHECK(w.err.find("cache disabled") != std::string::npos);
    CHECK(w.out == o.out);
}

TEST_CASE("verify is reproducible")
{
    const Outcome a = call({"verify", "--iters", "20", "--seed", "3", "--format", "csv"});
    const Outcome b = call({"verify", "--iters", "20", "--seed", "3", "--format", "csv"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("sha256 of a known string")
{
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

} // TEST_SUITE
