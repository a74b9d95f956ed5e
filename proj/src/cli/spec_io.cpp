#include "swf/cli/spec_io.hpp"

#include "swf/error.hpp"

#include <limits>
#include <set>

namespace swf::cli {

using nlohmann::json;

std::string to_string(SpaceSpec::Kind k)
{
    switch (k) {
    case SpaceSpec::Kind::rep_sphere: return "rep_sphere";
    case SpaceSpec::Kind::unreduced_suspension: return "unreduced_suspension";
    case SpaceSpec::Kind::suspend: return "suspend";
    case SpaceSpec::Kind::dualize: return "dualize";
    case SpaceSpec::Kind::moy: return "moy";
    }
    return "?";
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg)
{
    throw Error(ErrorKind::input, path + ": " + msg);
}

std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
std::string child(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const char* type_name(const json& j)
{
    return j.type_name();
}

void require_object(const json& j, const std::string& path)
{
    if (!j.is_object()) fail(path, std::string("expected an object, got ") + type_name(j));
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed)
{
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : j.items()) {
        if (!ok.count(key)) fail(child(path, key), "unknown field");
    }
}

const json& field(const json& j, const std::string& path, const char* key)
{
    auto it = j.find(key);
    if (it == j.end()) fail(child(path, key), "required field is missing");
    return *it;
}

std::int64_t as_int64(const json& j, const std::string& path)
{
    if (!j.is_number_integer()) fail(path, std::string("expected an integer, got ") + type_name(j));
    if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        fail(path, "integer out of range");
    }
    return j.get<std::int64_t>();
}

int as_int(const json& j, const std::string& path, int lo = std::numeric_limits<int>::min() / 8,
           int hi = std::numeric_limits<int>::max() / 8)
{
    const std::int64_t v = as_int64(j, path);
    if (v < lo || v > hi) fail(path, "value " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
}

int nonneg(const json& j, const std::string& path, const char* key)
{
    const std::string p = child(path, key);
    const int v = as_int(field(j, path, key), p);
    if (v < 0) fail(p, "must be nonnegative, got " + std::to_string(v));
    return v;
}

const json& array_field(const json& j, const std::string& path, const char* key)
{
    const json& a = field(j, path, key);
    if (!a.is_array()) fail(child(path, key), std::string("expected an array, got ") + type_name(a));
    return a;
}

f2::BitVector bits(const json& a, const std::string& path)
{
    if (!a.is_array()) fail(path, std::string("expected an array of bits, got ") + type_name(a));
    f2::BitVector v(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        const int b = as_int(a[n], child(path, n));
        if (b != 0 && b != 1) fail(child(path, n), "bits must be 0 or 1");
        v.set(n, b == 1);
    }
    return v;
}

f2::ChainComplex parse_chain(const json& j, const std::string& path)
{
    require_object(j, path);
    only_keys(j, path, {"dims", "boundaries"});
    std::map<int, std::size_t> dims;
    const json& d = array_field(j, path, "dims");
    for (std::size_t n = 0; n < d.size(); ++n) {
        const int v = as_int(d[n], child(child(path, "dims"), n), 0, 1 << 16);
        dims[static_cast<int>(n)] = static_cast<std::size_t>(v);
    }
    std::map<int, f2::BitMatrix> boundaries;
    if (j.contains("boundaries")) {
        const std::string bp = child(path, "boundaries");
        const json& bs = array_field(j, path, "boundaries");
        for (std::size_t n = 0; n < bs.size(); ++n) {
            const std::string ep = child(bp, n);
            require_object(bs[n], ep);
            only_keys(bs[n], ep, {"degree", "matrix"});
            const int deg = as_int(field(bs[n], ep, "degree"), child(ep, "degree"));
            if (boundaries.count(deg)) fail(child(ep, "degree"), "boundary listed twice");
            const json& rows = array_field(bs[n], ep, "matrix");
            const std::size_t want_rows = dims.count(deg - 1) ? dims[deg - 1] : 0;
            const std::size_t want_cols = dims.count(deg) ? dims[deg] : 0;
            if (rows.size() != want_rows) {
                fail(child(ep, "matrix"), "expected " + std::to_string(want_rows) + " rows (dim C_" +
                                              std::to_string(deg - 1) + "), got " + std::to_string(rows.size()));
            }
            f2::BitMatrix m(want_rows, want_cols);
            for (std::size_t r = 0; r < rows.size(); ++r) {
                const f2::BitVector row = bits(rows[r], child(child(ep, "matrix"), r));
                if (row.size() != want_cols) {
                    fail(child(child(ep, "matrix"), r), "expected " + std::to_string(want_cols) + " columns");
                }
                for (std::size_t c = 0; c < want_cols; ++c) m.set(r, c, row.get(c));
            }
            boundaries[deg] = m;
        }
    }
    try {
        return f2::ChainComplex(dims, boundaries);
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

KappaData parse_kappa(const json& j, const std::string& path)
{
    KappaData k;
    const bool has_dims = j.contains("qdims");
    const bool has_chain = j.contains("qchain");
    if (has_dims == has_chain) fail(path, "exactly one of qdims and qchain is required");
    if (has_dims) {
        const json& d = array_field(j, path, "qdims");
        for (std::size_t n = 0; n < d.size(); ++n) {
            const int v = as_int(d[n], child(child(path, "qdims"), n), 0, 1 << 16);
            if (v > 0) k.qdims[static_cast<int>(n)] = v;
        }
    } else {
        k.qdims = qdims_from_chain(parse_chain(j.at("qchain"), child(path, "qchain")));
    }

    if (j.contains("kappa")) {
        const std::string kp = child(path, "kappa");
        const json& ks = array_field(j, path, "kappa");
        for (std::size_t n = 0; n < ks.size(); ++n) {
            const std::string ep = child(kp, n);
            require_object(ks[n], ep);
            only_keys(ks[n], ep, {"q", "v", "image"});
            const int q = as_int(field(ks[n], ep, "q"), child(ep, "q"), 0, 2);
            const int v = nonneg(ks[n], ep, "v");
            const Monomial m{q, v};
            if (k.kappa.count(m)) fail(ep, "kappa(" + swf::to_string(m) + ") given twice");
            k.kappa[m] = bits(field(ks[n], ep, "image"), child(ep, "image"));
        }
    }
    if (j.contains("kappa_s1")) {
        const std::string kp = child(path, "kappa_s1");
        const json& ks = array_field(j, path, "kappa_s1");
        for (std::size_t n = 0; n < ks.size(); ++n) {
            const std::string ep = child(kp, n);
            require_object(ks[n], ep);
            only_keys(ks[n], ep, {"e", "image"});
            const int e = nonneg(ks[n], ep, "e");
            if (k.kappa_s1.count(e)) fail(ep, "kappa_s1(" + std::to_string(e) + ") given twice");
            const json& img = field(ks[n], ep, "image");
            if (!img.is_array()) fail(child(ep, "image"), "expected an array of integers");
            std::vector<std::int64_t> v;
            for (std::size_t c = 0; c < img.size(); ++c) v.push_back(as_int(img[c], child(child(ep, "image"), c)));
            k.kappa_s1[e] = std::move(v);
        }
    }
    return k;
}

std::optional<int> rank_field(const json& j, const std::string& path, const char* key)
{
    if (!j.contains(key)) return std::nullopt;
    const json& r = j.at(key);
    if (r.is_string()) {
        if (r.get<std::string>() != "auto") fail(child(path, key), "expected a nonnegative integer or \"auto\"");
        return std::nullopt;
    }
    return nonneg(j, path, key);
}

MoyData parse_moy(const json& j, const std::string& path)
{
    MoyData d;
    d.reducible_degree = as_int(field(j, path, "reducible_degree"), child(path, "reducible_degree"), -1000, 1000);
    if (j.contains("irreducibles")) {
        const std::string ip = child(path, "irreducibles");
        const json& is = array_field(j, path, "irreducibles");
        for (std::size_t n = 0; n < is.size(); ++n) {
            const std::string ep = child(ip, n);
            require_object(is[n], ep);
            only_keys(is[n], ep, {"degree", "pairs"});
            d.irreducibles.push_back({as_int(field(is[n], ep, "degree"), child(ep, "degree"), -1000, 1000),
                                      nonneg(is[n], ep, "pairs")});
        }
    }
    d.g_rank = rank_field(j, path, "g_rank");
    d.s1_rank = rank_field(j, path, "s1_rank");
    if (j.contains("preset")) {
        const json& p = j.at("preset");
        if (!p.is_string()) fail(child(path, "preset"), "expected a string");
        d.preset = preset_from_string(p.get<std::string>());
        if (!d.preset) fail(child(path, "preset"), "unknown preset family \"" + p.get<std::string>() + "\"");
    }
    return d;
}

FloerContext parse_floer(const json& j, const std::string& path)
{
    require_object(j, path);
    only_keys(j, path, {"dim_v0tau", "n_eighths"});
    FloerContext c;
    c.dim_v0tau = nonneg(j, path, "dim_v0tau");
    c.n = Eighths{as_int(field(j, path, "n_eighths"), child(path, "n_eighths"))};
    return c;
}

SpaceSpec parse_node(const json& j, const std::string& path, int depth)
{
    if (depth > kMaxNesting) fail(path, "nesting depth exceeds " + std::to_string(kMaxNesting));
    require_object(j, path);
    const json& c = field(j, path, "construct");
    if (!c.is_string()) fail(child(path, "construct"), "expected a string");
    const std::string construct = c.get<std::string>();
    const bool root = depth == 1;

    SpaceSpec s;
    if (construct == "rep_sphere") {
        only_keys(j, path, {"construct", "rtilde", "quat", "floer"});
        s.kind = SpaceSpec::Kind::rep_sphere;
        s.rep = {nonneg(j, path, "rtilde"), nonneg(j, path, "quat")};
    } else if (construct == "unreduced_suspension") {
        only_keys(j, path, {"construct", "qdims", "qchain", "kappa", "kappa_s1", "floer"});
        s.kind = SpaceSpec::Kind::unreduced_suspension;
        s.kappa = parse_kappa(j, path);
    } else if (construct == "suspend" || construct == "dualize") {
        only_keys(j, path, {"construct", "of", "rtilde", "quat", "floer"});
        s.kind = construct == "suspend" ? SpaceSpec::Kind::suspend : SpaceSpec::Kind::dualize;
        s.rep = {nonneg(j, path, "rtilde"), nonneg(j, path, "quat")};
        s.of = std::make_shared<SpaceSpec>(parse_node(field(j, path, "of"), child(path, "of"), depth + 1));
    } else if (construct == "moy") {
        only_keys(j, path, {"construct", "reducible_degree", "irreducibles", "g_rank", "s1_rank", "preset"});
        s.kind = SpaceSpec::Kind::moy;
        s.moy = parse_moy(j, path);
    } else {
        fail(child(path, "construct"), "unknown construct \"" + construct + "\"");
    }
    if (j.contains("floer")) {
        if (!root) fail(child(path, "floer"), "allowed only at the top level");
        s.floer = parse_floer(j.at("floer"), child(path, "floer"));
    }
    return s;
}

} // namespace

ParsedSpace parse_space(std::string_view bytes)
{
    json doc;
    try {
        // Bounded raw nesting keeps hostile inputs from exhausting the stack.
        doc = json::parse(bytes, [](int depth, json::parse_event_t, json&) {
            if (depth > 4 * kMaxNesting + 8) throw Error(ErrorKind::input, "$: JSON nesting too deep");
            return true;
        });
    } catch (const json::exception& e) {
        throw Error(ErrorKind::input, std::string("$: malformed JSON: ") + e.what());
    }
    ParsedSpace p;
    p.spec = parse_node(doc, "$", 1);
    p.canonical = std::move(doc);
    return p;
}

Evaluated evaluate(const SpaceSpec& spec)
{
    Evaluated e;
    switch (spec.kind) {
    case SpaceSpec::Kind::rep_sphere:
        e.cls = from_rep_sphere(spec.rep.rtilde, spec.rep.quat);
        e.ctx = {spec.rep.dim(), {}};
        break;
    case SpaceSpec::Kind::unreduced_suspension:
        e.cls = from_unreduced_suspension(spec.kappa);
        e.ctx = {0, {}};
        break;
    case SpaceSpec::Kind::suspend: {
        const Evaluated inner = evaluate(*spec.of);
        e.cls = suspend(inner.cls, spec.rep);
        e.ctx = {inner.ctx.dim_v0tau + spec.rep.dim(), inner.ctx.n};
        break;
    }
    case SpaceSpec::Kind::dualize: {
        const Evaluated inner = evaluate(*spec.of);
        e.cls = dualize(inner.cls, spec.rep);
        e.ctx = {spec.rep.dim() - inner.ctx.dim_v0tau, -inner.ctx.n};
        if (e.ctx.dim_v0tau < 0) {
            throw Error(ErrorKind::context, "dual normalization dim V - D = " + std::to_string(e.ctx.dim_v0tau) +
                                                " is negative; give an explicit \"floer\" block");
        }
        break;
    }
    case SpaceSpec::Kind::moy: {
        MoyResult m = assemble_moy(spec.moy);
        e.cls = m.cls;
        e.ctx = m.ctx;
        if (spec.moy.preset && spec.moy.irreducibles.size() <= 1) {
            const int k = spec.moy.irreducibles.empty() ? 0 : spec.moy.irreducibles.front().pairs;
            e.lambda_reference = preset_lambda(*spec.moy.preset, k);
        }
        e.moy = std::move(m);
        break;
    }
    }
    if (spec.floer) e.ctx = *spec.floer;
    return e;
}

} // namespace swf::cli
