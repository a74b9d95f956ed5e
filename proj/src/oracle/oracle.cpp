#include "swf/oracle.hpp"

#include "swf/error.hpp"

#include <cstdint>
#include <vector>

namespace swf::oracle {

namespace {

using Bytes = std::vector<std::vector<std::uint8_t>>;

Bytes to_bytes(const f2::BitMatrix& m)
{
    Bytes b(m.rows(), std::vector<std::uint8_t>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) b[r][c] = m.get(r, c) ? 1 : 0;
    }
    return b;
}

// Vectors of a degree are encoded as bitmasks; dim <= 20 keeps them small.
using Vec = std::uint32_t;
constexpr std::size_t kMaxDim = 20;

Vec apply(const Bytes& m, std::size_t cols, Vec x)
{
    Vec y = 0;
    for (std::size_t r = 0; r < m.size(); ++r) {
        std::uint8_t acc = 0;
        for (std::size_t c = 0; c < cols; ++c) acc ^= static_cast<std::uint8_t>(m[r][c] & ((x >> c) & 1u));
        if (acc) y |= Vec{1} << r;
    }
    return y;
}

// v^l applied one step at a time, never forming a product matrix.
Vec apply_v_power(const FiniteRModule& m, int d, int l, Vec x)
{
    int cur = d;
    for (int s = 0; s < l; ++s) {
        const int next = cur + m.step(4);
        x = apply(to_bytes(m.v_map(cur)), m.dim(cur), x);
        cur = next;
    }
    return x;
}

std::size_t log2_exact(std::size_t n)
{
    std::size_t k = 0;
    while ((std::size_t{1} << k) < n) ++k;
    if ((std::size_t{1} << k) != n) throw Error(ErrorKind::internal, "oracle: set size is not a power of two");
    return k;
}

} // namespace

std::size_t rank(const f2::BitMatrix& m)
{
    Bytes b = to_bytes(m);
    std::size_t rk = 0;
    const std::size_t cols = m.cols();
    for (std::size_t c = 0; c < cols && rk < b.size(); ++c) {
        std::size_t piv = rk;
        while (piv < b.size() && !b[piv][c]) ++piv;
        if (piv == b.size()) continue;
        std::swap(b[piv], b[rk]);
        for (std::size_t r = 0; r < b.size(); ++r) {
            if (r != rk && b[r][c]) {
                for (std::size_t k = 0; k < cols; ++k) b[r][k] ^= b[rk][k];
            }
        }
        ++rk;
    }
    return rk;
}

std::map<int, std::size_t> homology_dims(const f2::ChainComplex& c)
{
    std::map<int, std::size_t> out;
    for (const auto& [d, n] : c.dims()) {
        const std::size_t out_rank = oracle::rank(c.boundary(d));
        const std::size_t in_rank = oracle::rank(c.boundary(d + 1));
        out[d] = n - out_rank - in_rank;
    }
    return out;
}

std::map<int, std::size_t> infinity_dims(const FiniteRModule& m)
{
    std::map<int, std::size_t> out;
    const bool tail = m.tail_origin().has_value();
    for (int d = m.lo(); d <= m.hi(); ++d) {
        const std::size_t n = m.dim(d);
        if (n > kMaxDim) throw Error(ErrorKind::input, "oracle: degree too large to enumerate");
        const std::size_t count = std::size_t{1} << n;

        if (m.grading() == Grading::homological) {
            // x survives iff it lies in im(v^l) for every source in the window;
            // past the window the tail is isomorphic to the top period, and
            // without a tail the module is zero there.
            std::vector<bool> alive(count, true);
            for (int l = 1;; ++l) {
                const int src = d - m.step(4 * l);
                if (!m.in_window(src)) break;
                std::vector<bool> hit(count, false);
                const std::size_t sn = m.dim(src);
                if (sn > kMaxDim) throw Error(ErrorKind::input, "oracle: degree too large to enumerate");
                for (Vec y = 0; y < (Vec{1} << sn); ++y) hit[apply_v_power(m, src, l, y)] = true;
                for (std::size_t x = 0; x < count; ++x) alive[x] = alive[x] && hit[x];
            }
            std::size_t survivors = 0;
            for (std::size_t x = 0; x < count; ++x) {
                if (alive[x] && (tail || x == 0)) ++survivors;
            }
            out[d] = log2_exact(survivors);
        } else {
            // x is stable torsion iff some v^l kills it inside the window.
            std::size_t torsion = 0;
            for (Vec x = 0; x < count; ++x) {
                bool killed = !tail || x == 0;
                for (int l = 1; !killed; ++l) {
                    const int dst = d + m.step(4 * l);
                    if (!m.in_window(dst)) break;
                    if (apply_v_power(m, d, l, x) == 0) killed = true;
                }
                if (killed) ++torsion;
            }
            out[d] = n - log2_exact(torsion);
        }
    }
    return out;
}

} // namespace swf::oracle
