#include "swf/error.hpp"
#include "swf/f2core.hpp"
#include "swf/oracle.hpp"
#include "swf/rational_rank.hpp"

#include <doctest.h>

#include <random>

using namespace swf;
using namespace swf::f2;

namespace {

BitMatrix random_matrix(std::mt19937_64& g, std::size_t r, std::size_t c)
{
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, g() % 2 == 1);
    }
    return m;
}

} // namespace

TEST_SUITE("f2core") {

TEST_CASE("bit vectors cross word boundaries")
{
    BitVector v(130);
    v.set(0);
    v.set(64);
    v.set(129);
    CHECK(v.popcount() == 3);
    v.flip(64);
    CHECK_FALSE(v.get(64));
    BitVector w(130);
    w.set(129);
    v ^= w;
    CHECK(v.popcount() == 1);
    CHECK(v.get(0));
}

TEST_CASE("products and transpose")
{
    const auto a = BitMatrix::from_rows({{1, 1, 0}, {0, 1, 1}});
    const auto b = BitMatrix::from_rows({{1, 0}, {1, 1}, {0, 1}});
    CHECK(a * b == BitMatrix::from_rows({{0, 1}, {1, 0}}));
    CHECK(a.transpose() == BitMatrix::from_rows({{1, 0}, {1, 1}, {0, 1}}));
    CHECK(a * BitVector{1, 1, 1} == BitVector{0, 0});
    CHECK(BitMatrix::identity(3) * b == b);
}

TEST_CASE("echelon form pivots on the first set bit")
{
    const auto m = BitMatrix::from_rows({{0, 1, 1}, {1, 1, 0}, {1, 0, 1}});
    const Echelon e = row_reduce(m);
    CHECK(e.pivots == std::vector<std::size_t>{0, 1});
    CHECK(rank(m) == 2);
    CHECK(rank(BitMatrix(0, 5)) == 0);
}

TEST_CASE("solve, kernel and image agree with definitions")
{
    std::mt19937_64 g(11);
    for (int n = 0; n < 200; ++n) {
        const std::size_t r = g() % 9;
        const std::size_t c = g() % 9;
        const BitMatrix m = random_matrix(g, r, c);
        const BitMatrix k = kernel_basis(m);
        CHECK(k.cols() + rank(m) == c);
        CHECK((m * k).is_zero());
        CHECK(rank(k) == k.cols());
        const BitMatrix im = image_basis(m);
        CHECK(im.cols() == rank(m));
        CHECK(rank(m) == oracle::rank(m));

        BitVector x(c);
        for (std::size_t i = 0; i < c; ++i) x.set(i, g() % 2 == 1);
        const BitVector y = m * x;
        const auto sol = solve(m, y);
        REQUIRE(sol.has_value());
        CHECK(m * *sol == y);
    }
    CHECK_FALSE(solve(BitMatrix::from_rows({{1, 0}, {1, 0}}), BitVector{1, 0}).has_value());
    CHECK_THROWS_AS(solve(BitMatrix(2, 2), BitVector(3)), Error);
}

TEST_CASE("span intersection")
{
    const auto a = BitMatrix::from_rows({{1, 0}, {0, 1}, {0, 0}});
    const auto b = BitMatrix::from_rows({{1, 0}, {0, 0}, {0, 1}});
    const BitMatrix i = intersect_spans(a, b);
    REQUIRE(i.cols() == 1);
    CHECK(i.column(0) == BitVector{1, 0, 0});
}

TEST_CASE("chain complexes reject nonzero composites")
{
    const auto d1 = BitMatrix::from_rows({{1, 1}});
    const auto d2_bad = BitMatrix::from_rows({{1}, {0}});
    CHECK_THROWS_AS(ChainComplex({{0, 1}, {1, 2}, {2, 1}}, {{1, d1}, {2, d2_bad}}), Error);
    try {
        ChainComplex({{0, 1}, {1, 2}, {2, 1}}, {{1, d1}, {2, d2_bad}});
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::invalid_complex);
    }
    CHECK_THROWS_AS(ChainComplex({{0, 1}, {1, 2}}, {{1, BitMatrix(2, 2)}}), Error);
}

TEST_CASE("homology of small cell complexes")
{
    // Circle: one 0-cell, one 1-cell.
    CHECK(homology_dims(ChainComplex({{0, 1}, {1, 1}}, {})) == std::map<int, std::size_t>{{0, 1}, {1, 1}});
    // RP^2 over F2: boundaries 0 and 2 = 0.
    CHECK(homology_dims(ChainComplex({{0, 1}, {1, 1}, {2, 1}}, {})) ==
          std::map<int, std::size_t>{{0, 1}, {1, 1}, {2, 1}});
    // Interval: two vertices, one edge.
    const ChainComplex interval({{0, 2}, {1, 1}}, {{1, BitMatrix::from_rows({{1}, {1}})}});
    CHECK(homology_dims(interval) == std::map<int, std::size_t>{{0, 1}, {1, 0}});
}

TEST_CASE("homology matches the independent eliminator on random complexes")
{
    std::mt19937_64 g(5);
    for (int n = 0; n < 100; ++n) {
        // d2 = d1-kernel columns guarantee d1 d2 = 0.
        const std::size_t c0 = g() % 5 + 1;
        const std::size_t c1 = g() % 6 + 1;
        const BitMatrix d1 = random_matrix(g, c0, c1);
        const BitMatrix k = kernel_basis(d1);
        const std::size_t c2 = g() % 4;
        BitMatrix d2(c1, c2);
        for (std::size_t j = 0; j < c2 && k.cols() > 0; ++j) {
            for (std::size_t s = 0; s < k.cols(); ++s) {
                if (g() % 2) {
                    for (std::size_t r = 0; r < c1; ++r) d2.set(r, j, d2.get(r, j) ^ k.get(r, s));
                }
            }
        }
        const ChainComplex c({{0, c0}, {1, c1}, {2, c2}}, {{1, d1}, {2, d2}});
        CHECK(homology_dims(c) == oracle::homology_dims(c));
    }
}

TEST_CASE("rational and mod 2 ranks")
{
    CHECK(rational_rank({{2}}) == 1);
    CHECK(mod2_rank({{2}}) == 0);
    CHECK(rational_rank({{1, 2}, {2, 4}}) == 1);
    CHECK(rational_rank({{1, 2}, {3, 4}}) == 2);
    CHECK(mod2_rank({{1, 2}, {3, 4}}) == 1);
    CHECK(rational_rank({}) == 0);
    CHECK(rational_rank({{0, 0}, {0, 0}}) == 0);
    CHECK(rational_rank({{3, -1, 2}, {6, -2, 4}, {1, 1, 1}}) == 2);
}

} // TEST_SUITE
