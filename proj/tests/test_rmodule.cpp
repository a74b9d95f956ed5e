#include "swf/cli/generators.hpp"
#include "swf/error.hpp"
#include "swf/oracle.hpp"
#include "swf/rmodule.hpp"

#include <doctest.h>

#include <functional>

using namespace swf;
using f2::BitMatrix;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an Error");
    return ErrorKind::internal;
}

} // namespace

TEST_SUITE("rmodule") {

TEST_CASE("ring dimensions")
{
    const std::vector<int> expect{1, 1, 1, 0, 1, 1, 1, 0, 1};
    for (int d = 0; d < 9; ++d) CHECK(ring_dim(d) == expect[static_cast<std::size_t>(d)]);
    CHECK(ring_dim(-1) == 0);
    CHECK(pattern_dim(3, 3) == 1);
    CHECK(pattern_dim(3, 6) == 0);
    CHECK(Monomial::of_degree(6) == Monomial{2, 1});
    CHECK_FALSE(Monomial::of_degree(7).has_value());
    CHECK(to_string(Monomial{2, 3}) == "q^2v^3");
}

TEST_CASE("ideals classify to their triples")
{
    CHECK(classify_ideal(ideal_from_triple({3, 1, 0})) == IdealTriple{3, 1, 0});
    CHECK(classify_ideal(ideal_from_triple({0, 0, 0}, 0)) == IdealTriple{0, 0, 0});
    CHECK(abc_from_ideal(2, {3, 1, 0}) == AbcTriple{14, 6, 2});
    CHECK(kind_of([] { IdealTriple{1, 2, 0}.validate(); }) == ErrorKind::invalid_triple);
}

TEST_CASE("non-ideals are rejected")
{
    // v in the set without q v.
    CHECK(kind_of([] { classify_ideal(GradedIdeal(2, {{0, 1}, {0, 2}, {2, 0}, {2, 1}, {2, 2}})); }) ==
          ErrorKind::invalid_ideal);
    // q^2 v row never reached below the horizon is fine because of implicit members.
    CHECK(classify_ideal(GradedIdeal(1, {{0, 1}, {1, 1}, {2, 1}})) == IdealTriple{1, 1, 1});
    CHECK(kind_of([] { GradedIdeal(1, {{3, 0}}); }) == ErrorKind::invalid_ideal);
}

TEST_CASE("free modules are their own infinity part")
{
    for (Grading g : {Grading::cohomological, Grading::homological}) {
        const FiniteRModule m = free_module(g, 2, 13);
        CHECK(check_module_axioms(m).empty());
        const InfinityPart inf = infinity_part(m);
        for (int d = 2; d <= 13; ++d) CHECK(inf.dims.at(d) == m.dim(d));
        REQUIRE(inf.triple.has_value());
        CHECK(*inf.triple == IdealTriple{0, 0, 0});
    }
}

TEST_CASE("homological tail with a torsion class hitting the bottom")
{
    // Tail at 0 plus y in degree 4 with v y = t_0.
    std::vector<std::size_t> dims{1, 1, 1, 0, 2, 1, 1, 0, 1, 1, 1, 0};
    FiniteRModule m(Grading::homological, 0, dims, 0);
    for (int d : {1, 2, 6, 9, 10}) m.set_q(d, BitMatrix::identity(1));
    m.set_q(5, BitMatrix::from_rows({{1}, {0}}));
    m.set_v(4, BitMatrix::from_rows({{1, 1}}));
    for (int d : {5, 6, 9, 10}) m.set_v(d, BitMatrix::identity(1));
    m.set_v(8, BitMatrix::from_rows({{1}, {0}}));
    REQUIRE(check_module_axioms(m).empty());
    const InfinityPart inf = infinity_part(m);
    CHECK(inf.dims.at(4) == 1);
    CHECK(inf.dims.at(0) == 1);
    CHECK(inf.dims == oracle::infinity_dims(m));
    REQUIRE(inf.triple.has_value());
    CHECK(*inf.triple == IdealTriple{0, 0, 0});
}

TEST_CASE("cohomological torsion is quotiented out")
{
    // Tail at 0 plus z in degree 0 with v z = t_4; z + t_0 is v-torsion.
    std::vector<std::size_t> dims{2, 1, 1, 0, 1, 1, 1, 0};
    FiniteRModule m(Grading::cohomological, 0, dims, 0);
    m.set_q(0, BitMatrix::from_rows({{1, 1}}));
    m.set_q(1, BitMatrix::identity(1));
    m.set_q(4, BitMatrix::identity(1));
    m.set_q(5, BitMatrix::identity(1));
    m.set_v(0, BitMatrix::from_rows({{1, 1}}));
    m.set_v(1, BitMatrix::identity(1));
    m.set_v(2, BitMatrix::identity(1));
    REQUIRE(check_module_axioms(m).empty());
    const InfinityPart inf = infinity_part(m);
    CHECK(inf.dims.at(0) == 1);
    CHECK(inf.dims == oracle::infinity_dims(m));
    const FiniteRModule q = infinity_module(m);
    CHECK(q.dim(0) == 1);
    CHECK(check_module_axioms(q).empty());
}

TEST_CASE("a module without tail has no infinity part")
{
    FiniteRModule m(Grading::homological, 0, {1, 1, 1, 0, 1}, std::nullopt);
    m.set_v(4, BitMatrix::identity(1));
    m.set_q(1, BitMatrix::identity(1));
    m.set_q(2, BitMatrix::identity(1));
    const InfinityPart inf = infinity_part(m);
    for (const auto& [d, n] : inf.dims) CHECK(n == 0);
    CHECK_FALSE(inf.triple.has_value());
}

TEST_CASE("axiom failures are reported per degree")
{
    FiniteRModule m(Grading::cohomological, 0, {1, 1, 1, 1}, std::nullopt);
    for (int d = 0; d < 3; ++d) m.set_q(d, BitMatrix::identity(1));
    const auto diags = check_module_axioms(m);
    REQUIRE(diags.size() == 1);
    CHECK(diags.front().degree == 0);
    CHECK(kind_of([&] { infinity_part(m); }) == ErrorKind::invalid_module);
    CHECK(kind_of([&] { m.set_v(0, BitMatrix::identity(1)); }) == ErrorKind::invalid_module);
    CHECK(kind_of([&] { m.set_q(0, BitMatrix(2, 1)); }) == ErrorKind::invalid_module);

    FiniteRModule bad_tail(Grading::homological, 0, {1, 1, 1, 1}, 0);
    CHECK_FALSE(check_module_axioms(bad_tail).empty());
}

TEST_CASE("random modules agree with the enumeration oracle in both gradings")
{
    gen::Rng rng(2024);
    for (int n = 0; n < 200; ++n) {
        const Grading g = n % 2 ? Grading::cohomological : Grading::homological;
        const FiniteRModule m = gen::module(rng, g, 20);
        CHECK(m.total_dim() <= 20);
        REQUIRE(check_module_axioms(m).empty());
        const InfinityPart inf = infinity_part(m);
        CHECK(inf.dims == oracle::infinity_dims(m));
        CHECK(inf.iterations <= (m.hi() - m.lo() + 1) / 4 + 2);
    }
}

} // TEST_SUITE
