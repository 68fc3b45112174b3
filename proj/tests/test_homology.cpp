#include <catch2/catch_amalgamated.hpp>

#include "randcx/homology.hpp"
#include "randcx/random.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace randcx;

namespace {

ErrorKind kind_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no exception");
    return ErrorKind::internal_inconsistency;
}

Complex2 y(int n, const char* p, std::uint64_t trial, std::uint64_t seed = 3)
{
    auto prob = Probability::parse(p);
    return gen_Y(n, prob, make_rng_spec(seed, "Y", n, prob, trial));
}

std::tuple<std::size_t, std::size_t, std::size_t> profile(const Complex2& x, const Coefficients& c)
{
    auto b = betti(x, c);
    return {b.b0, b.b1, b.b2};
}

using Triple = std::tuple<std::size_t, std::size_t, std::size_t>;

} // namespace

TEST_CASE("boundary matrix orientation", "[homology]")
{
    auto bp = boundary_matrices(fixtures::t1());
    REQUIRE(bp.d2.rows == 3);
    REQUIRE(bp.d2.cols == 1);
    auto d2 = bp.d2.to_dense();
    // Edges in order 12, 13, 23; face 123 maps to 23 - 13 + 12.
    CHECK(d2(0, 0) == 1);
    CHECK(d2(1, 0) == -1);
    CHECK(d2(2, 0) == 1);

    auto d1 = bp.d1.to_dense();
    CHECK(d1(0, 0) == -1);
    CHECK(d1(1, 0) == 1);

    auto k4 = boundary_matrices(fixtures::k4());
    CHECK(k4.d1.rows == 4);
    CHECK(k4.d1.cols == 6);
    CHECK(k4.d2.cols == 0);

    auto tet = boundary_matrices(fixtures::tet());
    CHECK(tet.d2.rows == 6);
    CHECK(tet.d2.cols == 4);
    CHECK(rank_rational(tet.d2.to_dense()) == 3);
}

TEST_CASE("d1 d2 vanishes", "[homology][property]")
{
    for (std::uint64_t t = 0; t < 10; ++t) {
        auto x = y(9, "0.3", t);
        auto bp = boundary_matrices(x);
        auto prod = multiply(bp.d1.to_dense(), bp.d2.to_dense());
        CHECK(prod == IntMatrix(prod.rows(), prod.cols()));
    }
    auto rp = boundary_matrices(fixtures::rp6());
    auto prod = multiply(rp.d1.to_dense(), rp.d2.to_dense());
    CHECK(prod == IntMatrix(6, 10));
}

TEST_CASE("betti numbers of the fixtures", "[homology]")
{
    CHECK(profile(fixtures::tet(), Coefficients::gf2()) == Triple{1, 0, 1});
    CHECK(profile(fixtures::tet(), Coefficients::rationals()) == Triple{1, 0, 1});
    CHECK(profile(fixtures::rp6(), Coefficients::gf2()) == Triple{1, 1, 1});
    CHECK(profile(fixtures::rp6(), Coefficients::rationals()) == Triple{1, 0, 0});
    CHECK(profile(fixtures::rp6(), Coefficients::gfq(3)) == Triple{1, 0, 0});
    CHECK(profile(fixtures::k4(), Coefficients::gf2()) == Triple{1, 3, 0});
    CHECK(profile(fixtures::t1(), Coefficients::gf2()) == Triple{1, 0, 0});
    CHECK(profile(fixtures::x5(), Coefficients::rationals()) == Triple{1, 5, 0});
}

TEST_CASE("betti numbers of a disconnected listed complex", "[homology]")
{
    auto x = disjoint_union(fixtures::tet(), fixtures::rp6());
    CHECK(profile(x, Coefficients::gf2()) == Triple{2, 1, 2});
    CHECK(profile(x, Coefficients::rationals()) == Triple{2, 0, 1});
    auto isolated = build_complex(3, std::vector<Edge>{}, {});
    CHECK(profile(isolated, Coefficients::gf2()) == Triple{3, 0, 0});
    auto empty = build_complex(0, full_skeleton, {});
    CHECK(profile(empty, Coefficients::gf2()) == Triple{0, 0, 0});
}

TEST_CASE("coefficient parsing", "[homology]")
{
    CHECK(Coefficients::parse("gf2") == Coefficients::gf2());
    CHECK(Coefficients::parse("q") == Coefficients::rationals());
    CHECK(Coefficients::parse("gfq:5") == Coefficients::gfq(5));
    CHECK(Coefficients::parse("gfq:2") == Coefficients::gf2());
    CHECK(Coefficients::gfq(7).name() == "gfq:7");
    CHECK(kind_of([] { Coefficients::parse("gfq:4"); }) == ErrorKind::bad_field);
    CHECK(kind_of([] { Coefficients::parse("gfq:"); }) == ErrorKind::bad_field);
    CHECK(kind_of([] { Coefficients::parse("z"); }) == ErrorKind::bad_field);
    CHECK(kind_of([] { Coefficients::gfq(1); }) == ErrorKind::bad_field);
}

TEST_CASE("integral H1 of the fixtures", "[homology][snf]")
{
    auto rp = h1_integral(fixtures::rp6());
    CHECK(rp.rank == 0);
    CHECK(rp.torsion == std::vector<std::int64_t>{2});

    auto tet = h1_integral(fixtures::tet());
    CHECK(tet.rank == 0);
    CHECK(tet.torsion.empty());

    auto k4 = h1_integral(fixtures::k4());
    CHECK(k4.rank == 3);
    CHECK(k4.torsion.empty());

    CHECK(kind_of([] { h1_integral(fixtures::rp6(), 10); }) == ErrorKind::size_cap_exceeded);
}

TEST_CASE("ranks of small matrices", "[homology][rank]")
{
    auto id = IntMatrix::identity(5);
    CHECK(rank_gf2(id) == 5);
    CHECK(rank_gfq(id, 3) == 5);
    CHECK(rank_rational(id) == 5);

    auto d2 = boundary_matrices(fixtures::rp6()).d2.to_dense();
    CHECK(rank_gf2(d2) == 9);
    CHECK(rank_rational(d2) == 10);

    auto tetd2 = boundary_matrices(fixtures::tet()).d2.to_dense();
    CHECK(rank_gf2(tetd2) == rank_rational(tetd2));

    IntMatrix twos(2, 2, {2, 0, 0, 2});
    CHECK(rank_gf2(twos) == 0);
    CHECK(rank_gfq(twos, 3) == 2);
    CHECK(rank_rational(twos) == 2);
    CHECK(rank_rational(IntMatrix(3, 0)) == 0);
    CHECK(kind_of([&] { rank_gfq(twos, 9); }) == ErrorKind::bad_field);
}

TEST_CASE("rational rank signals overflow", "[homology][rank][errors]")
{
    const std::int64_t big = std::int64_t{1} << 40;
    IntMatrix m(4, 4, {big, 1, 3, 7, 5, big, 11, 13, 17, 19, big, 23, 29, 31, 37, big});
    CHECK(kind_of([&] { rank_rational(m); }) == ErrorKind::overflow);
}

TEST_CASE("checked arithmetic", "[homology][errors]")
{
    CHECK(kind_of([] { detail::checked_mul(INT64_MAX, 2); }) == ErrorKind::overflow);
    CHECK(kind_of([] { detail::checked_add(INT64_MAX, 1); }) == ErrorKind::overflow);
    CHECK(kind_of([] { detail::abs_checked(INT64_MIN); }) == ErrorKind::overflow);
    CHECK(detail::checked_sub(5, 7) == -2);
}

TEST_CASE("prime power factorisation", "[homology]")
{
    CHECK(prime_power_factors(12) == std::vector<std::int64_t>{3, 4});
    CHECK(prime_power_factors(2) == std::vector<std::int64_t>{2});
    CHECK(prime_power_factors(1).empty());
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
}

TEST_CASE("smith normal form matches determinantal divisors", "[homology][snf][oracle]")
{
    CounterRng rng(99);
    for (int t = 0; t < 200; ++t) {
        auto rows = 1 + rng.next_below(5);
        auto cols = 1 + rng.next_below(5);
        IntMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < cols; ++c) {
                m(r, c) = static_cast<std::int64_t>(rng.next_below(9)) - 4;
                if (rng.next_below(3) == 0) {
                    m(r, c) = 0;
                }
            }
        }
        auto snf = smith_normal_form(m);
        CHECK(snf.invariant_factors == oracles::invariant_factors_by_minors(m));
        for (std::size_t i = 1; i < snf.invariant_factors.size(); ++i) {
            CHECK(snf.invariant_factors[i] % snf.invariant_factors[i - 1] == 0);
        }
        CHECK(smith_normal_form(SparseIntMatrix::from_dense(m)).invariant_factors == snf.invariant_factors);
    }
}

TEST_CASE("smith normal form known cases", "[homology][snf]")
{
    IntMatrix m(2, 2, {2, 4, 6, 8});
    CHECK(smith_normal_form(m).invariant_factors == std::vector<std::int64_t>{2, 4});
    IntMatrix z(3, 2);
    CHECK(smith_normal_form(z).invariant_factors.empty());
    IntMatrix torsion(2, 2, {6, 0, 0, 4});
    CHECK(smith_normal_form(torsion).invariant_factors == std::vector<std::int64_t>{2, 12});
}

TEST_CASE("euler poincare over every field", "[homology][property]")
{
    for (std::uint64_t t = 0; t < 30; ++t) {
        auto x = y(12, t % 2 ? "0.15" : "0.4", t);
        for (auto c : {Coefficients::gf2(), Coefficients::gfq(3), Coefficients::gfq(5), Coefficients::rationals()}) {
            CHECK(betti(x, c).euler() == euler_characteristic(x));
        }
    }
}

TEST_CASE("universal coefficients consistency", "[homology][property]")
{
    std::vector<Complex2> xs{fixtures::rp6(), fixtures::tet(), disjoint_union(fixtures::rp6(), fixtures::rp6())};
    for (std::uint64_t t = 0; t < 30; ++t) {
        xs.push_back(y(9, "0.35", t, 17));
    }
    for (const auto& x : xs) {
        auto two = betti(x, Coefficients::gf2());
        auto q = betti(x, Coefficients::rationals());
        auto h = h1_integral(x);
        REQUIRE(two.b1 >= q.b1);
        std::size_t even = 0;
        for (auto d : h.invariant_factors) {
            even += d % 2 == 0;
        }
        CHECK(two.b1 - q.b1 == even);
        CHECK(two.b2 - q.b2 == even);
        CHECK(h.rank == q.b1);
    }
}

TEST_CASE("gf2 basis early exit keeps the right rank", "[homology][gf2]")
{
    auto x = y(20, "0.5", 0);
    auto d2 = boundary_matrices(x).d2.to_dense().transposed();
    CHECK(boundary2_rank(x, Coefficients::gf2()) == rank_gf2(d2));
    CHECK(betti(x, Coefficients::gf2()).b1 == 0);
}
