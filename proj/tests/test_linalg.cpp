#include "catch_amalgamated.hpp"

#include "qspr/linalg.hpp"

#include <random>

using namespace qspr;

namespace {

Scalar S(const char* s) { return Scalar::parse(s); }

bool is_solution(const ExactMatrix& a, const Vector& x, const Vector& b)
{
    Vector ax = a.apply(x);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (!(ax[i] == b[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("solve identity", "[linalg]")
{
    auto s = solve_linear(ExactMatrix::identity(2), {Scalar(1), S("q")});
    REQUIRE(s.consistent);
    CHECK(s.particular[0] == Scalar(1));
    CHECK(s.particular[1] == S("q"));
    CHECK(s.nullspace.empty());
}

TEST_CASE("single relation nullspace", "[linalg]")
{
    auto a = ExactMatrix::from_dense({{S("q"), S("q^2")}});
    auto s = solve_linear(a, {Scalar()});
    REQUIRE(s.consistent);
    REQUIRE(s.nullspace.size() == 1);
    const auto& v = s.nullspace[0];
    // proportional to (q, -1)
    CHECK(v[0] * Scalar(-1) == v[1] * S("q"));
}

TEST_CASE("nullspace sizes", "[linalg]")
{
    CHECK(nullspace(ExactMatrix(3, 3)).size() == 3);
    CHECK(nullspace(ExactMatrix::identity(3)).empty());
    auto a = ExactMatrix::from_dense({{Scalar(1), S("q")}, {S("q^-1"), Scalar(1)}});
    // 2x2 minor: 1 - q*q^-1 = 0
    CHECK(rank(a) == 1);
    CHECK(nullspace(a).size() == 1);
}

TEST_CASE("inconsistent system", "[linalg]")
{
    auto a = ExactMatrix::from_dense({{Scalar(1), Scalar(1)}, {Scalar(2), Scalar(2)}});
    CHECK_FALSE(solve_linear(a, {Scalar(1), Scalar(3)}).consistent);
}

TEST_CASE("round trip on random Laurent monomial systems", "[linalg][property]")
{
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> e(-3, 3), c(-2, 2);
    for (int it = 0; it < 5; ++it) {
        std::vector<Vector> rows(5, Vector(5));
        for (auto& r : rows)
            for (auto& x : r) x = Scalar(c(rng)) * Scalar::q_pow(e(rng));
        ExactMatrix a = ExactMatrix::from_dense(rows);
        Vector x(5);
        for (auto& v : x) v = Scalar(c(rng)) * Scalar::q_pow(e(rng)) + Scalar(1);
        Vector b = a.apply(x);
        auto s = solve_linear(a, b);
        REQUIRE(s.consistent);
        CHECK(is_solution(a, s.particular, b));
        CHECK(rank(a) + s.nullspace.size() == 5);
        for (const auto& n : s.nullspace) CHECK(is_solution(a, n, Vector(5)));
        if (s.nullspace.empty()) CHECK(s.particular == x);
        if (s.nullspace.empty()) CHECK(inverse(a) * a == ExactMatrix::identity(5));
    }
}

TEST_CASE("row space", "[linalg]")
{
    RowSpace rs(3);
    CHECK(rs.insert(row_from_dense({Scalar(1), S("q"), Scalar()})));
    CHECK(rs.insert(row_from_dense({Scalar(), Scalar(1), Scalar(1)})));
    CHECK_FALSE(rs.insert(row_from_dense({Scalar(1), S("q + 1"), Scalar(1)})));
    CHECK(rs.contains(row_from_dense({Scalar(2), S("2*q"), Scalar()})));
    CHECK(rs.rank() == 2);
}
