#include "catch_amalgamated.hpp"

#include "qspr/linalg.hpp"
#include "qspr/qsp.hpp"

using namespace qspr;

namespace {

CoidealPresentation ai_sl2(const Scalar& c)
{
    auto inv = InvolutionDatum::preset("AI", 1);
    auto pr = CoidealParams::defaults(1);
    pr.c[0] = c;
    return build_generators(inv, pr);
}

CoidealPresentation diagonal_a1(long d, const Scalar& c1, const Scalar& c2)
{
    auto inv = InvolutionDatum::diagonal("A1");
    auto pr = CoidealParams::defaults(2);
    pr.d = {Scalar(d), Scalar(d)};
    pr.c = {c1, c2};
    return build_generators(inv, pr);
}

CoidealPresentation aiii_sl4(const Scalar& c1, const Scalar& c3)
{
    auto inv = InvolutionDatum::preset("AIII", 3, 1);
    auto pr = CoidealParams::defaults(3);
    pr.c[0] = c1;
    pr.c[2] = c3;
    return build_generators(inv, pr);
}

}  // namespace

TEST_CASE("AI sl2 generator shapes", "[qsp]")
{
    auto p = ai_sl2(Scalar(1));
    const auto& d = p.datum();
    Expr t = Expr::t(d, 0), ti = Expr::t(d, 0, -1);
    CHECK(p.B[0] == Expr::y(0) * t + ti * Expr::x(0) * t);
    CHECK(p.C[0] == Expr::x(0) + t * Expr::y(0));
    CHECK(p.theta_tilde[0] == ti * Expr::x(0));
    CHECK(p.chain[0].empty());
    CHECK(counit(p.B[0]).is_zero());
}

TEST_CASE("AIII theta tilde has weight -Theta(alpha_1)", "[qsp]")
{
    auto p = aiii_sl4(Scalar(1), Scalar(1));
    const auto& d = p.datum();
    CHECK(p.chain[0] == std::vector<int>{1});
    auto w = expr_weight(d, p.theta_tilde[0]);
    REQUIRE(w.has_value());
    CHECK(*w == -p.inv.theta(d.alpha(0)));
    CHECK(*w == d.alpha(1) + d.alpha(2));
    CHECK(p.C[1].is_zero());
    auto probe = default_probe(p.datum_ptr());
    CHECK(check_presentation(p, probe).ok());
}

TEST_CASE("counit of B_i equals s_i", "[qsp]")
{
    auto inv = InvolutionDatum::preset("AI", 2);
    auto pr = CoidealParams::defaults(2);
    pr.s = {Scalar::parse("q+1"), Scalar(0)};
    auto p = build_generators(inv, pr);
    CHECK(counit(p.B[0]) == Scalar::parse("q+1"));
    CHECK(counit(p.B[1]).is_zero());
    for (const auto& g : p.generators) CHECK(counit(g.expr) == g.eps);
}

TEST_CASE("kappa_B stability depends on c for AI sl2", "[qsp]")
{
    auto p = ai_sl2(Scalar::q_pow(2));
    auto v = build_module(p.datum_ptr(), Weight(std::vector<long>{2}));
    auto bad = check_kappaB_stability(ai_sl2(Scalar(1)), v);
    CHECK(bad.failed());
    auto good = check_kappaB_stability(p, v);
    CHECK(good.ok());
    CHECK(good.span_rank == 3);
    CHECK(good.full_rank == 9);
}

TEST_CASE("kappa_B stability for the diagonal needs c1 c2 = q^2", "[qsp]")
{
    auto p = diagonal_a1(-1, Scalar::q_pow(1), Scalar::q_pow(1));
    auto v = build_module(p.datum_ptr(), p.datum().parse_weight("w1+w2"));
    CHECK(check_kappaB_stability(p, v).ok());
    CHECK(check_kappaB_stability(diagonal_a1(-1, Scalar(1), Scalar::q_pow(2)), v).ok());
    CHECK(check_kappaB_stability(diagonal_a1(-1, Scalar(1), Scalar(1)), v).failed());
}

TEST_CASE("kappa_B stability for AIII sl4", "[qsp]")
{
    auto p = aiii_sl4(Scalar::q_pow(1), Scalar(-1));
    auto probe = default_probe(p.datum_ptr());
    CHECK(check_kappaB_stability(p, probe).ok());
    CHECK(check_kappaB_stability(aiii_sl4(Scalar(1), Scalar(1)), probe).failed());
    auto broken = p;
    broken.params.d[0] = Scalar(2);
    broken = build_generators(p.inv, broken.params);
    CHECK(check_kappaB_stability(broken, probe).failed());
}

TEST_CASE("diagonal commutator fixes the sign of d", "[qsp]")
{
    auto p = diagonal_a1(-1, Scalar(1), Scalar(1));
    auto v = build_module(p.datum_ptr(), p.datum().parse_weight("w1+w2"));
    auto good = check_commutators(p, v);
    CHECK(good.ok());
    auto bad = check_commutators(diagonal_a1(1, Scalar(1), Scalar(1)), v);
    REQUIRE(bad.failed());
    CHECK(bad.items[0].detail == "lhs = (-1) * rhs");
}

TEST_CASE("coideals are left coideals", "[qsp]")
{
    auto s = ai_sl2(Scalar::q_pow(2));
    auto v = build_module(s.datum_ptr(), Weight(std::vector<long>{2}));
    CHECK(check_left_coideal(s, v, v).ok());
    auto p = aiii_sl4(Scalar::q_pow(1), Scalar(-1));
    auto w = build_module(p.datum_ptr(), p.datum().parse_weight("w1"));
    CHECK(check_left_coideal(p, w, w).ok());
}

TEST_CASE("coideal image on small modules", "[qsp]")
{
    auto p = ai_sl2(Scalar::q_pow(2));
    auto v = build_module(p.datum_ptr(), Weight(std::vector<long>{2}));
    CHECK(coideal_basis_matrices(p, v, 0).size() == 1);
    CHECK(coideal_basis_matrices(p, v, 2).size() == 3);
    // the AI coideal is commutative: its image on V(2w1) is three-dimensional
    CHECK(coideal_basis_matrices(p, v, -1).size() == 3);
    auto q = aiii_sl4(Scalar::q_pow(1), Scalar(-1));
    auto w = build_module(q.datum_ptr(), q.datum().parse_weight("w1"));
    auto proj = torus_projectors(q.inv, w);
    ExactMatrix sum = ExactMatrix(w.dim(), w.dim());
    for (std::size_t a = 0; a < proj.size(); ++a) {
        sum = sum + proj[a];
        for (std::size_t b = 0; b < proj.size(); ++b)
            CHECK(proj[a] * proj[b] == (a == b ? proj[a] : ExactMatrix(w.dim(), w.dim())));
    }
    CHECK(sum == ExactMatrix::identity(w.dim()));
}

TEST_CASE("presentation json", "[qsp]")
{
    auto inv = involution_from_json(nlohmann::json{{"preset", "AIII"}, {"rank", 3}, {"r", 1}});
    CHECK(inv.pi_theta() == std::vector<int>{1});
    auto pr = params_from_json(nlohmann::json{{"cB", {{"1", "q"}, {"3", "-1"}}}}, 3);
    CHECK(pr.c[0] == Scalar::q_pow(1));
    CHECK(pr.c[2] == Scalar(-1));
    auto j = to_json(build_generators(inv, pr));
    CHECK(j["nodes"][0]["chain"] == nlohmann::json::array({2}));
    auto diag = involution_from_json(nlohmann::json{{"preset", "diagonal"}, {"type", "A1"}});
    CHECK(diag.datum().rank() == 2);
}
