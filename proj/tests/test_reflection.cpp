#include "catch_amalgamated.hpp"

#include "qspr/linalg.hpp"
#include "qspr/reflection.hpp"

using namespace qspr;

namespace {

Weight w1(long k) { return Weight(std::vector<long>{k}); }

CoidealPresentation ai_sl2()
{
    auto pr = CoidealParams::defaults(1);
    pr.c[0] = Scalar::q_pow(2);
    return build_generators(InvolutionDatum::preset("AI", 1), pr);
}

CoidealPresentation diagonal_a1()
{
    auto pr = CoidealParams::defaults(2);
    pr.d = {Scalar(-1), Scalar(-1)};
    pr.c = {Scalar::q_pow(1), Scalar::q_pow(1)};
    return build_generators(InvolutionDatum::diagonal("A1"), pr);
}

CoidealPresentation aiii_sl4()
{
    auto pr = CoidealParams::defaults(3);
    pr.c[0] = Scalar::q_pow(1);
    pr.c[2] = Scalar(-1);
    return build_generators(InvolutionDatum::preset("AIII", 3, 1), pr);
}

Scalar s(const char* text) { return Scalar::parse(text); }

}  // namespace

TEST_CASE("full U has the Casimir as its only invariant", "[reflection]")
{
    auto d = RootDatum::make("A1");
    auto res = solve_invariant_J(d, full_generators(*d), w1(2), "full");
    REQUIRE(res.solutions.size() == 1);
    const ExactMatrix& J = res.solutions[0].J;
    // basis ordered from the highest weight down
    CHECK(J == ExactMatrix::diagonal({Scalar(1), Scalar::q_pow(2), Scalar::q_pow(4)}));
    CHECK(verify_reflection_equation(d, res.solutions[0]).ok);
}

TEST_CASE("AI sl2 solutions", "[reflection]")
{
    auto p = ai_sl2();
    auto one = solve_invariant_J(p, w1(1));
    REQUIRE(one.solutions.size() == 1);
    CHECK(one.solutions[0].J == ExactMatrix::from_dense({{0, Scalar::q_pow(-3)}, {1, 0}}));

    auto two = solve_invariant_J(p, w1(2));
    CHECK(two.invariant_dim == 3);
    REQUIRE(two.solutions.size() == 1);
    const JSolution& sol = two.solutions[0];
    CHECK(sol.J == ExactMatrix::from_dense({{0, 0, s("q^-4 + 2q^-6 + q^-8")},
                                            {0, s("q^-1 + q^-3"), 0},
                                            {1, 0, s("q - q^-3")}}));
    CHECK(verify_reflection_equation(p.datum_ptr(), sol).ok);
    auto t = translate_left_right(p.datum_ptr(), sol);
    CHECK(t.dijk.ok);
    CHECK(untranslate(t) == sol.J);
}

TEST_CASE("AI sl2 invariant dimensions agree", "[reflection]")
{
    auto p = ai_sl2();
    auto sol = solve_invariant_J(p, w1(2)).solutions.at(0);
    for (long k = 0; k <= 4; ++k) {
        auto c = compare_invariants(p, sol, w1(k));
        CHECK(c.equal);
        CHECK(c.dim_B == (k % 2 == 0 ? 1u : 0u));
    }
}

TEST_CASE("L_mu acts by the counit on the trivial module", "[reflection]")
{
    auto p = ai_sl2();
    auto sol = solve_invariant_J(p, w1(2)).solutions.at(0);
    auto a = build_Lmu_action(p.datum_ptr(), sol, w1(0));
    REQUIRE(a.entries.size() == 9);
    for (std::size_t e = 0; e < a.entries.size(); ++e) {
        CHECK(a.entries[e].get(0, 0) == a.eps[e]);
        CHECK(a.eps[e] == sol.J.get(e % 3, e / 3));
    }
}

TEST_CASE("reflection equation rejects perturbations", "[reflection]")
{
    auto p = ai_sl2();
    auto sol = solve_invariant_J(p, w1(2)).solutions.at(0);
    auto d = p.datum_ptr();
    const ExactMatrix& R = r_matrix(d, sol.mu, sol.dual_mu);
    ExactMatrix Rt = compute_Rtilde(R, 3, 3);
    CHECK(verify_reflection_equation(sol.J * Scalar::parse("q^2 - 5"), R, Rt).ok);
    ExactMatrix bad = sol.J;
    bad.set(1, 1, bad.get(1, 1) + Scalar(1));
    auto rep = verify_reflection_equation(bad, R, Rt, 4);
    CHECK_FALSE(rep.ok);
    CHECK(rep.residual_count > 0);
    CHECK(rep.residuals.size() <= 4);
}

TEST_CASE("diagonal sl2 x sl2", "[reflection]")
{
    auto p = diagonal_a1();
    auto d = p.datum_ptr();
    auto res = solve_invariant_J(p, d->parse_weight("w1+w2"));
    CHECK(res.invariant_dim == 2);
    REQUIRE(res.solutions.size() == 1);
    const JSolution& sol = res.solutions[0];
    CHECK(sol.J == ExactMatrix::from_dense({{0, 0, 0, Scalar::q_pow(-4)},
                                            {0, -Scalar::q_pow(-1), 0, 0},
                                            {0, 0, -Scalar::q_pow(-1), 0},
                                            {1, 0, 0, s("-q + q^-1")}}));
    CHECK(translate_left_right(d, sol).dijk.ok);
    // V(a w1 + b w2) has a B-invariant exactly when a = b
    for (long a = 0; a <= 2; ++a)
        for (long b = 0; b <= 2; ++b) {
            auto c = compare_invariants(p, sol, Weight(std::vector<long>{a, b}));
            CHECK(c.equal);
            CHECK(c.dim_B == (a == b ? 1u : 0u));
        }
    auto props = proposition_checks(p, sol.mu, default_probes(*d, 6), {});
    CHECK(props.items.size() == 6);
    CHECK(props.all_hold());
}

TEST_CASE("membership in L_mu", "[reflection]")
{
    auto p = aiii_sl4();
    auto d = p.datum_ptr();
    auto sol = solve_invariant_J(p, d->parse_weight("w1")).solutions.at(0);
    auto probes = default_probes(*d, 6);
    auto in = membership_in_Lmu(d, p.B[0] * Expr::tau(d->parse_weight("w3-w1")), sol, probes);
    CHECK(in.status == Membership::Member);
    auto out = membership_in_Lmu(d, Expr::x(0), sol, probes);
    CHECK(out.status == Membership::NonMember);
    CHECK(out.excluded_at >= 1);
    CHECK(membership_in_Lmu(d, p.B[0], sol, probes).status == Membership::NonMember);
}

TEST_CASE("AIII sl4 checks on L_mu", "[reflection]")
{
    auto p = aiii_sl4();
    auto d = p.datum_ptr();
    auto mu = d->parse_weight("w1");
    auto res = solve_invariant_J(p, mu);
    REQUIRE(res.solutions.size() == 1);
    CHECK(res.solutions[0].J == ExactMatrix::from_dense({{0, 0, 0, -Scalar::q_pow(-4)},
                                                         {0, -Scalar::q_pow(-2), 0, 0},
                                                         {0, 0, -1, 0},
                                                         {1, 0, 0, s("-q^2 - 1")}}));
    auto probes = default_probes(*d, 6);
    auto props = proposition_checks(p, mu, probes, probes);
    for (const auto& i : props.items) {
        INFO(i.name << ": " << i.detail);
        CHECK((i.status == "member" || i.status == "holds" || i.status == "not applicable"));
    }
    CHECK(props.all_hold());
}

TEST_CASE("center candidates stack the lower blocks", "[reflection]")
{
    auto p = ai_sl2();
    auto cands = find_center_candidates(p, w1(4));
    REQUIRE_FALSE(cands.empty());
    for (const auto& c : cands) {
        CHECK(c.blocks.front() == w1(4));
        CHECK(c.blocks.size() == 3);
        CHECK(c.J.size() == 3);
    }
    CHECK(cands.size() <= lspace_invariants(p.generators, simple_module(p.datum_ptr(), w1(4))).size());
}
