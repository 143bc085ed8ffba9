#include "catch_amalgamated.hpp"

#include "qspr/linalg.hpp"
#include "qspr/repn.hpp"

#include <map>
#include <random>

using namespace qspr;

namespace {

std::map<Weight, int> character(const Rep& v)
{
    std::map<Weight, int> ch;
    for (const auto& w : v.weights()) ++ch[w];
    return ch;
}

}  // namespace

TEST_CASE("small sl2 modules", "[repn]")
{
    auto d = RootDatum::make("A1");
    Rep v = build_module(d, d->omega(0));
    CHECK(v.dim() == 2);
    CHECK(v.weight(0) == d->omega(0));
    CHECK(v.weight(1) == -d->omega(0));
    CHECK(build_module(d, 2 * d->omega(0)).dim() == 3);
    // tau(w1) = diag(q^(1/2), q^(-1/2))
    CHECK(v.tau(d->omega(0)) == ExactMatrix::diagonal({Scalar::q_pow(1, 2), Scalar::q_pow(-1, 2)}));
    CHECK(v.evaluate(Expr(1)) == ExactMatrix::identity(2));
    ExactMatrix comm = v.evaluate(parse_expr(*d, "x1 y1 - y1 x1"));
    CHECK(comm == ExactMatrix::diagonal({Scalar(1), Scalar(-1)}));
    CHECK_THROWS(build_module(d, -d->omega(0)));
}

TEST_CASE("dimensions and relations across types", "[repn]")
{
    std::vector<std::pair<std::string, std::string>> cases{
        {"A2", "w1"}, {"A2", "w1+w2"}, {"A3", "w2"}, {"B2", "w1"}, {"B2", "w2"}, {"C3", "w1"},
        {"G2", "w1"}, {"D4", "w1"},   {"A1xA1", "w1+w2"}, {"F4", "w4"}};
    for (const auto& [t, w] : cases) {
        auto d = RootDatum::make(t);
        Weight mu = d->parse_weight(w);
        Rep v = build_module(d, mu);
        INFO(t << " " << w);
        CHECK(v.dim() == d->weyl_dimension(mu).get_ui());
        CHECK(check_relations(v));
        auto ch = character(v);
        for (const auto& [nu, m] : ch) CHECK(ch[d->w0(nu)] == m);
        for (int i = 0; i < d->rank(); ++i) CHECK(v.x(i).apply(Vector(v.dim(), Scalar()))[0].is_zero());
        // highest weight vector is killed by every x_i
        for (int i = 0; i < d->rank(); ++i)
            for (std::size_t r = 0; r < v.dim(); ++r) CHECK(v.x(i).get(r, 0).is_zero());
    }
}

TEST_CASE("tensor products", "[repn]")
{
    auto d = RootDatum::make("A1");
    Rep v = build_module(d, d->omega(0));
    Rep vv = tensor(v, v);
    CHECK(vv.dim() == 4);
    CHECK(check_relations(vv));
    auto ch = character(vv);
    auto ch2 = character(build_module(d, 2 * d->omega(0)));
    ch2[d->zero()] += 1;
    CHECK(ch == ch2);
    // x on v+ (x) v- is t (x) x + x (x) 1
    ExactMatrix want = kron(v.t(0), v.x(0)) + kron(v.x(0), ExactMatrix::identity(2));
    CHECK(vv.x(0) == want);
    // coproduct evaluation agrees with the tensor action
    Expr e = parse_expr(*d, "x1 y1 t1 + y1");
    CHECK(evaluate_tensor(coproduct(*d, e), {&v, &v}) == vv.evaluate(e));
}

TEST_CASE("antipode and adjoint action in modules", "[repn]")
{
    auto d = RootDatum::make("A2");
    Rep v = build_module(d, d->omega(0) + d->omega(1));
    Expr rho2 = Expr::tau(2 * d->rho()), rho2inv = Expr::tau(-2 * d->rho());
    std::mt19937 rng(5);
    for (const char* s : {"x1", "y2", "x1 y2 t1", "x2 x1 + q y1"}) {
        Expr a = parse_expr(*d, s);
        ExactMatrix lhs = v.evaluate(antipode(*d, antipode(*d, a)));
        CHECK(lhs == v.evaluate(rho2inv * a * rho2));
    }
    // ad_r(y1)(x1) equals the matrix commutator formula
    Expr x1 = Expr::x(0), y1 = Expr::y(0);
    ExactMatrix X = v.x(0), Y = v.y(0), T = v.t(0), Ti = v.t(0, -1);
    CHECK(v.evaluate(ad_r(*d, y1, x1)) == X * Y - Y * T * X * Ti);
    CHECK(v.evaluate(ad_r(*d, x1, Expr(1))).is_zero());
}

TEST_CASE("invariant subspaces and contravariant forms", "[repn]")
{
    auto d = RootDatum::make("A1");
    Rep v = build_module(d, 2 * d->omega(0));
    CHECK(invariant_subspace({{ExactMatrix::identity(3), Scalar(1)}}, 3).size() == 3);
    CHECK(invariant_subspace({{v.x(0), Scalar()}, {v.y(0), Scalar()}}, 3).empty());
    Rep w = build_module(d, d->omega(0));
    Rep ww = tensor(w, w);
    CHECK(invariant_subspace({{ww.x(0), Scalar()}, {ww.y(0), Scalar()}}, 4).size() == 1);

    auto a2 = RootDatum::make("A2");
    Rep m = build_module(a2, a2->omega(0) + a2->omega(1));
    std::vector<Scalar> c{Scalar::q_pow(2), Scalar(3)};
    auto forms = contravariant_forms(m, c);
    REQUIRE(forms.size() == 1);
    ExactMatrix G = forms[0], Gi = inverse(G);
    Expr a = parse_expr(*a2, "x1 y2 x2 + t1 y1");
    CHECK(m.evaluate(kappa_B(*a2, a, c)) == Gi * m.evaluate(a).transpose() * G);
}
