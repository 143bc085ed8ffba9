#include "catch_amalgamated.hpp"

#include "qspr/uexpr.hpp"

#include <random>

using namespace qspr;

namespace {

Expr random_expr(const RootDatum& d, std::mt19937& rng, int terms, int len)
{
    std::uniform_int_distribution<int> kind(0, 2), node(0, d.rank() - 1), coef(-3, 3), ex(-2, 2);
    Expr e;
    for (int t = 0; t < terms; ++t) {
        Word w;
        for (int k = 0; k < len; ++k) {
            int i = node(rng);
            switch (kind(rng)) {
            case 0: append_letter(w, Letter{Letter::X, i, {}}); break;
            case 1: append_letter(w, Letter{Letter::Y, i, {}}); break;
            default: append_letter(w, Letter{Letter::Tau, 0, ex(rng) * d.alpha(i)}); break;
            }
        }
        int c = coef(rng);
        e.add_term(w, Scalar::q_pow(ex(rng)) * Scalar(c == 0 ? 1 : c));
    }
    return e;
}

// m (f (x) g) applied to a two-leg tensor
template <class F, class G>
Expr multiply(const TensorExpr& t, F f, G g)
{
    Expr r;
    for (const auto& [ws, c] : t.terms()) r += c * (f(Expr::word(ws[0])) * g(Expr::word(ws[1])));
    return r;
}

}  // namespace

TEST_CASE("parse and print round trip", "[uexpr]")
{
    auto d = RootDatum::make("A2");
    Expr e = parse_expr(*d, "x1 y2 t1^-1 + (q - q^-1)*tau(w1) - 3");
    CHECK(e.terms().size() == 3);
    CHECK(parse_expr(*d, e.str(*d)) == e);
    CHECK(parse_expr(*d, "t1 t1^-1") == Expr(1));
    CHECK(parse_expr(*d, "tau(w1) tau(-w1)") == Expr(1));
    CHECK(parse_expr(*d, "x1 / (q + 1)") == Scalar(1) / Scalar::parse("q + 1") * Expr::x(0));
    CHECK_THROWS(parse_expr(*d, "x3"));
    CHECK_THROWS(parse_expr(*d, "x1^-1"));
    CHECK_THROWS(parse_expr(*d, "x1 / y1"));
}

TEST_CASE("word cap", "[uexpr]")
{
    auto d = RootDatum::make("A1");
    set_word_cap(4);
    CHECK_THROWS_AS(Expr::x(0).pow(5), std::length_error);
    set_word_cap(64);
    CHECK(Expr::x(0).pow(5).max_length() == 5);
}

TEST_CASE("Hopf axioms on random elements", "[uexpr]")
{
    std::mt19937 rng(777);
    for (const char* type : {"A1", "A2", "B2", "G2"}) {
        auto d = RootDatum::make(type);
        for (int trial = 0; trial < 10; ++trial) {
            Expr u = random_expr(*d, rng, 3, 3), v = random_expr(*d, rng, 2, 2);
            TensorExpr du = coproduct(*d, u);
            // coassociativity
            CHECK(coproduct_on_leg(*d, du, 0) == coproduct_on_leg(*d, du, 1));
            // Delta is multiplicative
            TensorExpr dv = coproduct(*d, v), duv = coproduct(*d, u * v), prod(2);
            for (const auto& [a, ca] : du.terms())
                for (const auto& [b, cb] : dv.terms()) prod.add_term({concat(a[0], b[0]), concat(a[1], b[1])}, ca * cb);
            CHECK(prod == duv);
            // antipode and counit axioms
            auto id = [](const Expr& e) { return e; };
            auto s = [&](const Expr& e) { return antipode(*d, e); };
            Expr unit(counit(u));
            CHECK(multiply(du, s, id) == unit);
            CHECK(multiply(du, id, s) == unit);
            auto eps = [](const Expr& e) { return Expr(counit(e)); };
            CHECK(multiply(du, eps, id) == u);
            CHECK(multiply(du, id, eps) == u);
            // sigma^-1 inverts sigma and sigma is antimultiplicative
            CHECK(antipode(*d, antipode(*d, u), true) == u);
            CHECK(antipode(*d, u * v) == antipode(*d, v) * antipode(*d, u));
        }
    }
}

TEST_CASE("kappa_B is an involutive antihomomorphism", "[uexpr]")
{
    std::mt19937 rng(31);
    auto d = RootDatum::make("A3");
    std::vector<Scalar> c{Scalar::q_pow(2), Scalar(3), Scalar::parse("q - 1")};
    for (int trial = 0; trial < 10; ++trial) {
        Expr u = random_expr(*d, rng, 3, 3), v = random_expr(*d, rng, 2, 3);
        CHECK(kappa_B(*d, kappa_B(*d, u, c), c) == u);
        CHECK(kappa_B(*d, u * v, c) == kappa_B(*d, v, c) * kappa_B(*d, u, c));
    }
    CHECK(kappa_B(*d, Expr::x(1), c) == Scalar(3) * (Expr::y(1) * Expr::t(*d, 1)));
    CHECK_THROWS(kappa_B(*d, Expr::x(0), {Scalar(1), Scalar(0), Scalar(1)}));
}

TEST_CASE("adjoint actions on generators", "[uexpr]")
{
    auto d = RootDatum::make("A2");
    Expr x1 = Expr::x(0), v = parse_expr(*d, "y2 x1 + tau(w2)");
    // ad_r(x)v = t^-1 (v x - x v)
    CHECK(ad_r(*d, x1, v) == Expr::t(*d, 0, -1) * (v * x1 - x1 * v));
    // ad_r(tau) v = tau^-1 v tau
    Expr tau = Expr::tau(d->omega(0));
    CHECK(ad_r(*d, tau, v) == Expr::tau(-d->omega(0)) * v * tau);
    // ad_r(uv) = ad_r(v) ad_r(u)
    Expr y2 = Expr::y(1);
    CHECK(ad_r(*d, x1 * y2, v) == ad_r(*d, y2, ad_r(*d, x1, v)));
    CHECK(ad_l(*d, x1 * y2, v) == ad_l(*d, x1, ad_l(*d, y2, v)));
}
