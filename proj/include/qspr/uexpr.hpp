#pragma once

#include "qspr/cartan.hpp"
#include "qspr/scalar.hpp"

#include <map>
#include <string>
#include <vector>

namespace qspr {

struct Letter {
    enum Kind : unsigned char { X, Y, Tau };
    Kind kind = Tau;
    int index = 0;  // node for X and Y
    Weight tau;     // for Tau

    bool operator==(const Letter&) const = default;
    auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

// Maximum word length accepted by products and coproducts.
std::size_t word_cap();
void set_word_cap(std::size_t n);

// Append with tau merging; tau(0) is dropped.
void append_letter(Word& w, const Letter& l);
Word concat(const Word& a, const Word& b);

// Formal linear combination of words in x_i, y_i, tau(lambda).
class Expr {
public:
    Expr() = default;
    Expr(const Scalar& s);
    Expr(long s) : Expr(Scalar(s)) {}

    static Expr word(const Word& w, const Scalar& c = Scalar(1));
    static Expr x(int i);
    static Expr y(int i);
    static Expr tau(const Weight& lambda);
    // t_i^k = tau(k alpha_i)
    static Expr t(const RootDatum& d, int i, long k = 1);

    const std::map<Word, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t max_length() const;

    Expr& operator+=(const Expr& b);
    Expr& operator-=(const Expr& b);
    Expr operator-() const;
    friend Expr operator+(Expr a, const Expr& b) { return a += b; }
    friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
    friend Expr operator*(const Expr& a, const Expr& b);
    friend Expr operator*(const Scalar& s, const Expr& a);
    Expr pow(unsigned k) const;
    bool operator==(const Expr&) const = default;

    void add_term(const Word& w, const Scalar& c);
    std::string str(const RootDatum& d) const;

private:
    std::map<Word, Scalar> terms_;
};

// Q(pi)-weight of a word (tau letters have weight 0)
Weight word_weight(const RootDatum& d, const Word& w);
// weight of e if homogeneous
std::optional<Weight> expr_weight(const RootDatum& d, const Expr& e);

// Formal sums of k-fold tensors of words.
class TensorExpr {
public:
    explicit TensorExpr(std::size_t legs = 2) : legs_(legs) {}

    std::size_t legs() const { return legs_; }
    const std::map<std::vector<Word>, Scalar>& terms() const { return terms_; }
    void add_term(std::vector<Word> w, const Scalar& c);
    bool operator==(const TensorExpr&) const = default;

private:
    std::size_t legs_;
    std::map<std::vector<Word>, Scalar> terms_;
};

TensorExpr coproduct(const RootDatum& d, const Expr& e);
// apply the coproduct to one leg, producing legs + 1 legs
TensorExpr coproduct_on_leg(const RootDatum& d, const TensorExpr& t, std::size_t leg);
// flip of a two-leg tensor
TensorExpr flip(const TensorExpr& t);

Expr antipode(const RootDatum& d, const Expr& e, bool inverse = false);
Scalar counit(const Expr& e);
// c[i] = c_{B_i}, all nonzero
Expr kappa_B(const RootDatum& d, const Expr& e, const std::vector<Scalar>& c);

// ad_r(u)v = sigma(u_(1)) v u_(2);  ad_l(u)v = u_(1) v sigma(u_(2))
Expr ad_r(const RootDatum& d, const Expr& u, const Expr& v);
Expr ad_l(const RootDatum& d, const Expr& u, const Expr& v);

// text: x1, y2, t1^-1, tau(2*w1 - w2), products by juxtaposition or *, sums
Expr parse_expr(const RootDatum& d, const std::string& text);

}  // namespace qspr
