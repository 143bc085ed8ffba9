#include "qspr/uexpr.hpp"

#include <atomic>
#include <cctype>
#include <stdexcept>

namespace qspr {

namespace {

std::atomic<std::size_t> g_word_cap{64};

Letter tau_letter(const Weight& w) { return Letter{Letter::Tau, 0, w}; }

void check_length(const Word& w)
{
    if (w.size() > g_word_cap.load())
        throw std::length_error("word length " + std::to_string(w.size()) + " exceeds cap "
                                + std::to_string(g_word_cap.load()));
}

}  // namespace

std::size_t word_cap() { return g_word_cap.load(); }
void set_word_cap(std::size_t n) { g_word_cap.store(n); }

void append_letter(Word& w, const Letter& l)
{
    if (l.kind == Letter::Tau) {
        if (l.tau.is_zero()) return;
        if (!w.empty() && w.back().kind == Letter::Tau) {
            w.back().tau += l.tau;
            if (w.back().tau.is_zero()) w.pop_back();
            return;
        }
    }
    w.push_back(l);
}

Word concat(const Word& a, const Word& b)
{
    Word r = a;
    r.reserve(a.size() + b.size());
    for (const auto& l : b) append_letter(r, l);
    check_length(r);
    return r;
}

// ---------------------------------------------------------------- Expr

Expr::Expr(const Scalar& s)
{
    if (!s.is_zero()) terms_[Word{}] = s;
}

Expr Expr::word(const Word& w, const Scalar& c)
{
    Expr e;
    Word canon;
    for (const auto& l : w) append_letter(canon, l);
    check_length(canon);
    e.add_term(canon, c);
    return e;
}

Expr Expr::x(int i) { return word({Letter{Letter::X, i, {}}}); }
Expr Expr::y(int i) { return word({Letter{Letter::Y, i, {}}}); }
Expr Expr::tau(const Weight& lambda) { return word({tau_letter(lambda)}); }
Expr Expr::t(const RootDatum& d, int i, long k) { return tau(k * d.alpha(i)); }

std::size_t Expr::max_length() const
{
    std::size_t m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, w.size());
    return m;
}

void Expr::add_term(const Word& w, const Scalar& c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Expr& Expr::operator+=(const Expr& b)
{
    for (const auto& [w, c] : b.terms_) add_term(w, c);
    return *this;
}

Expr& Expr::operator-=(const Expr& b)
{
    for (const auto& [w, c] : b.terms_) add_term(w, -c);
    return *this;
}

Expr Expr::operator-() const
{
    Expr r = *this;
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
}

Expr operator*(const Expr& a, const Expr& b)
{
    Expr r;
    for (const auto& [wa, ca] : a.terms_)
        for (const auto& [wb, cb] : b.terms_) r.add_term(concat(wa, wb), ca * cb);
    return r;
}

Expr operator*(const Scalar& s, const Expr& a)
{
    Expr r;
    if (s.is_zero()) return r;
    for (const auto& [w, c] : a.terms_) r.terms_[w] = s * c;
    return r;
}

Expr Expr::pow(unsigned k) const
{
    Expr r(1);
    for (unsigned i = 0; i < k; ++i) r = r * *this;
    return r;
}

namespace {

std::string letter_str(const RootDatum& d, const Letter& l)
{
    if (l.kind == Letter::X) return "x" + std::to_string(l.index + 1);
    if (l.kind == Letter::Y) return "y" + std::to_string(l.index + 1);
    for (int i = 0; i < d.rank(); ++i) {
        if (l.tau == d.alpha(i)) return "t" + std::to_string(i + 1);
        if (l.tau == -d.alpha(i)) return "t" + std::to_string(i + 1) + "^-1";
    }
    return "tau(" + d.format(l.tau) + ")";
}

}  // namespace

std::string Expr::str(const RootDatum& d) const
{
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        std::string ws;
        for (std::size_t k = 0; k < w.size(); ++k) ws += (k ? "*" : "") + letter_str(d, w[k]);
        std::string cs = c.str();
        bool neg = false;
        if (c == Scalar(-1) && !w.empty()) {
            neg = true;
            cs = "";
        } else if (c.is_one() && !w.empty()) {
            cs = "";
        } else if (cs.find_first_of(" /") != std::string::npos || cs.front() == '-') {
            cs = "(" + cs + ")";
        }
        std::string term = cs.empty() ? ws : (ws.empty() ? cs : cs + "*" + ws);
        if (!first) out += neg ? " - " : " + ";
        else if (neg) out += "-";
        out += term;
        first = false;
    }
    return out;
}

Weight word_weight(const RootDatum& d, const Word& w)
{
    Weight r = d.zero();
    for (const auto& l : w) {
        if (l.kind == Letter::X) r += d.alpha(l.index);
        if (l.kind == Letter::Y) r -= d.alpha(l.index);
    }
    return r;
}

std::optional<Weight> expr_weight(const RootDatum& d, const Expr& e)
{
    std::optional<Weight> w;
    for (const auto& [word, c] : e.terms()) {
        Weight x = word_weight(d, word);
        if (w && !(*w == x)) return std::nullopt;
        w = x;
    }
    return w;
}

// ---------------------------------------------------------------- tensors

void TensorExpr::add_term(std::vector<Word> w, const Scalar& c)
{
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(std::move(w), c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

namespace {

struct Pair {
    Word a, b;
    Scalar c;
};

std::vector<Pair> coproduct_word(const RootDatum& d, const Word& w)
{
    std::vector<Pair> cur{{{}, {}, Scalar(1)}};
    for (const auto& l : w) {
        std::vector<Pair> next;
        next.reserve(cur.size() * 2);
        if (l.kind == Letter::Tau) {
            for (auto& p : cur) {
                append_letter(p.a, l);
                append_letter(p.b, l);
            }
            continue;
        }
        Letter t = tau_letter(d.alpha(l.index));
        Letter tinv = tau_letter(-d.alpha(l.index));
        for (const auto& p : cur) {
            Pair u = p, v = p;
            if (l.kind == Letter::X) {  // t (x) x + x (x) 1
                append_letter(u.a, t);
                append_letter(u.b, l);
                append_letter(v.a, l);
            } else {  // 1 (x) y + y (x) t^-1
                append_letter(u.b, l);
                append_letter(v.a, l);
                append_letter(v.b, tinv);
            }
            next.push_back(std::move(u));
            next.push_back(std::move(v));
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

TensorExpr coproduct(const RootDatum& d, const Expr& e)
{
    TensorExpr t(2);
    for (const auto& [w, c] : e.terms())
        for (auto& p : coproduct_word(d, w)) t.add_term({std::move(p.a), std::move(p.b)}, c * p.c);
    return t;
}

TensorExpr coproduct_on_leg(const RootDatum& d, const TensorExpr& t, std::size_t leg)
{
    TensorExpr r(t.legs() + 1);
    for (const auto& [ws, c] : t.terms())
        for (auto& p : coproduct_word(d, ws[leg])) {
            std::vector<Word> out;
            for (std::size_t k = 0; k < ws.size(); ++k) {
                if (k == leg) {
                    out.push_back(p.a);
                    out.push_back(p.b);
                } else {
                    out.push_back(ws[k]);
                }
            }
            r.add_term(std::move(out), c * p.c);
        }
    return r;
}

TensorExpr flip(const TensorExpr& t)
{
    if (t.legs() != 2) throw std::invalid_argument("flip needs two legs");
    TensorExpr r(2);
    for (const auto& [ws, c] : t.terms()) r.add_term({ws[1], ws[0]}, c);
    return r;
}

// ---------------------------------------------------------------- Hopf maps

Expr antipode(const RootDatum& d, const Expr& e, bool inverse)
{
    Expr r;
    for (const auto& [w, c] : e.terms()) {
        Word out;
        Scalar sign(1);
        for (std::size_t k = w.size(); k-- > 0;) {
            const Letter& l = w[k];
            if (l.kind == Letter::Tau) {
                append_letter(out, tau_letter(-l.tau));
                continue;
            }
            sign = -sign;
            Letter t = tau_letter(d.alpha(l.index)), tinv = tau_letter(-d.alpha(l.index));
            if (l.kind == Letter::X) {
                // sigma(x) = -t^-1 x, sigma^-1(x) = -x t^-1
                if (!inverse) append_letter(out, tinv);
                append_letter(out, l);
                if (inverse) append_letter(out, tinv);
            } else {
                // sigma(y) = -y t, sigma^-1(y) = -t y
                if (inverse) append_letter(out, t);
                append_letter(out, l);
                if (!inverse) append_letter(out, t);
            }
        }
        check_length(out);
        r.add_term(out, sign * c);
    }
    return r;
}

Scalar counit(const Expr& e)
{
    Scalar s;
    for (const auto& [w, c] : e.terms()) {
        bool torus = true;
        for (const auto& l : w)
            if (l.kind != Letter::Tau) torus = false;
        if (torus) s += c;
    }
    return s;
}

Expr kappa_B(const RootDatum& d, const Expr& e, const std::vector<Scalar>& c)
{
    for (const auto& x : c)
        if (x.is_zero()) throw std::invalid_argument("kappa_B parameter c_{B_i} must be nonzero");
    if (static_cast<int>(c.size()) != d.rank()) throw std::invalid_argument("kappa_B needs one parameter per node");
    Expr r;
    for (const auto& [w, coef] : e.terms()) {
        Word out;
        Scalar f = coef;
        for (std::size_t k = w.size(); k-- > 0;) {
            const Letter& l = w[k];
            auto i = static_cast<std::size_t>(l.index);
            if (l.kind == Letter::Tau) {
                append_letter(out, l);
            } else if (l.kind == Letter::X) {  // c y t
                f *= c[i];
                append_letter(out, Letter{Letter::Y, l.index, {}});
                append_letter(out, tau_letter(d.alpha(l.index)));
            } else {  // c^-1 t^-1 x
                f /= c[i];
                append_letter(out, tau_letter(-d.alpha(l.index)));
                append_letter(out, Letter{Letter::X, l.index, {}});
            }
        }
        check_length(out);
        r.add_term(out, f);
    }
    return r;
}

Expr ad_r(const RootDatum& d, const Expr& u, const Expr& v)
{
    Expr r;
    TensorExpr du = coproduct(d, u);
    for (const auto& [ws, c] : du.terms()) {
        Expr left = antipode(d, Expr::word(ws[0]));
        r += c * (left * v * Expr::word(ws[1]));
    }
    return r;
}

Expr ad_l(const RootDatum& d, const Expr& u, const Expr& v)
{
    Expr r;
    TensorExpr du = coproduct(d, u);
    for (const auto& [ws, c] : du.terms()) {
        Expr right = antipode(d, Expr::word(ws[1]));
        r += c * (Expr::word(ws[0]) * v * right);
    }
    return r;
}

// ---------------------------------------------------------------- parser

namespace {

class ExprParser {
public:
    ExprParser(const RootDatum& d, const std::string& s) : d_(d), s_(s) {}

    Expr run()
    {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& why)
    {
        throw std::invalid_argument("malformed expression \"" + s_ + "\": " + why);
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    bool starts_atom()
    {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'x' || c == 'y' || c == 't' || c == 'q';
    }
    Expr expr()
    {
        Expr e;
        if (eat('-'))
            e = -term();
        else {
            eat('+');
            e = term();
        }
        for (;;) {
            if (eat('+'))
                e += term();
            else if (eat('-'))
                e -= term();
            else
                return e;
        }
    }
    Expr term()
    {
        Expr e = factor();
        for (;;) {
            if (eat('*')) {
                e = e * factor();
            } else if (eat('/')) {
                Expr den = factor();
                if (den.terms().size() != 1 || !den.terms().begin()->first.empty()) fail("division by a non-scalar");
                e = den.terms().begin()->second.inverse() * e;
            } else if (starts_atom()) {
                e = e * factor();
            } else {
                return e;
            }
        }
    }
    long integer()
    {
        skip();
        std::size_t st = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (st == pos_) fail("expected integer");
        return std::stol(s_.substr(st, pos_ - st));
    }
    Rational exponent()
    {
        bool paren = eat('(');
        bool neg = false;
        while (true) {
            if (eat('-'))
                neg = !neg;
            else if (!eat('+'))
                break;
        }
        Rational e(integer());
        if (paren && eat('/')) e /= Rational(integer());
        if (paren && !eat(')')) fail("expected ')'");
        e.canonicalize();
        return neg ? Rational(-e) : e;
    }
    Expr inverse_of(const Expr& e)
    {
        if (e.terms().size() != 1) fail("only monomials in tau can be inverted");
        const auto& [w, c] = *e.terms().begin();
        Word inv;
        for (std::size_t k = w.size(); k-- > 0;) {
            if (w[k].kind != Letter::Tau) fail("only monomials in tau can be inverted");
            append_letter(inv, tau_letter(-w[k].tau));
        }
        return Expr::word(inv, c.inverse());
    }
    Expr factor()
    {
        skip();
        if (eat('-')) return -factor();
        Expr base = atom();
        if (eat('^')) {
            Rational e = exponent();
            if (e.get_den() != 1) fail("fractional power");
            long k = e.get_num().get_si();
            if (k < 0) return inverse_of(base).pow(static_cast<unsigned>(-k));
            return base.pow(static_cast<unsigned>(k));
        }
        return base;
    }
    int node()
    {
        long i = integer();
        if (i < 1 || i > d_.rank()) fail("node index out of range");
        return static_cast<int>(i - 1);
    }
    Expr atom()
    {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Expr(Scalar(integer()));
        if (c == 'q') {
            ++pos_;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '^') {
                ++pos_;
                return Expr(Scalar::q_pow(exponent()));
            }
            return Expr(Scalar::q_pow(1));
        }
        if (s_.compare(pos_, 3, "tau") == 0) {
            pos_ += 3;
            if (!eat('(')) fail("expected '(' after tau");
            int depth = 1;
            std::size_t st = pos_;
            while (pos_ < s_.size() && depth > 0) {
                if (s_[pos_] == '(') ++depth;
                if (s_[pos_] == ')') --depth;
                ++pos_;
            }
            if (depth != 0) fail("unterminated tau(");
            return Expr::tau(d_.parse_weight(s_.substr(st, pos_ - 1 - st)));
        }
        ++pos_;
        if (c == 'x') return Expr::x(node());
        if (c == 'y') return Expr::y(node());
        if (c == 't') return Expr::t(d_, node());
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const RootDatum& d_;
    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(const RootDatum& d, const std::string& text) { return ExprParser(d, text).run(); }

}  // namespace qspr
