#include "qspr/scalar.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <numeric>
#include <ostream>
#include <sstream>

namespace qspr {

namespace {

std::atomic<int> g_cap{24};

void check_level(long level)
{
    int cap = g_cap.load();
    if (level <= 0 || cap % level != 0)
        throw ScalarError("exponent not representable over N=" + std::to_string(cap)
                          + " (needs denominator " + std::to_string(level) + ")");
}

const Rational kOne(1);

}  // namespace

int exponent_cap() { return g_cap.load(); }

void set_exponent_cap(int n)
{
    if (n <= 0) throw ScalarError("exponent cap must be positive");
    g_cap.store(n);
}

// ---------------------------------------------------------------- polynomials

namespace poly {

void trim(LaurentPoly& a)
{
    std::size_t first = 0;
    while (first < a.c.size() && a.c[first] == 0) ++first;
    if (first == a.c.size()) {
        a.c.clear();
        a.low = 0;
        return;
    }
    std::size_t last = a.c.size();
    while (a.c[last - 1] == 0) --last;
    if (first > 0 || last < a.c.size()) {
        a.c.erase(a.c.begin() + static_cast<std::ptrdiff_t>(last), a.c.end());
        a.c.erase(a.c.begin(), a.c.begin() + static_cast<std::ptrdiff_t>(first));
        a.low += static_cast<std::int64_t>(first);
    }
}

LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b, int sign)
{
    if (b.is_zero()) return a;
    if (a.is_zero()) return sign > 0 ? b : scale(b, Rational(-1));
    LaurentPoly r;
    r.low = std::min(a.low, b.low);
    std::int64_t hi = std::max(a.high(), b.high());
    r.c.assign(static_cast<std::size_t>(hi - r.low + 1), Rational(0));
    for (std::size_t k = 0; k < a.c.size(); ++k) r.c[static_cast<std::size_t>(a.low - r.low) + k] = a.c[k];
    for (std::size_t k = 0; k < b.c.size(); ++k) {
        auto& t = r.c[static_cast<std::size_t>(b.low - r.low) + k];
        if (sign > 0)
            t += b.c[k];
        else
            t -= b.c[k];
    }
    trim(r);
    return r;
}

LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    LaurentPoly r;
    r.low = a.low + b.low;
    r.c.assign(a.c.size() + b.c.size() - 1, Rational(0));
    mpq_class t;
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j] == 0) continue;
            mpq_mul(t.get_mpq_t(), a.c[i].get_mpq_t(), b.c[j].get_mpq_t());
            r.c[i + j] += t;
        }
    }
    trim(r);
    return r;
}

LaurentPoly scale(const LaurentPoly& a, const Rational& s)
{
    if (s == 0) return {};
    LaurentPoly r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

void divmod(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quo, LaurentPoly& rem)
{
    if (b.is_zero()) throw ScalarError("polynomial division by zero");
    rem = a;
    quo = {};
    if (a.is_zero() || a.c.size() + static_cast<std::size_t>(a.low) < b.c.size() + static_cast<std::size_t>(b.low)) {
        return;
    }
    // dense copies starting at exponent 0
    std::vector<Rational> r(static_cast<std::size_t>(a.high() + 1), Rational(0));
    for (std::size_t k = 0; k < a.c.size(); ++k) r[static_cast<std::size_t>(a.low) + k] = a.c[k];
    std::vector<Rational> bb(static_cast<std::size_t>(b.high() + 1), Rational(0));
    for (std::size_t k = 0; k < b.c.size(); ++k) bb[static_cast<std::size_t>(b.low) + k] = b.c[k];
    std::size_t db = bb.size() - 1;
    std::vector<Rational> q(r.size() - db, Rational(0));
    Rational inv_lead = 1 / bb[db];
    mpq_class t;
    for (std::size_t k = r.size(); k-- > db;) {
        if (r[k] == 0) continue;
        Rational f = r[k] * inv_lead;
        q[k - db] = f;
        for (std::size_t j = 0; j <= db; ++j) {
            if (bb[j] == 0) continue;
            mpq_mul(t.get_mpq_t(), f.get_mpq_t(), bb[j].get_mpq_t());
            r[k - db + j] -= t;
        }
    }
    quo.low = 0;
    quo.c = std::move(q);
    trim(quo);
    r.resize(db);
    rem.low = 0;
    rem.c = std::move(r);
    trim(rem);
}

LaurentPoly gcd(LaurentPoly a, LaurentPoly b)
{
    if (a.is_zero()) std::swap(a, b);
    if (a.is_zero()) return {};
    auto monic = [](LaurentPoly& p) {
        if (p.c.back() != 1) p = scale(p, 1 / p.c.back());
    };
    if (b.is_zero()) {
        monic(a);
        return a;
    }
    if (a.high() < b.high()) std::swap(a, b);
    LaurentPoly q, r;
    while (!b.is_zero()) {
        if (b.c.size() == 1 && b.low == 0) return LaurentPoly{0, {kOne}};
        divmod(a, b, q, r);
        a = std::move(b);
        b = std::move(r);
        if (!b.is_zero()) monic(b);
    }
    monic(a);
    return a;
}

LaurentPoly inflate(const LaurentPoly& a, int k)
{
    if (k == 1 || a.is_zero()) return a;
    LaurentPoly r;
    r.low = a.low * k;
    r.c.assign((a.c.size() - 1) * static_cast<std::size_t>(k) + 1, Rational(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i * static_cast<std::size_t>(k)] = a.c[i];
    return r;
}

}  // namespace poly

// ---------------------------------------------------------------- scalars

namespace {

// exponent map z^e -> z^(a e), a may be negative
LaurentPoly remap(const LaurentPoly& p, long a)
{
    if (p.is_zero()) return {};
    if (a > 0) return poly::inflate(p, static_cast<int>(a));
    LaurentPoly r;
    r.low = -p.high() * (-a);
    r.c.assign((p.c.size() - 1) * static_cast<std::size_t>(-a) + 1, Rational(0));
    for (std::size_t i = 0; i < p.c.size(); ++i) r.c[(p.c.size() - 1 - i) * static_cast<std::size_t>(-a)] = p.c[i];
    return r;
}

bool is_unit_poly(const LaurentPoly& p) { return p.c.size() == 1 && p.low == 0 && p.c[0] == 1; }

LaurentPoly exact_div(const LaurentPoly& a, const LaurentPoly& b)
{
    LaurentPoly sa = a;
    std::int64_t shift = sa.low;
    sa.low = 0;
    LaurentPoly q, r;
    poly::divmod(sa, b, q, r);
    if (!r.is_zero()) throw ScalarError("internal: inexact polynomial division");
    q.low += shift;
    return q;
}

}  // namespace

Scalar::Scalar(long v)
{
    if (v != 0) num_ = LaurentPoly{0, {Rational(v)}};
}

Scalar::Scalar(const Rational& v)
{
    if (v != 0) {
        num_ = LaurentPoly{0, {v}};
        num_.c[0].canonicalize();
    }
}

bool Scalar::is_one() const
{
    return level_ == 1 && num_.c.size() == 1 && num_.low == 0 && num_.c[0] == 1 && is_unit_poly(den_);
}

Scalar Scalar::q_pow(const Rational& e)
{
    Rational r = e;
    r.canonicalize();
    long d = r.get_den().get_si();
    check_level(d);
    Scalar s;
    s.level_ = static_cast<int>(d);
    s.num_ = LaurentPoly{r.get_num().get_si(), {kOne}};
    return s;
}

Scalar Scalar::q_int(long n, const Rational& b)
{
    if (n == 0) return Scalar();
    long m = n < 0 ? -n : n;
    Scalar s;
    for (long k = 0; k < m; ++k) s += q_pow(b * (m - 1 - 2 * k));
    return n < 0 ? -s : s;
}

void Scalar::lift(int level)
{
    if (level == level_) return;
    int k = level / level_;
    num_ = poly::inflate(num_, k);
    den_ = poly::inflate(den_, k);
    level_ = level;
}

void Scalar::canonicalize_level()
{
    if (num_.is_zero()) {
        level_ = 1;
        den_ = LaurentPoly{0, {kOne}};
        return;
    }
    if (level_ == 1) return;
    long g = level_;
    auto scan = [&g](const LaurentPoly& p) {
        for (std::size_t k = 0; k < p.c.size() && g > 1; ++k)
            if (p.c[k] != 0) g = std::gcd(g, static_cast<long>(p.low + static_cast<std::int64_t>(k)));
    };
    scan(num_);
    scan(den_);
    if (g <= 1) return;
    auto deflate = [g](LaurentPoly& p) {
        LaurentPoly r;
        r.low = p.low / g;
        r.c.reserve(p.c.size() / static_cast<std::size_t>(g) + 1);
        for (std::size_t k = 0; k < p.c.size(); k += static_cast<std::size_t>(g)) r.c.push_back(p.c[k]);
        p = std::move(r);
    };
    deflate(num_);
    deflate(den_);
    level_ /= static_cast<int>(g);
}

Scalar Scalar::make(int level, LaurentPoly num, LaurentPoly den)
{
    if (den.is_zero()) throw ScalarError("division by zero");
    Scalar s;
    if (num.is_zero()) return s;
    num.low -= den.low;
    den.low = 0;
    if (den.c.size() > 1) {
        LaurentPoly ns = num;
        std::int64_t shift = ns.low;
        ns.low = 0;
        LaurentPoly g = poly::gcd(ns, den);
        if (g.c.size() > 1) {
            ns = exact_div(ns, g);
            den = exact_div(den, g);
            ns.low += shift;
            num = std::move(ns);
        }
    }
    if (den.c.back() != 1) {
        Rational lc = den.c.back();
        num = poly::scale(num, 1 / lc);
        den = poly::scale(den, 1 / lc);
    }
    s.level_ = level;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.canonicalize_level();
    return s;
}

Scalar Scalar::operator-() const
{
    Scalar r = *this;
    for (auto& x : r.num_.c) x = -x;
    return r;
}

Scalar& Scalar::operator+=(const Scalar& b)
{
    if (b.is_zero()) return *this;
    if (is_zero()) return *this = b;
    int L = std::lcm(level_, b.level_);
    Scalar bb = b;
    lift(L);
    bb.lift(L);
    if (is_unit_poly(den_) && is_unit_poly(bb.den_)) {
        num_ = poly::add(num_, bb.num_);
        canonicalize_level();
        return *this;
    }
    if (den_ == bb.den_) {
        *this = make(L, poly::add(num_, bb.num_), den_);
        return *this;
    }
    LaurentPoly g = poly::gcd(den_, bb.den_);
    LaurentPoly da = den_, db = bb.den_;
    if (g.c.size() > 1) {
        da = exact_div(da, g);
        db = exact_div(db, g);
    }
    LaurentPoly n = poly::add(poly::mul(num_, db), poly::mul(bb.num_, da));
    *this = make(L, std::move(n), poly::mul(den_, db));
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& b) { return *this += -b; }

Scalar operator*(const Scalar& a, const Scalar& b)
{
    if (a.is_zero() || b.is_zero()) return Scalar();
    int L = std::lcm(a.level_, b.level_);
    Scalar x = a, y = b;
    x.lift(L);
    y.lift(L);
    if (is_unit_poly(x.den_) && is_unit_poly(y.den_)) {
        Scalar r;
        r.level_ = L;
        r.num_ = poly::mul(x.num_, y.num_);
        r.canonicalize_level();
        return r;
    }
    if (x.is_monomial() || y.is_monomial()) {
        // a monomial numerator with unit denominator is coprime to everything
        const Scalar& m = x.is_monomial() ? x : y;
        const Scalar& o = x.is_monomial() ? y : x;
        Scalar r;
        r.level_ = L;
        r.num_ = poly::mul(o.num_, m.num_);
        r.den_ = o.den_;
        r.canonicalize_level();
        return r;
    }
    // cross cancellation: gcd(na, db) and gcd(nb, da)
    auto strip = [](LaurentPoly n, LaurentPoly& d) {
        if (d.c.size() <= 1) return n;
        std::int64_t shift = n.low;
        n.low = 0;
        LaurentPoly g = poly::gcd(n, d);
        if (g.c.size() > 1) {
            n = exact_div(n, g);
            d = exact_div(d, g);
        }
        n.low += shift;
        return n;
    };
    LaurentPoly da = x.den_, db = y.den_;
    LaurentPoly na = strip(x.num_, db);
    LaurentPoly nb = strip(y.num_, da);
    LaurentPoly n = poly::mul(na, nb);
    LaurentPoly d = poly::mul(da, db);
    Scalar r;
    r.level_ = L;
    Rational lc = d.c.back();
    if (lc != 1) {
        n = poly::scale(n, 1 / lc);
        d = poly::scale(d, 1 / lc);
    }
    r.num_ = std::move(n);
    r.den_ = std::move(d);
    r.canonicalize_level();
    return r;
}

Scalar& Scalar::operator*=(const Scalar& b) { return *this = *this * b; }

Scalar Scalar::inverse() const
{
    if (is_zero()) throw ScalarError("division by zero");
    return make(level_, den_, num_);
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

Scalar& Scalar::operator/=(const Scalar& b) { return *this = *this / b; }

Scalar Scalar::pow(long k) const
{
    if (k < 0) return inverse().pow(-k);
    Scalar r(1), base = *this;
    while (k > 0) {
        if (k & 1) r *= base;
        k >>= 1;
        if (k) base *= base;
    }
    return r;
}

Scalar Scalar::substitute(const Rational& r) const
{
    Rational e = r;
    e.canonicalize();
    if (e == 0) throw ScalarError("substitution q -> q^0 is a specialization, not supported");
    if (is_zero()) return *this;
    long a = e.get_num().get_si();
    long b = e.get_den().get_si();
    long L = static_cast<long>(level_) * b;
    check_level(L);
    return make(static_cast<int>(L), remap(num_, a), remap(den_, a));
}

bool Scalar::operator<(const Scalar& b) const
{
    if (level_ != b.level_) return level_ < b.level_;
    auto cmp_poly = [](const LaurentPoly& x, const LaurentPoly& y) -> int {
        if (x.low != y.low) return x.low < y.low ? -1 : 1;
        if (x.c.size() != y.c.size()) return x.c.size() < y.c.size() ? -1 : 1;
        for (std::size_t k = 0; k < x.c.size(); ++k) {
            int c = cmp(x.c[k], y.c[k]);
            if (c != 0) return c < 0 ? -1 : 1;
        }
        return 0;
    };
    int c = cmp_poly(num_, b.num_);
    if (c != 0) return c < 0;
    return cmp_poly(den_, b.den_) < 0;
}

// ---------------------------------------------------------------- text

namespace {

std::string format_poly(const LaurentPoly& p, int level, std::size_t& terms)
{
    terms = 0;
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t k = p.c.size(); k-- > 0;) {
        const Rational& c = p.c[k];
        if (c == 0) continue;
        Rational e(p.low + static_cast<std::int64_t>(k), level);
        e.canonicalize();
        bool neg = c < 0;
        Rational mag = neg ? Rational(-c) : c;
        if (terms == 0)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        ++terms;
        if (e == 0) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1) out += mag.get_str() + "*";
        out += "q";
        if (e == 1) continue;
        if (e.get_den() == 1 && e > 0)
            out += "^" + e.get_str();
        else
            out += "^(" + e.get_str() + ")";
    }
    return out;
}

class ScalarParser {
public:
    explicit ScalarParser(std::string_view s) : s_(s) {}

    Scalar run()
    {
        Scalar v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what)
    {
        throw ScalarError("malformed scalar \"" + std::string(s_) + "\": " + what);
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c)
    {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    Scalar expr()
    {
        Scalar v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }
    Scalar term()
    {
        Scalar v = unary();
        for (;;) {
            if (eat('*'))
                v *= unary();
            else if (eat('/'))
                v /= unary();
            else if (starts_factor())
                v *= unary();
            else
                return v;
        }
    }
    bool starts_factor()
    {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return c == '(' || c == 'q';
    }
    Scalar unary()
    {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    Rational exponent()
    {
        bool paren = eat('(');
        bool neg = false;
        while (peek('-') || peek('+'))
            if (s_[pos_++] == '-') neg = !neg;
        Rational e(integer());
        if (paren && eat('/')) {
            mpz_class d = integer();
            if (d == 0) fail("zero exponent denominator");
            e /= Rational(d);
        }
        if (paren && !eat(')')) fail("expected ')' in exponent");
        return neg ? Rational(-e) : e;
    }
    mpz_class integer()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }
    Scalar power()
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == 'q') {
            ++pos_;
            if (eat('^')) return Scalar::q_pow(exponent());
            return Scalar::q_pow(1);
        }
        Scalar base;
        if (eat('(')) {
            base = expr();
            if (!eat(')')) fail("expected ')'");
        } else {
            base = Scalar(Rational(integer()));
        }
        if (eat('^')) {
            Rational e = exponent();
            if (e.get_den() != 1) fail("fractional power of a non-monomial");
            base = base.pow(e.get_num().get_si());
        }
        return base;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string Scalar::str() const
{
    std::size_t nt = 0, dt = 0;
    std::string n = format_poly(num_, level_, nt);
    if (is_unit_poly(den_)) return n;
    std::string d = format_poly(den_, level_, dt);
    if (nt > 1) n = "(" + n + ")";
    return n + " / (" + d + ")";
}

Scalar Scalar::parse(std::string_view text) { return ScalarParser(text).run(); }

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace qspr
