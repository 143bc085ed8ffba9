#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qspr {

using Rational = mpq_class;

// canonical n/d (the two-argument mpq_class constructor does not reduce)
inline Rational frac(long n, long d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

class ScalarError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Session-wide bound N on exponent denominators. Every q-power that enters
// the system must have exponent in (1/N)Z.
int exponent_cap();
void set_exponent_cap(int n);

// Laurent polynomial sum c[k] z^(low + k); c empty means zero, otherwise
// both ends are nonzero.
struct LaurentPoly {
    std::int64_t low = 0;
    std::vector<Rational> c;

    bool is_zero() const { return c.empty(); }
    std::int64_t high() const { return low + static_cast<std::int64_t>(c.size()) - 1; }
    bool operator==(const LaurentPoly&) const = default;
};

// Exact element of Q(q^(1/N)): num/den as Laurent polynomials in z = q^(1/level).
// Canonical form: level minimal, den has lowest exponent 0, leading coefficient 1
// and is coprime to num. Zero is 0/1 at level 1.
class Scalar {
public:
    Scalar() = default;
    Scalar(long v);
    Scalar(int v) : Scalar(static_cast<long>(v)) {}
    explicit Scalar(const Rational& v);

    static Scalar q_pow(const Rational& e);
    static Scalar q_pow(long num, long den = 1) { return q_pow(frac(num, den)); }
    // [n]_{q^b} = (q^{bn} - q^{-bn}) / (q^b - q^{-b})
    static Scalar q_int(long n, const Rational& b = 1);
    static Scalar parse(std::string_view text);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const;
    bool is_monomial() const { return num_.c.size() == 1 && den_.c.size() == 1; }
    int level() const { return level_; }
    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    // size proxy used for pivot selection
    std::size_t complexity() const { return num_.c.size() + den_.c.size(); }

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& b);
    Scalar& operator-=(const Scalar& b);
    Scalar& operator*=(const Scalar& b);
    Scalar& operator/=(const Scalar& b);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar inverse() const;
    Scalar pow(long k) const;

    // q -> q^r
    Scalar substitute(const Rational& r) const;

    bool operator==(const Scalar& b) const
    {
        return level_ == b.level_ && num_ == b.num_ && den_ == b.den_;
    }
    // total order on canonical forms, for deterministic containers
    bool operator<(const Scalar& b) const;

    std::string str() const;

private:
    static Scalar make(int level, LaurentPoly num, LaurentPoly den);
    void canonicalize_level();
    void lift(int level);

    int level_ = 1;
    LaurentPoly num_;
    LaurentPoly den_{0, {Rational(1)}};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

namespace poly {
LaurentPoly add(const LaurentPoly& a, const LaurentPoly& b, int sign = 1);
LaurentPoly mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly scale(const LaurentPoly& a, const Rational& s);
// remainder/quotient for polynomials with low == 0
void divmod(const LaurentPoly& a, const LaurentPoly& b, LaurentPoly& quo, LaurentPoly& rem);
// monic gcd of two polynomials with low == 0
LaurentPoly gcd(LaurentPoly a, LaurentPoly b);
LaurentPoly inflate(const LaurentPoly& a, int k);
void trim(LaurentPoly& a);
}  // namespace poly

}  // namespace qspr
