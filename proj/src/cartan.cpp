#include "qspr/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qspr {

// ---------------------------------------------------------------- Weight

bool Weight::is_zero() const
{
    return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

Weight Weight::operator-() const
{
    Weight r = *this;
    for (auto& x : r.v) x = -x;
    return r;
}

Weight& Weight::operator+=(const Weight& b)
{
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += b.v[i];
    return *this;
}

Weight& Weight::operator-=(const Weight& b)
{
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= b.v[i];
    return *this;
}

Weight operator*(long k, Weight a)
{
    for (auto& x : a.v) x *= k;
    return a;
}

// ---------------------------------------------------------------- RootDatum

namespace {

// Gram matrix of simple roots, short roots of squared length 2, Bourbaki numbering.
std::vector<std::vector<long>> simple_form(char fam, int n)
{
    std::vector<std::vector<long>> f(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
    auto link = [&](int i, int j, long v) {
        f[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = v;
        f[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(i - 1)] = v;
    };
    auto len = [&](int i, long v) { f[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(i - 1)] = v; };
    switch (fam) {
    case 'A':
        if (n < 1) break;
        for (int i = 1; i <= n; ++i) len(i, 2);
        for (int i = 1; i < n; ++i) link(i, i + 1, -1);
        return f;
    case 'B':
        if (n < 2) break;
        for (int i = 1; i < n; ++i) len(i, 4);
        len(n, 2);
        for (int i = 1; i < n; ++i) link(i, i + 1, -2);
        return f;
    case 'C':
        if (n < 2) break;
        for (int i = 1; i < n; ++i) len(i, 2);
        len(n, 4);
        for (int i = 1; i < n - 1; ++i) link(i, i + 1, -1);
        link(n - 1, n, -2);
        return f;
    case 'D':
        if (n < 3) break;
        for (int i = 1; i <= n; ++i) len(i, 2);
        for (int i = 1; i < n - 1; ++i) link(i, i + 1, -1);
        link(n - 2, n, -1);
        return f;
    case 'E':
        if (n < 6 || n > 8) break;
        for (int i = 1; i <= n; ++i) len(i, 2);
        link(1, 3, -1);
        link(2, 4, -1);
        for (int i = 3; i < n; ++i) link(i, i + 1, -1);
        return f;
    case 'F':
        if (n != 4) break;
        len(1, 4);
        len(2, 4);
        len(3, 2);
        len(4, 2);
        link(1, 2, -2);
        link(2, 3, -2);
        link(3, 4, -1);
        return f;
    case 'G':
        if (n != 2) break;
        len(1, 2);
        len(2, 6);
        link(1, 2, -3);
        return f;
    default:
        break;
    }
    throw std::invalid_argument(std::string("unsupported type ") + fam + std::to_string(n));
}

std::vector<std::vector<Rational>> rational_inverse(std::vector<std::vector<Rational>> a)
{
    std::size_t n = a.size();
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw std::logic_error("singular Cartan matrix");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        Rational s = 1 / a[c][c];
        for (std::size_t k = 0; k < n; ++k) {
            a[c][k] *= s;
            inv[c][k] *= s;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            Rational f = a[r][c];
            for (std::size_t k = 0; k < n; ++k) {
                a[r][k] -= f * a[c][k];
                inv[r][k] -= f * inv[c][k];
            }
        }
    }
    return inv;
}

}  // namespace

std::shared_ptr<const RootDatum> RootDatum::make(char family, int rank)
{
    return make(std::string(1, family) + std::to_string(rank));
}

std::shared_ptr<const RootDatum> RootDatum::make(const std::string& type)
{
    std::shared_ptr<RootDatum> d(new RootDatum());
    static const std::regex part("([A-Ga-g])([0-9]+)");
    std::string t = type;
    std::size_t start = 0;
    int offset = 0;
    while (start <= t.size()) {
        std::size_t x = t.find_first_of("xX", start);
        std::string piece = t.substr(start, x == std::string::npos ? std::string::npos : x - start);
        std::smatch m;
        if (!std::regex_match(piece, m, part)) throw std::invalid_argument("bad root datum type '" + type + "'");
        char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(m[1].str()[0])));
        int rank = std::stoi(m[2].str());
        simple_form(fam, rank);  // validates
        d->comps_.push_back({fam, rank, offset});
        offset += rank;
        if (x == std::string::npos) break;
        start = x + 1;
    }
    d->n_ = offset;
    d->label_.clear();
    for (std::size_t k = 0; k < d->comps_.size(); ++k) {
        if (k) d->label_ += "x";
        d->label_ += d->comps_[k].family + std::to_string(d->comps_[k].rank);
    }
    d->build();
    return d;
}

void RootDatum::build()
{
    auto n = static_cast<std::size_t>(n_);
    form_.assign(n, std::vector<long>(n, 0));
    for (const auto& c : comps_) {
        auto f = simple_form(c.family, c.rank);
        for (int i = 0; i < c.rank; ++i)
            for (int j = 0; j < c.rank; ++j)
                form_[static_cast<std::size_t>(c.offset + i)][static_cast<std::size_t>(c.offset + j)] =
                    f[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    // labels of alpha_j at i: cartan(j, i); labels = A^T c
    std::vector<std::vector<Rational>> at(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) at[i][j] = cartan(static_cast<int>(j), static_cast<int>(i));
    inv_cartan_t_ = rational_inverse(at);
    omega_form_.assign(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            omega_form_[i][j] = inv_cartan_t_[i][j] * frac(form_[i][i], 2);

    // positive roots by root strings
    std::set<std::vector<long>> seen;
    std::vector<std::vector<long>> roots;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<long> c(n, 0);
        c[i] = 1;
        roots.push_back(c);
        seen.insert(c);
    }
    for (std::size_t k = 0; k < roots.size(); ++k) {
        std::vector<long> beta = roots[k];
        for (std::size_t i = 0; i < n; ++i) {
            long pairing = 0;  // <beta, alpha_i^vee>
            for (std::size_t j = 0; j < n; ++j) pairing += beta[j] * cartan(static_cast<int>(j), static_cast<int>(i));
            long p = 0;
            std::vector<long> down = beta;
            for (;;) {
                down[i] -= 1;
                if (!seen.count(down)) break;
                ++p;
            }
            if (p - pairing > 0) {
                std::vector<long> up = beta;
                up[i] += 1;
                if (seen.insert(up).second) roots.push_back(up);
            }
        }
    }
    std::stable_sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        long ha = std::accumulate(a.begin(), a.end(), 0L), hb = std::accumulate(b.begin(), b.end(), 0L);
        if (ha != hb) return ha < hb;
        return a > b;
    });
    pos_coords_ = roots;
    pos_roots_.clear();
    for (const auto& c : roots) pos_roots_.push_back(from_root_coords(c));

    w0_ = longest_element([&] {
        std::vector<int> all(n);
        std::iota(all.begin(), all.end(), 0);
        return all;
    }());
}

Weight RootDatum::alpha(int i) const
{
    Weight w(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j) w[static_cast<std::size_t>(j)] = cartan(i, j);
    return w;
}

Weight RootDatum::omega(int i) const
{
    Weight w(static_cast<std::size_t>(n_));
    w[static_cast<std::size_t>(i)] = 1;
    return w;
}

Weight RootDatum::rho() const { return Weight(std::vector<long>(static_cast<std::size_t>(n_), 1)); }

Rational RootDatum::inner(const Weight& a, const Weight& b) const
{
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (b[j] != 0) s += omega_form_[i][j] * (a[i] * b[j]);
    }
    return s;
}

std::vector<Rational> RootDatum::root_coords(const Weight& w) const
{
    std::vector<Rational> c(w.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = 0; j < w.size(); ++j)
            if (w[j] != 0) c[i] += inv_cartan_t_[i][j] * w[j];
    return c;
}

Weight RootDatum::from_root_coords(const std::vector<long>& c) const
{
    Weight w(static_cast<std::size_t>(n_));
    for (int j = 0; j < n_; ++j)
        if (c[static_cast<std::size_t>(j)] != 0) w += c[static_cast<std::size_t>(j)] * alpha(j);
    return w;
}

std::optional<std::vector<long>> RootDatum::nonneg_root_coords(const Weight& w) const
{
    auto c = root_coords(w);
    std::vector<long> out;
    for (const auto& x : c) {
        if (x.get_den() != 1 || x < 0) return std::nullopt;
        out.push_back(x.get_num().get_si());
    }
    return out;
}

bool RootDatum::in_root_lattice(const Weight& w) const
{
    for (const auto& x : root_coords(w))
        if (x.get_den() != 1) return false;
    return true;
}

bool RootDatum::is_dominant(const Weight& w) const
{
    return std::all_of(w.v.begin(), w.v.end(), [](long x) { return x >= 0; });
}

Weight RootDatum::reflect(int i, const Weight& w) const
{
    return w - w[static_cast<std::size_t>(i)] * alpha(i);
}

Weight RootDatum::apply(const std::vector<Weight>& images, const Weight& w)
{
    Weight r(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != 0) r += w[i] * images[i];
    return r;
}

std::vector<Weight> RootDatum::longest_element(const std::vector<int>& nodes) const
{
    std::vector<Weight> images;
    for (int i = 0; i < n_; ++i) {
        Weight w = omega(i);
        bool changed = true;
        while (changed) {
            changed = false;
            for (int j : nodes) {
                if (w[static_cast<std::size_t>(j)] > 0) {
                    w = reflect(j, w);
                    changed = true;
                }
            }
        }
        images.push_back(w);
    }
    return images;
}

bool RootDatum::dominance_leq(const Weight& mu, const Weight& gamma) const
{
    return nonneg_root_coords(gamma - mu).has_value();
}

std::vector<Weight> RootDatum::dominant_below(const Weight& mu) const
{
    if (!is_dominant(mu)) throw std::invalid_argument("weight " + format(mu) + " is not dominant");
    std::set<Weight> seen{mu};
    std::deque<Weight> queue{mu};
    while (!queue.empty()) {
        Weight w = queue.front();
        queue.pop_front();
        for (const auto& beta : pos_roots_) {
            Weight x = w - beta;
            if (is_dominant(x) && seen.insert(x).second) queue.push_back(x);
        }
    }
    return {seen.begin(), seen.end()};
}

bool RootDatum::is_minimal(const Weight& mu) const
{
    if (!is_dominant(mu)) throw std::invalid_argument("weight " + format(mu) + " is not dominant");
    if (mu.is_zero()) return false;
    for (const auto& w : dominant_below(mu))
        if (!(w == mu) && !w.is_zero()) return false;
    return true;
}

std::vector<Weight> RootDatum::enumerate_minimal() const
{
    // minimal weights are minuscule or quasi-minuscule on each simple factor
    long bound = std::max<long>(2, static_cast<long>(comps_.size()));
    std::vector<Weight> out;
    Weight w(static_cast<std::size_t>(n_));
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long left) {
        if (i == w.size()) {
            if (!w.is_zero() && is_minimal(w)) out.push_back(w);
            return;
        }
        for (long k = 0; k <= left; ++k) {
            w[i] = k;
            rec(i + 1, left - k);
        }
        w[i] = 0;
    };
    rec(0, bound);
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

mpz_class RootDatum::weyl_dimension(const Weight& mu) const
{
    Weight mr = mu + rho();
    Rational d = 1;
    for (const auto& beta : pos_roots_) d *= inner(mr, beta) / inner(rho(), beta);
    if (d.get_den() != 1) throw std::logic_error("non-integral Weyl dimension");
    return d.get_num();
}

long RootDatum::form_denominator() const
{
    long l = 1;
    for (const auto& row : omega_form_)
        for (const auto& x : row) l = std::lcm(l, x.get_den().get_si());
    return l;
}

std::string RootDatum::format(const Weight& w) const
{
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        long k = w[i];
        if (k == 0) continue;
        if (s.empty())
            s += k < 0 ? "-" : "";
        else
            s += k < 0 ? " - " : " + ";
        long a = k < 0 ? -k : k;
        if (a != 1) s += std::to_string(a) + "*";
        s += "w" + std::to_string(i + 1);
    }
    return s.empty() ? "0" : s;
}

Weight RootDatum::parse_weight(const std::string& text) const
{
    Weight w(static_cast<std::size_t>(n_));
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    auto fail = [&](const std::string& why) -> void {
        throw std::invalid_argument("malformed weight \"" + text + "\": " + why);
    };
    if (t.empty()) fail("empty");
    if (t.front() == '[' || t.front() == '(') {
        if (t.back() != ']' && t.back() != ')') fail("unterminated label list");
        std::stringstream ss(t.substr(1, t.size() - 2));
        std::string item;
        std::size_t i = 0;
        while (std::getline(ss, item, ',')) {
            if (i >= w.size()) fail("too many labels");
            w[i++] = std::stol(item);
        }
        if (i != w.size()) fail("wrong number of labels");
        return w;
    }
    if (t == "0") return w;
    std::size_t pos = 0;
    while (pos < t.size()) {
        long sign = 1;
        if (t[pos] == '+' || t[pos] == '-') {
            sign = t[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (pos != 0) {
            fail("expected + or -");
        }
        long coef = 1;
        std::size_t st = pos;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
        if (pos > st) coef = std::stol(t.substr(st, pos - st));
        if (pos < t.size() && t[pos] == '*') ++pos;
        if (pos >= t.size() || (t[pos] != 'w' && t[pos] != 'a')) {
            if (pos > st && (pos >= t.size() || t[pos] == '+' || t[pos] == '-') && coef == 0) continue;
            fail("expected w<i> or a<i>");
        }
        char kind = t[pos++];
        st = pos;
        while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
        if (pos == st) fail("missing index");
        long idx = std::stol(t.substr(st, pos - st));
        if (idx < 1 || idx > n_) fail("index out of range");
        Weight term = kind == 'w' ? omega(static_cast<int>(idx - 1)) : alpha(static_cast<int>(idx - 1));
        w += (sign * coef) * term;
    }
    return w;
}

// ---------------------------------------------------------------- InvolutionDatum

namespace {

// integer basis of {x in Z^n : M x = 0}, M given by columns images
std::vector<Weight> integer_kernel(const std::vector<std::vector<long>>& M, std::size_t n)
{
    // column operations on M tracked in U; M U = [H | 0]
    std::vector<std::vector<long>> A = M;  // rows
    std::size_t rows = A.size();
    std::vector<std::vector<long>> U(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) U[i][i] = 1;
    auto colop = [&](std::size_t dst, std::size_t src, long f) {  // col dst -= f col src
        for (std::size_t r = 0; r < rows; ++r) A[r][dst] -= f * A[r][src];
        for (std::size_t r = 0; r < n; ++r) U[r][dst] -= f * U[r][src];
    };
    auto colswap = [&](std::size_t a, std::size_t b) {
        for (std::size_t r = 0; r < rows; ++r) std::swap(A[r][a], A[r][b]);
        for (std::size_t r = 0; r < n; ++r) std::swap(U[r][a], U[r][b]);
    };
    std::size_t piv = 0;
    for (std::size_t r = 0; r < rows && piv < n; ++r) {
        for (;;) {
            std::size_t best = n;
            for (std::size_t c = piv; c < n; ++c)
                if (A[r][c] != 0 && (best == n || std::labs(A[r][c]) < std::labs(A[r][best]))) best = c;
            if (best == n) break;
            colswap(piv, best);
            bool done = true;
            for (std::size_t c = piv + 1; c < n; ++c) {
                if (A[r][c] == 0) continue;
                colop(c, piv, A[r][c] / A[r][piv]);
                if (A[r][c] != 0) done = false;
            }
            if (done) {
                ++piv;
                break;
            }
        }
    }
    std::vector<Weight> basis;
    for (std::size_t c = piv; c < n; ++c) {
        Weight w(n);
        for (std::size_t r = 0; r < n; ++r) w[r] = U[r][c];
        basis.push_back(w);
    }
    return basis;
}

}  // namespace

InvolutionDatum::InvolutionDatum(RootDatumPtr datum, std::vector<int> pi_theta, std::vector<int> d, std::string label)
    : datum_(std::move(datum)), pi_theta_(std::move(pi_theta)), d_(std::move(d)), label_(std::move(label))
{
    const RootDatum& D = *datum_;
    int n = D.rank();
    if (d_.empty()) {
        d_.resize(static_cast<std::size_t>(n));
        std::iota(d_.begin(), d_.end(), 0);
    }
    if (static_cast<int>(d_.size()) != n) throw std::invalid_argument("diagram automorphism has wrong size");
    std::vector<int> sorted = d_;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < n; ++i)
        if (sorted[static_cast<std::size_t>(i)] != i) throw std::invalid_argument("d is not a permutation");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (D.form(d_[static_cast<std::size_t>(i)], d_[static_cast<std::size_t>(j)]) != D.form(i, j))
                throw std::invalid_argument("d does not preserve the Cartan matrix");
    std::sort(pi_theta_.begin(), pi_theta_.end());
    in_theta_.assign(static_cast<std::size_t>(n), false);
    for (int j : pi_theta_) {
        if (j < 0 || j >= n) throw std::invalid_argument("pi_theta node out of range");
        in_theta_[static_cast<std::size_t>(j)] = true;
    }
    for (int j : pi_theta_)
        if (!in_theta_[static_cast<std::size_t>(d_[static_cast<std::size_t>(j)])])
            throw std::invalid_argument("d does not preserve pi_theta");

    w0p_ = D.longest_element(pi_theta_);
    theta_.clear();
    for (int i = 0; i < n; ++i) theta_.push_back(-w0prime(D.omega(d_[static_cast<std::size_t>(i)])));
    for (int i = 0; i < n; ++i)
        if (!(theta(theta(D.omega(i))) == D.omega(i))) throw std::invalid_argument("Theta is not an involution");

    p_.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (in_theta_[static_cast<std::size_t>(i)]) {
            p_[static_cast<std::size_t>(i)] = i;
            if (!(theta(D.alpha(i)) == D.alpha(i)))
                throw std::invalid_argument("Theta does not fix alpha_" + std::to_string(i + 1));
            continue;
        }
        auto c = D.root_coords(theta(D.alpha(i)));
        int found = -1;
        for (int k = 0; k < n; ++k) {
            if (in_theta_[static_cast<std::size_t>(k)]) continue;
            const Rational& x = c[static_cast<std::size_t>(k)];
            if (x == 0) continue;
            if (x != -1 || found >= 0) throw std::invalid_argument("not an admissible involution datum");
            found = k;
        }
        if (found < 0) throw std::invalid_argument("not an admissible involution datum");
        p_[static_cast<std::size_t>(i)] = found;
    }

    // fixed lattice: kernel of Theta - id
    std::vector<std::vector<long>> M(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
        Weight col = theta_[static_cast<std::size_t>(i)] - D.omega(i);
        for (int r = 0; r < n; ++r) M[static_cast<std::size_t>(r)][static_cast<std::size_t>(i)] = col[static_cast<std::size_t>(r)];
    }
    fixed_ = integer_kernel(M, static_cast<std::size_t>(n));
}

bool InvolutionDatum::pzb_member(const Weight& mu) const
{
    return theta(mu) == mu + datum_->w0(mu) - w0prime(mu);
}

InvolutionDatum InvolutionDatum::diagonal(const std::string& simple_type)
{
    auto base = RootDatum::make(simple_type);
    if (!base->is_simple()) throw std::invalid_argument("diagonal pair needs a simple type");
    int n = base->rank();
    auto datum = RootDatum::make(simple_type + "x" + simple_type);
    std::vector<int> d(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        d[static_cast<std::size_t>(i)] = i + n;
        d[static_cast<std::size_t>(i + n)] = i;
    }
    return InvolutionDatum(datum, {}, d, "diagonal");
}

InvolutionDatum InvolutionDatum::preset(const std::string& label, int n, int r)
{
    auto range = [](int a, int b) {  // 1-based inclusive -> 0-based
        std::vector<int> v;
        for (int i = a; i <= b; ++i) v.push_back(i - 1);
        return v;
    };
    auto nodes = [](std::initializer_list<int> l) {
        std::vector<int> v;
        for (int i : l) v.push_back(i - 1);
        return v;
    };
    auto ident = [](int m) {
        std::vector<int> v(static_cast<std::size_t>(m));
        std::iota(v.begin(), v.end(), 0);
        return v;
    };
    auto flip = [](int m) {
        std::vector<int> v(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) v[static_cast<std::size_t>(i)] = m - 1 - i;
        return v;
    };
    auto swap_last = [&](int m) {
        auto v = ident(m);
        std::swap(v[static_cast<std::size_t>(m - 2)], v[static_cast<std::size_t>(m - 1)]);
        return v;
    };
    auto bad = [&](const std::string& why) -> InvolutionDatum {
        throw std::invalid_argument("preset " + label + ": " + why);
    };
    if (label == "diagonal") return bad("use the diagonal constructor with a simple type");
    if (label == "AI") return InvolutionDatum(RootDatum::make('A', n), {}, ident(n), label);
    if (label == "AII") {
        if (n % 2 == 0) return bad("AII needs odd rank");
        std::vector<int> j;
        for (int i = 1; i <= n; i += 2) j.push_back(i - 1);
        return InvolutionDatum(RootDatum::make('A', n), j, ident(n), label);
    }
    if (label == "AIII" || label == "AIV") {
        if (label == "AIV") r = 1;
        if (r < 1 || 2 * r > n + 1) return bad("need 1 <= r <= (n+1)/2");
        return InvolutionDatum(RootDatum::make('A', n), range(r + 1, n - r), flip(n), label);
    }
    if (label == "BI" || label == "BII") {
        if (label == "BII") r = 1;
        if (r < 1 || r > n) return bad("need 1 <= r <= n");
        return InvolutionDatum(RootDatum::make('B', n), range(r + 1, n), ident(n), label);
    }
    if (label == "CI") return InvolutionDatum(RootDatum::make('C', n), {}, ident(n), label);
    if (label == "CII") {
        if (r < 1 || 2 * r > n) return bad("need 1 <= r <= n/2");
        std::vector<int> j;
        for (int i = 1; i <= 2 * r - 1; i += 2) j.push_back(i - 1);
        for (int i = 2 * r + 1; i <= n; ++i) j.push_back(i - 1);
        return InvolutionDatum(RootDatum::make('C', n), j, ident(n), label);
    }
    if (label == "DI" || label == "DII") {
        if (label == "DII") r = 1;
        if (r < 1 || r > n) return bad("need 1 <= r <= n");
        auto D = RootDatum::make('D', n);
        // the black D_{n-r} block forces the end swap when n - r is odd
        if (r <= n - 2) return InvolutionDatum(D, range(r + 1, n), (n - r) % 2 ? swap_last(n) : ident(n), label);
        if (r == n - 1) return InvolutionDatum(D, {}, swap_last(n), label);
        return InvolutionDatum(D, {}, ident(n), label);
    }
    if (label == "DIII") {
        auto D = RootDatum::make('D', n);
        std::vector<int> j;
        if (n % 2 == 0) {
            for (int i = 1; i <= n - 1; i += 2) j.push_back(i - 1);
            return InvolutionDatum(D, j, ident(n), label);
        }
        for (int i = 1; i <= n - 2; i += 2) j.push_back(i - 1);
        return InvolutionDatum(D, j, swap_last(n), label);
    }
    auto e6flip = std::vector<int>{5, 1, 4, 3, 2, 0};
    if (label == "EI") return InvolutionDatum(RootDatum::make('E', 6), {}, ident(6), label);
    if (label == "EII") return InvolutionDatum(RootDatum::make('E', 6), {}, e6flip, label);
    if (label == "EIII") return InvolutionDatum(RootDatum::make('E', 6), nodes({3, 4, 5}), e6flip, label);
    if (label == "EIV") return InvolutionDatum(RootDatum::make('E', 6), nodes({2, 3, 4, 5}), ident(6), label);
    if (label == "EV") return InvolutionDatum(RootDatum::make('E', 7), {}, ident(7), label);
    if (label == "EVI") return InvolutionDatum(RootDatum::make('E', 7), nodes({2, 5, 7}), ident(7), label);
    if (label == "EVII") return InvolutionDatum(RootDatum::make('E', 7), nodes({2, 3, 4, 5}), ident(7), label);
    if (label == "EVIII") return InvolutionDatum(RootDatum::make('E', 8), {}, ident(8), label);
    if (label == "EIX") return InvolutionDatum(RootDatum::make('E', 8), nodes({2, 3, 4, 5}), ident(8), label);
    if (label == "FI") return InvolutionDatum(RootDatum::make('F', 4), {}, ident(4), label);
    if (label == "FII") return InvolutionDatum(RootDatum::make('F', 4), nodes({1, 2, 3}), ident(4), label);
    if (label == "G") return InvolutionDatum(RootDatum::make('G', 2), {}, ident(2), label);
    return bad("unknown preset");
}

// ---------------------------------------------------------------- tables

const std::vector<TableRow>& minimal_weight_table()
{
    static const std::vector<TableRow> rows = {
        {"$A_n$", "$\\omega_1,\\dots,\\omega_n, \\omega_1{+}\\omega_n$"},
        {"$B_n$", "$\\omega_1,\\omega_n$"},
        {"$C_n$", "$\\omega_1,\\,\\omega_2$"},
        {"$D_n$", "$\\omega_1,\\,\\omega_2,\\,\\omega_{n-1},\\,\\omega_n$"},
        {"$E_6$", "$\\omega_1,\\,\\omega_2,\\,\\omega_6$"},
        {"$E_7$", "$\\omega_1,\\,\\omega_2$"},
        {"$E_8$", "$\\omega_8$"},
        {"$F_4$", "$\\omega_4$"},
        {"$G_2$", "$\\omega_1$"},
    };
    return rows;
}

const std::vector<TableRow>& pzb_minimal_table()
{
    static const std::vector<TableRow> rows = {
        {"$AI$, $AII$", "$\\omega_1+\\omega_n$"},
        {"$AIII$, $AIV$", "$\\omega_1,\\dots,\\omega_n, \\omega_1{+}\\omega_n$"},
        {"$B_n$", "$\\omega_1,\\omega_n$"},
        {"$C_n$", "$\\omega_1,\\,\\omega_2$"},
        {"($DI$, case 1), $r$ even", "$\\omega_1,\\,\\omega_2,\\,\\omega_{n-1},\\,\\omega_n$"},
        {"($DI$, case 1), $DII$, $r$ odd", "$\\omega_1,\\,\\omega_2$"},
        {"($DI$, case 2,3), ($DIII$, case 1), $n$ even", "$\\omega_1,\\,\\omega_2,\\,\\omega_{n-1},\\,\\omega_n$"},
        {"($DI$, case 2,3), ($DIII$, case 1), $n$ odd", "$\\omega_1,\\,\\omega_2$"},
        {"($DIII$, case 2)", "$\\omega_1,\\,\\omega_2, \\,\\omega_{n-1},\\,\\omega_n$"},
        {"$EI$, $EIV$", "$\\omega_2$"},
        {"$EII$, $EIII$", "$\\omega_1,\\,\\omega_2,\\,\\omega_6$"},
        {"$E_7$", "$\\omega_1,\\,\\omega_2$"},
        {"$E_8$", "$\\omega_8$"},
        {"$F_4$", "$\\omega_4$"},
        {"$G_2$", "$\\omega_1$"},
    };
    return rows;
}

std::vector<Weight> instantiate_table_entry(const RootDatum& datum, const std::string& entries)
{
    int n = datum.rank();
    std::string s;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (entries.compare(i, 2, "\\,") == 0) {
            ++i;
            continue;
        }
        if (entries.compare(i, 3, "{+}") == 0) {
            s += '+';
            i += 2;
            continue;
        }
        if (entries[i] == '$' || entries[i] == ' ') continue;
        s += entries[i];
    }
    // s like \omega_1,\dots,\omega_n,\omega_1+\omega_n or \omega_{n-1}
    auto index = [&](const std::string& t) -> int {
        std::string x = t;
        if (!x.empty() && x.front() == '{') x = x.substr(1, x.size() - 2);
        if (x == "n") return n;
        if (x == "n-1") return n - 1;
        return std::stoi(x);
    };
    auto term = [&](const std::string& t) -> Weight {
        Weight w(static_cast<std::size_t>(n));
        std::size_t pos = 0;
        while (pos < t.size()) {
            std::size_t k = t.find("\\omega_", pos);
            if (k != pos) throw std::invalid_argument("unparsed table entry '" + t + "'");
            pos = k + 7;
            std::size_t end = pos;
            if (t[pos] == '{')
                end = t.find('}', pos) + 1;
            else
                while (end < t.size() && t[end] != '+') ++end;
            int idx = index(t.substr(pos, end - pos));
            if (idx < 1 || idx > n) throw std::invalid_argument("table index out of range");
            w[static_cast<std::size_t>(idx - 1)] += 1;
            pos = end;
            if (pos < t.size() && t[pos] == '+') ++pos;
        }
        return w;
    };
    std::vector<std::string> items;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) items.push_back(item);
    std::vector<Weight> out;
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (items[k] == "\\dots") {
            Weight a = term(items[k - 1]), b = term(items[k + 1]);
            int ia = static_cast<int>(std::find(a.v.begin(), a.v.end(), 1) - a.v.begin());
            int ib = static_cast<int>(std::find(b.v.begin(), b.v.end(), 1) - b.v.begin());
            for (int i = ia + 1; i < ib; ++i) out.push_back(datum.omega(i));
            continue;
        }
        out.push_back(term(items[k]));
    }
    std::sort(out.begin(), out.end(), std::greater<>());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<std::string> table1_entry(const RootDatum& d)
{
    if (!d.is_simple()) return std::nullopt;
    const auto& c = d.components().front();
    std::string key = std::string("$") + c.family + "_";
    key += (c.family == 'E' || c.family == 'F' || c.family == 'G') ? std::to_string(c.rank) : std::string("n");
    key += "$";
    for (const auto& row : minimal_weight_table())
        if (row.key == key) return row.entries;
    return std::nullopt;
}

std::optional<TableRow> table2_row(const InvolutionDatum& inv, int r)
{
    const std::string& L = inv.label();
    int n = inv.datum().rank();
    const auto& rows = pzb_minimal_table();
    auto pick = [&](std::size_t k) -> std::optional<TableRow> { return rows[k]; };
    if (L == "AI" || L == "AII") return pick(0);
    if (L == "AIII" || L == "AIV") return pick(1);
    if (L == "BI" || L == "BII") return pick(2);
    if (L == "CI" || L == "CII") return pick(3);
    if (L == "DII") return pick(5);
    if (L == "DI") {
        if (r <= n - 2) return pick(r % 2 == 0 ? 4 : 5);
        return pick(n % 2 == 0 ? 6 : 7);
    }
    if (L == "DIII") return pick(n % 2 == 0 ? 6 : 8);
    if (L == "EI" || L == "EIV") return pick(9);
    if (L == "EII" || L == "EIII") return pick(10);
    if (L == "EV" || L == "EVI" || L == "EVII") return pick(11);
    if (L == "EVIII" || L == "EIX") return pick(12);
    if (L == "FI" || L == "FII") return pick(13);
    if (L == "G") return pick(14);
    return std::nullopt;
}

PzbComparison pzb_table_compare(const InvolutionDatum& inv, int r)
{
    const RootDatum& D = inv.datum();
    PzbComparison out;
    for (const auto& w : D.enumerate_minimal())
        if (inv.pzb_member(w)) out.equation_minimal.push_back(w);
    if (inv.label() == "diagonal") {
        // g' + g': minimal members are (lambda, -w0 lambda) with lambda minimal, not in the root lattice
        int n = D.rank() / 2;
        auto base = RootDatum::make(D.components().front().family, n);
        auto entry = table1_entry(*base);
        if (!entry) throw std::invalid_argument("no Table 1 row for " + base->label());
        for (const auto& lam : instantiate_table_entry(*base, *entry)) {
            if (base->in_root_lattice(lam)) continue;
            Weight other = -base->w0(lam);
            Weight w(static_cast<std::size_t>(2 * n));
            for (int i = 0; i < n; ++i) {
                w[static_cast<std::size_t>(i)] = lam[static_cast<std::size_t>(i)];
                w[static_cast<std::size_t>(i + n)] = other[static_cast<std::size_t>(i)];
            }
            out.table.push_back(w);
        }
        out.has_table = true;
        out.derived_reference = true;
        out.table_key = "derived from Table 1 of " + base->label();
    } else {
        if (inv.label().empty()) throw std::invalid_argument("pzb_table_compare needs a labelled involution");
        auto row = table2_row(inv, r);
        if (!row) throw std::invalid_argument("no Table 2 row for label " + inv.label());
        out.has_table = true;
        out.table_key = row->key;
        out.table = instantiate_table_entry(D, row->entries);
    }
    std::sort(out.table.begin(), out.table.end(), std::greater<>());
    for (const auto& w : out.equation_minimal)
        if (std::find(out.table.begin(), out.table.end(), w) == out.table.end()) out.only_equation.push_back(w);
    for (const auto& w : out.table)
        if (std::find(out.equation_minimal.begin(), out.equation_minimal.end(), w) == out.equation_minimal.end())
            out.only_table.push_back(w);
    return out;
}

}  // namespace qspr
