#include "qspr/repn.hpp"

#include "qspr/linalg.hpp"

#include <map>
#include <stdexcept>

namespace qspr {

Rep::Rep(RootDatumPtr datum, std::vector<Weight> weights, std::vector<ExactMatrix> x, std::vector<ExactMatrix> y,
         std::string label)
    : datum_(std::move(datum)), weights_(std::move(weights)), x_(std::move(x)), y_(std::move(y)),
      label_(std::move(label))
{
}

ExactMatrix Rep::tau(const Weight& lambda) const
{
    Vector d;
    d.reserve(dim());
    for (const auto& w : weights_) d.push_back(Scalar::q_pow(datum_->inner(lambda, w)));
    return ExactMatrix::diagonal(d);
}

namespace {

// rows of m scaled by q^{(lambda, wt(row))}
void scale_rows_by_tau(const Rep& v, const Weight& lambda, ExactMatrix& m)
{
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (m.row(r).empty()) continue;
        Scalar f = Scalar::q_pow(v.datum().inner(lambda, v.weight(r)));
        for (auto& e : m.row(r)) e.val *= f;
    }
}

}  // namespace

ExactMatrix Rep::evaluate(const Expr& e) const
{
    ExactMatrix out(dim(), dim());
    for (const auto& [w, c] : e.terms()) {
        ExactMatrix m = ExactMatrix::identity(dim());
        for (std::size_t k = w.size(); k-- > 0;) {
            const Letter& l = w[k];
            if (l.kind == Letter::Tau)
                scale_rows_by_tau(*this, l.tau, m);
            else if (l.kind == Letter::X)
                m = x(l.index) * m;
            else
                m = y(l.index) * m;
        }
        out += m * c;
    }
    return out;
}

RepCaps& rep_caps()
{
    static RepCaps caps;
    return caps;
}

Rep build_module(const RootDatumPtr& dp, const Weight& mu)
{
    const RootDatum& d = *dp;
    if (mu.size() != static_cast<std::size_t>(d.rank())) throw std::invalid_argument("weight has the wrong rank");
    if (!d.is_dominant(mu)) throw std::invalid_argument("weight " + d.format(mu) + " is not dominant");
    mpz_class predicted = d.weyl_dimension(mu);
    if (predicted > static_cast<unsigned long>(rep_caps().module_dim))
        throw std::length_error("dim V(" + d.format(mu) + ") = " + predicted.get_str() + " exceeds module cap "
                                + std::to_string(rep_caps().module_dim));
    const auto n = static_cast<std::size_t>(d.rank());
    const auto dim = predicted.get_ui();

    std::vector<Weight> weights{mu};
    // xcol[j][b], ycol[i][b]: images of basis vector b as sparse coordinate rows
    std::vector<std::vector<SparseRow>> xcol(n, std::vector<SparseRow>(1)), ycol(n);
    std::size_t level_begin = 0, level_end = 1;

    auto apply_y = [&](int i, const SparseRow& v) {
        SparseRow out;
        for (const auto& e : v) row_axpy(out, e.val, ycol[static_cast<std::size_t>(i)][e.col]);
        return out;
    };

    while (level_begin < level_end) {
        // candidates y_i b for b in the current level, grouped by weight
        struct Cand {
            int i;
            std::size_t b;
            SparseRow image;  // x-images, index j*dim + k
        };
        std::map<Weight, std::vector<Cand>> by_weight;
        std::vector<Weight> order;
        for (std::size_t b = level_begin; b < level_end; ++b)
            for (std::size_t i = 0; i < n; ++i) {
                const int ii = static_cast<int>(i);
                Weight nu = weights[b] - d.alpha(ii);
                Cand c{ii, b, {}};
                for (std::size_t j = 0; j < n; ++j) {
                    SparseRow img;
                    if (!xcol[j][b].empty()) img = apply_y(ii, xcol[j][b]);
                    if (i == j) {
                        Scalar h = Scalar::q_int(weights[b][i], d.qi_exponent(ii));
                        row_axpy(img, h, SparseRow{Entry{b, Scalar(1)}});
                    }
                    for (const auto& e : img) c.image.push_back(Entry{j * dim + e.col, e.val});
                }
                if (c.image.empty()) continue;
                auto [it, fresh] = by_weight.try_emplace(nu);
                if (fresh) order.push_back(nu);
                it->second.push_back(std::move(c));
            }
        std::size_t next_begin = weights.size();
        for (std::size_t i = 0; i < n; ++i) ycol[i].resize(level_end);
        for (const auto& nu : order) {
            auto& cands = by_weight[nu];
            RowSpace span(n * dim);
            std::vector<std::size_t> chosen;
            for (std::size_t k = 0; k < cands.size(); ++k)
                if (span.insert(cands[k].image)) chosen.push_back(k);
            std::size_t first = weights.size();
            if (first + chosen.size() > dim) throw std::logic_error("module construction exceeded predicted dimension");
            for (std::size_t k : chosen) {
                weights.push_back(nu);
                for (std::size_t j = 0; j < n; ++j) {
                    SparseRow xr;
                    for (const auto& e : cands[k].image)
                        if (e.col / dim == j) xr.push_back(Entry{e.col % dim, e.val});
                    xcol[j].push_back(std::move(xr));
                }
            }
            // coordinates of every candidate in the chosen vectors
            ExactMatrix at(n * dim, chosen.size());
            for (std::size_t c = 0; c < chosen.size(); ++c)
                for (const auto& e : cands[chosen[c]].image) at.set(e.col, c, e.val);
            for (auto& cand : cands) {
                Vector rhs(n * dim);
                for (const auto& e : cand.image) rhs[e.col] = e.val;
                SolutionSet s = solve_linear(at, rhs);
                if (!s.consistent || !s.nullspace.empty()) throw std::logic_error("module basis is not independent");
                SparseRow coords;
                for (std::size_t c = 0; c < chosen.size(); ++c)
                    if (!s.particular[c].is_zero()) coords.push_back(Entry{first + c, s.particular[c]});
                ycol[static_cast<std::size_t>(cand.i)][cand.b] = std::move(coords);
            }
        }
        level_begin = next_begin;
        level_end = weights.size();
        for (std::size_t j = 0; j < n; ++j) xcol[j].resize(level_end);
    }
    if (weights.size() != dim)
        throw std::logic_error("V(" + d.format(mu) + ") built with dimension " + std::to_string(weights.size())
                               + ", expected " + std::to_string(dim));
    for (std::size_t i = 0; i < n; ++i) ycol[i].resize(dim);

    std::vector<ExactMatrix> xm, ym;
    for (std::size_t i = 0; i < n; ++i) {
        ExactMatrix X(dim, dim), Y(dim, dim);
        for (std::size_t b = 0; b < dim; ++b) {
            for (const auto& e : xcol[i][b]) X.set(e.col, b, e.val);
            for (const auto& e : ycol[i][b]) Y.set(e.col, b, e.val);
        }
        xm.push_back(std::move(X));
        ym.push_back(std::move(Y));
    }
    return Rep(dp, std::move(weights), std::move(xm), std::move(ym), "V(" + d.format(mu) + ")");
}

Rep trivial_module(const RootDatumPtr& datum)
{
    auto n = static_cast<std::size_t>(datum->rank());
    return Rep(datum, {datum->zero()}, std::vector<ExactMatrix>(n, ExactMatrix(1, 1)),
               std::vector<ExactMatrix>(n, ExactMatrix(1, 1)), "V(0)");
}

Rep tensor(const Rep& v, const Rep& w)
{
    if (v.dim() * w.dim() > rep_caps().tensor_dim)
        throw std::length_error("tensor dimension " + std::to_string(v.dim() * w.dim()) + " exceeds cap "
                                + std::to_string(rep_caps().tensor_dim));
    std::vector<Weight> wts;
    for (const auto& a : v.weights())
        for (const auto& b : w.weights()) wts.push_back(a + b);
    std::vector<ExactMatrix> xm, ym;
    ExactMatrix iv = ExactMatrix::identity(v.dim()), iw = ExactMatrix::identity(w.dim());
    for (int i = 0; i < v.datum().rank(); ++i) {
        xm.push_back(kron(v.t(i), w.x(i)) + kron(v.x(i), iw));
        ym.push_back(kron(iv, w.y(i)) + kron(v.y(i), w.t(i, -1)));
    }
    return Rep(v.datum_ptr(), std::move(wts), std::move(xm), std::move(ym), v.label() + "(x)" + w.label());
}

Rep direct_sum(const std::vector<Rep>& reps)
{
    if (reps.empty()) throw std::invalid_argument("empty direct sum");
    std::vector<Weight> wts;
    std::string label;
    for (const auto& r : reps) {
        wts.insert(wts.end(), r.weights().begin(), r.weights().end());
        label += (label.empty() ? "" : "+") + r.label();
    }
    std::vector<ExactMatrix> xm, ym;
    for (int i = 0; i < reps[0].datum().rank(); ++i) {
        std::vector<ExactMatrix> xb, yb;
        for (const auto& r : reps) {
            xb.push_back(r.x(i));
            yb.push_back(r.y(i));
        }
        xm.push_back(block_diagonal(xb));
        ym.push_back(block_diagonal(yb));
    }
    return Rep(reps[0].datum_ptr(), std::move(wts), std::move(xm), std::move(ym), label);
}

ExactMatrix evaluate_tensor(const TensorExpr& t, const std::vector<const Rep*>& reps)
{
    if (reps.size() != t.legs()) throw std::invalid_argument("tensor leg count mismatch");
    std::size_t dim = 1;
    for (const auto* r : reps) dim *= r->dim();
    ExactMatrix out(dim, dim);
    for (const auto& [ws, c] : t.terms()) {
        ExactMatrix m = reps[0]->evaluate(Expr::word(ws[0]));
        for (std::size_t k = 1; k < ws.size(); ++k) m = kron(m, reps[k]->evaluate(Expr::word(ws[k])));
        out += m * c;
    }
    return out;
}

std::vector<Vector> invariant_subspace(const std::vector<std::pair<ExactMatrix, Scalar>>& ops, std::size_t dim)
{
    std::vector<SparseRow> rows;
    for (const auto& [a, eps] : ops) {
        if (a.rows() != dim || a.cols() != dim) throw std::invalid_argument("operator size mismatch");
        ExactMatrix m = a - ExactMatrix::identity(dim) * eps;
        for (std::size_t r = 0; r < dim; ++r)
            if (!m.row(r).empty()) rows.push_back(m.row(r));
    }
    ExactMatrix stacked(rows.size(), dim);
    for (std::size_t r = 0; r < rows.size(); ++r) stacked.row(r) = std::move(rows[r]);
    return nullspace(stacked);
}

std::vector<ExactMatrix> contravariant_forms(const Rep& v, const std::vector<Scalar>& c)
{
    const RootDatum& d = v.datum();
    std::size_t n = v.dim();
    // unknowns G[a][b] with wt a == wt b
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> var;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (v.weight(a) == v.weight(b)) var.emplace(std::make_pair(a, b), var.size());
    std::vector<SparseRow> eqs;
    for (int i = 0; i < d.rank(); ++i) {
        for (bool is_x : {true, false}) {
            Expr g = is_x ? Expr::x(i) : Expr::y(i);
            ExactMatrix lhs = v.evaluate(kappa_B(d, g, c));  // G lhs = rho^T G
            std::map<std::pair<std::size_t, std::size_t>, SparseRow> acc;
            for (const auto& [ab, k] : var) {
                auto [a, b] = ab;
                // (G lhs)[a][col] += G[a][b] lhs[b][col]
                for (const auto& e : lhs.row(b)) row_axpy(acc[{a, e.col}], e.val, SparseRow{Entry{k, Scalar(1)}});
            }
            ExactMatrix rho = v.evaluate(g);
            for (const auto& [ab, k] : var) {
                auto [a, b] = ab;
                // (rho^T G)[col][b] += rho[a][col] G[a][b]
                for (const auto& e : rho.row(a)) row_axpy(acc[{e.col, b}], -e.val, SparseRow{Entry{k, Scalar(1)}});
            }
            for (auto& [pos, r] : acc)
                if (!r.empty()) eqs.push_back(std::move(r));
        }
    }
    ExactMatrix sys(eqs.size(), var.size());
    for (std::size_t r = 0; r < eqs.size(); ++r) sys.row(r) = std::move(eqs[r]);
    std::vector<ExactMatrix> out;
    for (const auto& vec : nullspace(sys)) {
        ExactMatrix g(n, n);
        for (const auto& [ab, k] : var)
            if (!vec[k].is_zero()) g.set(ab.first, ab.second, vec[k]);
        out.push_back(std::move(g));
    }
    return out;
}

namespace {

Scalar q_binomial(long n, long k, const Rational& b)
{
    Scalar num(1), den(1);
    for (long j = 0; j < k; ++j) {
        num *= Scalar::q_int(n - j, b);
        den *= Scalar::q_int(j + 1, b);
    }
    return num / den;
}

}  // namespace

bool check_relations(const Rep& v)
{
    const RootDatum& d = v.datum();
    std::size_t n = v.dim();
    for (int i = 0; i < d.rank(); ++i) {
        Scalar qi = Scalar::q_pow(d.qi_exponent(i));
        Scalar denom = qi - qi.inverse();
        for (int j = 0; j < d.rank(); ++j) {
            ExactMatrix comm = v.x(i) * v.y(j) - v.y(j) * v.x(i);
            ExactMatrix want(n, n);
            if (i == j) want = (v.t(i) - v.t(i, -1)) * denom.inverse();
            if (!(comm == want)) return false;
            if (i == j) continue;
            long m = 1 - 2 * d.form(i, j) / d.form(i, i);
            for (bool upper : {true, false}) {
                const ExactMatrix& a = upper ? v.x(i) : v.y(i);
                const ExactMatrix& b = upper ? v.x(j) : v.y(j);
                std::vector<ExactMatrix> pw{ExactMatrix::identity(n)};
                for (long k = 1; k <= m; ++k) pw.push_back(a * pw.back());
                ExactMatrix s(n, n);
                for (long k = 0; k <= m; ++k) {
                    Scalar coef = q_binomial(m, k, d.qi_exponent(i));
                    if (k % 2) coef = -coef;
                    s += pw[static_cast<std::size_t>(m - k)] * b * pw[static_cast<std::size_t>(k)] * coef;
                }
                if (!s.is_zero()) return false;
            }
        }
    }
    return true;
}

}  // namespace qspr
