#include "qspr/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace qspr {

namespace {

void scale_row(SparseRow& r, const Scalar& s)
{
    for (auto& e : r) e.val *= s;
}

Scalar entry_at(const SparseRow& r, std::size_t c)
{
    auto it = std::lower_bound(r.begin(), r.end(), c, [](const Entry& e, std::size_t k) { return e.col < k; });
    if (it != r.end() && it->col == c) return it->val;
    return Scalar();
}

}  // namespace

Echelon rref(std::vector<SparseRow> rows, std::size_t cols)
{
    Echelon out;
    out.cols = cols;
    // bucket rows by leading column
    std::map<std::size_t, std::vector<std::size_t>> lead;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].empty()) lead[rows[i].front().col].push_back(i);

    std::vector<std::size_t> pivot_rows;
    while (!lead.empty()) {
        auto it = lead.begin();
        std::size_t c = it->first;
        std::vector<std::size_t> cand = std::move(it->second);
        lead.erase(it);
        std::sort(cand.begin(), cand.end());
        std::size_t best = 0;
        for (std::size_t k = 1; k < cand.size(); ++k) {
            const auto& a = rows[cand[k]];
            const auto& b = rows[cand[best]];
            auto ca = a.front().val.complexity(), cb = b.front().val.complexity();
            if (ca < cb || (ca == cb && a.size() < b.size())) best = k;
        }
        std::size_t p = cand[best];
        scale_row(rows[p], rows[p].front().val.inverse());
        for (std::size_t k = 0; k < cand.size(); ++k) {
            if (k == best) continue;
            auto& r = rows[cand[k]];
            Scalar f = -r.front().val;
            row_axpy(r, f, rows[p]);
            if (!r.empty()) lead[r.front().col].push_back(cand[k]);
        }
        pivot_rows.push_back(p);
        out.pivots.push_back(c);
    }
    // back substitution
    for (std::size_t k = pivot_rows.size(); k-- > 0;) {
        std::size_t c = out.pivots[k];
        const SparseRow& pr = rows[pivot_rows[k]];
        for (std::size_t j = 0; j < k; ++j) {
            auto& r = rows[pivot_rows[j]];
            Scalar v = entry_at(r, c);
            if (!v.is_zero()) row_axpy(r, -v, pr);
        }
    }
    out.rows.reserve(pivot_rows.size());
    for (std::size_t p : pivot_rows) out.rows.push_back(std::move(rows[p]));
    return out;
}

Echelon rref(const ExactMatrix& a)
{
    std::vector<SparseRow> rows(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) rows[i] = a.row(i);
    return rref(std::move(rows), a.cols());
}

std::size_t rank(const ExactMatrix& a) { return rref(a).rank(); }

namespace {

std::vector<Vector> kernel_from(const Echelon& e, std::size_t cols)
{
    std::vector<char> is_pivot(cols, 0);
    for (auto p : e.pivots)
        if (p < cols) is_pivot[p] = 1;
    std::vector<Vector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(cols);
        v[f] = Scalar(1);
        for (std::size_t k = 0; k < e.rows.size(); ++k) {
            Scalar x = entry_at(e.rows[k], f);
            if (!x.is_zero()) v[e.pivots[k]] = -x;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

std::vector<Vector> nullspace(const ExactMatrix& a) { return kernel_from(rref(a), a.cols()); }

SolutionSet solve_linear(const ExactMatrix& a, const Vector& b)
{
    if (b.size() != a.rows()) throw std::invalid_argument("solve_linear: size mismatch");
    std::size_t n = a.cols();
    std::vector<SparseRow> rows(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        rows[i] = a.row(i);
        if (!b[i].is_zero()) rows[i].push_back({n, b[i]});
    }
    Echelon e = rref(std::move(rows), n + 1);
    SolutionSet s;
    for (auto p : e.pivots)
        if (p == n) return s;
    s.consistent = true;
    s.particular.assign(n, Scalar());
    for (std::size_t k = 0; k < e.rows.size(); ++k) s.particular[e.pivots[k]] = entry_at(e.rows[k], n);
    // drop the augmented column before computing the kernel
    for (auto& r : e.rows)
        if (!r.empty() && r.back().col == n) r.pop_back();
    s.nullspace = kernel_from(e, n);
    return s;
}

ExactMatrix inverse(const ExactMatrix& a)
{
    std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("inverse: matrix not square");
    std::vector<SparseRow> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        rows[i] = a.row(i);
        rows[i].push_back({n + i, Scalar(1)});
    }
    Echelon e = rref(std::move(rows), 2 * n);
    if (e.rank() != n || e.pivots.back() >= n) throw std::domain_error("matrix is singular");
    ExactMatrix inv(n, n);
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& x : e.rows[k])
            if (x.col >= n) inv.row(k).push_back({x.col - n, x.val});
    return inv;
}

void RowSpace::reduce(SparseRow& v) const
{
    std::size_t idx = 0;
    while (idx < v.size()) {
        std::size_t c = v[idx].col;
        if (c < row_of_pivot_.size() && row_of_pivot_[c]) {
            Scalar f = -v[idx].val;
            row_axpy(v, f, rows_[*row_of_pivot_[c]]);
            idx = static_cast<std::size_t>(
                std::upper_bound(v.begin(), v.end(), c, [](std::size_t k, const Entry& e) { return k < e.col; })
                - v.begin());
        } else {
            ++idx;
        }
    }
}

bool RowSpace::insert(SparseRow v)
{
    reduce(v);
    if (v.empty()) return false;
    std::size_t c = v.front().col;
    scale_row(v, v.front().val.inverse());
    if (row_of_pivot_.size() <= c) row_of_pivot_.resize(std::max(dim_, c + 1));
    row_of_pivot_[c] = rows_.size();
    rows_.push_back(std::move(v));
    pivots_.push_back(c);
    return true;
}

bool RowSpace::contains(SparseRow v) const
{
    reduce(v);
    return v.empty();
}

bool subspace_contains(const std::vector<Vector>& big, const std::vector<Vector>& small)
{
    std::size_t dim = big.empty() ? (small.empty() ? 0 : small[0].size()) : big[0].size();
    RowSpace rs(dim);
    for (const auto& v : big) rs.insert(row_from_dense(v));
    for (const auto& v : small)
        if (!rs.contains(row_from_dense(v))) return false;
    return true;
}

bool same_subspace(const std::vector<Vector>& a, const std::vector<Vector>& b)
{
    return subspace_contains(a, b) && subspace_contains(b, a);
}

}  // namespace qspr
