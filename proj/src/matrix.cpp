#include "qspr/matrix.hpp"

#include "json.hpp"

#include <algorithm>

namespace qspr {

void row_axpy(SparseRow& dst, const Scalar& a, const SparseRow& src)
{
    if (a.is_zero() || src.empty()) return;
    SparseRow out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].col < src[j].col)) {
            out.push_back(std::move(dst[i++]));
        } else if (i == dst.size() || src[j].col < dst[i].col) {
            out.push_back({src[j].col, a * src[j].val});
            ++j;
        } else {
            Scalar v = dst[i].val + a * src[j].val;
            if (!v.is_zero()) out.push_back({dst[i].col, std::move(v)});
            ++i;
            ++j;
        }
    }
    dst = std::move(out);
}

SparseRow row_from_dense(const Vector& v)
{
    SparseRow r;
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) r.push_back({k, v[k]});
    return r;
}

Vector row_to_dense(const SparseRow& r, std::size_t n)
{
    Vector v(n);
    for (const auto& e : r) v[e.col] = e.val;
    return v;
}

ExactMatrix ExactMatrix::identity(std::size_t n)
{
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].push_back({i, Scalar(1)});
    return m;
}

ExactMatrix ExactMatrix::diagonal(const Vector& d)
{
    ExactMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!d[i].is_zero()) m.data_[i].push_back({i, d[i]});
    return m;
}

ExactMatrix ExactMatrix::from_dense(const std::vector<Vector>& rows)
{
    ExactMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) m.data_[i] = row_from_dense(rows[i]);
    return m;
}

Scalar ExactMatrix::get(std::size_t r, std::size_t c) const
{
    const auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t k) { return e.col < k; });
    if (it != row.end() && it->col == c) return it->val;
    return Scalar();
}

void ExactMatrix::set(std::size_t r, std::size_t c, const Scalar& v)
{
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t k) { return e.col < k; });
    if (it != row.end() && it->col == c) {
        if (v.is_zero())
            row.erase(it);
        else
            it->val = v;
    } else if (!v.is_zero()) {
        row.insert(it, {c, v});
    }
}

void ExactMatrix::add_to(std::size_t r, std::size_t c, const Scalar& v)
{
    if (v.is_zero()) return;
    auto& row = data_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t k) { return e.col < k; });
    if (it != row.end() && it->col == c) {
        it->val += v;
        if (it->val.is_zero()) row.erase(it);
    } else {
        row.insert(it, {c, v});
    }
}

std::size_t ExactMatrix::nonzeros() const
{
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
}

bool ExactMatrix::is_zero() const
{
    for (const auto& r : data_)
        if (!r.empty()) return false;
    return true;
}

ExactMatrix ExactMatrix::transpose() const
{
    ExactMatrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
        for (const auto& e : data_[i]) t.data_[e.col].push_back({i, e.val});
    return t;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& b) const
{
    ExactMatrix r = *this;
    r += b;
    return r;
}

ExactMatrix& ExactMatrix::operator+=(const ExactMatrix& b)
{
    if (rows() != b.rows() || cols_ != b.cols_) throw std::invalid_argument("matrix size mismatch in +");
    for (std::size_t i = 0; i < rows(); ++i) row_axpy(data_[i], Scalar(1), b.data_[i]);
    return *this;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& b) const
{
    if (rows() != b.rows() || cols_ != b.cols_) throw std::invalid_argument("matrix size mismatch in -");
    ExactMatrix r = *this;
    for (std::size_t i = 0; i < rows(); ++i) row_axpy(r.data_[i], Scalar(-1), b.data_[i]);
    return r;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& b) const
{
    if (cols_ != b.rows()) throw std::invalid_argument("matrix size mismatch in *");
    ExactMatrix r(rows(), b.cols_);
    std::vector<Scalar> acc(b.cols_);
    std::vector<char> used(b.cols_, 0);
    std::vector<std::size_t> touched;
    for (std::size_t i = 0; i < rows(); ++i) {
        touched.clear();
        for (const auto& e : data_[i]) {
            for (const auto& f : b.data_[e.col]) {
                if (!used[f.col]) {
                    used[f.col] = 1;
                    touched.push_back(f.col);
                    acc[f.col] = e.val * f.val;
                } else {
                    acc[f.col] += e.val * f.val;
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        auto& out = r.data_[i];
        for (std::size_t c : touched) {
            if (!acc[c].is_zero()) out.push_back({c, std::move(acc[c])});
            acc[c] = Scalar();
            used[c] = 0;
        }
    }
    return r;
}

ExactMatrix ExactMatrix::operator*(const Scalar& s) const
{
    if (s.is_zero()) return ExactMatrix(rows(), cols_);
    ExactMatrix r = *this;
    for (auto& row : r.data_)
        for (auto& e : row) e.val *= s;
    return r;
}

Vector ExactMatrix::apply(const Vector& v) const
{
    if (v.size() != cols_) throw std::invalid_argument("matrix/vector size mismatch");
    Vector out(rows());
    for (std::size_t i = 0; i < rows(); ++i)
        for (const auto& e : data_[i])
            if (!v[e.col].is_zero()) out[i] += e.val * v[e.col];
    return out;
}

bool ExactMatrix::operator==(const ExactMatrix& b) const
{
    if (rows() != b.rows() || cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < rows(); ++i) {
        const auto& x = data_[i];
        const auto& y = b.data_[i];
        if (x.size() != y.size()) return false;
        for (std::size_t k = 0; k < x.size(); ++k)
            if (x[k].col != y[k].col || !(x[k].val == y[k].val)) return false;
    }
    return true;
}

SparseRow ExactMatrix::flatten() const
{
    SparseRow out;
    for (std::size_t i = 0; i < rows(); ++i)
        for (const auto& e : data_[i]) out.push_back({i * cols_ + e.col, e.val});
    return out;
}

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b)
{
    ExactMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < b.rows(); ++k) {
            auto& out = r.row(i * b.rows() + k);
            for (const auto& e : a.row(i))
                for (const auto& f : b.row(k)) out.push_back({e.col * b.cols() + f.col, e.val * f.val});
        }
    return r;
}

ExactMatrix block_diagonal(const std::vector<ExactMatrix>& blocks)
{
    std::size_t R = 0, C = 0;
    for (const auto& b : blocks) {
        R += b.rows();
        C += b.cols();
    }
    ExactMatrix m(R, C);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (const auto& e : b.row(i)) m.row(r0 + i).push_back({c0 + e.col, e.val});
        r0 += b.rows();
        c0 += b.cols();
    }
    return m;
}

ExactMatrix flip_matrix(std::size_t n, std::size_t m)
{
    ExactMatrix p(n * m, n * m);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < m; ++b) p.row(b * n + a).push_back({a * m + b, Scalar(1)});
    return p;
}

nlohmann::json to_json(const ExactMatrix& m)
{
    nlohmann::json entries = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (const auto& e : m.row(i)) entries.push_back({i, e.col, e.val.str()});
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

ExactMatrix matrix_from_json(const nlohmann::json& j)
{
    ExactMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    for (const auto& e : j.at("entries")) {
        std::size_t r = e.at(0).get<std::size_t>(), c = e.at(1).get<std::size_t>();
        if (r >= m.rows() || c >= m.cols()) throw std::invalid_argument("matrix entry out of range");
        m.add_to(r, c, Scalar::parse(e.at(2).get<std::string>()));
    }
    return m;
}

}  // namespace qspr
