#pragma once

#include "qspr/scalar.hpp"

#include "json.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace qspr {

struct Entry {
    std::size_t col;
    Scalar val;
};

// sorted by col, no zero values
using SparseRow = std::vector<Entry>;
using Vector = std::vector<Scalar>;

void row_axpy(SparseRow& dst, const Scalar& a, const SparseRow& src);
SparseRow row_from_dense(const Vector& v);
Vector row_to_dense(const SparseRow& r, std::size_t n);

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

    static ExactMatrix identity(std::size_t n);
    static ExactMatrix diagonal(const Vector& d);
    static ExactMatrix from_dense(const std::vector<Vector>& rows);

    std::size_t rows() const { return data_.size(); }
    std::size_t cols() const { return cols_; }
    Scalar get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const Scalar& v);
    void add_to(std::size_t r, std::size_t c, const Scalar& v);
    const SparseRow& row(std::size_t r) const { return data_[r]; }
    SparseRow& row(std::size_t r) { return data_[r]; }
    std::size_t nonzeros() const;
    bool is_zero() const;

    ExactMatrix transpose() const;
    ExactMatrix operator+(const ExactMatrix& b) const;
    ExactMatrix operator-(const ExactMatrix& b) const;
    ExactMatrix operator*(const ExactMatrix& b) const;
    ExactMatrix operator*(const Scalar& s) const;
    ExactMatrix& operator+=(const ExactMatrix& b);
    Vector apply(const Vector& v) const;
    bool operator==(const ExactMatrix& b) const;

    // row-major flattening, r*cols + c
    SparseRow flatten() const;

private:
    std::size_t cols_ = 0;
    std::vector<SparseRow> data_;
};

ExactMatrix kron(const ExactMatrix& a, const ExactMatrix& b);
ExactMatrix block_diagonal(const std::vector<ExactMatrix>& blocks);
// matrix of the flip v (x) w -> w (x) v for dims (n, m), mapping index a*m+b to b*n+a
ExactMatrix flip_matrix(std::size_t n, std::size_t m);

nlohmann::json to_json(const ExactMatrix& m);
ExactMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace qspr
