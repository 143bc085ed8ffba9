#pragma once

#include "qspr/matrix.hpp"

#include <optional>

namespace qspr {

// Reduced row echelon form: rows[k] has a 1 at pivots[k] and zeros in every
// other pivot column.
struct Echelon {
    std::size_t cols = 0;
    std::vector<SparseRow> rows;
    std::vector<std::size_t> pivots;

    std::size_t rank() const { return rows.size(); }
};

Echelon rref(std::vector<SparseRow> rows, std::size_t cols);
Echelon rref(const ExactMatrix& a);

std::size_t rank(const ExactMatrix& a);
std::vector<Vector> nullspace(const ExactMatrix& a);

struct SolutionSet {
    bool consistent = false;
    Vector particular;
    std::vector<Vector> nullspace;
};

SolutionSet solve_linear(const ExactMatrix& a, const Vector& b);

// Solve a x = b with a square and invertible.
ExactMatrix inverse(const ExactMatrix& a);

// Incrementally maintained row space. insert() returns true if the vector
// was independent of everything inserted so far.
class RowSpace {
public:
    explicit RowSpace(std::size_t dim) : dim_(dim) {}

    bool insert(SparseRow v);
    bool contains(SparseRow v) const;
    // v reduced to zero in every pivot column; linear in v
    SparseRow residual(SparseRow v) const
    {
        reduce(v);
        return v;
    }
    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }

private:
    void reduce(SparseRow& v) const;

    std::size_t dim_;
    std::vector<SparseRow> rows_;          // each with leading entry 1 at pivots_
    std::vector<std::size_t> pivots_;
    std::vector<std::optional<std::size_t>> row_of_pivot_;
};

// Basis vectors of a subspace given as columns; compare two subspaces.
bool same_subspace(const std::vector<Vector>& a, const std::vector<Vector>& b);
bool subspace_contains(const std::vector<Vector>& big, const std::vector<Vector>& small);

}  // namespace qspr
