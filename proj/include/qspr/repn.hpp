#pragma once

#include "qspr/cartan.hpp"
#include "qspr/matrix.hpp"
#include "qspr/uexpr.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qspr {

// A finite-dimensional weight representation: basis weights and the matrices
// of x_i, y_i. tau(lambda) acts on a weight-w vector by q^{(lambda, w)}.
class Rep {
public:
    Rep() = default;
    Rep(RootDatumPtr datum, std::vector<Weight> weights, std::vector<ExactMatrix> x, std::vector<ExactMatrix> y,
        std::string label = "");

    const RootDatum& datum() const { return *datum_; }
    const RootDatumPtr& datum_ptr() const { return datum_; }
    const std::string& label() const { return label_; }
    std::size_t dim() const { return weights_.size(); }
    const std::vector<Weight>& weights() const { return weights_; }
    const Weight& weight(std::size_t k) const { return weights_[k]; }
    const ExactMatrix& x(int i) const { return x_[static_cast<std::size_t>(i)]; }
    const ExactMatrix& y(int i) const { return y_[static_cast<std::size_t>(i)]; }

    ExactMatrix tau(const Weight& lambda) const;
    ExactMatrix t(int i, long k = 1) const { return tau(k * datum_->alpha(i)); }
    ExactMatrix evaluate(const Expr& e) const;
    // matrix of e acting from the right on the dual basis: v* -> v* e
    ExactMatrix right_action(const Expr& e) const { return evaluate(e).transpose(); }

private:
    RootDatumPtr datum_;
    std::vector<Weight> weights_;
    std::vector<ExactMatrix> x_, y_;
    std::string label_;
};

struct RepCaps {
    std::size_t module_dim = 64;
    std::size_t tensor_dim = 4096;
};
RepCaps& rep_caps();

// Simple module V(mu), basis ordered by depth below mu and then by the
// y-monomials producing each vector.
Rep build_module(const RootDatumPtr& datum, const Weight& mu);
Rep trivial_module(const RootDatumPtr& datum);
// action on V (x) W through the coproduct, basis index a*dim(W) + b
Rep tensor(const Rep& v, const Rep& w);
Rep direct_sum(const std::vector<Rep>& reps);

// evaluate a k-leg tensor expression on reps[0] (x) ... (x) reps[k-1]
ExactMatrix evaluate_tensor(const TensorExpr& t, const std::vector<const Rep*>& reps);

// basis of {v : A v = eps_A v for every (A, eps_A)}
std::vector<Vector> invariant_subspace(const std::vector<std::pair<ExactMatrix, Scalar>>& ops, std::size_t dim);

// Basis of the forms G with G rho(kappa_B(a)) = rho(a)^T G for all a,
// supported on equal-weight pairs.
std::vector<ExactMatrix> contravariant_forms(const Rep& v, const std::vector<Scalar>& c);

// [x_i, y_j] = delta_ij (t_i - t_i^-1)/(q_i - q_i^-1) and the Serre relations
bool check_relations(const Rep& v);

}  // namespace qspr
