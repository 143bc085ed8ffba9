#pragma once

#include "qspr/repn.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace qspr {

class RMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// R on V (x) W with R[(i,j),(k,l)] = r(c^i_k, c^j_l), index i*dim(W) + j.
// Solved grade by grade from R Delta(g) = Delta^cop(g) R with the diagonal
// values q^{-(wt v_i, wt w_j)} and the triangular zero pattern.
ExactMatrix compute_R(const Rep& v, const Rep& w);

// (M^{t2})[(i,j),(k,l)] = M[(i,l),(k,j)]
ExactMatrix partial_transpose2(const ExactMatrix& m, std::size_t n, std::size_t k);
// Rtilde[(i,j),(k,l)] = r(c^i_k, sigma(c^j_l)), the partial inverse of R
ExactMatrix compute_Rtilde(const ExactMatrix& r, std::size_t n, std::size_t k);
// flip conjugation M_21 = P M P on V (x) V
ExactMatrix twist(const ExactMatrix& m, std::size_t n);

struct RCheck {
    bool triangular = true;
    bool weight_conserving = true;
    bool diagonal_values = true;
    bool intertwining = true;
    bool ok() const { return triangular && weight_conserving && diagonal_values && intertwining; }
};
RCheck check_R(const ExactMatrix& r, const Rep& v, const Rep& w);

// Cache of R for pairs of simple modules. The directory defaults to
// $QSPR_CACHE when set; with no directory only the in-process memo is used.
void set_cache_dir(std::optional<std::filesystem::path> dir);
std::optional<std::filesystem::path> cache_dir();
const Rep& simple_module(const RootDatumPtr& datum, const Weight& mu);
const ExactMatrix& r_matrix(const RootDatumPtr& datum, const Weight& lambda, const Weight& mu);

// rho_nu of l^+(c^{mu,i}_j) and of sigma(l^-(c^{mu,i}_m)), indexed [i][j]
struct LFunctionals {
    std::size_t n = 0;  // dim V(mu)
    std::vector<std::vector<ExactMatrix>> lplus, sigma_lminus;
};
LFunctionals l_matrices(const RootDatumPtr& datum, const Weight& mu, const Weight& nu);
// rho_nu(l(c^i_j)) = sum_k sigma(l^-(c^i_k)) l^+(c^k_j)
std::vector<std::vector<ExactMatrix>> l_images(const LFunctionals& l);
// rank of span{l(c^i_j)} evaluated on the direct sum of the V(nu)
std::size_t l_span_rank(const RootDatumPtr& datum, const Weight& mu, const std::vector<Weight>& nus);

// action of ad_r(u) on span{l(c^i_j)} in the basis index i*N + j
ExactMatrix adr_on_lspace(const Expr& u, const Rep& v);

}  // namespace qspr
