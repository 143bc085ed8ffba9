#pragma once

#include "qspr/qsp.hpp"
#include "qspr/rmatrix.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace qspr {

class ReflectionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// C = sum_{i,j} J^j_i l(c^i_j) with c^i_j the matrix coefficients of V(mu).
// J[j][i] = J^j_i; in the l-space vector index i*N + j holds J^j_i.
struct JSolution {
    Weight mu, dual_mu;  // dual_mu = -w0 mu, C lies in (ad_r U) tau(2 dual_mu)
    std::size_t n = 0;
    ExactMatrix J;
    std::string provenance;
};

ExactMatrix J_from_vector(const Vector& v, std::size_t n);
Vector J_to_vector(const ExactMatrix& J);

// simultaneous solutions of ad_r(g) C = eps(g) C on the l-space of v
std::vector<Vector> lspace_invariants(const std::vector<Generator>& gens, const Rep& v);
// generators of all of U, for the Schur check
std::vector<Generator> full_generators(const RootDatum& d);

struct JSolveResult {
    std::vector<JSolution> solutions;
    std::size_t lspace_dim = 0;
    std::size_t invariant_dim = 0;  // ad_r-invariants before the coideal restriction
    std::string note;  // set when no invariant exists
};
// ad_r(B)-invariant C in the l-space of V(mu) whose coideal entries lie in B
// on every probe (C in the center of B at probe scale). Every returned J is
// certified against the reflection equation; a failed certification throws
// ReflectionError. The default probes are V(mu) and three small modules.
JSolveResult solve_invariant_J(const CoidealPresentation& pres, const Weight& mu);
JSolveResult solve_invariant_J(const CoidealPresentation& pres, const Weight& mu, const std::vector<Weight>& probes);
JSolveResult solve_invariant_J(const RootDatumPtr& datum, const std::vector<Generator>& gens, const Weight& mu,
                               const std::string& provenance);

struct Residual {
    std::size_t row, col;
    Scalar value;
};
struct REReport {
    bool ok = false;
    std::size_t residual_count = 0;
    std::vector<Residual> residuals;  // first few nonzero entries of lhs - rhs
};
// J_1 Rt J_2 R = R_21 J_2 Rt_21 J_1 on V (x) V
REReport verify_reflection_equation(const ExactMatrix& J, const ExactMatrix& R, const ExactMatrix& Rt,
                                    std::size_t max_residuals = 8);
REReport verify_reflection_equation(const RootDatumPtr& datum, const JSolution& s, std::size_t max_residuals = 8);

struct Translation {
    ExactMatrix Jtilde;
    Vector eta;  // eta_{-+} on the basis, q^{(lambda - wt v, 2 rho)}
    REReport dijk;
};
// Jt^j_i = q^{-(lambda - wt v_j, 2 rho)} J^j_i; checks Jt_1 R^-1 Jt_2 R = R_21 Jt_2 R^-1_21 Jt_1
Translation translate_left_right(const RootDatumPtr& datum, const JSolution& s);
ExactMatrix untranslate(const Translation& t);

// Entries (m,n) of sigma(L^-)^t J^t (L^+)^t on V(nu), index m*N + n,
// entry = sum_{i,j} sigma(l^-(c^i_m)) J^j_i l^+(c^n_j), eps = J^n_m.
struct LmuAction {
    Weight mu, nu;
    std::size_t n = 0;
    std::vector<ExactMatrix> entries;
    std::vector<Scalar> eps;
};
LmuAction build_Lmu_action(const RootDatumPtr& datum, const JSolution& s, const Weight& nu);
std::vector<Vector> lmu_invariants(const LmuAction& a);
std::vector<Vector> coideal_invariants(const CoidealPresentation& pres, const Rep& v);

struct InvariantComparison {
    Weight nu;
    std::size_t dim_B = 0, dim_L = 0;
    bool equal = false;
};
InvariantComparison compare_invariants(const CoidealPresentation& pres, const JSolution& s, const Weight& nu);

enum class Membership { Member, NonMember, Inconclusive };
std::string to_string(Membership m);
struct MembershipReport {
    Membership status = Membership::Inconclusive;
    std::vector<std::size_t> ranks;  // span rank of L_mu after each probe
    std::size_t excluded_at = 0;     // probe count at which the candidate left the span
    std::string note;
};
using CandidateFn = std::function<ExactMatrix(const Rep&)>;
MembershipReport membership_in_Lmu(const RootDatumPtr& datum, const CandidateFn& candidate, const JSolution& s,
                                   const std::vector<Weight>& probes);
MembershipReport membership_in_Lmu(const RootDatumPtr& datum, const Expr& candidate, const JSolution& s,
                                   const std::vector<Weight>& probes);

// dominant weights ordered by dimension, with module dim <= cap
std::vector<Weight> default_probes(const RootDatum& d, std::size_t count, std::size_t max_dim = 32);

struct CenterCandidate {
    Weight mu;
    std::vector<Weight> blocks;  // dominant nu <= mu, top block first
    std::vector<ExactMatrix> J;  // one J per block
};
std::vector<CenterCandidate> find_center_candidates(const CoidealPresentation& pres, const Weight& mu);

struct PropItem {
    std::string name;
    std::string status;  // member, non-member, inconclusive, holds, fails, not applicable
    std::string detail;
};
struct PropReport {
    std::vector<PropItem> items;
    bool all_hold() const;
};
// Props on L_mu built from the first certified J at mu: B_i and C_i times
// tau(-Theta(mu) - mu), x_j and y_j t_j times tau(lambda + alpha_i + Theta(alpha_i)),
// V(nu)^{L_mu} inside V(nu)^{M_i}, and for empty pi_Theta the elements B_i t(i)
PropReport proposition_checks(const CoidealPresentation& pres, const Weight& mu, const std::vector<Weight>& probes,
                              const std::vector<Weight>& nus);

}  // namespace qspr
