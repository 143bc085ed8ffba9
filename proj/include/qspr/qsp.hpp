#pragma once

#include "qspr/repn.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qspr {

class CoidealError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Per-node parameters d_i, s_i, c_{B_i}. Entries for nodes in pi_Theta are
// ignored except c, which kappa_B uses on every node.
struct CoidealParams {
    std::vector<Scalar> d, s, c;
    static CoidealParams defaults(int rank);
};

struct Generator {
    std::string name;
    Expr expr;
    Scalar eps;  // counit value
};

struct CoidealPresentation {
    InvolutionDatum inv;
    CoidealParams params;
    std::vector<std::vector<int>> chain;  // (i_1, ..., i_m) per node
    std::vector<Expr> theta_tilde;        // zero for nodes in pi_Theta
    std::vector<Expr> B, C;               // C_i zero for nodes in pi_Theta
    // B_i (i not in pi_Theta), x_j, y_j, t_j^{+-1} (j in pi_Theta), tau(lambda)
    // for a basis of the fixed lattice
    std::vector<Generator> generators;

    const RootDatum& datum() const { return inv.datum(); }
    const RootDatumPtr& datum_ptr() const { return inv.datum_ptr(); }
    std::vector<Scalar> kappa_params() const { return params.c; }
};

// direct sum of the fundamental modules within the module cap
Rep default_probe(const RootDatumPtr& datum);

struct ThetaTilde {
    std::vector<int> chain;
    Expr expr;
};
// (ad_r x_{i_m})...(ad_r x_{i_1})(t_{p(i)}^{-1} x_{p(i)}) of weight -Theta(alpha_i),
// ad_r(M^+)-invariant on the probe. Throws CoidealError if no chain works.
ThetaTilde build_theta_tilde(const InvolutionDatum& inv, int i, const Rep& probe, std::size_t max_depth = 16);

CoidealPresentation build_generators(const InvolutionDatum& inv, const CoidealParams& params);
CoidealPresentation build_generators(const InvolutionDatum& inv, const CoidealParams& params, const Rep& probe);

// projectors onto the classes of basis weights that T'_Theta cannot separate;
// their span equals the span of the evaluated tau(lambda), Theta(lambda) = lambda
std::vector<ExactMatrix> torus_projectors(const InvolutionDatum& inv, const Rep& m);

struct Monomial {
    std::string label;
    ExactMatrix mat;
};
// Evaluated monomials B_I m P with m a word in x_j (j in pi_Theta), P a torus
// class projector and |I| + |m| <= degree, pruned to a basis of their span.
// degree < 0 runs until the span stops growing (the image of the coideal).
std::vector<Monomial> coideal_basis_matrices(const CoidealPresentation& pres, const Rep& m, int degree);

enum class CheckStatus { Pass, Fail, Inconclusive };
std::string to_string(CheckStatus s);

struct NamedCheck {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string detail;
};

struct CheckReport {
    std::vector<NamedCheck> items;
    std::size_t span_rank = 0, full_rank = 0;
    bool ok() const;
    bool failed() const;
};

// kappa_B(g) in the evaluated span of the coideal, for every generator g
CheckReport check_kappaB_stability(const CoidealPresentation& pres, const Rep& probe, int degree = -1);
// Delta(g) in U (x) B, second legs tested on `right`, first legs evaluated on `left`
CheckReport check_left_coideal(const CoidealPresentation& pres, const Rep& left, const Rep& right);
// B_i B_p(i) - B_p(i) B_i against (t_i t_p^-1 - t_i^-1 t_p)/(q_i - q_i^-1), pi_Theta empty
CheckReport check_commutators(const CoidealPresentation& pres, const Rep& probe);
// epsilon(B_i) = s_i, theta_tilde weights and ad_r(M^+) invariance
CheckReport check_presentation(const CoidealPresentation& pres, const Rep& probe);

// {preset, rank, r}, {preset: "diagonal", type} or {type, pi_theta, diagram} with
// 1-based nodes; params under d, s, cB keyed by 1-based node
InvolutionDatum involution_from_json(const nlohmann::json& j);
CoidealParams params_from_json(const nlohmann::json& j, int rank);
nlohmann::json to_json(const CoidealPresentation& pres);

}  // namespace qspr
