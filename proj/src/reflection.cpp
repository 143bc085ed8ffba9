#include "qspr/reflection.hpp"

#include "qspr/linalg.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace qspr {

namespace {

// combinations sum c_k b_k with sys c = 0
std::vector<Vector> restrict_kernel(const std::vector<Vector>& basis, const ExactMatrix&, const ExactMatrix& sys)
{
    std::vector<Vector> out;
    for (const Vector& c : nullspace(sys)) {
        Vector v(basis[0].size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            if (c[k].is_zero()) continue;
            for (std::size_t r = 0; r < v.size(); ++r)
                if (!basis[k][r].is_zero()) v[r] += c[k] * basis[k][r];
        }
        out.push_back(std::move(v));
    }
    return out;
}

// combinations of `basis` killed by a
std::vector<Vector> restrict_kernel(const std::vector<Vector>& basis, const ExactMatrix& a)
{
    if (basis.empty()) return {};
    std::size_t n = a.rows();
    ExactMatrix img(n, basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        Vector col = a.apply(basis[k]);
        for (std::size_t r = 0; r < n; ++r)
            if (!col[r].is_zero()) img.set(r, k, col[r]);
    }
    return restrict_kernel(basis, a, img);
}

// reduced echelon basis of the span
std::vector<Vector> canonical(const std::vector<Vector>& basis, std::size_t dim)
{
    std::vector<SparseRow> rows;
    for (const auto& b : basis) rows.push_back(row_from_dense(b));
    Echelon e = rref(std::move(rows), dim);
    std::vector<Vector> out;
    for (const auto& r : e.rows) out.push_back(row_to_dense(r, dim));
    return out;
}

std::vector<Vector> unit_basis(std::size_t n)
{
    std::vector<Vector> out(n, Vector(n));
    for (std::size_t k = 0; k < n; ++k) out[k][k] = Scalar(1);
    return out;
}

// scale so the first nonzero coordinate is 1
Vector normalized(Vector v)
{
    for (const Scalar& x : v)
        if (!x.is_zero()) {
            Scalar inv = x.inverse();
            for (Scalar& y : v) y *= inv;
            break;
        }
    return v;
}

// torus elements first: they cut the space down to weight-balanced vectors cheaply
std::vector<Generator> solver_order(std::vector<Generator> gens)
{
    std::stable_sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
        auto rank = [](const Generator& g) {
            for (const auto& [w, c] : g.expr.terms())
                for (const auto& l : w)
                    if (l.kind != Letter::Tau) return 1;
            return 0;
        };
        return rank(a) < rank(b);
    });
    return gens;
}

Scalar q_two_rho(const RootDatum& d, const Weight& lambda, const Weight& w)
{
    return Scalar::q_pow(d.inner(lambda - w, 2 * d.rho()));
}

SparseRow concat_flat(const std::vector<ExactMatrix>& blocks)
{
    SparseRow out;
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (auto e : b.flatten()) {
            e.col += off;
            out.push_back(std::move(e));
        }
        off += b.rows() * b.cols();
    }
    return out;
}

}  // namespace

ExactMatrix J_from_vector(const Vector& v, std::size_t n)
{
    ExactMatrix J(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!v[i * n + j].is_zero()) J.set(j, i, v[i * n + j]);
    return J;
}

Vector J_to_vector(const ExactMatrix& J)
{
    std::size_t n = J.rows();
    Vector v(n * n);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& e : J.row(j)) v[e.col * n + j] = e.val;
    return v;
}

std::vector<Vector> lspace_invariants(const std::vector<Generator>& gens, const Rep& v)
{
    std::size_t dim = v.dim() * v.dim();
    std::vector<Vector> basis = unit_basis(dim);
    for (const auto& g : solver_order(gens)) {
        ExactMatrix a = adr_on_lspace(g.expr, v) - ExactMatrix::identity(dim) * g.eps;
        basis = restrict_kernel(basis, a);
        if (basis.empty()) break;
    }
    return canonical(basis, dim);
}

namespace {

void certify(const RootDatumPtr& datum, const Weight& mu, const std::vector<Vector>& basis,
             const std::string& provenance, JSolveResult& out)
{
    std::size_t n = simple_module(datum, mu).dim();
    for (const Vector& b : basis) {
        JSolution s{mu, -datum->w0(mu), n, J_from_vector(normalized(b), n), provenance};
        REReport re = verify_reflection_equation(datum, s, 4);
        if (!re.ok)
            throw ReflectionError("invariant J at " + datum->format(mu) + " fails the reflection equation (" +
                                  std::to_string(re.residual_count) + " nonzero residual entries)");
        out.solutions.push_back(std::move(s));
    }
}

}  // namespace

std::vector<Generator> full_generators(const RootDatum& d)
{
    std::vector<Generator> out;
    for (int i = 0; i < d.rank(); ++i) {
        std::string k = std::to_string(i + 1);
        out.push_back({"x" + k, Expr::x(i), Scalar(0)});
        out.push_back({"y" + k, Expr::y(i), Scalar(0)});
        out.push_back({"t" + k, Expr::t(d, i), Scalar(1)});
    }
    return out;
}

JSolveResult solve_invariant_J(const CoidealPresentation& pres, const Weight& mu)
{
    std::vector<Weight> probes{mu};
    for (const Weight& w : default_probes(pres.datum(), 3))
        if (w != mu) probes.push_back(w);
    return solve_invariant_J(pres, mu, probes);
}

JSolveResult solve_invariant_J(const CoidealPresentation& pres, const Weight& mu, const std::vector<Weight>& probes)
{
    const RootDatumPtr& datum = pres.datum_ptr();
    if (!datum->is_dominant(mu)) throw std::invalid_argument("mu must be dominant");
    std::ostringstream prov;
    prov << pres.inv.label() << " " << pres.datum().label();
    for (int i = 0; i < pres.datum().rank(); ++i) {
        std::size_t ui = static_cast<std::size_t>(i);
        if (pres.inv.in_pi_theta(i)) continue;
        prov << " d" << i + 1 << "=" << pres.params.d[ui].str() << " s" << i + 1 << "=" << pres.params.s[ui].str();
    }
    const Rep& v = simple_module(datum, mu);
    const std::size_t N = v.dim();
    JSolveResult out;
    out.lspace_dim = N * N;
    std::vector<Vector> basis = lspace_invariants(pres.generators, v);
    out.invariant_dim = basis.size();
    // keep the C whose coideal entries lie in the coideal on every probe
    for (const Weight& nu : probes) {
        if (basis.empty()) break;
        const Rep& w = simple_module(datum, nu);
        RowSpace image(w.dim() * w.dim());
        for (const auto& m : coideal_basis_matrices(pres, w, -1)) image.insert(m.mat.flatten());
        if (image.rank() == image.dim()) continue;
        std::map<std::size_t, std::size_t> row_of;
        std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols(basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k) {
            JSolution s{mu, -datum->w0(mu), N, J_from_vector(basis[k], N), ""};
            LmuAction a = build_Lmu_action(datum, s, nu);
            for (std::size_t e = 0; e < a.entries.size(); ++e) {
                SparseRow r = image.residual((a.entries[e] - ExactMatrix::identity(w.dim()) * a.eps[e]).flatten());
                for (const auto& x : r) {
                    std::size_t key = e * image.dim() + x.col;
                    auto [it, fresh] = row_of.try_emplace(key, row_of.size());
                    cols[k].emplace_back(it->second, x.val);
                }
            }
        }
        ExactMatrix sys(row_of.size(), basis.size());
        for (std::size_t k = 0; k < basis.size(); ++k)
            for (const auto& [r, val] : cols[k]) sys.set(r, k, val);
        basis = restrict_kernel(basis, ExactMatrix::identity(basis[0].size()), sys);
    }
    if (basis.empty()) {
        out.note = out.invariant_dim ? "ad_r-invariants exist but none lies in the coideal on the probes"
                                     : "no invariant at this weight";
        return out;
    }
    certify(datum, mu, canonical(basis, N * N), prov.str(), out);
    return out;
}

JSolveResult solve_invariant_J(const RootDatumPtr& datum, const std::vector<Generator>& gens, const Weight& mu,
                               const std::string& provenance)
{
    if (!datum->is_dominant(mu)) throw std::invalid_argument("mu must be dominant");
    const Rep& v = simple_module(datum, mu);
    JSolveResult out;
    out.lspace_dim = v.dim() * v.dim();
    auto inv = lspace_invariants(gens, v);
    out.invariant_dim = inv.size();
    if (inv.empty()) {
        out.note = "no invariant at this weight";
        return out;
    }
    certify(datum, mu, inv, provenance, out);
    return out;
}

REReport verify_reflection_equation(const ExactMatrix& J, const ExactMatrix& R, const ExactMatrix& Rt,
                                    std::size_t max_residuals)
{
    std::size_t n = J.rows();
    if (J.cols() != n || R.rows() != n * n || R.cols() != n * n || Rt.rows() != n * n || Rt.cols() != n * n)
        throw std::invalid_argument("reflection equation: inconsistent dimensions");
    ExactMatrix id = ExactMatrix::identity(n);
    ExactMatrix j1 = kron(J, id), j2 = kron(id, J);
    ExactMatrix lhs = j1 * Rt * j2 * R;
    ExactMatrix rhs = twist(R, n) * j2 * twist(Rt, n) * j1;
    ExactMatrix diff = lhs - rhs;
    REReport rep;
    for (std::size_t r = 0; r < diff.rows(); ++r)
        for (const auto& e : diff.row(r)) {
            ++rep.residual_count;
            if (rep.residuals.size() < max_residuals) rep.residuals.push_back({r, e.col, e.val});
        }
    rep.ok = rep.residual_count == 0;
    return rep;
}

REReport verify_reflection_equation(const RootDatumPtr& datum, const JSolution& s, std::size_t max_residuals)
{
    const ExactMatrix& R = r_matrix(datum, s.mu, s.mu);
    return verify_reflection_equation(s.J, R, compute_Rtilde(R, s.n, s.n), max_residuals);
}

Translation translate_left_right(const RootDatumPtr& datum, const JSolution& s)
{
    const Rep& v = simple_module(datum, s.mu);
    const std::size_t n = v.dim();
    Translation t;
    t.eta.resize(n);
    for (std::size_t j = 0; j < n; ++j) t.eta[j] = q_two_rho(*datum, s.mu, v.weight(j));
    t.Jtilde = ExactMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Scalar inv = t.eta[j].inverse();
        for (const auto& e : s.J.row(j)) t.Jtilde.set(j, e.col, e.val * inv);
    }
    const ExactMatrix& R = r_matrix(datum, s.mu, s.mu);
    ExactMatrix rinv = inverse(R);
    ExactMatrix id = ExactMatrix::identity(n);
    ExactMatrix j1 = kron(t.Jtilde, id), j2 = kron(id, t.Jtilde);
    ExactMatrix diff = j1 * rinv * j2 * R - twist(R, n) * j2 * twist(rinv, n) * j1;
    for (std::size_t r = 0; r < diff.rows(); ++r)
        for (const auto& e : diff.row(r)) {
            ++t.dijk.residual_count;
            if (t.dijk.residuals.size() < 8) t.dijk.residuals.push_back({r, e.col, e.val});
        }
    t.dijk.ok = t.dijk.residual_count == 0;
    return t;
}

ExactMatrix untranslate(const Translation& t)
{
    std::size_t n = t.Jtilde.rows();
    ExactMatrix J(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (const auto& e : t.Jtilde.row(j)) J.set(j, e.col, e.val * t.eta[j]);
    return J;
}

LmuAction build_Lmu_action(const RootDatumPtr& datum, const JSolution& s, const Weight& nu)
{
    LFunctionals l = l_matrices(datum, s.mu, nu);
    const std::size_t N = s.n;
    const std::size_t M = simple_module(datum, nu).dim();
    LmuAction out{s.mu, nu, N, {}, {}};
    // K_i^n = sum_j J^j_i l^+(c^n_j)
    std::vector<std::vector<ExactMatrix>> k(N, std::vector<ExactMatrix>(N, ExactMatrix(M, M)));
    for (std::size_t j = 0; j < N; ++j)
        for (const auto& e : s.J.row(j))
            for (std::size_t nn = 0; nn < N; ++nn)
                if (!l.lplus[nn][j].is_zero()) k[e.col][nn] += l.lplus[nn][j] * e.val;
    for (std::size_t m = 0; m < N; ++m)
        for (std::size_t nn = 0; nn < N; ++nn) {
            ExactMatrix acc(M, M);
            for (std::size_t i = 0; i < N; ++i) {
                if (l.sigma_lminus[i][m].is_zero() || k[i][nn].is_zero()) continue;
                acc += l.sigma_lminus[i][m] * k[i][nn];
            }
            out.entries.push_back(std::move(acc));
            out.eps.push_back(s.J.get(nn, m));
        }
    return out;
}

std::vector<Vector> lmu_invariants(const LmuAction& a)
{
    std::vector<std::pair<ExactMatrix, Scalar>> ops;
    for (std::size_t k = 0; k < a.entries.size(); ++k) ops.emplace_back(a.entries[k], a.eps[k]);
    std::size_t dim = a.entries.empty() ? 0 : a.entries[0].rows();
    return invariant_subspace(ops, dim);
}

std::vector<Vector> coideal_invariants(const CoidealPresentation& pres, const Rep& v)
{
    std::vector<std::pair<ExactMatrix, Scalar>> ops;
    for (const auto& g : pres.generators) ops.emplace_back(v.evaluate(g.expr), g.eps);
    return invariant_subspace(ops, v.dim());
}

InvariantComparison compare_invariants(const CoidealPresentation& pres, const JSolution& s, const Weight& nu)
{
    const Rep& v = simple_module(pres.datum_ptr(), nu);
    auto b = coideal_invariants(pres, v);
    auto l = lmu_invariants(build_Lmu_action(pres.datum_ptr(), s, nu));
    return {nu, b.size(), l.size(), same_subspace(b, l)};
}

std::string to_string(Membership m)
{
    switch (m) {
    case Membership::Member: return "member";
    case Membership::NonMember: return "non-member-at-probe";
    case Membership::Inconclusive: return "inconclusive";
    }
    return "?";
}

MembershipReport membership_in_Lmu(const RootDatumPtr& datum, const CandidateFn& candidate, const JSolution& s,
                                   const std::vector<Weight>& probes)
{
    MembershipReport rep;
    const std::size_t count = s.n * s.n;
    std::vector<std::vector<ExactMatrix>> entry_blocks(count);
    std::vector<ExactMatrix> cand_blocks;
    for (std::size_t p = 0; p < probes.size(); ++p) {
        LmuAction a = build_Lmu_action(datum, s, probes[p]);
        for (std::size_t k = 0; k < count; ++k) entry_blocks[k].push_back(std::move(a.entries[k]));
        cand_blocks.push_back(candidate(simple_module(datum, probes[p])));
        std::size_t total = 0;
        for (const auto& b : cand_blocks) total += b.rows() * b.cols();
        RowSpace span(total);
        for (const auto& blocks : entry_blocks) span.insert(concat_flat(blocks));
        rep.ranks.push_back(span.rank());
        if (!span.contains(concat_flat(cand_blocks))) {
            rep.status = Membership::NonMember;
            rep.excluded_at = p + 1;
            rep.note = "outside the span of L_mu on V(" + datum->format(probes[p]) + ") and the probes before it";
            return rep;
        }
    }
    std::size_t k = rep.ranks.size();
    bool faithful = k > 0 && rep.ranks.back() == count;
    bool stable = k >= 3 && rep.ranks[k - 1] == rep.ranks[k - 2] && rep.ranks[k - 2] == rep.ranks[k - 3];
    if (faithful || stable) {
        rep.status = Membership::Member;
        rep.note = faithful ? "L_mu acts faithfully on the probes" : "span rank stable over the last two probes";
    } else {
        rep.note = "span rank still growing with the probes";
    }
    return rep;
}

MembershipReport membership_in_Lmu(const RootDatumPtr& datum, const Expr& candidate, const JSolution& s,
                                   const std::vector<Weight>& probes)
{
    return membership_in_Lmu(datum, [&](const Rep& v) { return v.evaluate(candidate); }, s, probes);
}

std::vector<Weight> default_probes(const RootDatum& d, std::size_t count, std::size_t max_dim)
{
    // breadth-first over dominant weights by label sum
    std::vector<std::pair<mpz_class, Weight>> found;
    std::deque<Weight> queue{d.zero()};
    std::set<Weight> seen{d.zero()};
    while (!queue.empty() && found.size() < 4 * count + 8) {
        Weight w = queue.front();
        queue.pop_front();
        mpz_class dim = d.weyl_dimension(w);
        if (dim > max_dim) continue;
        if (!w.is_zero()) found.emplace_back(dim, w);
        for (int i = 0; i < d.rank(); ++i) {
            Weight nw = w + d.omega(i);
            if (seen.insert(nw).second) queue.push_back(nw);
        }
    }
    std::stable_sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Weight> out;
    for (std::size_t k = 0; k < found.size() && out.size() < count; ++k) out.push_back(found[k].second);
    return out;
}

std::vector<CenterCandidate> find_center_candidates(const CoidealPresentation& pres, const Weight& mu)
{
    const RootDatumPtr& datum = pres.datum_ptr();
    std::vector<Weight> blocks = datum->dominant_below(mu);
    std::stable_sort(blocks.begin(), blocks.end(), [&](const Weight& a, const Weight& b) {
        if (a == mu || b == mu) return a == mu && b != mu;
        return datum->weyl_dimension(a) > datum->weyl_dimension(b);
    });
    std::vector<const Rep*> reps;
    std::vector<std::size_t> offsets{0};
    for (const Weight& nu : blocks) {
        reps.push_back(&simple_module(datum, nu));
        offsets.push_back(offsets.back() + reps.back()->dim() * reps.back()->dim());
    }
    std::size_t total = offsets.back();
    std::vector<Vector> basis = unit_basis(total);
    for (const auto& g : solver_order(pres.generators)) {
        std::vector<ExactMatrix> parts;
        for (const Rep* r : reps)
            parts.push_back(adr_on_lspace(g.expr, *r) - ExactMatrix::identity(r->dim() * r->dim()) * g.eps);
        basis = restrict_kernel(basis, block_diagonal(parts));
        if (basis.empty()) break;
    }
    std::vector<SparseRow> rows;
    for (const auto& b : basis) rows.push_back(row_from_dense(b));
    Echelon e = rref(std::move(rows), total);
    std::vector<CenterCandidate> out;
    for (const auto& r : e.rows) {
        Vector v = row_to_dense(r, total);
        bool top = false;
        for (std::size_t k = 0; k < offsets[1]; ++k) top = top || !v[k].is_zero();
        if (!top) continue;
        CenterCandidate c{mu, blocks, {}};
        for (std::size_t b = 0; b < reps.size(); ++b) {
            Vector part(v.begin() + static_cast<std::ptrdiff_t>(offsets[b]),
                        v.begin() + static_cast<std::ptrdiff_t>(offsets[b + 1]));
            c.J.push_back(J_from_vector(part, reps[b]->dim()));
        }
        out.push_back(std::move(c));
    }
    return out;
}

bool PropReport::all_hold() const
{
    for (const auto& i : items)
        if (i.status != "member" && i.status != "holds" && i.status != "not applicable") return false;
    return true;
}

PropReport proposition_checks(const CoidealPresentation& pres, const Weight& mu, const std::vector<Weight>& probes,
                              const std::vector<Weight>& nus)
{
    const RootDatumPtr& datum = pres.datum_ptr();
    const RootDatum& d = *datum;
    const InvolutionDatum& inv = pres.inv;
    PropReport rep;
    JSolveResult js = solve_invariant_J(pres, mu);
    if (js.solutions.empty()) {
        rep.items.push_back({"J at " + d.format(mu), "not applicable", js.note});
        return rep;
    }
    const JSolution& s = js.solutions.front();
    auto member = [&](const std::string& name, const Expr& e) {
        MembershipReport m = membership_in_Lmu(datum, e, s, probes);
        std::ostringstream os;
        os << e.str(d) << "; ranks";
        for (auto r : m.ranks) os << " " << r;
        os << "; " << m.note;
        rep.items.push_back({name, to_string(m.status), os.str()});
        return m.status == Membership::Member;
    };

    bool theta_orth = true;
    for (int j : inv.pi_theta()) theta_orth = theta_orth && d.inner(mu, d.alpha(j)) == 0;
    std::vector<std::pair<int, Weight>> lambdas;  // B_i tau(lambda) in L_mu
    for (int i = 0; i < d.rank(); ++i) {
        if (inv.in_pi_theta(i)) continue;
        std::string tag = "B" + std::to_string(i + 1) + " tau(-Theta(mu)-mu) in L_mu";
        bool one = 2 * d.inner(mu, d.alpha(i)) == d.form(i, i);
        if (!inv.pzb_member(mu) || !theta_orth || !one) {
            rep.items.push_back({tag, "not applicable", "hypotheses on mu fail"});
            continue;
        }
        Weight lambda = -inv.theta(mu) - mu;
        Expr t = Expr::tau(lambda);
        if (member(tag, pres.B[static_cast<std::size_t>(i)] * t)) lambdas.emplace_back(i, lambda);
        member("C" + std::to_string(i + 1) + " tau(-Theta(mu)-mu) in L_mu", pres.C[static_cast<std::size_t>(i)] * t);
    }
    for (const auto& [i, lambda] : lambdas)
        for (int j : inv.pi_theta()) {
            if (d.form(i, j) == 0) continue;
            Weight w = lambda + d.alpha(i) + inv.theta(d.alpha(i));
            std::string k = std::to_string(j + 1);
            member("x" + k + " tau(lambda+alpha_i+Theta(alpha_i)) in L_mu, i=" + std::to_string(i + 1),
                   Expr::x(j) * Expr::tau(w));
            member("y" + k + " t" + k + " tau(lambda+alpha_i+Theta(alpha_i)) in L_mu, i=" + std::to_string(i + 1),
                   Expr::y(j) * Expr::t(d, j) * Expr::tau(w));
        }
    for (const auto& [i, lambda] : lambdas) {
        auto coords = d.nonneg_root_coords(-(inv.theta(d.alpha(i)) + d.alpha(inv.p(i))));
        std::vector<int> mi;
        for (int j : inv.pi_theta())
            if (coords && (*coords)[static_cast<std::size_t>(j)] != 0) mi.push_back(j);
        for (const Weight& nu : nus) {
            const Rep& v = simple_module(datum, nu);
            auto linv = lmu_invariants(build_Lmu_action(datum, s, nu));
            std::vector<std::pair<ExactMatrix, Scalar>> ops;
            for (int j : mi) {
                ops.emplace_back(v.x(j), Scalar(0));
                ops.emplace_back(v.y(j), Scalar(0));
                ops.emplace_back(v.t(j), Scalar(1));
            }
            auto minv = invariant_subspace(ops, v.dim());
            bool ok = subspace_contains(minv, linv);
            rep.items.push_back({"V(" + d.format(nu) + ")^L_mu inside V^M_" + std::to_string(i + 1),
                                 ok ? "holds" : "fails",
                                 "dim L-invariants " + std::to_string(linv.size()) + ", dim M_i-invariants " +
                                     std::to_string(minv.size())});
        }
    }
    if (inv.pi_theta().empty()) {
        // L_mu comes from d_{-w0 mu}; the recipe is stated for the generating weight
        Weight top = -d.w0(mu);
        for (int i = 0; i < d.rank(); ++i) {
            // shortest path i = i_k, ..., i_1 to the support of top in the Dynkin graph
            std::vector<int> prev(static_cast<std::size_t>(d.rank()), -2);
            std::deque<int> q{i};
            prev[static_cast<std::size_t>(i)] = -1;
            int hit = -1;
            while (!q.empty()) {
                int a = q.front();
                q.pop_front();
                if (d.inner(top, d.alpha(a)) != 0) {
                    hit = a;
                    break;
                }
                for (int b = 0; b < d.rank(); ++b)
                    if (b != a && d.form(a, b) != 0 && prev[static_cast<std::size_t>(b)] == -2) {
                        prev[static_cast<std::size_t>(b)] = a;
                        q.push_back(b);
                    }
            }
            std::string tag = "B" + std::to_string(i + 1) + " t(" + std::to_string(i + 1) + ") in L_mu";
            if (hit < 0) {
                rep.items.push_back({tag, "not applicable", "no path to the support of mu"});
                continue;
            }
            Weight wt = d.zero();
            for (int a = hit; a != -1; a = prev[static_cast<std::size_t>(a)]) wt += d.alpha(a);
            Weight base = top - wt;
            Weight ti = base + inv.theta(base);
            member(tag, pres.B[static_cast<std::size_t>(i)] * Expr::tau(ti));
        }
    }
    return rep;
}

}  // namespace qspr
