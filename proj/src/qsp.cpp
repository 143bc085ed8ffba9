#include "qspr/qsp.hpp"

#include "qspr/linalg.hpp"

#include <functional>
#include <map>
#include <sstream>

namespace qspr {

namespace {

std::string node_name(char c, int i) { return std::string(1, c) + std::to_string(i + 1); }

bool evaluates_to_zero(const Rep& probe, const Expr& e) { return probe.evaluate(e).is_zero(); }

struct SpanBuilder {
    RowSpace space;
    std::vector<Monomial> basis;
    explicit SpanBuilder(std::size_t n) : space(n) {}
    bool add(std::string label, const ExactMatrix& m)
    {
        if (!space.insert(m.flatten())) return false;
        basis.push_back({std::move(label), m});
        return true;
    }
};

// basis of span{words of length <= degree in the letters}, as (label, matrix, length)
struct GradedWord {
    std::string label;
    ExactMatrix mat;
    int length;
};
std::vector<GradedWord> word_span(const std::vector<std::pair<std::string, ExactMatrix>>& letters, std::size_t dim,
                                  int degree)
{
    RowSpace space(dim * dim);
    std::vector<GradedWord> out;
    ExactMatrix id = ExactMatrix::identity(dim);
    space.insert(id.flatten());
    out.push_back({"1", id, 0});
    std::size_t frontier_begin = 0;
    for (int len = 1; degree < 0 || len <= degree; ++len) {
        std::size_t frontier_end = out.size();
        bool grew = false;
        for (std::size_t k = frontier_begin; k < frontier_end; ++k)
            for (const auto& [name, m] : letters) {
                ExactMatrix p = m * out[k].mat;
                if (!space.insert(p.flatten())) continue;
                std::string label = out[k].length == 0 ? name : name + "*" + out[k].label;
                out.push_back({label, std::move(p), len});
                grew = true;
            }
        if (!grew) break;
        frontier_begin = frontier_end;
    }
    return out;
}

}  // namespace

CoidealParams CoidealParams::defaults(int rank)
{
    std::size_t n = static_cast<std::size_t>(rank);
    return {std::vector<Scalar>(n, Scalar(1)), std::vector<Scalar>(n, Scalar(0)), std::vector<Scalar>(n, Scalar(1))};
}

Rep default_probe(const RootDatumPtr& datum)
{
    std::vector<Rep> parts;
    for (int i = 0; i < datum->rank(); ++i) {
        Weight w = datum->omega(i);
        if (datum->weyl_dimension(w) > rep_caps().module_dim) continue;
        parts.push_back(build_module(datum, w));
    }
    if (parts.empty()) throw CoidealError("no fundamental module within the module cap for " + datum->label());
    return direct_sum(parts);
}

ThetaTilde build_theta_tilde(const InvolutionDatum& inv, int i, const Rep& probe, std::size_t max_depth)
{
    const RootDatum& d = inv.datum();
    if (inv.in_pi_theta(i)) throw CoidealError("theta_tilde requested for a node of pi_Theta");
    int p = inv.p(i);
    Weight target = -inv.theta(d.alpha(i));
    auto rest = d.nonneg_root_coords(target - d.alpha(p));
    if (!rest) throw CoidealError("-Theta(alpha_i) - alpha_p(i) is not in N_0 pi");
    std::vector<long> need = *rest;
    std::size_t depth = 0;
    for (int j = 0; j < d.rank(); ++j) {
        long c = need[static_cast<std::size_t>(j)];
        if (c != 0 && !inv.in_pi_theta(j)) throw CoidealError("-Theta(alpha_i) leaves pi_Theta + alpha_p(i)");
        depth += static_cast<std::size_t>(c);
    }
    if (depth > max_depth) throw CoidealError("theta_tilde chain exceeds the search depth");

    auto invariant = [&](const Expr& e) {
        for (int j : inv.pi_theta())
            if (!evaluates_to_zero(probe, ad_r(d, Expr::x(j), e))) return false;
        return true;
    };
    Expr start = Expr::t(d, p, -1) * Expr::x(p);
    std::vector<int> chain;
    std::optional<ThetaTilde> found;
    std::function<void(const Expr&)> search = [&](const Expr& e) {
        if (found) return;
        bool done = true;
        for (long c : need) done = done && c == 0;
        if (done) {
            if (invariant(e)) found = ThetaTilde{chain, e};
            return;
        }
        for (int j : inv.pi_theta()) {
            auto& c = need[static_cast<std::size_t>(j)];
            if (c == 0) continue;
            Expr next = ad_r(d, Expr::x(j), e);
            if (evaluates_to_zero(probe, next)) continue;
            --c;
            chain.push_back(j);
            search(next);
            chain.pop_back();
            ++c;
            if (found) return;
        }
    };
    if (evaluates_to_zero(probe, start)) throw CoidealError("probe does not see x_p(i)");
    search(start);
    if (!found) throw CoidealError("no chain in pi_Theta reaches an ad_r(M^+)-invariant theta_tilde(y_" +
                                   std::to_string(i + 1) + ")");
    return *found;
}

CoidealPresentation build_generators(const InvolutionDatum& inv, const CoidealParams& params)
{
    bool need_probe = false;
    for (int i = 0; i < inv.datum().rank(); ++i) need_probe = need_probe || !inv.in_pi_theta(i);
    if (!need_probe || inv.pi_theta().empty()) return build_generators(inv, params, trivial_module(inv.datum_ptr()));
    return build_generators(inv, params, default_probe(inv.datum_ptr()));
}

CoidealPresentation build_generators(const InvolutionDatum& inv, const CoidealParams& params, const Rep& probe)
{
    const RootDatum& d = inv.datum();
    const int n = d.rank();
    const std::size_t un = static_cast<std::size_t>(n);
    if (params.d.size() != un || params.s.size() != un || params.c.size() != un)
        throw std::invalid_argument("coideal parameters need one entry per node");
    for (int i = 0; i < n; ++i) {
        if (params.c[static_cast<std::size_t>(i)].is_zero()) throw std::invalid_argument("c_B must be nonzero");
        if (!inv.in_pi_theta(i) && params.d[static_cast<std::size_t>(i)].is_zero())
            throw std::invalid_argument("d_i must be nonzero");
    }
    CoidealPresentation pres{inv, params, {}, {}, {}, {}, {}};
    pres.chain.resize(un);
    pres.theta_tilde.resize(un);
    pres.B.resize(un);
    pres.C.resize(un);
    for (int i = 0; i < n; ++i) {
        std::size_t ui = static_cast<std::size_t>(i);
        Expr yt = Expr::y(i) * Expr::t(d, i);
        if (inv.in_pi_theta(i)) {
            pres.B[ui] = yt;
            continue;
        }
        ThetaTilde th;
        if (inv.pi_theta().empty()) {
            int p = inv.p(i);
            Weight target = -inv.theta(d.alpha(i));
            if (target != d.alpha(p)) throw CoidealError("Theta(alpha_i) != -alpha_p(i) with pi_Theta empty");
            th = {{}, Expr::t(d, p, -1) * Expr::x(p)};
        } else {
            th = build_theta_tilde(inv, i, probe);
        }
        pres.chain[ui] = th.chain;
        pres.theta_tilde[ui] = th.expr;
        pres.B[ui] = yt + params.d[ui] * (th.expr * Expr::t(d, i)) + params.s[ui] * Expr::t(d, i);
        pres.C[ui] = params.c[ui] * kappa_B(d, pres.B[ui], params.c);
    }
    for (int i = 0; i < n; ++i)
        if (!inv.in_pi_theta(i))
            pres.generators.push_back({node_name('B', i), pres.B[static_cast<std::size_t>(i)],
                                       params.s[static_cast<std::size_t>(i)]});
    for (int j : inv.pi_theta()) {
        pres.generators.push_back({node_name('x', j), Expr::x(j), Scalar(0)});
        pres.generators.push_back({node_name('y', j), Expr::y(j), Scalar(0)});
        pres.generators.push_back({node_name('t', j), Expr::t(d, j), Scalar(1)});
        pres.generators.push_back({node_name('t', j) + "^-1", Expr::t(d, j, -1), Scalar(1)});
    }
    for (const Weight& l : inv.fixed_lattice())
        pres.generators.push_back({"tau(" + d.format(l) + ")", Expr::tau(l), Scalar(1)});
    return pres;
}

std::vector<ExactMatrix> torus_projectors(const InvolutionDatum& inv, const Rep& m)
{
    const RootDatum& d = inv.datum();
    std::map<std::vector<Rational>, std::vector<std::size_t>> classes;
    for (std::size_t k = 0; k < m.dim(); ++k) {
        std::vector<Rational> key;
        for (const Weight& l : inv.fixed_lattice()) key.push_back(d.inner(l, m.weight(k)));
        classes[key].push_back(k);
    }
    std::vector<ExactMatrix> out;
    for (const auto& [key, idx] : classes) {
        ExactMatrix p(m.dim(), m.dim());
        for (std::size_t k : idx) p.set(k, k, Scalar(1));
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<Monomial> coideal_basis_matrices(const CoidealPresentation& pres, const Rep& m, int degree)
{
    const RootDatum& d = pres.datum();
    std::vector<std::pair<std::string, ExactMatrix>> bl, xl;
    for (int i = 0; i < d.rank(); ++i) bl.emplace_back(node_name('B', i), m.evaluate(pres.B[static_cast<std::size_t>(i)]));
    for (int j : pres.inv.pi_theta()) xl.emplace_back(node_name('x', j), m.x(j));
    auto bw = word_span(bl, m.dim(), degree);
    auto xw = word_span(xl, m.dim(), degree);
    auto proj = torus_projectors(pres.inv, m);
    SpanBuilder span(m.dim() * m.dim());
    for (const auto& b : bw)
        for (const auto& x : xw) {
            if (degree >= 0 && b.length + x.length > degree) continue;
            ExactMatrix bx = b.mat * x.mat;
            std::string base = b.label == "1" ? x.label : (x.label == "1" ? b.label : b.label + "*" + x.label);
            for (std::size_t c = 0; c < proj.size(); ++c)
                span.add(base + (proj.size() > 1 ? "*P" + std::to_string(c) : ""), bx * proj[c]);
        }
    return std::move(span.basis);
}

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

bool CheckReport::ok() const
{
    for (const auto& c : items)
        if (c.status != CheckStatus::Pass) return false;
    return true;
}

bool CheckReport::failed() const
{
    for (const auto& c : items)
        if (c.status == CheckStatus::Fail) return true;
    return false;
}

CheckReport check_kappaB_stability(const CoidealPresentation& pres, const Rep& probe, int degree)
{
    const RootDatum& d = pres.datum();
    auto basis = coideal_basis_matrices(pres, probe, degree);
    RowSpace space(probe.dim() * probe.dim());
    for (const auto& b : basis) space.insert(b.mat.flatten());
    CheckReport rep;
    rep.span_rank = space.rank();
    rep.full_rank = probe.dim() * probe.dim();
    bool trivial = rep.span_rank == rep.full_rank;
    for (const auto& g : pres.generators) {
        Expr k = kappa_B(d, g.expr, pres.params.c);
        bool in = space.contains(probe.evaluate(k).flatten());
        NamedCheck c{"kappa_B(" + g.name + ")", in ? CheckStatus::Pass : CheckStatus::Fail, ""};
        if (in && trivial) {
            c.status = CheckStatus::Inconclusive;
            c.detail = "coideal image is all of End(V) on this probe";
        }
        rep.items.push_back(std::move(c));
    }
    return rep;
}

CheckReport check_left_coideal(const CoidealPresentation& pres, const Rep& left, const Rep& right)
{
    const RootDatum& d = pres.datum();
    auto basis = coideal_basis_matrices(pres, right, -1);
    RowSpace space(right.dim() * right.dim());
    for (const auto& b : basis) space.insert(b.mat.flatten());
    CheckReport rep;
    rep.span_rank = space.rank();
    rep.full_rank = right.dim() * right.dim();
    for (const auto& g : pres.generators) {
        TensorExpr dg = coproduct(d, g.expr);
        std::map<std::pair<std::size_t, std::size_t>, ExactMatrix> legs;
        for (const auto& [ws, c] : dg.terms()) {
            ExactMatrix a = left.evaluate(Expr::word(ws[0]));
            ExactMatrix b = right.evaluate(Expr::word(ws[1]));
            for (std::size_t r = 0; r < a.rows(); ++r)
                for (const auto& e : a.row(r)) {
                    auto [it, fresh] = legs.try_emplace({r, e.col}, right.dim(), right.dim());
                    it->second += b * (c * e.val);
                }
        }
        bool ok = true;
        for (const auto& [rc, m] : legs) ok = ok && space.contains(m.flatten());
        NamedCheck c{"Delta(" + g.name + ")", ok ? CheckStatus::Pass : CheckStatus::Fail, ""};
        if (ok && rep.span_rank == rep.full_rank) {
            c.status = CheckStatus::Inconclusive;
            c.detail = "coideal image is all of End(V) on this probe";
        }
        rep.items.push_back(std::move(c));
    }
    return rep;
}

CheckReport check_commutators(const CoidealPresentation& pres, const Rep& probe)
{
    const RootDatum& d = pres.datum();
    CheckReport rep;
    if (!pres.inv.pi_theta().empty()) return rep;
    for (int i = 0; i < d.rank(); ++i) {
        int p = pres.inv.p(i);
        if (p <= i) continue;
        ExactMatrix bi = probe.evaluate(pres.B[static_cast<std::size_t>(i)]);
        ExactMatrix bp = probe.evaluate(pres.B[static_cast<std::size_t>(p)]);
        ExactMatrix lhs = bi * bp - bp * bi;
        Rational e = d.qi_exponent(i);
        Scalar den = Scalar::q_pow(e) - Scalar::q_pow(-e);
        Weight a = d.alpha(i) - d.alpha(p);
        ExactMatrix rhs = (probe.tau(a) - probe.tau(-a)) * den.inverse();
        bool ok = lhs == rhs;
        NamedCheck c{"[B" + std::to_string(i + 1) + ",B" + std::to_string(p + 1) + "]",
                     ok ? CheckStatus::Pass : CheckStatus::Fail, ""};
        if (!ok) {
            // report the scalar k with lhs = k rhs when there is one
            auto flat_l = lhs.flatten();
            auto flat_r = rhs.flatten();
            std::ostringstream os;
            if (!flat_r.empty() && flat_l.size() == flat_r.size()) {
                Scalar k = flat_l[0].val / flat_r[0].val;
                if (lhs == rhs * k) os << "lhs = (" << k.str() << ") * rhs";
            }
            c.detail = os.str().empty() ? "lhs and rhs not proportional" : os.str();
        }
        rep.items.push_back(std::move(c));
    }
    return rep;
}

CheckReport check_presentation(const CoidealPresentation& pres, const Rep& probe)
{
    const RootDatum& d = pres.datum();
    CheckReport rep;
    for (int i = 0; i < d.rank(); ++i) {
        std::size_t ui = static_cast<std::size_t>(i);
        Scalar eps = counit(pres.B[ui]);
        Scalar want = pres.inv.in_pi_theta(i) ? Scalar(0) : pres.params.s[ui];
        rep.items.push_back({"eps(B" + std::to_string(i + 1) + ")", eps == want ? CheckStatus::Pass : CheckStatus::Fail,
                             "eps = " + eps.str()});
        if (pres.inv.in_pi_theta(i)) continue;
        auto w = expr_weight(d, pres.theta_tilde[ui]);
        bool wok = w && *w == -pres.inv.theta(d.alpha(i));
        rep.items.push_back({"wt theta_tilde(y" + std::to_string(i + 1) + ")",
                             wok ? CheckStatus::Pass : CheckStatus::Fail, ""});
        bool inv_ok = true;
        for (int j : pres.inv.pi_theta())
            inv_ok = inv_ok && evaluates_to_zero(probe, ad_r(d, Expr::x(j), pres.theta_tilde[ui]));
        rep.items.push_back({"ad_r(M+) theta_tilde(y" + std::to_string(i + 1) + ")",
                             inv_ok ? CheckStatus::Pass : CheckStatus::Fail, ""});
    }
    return rep;
}

InvolutionDatum involution_from_json(const nlohmann::json& j)
{
    if (!j.contains("preset")) {
        auto datum = RootDatum::make(j.at("type").get<std::string>());
        int n = datum->rank();
        std::vector<int> pt, perm;
        for (int k : j.at("pi_theta").get<std::vector<int>>()) pt.push_back(k - 1);
        for (int k : j.value("diagram", std::vector<int>{})) perm.push_back(k - 1);
        if (perm.empty())
            for (int i = 0; i < n; ++i) perm.push_back(i);
        return InvolutionDatum(datum, pt, perm, j.value("label", std::string("explicit")));
    }
    std::string preset = j.at("preset").get<std::string>();
    if (preset == "diagonal") return InvolutionDatum::diagonal(j.at("type").get<std::string>());
    return InvolutionDatum::preset(preset, j.at("rank").get<int>(), j.value("r", 0));
}

CoidealParams params_from_json(const nlohmann::json& j, int rank)
{
    CoidealParams p = CoidealParams::defaults(rank);
    auto fill = [&](const char* key, std::vector<Scalar>& dst) {
        if (!j.contains(key)) return;
        for (const auto& [k, v] : j.at(key).items()) {
            int node = std::stoi(k);
            if (node < 1 || node > rank) throw std::invalid_argument(std::string("parameter ") + key + ": bad node " + k);
            dst[static_cast<std::size_t>(node - 1)] = Scalar::parse(v.is_string() ? v.get<std::string>() : v.dump());
        }
    };
    fill("d", p.d);
    fill("s", p.s);
    fill("cB", p.c);
    return p;
}

nlohmann::json to_json(const CoidealPresentation& pres)
{
    const RootDatum& d = pres.datum();
    nlohmann::json j;
    j["type"] = d.label();
    j["involution"] = pres.inv.label();
    std::vector<int> pt;
    for (int k : pres.inv.pi_theta()) pt.push_back(k + 1);
    j["pi_theta"] = pt;
    nlohmann::json nodes = nlohmann::json::array();
    for (int i = 0; i < d.rank(); ++i) {
        std::size_t ui = static_cast<std::size_t>(i);
        nlohmann::json e;
        e["node"] = i + 1;
        e["p"] = pres.inv.p(i) + 1;
        e["d"] = pres.params.d[ui].str();
        e["s"] = pres.params.s[ui].str();
        e["cB"] = pres.params.c[ui].str();
        e["B"] = pres.B[ui].str(d);
        if (!pres.inv.in_pi_theta(i)) {
            std::vector<int> ch;
            for (int k : pres.chain[ui]) ch.push_back(k + 1);
            e["chain"] = ch;
            e["theta_tilde"] = pres.theta_tilde[ui].str(d);
            e["C"] = pres.C[ui].str(d);
        }
        nodes.push_back(e);
    }
    j["nodes"] = nodes;
    std::vector<std::string> tp;
    for (const Weight& l : pres.inv.fixed_lattice()) tp.push_back(d.format(l));
    j["torus"] = tp;
    return j;
}

}  // namespace qspr
