#include "qspr/linalg.hpp"
#include "qspr/reflection.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace qspr;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what)
    {
        if (!ok) pass = false;
        notes.push_back((ok ? "ok: " : "FAILED: ") + what);
    }
    void note(const std::string& what) { notes.push_back(what); }
};

struct Criterion {
    int id;
    std::string title;
    double budget_s;  // 0 for no bound
    std::function<void(Outcome&)> run;
};

std::string set_text(const RootDatum& d, const std::set<Weight>& ws)
{
    std::string s = "{";
    bool first = true;
    for (auto it = ws.rbegin(); it != ws.rend(); ++it) {
        s += (first ? "" : ", ") + d.format(*it);
        first = false;
    }
    return s + "}";
}

Weight wt(const RootDatum& d, const char* text) { return d.parse_weight(text); }

CoidealPresentation ai_sl2()
{
    auto pr = CoidealParams::defaults(1);
    pr.c[0] = Scalar::q_pow(2);
    return build_generators(InvolutionDatum::preset("AI", 1), pr);
}

CoidealPresentation diagonal_sl2()
{
    auto pr = CoidealParams::defaults(2);
    pr.d = {Scalar(-1), Scalar(-1)};
    pr.c = {Scalar::q_pow(1), Scalar::q_pow(1)};
    return build_generators(InvolutionDatum::diagonal("A1"), pr);
}

CoidealPresentation aiii_sl4()
{
    auto pr = CoidealParams::defaults(3);
    pr.c[0] = Scalar::q_pow(1);
    pr.c[2] = Scalar(-1);
    return build_generators(InvolutionDatum::preset("AIII", 3, 1), pr);
}

bool yang_baxter(const ExactMatrix& r, std::size_t n)
{
    ExactMatrix id = ExactMatrix::identity(n);
    ExactMatrix r12 = kron(r, id), r23 = kron(id, r);
    ExactMatrix p23 = kron(id, flip_matrix(n, n));
    ExactMatrix r13 = p23 * r12 * p23;
    return r12 * r13 * r23 == r23 * r13 * r12;
}

// ---------------------------------------------------------------- criteria

void table1(Outcome& out)
{
    std::vector<std::string> types;
    for (int n = 1; n <= 6; ++n) types.push_back("A" + std::to_string(n));
    for (char f : {'B', 'C'})
        for (int n = 2; n <= 6; ++n) types.push_back(std::string(1, f) + std::to_string(n));
    for (int n = 4; n <= 6; ++n) types.push_back("D" + std::to_string(n));
    for (const char* t : {"E6", "E7", "E8", "F4", "G2"}) types.push_back(t);
    std::size_t agree = 0;
    for (const auto& t : types) {
        auto d = RootDatum::make(t);
        auto mins = d->enumerate_minimal();
        auto entry = table1_entry(*d);
        if (!entry) {
            out.require(false, t + ": no reference row");
            continue;
        }
        auto ref = instantiate_table_entry(*d, *entry);
        std::set<Weight> a(mins.begin(), mins.end()), b(ref.begin(), ref.end());
        if (a == b)
            ++agree;
        else
            out.require(false, t + ": computed " + set_text(*d, a) + ", reference " + set_text(*d, b));
    }
    out.note(std::to_string(agree) + "/" + std::to_string(types.size()) + " types agree");
}

void table2(Outcome& out)
{
    auto show = [&](const std::string& name, const PzbComparison& c, const RootDatum& d) {
        std::set<Weight> e(c.equation_minimal.begin(), c.equation_minimal.end()), t(c.table.begin(), c.table.end());
        return name + ": equation " + set_text(d, e) + ", reference " + set_text(d, t);
    };
    auto aiv = InvolutionDatum::preset("AIV", 2);
    auto c = pzb_table_compare(aiv);
    out.require(c.has_table && c.agree(), show("AIV sl3", c, aiv.datum()));
    auto aiii = InvolutionDatum::preset("AIII", 3, 1);
    c = pzb_table_compare(aiii, 1);
    out.require(c.has_table && c.agree(), show("AIII r=1 sl4", c, aiii.datum()));
    for (const char* t : {"A1", "A2", "A3", "B2"}) {
        auto diag = InvolutionDatum::diagonal(t);
        c = pzb_table_compare(diag);
        out.require(c.has_table && c.agree(),
                    show(std::string("diagonal ") + t + (c.derived_reference ? " (derived reference)" : ""), c,
                         diag.datum()));
    }
    auto ai = InvolutionDatum::preset("AI", 1);
    c = pzb_table_compare(ai);
    std::string msg = show("AI sl2", c, ai.datum());
    if (c.agree())
        out.note(msg + " (agree)");
    else
        out.note(msg + " (documented discrepancy, reported)");
}

void rmatrix_props(Outcome& out)
{
    for (const char* t : {"A1", "A2"}) {
        auto d = RootDatum::make(t);
        const Rep& v = simple_module(d, d->omega(0));
        const ExactMatrix& r = r_matrix(d, d->omega(0), d->omega(0));
        auto chk = check_R(r, v, v);
        out.require(chk.triangular && chk.weight_conserving && chk.diagonal_values,
                    std::string(t) + " V(w1): triangular, weight conserving, diagonal values");
        out.require(chk.intertwining, std::string(t) + " V(w1): intertwines the coproduct");
        out.require(yang_baxter(r, v.dim()), std::string(t) + " V(w1): Yang-Baxter on the triple tensor");
    }
}

void lspan(Outcome& out)
{
    auto run = [&](const char* type, const char* mu, std::vector<Weight> nus) {
        auto d = RootDatum::make(type);
        Weight m = wt(*d, mu);
        std::size_t N = simple_module(d, m).dim();
        std::size_t r = l_span_rank(d, m, nus);
        out.require(r == N * N, std::string(type) + " V(" + mu + "): rank " + std::to_string(r) + " of " +
                                    std::to_string(N * N));
    };
    auto a1 = RootDatum::make("A1");
    auto a2 = RootDatum::make("A2");
    std::vector<Weight> s1, s2;
    for (long k = 0; k <= 4; ++k) s1.push_back(k * a1->omega(0));
    for (long k = 0; k <= 2; ++k) s2.push_back(k * a2->omega(0) + k * a2->omega(1));
    run("A1", "w1", s1);
    run("A1", "2w1", s1);
    run("A2", "w1", s2);
}

void pipeline(Outcome& out)
{
    auto one = [&](const std::string& name, const CoidealPresentation& p, const Weight& mu) {
        auto res = solve_invariant_J(p, mu);
        if (res.solutions.empty()) {
            out.require(false, name + ": no J (" + res.note + ")");
            return;
        }
        const JSolution& s = res.solutions[0];
        out.require(!s.J.is_zero(), name + ": nonzero J");
        out.require(verify_reflection_equation(p.datum_ptr(), s).ok, name + ": reflection equation");
        auto t = translate_left_right(p.datum_ptr(), s);
        out.require(t.dijk.ok, name + ": left-right reflection equation");
        out.require(untranslate(t) == s.J, name + ": translation round trip");
    };
    auto ai = ai_sl2();
    one("AI sl2 mu=2w1", ai, wt(ai.datum(), "2w1"));
    auto diag = diagonal_sl2();
    one("diagonal mu=w1+w2", diag, wt(diag.datum(), "w1+w2"));
}

void conjecture(Outcome& out)
{
    auto ai = ai_sl2();
    auto s = solve_invariant_J(ai, wt(ai.datum(), "2w1")).solutions.at(0);
    bool all = true;
    for (long k = 0; k <= 6; ++k) {
        auto c = compare_invariants(ai, s, Weight(std::vector<long>{k}));
        std::size_t oracle = k % 2 == 0 ? 1 : 0;
        all = all && c.equal && c.dim_B == oracle && c.dim_L == oracle;
        if (!c.equal || c.dim_B != oracle)
            out.require(false, "AI nu=" + std::to_string(k) + "w1: dim B " + std::to_string(c.dim_B) + ", dim L " +
                                   std::to_string(c.dim_L));
    }
    out.require(all, "AI sl2, nu = k w1 for k <= 6: equal, dimension 1 iff k even");
    auto diag = diagonal_sl2();
    auto sd = solve_invariant_J(diag, wt(diag.datum(), "w1+w2")).solutions.at(0);
    all = true;
    for (long a = 0; a <= 3; ++a)
        for (long b = 0; b <= 3; ++b) {
            auto c = compare_invariants(diag, sd, Weight(std::vector<long>{a, b}));
            std::size_t oracle = a == b ? 1 : 0;
            bool ok = c.equal && c.dim_B == oracle && c.dim_L == oracle;
            all = all && ok;
            if (!ok)
                out.require(false, "diagonal nu=(" + std::to_string(a) + "," + std::to_string(b) + "): dim B " +
                                       std::to_string(c.dim_B) + ", dim L " + std::to_string(c.dim_L));
        }
    out.require(all, "diagonal, nu = (a,b) for a,b <= 3: equal, dimension delta_ab");
}

void propositions(Outcome& out)
{
    auto check = [&](const std::string& label, const CoidealPresentation& p, const Weight& mu,
                     const std::vector<Weight>& probes, const std::vector<Weight>& nus,
                     const std::vector<std::string>& wanted) {
        auto rep = proposition_checks(p, mu, probes, nus);
        for (const auto& w : wanted) {
            bool found = false;
            for (const auto& i : rep.items) {
                if (i.name.find(w) == std::string::npos) continue;
                found = true;
                bool ok = i.status == "member" || i.status == "holds";
                out.require(ok, label + ": " + i.name + " -> " + i.status);
            }
            if (!found) out.require(false, label + ": no item " + w);
        }
    };
    auto aiii = aiii_sl4();
    const RootDatum& d = aiii.datum();
    auto probes = default_probes(d, 8, 64);
    check("AIII sl4 mu=w1", aiii, wt(d, "w1"), probes, probes,
          {"B1 tau(", "C1 tau(", "x2 tau(", "y2 t2 tau(", "^L_mu inside"});
    auto diag = diagonal_sl2();
    check("diagonal mu=w1+w2", diag, wt(diag.datum(), "w1+w2"), default_probes(diag.datum(), 6), {},
          {"B1 t(1)", "B2 t(2)"});
}

void negatives(Outcome& out)
{
    auto ai = ai_sl2();
    auto s = solve_invariant_J(ai, wt(ai.datum(), "2w1")).solutions.at(0);
    const ExactMatrix& R = r_matrix(ai.datum_ptr(), s.mu, s.dual_mu);
    ExactMatrix Rt = compute_Rtilde(R, s.n, s.n);
    // deterministic pseudo-random perturbation of a few entries
    ExactMatrix bad = s.J;
    unsigned state = 12345;
    for (int k = 0; k < 3; ++k) {
        state = state * 1103515245u + 12345u;
        std::size_t r = (state >> 8) % s.n, c = (state >> 16) % s.n;
        bad.set(r, c, bad.get(r, c) + Scalar(static_cast<long>(state % 7) + 1) * Scalar::q_pow(k));
    }
    auto rep = verify_reflection_equation(bad, R, Rt);
    out.require(!rep.ok && rep.residual_count > 0,
                "perturbed J fails with " + std::to_string(rep.residual_count) + " nonzero residual entries");
    out.require(verify_reflection_equation(s.J, R, Rt).ok, "unperturbed J still passes");

    auto v = build_module(ai.datum_ptr(), Weight(std::vector<long>{2}));
    out.require(check_kappaB_stability(ai, v).ok(), "AI with c = q^2 is kappa_B stable");
    auto pr = ai.params;
    pr.c[0] = Scalar::q_pow(3);
    out.require(check_kappaB_stability(build_generators(ai.inv, pr), v).failed(), "AI with corrupted c fails");
    auto aiii = aiii_sl4();
    auto probe = default_probe(aiii.datum_ptr());
    auto pa = aiii.params;
    pa.d[0] = Scalar(3);
    out.require(check_kappaB_stability(build_generators(aiii.inv, pa), probe).failed(), "AIII with corrupted d fails");
}

void fii(Outcome& out)
{
    auto inv = InvolutionDatum::preset("FII", 4);
    auto p = build_generators(inv, CoidealParams::defaults(4));
    Weight mu = inv.datum().omega(3);
    auto res = solve_invariant_J(p, mu);
    out.note("l-space dim " + std::to_string(res.lspace_dim) + ", ad_r invariants " +
             std::to_string(res.invariant_dim));
    if (res.solutions.empty()) {
        out.require(false, "no J at w4: " + res.note);
        return;
    }
    out.require(res.solutions[0].n == 26, "N = 26");
    out.require(verify_reflection_equation(p.datum_ptr(), res.solutions[0]).ok, "reflection equation at w4");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"acceptance criteria"};
    bool large = false, verbose = false;
    std::vector<int> only;
    app.add_flag("--large", large, "also run the F4 criterion");
    app.add_flag("-v,--verbose", verbose, "print every sub-check");
    app.add_option("--only", only, "criteria to run")->delimiter(',');
    CLI11_PARSE(app, argc, argv);

    std::vector<Criterion> all{
        {1, "minimal weight table", 60, table1},
        {2, "coideal center lattice table", 30, table2},
        {3, "R-matrix properties", 120, rmatrix_props},
        {4, "l-functional span", 120, lspan},
        {5, "reflection equation pipeline", 300, pipeline},
        {6, "invariant comparison", 600, conjecture},
        {7, "membership checks on L_mu", 1200, propositions},
        {8, "negative controls", 60, negatives},
        {9, "F4 FII end to end", 0, fii},
    };
    bool ok = true;
    for (const auto& c : all) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        if (c.id == 9 && !large) {
            std::cout << "criterion 9: SKIP (needs --large)  " << c.title << "\n";
            continue;
        }
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0 && secs > c.budget_s)
            o.require(false, "runtime " + std::to_string(secs) + " s over the budget");
        std::ostringstream t;
        t << std::fixed << std::setprecision(2) << secs;
        std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "  (" << t.str()
                  << " s)\n";
        for (const auto& n : o.notes)
            if (verbose || n.rfind("ok: ", 0) != 0) std::cout << "    " << n << "\n";
        ok = ok && o.pass;
    }
    return ok ? 0 : 1;
}
