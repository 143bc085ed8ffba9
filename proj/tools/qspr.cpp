#include "session.hpp"

#include "qspr/linalg.hpp"
#include "qspr/rmatrix.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <iostream>
#include <set>

using namespace qspr;
using namespace qspr::cli;
using nlohmann::json;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct Options {
    std::string type, preset, config, weight, left, right, mu, probe, check = "all", emit, jfile;
    int rank = 0, r = 0, degree = -1, nu_max = 3, probe_count = 6;
    std::size_t max_residuals = 8, probe_dim = 32;
    unsigned jobs = 1;
    bool no_cache = false;
};

RootDatumPtr datum_from(const Options& o)
{
    if (o.type.empty()) throw UsageError("--type is required");
    std::string t = o.type;
    bool has_digit = std::any_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (!has_digit) {
        if (o.rank <= 0) throw UsageError("--rank is required with a bare type letter");
        t += std::to_string(o.rank);
    }
    try {
        return RootDatum::make(t);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

SessionConfig session(const Options& o, bool need_pair)
{
    SessionConfig cfg = o.config.empty() ? config_from_json(json::object()) : load_config(o.config);
    if (need_pair && !cfg.inv) throw UsageError("a config with an involution is required (--config)");
    apply(cfg, !o.no_cache);
    return cfg;
}

void emit(const Options& o, const json& j)
{
    if (!o.emit.empty()) write_file(o.emit, j.dump(1) + "\n");
}

std::string weight_set(const RootDatum& d, const std::vector<Weight>& ws)
{
    std::string s = "{";
    for (std::size_t k = 0; k < ws.size(); ++k) s += (k ? ", " : "") + d.format(ws[k]);
    return s + "}";
}

std::vector<Weight> sorted(std::vector<Weight> ws)
{
    std::sort(ws.begin(), ws.end(), std::greater<>());
    return ws;
}

// ---------------------------------------------------------------- subcommands

int cmd_roots(const Options& o)
{
    auto d = datum_from(o);
    session(o, false);
    std::cout << "type " << d->label() << "  rank " << d->rank() << "  positive roots " << d->positive_roots().size()
              << "\n";
    std::cout << "cartan matrix\n";
    json cartan = json::array();
    for (int i = 0; i < d->rank(); ++i) {
        std::cout << "  [";
        json row = json::array();
        for (int j = 0; j < d->rank(); ++j) {
            std::cout << (j ? " " : "") << d->cartan(i, j);
            row.push_back(d->cartan(i, j));
        }
        std::cout << "]\n";
        cartan.push_back(row);
    }
    json roots = json::array();
    std::cout << "positive roots (simple root coordinates : weight)\n";
    for (std::size_t k = 0; k < d->positive_roots().size(); ++k) {
        const auto& c = d->positive_root_coords()[k];
        std::cout << "  [";
        for (std::size_t i = 0; i < c.size(); ++i) std::cout << (i ? " " : "") << c[i];
        std::cout << "] : " << d->format(d->positive_roots()[k]) << "\n";
        roots.push_back({{"coords", c}, {"weight", d->format(d->positive_roots()[k])}});
    }
    std::cout << "rho = " << d->format(d->rho()) << "\n";
    emit(o, {{"type", d->label()}, {"cartan", cartan}, {"positive_roots", roots}, {"rho", d->format(d->rho())}});
    return kPass;
}

int cmd_minimal(const Options& o)
{
    auto d = datum_from(o);
    session(o, false);
    auto mins = sorted(d->enumerate_minimal());
    std::cout << weight_set(*d, mins) << "\n";
    json j{{"type", d->label()}, {"minimal", json::array()}};
    for (const auto& w : mins) j["minimal"].push_back(d->format(w));
    int status = kPass;
    if (auto entry = table1_entry(*d)) {
        auto table = sorted(instantiate_table_entry(*d, *entry));
        bool agree = std::set<Weight>(mins.begin(), mins.end()) == std::set<Weight>(table.begin(), table.end());
        std::cout << "reference table: " << weight_set(*d, table) << "  " << (agree ? "agree" : "differ") << "\n";
        j["table"] = json::array();
        for (const auto& w : table) j["table"].push_back(d->format(w));
        j["agree"] = agree;
        if (!agree) status = kFail;
    }
    emit(o, j);
    return status;
}

int cmd_pzb(const Options& o)
{
    SessionConfig cfg = session(o, false);
    InvolutionDatum inv = [&] {
        if (cfg.inv) return *cfg.inv;
        if (o.preset.empty()) throw UsageError("--preset or --config is required");
        json j{{"preset", o.preset}, {"rank", o.rank}, {"r", o.r}};
        if (o.preset == "diagonal") j["type"] = o.type;
        try {
            return involution_from_json(j);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
    }();
    const RootDatum& d = inv.datum();
    int r = cfg.inv ? cfg.raw.value("r", 0) : o.r;
    auto cmp = pzb_table_compare(inv, r);
    std::cout << "involution " << inv.label() << " on " << d.label() << "\n";
    std::cout << "equation minimal: " << weight_set(d, sorted(cmp.equation_minimal)) << "\n";
    json j{{"type", d.label()}, {"involution", inv.label()}, {"equation_minimal", json::array()}};
    for (const auto& w : sorted(cmp.equation_minimal)) j["equation_minimal"].push_back(d.format(w));
    if (!cmp.has_table) {
        std::cout << "reference: none\n";
        emit(o, j);
        return kPass;
    }
    std::string key = cmp.table_key;
    key.erase(std::remove(key.begin(), key.end(), '$'), key.end());
    std::cout << "reference" << (cmp.derived_reference ? " (derived)" : "") << " [" << key
              << "]: " << weight_set(d, sorted(cmp.table)) << "\n";
    std::cout << (cmp.agree() ? "agree" : "differ") << "\n";
    if (!cmp.only_equation.empty()) std::cout << "  only in equation: " << weight_set(d, cmp.only_equation) << "\n";
    if (!cmp.only_table.empty()) std::cout << "  only in reference: " << weight_set(d, cmp.only_table) << "\n";
    j["reference_key"] = key;
    j["reference_derived"] = cmp.derived_reference;
    j["reference"] = json::array();
    for (const auto& w : sorted(cmp.table)) j["reference"].push_back(d.format(w));
    j["agree"] = cmp.agree();
    emit(o, j);
    return cmp.agree() ? kPass : kFail;
}

int cmd_module(const Options& o)
{
    auto d = datum_from(o);
    session(o, false);
    Weight mu = parse_weight_arg(*d, o.weight);
    Rep v = build_module(d, mu);
    bool rel = check_relations(v);
    std::cout << "V(" << d->format(mu) << ")  dim " << v.dim() << "\n";
    std::cout << "relations: " << (rel ? "pass" : "fail") << "\n";
    json j{{"type", d->label()}, {"weight", d->format(mu)}, {"dim", v.dim()}, {"relations", rel}};
    j["weights"] = json::array();
    for (const auto& w : v.weights()) j["weights"].push_back(d->format(w));
    j["x"] = json::array();
    j["y"] = json::array();
    for (int i = 0; i < d->rank(); ++i) {
        j["x"].push_back(to_json(v.x(i)));
        j["y"].push_back(to_json(v.y(i)));
    }
    emit(o, j);
    return rel ? kPass : kFail;
}

int cmd_rmatrix(const Options& o)
{
    auto d = datum_from(o);
    session(o, false);
    Weight l = parse_weight_arg(*d, o.left), m = parse_weight_arg(*d, o.right);
    const ExactMatrix& R = r_matrix(d, l, m);
    auto chk = check_R(R, simple_module(d, l), simple_module(d, m));
    std::cout << "R on V(" << d->format(l) << ") (x) V(" << d->format(m) << ")  size " << R.rows() << "\n";
    std::cout << "triangular: " << (chk.triangular ? "pass" : "fail") << "\n"
              << "weight conserving: " << (chk.weight_conserving ? "pass" : "fail") << "\n"
              << "diagonal values: " << (chk.diagonal_values ? "pass" : "fail") << "\n"
              << "intertwining: " << (chk.intertwining ? "pass" : "fail") << "\n";
    if (R.rows() <= 16) std::cout << matrix_text(R);
    emit(o, {{"type", d->label()},
             {"left", d->format(l)},
             {"right", d->format(m)},
             {"R", to_json(R)},
             {"checks",
              {{"triangular", chk.triangular},
               {"weight_conserving", chk.weight_conserving},
               {"diagonal_values", chk.diagonal_values},
               {"intertwining", chk.intertwining}}}});
    return chk.ok() ? kPass : kFail;
}

Rep probe_module(const SessionConfig& cfg, const RootDatumPtr& d, const std::string& text)
{
    std::vector<Weight> ws;
    if (!text.empty())
        ws = parse_weight_list(*d, text);
    else
        for (const auto& p : cfg.probes) ws.push_back(parse_weight_arg(*d, p));
    if (ws.empty()) return default_probe(d);
    std::vector<Rep> reps;
    for (const auto& w : ws) reps.push_back(simple_module(d, w));
    return reps.size() == 1 ? reps[0] : direct_sum(reps);
}

json report_json(const CheckReport& r)
{
    json j{{"span_rank", r.span_rank}, {"full_rank", r.full_rank}, {"items", json::array()}};
    for (const auto& c : r.items) j["items"].push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
    return j;
}

int cmd_coideal(const Options& o)
{
    SessionConfig cfg = session(o, true);
    CoidealPresentation pres = build_generators(*cfg.inv, *cfg.params);
    const RootDatumPtr& d = pres.datum_ptr();
    Rep probe = probe_module(cfg, d, o.probe);
    json j = to_json(pres);
    for (int i = 0; i < d->rank(); ++i) {
        if (pres.inv.in_pi_theta(i)) continue;
        std::cout << "B" << i + 1 << " = " << pres.B[static_cast<std::size_t>(i)].str(*d) << "\n";
    }
    std::cout << "probe dim " << probe.dim() << "\n";
    static const std::vector<std::string> all{"presentation", "kappa", "coideal", "commutators"};
    std::vector<std::string> which;
    if (o.check == "all")
        which = all;
    else if (o.check != "none") {
        if (std::find(all.begin(), all.end(), o.check) == all.end()) throw UsageError("unknown check " + o.check);
        which = {o.check};
    }
    bool failed = false;
    j["checks"] = json::object();
    for (const auto& w : which) {
        CheckReport r;
        if (w == "presentation") r = check_presentation(pres, probe);
        if (w == "kappa") r = check_kappaB_stability(pres, probe, o.degree);
        if (w == "coideal") r = check_left_coideal(pres, probe, probe);
        if (w == "commutators") {
            if (!pres.inv.pi_theta().empty()) continue;
            r = check_commutators(pres, probe);
        }
        std::cout << w;
        if (r.full_rank) std::cout << "  (span rank " << r.span_rank << "/" << r.full_rank << ")";
        std::cout << "\n";
        for (const auto& c : r.items)
            std::cout << "  " << c.name << ": " << to_string(c.status) << (c.detail.empty() ? "" : "  " + c.detail)
                      << "\n";
        failed = failed || r.failed();
        j["checks"][w] = report_json(r);
    }
    emit(o, j);
    return failed ? kFail : kPass;
}

std::vector<Weight> config_probes(const SessionConfig& cfg, const RootDatum& d, const Options& o)
{
    std::vector<Weight> ws;
    for (const auto& p : cfg.probes) ws.push_back(parse_weight_arg(d, p));
    if (ws.empty()) ws = default_probes(d, static_cast<std::size_t>(o.probe_count), o.probe_dim);
    return ws;
}

int cmd_solve(const Options& o)
{
    SessionConfig cfg = session(o, true);
    CoidealPresentation pres = build_generators(*cfg.inv, *cfg.params);
    const RootDatumPtr& d = pres.datum_ptr();
    Weight mu = parse_weight_arg(*d, o.mu);
    JSolveResult res = cfg.probes.empty() ? solve_invariant_J(pres, mu)
                                          : solve_invariant_J(pres, mu, config_probes(cfg, *d, o));
    std::cout << "mu " << d->format(mu) << "  l-space dim " << res.lspace_dim << "  ad_r invariants "
              << res.invariant_dim << "  solutions " << res.solutions.size() << "\n";
    if (!res.note.empty()) std::cout << "note: " << res.note << "\n";
    for (std::size_t k = 0; k < res.solutions.size(); ++k) {
        std::cout << "J[" << k << "]  (reflection equation: pass)\n";
        if (res.solutions[k].n <= 12)
            std::cout << matrix_text(res.solutions[k].J);
        else
            std::cout << "  " << res.solutions[k].n << " x " << res.solutions[k].n << ", use --emit for the entries\n";
    }
    emit(o, jfile_json(*d, cfg.raw, res.solutions));
    return res.solutions.empty() ? kFail : kPass;
}

json residual_json(const REReport& r)
{
    json j{{"ok", r.ok}, {"residual_count", r.residual_count}, {"residuals", json::array()}};
    for (const auto& e : r.residuals) j["residuals"].push_back({e.row, e.col, e.value.str()});
    return j;
}

void print_residuals(const REReport& r)
{
    std::cout << "  nonzero residual entries: " << r.residual_count << "\n";
    for (const auto& e : r.residuals) std::cout << "    (" << e.row << ", " << e.col << "): " << e.value.str() << "\n";
}

int cmd_verify(const Options& o)
{
    session(o, false);
    JFile f = load_jfile(o.jfile);
    if (f.solutions.empty()) throw UsageError("no solutions in " + o.jfile);
    bool ok = true;
    json out{{"type", f.datum->label()}, {"results", json::array()}};
    for (std::size_t k = 0; k < f.solutions.size(); ++k) {
        auto rep = verify_reflection_equation(f.datum, f.solutions[k], o.max_residuals);
        std::cout << "J[" << k << "] mu " << f.datum->format(f.solutions[k].mu) << ": "
                  << (rep.ok ? "pass" : "fail") << "\n";
        if (!rep.ok) print_residuals(rep);
        ok = ok && rep.ok;
        out["results"].push_back(residual_json(rep));
    }
    emit(o, out);
    return ok ? kPass : kFail;
}

int cmd_translate(const Options& o)
{
    session(o, false);
    JFile f = load_jfile(o.jfile);
    if (f.solutions.empty()) throw UsageError("no solutions in " + o.jfile);
    bool ok = true;
    json out{{"type", f.datum->label()}, {"results", json::array()}};
    for (std::size_t k = 0; k < f.solutions.size(); ++k) {
        Translation t = translate_left_right(f.datum, f.solutions[k]);
        bool back = untranslate(t) == f.solutions[k].J;
        std::cout << "J[" << k << "] left-right form: " << (t.dijk.ok ? "pass" : "fail")
                  << "  round trip: " << (back ? "pass" : "fail") << "\n";
        if (t.Jtilde.rows() <= 12) std::cout << matrix_text(t.Jtilde);
        if (!t.dijk.ok) print_residuals(t.dijk);
        json eta = json::array();
        for (const auto& e : t.eta) eta.push_back(e.str());
        out["results"].push_back({{"Jtilde", to_json(t.Jtilde)}, {"eta", eta}, {"check", residual_json(t.dijk)},
                                  {"round_trip", back}});
        ok = ok && t.dijk.ok && back;
    }
    emit(o, out);
    return ok ? kPass : kFail;
}

// dominant weights with every label in [0, max], ordered by dimension
std::vector<Weight> sweep_weights(const RootDatum& d, int max)
{
    std::vector<Weight> out;
    Weight w = d.zero();
    auto n = static_cast<std::size_t>(d.rank());
    while (true) {
        out.push_back(w);
        std::size_t i = 0;
        while (i < n && w[i] == max) w[i++] = 0;
        if (i == n) break;
        ++w[i];
    }
    std::stable_sort(out.begin(), out.end(), [&](const Weight& a, const Weight& b) {
        auto da = d.weyl_dimension(a), db = d.weyl_dimension(b);
        return da != db ? da < db : a < b;
    });
    return out;
}

int cmd_conjecture(const Options& o)
{
    SessionConfig cfg = session(o, true);
    CoidealPresentation pres = build_generators(*cfg.inv, *cfg.params);
    const RootDatumPtr& d = pres.datum_ptr();
    Weight mu = parse_weight_arg(*d, o.mu);
    JSolveResult res = solve_invariant_J(pres, mu);
    json out{{"type", d->label()}, {"mu", d->format(mu)}, {"solutions", res.solutions.size()}, {"checks", json::array()}};
    if (res.solutions.empty()) {
        std::cout << "no J at " << d->format(mu) << ": " << res.note << "\n";
        out["note"] = res.note;
        emit(o, out);
        return kFail;
    }
    const JSolution& s = res.solutions[0];
    auto nus = sweep_weights(*d, o.nu_max);
    std::vector<std::optional<InvariantComparison>> got(nus.size());
    parallel_for(nus.size(), o.jobs, [&](std::size_t k) {
        if (d->weyl_dimension(nus[k]) > static_cast<unsigned long>(rep_caps().module_dim)) return;
        got[k] = compare_invariants(pres, s, nus[k]);
    });
    bool ok = true;
    std::cout << "J at " << d->format(mu) << " (reflection equation: pass)\n";
    for (std::size_t k = 0; k < nus.size(); ++k) {
        json item{{"nu", d->format(nus[k])}};
        std::cout << "nu " << d->format(nus[k]) << ": ";
        if (!got[k]) {
            std::cout << "skipped (module cap)\n";
            item["status"] = "skipped";
        } else {
            const auto& c = *got[k];
            std::cout << (c.equal ? "equal" : "differ") << "  dim B " << c.dim_B << "  dim L " << c.dim_L << "\n";
            item["status"] = c.equal ? "equal" : "differ";
            item["dim_B"] = c.dim_B;
            item["dim_L"] = c.dim_L;
            ok = ok && c.equal;
        }
        out["checks"].push_back(item);
    }
    std::cout << (ok ? "all pass" : "failures present") << "\n";
    out["all_pass"] = ok;
    emit(o, out);
    return ok ? kPass : kFail;
}

int cmd_props(const Options& o)
{
    SessionConfig cfg = session(o, true);
    CoidealPresentation pres = build_generators(*cfg.inv, *cfg.params);
    const RootDatumPtr& d = pres.datum_ptr();
    Weight mu = parse_weight_arg(*d, o.mu);
    auto probes = config_probes(cfg, *d, o);
    PropReport rep = proposition_checks(pres, mu, probes, probes);
    std::cout << "probes " << weight_set(*d, probes) << "\n";
    json out{{"type", d->label()}, {"mu", d->format(mu)}, {"items", json::array()}};
    for (const auto& i : rep.items) {
        std::cout << i.name << ": " << i.status << "\n  " << i.detail << "\n";
        out["items"].push_back({{"name", i.name}, {"status", i.status}, {"detail", i.detail}});
    }
    out["all_hold"] = rep.all_hold();
    emit(o, out);
    return rep.all_hold() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"exact computations for quantum symmetric pairs and reflection equations"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_flag("--no-cache", o.no_cache, "do not read or write the R-matrix cache");

    auto type_opts = [&](CLI::App* c) {
        c->add_option("--type", o.type, "type letter or label such as A2 or A1xA1")->required();
        c->add_option("--rank", o.rank, "rank when --type is a bare letter");
    };
    auto emit_opt = [&](CLI::App* c) { c->add_option("--emit", o.emit, "write a JSON report"); };
    auto config_opt = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--config", o.config, "JSON session config");
        if (required) opt->required();
    };

    auto* roots = app.add_subcommand("roots", "Cartan data and positive roots");
    type_opts(roots);
    emit_opt(roots);

    auto* minimal = app.add_subcommand("minimal", "minimal dominant weights");
    type_opts(minimal);
    emit_opt(minimal);

    auto* pzb = app.add_subcommand("pzb", "minimal weights of the coideal center lattice");
    pzb->add_option("--preset", o.preset, "Araki label or diagonal");
    pzb->add_option("--rank", o.rank);
    pzb->add_option("--r", o.r, "preset parameter r");
    pzb->add_option("--type", o.type, "simple type for the diagonal preset");
    config_opt(pzb, false);
    emit_opt(pzb);

    auto* module = app.add_subcommand("module", "simple module matrices");
    type_opts(module);
    module->add_option("--weight", o.weight)->required();
    emit_opt(module);

    auto* rmat = app.add_subcommand("rmatrix", "universal R-matrix on V(left) (x) V(right)");
    type_opts(rmat);
    rmat->add_option("--left", o.left)->required();
    rmat->add_option("--right", o.right)->required();
    emit_opt(rmat);

    auto* coideal = app.add_subcommand("coideal", "coideal generators and checks");
    config_opt(coideal, true);
    coideal->add_option("--probe", o.probe, "probe weights separated by ';'");
    coideal->add_option("--check", o.check, "all, presentation, kappa, coideal, commutators or none");
    coideal->add_option("--degree", o.degree, "filtration degree for the kappa check, -1 for the full image");
    emit_opt(coideal);

    auto* solve = app.add_subcommand("solve-j", "solve for J at a minimal weight");
    config_opt(solve, true);
    solve->add_option("--mu", o.mu)->required();
    emit_opt(solve);

    auto* verify = app.add_subcommand("verify-re", "check the reflection equation for a J file");
    verify->add_option("file", o.jfile)->required();
    verify->add_option("--max-residuals", o.max_residuals);
    emit_opt(verify);

    auto* translate = app.add_subcommand("translate", "left-right form of a J file");
    translate->add_option("file", o.jfile)->required();
    emit_opt(translate);

    auto* conj = app.add_subcommand("conjecture", "compare coideal and L_mu invariants");
    config_opt(conj, true);
    conj->add_option("--mu", o.mu)->required();
    conj->add_option("--nu-max", o.nu_max, "largest label in the nu sweep");
    emit_opt(conj);

    auto* props = app.add_subcommand("props", "membership checks on L_mu");
    config_opt(props, true);
    props->add_option("--mu", o.mu)->required();
    props->add_option("--probes", o.probe_count, "number of default probe modules");
    props->add_option("--probe-dim", o.probe_dim, "largest default probe dimension");
    emit_opt(props);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kPass : kUsage;
    }

    try {
        if (*roots) return cmd_roots(o);
        if (*minimal) return cmd_minimal(o);
        if (*pzb) return cmd_pzb(o);
        if (*module) return cmd_module(o);
        if (*rmat) return cmd_rmatrix(o);
        if (*coideal) return cmd_coideal(o);
        if (*solve) return cmd_solve(o);
        if (*verify) return cmd_verify(o);
        if (*translate) return cmd_translate(o);
        if (*conj) return cmd_conjecture(o);
        if (*props) return cmd_props(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ReflectionError& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
