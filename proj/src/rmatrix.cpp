#include "qspr/rmatrix.hpp"

#include "qspr/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace qspr {

namespace {

using Pos = std::pair<std::size_t, std::size_t>;
using Coords = std::vector<long>;

// linear system in the unknown entries of one graded piece R_gamma
class GradeSystem {
public:
    explicit GradeSystem(const std::vector<Pos>& unknowns)
    {
        for (std::size_t k = 0; k < unknowns.size(); ++k) {
            by_row_[unknowns[k].first].push_back({unknowns[k].second, k});
            by_col_[unknowns[k].second].push_back({unknowns[k].first, k});
        }
        count_ = unknowns.size();
    }

    // eq += sign * R_gamma * m
    void right_mult(const ExactMatrix& m, int tag, const Scalar& sign)
    {
        for (const auto& [r, list] : by_row_)
            for (const auto& [p, k] : list)
                for (const auto& e : m.row(p)) add(tag, {r, e.col}, k, sign * e.val);
    }
    // eq += sign * m * R_gamma, given mt = m^T
    void left_mult(const ExactMatrix& mt, int tag, const Scalar& sign)
    {
        for (const auto& [c, list] : by_col_)
            for (const auto& [p, k] : list)
                for (const auto& e : mt.row(p)) add(tag, {e.col, c}, k, sign * e.val);
    }
    void rhs(int tag, const ExactMatrix& m)
    {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (const auto& e : m.row(r)) rhs_[{tag, {r, e.col}}] += e.val;
    }

    // solve; throws on inconsistency or non-uniqueness
    Vector solve(const std::string& what) const
    {
        std::map<std::pair<int, Pos>, std::size_t> keys;
        for (const auto& [key, row] : eqs_) keys.emplace(key, keys.size());
        for (const auto& [key, v] : rhs_)
            if (!v.is_zero()) keys.emplace(key, keys.size());
        ExactMatrix a(keys.size(), count_);
        Vector b(keys.size());
        for (const auto& [key, row] : eqs_) {
            std::size_t r = keys.at(key);
            for (const auto& [k, v] : row)
                if (!v.is_zero()) a.row(r).push_back({k, v});
        }
        for (const auto& [key, v] : rhs_)
            if (!v.is_zero()) b[keys.at(key)] = v;
        SolutionSet s = solve_linear(a, b);
        if (!s.consistent) throw RMatrixError("R-matrix system inconsistent at " + what);
        if (!s.nullspace.empty()) throw RMatrixError("convention pinning failed at " + what);
        return s.particular;
    }

private:
    void add(int tag, Pos pos, std::size_t k, const Scalar& v) { eqs_[{tag, pos}][k] += v; }

    std::size_t count_ = 0;
    std::map<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>> by_row_, by_col_;
    std::map<std::pair<int, Pos>, std::map<std::size_t, Scalar>> eqs_;
    std::map<std::pair<int, Pos>, Scalar> rhs_;
};

std::map<Weight, std::vector<std::size_t>> weight_classes(const Rep& v)
{
    std::map<Weight, std::vector<std::size_t>> out;
    for (std::size_t k = 0; k < v.dim(); ++k) out[v.weight(k)].push_back(k);
    return out;
}

long height(const Coords& c)
{
    long h = 0;
    for (long x : c) h += x;
    return h;
}

}  // namespace

ExactMatrix compute_R(const Rep& v, const Rep& w)
{
    const RootDatum& d = v.datum();
    const std::size_t n = v.dim(), m = w.dim(), dim = n * m;
    auto vc = weight_classes(v), wc = weight_classes(w);

    // unknown positions grouped by grade gamma
    std::map<Coords, std::vector<Pos>> grades;
    for (const auto& [a, ia] : vc)
        for (const auto& [b, ib] : vc) {
            auto g = d.nonneg_root_coords(a - b);
            if (!g || height(*g) == 0) continue;
            Weight gw = a - b;
            for (const auto& [c, jc] : wc) {
                auto it = wc.find(c + gw);
                if (it == wc.end()) continue;
                for (std::size_t i : ia)
                    for (std::size_t k : ib)
                        for (std::size_t j : jc)
                            for (std::size_t l : it->second) grades[*g].push_back({i * m + j, k * m + l});
            }
        }
    std::vector<Coords> order;
    for (const auto& [g, u] : grades) order.push_back(g);
    std::stable_sort(order.begin(), order.end(),
                     [](const Coords& a, const Coords& b) { return height(a) < height(b); });

    std::map<Coords, ExactMatrix> piece;
    {
        Vector diag;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) diag.push_back(Scalar::q_pow(-d.inner(v.weight(i), w.weight(j))));
        piece[Coords(static_cast<std::size_t>(d.rank()), 0)] = ExactMatrix::diagonal(diag);
    }

    ExactMatrix iv = ExactMatrix::identity(n), iw = ExactMatrix::identity(m);
    struct Gen {
        ExactMatrix t_x, one_x_t, x_t, x_one;       // t(x)x, (1(x)x)^T, x(x)t, x(x)1
        ExactMatrix y_one_t, y_tinv, one_y, tinv_y;  // (y(x)1)^T, y(x)t^-1, 1(x)y, t^-1(x)y
    };
    std::vector<Gen> gens;
    for (int a = 0; a < d.rank(); ++a) {
        Gen g;
        g.t_x = kron(v.t(a), w.x(a));
        g.one_x_t = kron(iv, w.x(a)).transpose();
        g.x_t = kron(v.x(a), w.t(a));
        g.x_one = kron(v.x(a), iw);
        g.y_one_t = kron(v.y(a), iw).transpose();
        g.y_tinv = kron(v.y(a), w.t(a, -1));
        g.one_y = kron(iv, w.y(a));
        g.tinv_y = kron(v.t(a, -1), w.y(a));
        gens.push_back(std::move(g));
    }

    for (const auto& g : order) {
        const auto& unknowns = grades[g];
        GradeSystem sys(unknowns);
        for (int a = 0; a < d.rank(); ++a) {
            const Gen& G = gens[static_cast<std::size_t>(a)];
            // R_g (t(x)x) - (1(x)x) R_g = (x(x)t) R_{g-a} - R_{g-a} (x(x)1)
            sys.right_mult(G.t_x, 2 * a, Scalar(1));
            sys.left_mult(G.one_x_t, 2 * a, Scalar(-1));
            // (y(x)1) R_g - R_g (y(x)t^-1) = R_{g-a} (1(x)y) - (t^-1(x)y) R_{g-a}
            sys.left_mult(G.y_one_t, 2 * a + 1, Scalar(1));
            sys.right_mult(G.y_tinv, 2 * a + 1, Scalar(-1));
            Coords prev = g;
            if (--prev[static_cast<std::size_t>(a)] < 0) continue;
            auto it = piece.find(prev);
            if (it == piece.end()) continue;
            const ExactMatrix& rp = it->second;
            sys.rhs(2 * a, G.x_t * rp - rp * G.x_one);
            sys.rhs(2 * a + 1, rp * G.one_y - G.tinv_y * rp);
        }
        std::ostringstream what;
        what << "grade (";
        for (std::size_t k = 0; k < g.size(); ++k) what << (k ? "," : "") << g[k];
        what << ") of " << v.label() << "(x)" << w.label();
        Vector sol = sys.solve(what.str());
        ExactMatrix rg(dim, dim);
        for (std::size_t k = 0; k < unknowns.size(); ++k)
            if (!sol[k].is_zero()) rg.set(unknowns[k].first, unknowns[k].second, sol[k]);
        piece[g] = std::move(rg);
    }
    ExactMatrix r(dim, dim);
    for (const auto& [g, p] : piece) r += p;
    RCheck chk = check_R(r, v, w);
    if (!chk.intertwining) throw RMatrixError("R-matrix fails the intertwining check on " + v.label() + "(x)" + w.label());
    return r;
}

ExactMatrix partial_transpose2(const ExactMatrix& mat, std::size_t n, std::size_t k)
{
    (void)n;
    ExactMatrix out(mat.rows(), mat.cols());
    for (std::size_t r = 0; r < mat.rows(); ++r) {
        std::size_t i = r / k, j = r % k;
        for (const auto& e : mat.row(r)) {
            std::size_t kk = e.col / k, l = e.col % k;
            out.set(i * k + l, kk * k + j, e.val);
        }
    }
    return out;
}

ExactMatrix compute_Rtilde(const ExactMatrix& r, std::size_t n, std::size_t k)
{
    try {
        return partial_transpose2(inverse(partial_transpose2(r, n, k)), n, k);
    } catch (const std::domain_error&) {
        throw RMatrixError("R is not invertible after partial transposition");
    }
}

ExactMatrix twist(const ExactMatrix& m, std::size_t n)
{
    ExactMatrix p = flip_matrix(n, n);
    return p * m * p;
}

RCheck check_R(const ExactMatrix& r, const Rep& v, const Rep& w)
{
    const RootDatum& d = v.datum();
    const std::size_t m = w.dim();
    RCheck c;
    for (std::size_t row = 0; row < r.rows(); ++row) {
        std::size_t i = row / m, j = row % m;
        for (const auto& e : r.row(row)) {
            std::size_t k = e.col / m, l = e.col % m;
            Weight up = v.weight(i) - v.weight(k), down = w.weight(l) - w.weight(j);
            if (!d.nonneg_root_coords(up) || !d.nonneg_root_coords(down)) c.triangular = false;
            if (!(up == down)) c.weight_conserving = false;
        }
    }
    for (std::size_t i = 0; i < v.dim(); ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (!(r.get(i * m + j, i * m + j) == Scalar::q_pow(-d.inner(v.weight(i), w.weight(j)))))
                c.diagonal_values = false;
    Rep vw = tensor(v, w), wv = tensor(w, v);
    ExactMatrix p = flip_matrix(v.dim(), m), pinv = flip_matrix(m, v.dim());
    for (int a = 0; a < d.rank() && c.intertwining; ++a) {
        for (const Expr& g : {Expr::x(a), Expr::y(a), Expr::t(d, a)}) {
            // Delta^cop(g) on V (x) W is P^-1 Delta(g)|_{W (x) V} P
            ExactMatrix cop = pinv * wv.evaluate(g) * p;
            if (!(r * vw.evaluate(g) == cop * r)) c.intertwining = false;
        }
    }
    return c;
}

// ---------------------------------------------------------------- cache

namespace {

std::mutex g_mutex;
std::optional<std::filesystem::path> g_cache_dir = [] {
    std::optional<std::filesystem::path> p;
    if (const char* env = std::getenv("QSPR_CACHE"); env && *env) p = env;
    return p;
}();
std::map<std::string, std::unique_ptr<Rep>> g_modules;
std::map<std::string, std::unique_ptr<ExactMatrix>> g_rmats;

std::string weight_key(const Weight& w)
{
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) s += (k ? "," : "") + std::to_string(w[k]);
    return s;
}

std::optional<ExactMatrix> load_cached(const std::filesystem::path& file, const Rep& v, const Rep& w)
{
    std::ifstream in(file);
    if (!in) return std::nullopt;
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        std::vector<std::string> lw, rw;
        for (const auto& x : v.weights()) lw.push_back(weight_key(x));
        for (const auto& x : w.weights()) rw.push_back(weight_key(x));
        if (j.at("left_basis").get<std::vector<std::string>>() != lw) return std::nullopt;
        if (j.at("right_basis").get<std::vector<std::string>>() != rw) return std::nullopt;
        return matrix_from_json(j.at("R"));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void store_cached(const std::filesystem::path& file, const Rep& v, const Rep& w, const ExactMatrix& r)
{
    static std::atomic<unsigned long> counter{0};
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    if (ec) return;
    nlohmann::json j;
    j["left"] = v.label();
    j["right"] = w.label();
    std::vector<std::string> lw, rw;
    for (const auto& x : v.weights()) lw.push_back(weight_key(x));
    for (const auto& x : w.weights()) rw.push_back(weight_key(x));
    j["left_basis"] = lw;
    j["right_basis"] = rw;
    j["R"] = to_json(r);
    std::ostringstream tmpname;
    tmpname << file.filename().string() << ".tmp." << ::getpid() << "." << std::this_thread::get_id() << "."
            << counter++;
    auto tmp = file.parent_path() / tmpname.str();
    {
        std::ofstream out(tmp);
        if (!out) return;
        out << j.dump() << "\n";
        if (!out) {
            std::filesystem::remove(tmp, ec);
            return;
        }
    }
    std::filesystem::rename(tmp, file, ec);
    if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace

void set_cache_dir(std::optional<std::filesystem::path> dir)
{
    std::lock_guard<std::mutex> lock(g_mutex);
    g_cache_dir = std::move(dir);
}

std::optional<std::filesystem::path> cache_dir()
{
    std::lock_guard<std::mutex> lock(g_mutex);
    return g_cache_dir;
}

const Rep& simple_module(const RootDatumPtr& datum, const Weight& mu)
{
    std::string key = datum->label() + "|" + weight_key(mu);
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_modules.find(key);
        if (it != g_modules.end()) return *it->second;
    }
    auto rep = std::make_unique<Rep>(build_module(datum, mu));
    std::lock_guard<std::mutex> lock(g_mutex);
    auto [it, fresh] = g_modules.emplace(key, std::move(rep));
    return *it->second;
}

const ExactMatrix& r_matrix(const RootDatumPtr& datum, const Weight& lambda, const Weight& mu)
{
    std::string key = datum->label() + "|" + weight_key(lambda) + "|" + weight_key(mu);
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto it = g_rmats.find(key);
        if (it != g_rmats.end()) return *it->second;
    }
    const Rep& v = simple_module(datum, lambda);
    const Rep& w = simple_module(datum, mu);
    auto dir = cache_dir();
    std::optional<std::filesystem::path> file;
    if (dir) {
        std::string l = weight_key(lambda), r = weight_key(mu);
        std::replace(l.begin(), l.end(), ',', '.');
        std::replace(r.begin(), r.end(), ',', '.');
        file = *dir / datum->label() / (l + "_" + r + ".rmat");
    }
    std::optional<ExactMatrix> got;
    if (file) got = load_cached(*file, v, w);
    if (!got) {
        got = compute_R(v, w);
        if (file) store_cached(*file, v, w, *got);
    }
    std::lock_guard<std::mutex> lock(g_mutex);
    auto [it, fresh] = g_rmats.emplace(key, std::make_unique<ExactMatrix>(std::move(*got)));
    return *it->second;
}

LFunctionals l_matrices(const RootDatumPtr& datum, const Weight& mu, const Weight& nu)
{
    const Rep& vm = simple_module(datum, mu);
    const Rep& vn = simple_module(datum, nu);
    const std::size_t N = vm.dim(), M = vn.dim();
    LFunctionals out;
    out.n = N;
    out.lplus.assign(N, std::vector<ExactMatrix>(N, ExactMatrix(M, M)));
    out.sigma_lminus = out.lplus;
    // l^+(c^{mu,n}_j)[a][b] = R_{nu mu}[(a,n),(b,j)]
    const ExactMatrix& rnm = r_matrix(datum, nu, mu);
    for (std::size_t row = 0; row < rnm.rows(); ++row)
        for (const auto& e : rnm.row(row)) out.lplus[row % N][e.col % N].set(row / N, e.col / N, e.val);
    // sigma(l^-(c^{mu,i}_m))[a][b] = R_{mu nu}[(i,a),(m,b)]
    const ExactMatrix& rmn = r_matrix(datum, mu, nu);
    for (std::size_t row = 0; row < rmn.rows(); ++row)
        for (const auto& e : rmn.row(row)) out.sigma_lminus[row / M][e.col / M].set(row % M, e.col % M, e.val);
    return out;
}

std::vector<std::vector<ExactMatrix>> l_images(const LFunctionals& l)
{
    std::size_t N = l.n;
    std::size_t M = N ? l.lplus[0][0].rows() : 0;
    std::vector<std::vector<ExactMatrix>> out(N, std::vector<ExactMatrix>(N, ExactMatrix(M, M)));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < N; ++j)
            for (std::size_t k = 0; k < N; ++k) {
                if (l.sigma_lminus[i][k].is_zero() || l.lplus[k][j].is_zero()) continue;
                out[i][j] += l.sigma_lminus[i][k] * l.lplus[k][j];
            }
    return out;
}

std::size_t l_span_rank(const RootDatumPtr& datum, const Weight& mu, const std::vector<Weight>& nus)
{
    std::size_t N = simple_module(datum, mu).dim();
    std::vector<SparseRow> rows(N * N);
    std::size_t off = 0;
    for (const Weight& nu : nus) {
        auto imgs = l_images(l_matrices(datum, mu, nu));
        std::size_t M = 0;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) {
                M = imgs[i][j].rows();
                for (const auto& e : imgs[i][j].flatten()) rows[i * N + j].push_back({off + e.col, e.val});
            }
        off += M * M;
    }
    RowSpace span(off);
    std::size_t rank = 0;
    for (auto& r : rows)
        if (span.insert(std::move(r))) ++rank;
    return rank;
}

ExactMatrix adr_on_lspace(const Expr& u, const Rep& v)
{
    const RootDatum& d = v.datum();
    std::size_t N = v.dim();
    ExactMatrix out(N * N, N * N);
    TensorExpr du = coproduct(d, u);
    for (const auto& [ws, c] : du.terms()) {
        ExactMatrix a = v.evaluate(Expr::word(ws[0])).transpose();
        ExactMatrix b = v.evaluate(antipode(d, Expr::word(ws[1])));
        out += kron(a, b) * c;
    }
    return out;
}

}  // namespace qspr
