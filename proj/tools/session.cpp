#include "session.hpp"

#include "qspr/rmatrix.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace qspr::cli {

SessionConfig config_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    SessionConfig cfg;
    cfg.raw = j;
    try {
        if (j.contains("preset") || j.contains("pi_theta")) {
            cfg.inv = involution_from_json(j);
            cfg.params = params_from_json(j, cfg.inv->datum().rank());
        }
        if (j.contains("caps")) {
            const auto& c = j.at("caps");
            cfg.caps.module_dim = c.value("module_dim", cfg.caps.module_dim);
            cfg.caps.tensor_dim = c.value("tensor_dim", cfg.caps.tensor_dim);
            cfg.caps.word_length = c.value("word_length", cfg.caps.word_length);
        }
        if (j.contains("probes")) cfg.probes = j.at("probes").get<std::vector<std::string>>();
        if (j.contains("cache")) cfg.cache = j.at("cache").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    if (cfg.caps.module_dim == 0 || cfg.caps.tensor_dim == 0 || cfg.caps.word_length == 0)
        throw UsageError("config: caps must be positive");
    return cfg;
}

SessionConfig load_config(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read config " + file.string());
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in, nullptr, true, true);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError("config " + file.string() + ": " + e.what());
    }
    return config_from_json(j);
}

void apply(const SessionConfig& cfg, bool use_cache)
{
    rep_caps().module_dim = cfg.caps.module_dim;
    rep_caps().tensor_dim = cfg.caps.tensor_dim;
    set_word_cap(cfg.caps.word_length);
    if (!use_cache) {
        set_cache_dir(std::nullopt);
        return;
    }
    if (const char* env = std::getenv("QSPR_CACHE"); env && *env)
        set_cache_dir(std::filesystem::path(env));
    else
        set_cache_dir(cfg.cache.value_or(std::filesystem::path("cache")));
}

Weight parse_weight_arg(const RootDatum& d, const std::string& text)
{
    try {
        return d.parse_weight(text);
    } catch (const std::invalid_argument& e) {
        throw UsageError("weight '" + text + "': " + e.what());
    }
}

std::vector<Weight> parse_weight_list(const RootDatum& d, const std::string& text)
{
    std::vector<Weight> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_weight_arg(d, item));
    return out;
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn)
{
    if (jobs <= 1 || n <= 1) {
        for (std::size_t k = 0; k < n; ++k) fn(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto worker = [&] {
        for (std::size_t k = next++; k < n; k = next++) {
            try {
                fn(k);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < std::min<std::size_t>(jobs, n); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string matrix_text(const ExactMatrix& m, const std::string& indent)
{
    std::vector<std::vector<std::string>> cells(m.rows(), std::vector<std::string>(m.cols()));
    std::vector<std::size_t> width(m.cols(), 1);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            cells[r][c] = m.get(r, c).str();
            width[c] = std::max(width[c], cells[r][c].size());
        }
    std::string out;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out += indent + "[";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out += "  ";
            out += cells[r][c] + std::string(width[c] - cells[r][c].size(), ' ');
        }
        out += "]\n";
    }
    return out;
}

nlohmann::json solution_json(const RootDatum& d, const JSolution& s)
{
    return {{"mu", d.format(s.mu)},
            {"dual_mu", d.format(s.dual_mu)},
            {"n", s.n},
            {"J", to_json(s.J)},
            {"provenance", s.provenance}};
}

JSolution solution_from_json(const RootDatum& d, const nlohmann::json& j)
{
    JSolution s;
    s.mu = d.parse_weight(j.at("mu").get<std::string>());
    s.dual_mu = j.contains("dual_mu") ? d.parse_weight(j.at("dual_mu").get<std::string>()) : -d.w0(s.mu);
    s.J = matrix_from_json(j.at("J"));
    s.n = s.J.rows();
    if (s.J.cols() != s.n) throw UsageError("J is not square");
    s.provenance = j.value("provenance", std::string());
    return s;
}

nlohmann::json jfile_json(const RootDatum& d, const nlohmann::json& config, const std::vector<JSolution>& sols)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& s : sols) arr.push_back(solution_json(d, s));
    return {{"type", d.label()}, {"config", config}, {"solutions", arr}};
}

JFile load_jfile(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read " + file.string());
    JFile f;
    try {
        nlohmann::json j = nlohmann::json::parse(in);
        f.datum = RootDatum::make(j.at("type").get<std::string>());
        f.config = j.value("config", nlohmann::json::object());
        if (j.contains("solutions"))
            for (const auto& s : j.at("solutions")) f.solutions.push_back(solution_from_json(*f.datum, s));
        else
            f.solutions.push_back(solution_from_json(*f.datum, j));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(file.string() + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw UsageError(file.string() + ": " + e.what());
    }
    for (const auto& s : f.solutions) {
        auto dim = f.datum->weyl_dimension(s.mu);
        if (dim != static_cast<unsigned long>(s.n)) throw UsageError(file.string() + ": J size does not match V(mu)");
    }
    return f;
}

void write_file(const std::filesystem::path& file, const std::string& text)
{
    std::filesystem::path dir = file.has_parent_path() ? file.parent_path() : std::filesystem::path(".");
    std::filesystem::create_directories(dir);
    std::filesystem::path tmp = dir / (file.filename().string() + ".tmp." + std::to_string(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << text;
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

}  // namespace qspr::cli
