#pragma once

#include "qspr/reflection.hpp"

#include "json.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qspr::cli {

// Thrown for malformed configs and arguments; the front end maps it to exit 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Caps {
    std::size_t module_dim = 64;
    std::size_t tensor_dim = 4096;
    std::size_t word_length = 64;
};

struct SessionConfig {
    nlohmann::json raw;
    std::optional<InvolutionDatum> inv;
    std::optional<CoidealParams> params;
    Caps caps;
    std::vector<std::string> probes;  // weight texts, empty for the defaults
    std::optional<std::filesystem::path> cache;
};

// JSON config; keys preset, rank, r, type, d, s, cB, caps, probes, cache
SessionConfig load_config(const std::filesystem::path& file);
SessionConfig config_from_json(const nlohmann::json& j);
// applies caps and the cache directory (QSPR_CACHE, then the config, then "cache")
void apply(const SessionConfig& cfg, bool use_cache);

Weight parse_weight_arg(const RootDatum& d, const std::string& text);
std::vector<Weight> parse_weight_list(const RootDatum& d, const std::string& text);

// runs fn(0..n-1) on at most jobs threads; results are written by index so
// output order does not depend on scheduling
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

std::string matrix_text(const ExactMatrix& m, const std::string& indent = "  ");

nlohmann::json solution_json(const RootDatum& d, const JSolution& s);
JSolution solution_from_json(const RootDatum& d, const nlohmann::json& j);

struct JFile {
    RootDatumPtr datum;
    nlohmann::json config;
    std::vector<JSolution> solutions;
};
nlohmann::json jfile_json(const RootDatum& d, const nlohmann::json& config, const std::vector<JSolution>& sols);
JFile load_jfile(const std::filesystem::path& file);

// atomic write through a temporary file in the same directory
void write_file(const std::filesystem::path& file, const std::string& text);

}  // namespace qspr::cli
