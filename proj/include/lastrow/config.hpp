#pragma once

#include "lastrow/model.hpp"
#include "lastrow/region.hpp"
#include "lastrow/rowtheory.hpp"
#include "lastrow/verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lastrow {

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Parses a real given as a JSON number or as a string. Strings accept an
/// optional sign, a decimal literal or sqrt(k) for a non-negative integer k,
/// and one optional division, e.g. "-sqrt(5)", "1/2", "sqrt(2)/2".
/// Evaluated in Extended.
Extended parse_real(const nlohmann::json& v);

struct RunConfig {
    struct Verify {
        std::vector<int> n_range;
        // K: explicit points, or auto from the U_F mask
        std::vector<Cd> k_points;
        double margin = 0.05;
        int k_count = 64;
        bool k_auto = true;
        bool margin_against_N = false;
        // subsequence experiment; tau0 = xi^{tau0_index + lambda} unless explicit
        bool subsequence = false;
        std::vector<Cd> tau0;
        std::int64_t tau0_index = 0;
        double eps = 0.05;
        int count = 8;
        std::int64_t horizon = 10000;
        std::int64_t n_min = 0;
    };

    nlohmann::json source;  // the parsed document, for hashing
    double radius = 2.0;
    std::vector<Cx> analytic;
    std::vector<Cx> numerator;
    std::vector<PoleSpec> poles;
    TorusSpec::Rank rank = TorusSpec::Rank::Relations;
    std::vector<std::vector<long long>> relations;
    std::optional<Box> box;
    int nx = 601, ny = 601;
    double exclusion_radius = 0.02;
    int orbit_samples = 2000;
    Verify verify;
    Precision precision = Precision::Double;
    std::string output_dir = "out";

    MeromorphicModel build_model() const;
    StudyOptions study_options(std::uint64_t seed) const;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

/// 16 hex digits of FNV-1a over the canonical dump of the config document
/// and the precision mode.
std::string config_hash(const RunConfig& cfg);

}  // namespace lastrow
