#pragma once

// CLI commands and the file formats they write. Every file starts with a
// line carrying the config hash: "# config_hash=<hex>" for CSV, an XML
// comment for SVG and a "config_hash" member for JSON.

#include "lastrow/config.hpp"
#include "lastrow/verify.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace lastrow {

struct RunContext {
    RunConfig config;
    std::string out_dir;
    std::uint64_t seed = 20040106;
    std::string hash;
};

/// Applies CLI overrides on top of the config file.
RunContext make_context(RunConfig cfg, std::optional<std::string> out_dir, std::optional<Precision> precision,
                        std::optional<std::uint64_t> seed);

/// "%.17g"
std::string fmt_real(double x);

void write_coeffs_csv(std::ostream& os, const PowerSeries<double>& s, const std::string& hash);
nlohmann::json cvals_json(const MeromorphicModel& m, const DominantAnalysis& d, const CjTable& c,
                          const std::string& hash);
void write_region_csv(std::ostream& os, const RegionGrid& g, const std::string& hash);
void write_curves_csv(std::ostream& os, const CurveSet& curves, const std::string& hash);
void write_nf_csv(std::ostream& os, const NFSample& nf, const std::string& hash);
void write_figure_svg(std::ostream& os, const RowStudy& study, const CurveSet& curves, const std::string& hash);
void write_errors_csv(std::ostream& os, const ConvergenceReport& rep, const std::string& hash);
void write_poles_csv(std::ostream& os, const ConvergenceReport& rep, const std::string& hash);

void cmd_coeffs(const RunContext& ctx, int N);
void cmd_cvals(const RunContext& ctx);
void cmd_region(const RunContext& ctx);
void cmd_verify(const RunContext& ctx);
void cmd_all(const RunContext& ctx, int N);

}  // namespace lastrow
