// Command-line front end: coeffs, cvals, region, verify, all.

#include "lastrow/outputs.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kNumerical = 3, kIo = 4 };

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Last intermediate row of the Padé table: coefficients, C_j constants, convergence regions"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::string precision;
    std::optional<std::uint64_t> seed;
    int terms = 32;

    app.add_option("--config", config_path, "Run configuration (JSON)")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory (overrides the config)");
    app.add_option("--precision", precision, "Working precision")->check(CLI::IsMember({"double", "extended"}));
    app.add_option("--seed", seed, "Seed for root-finder restarts");

    auto* coeffs = app.add_subcommand("coeffs", "Write Maclaurin coefficients to coeffs.csv");
    coeffs->add_option("-n,--terms", terms, "Highest coefficient index N")->check(CLI::NonNegativeNumber);
    app.add_subcommand("cvals", "Write the dominant-pole analysis and C_j constants to cvals.json");
    app.add_subcommand("region", "Write region.csv, curves.csv, nf_samples.csv and figure.svg");
    app.add_subcommand("verify", "Run the convergence experiments; write verify_report.json, errors.csv, poles.csv");
    auto* all = app.add_subcommand("all", "coeffs, cvals, region and verify in order");
    all->add_option("-n,--terms", terms, "Highest coefficient index N for coeffs")->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        std::optional<lastrow::Precision> prec;
        if (precision == "double") prec = lastrow::Precision::Double;
        if (precision == "extended") prec = lastrow::Precision::Extended;
        const auto ctx = lastrow::make_context(lastrow::load_config(config_path), out_dir, prec, seed);

        const std::string cmd = app.get_subcommands().front()->get_name();
        if (cmd == "coeffs") lastrow::cmd_coeffs(ctx, terms);
        else if (cmd == "cvals") lastrow::cmd_cvals(ctx);
        else if (cmd == "region") lastrow::cmd_region(ctx);
        else if (cmd == "verify") lastrow::cmd_verify(ctx);
        else lastrow::cmd_all(ctx, terms);
    } catch (const lastrow::IoError& e) {
        std::cerr << "I/O error: " << e.what() << '\n';
        return kIo;
    } catch (const lastrow::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const lastrow::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kConfig;
    } catch (const lastrow::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    return kOk;
}
