#include "lastrow/outputs.hpp"

#include "lastrow/pade.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace lastrow {

using nlohmann::json;

namespace {

std::ofstream open_out(const RunContext& ctx, const std::string& name) {
    std::error_code ec;
    std::filesystem::create_directories(ctx.out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + ctx.out_dir + ": " + ec.message());
    const auto path = std::filesystem::path(ctx.out_dir) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open " + path.string() + " for writing");
    return os;
}

void finish(std::ofstream& os, const std::string& name) {
    os.flush();
    if (!os) throw IoError("write failed: " + name);
}

void header(std::ostream& os, const std::string& hash) { os << "# config_hash=" << hash << '\n'; }

json cjson(const Cd& z) { return json::array({z.real(), z.imag()}); }

std::string fmt_px(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

std::vector<int> default_range(const RunConfig& cfg) {
    if (!cfg.verify.n_range.empty()) return cfg.verify.n_range;
    std::vector<int> ns;
    for (int n = 20; n <= 60; ++n) ns.push_back(n);
    return ns;
}

}  // namespace

std::string fmt_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

RunContext make_context(RunConfig cfg, std::optional<std::string> out_dir, std::optional<Precision> precision,
                        std::optional<std::uint64_t> seed) {
    RunContext ctx;
    if (precision) cfg.precision = *precision;
    ctx.out_dir = out_dir.value_or(cfg.output_dir);
    if (seed) ctx.seed = *seed;
    ctx.config = std::move(cfg);
    ctx.hash = config_hash(ctx.config);
    return ctx;
}

void write_coeffs_csv(std::ostream& os, const PowerSeries<double>& s, const std::string& hash) {
    header(os, hash);
    os << "k,re,im\n";
    for (std::size_t k = 0; k < s.size(); ++k) os << k << ',' << fmt_real(s[k].real()) << ',' << fmt_real(s[k].imag()) << '\n';
}

json cvals_json(const MeromorphicModel& m, const DominantAnalysis& d, const CjTable& c, const std::string& hash) {
    json j;
    j["config_hash"] = hash;
    j["rho"] = d.rho;
    j["ell"] = d.ell;
    j["mu"] = d.mu;
    j["nu"] = d.nu;
    j["lambda"] = d.lambda;
    j["order"] = d.order;
    json dom = json::array();
    for (int k = 0; k < d.nu; ++k) dom.push_back(cjson(to_cd(m.poles()[d.dominant(k)].location)));
    j["dominant_poles"] = dom;
    json A = json::array(), C = json::array();
    for (std::size_t k = 0; k < c.C.size(); ++k) {
        A.push_back(cjson(c.A[k]));
        C.push_back(cjson(c.C[k]));
    }
    j["A_j"] = A;
    j["C_j"] = C;
    return j;
}

void write_region_csv(std::ostream& os, const RegionGrid& g, const std::string& hash) {
    header(os, hash);
    os << "x,y,gmax,in_n,in_u,in_uf\n";
    for (int k = 0; k < g.ny; ++k)
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t id = g.index(i, k);
            os << fmt_real(g.x(i)) << ',' << fmt_real(g.y(k)) << ',' << fmt_real(g.gmax[id]) << ','
               << int(g.in_N[id]) << ',' << int(g.in_U[id]) << ',' << int(g.uf_available && g.in_UF[id]) << '\n';
        }
}

void write_curves_csv(std::ostream& os, const CurveSet& curves, const std::string& hash) {
    header(os, hash);
    os << "j,component,polyline,vertex,x,y\n";
    for (int j = 0; j < curves.nu(); ++j) {
        const auto& pls = curves.curves[static_cast<std::size_t>(j)];
        for (std::size_t p = 0; p < pls.size(); ++p)
            for (std::size_t v = 0; v < pls[p].vertices.size(); ++v)
                os << j + 1 << ',' << curves.component_id[static_cast<std::size_t>(j)][p] << ',' << p << ',' << v << ','
                   << fmt_real(pls[p].vertices[v].real()) << ',' << fmt_real(pls[p].vertices[v].imag()) << '\n';
    }
}

void write_nf_csv(std::ostream& os, const NFSample& nf, const std::string& hash) {
    header(os, hash);
    os << "n,re,im\n";
    for (std::size_t i = 0; i < nf.points.size(); ++i)
        os << nf.source[i] << ',' << fmt_real(nf.points[i].real()) << ',' << fmt_real(nf.points[i].imag()) << '\n';
}

void write_figure_svg(std::ostream& os, const RowStudy& study, const CurveSet& curves, const std::string& hash) {
    const RegionGrid& g = study.grid;
    const double W = 800.0;
    const double H = W * (g.box.ymax - g.box.ymin) / (g.box.xmax - g.box.xmin);
    auto px = [&](double x) { return (x - g.box.xmin) / (g.box.xmax - g.box.xmin) * W; };
    auto py = [&](double y) { return (g.box.ymax - y) / (g.box.ymax - g.box.ymin) * H; };
    const double cw = W / (g.nx - 1), ch = H / (g.ny - 1);
    static const char* palette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<!-- config_hash=" << hash << " -->\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt_px(W) << "\" height=\"" << fmt_px(H)
       << "\" viewBox=\"0 0 " << fmt_px(W) << ' ' << fmt_px(H) << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    os << "<g id=\"region_mask\" fill=\"#555555\" stroke=\"none\">\n";
    if (g.uf_available) {
        for (int k = 0; k < g.ny; ++k) {
            int i = 0;
            while (i < g.nx) {
                if (!g.in_UF[g.index(i, k)]) {
                    ++i;
                    continue;
                }
                const int start = i;
                while (i < g.nx && g.in_UF[g.index(i, k)]) ++i;
                os << "<rect x=\"" << fmt_px(px(g.x(start)) - cw / 2) << "\" y=\"" << fmt_px(py(g.y(k)) - ch / 2)
                   << "\" width=\"" << fmt_px(cw * (i - start)) << "\" height=\"" << fmt_px(ch) << "\"/>\n";
            }
        }
    }
    os << "</g>\n";

    os << "<g id=\"disk\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n";
    os << "<ellipse cx=\"" << fmt_px(px(0)) << "\" cy=\"" << fmt_px(py(0)) << "\" rx=\"" << fmt_px(px(g.rho) - px(0))
       << "\" ry=\"" << fmt_px(py(0) - py(g.rho)) << "\"/>\n</g>\n";

    for (int j = 0; j < curves.nu(); ++j) {
        os << "<g id=\"curves_j" << j + 1 << "\" fill=\"none\" stroke=\"" << palette[j % 6]
           << "\" stroke-width=\"2\">\n";
        for (const auto& pl : curves.curves[static_cast<std::size_t>(j)]) {
            os << "<polyline points=\"";
            for (std::size_t v = 0; v < pl.vertices.size(); ++v)
                os << (v ? " " : "") << fmt_px(px(pl.vertices[v].real())) << ',' << fmt_px(py(pl.vertices[v].imag()));
            os << "\"/>\n";
        }
        os << "</g>\n";
    }

    os << "<g id=\"poles\">\n";
    for (std::size_t i = 0; i < study.analysis.order.size(); ++i) {
        const Cd z = to_cd(study.model->poles()[study.analysis.order[i]].location);
        const bool dominant = static_cast<int>(i) < study.analysis.nu;
        os << "<circle class=\"" << (dominant ? "dominant" : "non_dominant") << "\" cx=\"" << fmt_px(px(z.real()))
           << "\" cy=\"" << fmt_px(py(z.imag())) << "\" r=\"5\" fill=\"" << (dominant ? "#d62728" : "#1f77b4")
           << "\" stroke=\"black\"/>\n";
    }
    os << "</g>\n";

    os << "<g id=\"nf_points\" fill=\"#ff7f0e\">\n";
    for (const auto& z : study.nf.points)
        os << "<circle cx=\"" << fmt_px(px(z.real())) << "\" cy=\"" << fmt_px(py(z.imag())) << "\" r=\"1.2\"/>\n";
    os << "</g>\n</svg>\n";
}

void write_errors_csv(std::ostream& os, const ConvergenceReport& rep, const std::string& hash) {
    header(os, hash);
    os << "n,sup_error,conditioning,residual,degenerate,normalization,pole_count,max_pole_distance\n";
    for (const auto& r : rep.records)
        os << r.n << ',' << fmt_real(r.sup_error) << ',' << fmt_real(r.conditioning) << ',' << fmt_real(r.residual) << ','
           << int(r.degenerate) << ',' << r.normalization << ',' << r.poles.size() << ','
           << fmt_real(r.max_pole_distance) << '\n';
}

void write_poles_csv(std::ostream& os, const ConvergenceReport& rep, const std::string& hash) {
    header(os, hash);
    os << "n,index,re,im,spurious,distance\n";
    for (const auto& r : rep.records)
        for (std::size_t i = 0; i < r.poles.size(); ++i)
            os << r.n << ',' << i << ',' << fmt_real(r.poles[i].location.real()) << ','
               << fmt_real(r.poles[i].location.imag()) << ',' << int(r.poles[i].spurious) << ','
               << fmt_real(r.poles[i].distance) << '\n';
}

// ---------------------------------------------------------------------------

void cmd_coeffs(const RunContext& ctx, int N) {
    if (N < 0) throw ConfigError("coeffs: N must be >= 0");
    const MeromorphicModel m = ctx.config.build_model();
    auto os = open_out(ctx, "coeffs.csv");
    write_coeffs_csv(os, taylor_coefficients<double>(m, N), ctx.hash);
    finish(os, "coeffs.csv");
}

void cmd_cvals(const RunContext& ctx) {
    const MeromorphicModel m = ctx.config.build_model();
    const DominantAnalysis d = analyze_poles(m);
    const CjTable c = compute_cj(m, d);
    auto os = open_out(ctx, "cvals.json");
    os << cvals_json(m, d, c, ctx.hash).dump(2) << '\n';
    finish(os, "cvals.json");
}

void cmd_region(const RunContext& ctx) {
    const MeromorphicModel m = ctx.config.build_model();
    const RowStudy st = build_study(m, ctx.config.study_options(ctx.seed));
    const CurveSet curves = trace_boundaries(st.grid, st.cj);
    {
        auto os = open_out(ctx, "region.csv");
        write_region_csv(os, st.grid, ctx.hash);
        finish(os, "region.csv");
    }
    {
        auto os = open_out(ctx, "curves.csv");
        write_curves_csv(os, curves, ctx.hash);
        finish(os, "curves.csv");
    }
    {
        auto os = open_out(ctx, "nf_samples.csv");
        write_nf_csv(os, st.nf, ctx.hash);
        finish(os, "nf_samples.csv");
    }
    {
        auto os = open_out(ctx, "figure.svg");
        write_figure_svg(os, st, curves, ctx.hash);
        finish(os, "figure.svg");
    }
}

namespace {

template <typename T>
json run_verify(const RunContext& ctx, const RowStudy& st, ConvergenceReport& rep) {
    const auto& vc = ctx.config.verify;
    ExperimentOptions opt;
    opt.roots.seed = ctx.seed;
    opt.margin_against_N = vc.margin_against_N;
    CompactSetSpec K;
    if (vc.k_auto) {
        K = auto_compact_set(st, vc.margin, vc.k_count);
        if (K.points.empty()) throw ConfigError("verify: no U_F cells satisfy the requested margin");
    } else {
        K.points = vc.k_points;
        K.margin = vc.margin;
    }
    rep = convergence_experiment<T>(st, K, default_range(ctx.config), opt);

    json out;
    out["config_hash"] = ctx.hash;
    out["precision"] = to_string(rep.precision);
    out["lambda"] = st.analysis.lambda;
    out["m"] = rep.m;
    json conv;
    conv["verdict"] = rep.verdict;
    conv["first_third_gmean"] = rep.first_third_gmean;
    conv["last_third_gmean"] = rep.last_third_gmean;
    conv["max_final_error"] = rep.max_final_error;
    conv["k_points"] = rep.k_points;
    conv["margin"] = {{"requested", K.margin},
                      {"to_deleted_set", rep.margin.to_deleted_set},
                      {"to_holes", rep.margin.to_holes},
                      {"to_circle", rep.margin.to_circle}};
    conv["warnings"] = rep.warnings;
    json recs = json::array();
    for (const auto& r : rep.records)
        recs.push_back({{"n", r.n},
                        {"sup_error", r.sup_error},
                        {"conditioning", r.conditioning},
                        {"residual", r.residual},
                        {"degenerate", r.degenerate},
                        {"normalization", r.normalization},
                        {"max_pole_distance", r.max_pole_distance}});
    conv["records"] = recs;
    out["convergence"] = conv;

    json limits = json::array();
    for (const auto& r : rep.records)
        limits.push_back({{"n", r.n}, {"pole_count", r.poles.size()}, {"max_distance", r.max_pole_distance}});
    out["pole_limit"] = limits;

    if (vc.subsequence) {
        std::vector<Cd> tau0 = vc.tau0;
        if (tau0.empty()) tau0 = orbit_point(st.torus, vc.tau0_index + st.analysis.lambda);
        SubsequenceOptions so;
        so.n_min = vc.n_min;
        so.horizon = vc.horizon;
        so.experiment = opt;
        json sub;
        json t0 = json::array();
        for (const auto& z : tau0) t0.push_back(cjson(z));
        sub["tau0"] = t0;
        sub["eps"] = vc.eps;
        sub["count"] = vc.count;
        try {
            const SubsequenceReport sr = subsequence_experiment<T>(st, tau0, vc.eps, vc.count, so);
            sub["indices"] = sr.indices;
            sub["orbit_gap"] = sr.orbit_gap;
            sub["max_pairwise_projective"] = sr.max_pairwise_projective;
            sub["max_zero_mismatch"] = sr.max_zero_mismatch;
            sub["tracking_mismatch"] = sr.tracking_mismatch;
        } catch (const HorizonExhausted& e) {
            sub["error"] = std::string("HorizonExhausted: ") + e.what();
        }
        out["subsequence"] = sub;
    }
    return out;
}

}  // namespace

void cmd_verify(const RunContext& ctx) {
    const MeromorphicModel m = ctx.config.build_model();
    const RowStudy st = build_study(m, ctx.config.study_options(ctx.seed));
    ConvergenceReport rep;
    const json report = ctx.config.precision == Precision::Extended ? run_verify<Extended>(ctx, st, rep)
                                                                     : run_verify<double>(ctx, st, rep);
    {
        auto os = open_out(ctx, "verify_report.json");
        os << report.dump(2) << '\n';
        finish(os, "verify_report.json");
    }
    {
        auto os = open_out(ctx, "errors.csv");
        write_errors_csv(os, rep, ctx.hash);
        finish(os, "errors.csv");
    }
    {
        auto os = open_out(ctx, "poles.csv");
        write_poles_csv(os, rep, ctx.hash);
        finish(os, "poles.csv");
    }
}

void cmd_all(const RunContext& ctx, int N) {
    cmd_coeffs(ctx, N);
    cmd_cvals(ctx);
    cmd_region(ctx);
    cmd_verify(ctx);
}

}  // namespace lastrow
