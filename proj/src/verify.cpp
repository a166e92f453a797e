#include "lastrow/verify.hpp"

#include "lastrow/pade.hpp"
#include "lastrow/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace lastrow {

RowStudy build_study(const MeromorphicModel& model, const StudyOptions& opt) {
    RowStudy st;
    st.model = &model;
    st.analysis = analyze_poles(model);
    st.cj = compute_cj(model, st.analysis);
    st.torus = make_torus(model, st.analysis, opt.rank, opt.relations);
    if (st.cj.nu() >= 2) {
        st.nf = sample_NF(st.cj, st.torus, st.analysis, opt.orbit_samples, 1e-12, opt.roots);
    } else {
        st.nf.nf_equals_n = st.torus.independent();
    }
    const Box box = opt.box.value_or(Box::around_disk(st.analysis.rho));
    st.grid = scan_region(model, st.analysis, st.cj, box, opt.nx, opt.ny, opt.region, &st.torus, &st.nf);
    st.predicted = predicted_limit_poles(model, st.analysis, st.cj, &st.torus);
    return st;
}

double distance_to_predicted(const RowStudy& study, const Cd& z) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : study.predicted.isolated) best = std::min(best, std::abs(z - p.location));
    if (study.cj.nu() >= 2) {
        if (study.predicted.nf_equals_n && in_N(study.cj, z)) return 0.0;
        for (const auto& p : study.nf.points) best = std::min(best, std::abs(z - p));
    }
    return best;
}

namespace {

/// Distance from z to the nearest N cell (centre distance less half a cell
/// diagonal), searched within `reach`; returns reach when none is closer.
double distance_to_N_cells(const RegionGrid& grid, const Cd& z, double reach) {
    const auto node = grid.nearest_node(z);
    if (!node) return reach;
    const int ri = static_cast<int>(std::ceil(reach / grid.dx())) + 1;
    const int rk = static_cast<int>(std::ceil(reach / grid.dy())) + 1;
    const double half = 0.5 * grid.cell_diagonal();
    double best = reach;
    for (int k = std::max(0, node->second - rk); k <= std::min(grid.ny - 1, node->second + rk); ++k)
        for (int i = std::max(0, node->first - ri); i <= std::min(grid.nx - 1, node->first + ri); ++i)
            if (grid.in_N[grid.index(i, k)]) best = std::min(best, std::max(0.0, std::abs(z - grid.point(i, k)) - half));
    return best;
}

bool deleted_set_is_N(const RowStudy& st, bool use_N) { return use_N || st.torus.independent(); }

MarginReport point_margins(const RowStudy& st, const Cd& z, double reach, bool use_N) {
    MarginReport r;
    r.to_circle = st.analysis.rho - std::abs(z);
    for (const auto& p : st.grid.deleted_poles)
        r.to_holes = std::min(r.to_holes, std::abs(z - p) - st.grid.exclusion_radius);
    if (st.cj.nu() >= 2) {
        if (deleted_set_is_N(st, use_N)) {
            r.to_deleted_set = in_N(st.cj, z) ? 0.0 : distance_to_N_cells(st.grid, z, reach);
        } else {
            for (const auto& p : st.nf.points) r.to_deleted_set = std::min(r.to_deleted_set, std::abs(z - p));
        }
    }
    return r;
}

void merge_into(MarginReport& acc, const MarginReport& r) {
    acc.to_circle = std::min(acc.to_circle, r.to_circle);
    acc.to_holes = std::min(acc.to_holes, r.to_holes);
    acc.to_deleted_set = std::min(acc.to_deleted_set, r.to_deleted_set);
}

template <typename T>
std::vector<PoleRecord> pole_records(const RowStudy& st, const PadeApproximant<T>& pa, const ExperimentOptions& opt,
                                     double& max_distance) {
    std::vector<PoleRecord> out;
    max_distance = 0.0;
    const PadePoles<T> poles = pade_poles(pa, opt.pade_tol, 1e-6, opt.roots);
    for (std::size_t i = 0; i < poles.roots.size(); ++i) {
        PoleRecord r;
        r.location = to_cd(poles.roots[i]);
        r.spurious = poles.spurious[i];
        r.distance = distance_to_predicted(st, r.location);
        max_distance = std::max(max_distance, r.distance);
        out.push_back(r);
    }
    return out;
}

int row_for(const RowStudy& st, const ExperimentOptions& opt) {
    const int m = st.analysis.lambda - 1;
    if (opt.m && *opt.m != m) throw RowMismatch("experiment: only the row m = lambda - 1 is supported");
    return m;
}

}  // namespace

MarginReport certify_margin(const RowStudy& study, const CompactSetSpec& K, bool use_N) {
    if (K.points.empty()) throw InputError("certify_margin: compact set is empty");
    MarginReport acc;
    const double reach = std::max(K.margin, 0.0) * 2.0 + study.grid.cell_diagonal();
    for (const auto& z : K.points) merge_into(acc, point_margins(study, z, reach, use_N));
    acc.ok = acc.to_circle >= K.margin && acc.to_holes >= K.margin && acc.to_deleted_set >= K.margin;
    return acc;
}

CompactSetSpec auto_compact_set(const RowStudy& study, double margin, int count) {
    const RegionGrid& g = study.grid;
    if (!g.uf_available) throw InputError("auto_compact_set: U_F mask unavailable");
    std::vector<std::vector<Cd>> rows(static_cast<std::size_t>(g.ny));
    const double reach = margin + g.cell_diagonal();
    parallel_for(static_cast<std::size_t>(g.ny), [&](std::size_t row) {
        const int k = static_cast<int>(row);
        for (int i = 0; i < g.nx; ++i) {
            if (!g.in_UF[g.index(i, k)]) continue;
            const Cd z = g.point(i, k);
            if (study.analysis.rho - std::abs(z) < margin) continue;
            const MarginReport r = point_margins(study, z, reach, false);
            if (r.to_holes >= margin && r.to_deleted_set >= margin) rows[row].push_back(z);
        }
    });
    std::vector<Cd> candidates;
    for (auto& r : rows) candidates.insert(candidates.end(), r.begin(), r.end());
    CompactSetSpec K;
    K.margin = margin;
    if (candidates.empty() || count <= 0) return K;
    const std::size_t want = std::min<std::size_t>(static_cast<std::size_t>(count), candidates.size());
    for (std::size_t i = 0; i < want; ++i) {
        const std::size_t idx = want == 1 ? candidates.size() / 2 : i * (candidates.size() - 1) / (want - 1);
        K.points.push_back(candidates[idx]);
    }
    return K;
}

double geometric_mean(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    double acc = 0.0;
    for (double x : xs) acc += std::log(std::max(x, 1e-300));
    return std::exp(acc / static_cast<double>(xs.size()));
}

std::string trend_verdict(const std::vector<double>& series, double ratio, double* first, double* last) {
    const std::size_t third = series.size() / 3;
    if (third == 0) return "inconclusive";
    const double f = geometric_mean({series.begin(), series.begin() + static_cast<std::ptrdiff_t>(third)});
    const double l = geometric_mean({series.end() - static_cast<std::ptrdiff_t>(third), series.end()});
    if (first) *first = f;
    if (last) *last = l;
    return l < ratio * f ? "consistent" : "inconclusive";
}

template <typename T>
ConvergenceReport convergence_experiment(const RowStudy& study, const CompactSetSpec& K,
                                         const std::vector<int>& n_range, const ExperimentOptions& opt) {
    const int m = row_for(study, opt);
    if (n_range.empty()) throw InputError("convergence_experiment: empty n range");
    ConvergenceReport rep;
    rep.m = m;
    rep.precision = std::is_same_v<T, double> ? Precision::Double : Precision::Extended;
    rep.margin = certify_margin(study, K, opt.margin_against_N);
    rep.k_points = K.points.size();
    if (!rep.margin.ok) throw InputError("convergence_experiment: compact set violates its margin");

    std::vector<int> ns = n_range;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    if (ns.front() < 0) throw InputError("convergence_experiment: n must be >= 0");
    const PowerSeries<T> series = study.model->template taylor_coefficients_as<T>(ns.back() + m);

    std::vector<Complex<T>> pts;
    std::vector<Complex<T>> exact;
    for (const auto& z : K.points) {
        pts.push_back(from_cd<T>(z));
        exact.push_back(study.model->template evaluate<T>(pts.back(), opt.eval_exclusion));
    }

    rep.records.resize(ns.size());
    parallel_for(
        ns.size(),
        [&](std::size_t idx) {
            using std::abs;
            const PadeApproximant<T> pa = pade_approximant(series, ns[idx], m, opt.pade_tol);
            ConvergenceRecord& r = rep.records[idx];
            r.n = ns[idx];
            T worst(0);
            for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max<T>(worst, abs(pa(pts[i]) - exact[i]));
            r.sup_error = to_double(worst);
            r.conditioning = pa.conditioning;
            r.residual = pa.residual;
            r.degenerate = pa.degenerate;
            r.normalization = to_string(pa.normalization);
            r.poles = pole_records(study, pa, opt, r.max_pole_distance);
        },
        opt.threads);

    std::vector<double> errs;
    for (const auto& r : rep.records) errs.push_back(r.sup_error);
    rep.verdict = trend_verdict(errs, opt.verdict_ratio, &rep.first_third_gmean, &rep.last_third_gmean);
    rep.max_final_error = errs.back();

    double worst_cond = 1.0;
    int degenerate = 0;
    for (const auto& r : rep.records) {
        worst_cond = std::min(worst_cond, r.conditioning);
        degenerate += r.degenerate;
    }
    if (rep.precision == Precision::Double && m > 0 && worst_cond < 1e-13)
        rep.warnings.push_back("Toeplitz conditioning below 1e-13 in double precision; rerun with extended precision");
    if (degenerate > 0)
        rep.warnings.push_back("DegenerateSystem: " + std::to_string(degenerate) +
                               " approximants have an ambiguous null space");
    return rep;
}

template <typename T>
std::vector<PoleLimitRecord> pole_limit_experiment(const RowStudy& study, const std::vector<int>& n_range,
                                                   const ExperimentOptions& opt) {
    const int m = row_for(study, opt);
    std::vector<int> ns = n_range;
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    std::vector<PoleLimitRecord> out(ns.size());
    if (ns.empty()) return out;
    const PowerSeries<T> series = study.model->template taylor_coefficients_as<T>(ns.back() + m);
    parallel_for(
        ns.size(),
        [&](std::size_t idx) {
            const PadeApproximant<T> pa = pade_approximant(series, ns[idx], m, opt.pade_tol);
            out[idx].n = ns[idx];
            out[idx].poles = pole_records(study, pa, opt, out[idx].max_distance);
        },
        opt.threads);
    return out;
}

double hausdorff(const std::vector<Cd>& a, const std::vector<Cd>& b) {
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    auto directed = [](const std::vector<Cd>& x, const std::vector<Cd>& y) {
        double worst = 0.0;
        for (const auto& p : x) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : y) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

template <typename T>
SubsequenceReport subsequence_experiment(const RowStudy& study, const std::vector<Cd>& tau0, double eps, int count,
                                         const SubsequenceOptions& opt) {
    const int m = row_for(study, opt.experiment);
    if (static_cast<int>(tau0.size()) != study.cj.nu()) throw InputError("subsequence_experiment: tau0 needs nu entries");
    if (count < 1) throw InputError("subsequence_experiment: count must be >= 1");
    const int lambda = study.analysis.lambda;

    SubsequenceReport rep;
    for (std::int64_t n = opt.n_min; n < opt.n_min + opt.horizon && static_cast<int>(rep.indices.size()) < count; ++n) {
        const auto tau = orbit_point(study.torus, n + lambda);
        double gap = 0.0;
        for (std::size_t j = 0; j < tau.size(); ++j) gap = std::max(gap, std::abs(tau[j] - tau0[j]));
        if (gap < eps) {
            rep.indices.push_back(n);
            rep.orbit_gap.push_back(gap);
        }
    }
    if (static_cast<int>(rep.indices.size()) < count)
        throw HorizonExhausted("subsequence_experiment: found " + std::to_string(rep.indices.size()) + " of " +
                               std::to_string(count) + " orbit indices within the search horizon");

    std::vector<Cd> reduced;
    for (const auto& p : study.predicted.isolated)
        for (int k = 0; k < p.multiplicity; ++k) reduced.push_back(p.location);
    auto reference = [&](const std::vector<Cd>& tau) {
        std::vector<Cd> ref = reduced;
        if (study.cj.nu() >= 2) {
            const auto zs = omega_zeros(omega_at(study.cj, tau), study.cj, 1e-12, opt.experiment.roots);
            ref.insert(ref.end(), zs.begin(), zs.end());
        }
        return ref;
    };
    const std::vector<Cd> ref0 = reference(tau0);

    const auto nmax = static_cast<int>(rep.indices.back());
    const PowerSeries<T> series = study.model->template taylor_coefficients_as<T>(nmax + m);
    std::vector<std::vector<Complex<T>>> dens(rep.indices.size());
    std::vector<double> mismatch(rep.indices.size());
    rep.tracking_mismatch.resize(rep.indices.size());
    parallel_for(
        rep.indices.size(),
        [&](std::size_t i) {
            const auto n = static_cast<int>(rep.indices[i]);
            const PadeApproximant<T> pa = pade_approximant(series, n, m, opt.experiment.pade_tol);
            dens[i] = pa.denominator.coeffs();
            dens[i].resize(static_cast<std::size_t>(m) + 1);
            std::vector<Cd> zs;
            for (const auto& z : pade_poles(pa, opt.experiment.pade_tol, 1e-6, opt.experiment.roots).roots)
                zs.push_back(to_cd(z));
            mismatch[i] = hausdorff(zs, ref0);
            rep.tracking_mismatch[i] = hausdorff(zs, reference(orbit_point(study.torus, n + lambda)));
        },
        opt.experiment.threads);
    for (std::size_t i = 0; i < dens.size(); ++i) {
        rep.max_zero_mismatch = std::max(rep.max_zero_mismatch, mismatch[i]);
        for (std::size_t j = i + 1; j < dens.size(); ++j)
            rep.max_pairwise_projective = std::max(
                rep.max_pairwise_projective,
                projective_distance<T>(std::span<const Complex<T>>(dens[i]), std::span<const Complex<T>>(dens[j])));
    }
    return rep;
}

template ConvergenceReport convergence_experiment<double>(const RowStudy&, const CompactSetSpec&,
                                                          const std::vector<int>&, const ExperimentOptions&);
template ConvergenceReport convergence_experiment<Extended>(const RowStudy&, const CompactSetSpec&,
                                                            const std::vector<int>&, const ExperimentOptions&);
template std::vector<PoleLimitRecord> pole_limit_experiment<double>(const RowStudy&, const std::vector<int>&,
                                                                    const ExperimentOptions&);
template std::vector<PoleLimitRecord> pole_limit_experiment<Extended>(const RowStudy&, const std::vector<int>&,
                                                                      const ExperimentOptions&);
template SubsequenceReport subsequence_experiment<double>(const RowStudy&, const std::vector<Cd>&, double, int,
                                                          const SubsequenceOptions&);
template SubsequenceReport subsequence_experiment<Extended>(const RowStudy&, const std::vector<Cd>&, double, int,
                                                            const SubsequenceOptions&);

}  // namespace lastrow
