#pragma once

#include "lastrow/model.hpp"
#include "lastrow/region.hpp"
#include "lastrow/rowtheory.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lastrow {

/// Everything derived from a model that the experiments need: pole
/// ordering, C_j constants, torus data, raster and sampled omega zeros.
struct RowStudy {
    const MeromorphicModel* model = nullptr;
    DominantAnalysis analysis;
    CjTable cj;
    TorusSpec torus;
    NFSample nf;
    RegionGrid grid;
    PredictedLimitPoles predicted;
};

struct StudyOptions {
    TorusSpec::Rank rank = TorusSpec::Rank::Relations;
    std::vector<std::vector<long long>> relations;
    std::optional<Box> box;  // default: Box::around_disk(rho)
    int nx = 601, ny = 601;
    RegionOptions region;
    int orbit_samples = 2000;
    RootOptions roots;
};

/// `model` must outlive the returned study.
RowStudy build_study(const MeromorphicModel& model, const StudyOptions& opt = {});

/// Union of the isolated predicted limit points and the omega zero set.
/// Distances to the latter use the sampled cloud, and are zero inside the
/// g_j <= 0 region when the arguments are declared independent.
double distance_to_predicted(const RowStudy& study, const Cd& z);

struct CompactSetSpec {
    std::vector<Cd> points;
    double margin = 0.0;
};

struct MarginReport {
    double to_deleted_set = std::numeric_limits<double>::infinity();  // N cells or sampled omega zeros
    double to_holes = std::numeric_limits<double>::infinity();        // exclusion disks of non-dominant poles
    double to_circle = std::numeric_limits<double>::infinity();       // |z| = rho
    bool ok = false;
};

/// Checks every point of K against the boundary pieces of U_F: the region
/// removed by omega zeros (N cells when the arguments are independent, or
/// when `use_N` is set; the sampled zeros otherwise), the exclusion disks
/// and the circle |z| = rho.
MarginReport certify_margin(const RowStudy& study, const CompactSetSpec& K, bool use_N = false);

/// Up to `count` points taken evenly from the U_F raster cells that satisfy
/// the margin. Deterministic.
CompactSetSpec auto_compact_set(const RowStudy& study, double margin, int count = 64);

struct PoleRecord {
    Cd location;
    bool spurious = false;
    double distance = 0.0;  // to the predicted limit set
};

struct ConvergenceRecord {
    int n = 0;
    double sup_error = 0.0;
    double conditioning = 0.0;
    double residual = 0.0;
    bool degenerate = false;
    std::string normalization;
    std::vector<PoleRecord> poles;
    double max_pole_distance = 0.0;  // 0 when there are no poles
};

struct ConvergenceReport {
    int m = 0;
    Precision precision = Precision::Double;
    std::vector<ConvergenceRecord> records;  // sorted by n
    std::string verdict;                     // "consistent" or "inconclusive"
    double first_third_gmean = 0.0;
    double last_third_gmean = 0.0;
    double max_final_error = 0.0;
    std::vector<std::string> warnings;
    MarginReport margin;
    std::size_t k_points = 0;
};

struct ExperimentOptions {
    /// Row to use; must equal lambda - 1 when set.
    std::optional<int> m;
    double pade_tol = 1e-9;
    double verdict_ratio = 0.9;
    bool margin_against_N = false;
    double eval_exclusion = 1e-9;
    RootOptions roots;
    unsigned threads = 0;
};

/// Geometric mean of the positive entries; zeros are floored at 1e-300.
double geometric_mean(const std::vector<double>& xs);

/// "consistent" when the geometric mean of the last third is below
/// ratio * the geometric mean of the first third.
std::string trend_verdict(const std::vector<double>& series, double ratio, double* first = nullptr,
                          double* last = nullptr);

template <typename T>
ConvergenceReport convergence_experiment(const RowStudy& study, const CompactSetSpec& K,
                                         const std::vector<int>& n_range, const ExperimentOptions& opt = {});

struct PoleLimitRecord {
    int n = 0;
    std::vector<PoleRecord> poles;
    double max_distance = 0.0;
};

template <typename T>
std::vector<PoleLimitRecord> pole_limit_experiment(const RowStudy& study, const std::vector<int>& n_range,
                                                   const ExperimentOptions& opt = {});

struct SubsequenceReport {
    std::vector<std::int64_t> indices;  // n with |xi^{n+lambda} - tau0|_inf < eps
    std::vector<double> orbit_gap;      // that distance, per index
    double max_pairwise_projective = 0.0;
    /// Hausdorff distance between the zeros of Q_n and
    /// zeros(omega(., tau0)) + reduced pole set, maximised over indices.
    double max_zero_mismatch = 0.0;
    /// Same, against omega(., xi^{n+lambda}) for the index's own orbit point.
    std::vector<double> tracking_mismatch;
};

struct SubsequenceOptions {
    std::int64_t n_min = 0;
    std::int64_t horizon = 10000;  // search n in [n_min, n_min + horizon)
    ExperimentOptions experiment;
};

template <typename T>
SubsequenceReport subsequence_experiment(const RowStudy& study, const std::vector<Cd>& tau0, double eps, int count,
                                         const SubsequenceOptions& opt = {});

/// Hausdorff distance between finite point sets; 0 for two empty sets and
/// infinity when exactly one is empty.
double hausdorff(const std::vector<Cd>& a, const std::vector<Cd>& b);

}  // namespace lastrow
