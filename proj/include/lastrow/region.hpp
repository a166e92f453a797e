#pragma once

#include "lastrow/model.hpp"
#include "lastrow/rowtheory.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace lastrow {

struct Box {
    double xmin = -1.5, xmax = 1.5, ymin = -1.5, ymax = 1.5;

    /// Square of half-width 1.5 rho centred at the origin.
    static Box around_disk(double rho) { return {-1.5 * rho, 1.5 * rho, -1.5 * rho, 1.5 * rho}; }
};

/// g_j(z) = 2|C_j Delta_j(z)| - sum_k |C_k Delta_k(z)|, j = 1..nu.
std::vector<double> g_values(const CjTable& c, const Cd& z);

/// sum_k |C_k Delta_k(z)|, the scale of the g_j.
double g_scale(const CjTable& c, const Cd& z);

/// max_j g_j(z) <= rel_tol * g_scale(z). The region is closed, so boundary
/// points belong to it; rel_tol only absorbs rounding in |.|.
bool in_N(const CjTable& c, const Cd& z, double rel_tol = 1e-12);

struct NFSample {
    std::vector<Cd> points;
    std::vector<std::int64_t> source;  // orbit index n that produced each point
    int skipped = 0;                   // orbit samples whose root solve failed
    bool nf_equals_n = false;          // set when the arguments are declared independent
};

/// Zeros of omega(., xi^{n + lambda}) for n = 0..M-1, in order of n.
NFSample sample_NF(const CjTable& c, const TorusSpec& t, const DominantAnalysis& d, int M, double tol = 1e-12,
                   const RootOptions& opt = {});

struct RegionOptions {
    /// Radius of the hole punched around each non-dominant pole inside the
    /// disk, in units of rho.
    double exclusion_radius = 0.02;
    double membership_tol = 1e-12;
    unsigned threads = 0;
};

/// Raster of the convergence-region data. Node (i, k) sits at
/// x_i = lerp(xmin, xmax, i/(nx-1)), y_k likewise; storage is row-major in k.
struct RegionGrid {
    Box box;
    int nx = 0, ny = 0;
    double rho = 0.0;
    double exclusion_radius = 0.0;  // absolute
    int nu = 0;
    std::vector<double> gmax;
    std::vector<std::vector<double>> g;  // g[j][cell]
    std::vector<std::uint8_t> in_N, in_disk, in_U, in_UF;
    bool uf_available = false;
    std::vector<Cd> deleted_poles;  // z_{mu+1}..z_ell

    std::size_t index(int i, int k) const { return static_cast<std::size_t>(k) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i); }
    double x(int i) const;
    double y(int k) const;
    Cd point(int i, int k) const { return {x(i), y(k)}; }
    double dx() const { return (box.xmax - box.xmin) / (nx - 1); }
    double dy() const { return (box.ymax - box.ymin) / (ny - 1); }
    double cell_diagonal() const;
    /// Nearest node to z, or nullopt outside the box.
    std::optional<std::pair<int, int>> nearest_node(const Cd& z) const;
};

/// Fills gmax, per-j g values and all masks. The U_F mask equals the U mask
/// when the torus declares independent arguments; with declared relations
/// it is built from `nf` (nodes nearest to a sampled zero are removed) and
/// left unavailable when no sample is supplied.
RegionGrid scan_region(const MeromorphicModel& m, const DominantAnalysis& d, const CjTable& c, const Box& box,
                       int nx, int ny, const RegionOptions& opt = {}, const TorusSpec* torus = nullptr,
                       const NFSample* nf = nullptr);

struct Polyline {
    std::vector<Cd> vertices;
    bool closed = false;
};

struct CurveSet {
    std::vector<std::vector<Polyline>> curves;  // curves[j]
    std::vector<int> component_count;
    std::vector<std::vector<int>> component_id;  // per polyline, 0-based within each j
    std::vector<int> degenerate_cells;  // cells with all four corners exactly zero

    int nu() const { return static_cast<int>(curves.size()); }
};

/// Marching squares on the zero level set of each g_j, with the ambiguous
/// saddle cases decided by the sign of g_j at the cell centre. Segments are
/// chained into polylines; open polylines whose endpoints lie within one
/// cell diagonal of each other count as one component.
CurveSet trace_boundaries(const RegionGrid& grid, const CjTable& c);

/// Acceptable |g_j| at a traced vertex: 2 * cell diagonal * local gradient.
double curve_tolerance(const RegionGrid& grid, const CjTable& c, int j, const Cd& z);

/// Fraction of N-cells holding at least one sample point.
double nf_fill_fraction(const RegionGrid& grid, const NFSample& nf);

}  // namespace lastrow
