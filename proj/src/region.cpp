#include "lastrow/region.hpp"

#include "lastrow/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace lastrow {

std::vector<double> g_values(const CjTable& c, const Cd& z) {
    const std::size_t nu = c.C.size();
    std::vector<double> term(nu), g(nu);
    double sum = 0.0;
    for (std::size_t j = 0; j < nu; ++j) {
        term[j] = std::abs(c.C[j] * c.Delta[j](z));
        sum += term[j];
    }
    for (std::size_t j = 0; j < nu; ++j) g[j] = 2.0 * term[j] - sum;
    return g;
}

double g_scale(const CjTable& c, const Cd& z) {
    double sum = 0.0;
    for (std::size_t j = 0; j < c.C.size(); ++j) sum += std::abs(c.C[j] * c.Delta[j](z));
    return sum;
}

bool in_N(const CjTable& c, const Cd& z, double rel_tol) {
    const auto g = g_values(c, z);
    return *std::max_element(g.begin(), g.end()) <= rel_tol * g_scale(c, z);
}

NFSample sample_NF(const CjTable& c, const TorusSpec& t, const DominantAnalysis& d, int M, double tol,
                   const RootOptions& opt) {
    if (M < 1) throw InputError("sample_NF: M must be >= 1");
    NFSample out;
    out.nf_equals_n = t.independent();
    if (c.nu() < 2) return out;  // omega is a nonzero constant

    std::vector<std::vector<Cd>> per(static_cast<std::size_t>(M));
    std::vector<std::uint8_t> failed(static_cast<std::size_t>(M), 0);
    parallel_for(static_cast<std::size_t>(M), [&](std::size_t n) {
        try {
            const OmegaPoly w = omega_at(c, orbit_point(t, static_cast<std::int64_t>(n) + d.lambda));
            per[n] = omega_zeros(w, c, tol, opt);
        } catch (const NonConvergence&) {
            failed[n] = 1;
        }
    });
    for (std::size_t n = 0; n < per.size(); ++n) {
        out.skipped += failed[n];
        for (const auto& z : per[n]) {
            out.points.push_back(z);
            out.source.push_back(static_cast<std::int64_t>(n));
        }
    }
    return out;
}

double RegionGrid::x(int i) const {
    return (box.xmin * static_cast<double>(nx - 1 - i) + box.xmax * static_cast<double>(i)) / (nx - 1);
}

double RegionGrid::y(int k) const {
    return (box.ymin * static_cast<double>(ny - 1 - k) + box.ymax * static_cast<double>(k)) / (ny - 1);
}

double RegionGrid::cell_diagonal() const { return std::hypot(dx(), dy()); }

std::optional<std::pair<int, int>> RegionGrid::nearest_node(const Cd& z) const {
    const double fi = (z.real() - box.xmin) / dx();
    const double fk = (z.imag() - box.ymin) / dy();
    const auto i = static_cast<long>(std::lround(fi));
    const auto k = static_cast<long>(std::lround(fk));
    if (i < 0 || k < 0 || i >= nx || k >= ny) return std::nullopt;
    return std::pair<int, int>{static_cast<int>(i), static_cast<int>(k)};
}

RegionGrid scan_region(const MeromorphicModel& m, const DominantAnalysis& d, const CjTable& c, const Box& box,
                       int nx, int ny, const RegionOptions& opt, const TorusSpec* torus, const NFSample* nf) {
    if (nx < 2 || ny < 2) throw InputError("scan_region: nx and ny must be >= 2");
    if (!(box.xmax > box.xmin) || !(box.ymax > box.ymin)) throw InputError("scan_region: empty box");

    RegionGrid grid;
    grid.box = box;
    grid.nx = nx;
    grid.ny = ny;
    grid.rho = d.rho;
    grid.nu = c.nu();
    grid.exclusion_radius = opt.exclusion_radius * d.rho;
    for (std::size_t i = static_cast<std::size_t>(d.mu); i < d.order.size(); ++i)
        grid.deleted_poles.push_back(to_cd(m.poles()[d.order[i]].location));

    const std::size_t cells = static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    grid.gmax.assign(cells, 0.0);
    grid.g.assign(static_cast<std::size_t>(grid.nu), std::vector<double>(cells, 0.0));
    grid.in_N.assign(cells, 0);
    grid.in_disk.assign(cells, 0);
    grid.in_U.assign(cells, 0);
    grid.in_UF.assign(cells, 0);

    parallel_for(
        static_cast<std::size_t>(ny),
        [&](std::size_t row) {
            const int k = static_cast<int>(row);
            for (int i = 0; i < nx; ++i) {
                const Cd z = grid.point(i, k);
                const std::size_t id = grid.index(i, k);
                const auto g = g_values(c, z);
                double gm = g[0];
                for (std::size_t j = 0; j < g.size(); ++j) {
                    grid.g[j][id] = g[j];
                    gm = std::max(gm, g[j]);
                }
                grid.gmax[id] = gm;
                const bool member = gm <= opt.membership_tol * g_scale(c, z);
                const bool disk = std::abs(z) < d.rho;
                bool hole = false;
                for (const auto& p : grid.deleted_poles) hole = hole || std::abs(z - p) < grid.exclusion_radius;
                grid.in_N[id] = member;
                grid.in_disk[id] = disk;
                grid.in_U[id] = disk && !member && !hole;
                grid.in_UF[id] = disk && !hole;
            }
        },
        opt.threads);

    if (torus != nullptr && torus->independent()) {
        grid.in_UF = grid.in_U;
        grid.uf_available = true;
    } else if (nf != nullptr) {
        for (const auto& z : nf->points)
            if (auto node = grid.nearest_node(z)) grid.in_UF[grid.index(node->first, node->second)] = 0;
        grid.uf_available = true;
    } else if (grid.nu < 2) {
        grid.uf_available = true;  // nothing to delete besides the poles
    } else {
        std::fill(grid.in_UF.begin(), grid.in_UF.end(), 0);
    }
    return grid;
}

namespace {

struct Segment {
    std::int64_t a, b;  // edge ids
};

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

CurveSet trace_boundaries(const RegionGrid& grid, const CjTable& c) {
    CurveSet out;
    const int nu = grid.nu;
    out.curves.resize(static_cast<std::size_t>(nu));
    out.component_count.assign(static_cast<std::size_t>(nu), 0);
    out.degenerate_cells.assign(static_cast<std::size_t>(nu), 0);
    out.component_id.resize(static_cast<std::size_t>(nu));
    if (nu < 2) return out;  // g_1 = |C_1| > 0 has no zero set

    const int nx = grid.nx, ny = grid.ny;
    // horizontal edge (i,k)-(i+1,k): k*(nx-1)+i; vertical (i,k)-(i,k+1): offset + k*nx+i
    const std::int64_t h_count = static_cast<std::int64_t>(nx - 1) * ny;
    const std::int64_t edge_count = h_count + static_cast<std::int64_t>(nx) * (ny - 1);
    auto h_edge = [&](int i, int k) { return static_cast<std::int64_t>(k) * (nx - 1) + i; };
    auto v_edge = [&](int i, int k) { return h_count + static_cast<std::int64_t>(k) * nx + i; };

    for (int j = 0; j < nu; ++j) {
        const auto& g = grid.g[static_cast<std::size_t>(j)];
        auto val = [&](int i, int k) { return g[grid.index(i, k)]; };
        auto pos = [&](int i, int k) { return val(i, k) > 0.0; };

        auto edge_point = [&](std::int64_t e) -> Cd {
            int i0, k0, i1, k1;
            if (e < h_count) {
                k0 = static_cast<int>(e / (nx - 1));
                i0 = static_cast<int>(e % (nx - 1));
                i1 = i0 + 1;
                k1 = k0;
            } else {
                const std::int64_t r = e - h_count;
                k0 = static_cast<int>(r / nx);
                i0 = static_cast<int>(r % nx);
                i1 = i0;
                k1 = k0 + 1;
            }
            const double ga = val(i0, k0), gb = val(i1, k1);
            const double t = ga / (ga - gb);
            return grid.point(i0, k0) + t * (grid.point(i1, k1) - grid.point(i0, k0));
        };

        std::vector<Segment> segs;
        int degenerate = 0;
        for (int k = 0; k + 1 < ny; ++k) {
            for (int i = 0; i + 1 < nx; ++i) {
                const std::array<bool, 4> b{pos(i, k), pos(i + 1, k), pos(i + 1, k + 1), pos(i, k + 1)};
                if (val(i, k) == 0.0 && val(i + 1, k) == 0.0 && val(i + 1, k + 1) == 0.0 && val(i, k + 1) == 0.0)
                    ++degenerate;
                // edges: 0 bottom, 1 right, 2 top, 3 left
                const std::array<std::int64_t, 4> e{h_edge(i, k), v_edge(i + 1, k), h_edge(i, k + 1), v_edge(i, k)};
                const std::array<bool, 4> cross{b[0] != b[1], b[1] != b[2], b[2] != b[3], b[3] != b[0]};
                const int n_cross = cross[0] + cross[1] + cross[2] + cross[3];
                if (n_cross == 2) {
                    std::array<std::int64_t, 2> ends{};
                    int w = 0;
                    for (int q = 0; q < 4; ++q)
                        if (cross[static_cast<std::size_t>(q)]) ends[static_cast<std::size_t>(w++)] = e[static_cast<std::size_t>(q)];
                    segs.push_back({ends[0], ends[1]});
                } else if (n_cross == 4) {
                    const Cd centre = 0.5 * (grid.point(i, k) + grid.point(i + 1, k + 1));
                    const bool centre_pos = g_values(c, centre)[static_cast<std::size_t>(j)] > 0.0;
                    // cut off the corners whose sign differs from the centre
                    // corner q is bounded by edges q-1 and q (mod 4): v0:(3,0) v1:(0,1) v2:(1,2) v3:(2,3)
                    for (int q = 0; q < 4; ++q) {
                        if (b[static_cast<std::size_t>(q)] == centre_pos) continue;
                        segs.push_back({e[static_cast<std::size_t>((q + 3) % 4)], e[static_cast<std::size_t>(q)]});
                    }
                }
            }
        }
        out.degenerate_cells[static_cast<std::size_t>(j)] = degenerate;

        // edge -> up to two incident segments
        std::vector<std::array<int, 2>> incident(static_cast<std::size_t>(edge_count), {-1, -1});
        for (std::size_t s = 0; s < segs.size(); ++s) {
            for (std::int64_t e : {segs[s].a, segs[s].b}) {
                auto& slot = incident[static_cast<std::size_t>(e)];
                (slot[0] < 0 ? slot[0] : slot[1]) = static_cast<int>(s);
            }
        }
        std::vector<std::uint8_t> used(segs.size(), 0);
        auto walk = [&](std::int64_t start_edge, int start_seg, bool closed) {
            Polyline pl;
            pl.closed = closed;
            pl.vertices.push_back(edge_point(start_edge));
            std::int64_t cur = start_edge;
            int seg = start_seg;
            while (seg >= 0 && !used[static_cast<std::size_t>(seg)]) {
                used[static_cast<std::size_t>(seg)] = 1;
                const Segment& sg = segs[static_cast<std::size_t>(seg)];
                cur = sg.a == cur ? sg.b : sg.a;
                pl.vertices.push_back(edge_point(cur));
                const auto& inc = incident[static_cast<std::size_t>(cur)];
                seg = inc[0] == seg ? inc[1] : inc[0];
            }
            return pl;
        };

        auto& polylines = out.curves[static_cast<std::size_t>(j)];
        for (std::size_t s = 0; s < segs.size(); ++s) {
            for (std::int64_t e : {segs[s].a, segs[s].b}) {
                const auto& inc = incident[static_cast<std::size_t>(e)];
                if (inc[1] < 0 && !used[static_cast<std::size_t>(inc[0])]) polylines.push_back(walk(e, inc[0], false));
            }
        }
        for (std::size_t s = 0; s < segs.size(); ++s)
            if (!used[s]) polylines.push_back(walk(segs[s].a, static_cast<int>(s), true));

        const double tol = grid.cell_diagonal();
        UnionFind uf(polylines.size());
        for (std::size_t p = 0; p < polylines.size(); ++p) {
            if (polylines[p].closed) continue;
            for (std::size_t q = p + 1; q < polylines.size(); ++q) {
                if (polylines[q].closed) continue;
                const auto& P = polylines[p].vertices;
                const auto& Q = polylines[q].vertices;
                for (const Cd& x : {P.front(), P.back()})
                    for (const Cd& y : {Q.front(), Q.back()})
                        if (std::abs(x - y) <= tol) uf.unite(p, q);
            }
        }
        std::vector<int> label(polylines.size(), -1);
        auto& ids = out.component_id[static_cast<std::size_t>(j)];
        int comps = 0;
        for (std::size_t p = 0; p < polylines.size(); ++p) {
            const std::size_t root = uf.find(p);
            if (label[root] < 0) label[root] = comps++;
            ids.push_back(label[root]);
        }
        out.component_count[static_cast<std::size_t>(j)] = comps;
    }
    return out;
}

double curve_tolerance(const RegionGrid& grid, const CjTable& c, int j, const Cd& z) {
    const double h = 0.5 * std::min(grid.dx(), grid.dy());
    const auto ju = static_cast<std::size_t>(j);
    const double gx = (g_values(c, z + Cd(h, 0))[ju] - g_values(c, z - Cd(h, 0))[ju]) / (2 * h);
    const double gy = (g_values(c, z + Cd(0, h))[ju] - g_values(c, z - Cd(0, h))[ju]) / (2 * h);
    return 2.0 * grid.cell_diagonal() * std::hypot(gx, gy) + 1e-14 * g_scale(c, z);
}

double nf_fill_fraction(const RegionGrid& grid, const NFSample& nf) {
    std::vector<std::uint8_t> hit(grid.in_N.size(), 0);
    for (const auto& z : nf.points)
        if (auto node = grid.nearest_node(z)) hit[grid.index(node->first, node->second)] = 1;
    std::size_t total = 0, filled = 0;
    for (std::size_t id = 0; id < hit.size(); ++id) {
        if (!grid.in_N[id]) continue;
        ++total;
        filled += hit[id];
    }
    return total == 0 ? 0.0 : static_cast<double>(filled) / static_cast<double>(total);
}

}  // namespace lastrow
