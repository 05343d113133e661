#pragma once

// Sampled fields on uniform grids.
//
// Layout: a field on Grid2D{gx1, gx2} stores values[j1 * gx2.n + j2], i.e. row-major
// with x1 as the outer index. A BoundaryTrace stores values[j1 * gt.n + jt].

#include "core.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

namespace halfplane {

inline constexpr double kDefaultTruncationTol = 1e-10;
inline constexpr double kUnchecked = std::numeric_limits<double>::infinity();

struct Grid1D {
    int n = 2;
    double x0 = 0.0;
    double dx = 1.0;

    Grid1D() = default;
    Grid1D(int n_, double x0_, double dx_) : n(n_), x0(x0_), dx(dx_) {
        if (n < 2) throw ConfigError("Grid1D: n must be >= 2");
        if (!(dx > 0)) throw ConfigError("Grid1D: dx must be > 0");
    }

    // DFT-centred grid: node n/2 sits at zero.
    static Grid1D symmetric_grid(int n, double dx) { return Grid1D(n, -(n / 2) * dx, dx); }

    double node(int j) const { return x0 + j * dx; }
    double last() const { return node(n - 1); }
    double extent() const { return (n - 1) * dx; }
    bool symmetric() const { return std::abs(x0 + (n / 2) * dx) <= 1e-9 * dx; }

    // index of the node equal to x, or -1
    int index_of(double x, double rel = 1e-7) const {
        double r = (x - x0) / dx;
        int j = static_cast<int>(std::lround(r));
        if (j < 0 || j >= n || std::abs(r - j) > rel) return -1;
        return j;
    }

    bool operator==(const Grid1D& o) const {
        return n == o.n && std::abs(x0 - o.x0) <= 1e-12 * std::max(1.0, std::abs(x0)) &&
               std::abs(dx - o.dx) <= 1e-12 * dx;
    }
};

// DFT-dual wavenumber grid, centred: k_p = (p - n/2) * 2*pi/(n*dx).
inline Grid1D dual_grid(const Grid1D& g) {
    double dk = 2 * pi / (g.n * g.dx);
    return Grid1D::symmetric_grid(g.n, dk);
}

enum class DomainTag { half_plane, whole_plane, spectral };

inline std::string to_string(DomainTag t) {
    switch (t) {
        case DomainTag::half_plane: return "half_plane";
        case DomainTag::whole_plane: return "whole_plane";
        default: return "spectral";
    }
}

inline DomainTag domain_tag_from(const std::string& s) {
    if (s == "half_plane") return DomainTag::half_plane;
    if (s == "whole_plane") return DomainTag::whole_plane;
    if (s == "spectral") return DomainTag::spectral;
    throw ConfigError("unknown domain tag '" + s + "'");
}

struct Grid2D {
    Grid1D gx1;
    Grid1D gx2;
    int size() const { return gx1.n * gx2.n; }
    bool operator==(const Grid2D& o) const { return gx1 == o.gx1 && gx2 == o.gx2; }
};

// Half-plane grid [-n1/2 dx1, ...) x [0, (n2-1) dx2].
inline Grid2D half_plane_grid(int n1, double dx1, int n2, double dx2) {
    return {Grid1D::symmetric_grid(n1, dx1), Grid1D(n2, 0.0, dx2)};
}

// Whole-plane companion of a half-plane grid: x2 nodes -n2..n2-1, so rows n2.. are x2 >= 0.
inline Grid2D whole_plane_companion(const Grid2D& half) {
    return {half.gx1, Grid1D::symmetric_grid(2 * half.gx2.n, half.gx2.dx)};
}

class HalfPlaneField {
public:
    Grid2D grid;
    cvec values;
    DomainTag tag = DomainTag::half_plane;

    HalfPlaneField() = default;

    HalfPlaneField(Grid2D g, cvec v, DomainTag t, double truncation_tol = kDefaultTruncationTol)
        : grid(g), values(std::move(v)), tag(t) {
        if (static_cast<int>(values.size()) != grid.size())
            throw ConfigError("HalfPlaneField: values size does not match grid");
        if (tag == DomainTag::half_plane) {
            if (std::abs(grid.gx2.x0) > 1e-12)
                throw ConfigError("HalfPlaneField: half-plane grid needs gx2.x0 = 0");
            if (!grid.gx1.symmetric()) throw ConfigError("HalfPlaneField: gx1 must be symmetric");
        } else if (tag == DomainTag::whole_plane) {
            if (!grid.gx1.symmetric() || !grid.gx2.symmetric())
                throw ConfigError("HalfPlaneField: whole-plane grid must be symmetric in both axes");
        }
        if (truncation_tol < kUnchecked && tag != DomainTag::spectral) {
            double m = boundary_ring_max();
            if (m >= truncation_tol) {
                std::ostringstream os;
                os << "field not decayed at truncation box edge: max |f| = " << m
                   << " >= tol " << truncation_tol;
                throw DomainError(os.str());
            }
        }
    }

    static HalfPlaneField zeros(const Grid2D& g, DomainTag t) {
        return HalfPlaneField(g, cvec(g.size()), t, kUnchecked);
    }

    int n1() const { return grid.gx1.n; }
    int n2() const { return grid.gx2.n; }
    int index(int j1, int j2) const { return j1 * grid.gx2.n + j2; }
    cplx& operator()(int j1, int j2) { return values[index(j1, j2)]; }
    const cplx& operator()(int j1, int j2) const { return values[index(j1, j2)]; }

    // Outer ring of the truncated box; the x2 = 0 row of a half-plane field is a true boundary.
    double boundary_ring_max() const {
        double m = 0;
        int N1 = n1(), N2 = n2();
        for (int j2 = 0; j2 < N2; ++j2) {
            m = std::max(m, std::abs((*this)(0, j2)));
            m = std::max(m, std::abs((*this)(N1 - 1, j2)));
        }
        for (int j1 = 0; j1 < N1; ++j1) {
            m = std::max(m, std::abs((*this)(j1, N2 - 1)));
            if (tag == DomainTag::whole_plane) m = std::max(m, std::abs((*this)(j1, 0)));
        }
        return m;
    }

    // Riemann-sum L2 norm
    double l2_norm() const { return l2(values) * std::sqrt(grid.gx1.dx * grid.gx2.dx); }
};

inline HalfPlaneField sample_field(const Grid2D& g, DomainTag t,
                                   const std::function<cplx(double, double)>& fn,
                                   double truncation_tol = kDefaultTruncationTol) {
    cvec v(g.size());
    for (int j1 = 0; j1 < g.gx1.n; ++j1)
        for (int j2 = 0; j2 < g.gx2.n; ++j2) v[j1 * g.gx2.n + j2] = fn(g.gx1.node(j1), g.gx2.node(j2));
    return HalfPlaneField(g, std::move(v), t, truncation_tol);
}

class BoundaryTrace {
public:
    Grid1D gx1;
    Grid1D gt;
    cvec values;

    BoundaryTrace() = default;
    BoundaryTrace(Grid1D x1, Grid1D t, cvec v, double truncation_tol = kDefaultTruncationTol)
        : gx1(x1), gt(t), values(std::move(v)) {
        if (static_cast<int>(values.size()) != gx1.n * gt.n)
            throw ConfigError("BoundaryTrace: values size does not match grids");
        if (std::abs(gt.x0) > 1e-12) throw ConfigError("BoundaryTrace: time grid must start at 0");
        if (truncation_tol < kUnchecked) {
            double m = edge_max();
            if (m >= truncation_tol) {
                std::ostringstream os;
                os << "trace not decayed at x1 truncation edges: max |g| = " << m;
                throw DomainError(os.str());
            }
        }
    }

    static BoundaryTrace zeros(const Grid1D& x1, const Grid1D& t) {
        return BoundaryTrace(x1, t, cvec(x1.n * t.n), kUnchecked);
    }

    int index(int j1, int jt) const { return j1 * gt.n + jt; }
    cplx& operator()(int j1, int jt) { return values[index(j1, jt)]; }
    const cplx& operator()(int j1, int jt) const { return values[index(j1, jt)]; }
    double T() const { return gt.last(); }

    double edge_max() const {
        double m = 0;
        for (int jt = 0; jt < gt.n; ++jt)
            m = std::max({m, std::abs((*this)(0, jt)), std::abs((*this)(gx1.n - 1, jt))});
        return m;
    }

    cvec time_slice(int jt) const {
        cvec s(gx1.n);
        for (int j1 = 0; j1 < gx1.n; ++j1) s[j1] = (*this)(j1, jt);
        return s;
    }

    // restriction to the first nt time nodes
    BoundaryTrace head(int nt) const {
        if (nt < 2 || nt > gt.n) throw ConfigError("BoundaryTrace::head: bad node count");
        BoundaryTrace r = zeros(gx1, Grid1D(nt, 0.0, gt.dx));
        for (int j1 = 0; j1 < gx1.n; ++j1)
            for (int jt = 0; jt < nt; ++jt) r(j1, jt) = (*this)(j1, jt);
        return r;
    }
};

inline BoundaryTrace sample_trace(const Grid1D& gx1, const Grid1D& gt,
                                  const std::function<cplx(double, double)>& fn,
                                  double truncation_tol = kDefaultTruncationTol) {
    cvec v(gx1.n * gt.n);
    for (int j1 = 0; j1 < gx1.n; ++j1)
        for (int jt = 0; jt < gt.n; ++jt) v[j1 * gt.n + jt] = fn(gx1.node(j1), gt.node(jt));
    return BoundaryTrace(gx1, gt, std::move(v), truncation_tol);
}

struct TimeSeriesField {
    Grid1D gt;
    std::vector<HalfPlaneField> slices;

    TimeSeriesField() = default;
    TimeSeriesField(Grid1D t, std::vector<HalfPlaneField> s) : gt(t), slices(std::move(s)) {
        if (static_cast<int>(slices.size()) != gt.n)
            throw ConfigError("TimeSeriesField: slice count must equal gt.n");
        for (const auto& f : slices)
            if (!(f.grid == slices.front().grid))
                throw ConfigError("TimeSeriesField: slices must share one grid");
    }
    const Grid2D& grid() const { return slices.front().grid; }
    int nt() const { return gt.n; }
};

inline HalfPlaneField restrict_to_half_plane(const HalfPlaneField& f) {
    if (f.tag != DomainTag::whole_plane)
        throw ConfigError("restrict_to_half_plane: expected a whole-plane field");
    const Grid1D& g2 = f.grid.gx2;
    int j0 = g2.n / 2;
    int n2h = g2.n - j0;
    Grid2D hg{f.grid.gx1, Grid1D(n2h, 0.0, g2.dx)};
    cvec v(hg.size());
    for (int j1 = 0; j1 < f.n1(); ++j1)
        for (int j2 = 0; j2 < n2h; ++j2) v[j1 * n2h + j2] = f(j1, j0 + j2);
    return HalfPlaneField(hg, std::move(v), DomainTag::half_plane, kUnchecked);
}

inline cvec dirichlet_trace(const HalfPlaneField& f) {
    if (f.tag != DomainTag::half_plane) throw ConfigError("dirichlet_trace: expected a half-plane field");
    cvec s(f.n1());
    for (int j1 = 0; j1 < f.n1(); ++j1) s[j1] = f(j1, 0);
    return s;
}

// One-sided fourth-order derivative at x2 = 0.
inline cvec neumann_trace(const HalfPlaneField& f) {
    if (f.tag != DomainTag::half_plane) throw ConfigError("neumann_trace: expected a half-plane field");
    if (f.n2() < 5) throw ConfigError("neumann_trace: need at least 5 nodes in x2");
    double h = f.grid.gx2.dx;
    cvec s(f.n1());
    for (int j1 = 0; j1 < f.n1(); ++j1)
        s[j1] = (-25.0 * f(j1, 0) + 48.0 * f(j1, 1) - 36.0 * f(j1, 2) + 16.0 * f(j1, 3) -
                 3.0 * f(j1, 4)) /
                (12.0 * h);
    return s;
}

inline BoundaryTrace trace_on_boundary(const TimeSeriesField& series) {
    const Grid2D& g = series.grid();
    BoundaryTrace tr = BoundaryTrace::zeros(g.gx1, series.gt);
    for (int jt = 0; jt < series.nt(); ++jt) {
        cvec s = dirichlet_trace(series.slices[jt]);
        for (int j1 = 0; j1 < g.gx1.n; ++j1) tr(j1, jt) = s[j1];
    }
    return tr;
}

inline BoundaryTrace neumann_trace_series(const TimeSeriesField& series) {
    const Grid2D& g = series.grid();
    BoundaryTrace tr = BoundaryTrace::zeros(g.gx1, series.gt);
    for (int jt = 0; jt < series.nt(); ++jt) {
        cvec s = neumann_trace(series.slices[jt]);
        for (int j1 = 0; j1 < g.gx1.n; ++j1) tr(j1, jt) = s[j1];
    }
    return tr;
}

}  // namespace halfplane
