#pragma once

// Extensions: Hestenes reflection across x2 = 0, and the compactly supported time
// extension of a modulated boundary datum.

#include "transforms.hpp"

namespace halfplane {

// Smooth cutoff: 1 on [-1,1], 0 outside (-2,2), exp-type transition in between.
inline double theta(double t) {
    double a = std::abs(t);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    double s = a - 1.0;
    double p = std::exp(-1.0 / (1.0 - s));
    double q = std::exp(-1.0 / s);
    return p / (p + q);
}

// F(x1,-x2) = 3 f(x1,x2) - 2 f(x1,2 x2). The reflected points land on grid nodes, so no
// interpolation is needed; samples beyond the box are taken as zero.
inline HalfPlaneField hestenes_extend(const HalfPlaneField& f) {
    if (f.tag != DomainTag::half_plane) throw ConfigError("hestenes_extend: expected a half-plane field");
    Grid2D wg = whole_plane_companion(f.grid);
    int n1 = f.n1(), n2 = f.n2(), n2w = wg.gx2.n;
    cvec v(wg.size());
    for (int j1 = 0; j1 < n1; ++j1) {
        cplx* row = v.data() + static_cast<size_t>(j1) * n2w;
        for (int j2 = 0; j2 < n2; ++j2) row[n2 + j2] = f(j1, j2);
        for (int j = 1; j <= n2; ++j) {
            cplx a = j < n2 ? f(j1, j) : 0.0;
            cplx b = 2 * j < n2 ? f(j1, 2 * j) : 0.0;
            row[n2 - j] = 3.0 * a - 2.0 * b;
        }
    }
    return HalfPlaneField(wg, std::move(v), DomainTag::whole_plane, kUnchecked);
}

inline TimeSeriesField hestenes_extend_forcing(const TimeSeriesField& f) {
    std::vector<HalfPlaneField> s;
    s.reserve(f.slices.size());
    for (const auto& sl : f.slices) s.push_back(hestenes_extend(sl));
    return TimeSeriesField(f.gt, std::move(s));
}

struct TimeExtension {
    Grid1D gt;   // [0, 2] with the input spacing
    cvec values; // rows of length gt.n, one per input row
};

// Extend rows q0(., t), t in [0,T], to [0,2]: q = q0 on [0,T]; on (T, 1.5T) the time
// reflection 3 q0(2T - t) - 2 q0(3T - 2t) tapered by theta(1 + (t - T)/(T/2)), times theta(t);
// zero afterwards. T must be a grid node; T <= 1 keeps theta = 1 on [0,T].
inline TimeExtension extend_time_trace(const cvec& q0, int rows, const Grid1D& gt, double compat_tol = 1e-8) {
    int nt = gt.n;
    double T = gt.last(), dt = gt.dx;
    if (T > 1.0 + 1e-12) throw ConfigError("extend_time_trace: T must not exceed 1");
    if (static_cast<int>(q0.size()) != rows * nt) throw ConfigError("extend_time_trace: size mismatch");
    double scale = max_abs(q0);
    for (int r = 0; r < rows; ++r)
        if (std::abs(q0[static_cast<size_t>(r) * nt]) > compat_tol * std::max(scale, 1e-300))
            throw DomainError("extend_time_trace: q0(k1, 0) != 0 (compatibility violated)");
    int nt2 = static_cast<int>(std::floor(2.0 / dt + 1e-9)) + 1;
    TimeExtension out{Grid1D(nt2, 0.0, dt), cvec(static_cast<size_t>(rows) * nt2)};
    int jT = nt - 1;
    double delta = 0.5 * T;
    for (int jt = jT + 1; jt < nt2; ++jt) {
        double t = jt * dt;
        if (t >= T + delta - 1e-12) break;
        double w = theta(1.0 + (t - T) / delta) * theta(t);
        int ia = 2 * jT - jt;          // 2T - t
        int ib = 3 * jT - 2 * jt;      // 3T - 2t
        for (int r = 0; r < rows; ++r) {
            const cplx* src = q0.data() + static_cast<size_t>(r) * nt;
            out.values[static_cast<size_t>(r) * nt2 + jt] = w * (3.0 * src[ia] - 2.0 * src[ib]);
        }
    }
    for (int r = 0; r < rows; ++r)
        for (int jt = 0; jt < nt; ++jt)
            out.values[static_cast<size_t>(r) * nt2 + jt] = q0[static_cast<size_t>(r) * nt + jt];
    return out;
}

// Modulated lift: q(k1,t) on [0,2] from Q0 on [0,T]; g^{x1} = e^{-i k1^2 t} q.
inline SpectralTrace lift_modulated(const BoundaryTrace& Q0, int npad, double compat_tol = 1e-8) {
    SpectralTrace G = ft_x1(Q0, npad);
    int nk = G.gk1.n, nt = G.gt.n;
    for (int p = 0; p < nk; ++p) {
        double k2 = sqr(G.gk1.node(p));
        for (int jt = 0; jt < nt; ++jt) G(p, jt) *= std::exp(I * k2 * G.gt.node(jt));
    }
    TimeExtension E = extend_time_trace(G.values, nk, G.gt, compat_tol);
    return {G.gk1, E.gt, std::move(E.values)};
}

inline SpectralTrace demodulate(SpectralTrace q) {
    for (int p = 0; p < q.gk1.n; ++p) {
        double k2 = sqr(q.gk1.node(p));
        for (int jt = 0; jt < q.gt.n; ++jt) q(p, jt) *= std::exp(-I * k2 * q.gt.node(jt));
    }
    return q;
}

// Boundary datum on [0,2] whose restriction to [0,T] is Q0 (up to the padded x1 transform).
inline BoundaryTrace lift_boundary_datum(const BoundaryTrace& Q0, int npad = 0, double compat_tol = 1e-8) {
    SpectralTrace q = lift_modulated(Q0, npad > 0 ? npad : 2 * Q0.gx1.n, compat_tol);
    return ift_x1(demodulate(std::move(q)), Q0.gx1);
}

}  // namespace halfplane
