#pragma once

// Picard iteration for i u_t + Lap u = sign |u|^{p-1} u on the half-plane, with the
// lifespan rule T* = min{T, c_sp ||(u0,g0)||_D^{-2(p-1)}}, c_sp = (2^{2p} c_p^2 c_s^{2p})^{-1}.

#include "ibvp.hpp"

namespace halfplane {

enum class LinearPath { superposition, direct };

struct NlsConfig {
    int p = 3;
    double sign = 1;
    double s = 1.25;
    double T = 0.5;
    double c_s = 1;
    double c_p = 0;            // 0 means 2^{p-1}
    int max_iter = 30;
    double fixpoint_tol = 1e-10;
    LinearPath path = LinearPath::superposition;
    UtmConfig utm;

    double cp() const { return c_p > 0 ? c_p : std::pow(2.0, p - 1); }
    double c_sp() const { return 1.0 / (std::pow(2.0, 2 * p) * sqr(cp()) * std::pow(c_s, 2 * p)); }

    void validate() const {
        if (p < 3 || p % 2 == 0) throw ConfigError("NlsConfig: p must be odd and >= 3");
        if (sign != 1 && sign != -1) throw ConfigError("NlsConfig: sign must be +1 or -1");
        if (s <= 1 || s > 1.5) throw ConfigError("NlsConfig: s must lie in (1, 3/2]");
        if (!(T > 0) || T >= 1) throw ConfigError("NlsConfig: T must lie in (0, 1)");
        if (!(c_s > 0) || c_p < 0 || (c_p > 0 && c_p <= 1)) throw ConfigError("NlsConfig: need c_s > 0, c_p > 1");
        if (max_iter < 1 || !(fixpoint_tol > 0)) throw ConfigError("NlsConfig: bad iteration controls");
        utm.validate();
    }
};

// ||(u0, g0)||_D = ||u0||_{H^s(half-plane)} + ||g0||_{B^s_T}
inline double data_norm(const HalfPlaneField& u0, const BoundaryTrace& g0, double s, double T) {
    double a = hs_half_plane_extension(u0, s);
    double b = max_abs(g0.values) > 0 ? bst_norm(g0, s, T).value : 0.0;
    return a + b;
}

inline double lifespan_from_norm(double D, const NlsConfig& cfg) {
    if (!(D > 0)) return cfg.T;
    return std::min(cfg.T, cfg.c_sp() * std::pow(D, -2.0 * (cfg.p - 1)));
}

inline double lifespan(const HalfPlaneField& u0, const BoundaryTrace& g0, const NlsConfig& cfg) {
    int jT = g0.gt.index_of(cfg.T);
    if (jT < 0) throw ConfigError("lifespan: T must be a node of g0's time grid");
    return lifespan_from_norm(data_norm(u0, g0, cfg.s, cfg.T), cfg);
}

// sign (u conj u)^{(p-1)/2} u, pointwise
inline cplx nonlinearity(cplx u, int p, double sign) {
    return sign * std::pow(std::norm(u), (p - 1) / 2) * u;
}

inline TimeSeriesField nonlinear_forcing(const TimeSeriesField& u, int p, double sign) {
    std::vector<HalfPlaneField> s;
    s.reserve(u.slices.size());
    for (const auto& sl : u.slices) {
        cvec v(sl.values.size());
        for (size_t k = 0; k < v.size(); ++k) v[k] = nonlinearity(sl.values[k], p, sign);
        s.emplace_back(sl.grid, std::move(v), sl.tag, kUnchecked);
    }
    return TimeSeriesField(u.gt, std::move(s));
}

inline TimeSeriesField linear_solve(const HalfPlaneField& u0, const BoundaryTrace& g0, const TimeSeriesField* f,
                                    const NlsConfig& cfg) {
    if (cfg.path == LinearPath::direct) return solve_utm_direct(u0, g0, f, g0.gt, cfg.utm);
    return solve_by_superposition(u0, g0, f, g0.gt, cfg.utm);
}

// Phi u = S[u0, g0; sign |u|^{p-1} u] on g0's time grid
inline TimeSeriesField apply_iteration_map(const TimeSeriesField& u, const HalfPlaneField& u0,
                                           const BoundaryTrace& g0, const NlsConfig& cfg) {
    if (!(u.gt == g0.gt)) throw ConfigError("apply_iteration_map: iterate must live on g0's time grid");
    TimeSeriesField f = nonlinear_forcing(u, cfg.p, cfg.sign);
    return linear_solve(u0, g0, &f, cfg);
}

inline double sup_hs_diff(const TimeSeriesField& a, const TimeSeriesField& b, double s) {
    double m = 0;
    for (size_t j = 0; j < a.slices.size(); ++j) {
        cvec d = a.slices[j].values;
        for (size_t k = 0; k < d.size(); ++k) d[k] -= b.slices[j].values[k];
        HalfPlaneField df(a.slices[j].grid, std::move(d), a.slices[j].tag, kUnchecked);
        m = std::max(m, hs_half_plane_extension(df, s));
    }
    return m;
}

struct NlsIterate {
    int iter = 0;
    double delta = 0;  // sup_t ||u^{n+1} - u^n||_{H^s}
    double rho = 0;    // delta_n / delta_{n-1}; 0 for the first record
};

struct NlsResult {
    TimeSeriesField u;
    TimeSeriesField linear;
    std::vector<NlsIterate> history;
    double T_star = 0;
    double data_norm = 0;
    double residual = 0;  // sup_t ||Phi u - u||_{H^s} for the returned u

    static std::string csv_header() { return "iter,delta_norm,rho"; }
};

// Restriction of g0 to the largest grid node not exceeding T*.
inline BoundaryTrace truncate_to(const BoundaryTrace& g0, double Tstar) {
    int nt = static_cast<int>(std::floor(Tstar / g0.gt.dx + 1e-9)) + 1;
    nt = std::min(nt, g0.gt.n);
    if (nt < 3)
        throw NumericalError("lifespan T* = " + std::to_string(Tstar) + " is shorter than two time steps");
    return g0.head(nt);
}

inline NlsResult solve_nls(const HalfPlaneField& u0, const BoundaryTrace& g0, const NlsConfig& cfg) {
    cfg.validate();
    NlsResult R;
    int jT = g0.gt.index_of(cfg.T);
    if (jT < 0) throw ConfigError("solve_nls: T must be a node of g0's time grid");
    BoundaryTrace gT = g0.head(jT + 1);
    R.data_norm = data_norm(u0, gT, cfg.s, cfg.T);
    R.T_star = lifespan_from_norm(R.data_norm, cfg);
    BoundaryTrace g = truncate_to(gT, R.T_star);

    R.linear = linear_solve(u0, g, nullptr, cfg);
    TimeSeriesField u = R.linear;
    double prev = 0;
    int growing = 0;
    for (int n = 1; n <= cfg.max_iter; ++n) {
        TimeSeriesField next = apply_iteration_map(u, u0, g, cfg);
        double delta = sup_hs_diff(next, u, cfg.s);
        double rho = n > 1 && prev > 0 ? delta / prev : 0.0;
        R.history.push_back({n, delta, rho});
        u = std::move(next);
        if (delta < cfg.fixpoint_tol) {
            R.u = std::move(u);
            R.residual = sup_hs_diff(apply_iteration_map(R.u, u0, g, cfg), R.u, cfg.s);
            return R;
        }
        growing = rho >= 1 ? growing + 1 : 0;
        if (growing >= 2)
            throw NumericalError("solve_nls: iteration is not contracting (rho = " + std::to_string(rho) +
                                 "); shrink T* via smaller T or larger c_s/c_p");
        prev = delta;
    }
    throw NumericalError("solve_nls: max_iter reached with delta = " + std::to_string(R.history.back().delta));
}

struct LipschitzReport {
    double T_c = 0;
    double r = 0, varrho = 0;
    double lhs = 0;   // sup_t ||u - w||_{H^s} on [0, T_c]
    double rhs = 0;   // ||(u0 - w0, g0 - h0)||_D
    double ratio = 0;
    bool identical = false;
};

// Both problems are solved on the common lifespan T_c = min{T, c_sp (r + varrho)^{-2(p-1)}},
// with r = ||(u0,g0)||_D and varrho = ||(u0-w0, g0-h0)||_D.
inline LipschitzReport lipschitz_probe(const HalfPlaneField& u0, const BoundaryTrace& g0, const HalfPlaneField& w0,
                                       const BoundaryTrace& h0, const NlsConfig& cfg) {
    cfg.validate();
    if (!(g0.gt == h0.gt) || !(u0.grid == w0.grid)) throw ConfigError("lipschitz_probe: data grids differ");
    int jT = g0.gt.index_of(cfg.T);
    if (jT < 0) throw ConfigError("lipschitz_probe: T must be a node of the time grid");
    BoundaryTrace gT = g0.head(jT + 1), hT = h0.head(jT + 1);
    HalfPlaneField du = u0;
    for (size_t k = 0; k < du.values.size(); ++k) du.values[k] -= w0.values[k];
    BoundaryTrace dg = gT;
    for (size_t k = 0; k < dg.values.size(); ++k) dg.values[k] -= hT.values[k];

    LipschitzReport L;
    L.r = data_norm(u0, gT, cfg.s, cfg.T);
    L.varrho = data_norm(du, dg, cfg.s, cfg.T);
    L.rhs = L.varrho;
    L.T_c = lifespan_from_norm(L.r + L.varrho, cfg);
    if (max_abs(du.values) == 0 && max_abs(dg.values) == 0) {
        L.identical = true;
        return L;
    }
    NlsConfig c = cfg;
    BoundaryTrace gc = truncate_to(gT, L.T_c), hc = truncate_to(hT, L.T_c);
    c.T = gc.T();
    NlsResult a = solve_nls(u0, gc, c), b = solve_nls(w0, hc, c);
    if (a.u.nt() != b.u.nt()) throw NumericalError("lipschitz_probe: lifespans differ on the common window");
    L.lhs = sup_hs_diff(a.u, b.u, cfg.s);
    L.ratio = L.lhs / L.rhs;
    return L;
}

}  // namespace halfplane
