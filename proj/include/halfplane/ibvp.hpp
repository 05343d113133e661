#pragma once

// Half-plane IBVP solvers: the pure IBVP formula, the direct five-term formula, the
// four-problem superposition, and the global relation.
//
// All contour terms share one evaluator: for a coefficient C_n(k1) on the contour nodes,
//   v(x1,x2,t) = (2 pi)^{-2} int dk1 sum_n w_n e^{i k1 x1 + i k2n x2 - i (k1^2 + k2n^2) t} C_n(k1).

#include "linear_ivp.hpp"

#include <Eigen/Dense>
#include <optional>

namespace halfplane {

struct UtmConfig {
    double K_max = 0;          // 0: Nyquist of the x2 grid
    int n_k1 = 256;            // padded x1 transform length
    int n_contour = 512;
    double imag_fraction = 0.375;
    int panel = 32;
    int x2_pad = 2;            // whole-plane work grids span 2 * x2_pad * n2 rows
    double truncation_tol = kDefaultTruncationTol;
    double compat_tol = 1e-6;  // relative, for u0(x1,0) = g0(x1,0) and the lifted data
    bool check_contour = false;
    double contour_tol = 1e-2;

    void validate() const {
        if (K_max < 0 || n_k1 <= 0 || n_contour < 8 || panel <= 0 || !(truncation_tol > 0) || !(compat_tol > 0))
            throw ConfigError("UtmConfig: all sizes and tolerances must be positive");
        if (n_contour % 2) throw ConfigError("UtmConfig: n_contour must be even");
        if (imag_fraction <= 0 || imag_fraction >= 1) throw ConfigError("UtmConfig: imag_fraction in (0,1)");
        if (x2_pad < 1) throw ConfigError("UtmConfig: x2_pad must be >= 1");
    }
};

namespace detail {

using CMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Filon weights for int_0^{(n-1)h} e^{i w t} f(t) dt, one row per frequency
inline CMat filon_rows(const std::vector<cplx>& omegas, double h, int n) {
    CMat W(static_cast<long>(omegas.size()), n);
#pragma omp parallel for schedule(static)
    for (long r = 0; r < static_cast<long>(omegas.size()); ++r) {
        cvec w = quad::Filon(omegas[r], 0.0, h, n).weights();
        for (int j = 0; j < n; ++j) W(r, j) = w[j];
    }
    return W;
}

// h e^{i k x_j} for x_j on a grid starting at 0: the DFT-consistent half-line transform
inline CMat riemann_rows(const std::vector<cplx>& ks, const Grid1D& g) {
    CMat W(static_cast<long>(ks.size()), g.n);
    for (long r = 0; r < W.rows(); ++r)
        for (int j = 0; j < g.n; ++j) W(r, j) = g.dx * std::exp(I * ks[r] * g.node(j));
    return W;
}

inline Eigen::Map<const CMat> as_mat(const cvec& v, long rows, long cols) {
    return Eigen::Map<const CMat>(v.data(), rows, cols);
}

}  // namespace detail

class ContourEvaluator {
public:
    ContourEvaluator(const Grid2D& half, const UtmConfig& cfg)
        : grid_(half), X_(half.gx1, cfg.n_k1) {
        cfg.validate();
        double K = cfg.K_max > 0 ? cfg.K_max : pi / half.gx2.dx;
        nodes_ = build_contour(K, cfg.n_contour, cfg.imag_fraction, cfg.panel);
        int nc = static_cast<int>(nodes_.size()), n2 = half.gx2.n;
        E_.resize(nc, n2);
        for (int n = 0; n < nc; ++n)
            for (int j = 0; j < n2; ++j) E_(n, j) = std::exp(I * nodes_[n].k2 * half.gx2.node(j));
    }

    const std::vector<ContourNode>& nodes() const { return nodes_; }
    const X1Transform& x1() const { return X_; }
    const Grid2D& grid() const { return grid_; }
    int nk() const { return X_.npad(); }

    std::vector<cplx> k2_values() const {
        std::vector<cplx> k(nodes_.size());
        for (size_t n = 0; n < nodes_.size(); ++n) k[n] = nodes_[n].k2;
        return k;
    }

    // C is (n_contour x nk); `branch` restricts the sum to one branch when set
    HalfPlaneField evaluate(const detail::CMat& C, double t, std::optional<Branch> branch = {}) const {
        int nc = static_cast<int>(nodes_.size()), nk = X_.npad(), n2 = grid_.gx2.n;
        detail::CMat Ct(nc, nk);
        for (int n = 0; n < nc; ++n) {
            cplx w = 0;
            if (!branch || nodes_[n].branch == *branch)
                w = nodes_[n].weight * std::exp(-I * nodes_[n].k2 * nodes_[n].k2 * t) / (2 * pi);
            Ct.row(n) = w * C.row(n);
        }
        detail::CMat V = Ct.transpose() * E_;  // nk x n2
        const Grid1D& gk = X_.k1_grid();
        for (int p = 0; p < nk; ++p) V.row(p) *= std::exp(-I * sqr(gk.node(p)) * t);
        cvec vals(V.data(), V.data() + V.size());
        return HalfPlaneField(grid_, X_.inverse(vals, n2), DomainTag::half_plane, kUnchecked);
    }

private:
    Grid2D grid_;
    X1Transform X_;
    std::vector<ContourNode> nodes_;
    detail::CMat E_;
};

namespace detail {

// A_n(k1) = int_0^{t_end} e^{i k2n^2 t} q(k1, t) dt for q stored (k1 outer, t inner)
inline CMat time_coefficients(const ContourEvaluator& ev, const cvec& q, const Grid1D& gt) {
    auto k2 = ev.k2_values();
    std::vector<cplx> om(k2.size());
    for (size_t n = 0; n < k2.size(); ++n) om[n] = k2[n] * k2[n];
    CMat W = filon_rows(om, gt.dx, gt.n);
    return W * as_mat(q, ev.nk(), gt.n).transpose();
}

inline void scale_by_2k2(const ContourEvaluator& ev, CMat& C) {
    const auto& nodes = ev.nodes();
    for (long n = 0; n < C.rows(); ++n) C.row(n) *= 2.0 * nodes[n].k2;
}

inline std::vector<int> output_indices(const Grid1D& data_t, const Grid1D& times) {
    std::vector<int> idx(times.n);
    for (int j = 0; j < times.n; ++j) {
        idx[j] = data_t.index_of(times.node(j));
        if (idx[j] < 0) throw ConfigError("output times must be nodes of the data time grid");
    }
    return idx;
}

inline void check_compatibility(const HalfPlaneField& u0, const BoundaryTrace& g0, double tol) {
    double scale = std::max({max_abs(u0.values), max_abs(g0.values), 1e-300});
    for (int j1 = 0; j1 < u0.n1(); ++j1)
        if (std::abs(u0(j1, 0) - g0(j1, 0)) > tol * scale)
            throw DomainError("compatibility u0(x1,0) = g0(x1,0) violated");
}

inline void check_inputs(const HalfPlaneField& u0, const BoundaryTrace& g0, const TimeSeriesField* f) {
    if (u0.tag != DomainTag::half_plane) throw ConfigError("u0 must be a half-plane field");
    if (!(g0.gx1 == u0.grid.gx1)) throw ConfigError("g0 and u0 must share the x1 grid");
    if (f) {
        if (!(f->gt == g0.gt)) throw ConfigError("forcing must be sampled on the boundary data's time grid");
        if (!(f->grid() == u0.grid)) throw ConfigError("forcing must live on the u0 grid");
    }
}

// Whole-plane grid with 2 * pad * n2 rows in x2; the half-plane rows start at pad * n2.
inline Grid2D padded_companion(const Grid2D& half, int pad) {
    return {half.gx1, Grid1D::symmetric_grid(2 * pad * half.gx2.n, half.gx2.dx)};
}

// place a whole-plane field (rows symmetric about x2 = 0) into a taller symmetric grid
inline HalfPlaneField embed(const HalfPlaneField& F, const Grid2D& big) {
    int m = F.n2(), M = big.gx2.n, off = M / 2 - m / 2;
    cvec v(big.size());
    for (int j1 = 0; j1 < F.n1(); ++j1)
        for (int j2 = 0; j2 < m; ++j2) v[static_cast<size_t>(j1) * M + off + j2] = F(j1, j2);
    return HalfPlaneField(big, std::move(v), DomainTag::whole_plane, kUnchecked);
}

// zero extension of a half-plane field to the padded companion grid
inline HalfPlaneField zero_extend(const HalfPlaneField& f, int pad = 1) {
    Grid2D wg = padded_companion(f.grid, pad);
    int n2 = f.n2(), M = wg.gx2.n;
    cvec v(wg.size());
    for (int j1 = 0; j1 < f.n1(); ++j1)
        for (int j2 = 0; j2 < n2; ++j2) v[static_cast<size_t>(j1) * M + M / 2 + j2] = f(j1, j2);
    return HalfPlaneField(wg, std::move(v), DomainTag::whole_plane, kUnchecked);
}

// rows x2 = 0 .. (n2-1) dx2 of a whole-plane field
inline HalfPlaneField restrict_to(const HalfPlaneField& F, const Grid2D& half) {
    int M = F.n2(), n2 = half.gx2.n, j0 = M / 2;
    cvec v(half.size());
    for (int j1 = 0; j1 < half.gx1.n; ++j1)
        for (int j2 = 0; j2 < n2; ++j2) v[static_cast<size_t>(j1) * n2 + j2] = F(j1, j0 + j2);
    return HalfPlaneField(half, std::move(v), DomainTag::half_plane, kUnchecked);
}

inline HalfPlaneField add(HalfPlaneField a, const HalfPlaneField& b, cplx scale = 1.0) {
    for (size_t i = 0; i < a.values.size(); ++i) a.values[i] += scale * b.values[i];
    return a;
}

// Running int_0^{t_j} e^{i w t'} F(t') dt' for many frequencies with the cubic Filon rule
// of the full grid [0, t_j]; only the last four samples are kept.
class CumulativeFilon {
public:
    CumulativeFilon(std::vector<double> omega, double h) : om_(std::move(omega)), h_(h) {
        size_t m = om_.size();
        sum_.assign(m, 0.0);
        lw_first_.resize(m);
        lw_int_.resize(m);
        lw_last_.resize(m);
        step_.resize(m);
        auto b0 = quad::lagrange_basis(0, 3), b1 = quad::lagrange_basis(-1, 3), b2 = quad::lagrange_basis(-2, 3);
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(m); ++i) {
            auto E = quad::exp_moments(I * om_[i] * h_);
            lw_first_[i] = local(b0, E);
            lw_int_[i] = local(b1, E);
            lw_last_[i] = local(b2, E);
            step_[i] = std::exp(I * om_[i] * h_);
        }
    }

    // push the sample at t_j; returns the integral up to t_j
    const cvec& push(const cvec& F) {
        size_t m = om_.size();
        hist_.push_back(F);
        if (hist_.size() > 4) hist_.erase(hist_.begin());
        int j = j_++;
        out_.assign(m, 0.0);
        if (j == 0) return out_;
        if (j <= 2) {
            // short grids: Filon of degree j on all nodes
            int n = j + 1;
#pragma omp parallel for schedule(static)
            for (long i = 0; i < static_cast<long>(m); ++i) {
                quad::Filon fl(om_[i], 0.0, h_, n);
                cvec w = fl.weights();
                cplx s = 0;
                for (int k = 0; k < n; ++k) s += w[k] * hist_[k][i];
                out_[i] = s;
            }
            return out_;
        }
        // nodes j-3..j are hist_[0..3]
        const cvec &f0 = hist_[0], &f1 = hist_[1], &f2 = hist_[2], &f3 = hist_[3];
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(m); ++i) {
            cplx e0 = phase(i, j - 3);  // e^{i w t_{j-3}} h
            auto dot = [&](const std::array<cplx, 4>& w) {
                return w[0] * f0[i] + w[1] * f1[i] + w[2] * f2[i] + w[3] * f3[i];
            };
            if (j == 3) sum_[i] += e0 * dot(lw_first_[i]);  // interval 0 on nodes 0..3
            // interval j-2 on nodes j-3..j (interior stencil)
            sum_[i] += e0 * step_[i] * dot(lw_int_[i]);
            // last interval j-1 on nodes j-3..j
            out_[i] = sum_[i] + e0 * step_[i] * step_[i] * dot(lw_last_[i]);
        }
        return out_;
    }

private:
    cplx phase(long i, int j) const { return std::exp(I * (om_[i] * j * h_)) * h_; }

    static std::array<cplx, 4> local(const quad::LagrangeBasis& b, const std::array<cplx, 4>& E) {
        std::array<cplx, 4> lw{};
        for (int s = 0; s < 4; ++s)
            for (int mm = 0; mm < 4; ++mm) lw[s] += b.coef[s][mm] * E[mm];
        return lw;
    }

    std::vector<double> om_;
    double h_;
    int j_ = 0;
    cvec sum_, out_;
    std::vector<std::array<cplx, 4>> lw_first_, lw_int_, lw_last_;
    cvec step_;
    std::vector<cvec> hist_;
};

}  // namespace detail

// Pure IBVP with boundary datum supported in R x (0,2), evaluated on `eval_grid` at `times`.
inline TimeSeriesField solve_pure_ibvp(const BoundaryTrace& g, const Grid2D& eval_grid, const Grid1D& times,
                                       const UtmConfig& cfg) {
    double scale = std::max(max_abs(g.values), 1e-300);
    if (g.T() > 2 + 1e-9) throw DomainError("solve_pure_ibvp: boundary datum extends past t = 2");
    for (int j1 = 0; j1 < g.gx1.n; ++j1)
        if (std::abs(g(j1, 0)) > cfg.compat_tol * scale || std::abs(g(j1, g.gt.n - 1)) > cfg.compat_tol * scale)
            throw DomainError("solve_pure_ibvp: boundary datum is not supported in (0,2)");
    if (!(eval_grid.gx1 == g.gx1)) throw ConfigError("solve_pure_ibvp: eval grid must share the x1 grid");
    ContourEvaluator ev(eval_grid, cfg);
    SpectralTrace q = ft_x1(g, ev.nk());
    for (int p = 0; p < q.gk1.n; ++p)
        for (int jt = 0; jt < q.gt.n; ++jt) q(p, jt) *= std::exp(I * sqr(q.gk1.node(p)) * q.gt.node(jt));
    detail::CMat C = detail::time_coefficients(ev, q.values, q.gt);
    detail::scale_by_2k2(ev, C);
    std::vector<HalfPlaneField> out;
    for (int j = 0; j < times.n; ++j) out.push_back(ev.evaluate(C, times.node(j)));
    return TimeSeriesField(times, std::move(out));
}

// Imaginary-axis and real-axis parts of the pure IBVP solution at one time.
inline std::pair<HalfPlaneField, HalfPlaneField> pure_ibvp_split(const BoundaryTrace& g, const Grid2D& eval_grid,
                                                                 double t, const UtmConfig& cfg) {
    ContourEvaluator ev(eval_grid, cfg);
    SpectralTrace q = ft_x1(g, ev.nk());
    for (int p = 0; p < q.gk1.n; ++p)
        for (int jt = 0; jt < q.gt.n; ++jt) q(p, jt) *= std::exp(I * sqr(q.gk1.node(p)) * q.gt.node(jt));
    detail::CMat C = detail::time_coefficients(ev, q.values, q.gt);
    detail::scale_by_2k2(ev, C);
    return {ev.evaluate(C, t, Branch::imaginary_axis), ev.evaluate(C, t, Branch::real_axis)};
}

// Direct evaluation of the five-term formula. The boundary datum is continued smoothly past T
// (time reflection with a taper); the contour term over (t, T'] vanishes analytically for any
// T' >= t, and the smooth continuation removes the slowly decaying endpoint contribution.
inline TimeSeriesField solve_utm_direct(const HalfPlaneField& u0, const BoundaryTrace& g0, const TimeSeriesField* f,
                                        const Grid1D& times, const UtmConfig& cfg) {
    detail::check_inputs(u0, g0, f);
    detail::check_compatibility(u0, g0, cfg.compat_tol);
    auto out_idx = detail::output_indices(g0.gt, times);
    ContourEvaluator ev(u0.grid, cfg);
    const auto& X = ev.x1();
    int nk = ev.nk(), n2 = u0.n2(), nt = g0.gt.n;
    auto k2 = ev.k2_values();
    int nc = static_cast<int>(k2.size());

    // (ii): u0^(k1, -k2) = int_0^inf e^{i k2 x2} u0^{x1}(k1, x2) dx2, as the same Riemann sum
    // the whole-plane FFT of (i) uses. A cubic Filon rule here is more accurate for each
    // transform on its own, but its O(dx2^4) error does not cancel against (i).
    detail::CMat Wx = detail::riemann_rows(k2, u0.grid.gx2);
    cvec u0x = X.forward(u0.values, n2);
    detail::CMat Cfixed = -(Wx * detail::as_mat(u0x, nk, n2).transpose());

    // (v): 2 k2 int e^{i k2^2 t} e^{i k1^2 t} g0^{x1} dt over the continued datum
    SpectralTrace G = ft_x1(g0, nk);
    for (int p = 0; p < nk; ++p)
        for (int jt = 0; jt < nt; ++jt) G(p, jt) *= std::exp(I * sqr(G.gk1.node(p)) * G.gt.node(jt));
    TimeExtension ext = extend_time_trace(G.values, nk, g0.gt, kUnchecked);
    detail::CMat Cg = detail::time_coefficients(ev, ext.values, ext.gt);
    detail::scale_by_2k2(ev, Cg);
    Cfixed += Cg;

    // (i) and (iii) on the whole-plane companion grid
    HalfPlaneField u0z = detail::zero_extend(u0, cfg.x2_pad);
    std::optional<TimeSeriesField> Wf;
    if (f) {
        std::vector<HalfPlaneField> fz;
        fz.reserve(nt);
        for (const auto& s : f->slices) fz.push_back(detail::zero_extend(s, cfg.x2_pad));
        Wf = solve_ivp_forced(TimeSeriesField(g0.gt, std::move(fz)), g0.gt);
    }

    // (iv): +i int_0^t e^{i (k1^2 + k2^2) t'} f^(k1, -k2, t') dt'
    std::optional<detail::CumulativeFilon> cum;
    if (f) {
        std::vector<double> om(static_cast<size_t>(nc) * nk);
        const Grid1D& gk = X.k1_grid();
        for (int n = 0; n < nc; ++n)
            for (int p = 0; p < nk; ++p) om[static_cast<size_t>(n) * nk + p] = (sqr(gk.node(p)) + k2[n] * k2[n]).real();
        cum.emplace(std::move(om), g0.gt.dx);
    }

    std::vector<HalfPlaneField> out(times.n);
    std::vector<std::vector<int>> wanted(nt);
    for (int j = 0; j < times.n; ++j) wanted[out_idx[j]].push_back(j);
    for (int jt = 0; jt < nt; ++jt) {
        detail::CMat C = Cfixed;
        if (cum) {
            cvec fx = X.forward(f->slices[jt].values, n2);
            detail::CMat Fh = Wx * detail::as_mat(fx, nk, n2).transpose();  // nc x nk
            cvec flat(Fh.data(), Fh.data() + Fh.size());
            const cvec& D = cum->push(flat);
            C += I * detail::as_mat(D, nc, nk);
        }
        if (wanted[jt].empty()) continue;
        double t = g0.gt.node(jt);
        HalfPlaneField u = ev.evaluate(C, t);
        u = detail::add(std::move(u), detail::restrict_to(propagate(u0z, t), u0.grid));
        if (Wf) u = detail::add(std::move(u), detail::restrict_to(Wf->slices[jt], u0.grid));
        for (int j : wanted[jt]) out[j] = u;
    }
    return TimeSeriesField(times, std::move(out));
}

struct SuperpositionParts {
    TimeSeriesField ivp;        // S[U0;0] restricted
    TimeSeriesField forced;     // S[0;F] restricted (zeros without forcing)
    TimeSeriesField boundary;   // pure IBVP part
    BoundaryTrace Q0;           // reduced boundary datum on [0,T]
};

inline SuperpositionParts solve_superposition_parts(const HalfPlaneField& u0, const BoundaryTrace& g0,
                                                    const TimeSeriesField* f, const Grid1D& times,
                                                    const UtmConfig& cfg) {
    detail::check_inputs(u0, g0, f);
    detail::check_compatibility(u0, g0, cfg.compat_tol);
    auto out_idx = detail::output_indices(g0.gt, times);
    const Grid1D& gt = g0.gt;
    int n1 = u0.n1();

    Grid2D big = detail::padded_companion(u0.grid, cfg.x2_pad);
    HalfPlaneField U0 = detail::embed(hestenes_extend(u0), big);
    TimeSeriesField U = solve_ivp_homogeneous(U0, gt);
    BoundaryTrace Q0 = g0;
    BoundaryTrace Ut = whole_plane_trace(U);
    for (size_t i = 0; i < Q0.values.size(); ++i) Q0.values[i] -= Ut.values[i];

    std::optional<TimeSeriesField> W;
    if (f) {
        std::vector<HalfPlaneField> Fz;
        for (const auto& sl : f->slices) Fz.push_back(detail::embed(hestenes_extend(sl), big));
        W = solve_ivp_forced(TimeSeriesField(gt, std::move(Fz)), gt);
        BoundaryTrace Wt = whole_plane_trace(*W);
        for (size_t i = 0; i < Q0.values.size(); ++i) Q0.values[i] -= Wt.values[i];
    }

    ContourEvaluator ev(u0.grid, cfg);
    double scale = std::max({max_abs(g0.values), max_abs(Ut.values), 1e-300});
    for (int j1 = 0; j1 < n1; ++j1)
        if (std::abs(Q0(j1, 0)) > cfg.compat_tol * scale)
            throw DomainError("reduced boundary datum does not vanish at t = 0");
    // The lift only needs Q0(., 0) = 0 up to the compatibility tolerance; clear the residue.
    BoundaryTrace Qz = Q0;
    for (int j1 = 0; j1 < n1; ++j1) Qz(j1, 0) = 0;
    SpectralTrace q = lift_modulated(Qz, ev.nk(), kUnchecked);
    detail::CMat C = detail::time_coefficients(ev, q.values, q.gt);
    detail::scale_by_2k2(ev, C);

    std::vector<HalfPlaneField> a, b, c;
    for (int j = 0; j < times.n; ++j) {
        int jt = out_idx[j];
        a.push_back(detail::restrict_to(U.slices[jt], u0.grid));
        b.push_back(W ? detail::restrict_to(W->slices[jt], u0.grid) : HalfPlaneField::zeros(u0.grid, DomainTag::half_plane));
        c.push_back(ev.evaluate(C, times.node(j)));
    }
    return {TimeSeriesField(times, std::move(a)), TimeSeriesField(times, std::move(b)),
            TimeSeriesField(times, std::move(c)), std::move(Q0)};
}

inline TimeSeriesField solve_by_superposition(const HalfPlaneField& u0, const BoundaryTrace& g0,
                                              const TimeSeriesField* f, const Grid1D& times, const UtmConfig& cfg) {
    SuperpositionParts P = solve_superposition_parts(u0, g0, f, times, cfg);
    std::vector<HalfPlaneField> out;
    for (int j = 0; j < times.n; ++j)
        out.push_back(detail::add(detail::add(P.ivp.slices[j], P.forced.slices[j]), P.boundary.slices[j]));
    return TimeSeriesField(times, std::move(out));
}

// Relative change of the solution at the last output time when the contour node count doubles.
inline double contour_refinement_change(const HalfPlaneField& u0, const BoundaryTrace& g0, const TimeSeriesField* f,
                                        double t, UtmConfig cfg) {
    Grid1D tt(2, 0.0, t);
    auto a = solve_by_superposition(u0, g0, f, tt, cfg);
    cfg.n_contour *= 2;
    auto b = solve_by_superposition(u0, g0, f, tt, cfg);
    const auto &x = a.slices.back().values, &y = b.slices.back().values;
    cvec d(x.size());
    for (size_t i = 0; i < d.size(); ++i) d[i] = x[i] - y[i];
    return l2(d) / std::max(l2(y), 1e-300);
}

// Global relation:
//   e^{i w t} u^(k1,k2,t) = u0^(k1,k2) - i g1~ + k2 g0~ - i int_0^t e^{i w t'} f^(k1,k2,t') dt',
// w = k1^2 + k2^2, Im k2 <= 0. The reflected form (k2 -> -k2, Im k2 >= 0) reads
//   e^{i w t} u^(k1,-k2,t) = u0^(k1,-k2) - i g1~ - k2 g0~ - i int e^{i w t'} f^(k1,-k2,t') dt'.
struct GlobalRelationInput {
    const TimeSeriesField* solution;  // half-plane slices on the data time grid
    const HalfPlaneField* u0;
    const BoundaryTrace* g0;
    const TimeSeriesField* f = nullptr;
};

inline cplx global_relation_residual(const GlobalRelationInput& in, double k1, cplx k2, double t, bool reflected = false) {
    if (!reflected && k2.imag() > 1e-15) throw DomainError("global relation: Im k2 > 0 outside the analyticity region");
    if (reflected && k2.imag() < -1e-15) throw DomainError("reflected global relation: Im k2 < 0");
    const TimeSeriesField& S = *in.solution;
    int jt = S.gt.index_of(t);
    if (jt < 0) throw ConfigError("global relation: t must be a node of the solution time grid");
    cplx kk = reflected ? -k2 : k2;
    cplx w = k1 * k1 + k2 * k2;
    BoundaryTrace g1 = neumann_trace_series(S);
    cplx uh = ft_half_plane(S.slices[jt], k1, kk);
    cplx u0h = ft_half_plane(*in.u0, k1, kk);
    cplx g0t = time_transform(*in.g0, k1, w, t);
    cplx g1t = time_transform(g1, k1, w, t);
    cplx Ft = 0;
    if (in.f && t > 0) {
        cvec fh(S.gt.n);
        for (int j = 0; j < S.gt.n; ++j) fh[j] = ft_half_plane(in.f->slices[j], k1, kk);
        quad::Filon F(w, 0.0, S.gt.dx, S.gt.n);
        cvec wt = F.weights_upto(t);
        for (int j = 0; j < S.gt.n; ++j) Ft += wt[j] * fh[j];
    }
    cplx rhs = u0h - I * g1t + kk * g0t - I * Ft;
    return std::exp(I * w * t) * uh - rhs;
}

}  // namespace halfplane
