#pragma once

// Crank-Nicolson reference solver for i u_t + Lap u = f on a truncated half-plane box,
// 5-point Laplacian, u = g0 on x2 = 0 and u = 0 on the other three edges.
// The Dirichlet Laplacian is diagonal in the DST-I basis, so the implicit solve is a
// pointwise division there. Linear runs never leave coefficient space between outputs.

#include "fields.hpp"
#include "fft.hpp"

#include <functional>
#include <optional>

namespace halfplane {

using Fn2 = std::function<cplx(double, double)>;
using Fn3 = std::function<cplx(double, double, double)>;

// Free evolution of w^2-normalised Gaussian exp(-|x - c|^2 / w^2).
inline cplx gaussian_reference(double x1, double x2, double t, double c1, double c2, double w) {
    if (!(w > 0)) throw ConfigError("gaussian_reference: width must be positive");
    cplx sigma = w * w + 4.0 * I * t;
    double r2 = sqr(x1 - c1) + sqr(x2 - c2);
    return (w * w / sigma) * std::exp(-r2 / sigma);
}

struct CnSource {
    Fn2 space;                          // separable part space(x1,x2) * time(t)
    std::function<cplx(double)> time;
    Fn3 general;                        // anything else; costs one DST per step
    int p = 0;                          // p >= 3 adds sign |u|^{p-1} u
    double sign = 1;

    bool nonlinear() const { return p > 0; }
};

struct CnConfig {
    int refine = 1;           // fine spacing = box spacing / refine
    double dt = 0;            // largest fine step; 0 means times.dx / (4 refine)
    bool richardson = false;  // combine (refine, dt) with (2 refine, dt/2)
    double edge_tol = 1e-6;   // relative magnitude allowed next to the artificial edges
    int max_sweeps = 5;
    double sweep_tol = 1e-12;

    void validate() const {
        if (refine < 1) throw ConfigError("CnConfig: refine must be >= 1");
        if (dt < 0 || !(edge_tol > 0) || max_sweeps < 1) throw ConfigError("CnConfig: bad step or tolerance");
    }
};

namespace detail {

class CnRun {
public:
    CnRun(const Grid2D& box, int refine) : box_(box), r_(refine) {
        if (std::abs(box.gx2.x0) > 1e-12) throw ConfigError("crank_nicolson: box must start at x2 = 0");
        m1_ = box.gx1.n * r_ - 1;
        m2_ = box.gx2.n * r_ - 1;
        h1_ = box.gx1.dx / r_;
        h2_ = box.gx2.dx / r_;
        lam1_.resize(m1_);
        lam2_.resize(m2_);
        sin2_.resize(m2_);
        for (int p = 0; p < m1_; ++p) lam1_[p] = -4 / (h1_ * h1_) * sqr(std::sin(pi * (p + 1) / (2.0 * (m1_ + 1))));
        for (int q = 0; q < m2_; ++q) {
            lam2_[q] = -4 / (h2_ * h2_) * sqr(std::sin(pi * (q + 1) / (2.0 * (m2_ + 1))));
            sin2_[q] = std::sin(pi * (q + 1) / (m2_ + 1));
        }
        norm_ = 1.0 / (4.0 * (m1_ + 1) * (m2_ + 1));
    }

    double x1(int i) const { return box_.gx1.x0 + (i + 1) * h1_; }  // interior index i
    double x2(int i) const { return (i + 1) * h2_; }
    size_t size() const { return static_cast<size_t>(m1_) * m2_; }

    cvec sample(const Fn2& f) const {
        cvec v(size());
#pragma omp parallel for
        for (int i = 0; i < m1_; ++i)
            for (int j = 0; j < m2_; ++j) v[static_cast<size_t>(i) * m2_ + j] = f(x1(i), x2(j));
        return v;
    }

    void to_coeffs(cvec& v) const { fft::dst1_2d(v.data(), m1_, m2_); }
    void to_values(cvec& v) const {
        fft::dst1_2d(v.data(), m1_, m2_);
        for (auto& z : v) z *= norm_;
    }

    // DST of the boundary contribution g(x1, t) / h2^2, which lives on the first interior row
    cvec boundary_coeffs(const Fn2& g0, double t) const {
        cvec b(m1_);
        for (int i = 0; i < m1_; ++i) b[i] = g0(x1(i), t) / (h2_ * h2_);
        fft::dst1(b.data(), m1_);
        return b;
    }

    void add_boundary(cvec& a, const cvec& b, cplx scale) const {
#pragma omp parallel for
        for (int p = 0; p < m1_; ++p) {
            cplx bp = 2.0 * scale * b[p];
            cplx* row = a.data() + static_cast<size_t>(p) * m2_;
            for (int q = 0; q < m2_; ++q) row[q] += bp * sin2_[q];
        }
    }

    double lambda(size_t k) const { return lam1_[k / m2_] + lam2_[k % m2_]; }

    // coarse slice from interior values plus the boundary row
    HalfPlaneField coarse(const cvec& v, const Fn2& g0, double t) const {
        int n1 = box_.gx1.n, n2 = box_.gx2.n;
        cvec out(box_.size());
        for (int j1 = 0; j1 < n1; ++j1) {
            int i1 = j1 * r_ - 1;
            for (int j2 = 0; j2 < n2; ++j2) {
                cplx z;
                if (i1 < 0)
                    z = 0.0;
                else if (j2 == 0)
                    z = g0(box_.gx1.node(j1), t);
                else
                    z = v[static_cast<size_t>(i1) * m2_ + (j2 * r_ - 1)];
                out[static_cast<size_t>(j1) * n2 + j2] = z;
            }
        }
        return HalfPlaneField(box_, std::move(out), DomainTag::half_plane, kUnchecked);
    }

    void check_edges(const cvec& v, double tol, double t) const {
        double m = max_abs(v), e = 0;
        for (int j = 0; j < m2_; ++j)
            e = std::max({e, std::abs(v[j]), std::abs(v[static_cast<size_t>(m1_ - 1) * m2_ + j])});
        for (int i = 0; i < m1_; ++i) e = std::max(e, std::abs(v[static_cast<size_t>(i) * m2_ + m2_ - 1]));
        if (m > 0 && e > tol * m)
            throw NumericalError("crank_nicolson: solution reached the box edge at t = " + std::to_string(t) +
                                 " (relative edge magnitude " + std::to_string(e / m) + ")");
    }

private:
    Grid2D box_;
    int r_, m1_, m2_;
    double h1_, h2_, norm_;
    std::vector<double> lam1_, lam2_, sin2_;
};

inline TimeSeriesField cn_single(const Fn2& u0, const Fn2& g0, const CnSource& src, const Grid2D& box,
                                 const Grid1D& times, int refine, int nsub, const CnConfig& cfg) {
    CnRun run(box, refine);
    size_t N = run.size();
    double dt = times.dx / nsub;
    cplx ia = I * (0.5 * dt);

    cvec a = run.sample(u0);
    run.to_coeffs(a);
    std::vector<cplx> fwd(N), inv(N);
    for (size_t k = 0; k < N; ++k) {
        double lam = run.lambda(k);
        inv[k] = 1.0 / (1.0 - ia * lam);
        fwd[k] = (1.0 + ia * lam) * inv[k];
    }

    cvec fs;
    if (src.space) {
        if (!src.time) throw ConfigError("crank_nicolson: separable forcing needs a time factor");
        fs = run.sample(src.space);
        run.to_coeffs(fs);
    }
    auto nonlinear_coeffs = [&](const cvec& vals) {
        cvec w(N);
        int h = (src.p - 1) / 2;
#pragma omp parallel for
        for (size_t k = 0; k < N; ++k) {
            cplx u = vals[k];
            w[k] = src.sign * std::pow(std::norm(u), h) * u;
        }
        run.to_coeffs(w);
        return w;
    };
    // coefficients of all explicit sources at time t (nonlinearity excluded)
    auto source_coeffs = [&](double t) -> std::optional<cvec> {
        if (!fs.empty() && !src.general) {
            cvec w = fs;
            cplx s = src.time(t);
            for (auto& z : w) z *= s;
            return w;
        }
        if (!src.general && fs.empty()) return std::nullopt;
        cvec w = run.sample([&](double y1, double y2) { return src.general(y1, y2, t); });
        run.to_coeffs(w);
        if (!fs.empty()) {
            cplx s = src.time(t);
            for (size_t k = 0; k < N; ++k) w[k] += s * fs[k];
        }
        return w;
    };

    std::vector<HalfPlaneField> out;
    out.reserve(times.n);
    cvec vals = a;
    run.to_values(vals);
    out.push_back(run.coarse(vals, g0, times.node(0)));

    double t = times.node(0);
    cvec b_old = run.boundary_coeffs(g0, t);
    auto f_old = source_coeffs(t);
    cvec n_old;
    if (src.nonlinear()) n_old = nonlinear_coeffs(vals);

    for (int jt = 1; jt < times.n; ++jt) {
        for (int s = 0; s < nsub; ++s) {
            double tn = t + dt;
            cvec b_new = run.boundary_coeffs(g0, tn);
            auto f_new = source_coeffs(tn);
            cvec rhs(N);
#pragma omp parallel for
            for (size_t k = 0; k < N; ++k) rhs[k] = fwd[k] * a[k];
            cvec extra(N, 0.0);
            run.add_boundary(extra, b_old, ia);
            run.add_boundary(extra, b_new, ia);
            if (f_old)
                for (size_t k = 0; k < N; ++k) extra[k] -= ia * ((*f_old)[k] + (*f_new)[k]);
            for (size_t k = 0; k < N; ++k) rhs[k] += inv[k] * extra[k];

            if (!src.nonlinear()) {
                a.swap(rhs);
            } else {
                cvec base = rhs;
                for (size_t k = 0; k < N; ++k) base[k] -= inv[k] * ia * n_old[k];
                cvec n_new = n_old, trial;
                double change = 0;
                for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
                    cvec next(N);
                    for (size_t k = 0; k < N; ++k) next[k] = base[k] - inv[k] * ia * n_new[k];
                    change = 0;
                    if (!trial.empty()) {
                        for (size_t k = 0; k < N; ++k) change += std::norm(next[k] - trial[k]);
                        change = std::sqrt(change) / std::max(l2(next), 1e-300);
                    }
                    trial = std::move(next);
                    vals = trial;
                    run.to_values(vals);
                    n_new = nonlinear_coeffs(vals);
                    if (sweep > 0 && change < cfg.sweep_tol) break;
                }
                if (change > 1e-6)
                    throw NumericalError("crank_nicolson: nonlinear sweeps stalled (relative change " +
                                         std::to_string(change) + ")");
                a = std::move(trial);
                n_old = std::move(n_new);
            }
            b_old = std::move(b_new);
            f_old = std::move(f_new);
            t = tn;
        }
        vals = a;
        run.to_values(vals);
        run.check_edges(vals, cfg.edge_tol, t);
        out.push_back(run.coarse(vals, g0, times.node(jt)));
    }
    return TimeSeriesField(times, std::move(out));
}

}  // namespace detail

// Samples on `box` at `times`. Data are callables so refined runs see exact values.
inline TimeSeriesField crank_nicolson(const Fn2& u0, const Fn2& g0, const CnSource& src, const Grid2D& box,
                                      const Grid1D& times, const CnConfig& cfg = {}) {
    cfg.validate();
    if (std::abs(times.x0) > 1e-14) throw ConfigError("crank_nicolson: times must start at 0");
    if (src.nonlinear() && (src.p < 3 || src.p % 2 == 0)) throw ConfigError("crank_nicolson: p must be odd and >= 3");
    double dt = cfg.dt > 0 ? cfg.dt : times.dx / (4.0 * cfg.refine);
    int nsub = std::max(1, static_cast<int>(std::ceil(times.dx / dt - 1e-9)));
    auto coarse = detail::cn_single(u0, g0, src, box, times, cfg.refine, nsub, cfg);
    if (!cfg.richardson) return coarse;
    auto fine = detail::cn_single(u0, g0, src, box, times, 2 * cfg.refine, 2 * nsub, cfg);
    for (int j = 0; j < times.n; ++j) {
        auto& c = coarse.slices[j].values;
        const auto& f = fine.slices[j].values;
        for (size_t k = 0; k < c.size(); ++k) c[k] = (4.0 * f[k] - c[k]) / 3.0;
    }
    return coarse;
}

// Sampled-data form: no refinement; g0 (and f, if given) must be sampled at every CN step.
inline TimeSeriesField crank_nicolson(const HalfPlaneField& u0, const BoundaryTrace& g0, const TimeSeriesField* f,
                                      const Grid1D& times, const CnConfig& cfg = {}) {
    const Grid2D& box = u0.grid;
    if (!(g0.gx1 == box.gx1)) throw ConfigError("crank_nicolson: g0 must share the x1 grid");
    double ratio = times.dx / g0.gt.dx;
    int nsub = static_cast<int>(std::lround(ratio));
    if (nsub < 1 || std::abs(ratio - nsub) > 1e-9 || g0.T() < times.last() - 1e-12)
        throw ConfigError("crank_nicolson: g0 must be sampled on a refinement of the output times");
    if (f && !(f->gt == g0.gt)) throw ConfigError("crank_nicolson: f must share g0's time grid");
    auto idx = [](const Grid1D& g, double x) {
        int j = g.index_of(x);
        if (j < 0) throw ConfigError("crank_nicolson: sample off the data grid");
        return j;
    };
    Fn2 u0f = [&](double x1, double x2) { return u0(idx(box.gx1, x1), idx(box.gx2, x2)); };
    Fn2 g0f = [&](double x1, double t) { return g0(idx(g0.gx1, x1), idx(g0.gt, t)); };
    CnSource src;
    if (f) src.general = [&](double x1, double x2, double t) {
        return f->slices[idx(f->gt, t)](idx(box.gx1, x1), idx(box.gx2, x2));
    };
    CnConfig c = cfg;
    c.refine = 1;
    c.richardson = false;
    c.dt = g0.gt.dx;
    return crank_nicolson(u0f, g0f, src, box, times, c);
}

}  // namespace halfplane
