#pragma once

// Linear Schrodinger IVP on the plane and on the line: i u_t + Lap u = F.
// The homogeneous flow is the exact spectral multiplier e^{-i|k|^2 t}; only the Duhamel
// integral in t' is discretised (composite Simpson, 3/8 tail for odd interval counts).

#include "norms.hpp"

namespace halfplane {

namespace detail {

// |k|^2 in raw FFT ordering for an n1 x n2 grid (row-major)
inline std::vector<double> fft_ksq(const Grid1D& g1, const Grid1D* g2) {
    int n1 = g1.n, n2 = g2 ? g2->n : 1;
    double dk1 = 2 * pi / (n1 * g1.dx), dk2 = g2 ? 2 * pi / (n2 * g2->dx) : 0;
    std::vector<double> k(static_cast<size_t>(n1) * n2);
    for (int a = 0; a < n1; ++a) {
        double k1 = (a <= n1 / 2 ? a : a - n1) * dk1;
        for (int b = 0; b < n2; ++b) {
            double k2 = (b <= n2 / 2 ? b : b - n2) * dk2;
            k[static_cast<size_t>(a) * n2 + b] = k1 * k1 + k2 * k2;
        }
    }
    return k;
}

inline void forward(cvec& v, int n1, int n2) {
    if (n2 == 1)
        fft::dft(v, FFTW_FORWARD);
    else
        fft::dft2(v.data(), n1, n2, FFTW_FORWARD);
}

inline void backward(cvec& v, int n1, int n2) {
    if (n2 == 1)
        fft::dft(v, FFTW_BACKWARD);
    else
        fft::dft2(v.data(), n1, n2, FFTW_BACKWARD);
    double s = 1.0 / (static_cast<double>(n1) * n2);
    for (auto& z : v) z *= s;
}

// Running composite-Simpson Duhamel sum. push(Fhat_j) for j = 0,1,... returns
// int_0^{t_j} e^{i|k|^2 t'} Fhat(t') dt' with the same weights as quad::simpson_weights(j+1, h).
class DuhamelAccumulator {
public:
    DuhamelAccumulator(std::vector<double> ksq, double h) : ksq_(std::move(ksq)), h_(h) {}

    const cvec& push(const cvec& Fhat) {
        size_t n = ksq_.size();
        double t = j_ * h_;
        cvec G(n);
        for (size_t i = 0; i < n; ++i) G[i] = std::exp(I * (ksq_[i] * t)) * Fhat[i];
        hist_.push_back(std::move(G));
        if (hist_.size() > 4) hist_.erase(hist_.begin());
        if (even_.empty()) even_.assign(n, 0.0);
        out_.assign(n, 0.0);
        const auto& g = hist_;
        int m = static_cast<int>(g.size());
        if (j_ == 0) {
            // nothing
        } else if (j_ == 1) {
            for (size_t i = 0; i < n; ++i) out_[i] = 0.5 * h_ * (g[m - 2][i] + g[m - 1][i]);
        } else if (j_ % 2 == 0) {
            for (size_t i = 0; i < n; ++i)
                even_[i] += h_ / 3 * (g[m - 3][i] + 4.0 * g[m - 2][i] + g[m - 1][i]);
            out_ = even_;
        } else {
            // even part up to j-3 plus 3/8 rule on the last three intervals
            for (size_t i = 0; i < n; ++i)
                out_[i] = prev_even_[i] +
                          3 * h_ / 8 * (g[m - 4][i] + 3.0 * g[m - 3][i] + 3.0 * g[m - 2][i] + g[m - 1][i]);
        }
        // even_ holds the Simpson sum up to the latest even index; keep the one before too
        if (j_ % 2 == 0) {
            prev_even_ = stash_;
            stash_ = even_;
        }
        ++j_;
        return out_;
    }

    const std::vector<double>& ksq() const { return ksq_; }

private:
    std::vector<double> ksq_;
    double h_;
    int j_ = 0;
    std::vector<cvec> hist_;
    cvec even_, out_, stash_, prev_even_;
};

}  // namespace detail

// e^{-i |k|^2 t} applied to whole-plane samples (periodic DFT on the box)
inline HalfPlaneField propagate(const HalfPlaneField& U0, double t) {
    int n1 = U0.n1(), n2 = U0.n2();
    auto ksq = detail::fft_ksq(U0.grid.gx1, &U0.grid.gx2);
    cvec v = U0.values;
    detail::forward(v, n1, n2);
    for (size_t i = 0; i < v.size(); ++i) v[i] *= std::exp(-I * (ksq[i] * t));
    detail::backward(v, n1, n2);
    return HalfPlaneField(U0.grid, std::move(v), DomainTag::whole_plane, kUnchecked);
}

inline TimeSeriesField solve_ivp_homogeneous(const HalfPlaneField& U0, const Grid1D& times) {
    if (U0.tag != DomainTag::whole_plane) throw ConfigError("solve_ivp_homogeneous: expected a whole-plane field");
    int n1 = U0.n1(), n2 = U0.n2();
    auto ksq = detail::fft_ksq(U0.grid.gx1, &U0.grid.gx2);
    cvec hat = U0.values;
    detail::forward(hat, n1, n2);
    std::vector<HalfPlaneField> out;
    out.reserve(times.n);
    for (int j = 0; j < times.n; ++j) {
        double t = times.node(j);
        cvec v(hat.size());
        for (size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-I * (ksq[i] * t)) * hat[i];
        detail::backward(v, n1, n2);
        out.emplace_back(U0.grid, std::move(v), DomainTag::whole_plane, kUnchecked);
    }
    return TimeSeriesField(times, std::move(out));
}

// W(t) = -i int_0^t S[F(t'); 0](t - t') dt'. F must be sampled on `times`, which starts at 0.
inline TimeSeriesField solve_ivp_forced(const TimeSeriesField& F, const Grid1D& times) {
    if (!(F.gt == times)) throw ConfigError("solve_ivp_forced: forcing must be sampled on the output times");
    if (std::abs(times.x0) > 1e-14) throw ConfigError("solve_ivp_forced: times must start at 0");
    const Grid2D& g = F.grid();
    if (F.slices.front().tag != DomainTag::whole_plane)
        throw ConfigError("solve_ivp_forced: expected whole-plane forcing");
    int n1 = g.gx1.n, n2 = g.gx2.n;
    detail::DuhamelAccumulator acc(detail::fft_ksq(g.gx1, &g.gx2), times.dx);
    const auto& ksq = acc.ksq();
    std::vector<HalfPlaneField> out;
    out.reserve(times.n);
    for (int j = 0; j < times.n; ++j) {
        cvec hat = F.slices[j].values;
        detail::forward(hat, n1, n2);
        cvec v = acc.push(hat);
        double t = times.node(j);
        for (size_t i = 0; i < v.size(); ++i) v[i] *= -I * std::exp(-I * (ksq[i] * t));
        detail::backward(v, n1, n2);
        out.emplace_back(g, std::move(v), DomainTag::whole_plane, kUnchecked);
    }
    return TimeSeriesField(times, std::move(out));
}

// One-dimensional analogues on a symmetric line grid
inline std::vector<cvec> solve_ivp_1d(const cvec& u0, const Grid1D& gx, const Grid1D& times) {
    int n = gx.n;
    if (static_cast<int>(u0.size()) != n) throw ConfigError("solve_ivp_1d: size mismatch");
    auto ksq = detail::fft_ksq(gx, nullptr);
    cvec hat = u0;
    detail::forward(hat, n, 1);
    std::vector<cvec> out;
    for (int j = 0; j < times.n; ++j) {
        cvec v(n);
        for (int i = 0; i < n; ++i) v[i] = std::exp(-I * (ksq[i] * times.node(j))) * hat[i];
        detail::backward(v, n, 1);
        out.push_back(std::move(v));
    }
    return out;
}

inline std::vector<cvec> solve_ivp_1d_forced(const std::vector<cvec>& f, const Grid1D& gx, const Grid1D& times) {
    int n = gx.n;
    if (static_cast<int>(f.size()) != times.n) throw ConfigError("solve_ivp_1d_forced: one slice per time");
    detail::DuhamelAccumulator acc(detail::fft_ksq(gx, nullptr), times.dx);
    const auto& ksq = acc.ksq();
    std::vector<cvec> out;
    for (int j = 0; j < times.n; ++j) {
        cvec hat = f[j];
        detail::forward(hat, n, 1);
        cvec v = acc.push(hat);
        for (int i = 0; i < n; ++i) v[i] *= -I * std::exp(-I * (ksq[i] * times.node(j)));
        detail::backward(v, n, 1);
        out.push_back(std::move(v));
    }
    return out;
}

inline TimeSeriesField restrict_series(const TimeSeriesField& s) {
    std::vector<HalfPlaneField> out;
    out.reserve(s.slices.size());
    for (const auto& f : s.slices) out.push_back(restrict_to_half_plane(f));
    return TimeSeriesField(s.gt, std::move(out));
}

// trace at x2 = 0 of a whole-plane series (row n2/2)
inline BoundaryTrace whole_plane_trace(const TimeSeriesField& s) {
    const Grid2D& g = s.grid();
    int j0 = g.gx2.n / 2;
    BoundaryTrace tr = BoundaryTrace::zeros(g.gx1, s.gt);
    for (int jt = 0; jt < s.nt(); ++jt)
        for (int j1 = 0; j1 < g.gx1.n; ++j1) tr(j1, jt) = s.slices[jt](j1, j0);
    return tr;
}

// trace along the row x2 = x2_node of a whole-plane series
inline BoundaryTrace row_trace(const TimeSeriesField& s, int j2) {
    const Grid2D& g = s.grid();
    BoundaryTrace tr = BoundaryTrace::zeros(g.gx1, s.gt);
    for (int jt = 0; jt < s.nt(); ++jt)
        for (int j1 = 0; j1 < g.gx1.n; ++j1) tr(j1, jt) = s.slices[jt](j1, j2);
    return tr;
}

inline double sup_hs(const TimeSeriesField& s, double h) {
    double m = 0;
    for (const auto& f : s.slices)
        m = std::max(m, f.tag == DomainTag::whole_plane ? hs_plane(f, h) : hs_half_plane_extension(f, h));
    return m;
}

}  // namespace halfplane
