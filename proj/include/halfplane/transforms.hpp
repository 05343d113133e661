#pragma once

// Fourier convention: f^(k) = int e^{-ikx} f(x) dx, inverse (2 pi)^{-d} int e^{ikx} f^(k) dk.
// Continuous transforms are approximated by DFTs on the sampling grid; wavenumber
// grids are the centred DFT-dual grids (k_p = (p - n/2) dk).

#include "fft.hpp"
#include "fields.hpp"
#include "quadrature.hpp"

namespace halfplane {

struct SpectralField2D {
    Grid1D gk1;
    Grid1D gk2;
    cvec values;  // values[p1 * gk2.n + p2]
    cplx& operator()(int p1, int p2) { return values[p1 * gk2.n + p2]; }
    const cplx& operator()(int p1, int p2) const { return values[p1 * gk2.n + p2]; }
};

namespace detail {

// centred index p -> FFT index
inline int fft_index(int p, int n) { return ((p - n / 2) % n + n) % n; }

}  // namespace detail

inline SpectralField2D ft_plane(const HalfPlaneField& f) {
    if (f.tag != DomainTag::whole_plane) throw ConfigError("ft_plane: expected a whole-plane field");
    const Grid1D &g1 = f.grid.gx1, &g2 = f.grid.gx2;
    int n1 = g1.n, n2 = g2.n;
    cvec buf = f.values;
    fft::dft2(buf.data(), n1, n2, FFTW_FORWARD);
    SpectralField2D F{dual_grid(g1), dual_grid(g2), cvec(buf.size())};
    double scale = g1.dx * g2.dx;
    std::vector<cplx> ph1(n1), ph2(n2);
    for (int p = 0; p < n1; ++p) ph1[p] = std::exp(-I * F.gk1.node(p) * g1.x0);
    for (int p = 0; p < n2; ++p) ph2[p] = std::exp(-I * F.gk2.node(p) * g2.x0);
    for (int p1 = 0; p1 < n1; ++p1) {
        int m1 = detail::fft_index(p1, n1);
        for (int p2 = 0; p2 < n2; ++p2)
            F(p1, p2) = scale * ph1[p1] * ph2[p2] * buf[m1 * n2 + detail::fft_index(p2, n2)];
    }
    return F;
}

inline HalfPlaneField ift_plane(const SpectralField2D& F, const Grid2D& grid) {
    const Grid1D &g1 = grid.gx1, &g2 = grid.gx2;
    int n1 = g1.n, n2 = g2.n;
    if (F.gk1.n != n1 || F.gk2.n != n2) throw ConfigError("ift_plane: grid mismatch");
    cvec buf(F.values.size());
    std::vector<cplx> ph1(n1), ph2(n2);
    for (int p = 0; p < n1; ++p) ph1[p] = std::exp(I * F.gk1.node(p) * g1.x0);
    for (int p = 0; p < n2; ++p) ph2[p] = std::exp(I * F.gk2.node(p) * g2.x0);
    double scale = 1.0 / (n1 * g1.dx * n2 * g2.dx);
    for (int p1 = 0; p1 < n1; ++p1) {
        int m1 = detail::fft_index(p1, n1);
        for (int p2 = 0; p2 < n2; ++p2)
            buf[m1 * n2 + detail::fft_index(p2, n2)] = scale * ph1[p1] * ph2[p2] * F(p1, p2);
    }
    fft::dft2(buf.data(), n1, n2, FFTW_BACKWARD);
    return HalfPlaneField(grid, std::move(buf), DomainTag::whole_plane, kUnchecked);
}

// Transform along x1 of an (n1 x m) row-major block, zero-padded to npad samples.
class X1Transform {
public:
    X1Transform(const Grid1D& gx1, int npad) : gx1_(gx1), npad_(std::max(npad, gx1.n)) {
        gk1_ = dual_grid(Grid1D(npad_, gx1.x0, gx1.dx));
        fwd_.resize(npad_);
        inv_.resize(npad_);
        for (int p = 0; p < npad_; ++p) {
            double k = gk1_.node(p);
            fwd_[p] = gx1.dx * std::exp(-I * k * gx1.x0);
            inv_[p] = std::exp(I * k * gx1.x0) / (npad_ * gx1.dx);
        }
    }

    const Grid1D& k1_grid() const { return gk1_; }
    const Grid1D& x1_grid() const { return gx1_; }
    int npad() const { return npad_; }

    // in: n1 x m, out: npad x m (centred k ordering)
    cvec forward(const cvec& in, int m) const {
        cvec buf(static_cast<size_t>(npad_) * m);
        std::copy(in.begin(), in.begin() + static_cast<long>(gx1_.n) * m, buf.begin());
        fft::dft_many(buf.data(), npad_, m, m, 1, FFTW_FORWARD);
        cvec out(buf.size());
        for (int p = 0; p < npad_; ++p) {
            int src = detail::fft_index(p, npad_);
            for (int c = 0; c < m; ++c) out[p * m + c] = fwd_[p] * buf[src * m + c];
        }
        return out;
    }

    // in: npad x m (centred k), out: n1 x m on the original x1 grid
    cvec inverse(const cvec& in, int m) const {
        cvec buf(in.size());
        for (int p = 0; p < npad_; ++p) {
            int dst = detail::fft_index(p, npad_);
            for (int c = 0; c < m; ++c) buf[dst * m + c] = inv_[p] * in[p * m + c];
        }
        fft::dft_many(buf.data(), npad_, m, m, 1, FFTW_BACKWARD);
        buf.resize(static_cast<size_t>(gx1_.n) * m);
        return buf;
    }

private:
    Grid1D gx1_, gk1_;
    int npad_;
    cvec fwd_, inv_;
};

// x1-transform of a boundary trace, stored (k1 outer, t inner).
struct SpectralTrace {
    Grid1D gk1;
    Grid1D gt;
    cvec values;
    cplx& operator()(int p, int jt) { return values[p * gt.n + jt]; }
    const cplx& operator()(int p, int jt) const { return values[p * gt.n + jt]; }
};

inline SpectralTrace ft_x1(const BoundaryTrace& g, int npad = 0) {
    X1Transform X(g.gx1, npad > 0 ? npad : g.gx1.n);
    return {X.k1_grid(), g.gt, X.forward(g.values, g.gt.n)};
}

inline BoundaryTrace ift_x1(const SpectralTrace& G, const Grid1D& gx1) {
    X1Transform X(gx1, G.gk1.n);
    return BoundaryTrace(gx1, G.gt, X.inverse(G.values, G.gt.n), kUnchecked);
}

// int_0^{t_upper} e^{i tau t} g^{x1}(k1, t) dt. The integrand is sampled in the modulated
// frame q = e^{i k1^2 t} g^{x1}, which removes the free-dispersion oscillation of traces.
inline cplx time_transform(const BoundaryTrace& g, double k1, cplx tau, double t_upper) {
    if (t_upper < -1e-14 || t_upper > g.T() * (1 + 1e-12))
        throw ConfigError("time_transform: t_upper outside the trace's time window");
    int nt = g.gt.n;
    cvec q(nt);
    for (int jt = 0; jt < nt; ++jt) {
        cplx s = 0;
        for (int j1 = 0; j1 < g.gx1.n; ++j1) s += std::exp(-I * k1 * g.gx1.node(j1)) * g(j1, jt);
        double t = g.gt.node(jt);
        q[jt] = std::exp(I * k1 * k1 * t) * g.gx1.dx * s;
    }
    quad::Filon F(tau - k1 * k1, 0.0, g.gt.dx, nt);
    cvec w = F.weights_upto(std::clamp(t_upper, 0.0, g.T()));
    cplx acc = 0;
    for (int jt = 0; jt < nt; ++jt) acc += w[jt] * q[jt];
    return acc;
}

// Half-plane transform for Im k2 <= 0: trapezoid in x1, cubic Filon in x2.
inline cplx ft_half_plane(const HalfPlaneField& f, double k1, cplx k2) {
    if (f.tag != DomainTag::half_plane) throw ConfigError("ft_half_plane: expected a half-plane field");
    if (k2.imag() > 0) throw DomainError("ft_half_plane: Im k2 > 0 is outside the analyticity region");
    int n1 = f.n1(), n2 = f.n2();
    cvec row(n2);
    for (int j1 = 0; j1 < n1; ++j1) {
        cplx e = std::exp(-I * k1 * f.grid.gx1.node(j1));
        for (int j2 = 0; j2 < n2; ++j2) row[j2] += e * f(j1, j2);
    }
    quad::Filon F(-k2, 0.0, f.grid.gx2.dx, n2);
    return f.grid.gx1.dx * F.integrate(row);
}

// Laplace transform L phi(x) = int_0^inf e^{-k x} phi(k) dk for phi sampled on k = j dk.
inline cvec laplace_transform(const cvec& phi, const Grid1D& gk, const Grid1D& gout,
                              double tail_tol = 1e-8) {
    if (std::abs(gk.x0) > 1e-14) throw ConfigError("laplace_transform: input grid must start at 0");
    if (static_cast<int>(phi.size()) != gk.n) throw ConfigError("laplace_transform: size mismatch");
    double m = max_abs(phi);
    if (m > 0 && std::abs(phi.back()) > tail_tol * m)
        throw DomainError("laplace_transform: phi has a non-decayed tail");
    cvec out(gout.n);
    for (int i = 0; i < gout.n; ++i) {
        double x = gout.node(i);
        quad::Filon F(cplx(0, x), 0.0, gk.dx, gk.n);
        out[i] = F.integrate(phi);
    }
    return out;
}

// Log-variable form k = e^u: the same transform sampled on a geometric grid, where
// the operator becomes a convolution with e^{w/2} e^{-e^w}. Trapezoid in u.
inline cvec laplace_transform_log(const cvec& phi, const Grid1D& gu) {
    int n = gu.n;
    // k x = e^{u_i + u_j} depends on i + j only
    std::vector<double> E(2 * n - 1);
    for (int m = 0; m < 2 * n - 1; ++m) E[m] = std::exp(-std::exp(2 * gu.x0 + m * gu.dx));
    cvec kphi(n);
    for (int j = 0; j < n; ++j) kphi[j] = std::exp(gu.node(j)) * phi[j];
    cvec out(n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) {
        cplx s = 0;
        for (int j = 0; j < n; ++j) s += E[i + j] * kphi[j];
        out[i] = gu.dx * s;
    }
    return out;
}

enum class Branch { imaginary_axis, real_axis };

struct ContourNode {
    cplx k2;
    cplx weight;
    Branch branch;
};

// Truncated dD: k2 = i kappa with kappa from K down to 0, then k2 = 0..K.
inline std::vector<ContourNode> build_contour(double K_max, int n_nodes, double imag_fraction = 0.375,
                                              int panel = 32) {
    if (!(K_max > 0)) throw ConfigError("build_contour: K_max must be positive");
    if (n_nodes < 8) throw ConfigError("build_contour: need at least 8 nodes");
    int ni = std::clamp(static_cast<int>(std::lround(n_nodes * imag_fraction)), 1, n_nodes - 1);
    int nr = n_nodes - ni;
    auto gi = quad::composite_gauss_legendre(0.0, K_max, ni, panel);
    auto gr = quad::composite_gauss_legendre(0.0, K_max, nr, panel);
    std::vector<ContourNode> nodes;
    nodes.reserve(n_nodes);
    for (int i = ni - 1; i >= 0; --i) nodes.push_back({cplx(0, gi.x[i]), -I * gi.w[i], Branch::imaginary_axis});
    for (int i = 0; i < nr; ++i) nodes.push_back({cplx(gr.x[i], 0), cplx(gr.w[i], 0), Branch::real_axis});
    return nodes;
}

}  // namespace halfplane
