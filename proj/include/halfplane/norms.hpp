#pragma once

// Function-space norms. Spectral norms carry the Plancherel factors, so every H^s norm
// reduces to the physical L2 norm at s = 0.

#include "extension.hpp"

#include <sstream>
#include <utility>

namespace halfplane {

struct NormReport {
    std::string name;
    double s = 0;
    double b_or_m = 0;
    double value = 0;
    std::vector<std::pair<std::string, double>> components;
    int n1 = 0, n2 = 0, nt = 0;
    double dx1 = 0, dx2 = 0, dt = 0;

    static std::string csv_header() { return "name,s,b_or_m,value,n1,n2,nt,dx1,dx2,dt"; }
    std::string csv_row() const {
        std::ostringstream os;
        os.precision(17);
        os << name << ',' << s << ',' << b_or_m << ',' << value << ',' << n1 << ',' << n2 << ',' << nt << ','
           << dx1 << ',' << dx2 << ',' << dt;
        return os.str();
    }
};

inline double hs_weight_sum(const SpectralField2D& F, double s) {
    double acc = 0;
    for (int p1 = 0; p1 < F.gk1.n; ++p1) {
        double k1 = F.gk1.node(p1);
        for (int p2 = 0; p2 < F.gk2.n; ++p2) {
            double k2 = F.gk2.node(p2);
            acc += std::pow(1 + k1 * k1 + k2 * k2, s) * std::norm(F(p1, p2));
        }
    }
    return acc * F.gk1.dx * F.gk2.dx;
}

inline double hs_plane(const HalfPlaneField& f, double s) {
    return std::sqrt(hs_weight_sum(ft_plane(f), s)) / (2 * pi);
}

inline double hs_half_plane_extension(const HalfPlaneField& f, double s) {
    if (s > 2 + 1e-12) throw ConfigError("hs_half_plane_extension: s > 2 exceeds the extension order");
    return hs_plane(hestenes_extend(f), s);
}

namespace detail {

// centred first differences, second-order one-sided at the ends
inline cvec diff_axis(const HalfPlaneField& f, int axis) {
    int n1 = f.n1(), n2 = f.n2();
    double h = axis == 0 ? f.grid.gx1.dx : f.grid.gx2.dx;
    int n = axis == 0 ? n1 : n2;
    cvec d(f.values.size());
    for (int j1 = 0; j1 < n1; ++j1)
        for (int j2 = 0; j2 < n2; ++j2) {
            int j = axis == 0 ? j1 : j2;
            auto at = [&](int jj) { return axis == 0 ? f(jj, j2) : f(j1, jj); };
            cplx v;
            if (j == 0)
                v = (-3.0 * at(0) + 4.0 * at(1) - at(2)) / (2 * h);
            else if (j == n - 1)
                v = (3.0 * at(n - 1) - 4.0 * at(n - 2) + at(n - 3)) / (2 * h);
            else
                v = (at(j + 1) - at(j - 1)) / (2 * h);
            d[f.index(j1, j2)] = v;
        }
    return d;
}

// Slobodeckij seminorm squared of v on the box, offsets |z| <= zmax, plus the small-|z|
// cell handled through the gradient: int_{|z|<r0} |grad v . z|^2 / |z|^{2+2b} dz.
inline double slobodeckij_sq(const cvec& v, const cvec& d1, const cvec& d2, const Grid2D& g, double beta,
                             double zmax) {
    int n1 = g.gx1.n, n2 = g.gx2.n;
    double h1 = g.gx1.dx, h2 = g.gx2.dx, cell = h1 * h2;
    int m1 = static_cast<int>(zmax / h1), m2 = static_cast<int>(zmax / h2);
    double acc = 0;
#pragma omp parallel for reduction(+ : acc) schedule(dynamic)
    for (int o1 = -m1; o1 <= m1; ++o1) {
        for (int o2 = -m2; o2 <= m2; ++o2) {
            if (o1 == 0 && o2 == 0) continue;
            double z2 = sqr(o1 * h1) + sqr(o2 * h2);
            if (z2 > zmax * zmax) continue;
            double w = std::pow(z2, -(1 + beta));
            double part = 0;
            int a1 = std::max(0, -o1), b1 = std::min(n1, n1 - o1);
            int a2 = std::max(0, -o2), b2 = std::min(n2, n2 - o2);
            for (int j1 = a1; j1 < b1; ++j1) {
                const cplx* r0 = v.data() + static_cast<size_t>(j1) * n2;
                const cplx* r1 = v.data() + static_cast<size_t>(j1 + o1) * n2 + o2;
                for (int j2 = a2; j2 < b2; ++j2) part += std::norm(r1[j2] - r0[j2]);
            }
            acc += w * part;
        }
    }
    acc *= cell * cell;
    double r0 = std::sqrt(cell / pi);
    double grad = 0;
    for (size_t i = 0; i < v.size(); ++i) grad += std::norm(d1[i]) + std::norm(d2[i]);
    acc += grad * cell * pi * std::pow(r0, 2 - 2 * beta) / (2 - 2 * beta);
    return acc;
}

}  // namespace detail

// Intrinsic norm: integer-order L2 parts plus the Slobodeckij seminorm of the top derivatives.
inline double hs_half_plane_intrinsic(const HalfPlaneField& f, double s, double zmax = 0) {
    if (s < 0 || s >= 2) throw ConfigError("hs_half_plane_intrinsic: need 0 <= s < 2");
    const Grid2D& g = f.grid;
    double cell = g.gx1.dx * g.gx2.dx;
    if (zmax <= 0) zmax = 0.25 * std::min(g.gx1.extent(), g.gx2.extent());
    int k = static_cast<int>(std::floor(s));
    double beta = s - k;
    double total = std::norm(f.l2_norm());
    cvec fx = detail::diff_axis(f, 0), fy = detail::diff_axis(f, 1);
    if (k == 1) {
        double sq = 0;
        for (size_t i = 0; i < fx.size(); ++i) sq += std::norm(fx[i]) + std::norm(fy[i]);
        total += sq * cell;
    }
    if (beta > 1e-14) {
        if (k == 0) {
            total += detail::slobodeckij_sq(f.values, fx, fy, g, beta, zmax);
        } else {
            for (const cvec* d : {&fx, &fy}) {
                HalfPlaneField df(g, *d, f.tag, kUnchecked);
                total += detail::slobodeckij_sq(*d, detail::diff_axis(df, 0), detail::diff_axis(df, 1), g, beta,
                                                zmax);
            }
        }
    }
    return std::sqrt(total);
}

// ||w||_{H^m(0,T)} for samples w_j = w(j dt), j = 0..N.
// m in (0,1): L2 part plus int_0^T int_0^{T-t} |w(t+z) - w(t)|^2 z^{-1-2m} dz dt, with
// D(z) = |w(t+z) - w(t)|^2 / z^2 piecewise linear in z and the weight z^{1-2m} integrated exactly.
// m = 1: L2 of w plus L2 of w'.
inline double hm_time_sq(const cvec& w, double dt, double m) {
    if (m < 0 || m > 1) throw ConfigError("hm_time: m must lie in [0,1]");
    int n = static_cast<int>(w.size());
    if (n < 3) throw ConfigError("hm_time: need at least 3 samples");
    auto tw = quad::trapezoid_weights(n, dt);
    double l2sq = 0;
    for (int i = 0; i < n; ++i) l2sq += tw[i] * std::norm(w[i]);
    if (m == 0) return l2sq;
    cvec dw(n);
    dw[0] = (-3.0 * w[0] + 4.0 * w[1] - w[2]) / (2 * dt);
    dw[n - 1] = (3.0 * w[n - 1] - 4.0 * w[n - 2] + w[n - 3]) / (2 * dt);
    for (int i = 1; i < n - 1; ++i) dw[i] = (w[i + 1] - w[i - 1]) / (2 * dt);
    if (m == 1) {
        double d = 0;
        for (int i = 0; i < n; ++i) d += tw[i] * std::norm(dw[i]);
        return l2sq + d;
    }
    // hat-function moments of z^p on the grid z_j = j dt, p = 1 - 2m > -1
    double p = 1 - 2 * m;
    std::vector<double> P(n + 1), R(n + 1);  // int_0^{z_j} z^p, int_0^{z_j} z^{p+1}
    for (int j = 0; j <= n; ++j) {
        double z = j * dt;
        P[j] = std::pow(z, p + 1) / (p + 1);
        R[j] = std::pow(z, p + 2) / (p + 2);
    }
    // on [z_j, z_{j+1}]: left hat (z_{j+1} - z)/dt, right hat (z - z_j)/dt
    std::vector<double> left(n), right(n);
    for (int j = 0; j + 1 < n; ++j) {
        double a0 = P[j + 1] - P[j], a1 = R[j + 1] - R[j];
        left[j] = ((j + 1) * dt * a0 - a1) / dt;
        right[j] = (a1 - j * dt * a0) / dt;
    }
    double semi = 0;
    for (int i = 0; i < n - 1; ++i) {
        double inner = 0;
        double Dprev = std::norm(dw[i]);
        for (int j = 0; i + j + 1 < n; ++j) {
            double z = (j + 1) * dt;
            double Dnext = std::norm(w[i + j + 1] - w[i]) / (z * z);
            inner += left[j] * Dprev + right[j] * Dnext;
            Dprev = Dnext;
        }
        semi += tw[i] * inner;
    }
    return l2sq + semi;
}

inline double hm_time(const cvec& w, double dt, double m) { return std::sqrt(hm_time_sq(w, dt, m)); }

// Fourier H^m(R) norm of samples on a uniform grid, zero-padded to npad
inline double hm_line(const cvec& w, double dt, double m, int npad = 0) {
    int n = std::max<int>(npad, 2 * static_cast<int>(w.size()));
    cvec buf(n);
    std::copy(w.begin(), w.end(), buf.begin());
    fft::dft(buf, FFTW_FORWARD);
    double dtau = 2 * pi / (n * dt), acc = 0;
    for (int p = 0; p < n; ++p) {
        int q = p <= n / 2 ? p : p - n;
        acc += std::pow(1 + sqr(q * dtau), m) * std::norm(buf[p]);
    }
    return std::sqrt(acc * dt * dt * dtau / (2 * pi));
}

// Modulated x1-transform e^{i k1^2 t} g^(k1, t), first nt time nodes
inline SpectralTrace modulated_transform(const BoundaryTrace& g, int nt, int npad = 0) {
    SpectralTrace G = ft_x1(g.head(nt), npad);
    for (int p = 0; p < G.gk1.n; ++p) {
        double k2 = sqr(G.gk1.node(p));
        for (int jt = 0; jt < nt; ++jt) G(p, jt) *= std::exp(I * k2 * G.gt.node(jt));
    }
    return G;
}

// B^s_T norm over [0,T]; T must be a node of g's time grid.
inline NormReport bst_norm(const BoundaryTrace& g, double s, double T, int npad = 0) {
    if (s < -0.5 - 1e-12 || s > 1.5 + 1e-12) throw ConfigError("bst_norm: s must lie in [-1/2, 3/2]");
    int jT = g.gt.index_of(T);
    if (jT < 2) throw ConfigError("bst_norm: T must be a time node with at least 3 samples");
    SpectralTrace G = modulated_transform(g, jT + 1, npad);
    int nk = G.gk1.n, nt = jT + 1;
    double m1 = (2 * s + 1) / 4;
    std::vector<double> c1(nk), c2(nk);
#pragma omp parallel for schedule(static)
    for (int p = 0; p < nk; ++p) {
        cvec row(G.values.begin() + static_cast<long>(p) * nt, G.values.begin() + static_cast<long>(p + 1) * nt);
        double k1 = G.gk1.node(p);
        c1[p] = hm_time_sq(row, g.gt.dx, m1);
        c2[p] = std::pow(1 + k1 * k1, s) * hm_time_sq(row, g.gt.dx, 0.25);
    }
    double a = 0, b = 0;
    for (int p = 0; p < nk; ++p) {
        a += c1[p];
        b += c2[p];
    }
    double scale = G.gk1.dx / (2 * pi);
    a = std::sqrt(a * scale);
    b = std::sqrt(b * scale);
    NormReport r{"bst", s, m1, a + b, {{"h0_t", a}, {"hs_quarter", b}}};
    r.n1 = g.gx1.n;
    r.nt = nt;
    r.dx1 = g.gx1.dx;
    r.dt = g.gt.dx;
    return r;
}

// X^{s,b} norm of g supported in t in (0,2): zero-padded (x1,t) DFT, weighted L2.
inline double xsb_norm(const BoundaryTrace& g, double s, double b, double edge_tol = 1e-8, int tpad = 0) {
    int n1 = g.gx1.n, nt = g.gt.n;
    double scale = std::max(max_abs(g.values), 1e-300);
    for (int j1 = 0; j1 < n1; ++j1)
        if (std::abs(g(j1, nt - 1)) > edge_tol * scale)
            throw DomainError("xsb_norm: trace not negligible at the end of its time window");
    int mt = std::max(tpad, 4 * nt);
    cvec buf(static_cast<size_t>(n1) * mt);
    for (int j1 = 0; j1 < n1; ++j1)
        for (int jt = 0; jt < nt; ++jt) buf[static_cast<size_t>(j1) * mt + jt] = g(j1, jt);
    fft::dft2(buf.data(), n1, mt, FFTW_FORWARD);
    double dk = 2 * pi / (n1 * g.gx1.dx), dtau = 2 * pi / (mt * g.gt.dx);
    double acc = 0;
    for (int a = 0; a < n1; ++a) {
        double k1 = (a <= n1 / 2 ? a : a - n1) * dk;
        for (int c = 0; c < mt; ++c) {
            // forward DFT in t is e^{-i tau t}; tau is the dual variable
            double tau = (c <= mt / 2 ? c : c - mt) * dtau;
            acc += std::pow(1 + k1 * k1, s) * std::pow(1 + std::abs(tau + k1 * k1), 2 * b) *
                   std::norm(buf[static_cast<size_t>(a) * mt + c]);
        }
    }
    acc *= sqr(g.gx1.dx * g.gt.dx) * dk * dtau / sqr(2 * pi);
    return std::sqrt(acc);
}

inline NormReport bs_norm(const BoundaryTrace& g, double s) {
    double a = xsb_norm(g, 0, (2 * s + 1) / 4), b = xsb_norm(g, s, 0.25);
    NormReport r{"bs", s, (2 * s + 1) / 4, a + b, {{"x0b", a}, {"xs_quarter", b}}};
    r.n1 = g.gx1.n;
    r.nt = g.gt.n;
    r.dx1 = g.gx1.dx;
    r.dt = g.gt.dx;
    return r;
}

inline NormReport field_report(const std::string& name, const HalfPlaneField& f, double s, double value) {
    NormReport r{name, s, 0, value, {}};
    r.n1 = f.n1();
    r.n2 = f.n2();
    r.dx1 = f.grid.gx1.dx;
    r.dx2 = f.grid.gx2.dx;
    return r;
}

}  // namespace halfplane
