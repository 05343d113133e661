#pragma once

// Smooth, decaying test data with closed-form free evolutions.
// hermite_gauss(n, .) is (-w d/dx)^n of the evolved Gaussian exp(-(x-c)^2/w^2), so any
// finite product series solves the free equation exactly.

#include "oracle.hpp"

#include <random>

namespace halfplane {

inline cplx hermite_gauss(int n, double x, double t, double c, double w) {
    cplx sigma = w * w + 4.0 * I * t;
    double y = x - c;
    // n! (-1)^k 2^{n-2k} / (k! (n-2k)!) * y^{n-2k} sigma^{-(n-k)}, times w^n
    cplx sum = 0.0;
    double fact_n = std::tgamma(n + 1.0);
    for (int k = 0; 2 * k <= n; ++k) {
        double a = fact_n * (k % 2 ? -1.0 : 1.0) * std::pow(2.0, n - 2 * k) /
                   (std::tgamma(k + 1.0) * std::tgamma(n - 2 * k + 1.0));
        sum += a * std::pow(y, n - 2 * k) * std::pow(sigma, -(n - k));
    }
    return std::sqrt(w * w / sigma) * std::pow(w, n) * sum * std::exp(-y * y / sigma);
}

struct HermiteGauss2D {
    int order = 1;     // modes m, n < order
    double c1 = 0, c2 = 0, w1 = 1, w2 = 1;
    cvec coef{1.0};    // order x order, row-major in (m, n)

    cplx operator()(double x1, double x2, double t = 0) const {
        cplx s = 0.0;
        for (int m = 0; m < order; ++m) {
            cplx a = hermite_gauss(m, x1, t, c1, w1);
            for (int n = 0; n < order; ++n) {
                cplx c = coef[static_cast<size_t>(m) * order + n];
                if (c != 0.0) s += c * a * hermite_gauss(n, x2, t, c2, w2);
            }
        }
        return s;
    }

    HalfPlaneField sample(const Grid2D& g, DomainTag tag, double t = 0, double tol = kUnchecked) const {
        return sample_field(g, tag, [&](double a, double b) { return (*this)(a, b, t); }, tol);
    }
};

// Coefficients uniform in the unit disc, decaying like decay^(m+n).
inline HermiteGauss2D random_hermite_gauss(std::mt19937_64& rng, int order, double c1, double c2, double w1,
                                           double w2, double amp = 1, double decay = 0.5) {
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    HermiteGauss2D h;
    h.order = order;
    h.c1 = c1, h.c2 = c2, h.w1 = w1, h.w2 = w2;
    h.coef.assign(static_cast<size_t>(order) * order, 0.0);
    for (int m = 0; m < order; ++m)
        for (int n = 0; n < order; ++n) {
            cplx z;
            do z = cplx(U(rng), U(rng));
            while (std::abs(z) > 1.0);
            h.coef[static_cast<size_t>(m) * order + n] = amp * std::pow(decay, m + n) * z;
        }
    return h;
}

// Half-plane IBVP data:
//   u0 = ic(., ., 0)
//   g0 = beta * ic(x1, 0, t) + b(x1) phi(t) + mismatch(x1) exp(-(t/tau)^2)
//   f  = famp exp(-|x - d|^2 / fw^2) psi(t)
// The mismatch term restores u0(x1, 0) = g0(x1, 0) exactly.
struct IbvpCase {
    HermiteGauss2D ic;
    cplx beta = 1.0;
    cplx bamp = 0.0;
    double bc = 0, bw = 1;
    double tau = 0.1;
    cplx famp = 0.0;
    double fc1 = 0, fc2 = 4, fw = 1;
    cplx psi0 = 1.0, psi1 = 0.0;
    double psi_omega = 1;
    std::string descriptor = "gaussian";

    bool forced() const { return famp != 0.0; }
    cplx u0(double x1, double x2) const { return ic(x1, x2, 0); }
    cplx phi(double t) const { return t * t * std::exp(-t); }
    cplx g0(double x1, double t) const {
        cplx g = beta * ic(x1, 0, t);
        if (bamp != 0.0) g += bamp * std::exp(-sqr(x1 - bc) / (bw * bw)) * phi(t);
        if (beta != 1.0) g += (1.0 - beta) * ic(x1, 0, 0) * std::exp(-sqr(t / tau));
        return g;
    }
    cplx f_space(double x1, double x2) const {
        return famp * std::exp(-(sqr(x1 - fc1) + sqr(x2 - fc2)) / (fw * fw));
    }
    cplx f_time(double t) const { return psi0 + psi1 * std::sin(psi_omega * t); }
    cplx f(double x1, double x2, double t) const { return f_space(x1, x2) * f_time(t); }

    HalfPlaneField sample_u0(const Grid2D& g) const {
        return sample_field(g, DomainTag::half_plane, [&](double a, double b) { return u0(a, b); });
    }
    BoundaryTrace sample_g0(const Grid1D& gx1, const Grid1D& gt) const {
        return sample_trace(gx1, gt, [&](double a, double t) { return g0(a, t); });
    }
    std::optional<TimeSeriesField> sample_f(const Grid2D& g, const Grid1D& gt) const {
        if (!forced()) return std::nullopt;
        std::vector<HalfPlaneField> s;
        for (int j = 0; j < gt.n; ++j) {
            double t = gt.node(j);
            s.push_back(sample_field(g, DomainTag::half_plane, [&](double a, double b) { return f(a, b, t); },
                                     kUnchecked));
        }
        return TimeSeriesField(gt, std::move(s));
    }
    CnSource cn_source() const {
        CnSource s;
        if (forced()) {
            s.space = [c = *this](double a, double b) { return c.f_space(a, b); };
            s.time = [c = *this](double t) { return c.f_time(t); };
        }
        return s;
    }
    TimeSeriesField cn_solve(const Grid2D& box, const Grid1D& times, const CnConfig& cfg) const {
        return crank_nicolson([this](double a, double b) { return u0(a, b); },
                              [this](double a, double t) { return g0(a, t); }, cn_source(), box, times, cfg);
    }
};

// Free Gaussian centred at (0, c2): g0 is its exact trace, so the IBVP solution is known.
inline IbvpCase gaussian_case(double c2 = 5, double w = 1, cplx amp = 1.0) {
    IbvpCase c;
    c.ic.order = 1;
    c.ic.c2 = c2;
    c.ic.w1 = c.ic.w2 = w;
    c.ic.coef = {amp};
    return c;
}

struct RandomCaseOptions {
    int order = 3;
    double amp = 1;
    bool boundary_bump = true;
    bool forcing = true;
};

inline IbvpCase random_ibvp_case(std::uint64_t seed, const RandomCaseOptions& o = {}) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    auto cz = [&] { return cplx(U(rng), U(rng)); };
    IbvpCase c;
    double c1 = 1.5 * U(rng), c2 = 5.5 + 0.5 * U(rng);
    double w1 = 1.25 + 0.15 * U(rng), w2 = 1.2 + 0.1 * U(rng);
    c.ic = random_hermite_gauss(rng, o.order, c1, c2, w1, w2, o.amp);
    c.beta = 1.0 + 0.3 * cz();
    if (o.boundary_bump) {
        c.bamp = 0.5 * o.amp * cz();
        c.bc = 2 * U(rng);
        c.bw = 1.2 + 0.2 * U(rng);
    }
    if (o.forcing) {
        c.famp = 0.5 * o.amp * cz();
        c.fc1 = 2 * U(rng);
        c.fc2 = 4.5 + 0.5 * U(rng);
        c.fw = 1.0 + 0.1 * U(rng);
        c.psi0 = cz();
        c.psi1 = cz();
        c.psi_omega = 2 + U(rng);
    }
    c.descriptor = "random seed=" + std::to_string(seed) + " order=" + std::to_string(o.order);
    return c;
}

}  // namespace halfplane
