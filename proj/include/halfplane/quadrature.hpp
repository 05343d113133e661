#pragma once

// Gauss-Legendre rules, composite Simpson, and a cubic Filon rule for
// integrals of e^{i w t} f(t) over uniformly sampled f with complex w.

#include "core.hpp"

#include <array>
#include <map>
#include <mutex>

namespace halfplane::quad {

struct Rule {
    std::vector<double> x, w;
};

inline Rule gauss_legendre(int n) {
    static std::mutex m;
    static std::map<int, Rule> memo;
    std::lock_guard<std::mutex> lk(m);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = r.w[n - 1 - i] = 2 / ((1 - x * x) * dp * dp);
    }
    if (n % 2 == 1) r.x[n / 2] = 0;
    memo.emplace(n, r);
    return r;
}

// n nodes on [a,b] split into panels of at most `panel` nodes; leftover nodes spread over
// the first panels.
inline Rule composite_gauss_legendre(double a, double b, int n, int panel) {
    Rule r;
    if (n <= 0) return r;
    int npan = (n + panel - 1) / panel;
    int base = n / npan, extra = n % npan;
    double h = (b - a) / npan;
    for (int p = 0; p < npan; ++p) {
        int np = base + (p < extra ? 1 : 0);
        Rule g = gauss_legendre(np);
        double lo = a + p * h, hi = lo + h;
        for (int i = 0; i < np; ++i) {
            r.x.push_back(0.5 * (hi - lo) * g.x[i] + 0.5 * (hi + lo));
            r.w.push_back(0.5 * (hi - lo) * g.w[i]);
        }
    }
    return r;
}

// Composite Simpson weights for n nodes (3/8 rule on the last three intervals when the
// interval count is odd; trapezoid when n = 2). All weights are positive and sum to (n-1) h.
inline std::vector<double> simpson_weights(int n, double h) {
    std::vector<double> w(n, 0.0);
    if (n < 2) return w;
    int m = n - 1;
    if (m == 1) {
        w[0] = w[1] = h / 2;
        return w;
    }
    int even = (m % 2 == 0) ? m : m - 3;
    for (int i = 0; i + 2 <= even; i += 2) {
        w[i] += h / 3;
        w[i + 1] += 4 * h / 3;
        w[i + 2] += h / 3;
    }
    if (even != m) {
        int i = even;
        w[i] += 3 * h / 8;
        w[i + 1] += 9 * h / 8;
        w[i + 2] += 9 * h / 8;
        w[i + 3] += 3 * h / 8;
    }
    return w;
}

inline std::vector<double> trapezoid_weights(int n, double h) {
    std::vector<double> w(n, h);
    w.front() = w.back() = h / 2;
    return w;
}

// E_m(z) = int_0^1 e^{z s} s^m ds for m = 0..3
inline std::array<cplx, 4> exp_moments(cplx z) {
    std::array<cplx, 4> E{};
    if (std::abs(z) < 1.0) {
        for (int m = 0; m < 4; ++m) {
            cplx s = 0, term = 1;
            for (int k = 0; k < 40; ++k) {
                s += term / double(m + k + 1);
                term *= z / double(k + 1);
                if (std::abs(term) < 1e-18) break;
            }
            E[m] = s;
        }
    } else {
        cplx ez = std::exp(z);
        E[0] = (ez - 1.0) / z;
        for (int m = 1; m < 4; ++m) E[m] = (ez - double(m) * E[m - 1]) / z;
    }
    return E;
}

// Monomial coefficients of the Lagrange basis on integer offsets o[0..deg].
// coef[s][m]: basis polynomial s evaluated as sum_m coef[s][m] sigma^m.
struct LagrangeBasis {
    int deg = 3;
    std::array<int, 4> off{};
    std::array<std::array<double, 4>, 4> coef{};
};

inline LagrangeBasis lagrange_basis(int first_offset, int deg) {
    LagrangeBasis b;
    b.deg = deg;
    for (int s = 0; s <= deg; ++s) b.off[s] = first_offset + s;
    for (int s = 0; s <= deg; ++s) {
        std::array<double, 4> poly{1, 0, 0, 0};
        double denom = 1;
        for (int r = 0; r <= deg; ++r) {
            if (r == s) continue;
            std::array<double, 4> next{};
            for (int m = 0; m < 3; ++m) {
                next[m + 1] += poly[m];
                next[m] -= poly[m] * b.off[r];
            }
            poly = next;
            denom *= double(b.off[s] - b.off[r]);
        }
        for (int m = 0; m <= deg; ++m) b.coef[s][m] = poly[m] / denom;
    }
    return b;
}

// Local cubic stencil for interval j of an n-node grid: nearest four nodes, clamped.
inline int stencil_start(int j, int n) {
    int deg = std::min(3, n - 1);
    int start = j - 1;
    if (start < 0) start = 0;
    if (start > n - 1 - deg) start = n - 1 - deg;
    return start;
}

// Filon rule for int_{t0}^{t0 + L} e^{i w t} f(t) dt with f sampled at t0 + j h, j = 0..n-1.
class Filon {
public:
    Filon(cplx omega, double t0, double h, int n) : omega_(omega), t0_(t0), h_(h), n_(n) {
        if (n < 2) throw ConfigError("Filon: need at least 2 samples");
        deg_ = std::min(3, n - 1);
        auto E = exp_moments(I * omega * h);
        for (int j = 0; j < n - 1; ++j) {
            int st = stencil_start(j, n);
            int key = st - j;
            if (have_[-key]) continue;
            local_[-key] = local_weights(lagrange_basis(key, deg_), E, 1.0);
            have_[-key] = true;
        }
    }

    // weights w_j with integral over the full grid ~= sum_j w_j f_j
    cvec weights() const {
        cvec w(n_);
        for (int j = 0; j < n_ - 1; ++j) add_interval(w, j, 1.0);
        return w;
    }

    // weights for the integral from t0 up to t0 + u (0 <= u <= (n-1) h)
    cvec weights_upto(double u) const {
        cvec w(n_);
        double r = u / h_;
        if (r < -1e-12 || r > (n_ - 1) * (1 + 1e-12)) throw ConfigError("Filon: upper limit out of range");
        int full = std::min(n_ - 1, static_cast<int>(std::floor(r + 1e-12)));
        for (int j = 0; j < full; ++j) add_interval(w, j, 1.0);
        double frac = r - full;
        if (full < n_ - 1 && frac > 1e-14) {
            int st = stencil_start(full, n_);
            auto b = lagrange_basis(st - full, deg_);
            auto E = exp_moments(I * omega_ * h_ * frac);
            auto lw = local_weights(b, E, frac);
            cplx ph = std::exp(I * omega_ * (t0_ + full * h_)) * h_;
            for (int s = 0; s <= deg_; ++s) w[st + s] += ph * lw[s];
        }
        return w;
    }

    // per-interval weights (deg+1 each) with the stencil start, for cumulative sums
    struct Interval {
        int start;
        std::array<cplx, 4> w;
    };
    Interval interval(int j) const {
        int st = stencil_start(j, n_);
        const auto& lw = local_[j - st];
        cplx ph = std::exp(I * omega_ * (t0_ + j * h_)) * h_;
        Interval iv{st, {}};
        for (int s = 0; s <= deg_; ++s) iv.w[s] = ph * lw[s];
        return iv;
    }
    int degree() const { return deg_; }

    // phases advanced by recurrence, re-seeded every 64 intervals
    template <class F>
    cplx integrate(const F& f) const {
        cplx acc = 0;
        cplx step = std::exp(I * omega_ * h_);
        cplx ph = 0;
        for (int j = 0; j < n_ - 1; ++j) {
            if (j % 64 == 0)
                ph = std::exp(I * omega_ * (t0_ + j * h_)) * h_;
            else
                ph *= step;
            int st = stencil_start(j, n_);
            const auto& lw = local_[j - st];
            cplx s = 0;
            for (int k = 0; k <= deg_; ++k) s += lw[k] * f[st + k];
            acc += ph * s;
        }
        return acc;
    }

private:
    // sum_m coef[s][m] frac^{m+1} E_m(z frac), with E already evaluated at z*frac
    static std::array<cplx, 4> local_weights(const LagrangeBasis& b, const std::array<cplx, 4>& E,
                                             double frac) {
        std::array<cplx, 4> lw{};
        for (int s = 0; s <= b.deg; ++s) {
            cplx acc = 0;
            double fp = frac;
            for (int m = 0; m <= b.deg; ++m) {
                acc += b.coef[s][m] * fp * E[m];
                fp *= frac;
            }
            lw[s] = acc;
        }
        return lw;
    }

    void add_interval(cvec& w, int j, double) const {
        auto iv = interval(j);
        for (int s = 0; s <= deg_; ++s) w[iv.start + s] += iv.w[s];
    }

    cplx omega_;
    double t0_, h_;
    int n_, deg_;
    std::array<std::array<cplx, 4>, 4> local_{};  // indexed by j - stencil start
    std::array<bool, 4> have_{};
};

}  // namespace halfplane::quad
