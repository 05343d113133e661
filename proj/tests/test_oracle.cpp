#include "helpers.hpp"

using namespace hp_test;

namespace {

// rel L2 error of a CN run against an exact solution at the last output time
template <class Exact>
double cn_error(const Fn2& u0, const Fn2& g0, const CnSource& src, const Grid2D& box, const Grid1D& times, int refine,
                Exact exact, double edge_tol = 1e-6) {
    CnConfig c;
    c.refine = refine;
    c.edge_tol = edge_tol;
    auto u = crank_nicolson(u0, g0, src, box, times, c);
    double t = times.last();
    auto ref = sample_field(box, DomainTag::half_plane, [&](double a, double b) { return exact(a, b, t); }, kUnchecked);
    return rel_l2(u.slices.back(), ref);
}

}  // namespace

TEST(GaussianReference, InitialSliceMassAndResidual) {
    EXPECT_LT(std::abs(gaussian_reference(0.3, 1.2, 0, 0, 1, 0.8) - std::exp(-(0.09 + 0.04) / 0.64)), 1e-15);
    Grid2D g{Grid1D::symmetric_grid(400, 0.1), Grid1D::symmetric_grid(400, 0.1)};
    auto mass = [&](double t) {
        double m = 0;
        for (int a = 0; a < 400; ++a)
            for (int b = 0; b < 400; ++b) m += std::norm(gaussian_reference(g.gx1.node(a), g.gx2.node(b), t, 0.5, -1, 1.2));
        return m * 0.01;
    };
    double m0 = mass(0);
    EXPECT_NEAR(m0, pi * 1.44 / 2, 1e-12);
    for (double t : {0.2, 0.7}) EXPECT_NEAR(mass(t) / m0, 1.0, 1e-12);
    double h = 2e-4;
    for (double t : {0.1, 0.5})
        for (double x1 : {-0.7, 0.4})
            for (double x2 : {0.2, 1.5}) {
                auto u = [&](double a, double b, double s) { return gaussian_reference(a, b, s, 0, 1, 1); };
                cplx ut = (u(x1, x2, t + h) - u(x1, x2, t - h)) / (2 * h);
                cplx lap = (u(x1 + h, x2, t) + u(x1 - h, x2, t) + u(x1, x2 + h, t) + u(x1, x2 - h, t) - 4.0 * u(x1, x2, t)) / (h * h);
                EXPECT_LT(std::abs(I * ut + lap), 1e-6);
            }
    EXPECT_THROW(gaussian_reference(0, 0, 0, 0, 0, 0), ConfigError);
}

TEST(CrankNicolson, ZeroDataGivesZero) {
    Grid2D box = half_plane_grid(32, 0.5, 32, 0.5);
    auto z2 = [](double, double) { return cplx(0); };
    auto u = crank_nicolson(z2, z2, CnSource{}, box, Grid1D(3, 0, 0.1));
    for (auto& s : u.slices) EXPECT_EQ(max_abs(s.values), 0.0);
}

TEST(CrankNicolson, FreeGaussianSecondOrder) {
    Grid2D box = half_plane_grid(64, 20.0 / 64, 64, 12.8 / 64);
    Grid1D times(6, 0, 0.05);
    auto exact = [](double a, double b, double t) { return gaussian_reference(a, b, t, 0, 5, 1); };
    Fn2 u0 = [&](double a, double b) { return exact(a, b, 0); };
    Fn2 g0 = [&](double a, double t) { return exact(a, 0, t); };
    double e1 = cn_error(u0, g0, {}, box, times, 1, exact);
    double e2 = cn_error(u0, g0, {}, box, times, 2, exact);
    double e4 = cn_error(u0, g0, {}, box, times, 4, exact);
    EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.2);
    EXPECT_NEAR(std::log2(e2 / e4), 2.0, 0.2);
}

TEST(CrankNicolson, ForcedManufacturedSecondOrder) {
    // u = (1 + t + i t^2) G with G a Gaussian, so f = i u_t + Lap u is explicit
    auto G = [](double a, double b) { return std::exp(-a * a - sqr(b - 4)); };
    auto lapG = [&](double a, double b) { return (4 * a * a + 4 * sqr(b - 4) - 4) * G(a, b); };
    auto amp = [](double t) { return cplx(1 + t, t * t); };
    auto exact = [&](double a, double b, double t) { return amp(t) * G(a, b); };
    CnSource src;
    src.general = [&](double a, double b, double t) { return I * cplx(1, 2 * t) * G(a, b) + amp(t) * lapG(a, b); };
    Grid2D box = half_plane_grid(48, 12.0 / 48, 48, 9.6 / 48);
    Grid1D times(5, 0, 0.1);
    Fn2 u0 = [&](double a, double b) { return exact(a, b, 0); };
    Fn2 g0 = [&](double a, double t) { return exact(a, 0, t); };
    // the exact solution vanishes at the edges; what reaches them is discretisation error
    double e1 = cn_error(u0, g0, src, box, times, 1, exact, 1e-3);
    double e2 = cn_error(u0, g0, src, box, times, 2, exact, 1e-3);
    double e4 = cn_error(u0, g0, src, box, times, 4, exact, 1e-3);
    EXPECT_NEAR(std::log2(e1 / e2), 2.0, 0.2);
    EXPECT_NEAR(std::log2(e2 / e4), 2.0, 0.2);
}

TEST(CrankNicolson, RichardsonBeatsPlainRuns) {
    Grid2D box = half_plane_grid(64, 20.0 / 64, 64, 12.8 / 64);
    Grid1D times(3, 0, 0.1);
    auto exact = [](double a, double b, double t) { return gaussian_reference(a, b, t, 0, 5, 1); };
    Fn2 u0 = [&](double a, double b) { return exact(a, b, 0); };
    Fn2 g0 = [&](double a, double t) { return exact(a, 0, t); };
    CnConfig c;
    c.refine = 2;
    c.richardson = true;
    auto u = crank_nicolson(u0, g0, {}, box, times, c);
    auto ref = sample_field(box, DomainTag::half_plane, [&](double a, double b) { return exact(a, b, 0.2); }, kUnchecked);
    EXPECT_LT(rel_l2(u.slices.back(), ref), 0.2 * cn_error(u0, g0, {}, box, times, 4, exact));
}

TEST(CrankNicolson, DiscreteMassConservedWithZeroBoundary) {
    Grid2D box = half_plane_grid(64, 0.3125, 64, 0.25);
    Fn2 u0 = [](double a, double b) { return cplx(std::exp(-a * a - sqr(b - 8)), 0); };
    Fn2 g0 = [](double, double) { return cplx(0); };
    for (double dt : {0.0025, 0.025}) {
        CnConfig c;
        c.dt = dt;
        Grid1D times(11, 0, 0.05);
        auto u = crank_nicolson(u0, g0, {}, box, times, c);
        double m0 = sqr(l2(u.slices.front().values));
        int steps = static_cast<int>(std::lround(0.5 / dt));
        double drift = std::abs(sqr(l2(u.slices.back().values)) / m0 - 1);
        EXPECT_LT(drift / steps, 1e-10) << dt;
    }
}

TEST(CrankNicolson, EdgeContaminationIsDetected) {
    Grid2D box = half_plane_grid(32, 0.25, 32, 0.25);
    Fn2 u0 = [](double a, double b) { return cplx(std::exp(-a * a - sqr(b - 4)), 0); };
    Fn2 g0 = [](double, double) { return cplx(0); };
    EXPECT_THROW(crank_nicolson(u0, g0, {}, box, Grid1D(5, 0, 0.5)), NumericalError);
}

TEST(CrankNicolson, SampledFormMatchesCallableForm) {
    Grid2D box = half_plane_grid(32, 0.5, 32, 0.4);
    Grid1D gt(21, 0, 0.005), times(5, 0, 0.025);
    auto c = gaussian_case(5, 1);
    auto a = crank_nicolson(c.sample_u0(box), c.sample_g0(box.gx1, gt), nullptr, times);
    CnConfig cfg;
    cfg.dt = 0.005;
    auto b = c.cn_solve(box, times, cfg);
    for (int j = 0; j < times.n; ++j) EXPECT_LT(rel_l2(a.slices[j], b.slices[j]), 1e-13);
}
