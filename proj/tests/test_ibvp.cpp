#include "helpers.hpp"

using namespace hp_test;

namespace {

struct GaussianSetup {
    Grid2D grid = half_plane_grid(128, 0.3125, 128, 0.2);
    Grid1D gt{51, 0.0, 0.01};
    IbvpCase c = gaussian_case();
    HalfPlaneField u0 = c.sample_u0(grid);
    BoundaryTrace g0 = c.sample_g0(grid.gx1, gt);

    HalfPlaneField exact(double t) const { return c.ic.sample(grid, DomainTag::half_plane, t); }
};

const GaussianSetup& setup() {
    static GaussianSetup s;
    return s;
}

// smooth datum supported in (0, 2)
cplx pure_datum(double x, double t) { return std::exp(-x * x / 1.5) * bump02(t) * std::exp(I * 2.0 * t); }

}  // namespace

TEST(Ibvp, ZeroDataGivesZero) {
    Grid2D g = half_plane_grid(32, 0.5, 32, 0.4);
    Grid1D gt(11, 0, 0.05), times(3, 0, 0.25);
    auto u0 = HalfPlaneField::zeros(g, DomainTag::half_plane);
    auto g0 = BoundaryTrace::zeros(g.gx1, gt);
    UtmConfig cfg;
    for (auto& s : solve_utm_direct(u0, g0, nullptr, times, cfg).slices) EXPECT_EQ(max_abs(s.values), 0.0);
    for (auto& s : solve_by_superposition(u0, g0, nullptr, times, cfg).slices) EXPECT_EQ(max_abs(s.values), 0.0);
    auto gz = BoundaryTrace::zeros(g.gx1, Grid1D(41, 0, 0.05));
    for (auto& s : solve_pure_ibvp(gz, g, times, cfg).slices) EXPECT_EQ(max_abs(s.values), 0.0);
}

TEST(Ibvp, DirectReproducesFreeGaussian) {
    const auto& S = setup();
    Grid1D times(3, 0, 0.25);
    auto u = solve_utm_direct(S.u0, S.g0, nullptr, times, UtmConfig{});
    EXPECT_LT(rel_l2(u.slices[0], S.u0), 1e-6);
    for (int j = 1; j < 3; ++j) EXPECT_LT(rel_l2(u.slices[j], S.exact(times.node(j))), 1e-3);
}

TEST(Ibvp, SuperpositionReproducesFreeGaussian) {
    const auto& S = setup();
    Grid1D times(3, 0, 0.25);
    auto u = solve_by_superposition(S.u0, S.g0, nullptr, times, UtmConfig{});
    for (int j = 0; j < 3; ++j) EXPECT_LT(rel_l2(u.slices[j], S.exact(times.node(j))), 1e-3);
}

TEST(Ibvp, BoundaryRecovery) {
    // the Gaussian's trace is ~1e-6, so use data with an order-one boundary bump
    Grid2D g = half_plane_grid(128, 0.3125, 128, 0.2);
    Grid1D gt(51, 0, 0.01), times(3, 0, 0.25);
    RandomCaseOptions o;
    o.forcing = false;
    IbvpCase c = random_ibvp_case(7, o);
    auto u0 = c.sample_u0(g);
    auto g0 = c.sample_g0(g.gx1, gt);
    auto D = solve_utm_direct(u0, g0, nullptr, times, UtmConfig{});
    auto S = solve_by_superposition(u0, g0, nullptr, times, UtmConfig{});
    for (int j = 1; j < 3; ++j) {
        cvec ref = g0.time_slice(gt.index_of(times.node(j)));
        EXPECT_LT(rel_l2(dirichlet_trace(D.slices[j]), ref), 1e-4);
        EXPECT_LT(rel_l2(dirichlet_trace(S.slices[j]), ref), 1e-3);
    }
}

TEST(Ibvp, DirectTermIsCausal) {
    // changing g0 after t = 0.3 must not move the solution at t = 0.25
    const auto& S = setup();
    auto g1 = S.g0;
    for (int j1 = 0; j1 < g1.gx1.n; ++j1)
        for (int jt = 0; jt < S.gt.n; ++jt) {
            double t = S.gt.node(jt);
            if (t > 0.3) g1(j1, jt) += 0.2 * std::exp(-sqr(g1.gx1.node(j1))) * sqr(std::sin(pi * (t - 0.3) / 0.4));
        }
    Grid1D times(2, 0, 0.25);
    auto a = solve_utm_direct(S.u0, S.g0, nullptr, times, UtmConfig{});
    auto b = solve_utm_direct(S.u0, g1, nullptr, times, UtmConfig{});
    EXPECT_LT(rel_l2(b.slices[1], a.slices[1]), 1e-4);
}

TEST(Ibvp, RejectsIncompatibleData) {
    const auto& S = setup();
    auto g = S.g0;
    for (int j1 = 0; j1 < g.gx1.n; ++j1) g(j1, 0) += 0.1 * std::exp(-sqr(g.gx1.node(j1)));
    EXPECT_THROW(solve_utm_direct(S.u0, g, nullptr, Grid1D(2, 0, 0.25), UtmConfig{}), DomainError);
    EXPECT_THROW(solve_utm_direct(S.u0, S.g0, nullptr, Grid1D(2, 0, 0.255), UtmConfig{}), ConfigError);
}

TEST(PureIbvp, BoundaryLimitAndSupportCheck) {
    Grid2D g = half_plane_grid(128, 0.3125, 128, 0.2);
    Grid1D gt(201, 0, 0.01);
    auto gb = sample_trace(g.gx1, gt, pure_datum);
    Grid1D times(3, 0.5, 0.25);
    auto v = solve_pure_ibvp(gb, g, times, UtmConfig{});
    for (int j = 0; j < times.n; ++j)
        EXPECT_LT(rel_l2(dirichlet_trace(v.slices[j]), gb.time_slice(gt.index_of(times.node(j)))), 1e-3);
    auto bad = sample_trace(g.gx1, Grid1D(101, 0, 0.01), [](double x, double t) { return std::exp(-x * x) * t; });
    EXPECT_THROW(solve_pure_ibvp(bad, g, times, UtmConfig{}), DomainError);
}

TEST(PureIbvp, MatchesCrankNicolson) {
    Grid2D g = half_plane_grid(128, 0.3125, 128, 0.2);
    Grid1D gt(201, 0, 0.01), times(3, 0, 0.5);
    auto v = solve_pure_ibvp(sample_trace(g.gx1, gt, pure_datum), g, times, UtmConfig{});
    // the oracle's time error dominates at the default step, so step four times finer
    CnConfig cc;
    cc.refine = 4;
    cc.dt = 0.5 / 64;
    cc.richardson = true;
    auto w = crank_nicolson([](double, double) { return cplx(0); }, pure_datum, {}, g, times, cc);
    for (int j = 1; j < times.n; ++j) EXPECT_LT(rel_l2(v.slices[j], w.slices[j]), 1e-3) << times.node(j);
}

TEST(PureIbvp, SplitAddsUp) {
    Grid2D g = half_plane_grid(64, 0.625, 64, 0.4);
    auto gb = sample_trace(g.gx1, Grid1D(201, 0, 0.01), pure_datum);
    auto [v1, v2] = pure_ibvp_split(gb, g, 0.7, UtmConfig{});
    auto v = solve_pure_ibvp(gb, g, Grid1D(2, 0.7, 0.1), UtmConfig{});
    cvec sum = v1.values;
    for (size_t i = 0; i < sum.size(); ++i) sum[i] += v2.values[i];
    EXPECT_LT(rel_l2(sum, v.slices[0].values), 1e-12);
}

TEST(GlobalRelation, ZeroAndGaussianPoint) {
    Grid2D g = half_plane_grid(32, 0.5, 32, 0.4);
    Grid1D gt(11, 0, 0.05);
    std::vector<HalfPlaneField> z(gt.n, HalfPlaneField::zeros(g, DomainTag::half_plane));
    TimeSeriesField zs(gt, z);
    auto g0 = BoundaryTrace::zeros(g.gx1, gt);
    GlobalRelationInput zin{&zs, &z[0], &g0};
    EXPECT_EQ(global_relation_residual(zin, 0.3, cplx(0.2, -0.1), 0.5), cplx(0));

    auto G = gaussian_series(1, 0.5);
    GlobalRelationInput in{&G.u, &G.u0, &G.g0};
    EXPECT_LT(std::abs(global_relation_residual(in, 0.7, cplx(-0.4, -0.3), 0.5)), 1e-5);
    EXPECT_LT(std::abs(global_relation_residual(in, 0.7, cplx(-0.4, 0.3), 0.5, true)), 1e-5);
    EXPECT_THROW(global_relation_residual(in, 0.7, cplx(-0.4, 0.3), 0.5), DomainError);
    EXPECT_THROW(global_relation_residual(in, 0.7, cplx(-0.4, -0.3), 0.5025), ConfigError);
}

TEST(GlobalRelation, ForcedManufacturedSolution) {
    // u = (1 + t) G: the forcing term of the relation is exercised
    Grid2D g = half_plane_grid(128, 0.3125, 256, 0.1);
    Grid1D gt(51, 0, 0.01);
    auto G = [](double a, double b) { return std::exp(-a * a - sqr(b - 5)); };
    std::vector<HalfPlaneField> u, f;
    for (int j = 0; j < gt.n; ++j) {
        double t = gt.node(j);
        u.push_back(sample_field(g, DomainTag::half_plane, [&](double a, double b) { return cplx((1 + t) * G(a, b)); }));
        f.push_back(sample_field(g, DomainTag::half_plane, [&](double a, double b) {
            return I * G(a, b) + (1 + t) * (4 * a * a + 4 * sqr(b - 5) - 4) * G(a, b);
        }, kUnchecked));
    }
    TimeSeriesField us(gt, u), fs(gt, f);
    auto g0 = trace_on_boundary(us);
    GlobalRelationInput in{&us, &u[0], &g0, &fs};
    EXPECT_LT(std::abs(global_relation_residual(in, 0.5, cplx(0.3, -0.2), 0.5)), 1e-5);
    GlobalRelationInput unforced{&us, &u[0], &g0};
    EXPECT_GT(std::abs(global_relation_residual(unforced, 0.5, cplx(0.3, -0.2), 0.5)), 1e-2);
}

TEST(UtmConfig, Validation) {
    UtmConfig c;
    c.n_contour = 7;
    EXPECT_THROW(c.validate(), ConfigError);
    c = UtmConfig{};
    c.imag_fraction = 1.0;
    EXPECT_THROW(c.validate(), ConfigError);
}
