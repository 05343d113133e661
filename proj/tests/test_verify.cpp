#include "helpers.hpp"

using namespace hp_test;

namespace {

SuiteConfig small_config() {
    SuiteConfig c;
    c.n_isometry = 2;
    c.n_isometry_times = 3;
    c.n_global_relation = 6;
    c.n_ibvp = 1;
    c.n_pure = 1;
    c.n_ivp = 2;
    c.n_forced = 2;
    c.n_1d = 2;
    c.n_laplace = 5;
    c.n_extension = 2;
    c.n_nls = 1;
    c.n_splitting = 2;
    return c;
}

}  // namespace

TEST(Records, ZeroOverZeroIsDropped) {
    std::vector<EstimateRatioRecord> r;
    push_record(r, "x", 0, 0, "zero", 1, {});
    EXPECT_TRUE(r.empty());
    push_record(r, "x", 1, 0, "unbounded", 1, {});
    ASSERT_EQ(r.size(), 1u);
    EXPECT_TRUE(std::isinf(r[0].ratio));
    push_record(r, "x", 0, 2, "zero lhs", 1, {});
    EXPECT_EQ(r.back().ratio, 0.0);
}

TEST(Records, CsvArity) {
    std::vector<EstimateRatioRecord> r;
    push_record(r, "thm1.2", 1, 2, "a, quoted descriptor", 1.25, GridMeta{1, 64, 64, 51, 0.5, 0.25, 0.01});
    auto count = [](const std::string& s) {
        int n = 0;
        bool q = false;
        for (char c : s) {
            if (c == '"') q = !q;
            n += c == ',' && !q;
        }
        return n;
    };
    EXPECT_EQ(count(r[0].csv_row()), count(EstimateRatioRecord::csv_header()));
}

TEST(Calibration, EmptySuiteRejectedAndMonotone) {
    EXPECT_THROW(calibrate_constants({}), ConfigError);
    std::vector<EstimateRatioRecord> a, b;
    push_record(a, "thm1.2", 1, 2, "", 1.25, {});
    b = a;
    push_record(b, "thm1.2", 3, 2, "", 1.25, {});
    push_record(b, "eq5.7", 1, 4, "", 1.25, {});
    auto ca = calibrate_constants(a), cb = calibrate_constants(b);
    EXPECT_DOUBLE_EQ(ca.c_s_emp, 0.75);
    EXPECT_GE(cb.c_s_emp, ca.c_s_emp);
    EXPECT_DOUBLE_EQ(cb.c_p_emp, 0.25);
}

TEST(Calibration, LargerSuiteMovesConstantLittle) {
    SuiteConfig c = small_config();
    std::vector<EstimateRatioRecord> a, b;
    c.n_ibvp = 2;
    forced_ibvp_records(c, a);
    c.n_ibvp = 4;
    forced_ibvp_records(c, b);
    double ra = calibrate_constants(a).c_s_emp, rb = calibrate_constants(b).c_s_emp;
    EXPECT_LT(std::abs(rb / ra - 1), 0.5);
}

TEST(Lemma23, QuadratureMatchesRadialClosedForm) {
    for (auto p : {Lemma23Point{1, 1, 0.5}, Lemma23Point{0.25, 4, 0.1}, Lemma23Point{4, 0.25, 0.9}}) {
        double q = lemma23_integral(p.k1, p.k2, p.beta), e = lemma23_exact(p.k1, p.k2, p.beta);
        EXPECT_NEAR(q / e, 1.0, 2e-3) << p.k1 << ' ' << p.k2 << ' ' << p.beta;
    }
    EXPECT_THROW(lemma23_integral(1, 1, 1.0), ConfigError);
    EXPECT_EQ(lemma23_integral(0, 0, 0.5), 0.0);
}

TEST(Lemma23, HomogeneousOfDegreeTwoBeta) {
    double b = 0.3;
    double a = lemma23_exact(0.5, 0.8, b), c = lemma23_exact(1.5, 2.4, b);
    EXPECT_NEAR(c / a, std::pow(3.0, 2 * b), 1e-10);
}

TEST(Laplace, BoundAndNearExtremizer) {
    double sp = std::sqrt(pi);
    EXPECT_LE(laplace_ratio(laplace_near_extremizer(6.0)), sp + 1e-6);
    EXPECT_GE(laplace_ratio(laplace_near_extremizer(6.0)), 0.9 * sp);
    EXPECT_LT(laplace_ratio(laplace_near_extremizer(1.0)), laplace_ratio(laplace_near_extremizer(6.0)));
    std::vector<EstimateRatioRecord> r;
    SuiteConfig c = small_config();
    laplace_records(c, r);
    for (auto& x : r) EXPECT_LE(x.ratio, sp + 1e-6) << x.data_descriptor;
}

TEST(IdentitySuite, SmallRunPasses) {
    auto R = run_identity_suite(small_config());
    for (auto& f : R.failures) ADD_FAILURE() << f;
    bool iso = false, gr = false, refl = false;
    for (auto& r : R.records) {
        iso |= r.estimate_id == "eq3.4";
        gr |= r.estimate_id == "eqA.3";
        refl |= r.estimate_id == "eqA.8";
        if (r.estimate_id == "eq3.4") {
            EXPECT_LT(std::abs(r.ratio - 1), 1e-10);
        }
    }
    EXPECT_TRUE(iso && gr && refl);
}

TEST(InequalitySuite, SmallRunCoversEveryEstimate) {
    SuiteConfig c = small_config();
    auto R = run_inequality_suite(c);
    for (auto& f : R.failures) ADD_FAILURE() << f;
    auto missing = missing_estimate_ids(R.records);
    ASSERT_EQ(missing.size(), 1u);
    EXPECT_EQ(missing[0], "eq3.4");
    for (auto& r : R.records) {
        EXPECT_TRUE(std::isfinite(r.ratio)) << r.estimate_id;
        EXPECT_GT(r.rhs_without_constant, 0) << r.estimate_id;
    }
}

TEST(InequalitySuite, BruteForceBranchAgreesWithSpectralNorm) {
    std::vector<EstimateRatioRecord> r;
    forced_1d_records(small_config(), r);
    std::map<std::string, double> spectral, brute;
    for (auto& x : r)
        if (x.estimate_id == "thm3.2b" && x.s == 0) {
            bool b = x.data_descriptor.find("brute-force") != std::string::npos;
            std::string key = x.data_descriptor.substr(0, x.data_descriptor.find(" brute-force"));
            (b ? brute : spectral)[key] = x.lhs;
        }
    ASSERT_FALSE(brute.empty());
    for (auto& [k, v] : brute) EXPECT_NEAR(v / spectral[k], 1.0, 0.05) << k;
}

TEST(Stability, IdenticalRecordsAreStable) {
    std::vector<EstimateRatioRecord> r;
    for (auto& id : grid_dependent_ids()) push_record(r, id, 1, 2, "", 1, {});
    for (auto& row : constant_stability(r, r)) {
        EXPECT_TRUE(row.ok);
        EXPECT_DOUBLE_EQ(row.factor, 1.0);
    }
}
