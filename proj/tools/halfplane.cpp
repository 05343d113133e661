// halfplane: command-line front end for the half-plane Schrodinger solvers and the verification suites.
//
// Exit codes: 0 ok, 2 configuration/input error, 3 numerical failure, 4 verification assertion failed.

#include <halfplane.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/Core>
#include <fftw3.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace halfplane;

namespace {

constexpr const char* kVersion = "0.1.0";

struct VerifyFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reads keys from a config object, echoing every value (defaults included) and
// rejecting keys nobody asked for.
class Section {
public:
    Section(const json& in, std::string name, Section* parent = nullptr, std::string key = {})
        : in_(in), name_(std::move(name)), parent_(parent), key_(std::move(key)) {
        if (!in_.is_object()) throw ConfigError(name_ + ": expected an object");
    }

    template <class T>
    T get(const std::string& key, T def) {
        seen_.insert(key);
        T v = def;
        if (in_.contains(key)) {
            try {
                v = in_.at(key).get<T>();
            } catch (const json::exception&) {
                throw ConfigError(name_ + "." + key + ": wrong type");
            }
        }
        echo_[key] = v;
        return v;
    }

    template <class T>
    T required(const std::string& key) {
        if (!in_.contains(key)) throw ConfigError(name_ + "." + key + " is required");
        return get<T>(key, T{});
    }

    Section sub(const std::string& key) {
        seen_.insert(key);
        static const json empty = json::object();
        return Section(in_.contains(key) ? in_.at(key) : empty, name_ + "." + key, this, key);
    }

    json finish() {
        for (auto it = in_.begin(); it != in_.end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError(name_ + ": unknown key '" + it.key() + "'");
        if (parent_) parent_->echo_[key_] = echo_;
        return echo_;
    }

private:
    const json& in_;
    std::string name_;
    Section* parent_;
    std::string key_;
    std::set<std::string> seen_;
    json echo_ = json::object();
};

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

std::string join_argv(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) s += (i ? " " : "") + std::string(argv[i]);
    return s;
}

struct Run {
    std::string command;
    fs::path out;
    json config = json::object();
    json seeds = json::array();
    std::vector<std::string> outputs;
    int threads = 1;

    fs::path file(const std::string& name) {
        outputs.push_back(name);
        return out / name;
    }

    void write_manifest(const std::string& argv_line) const {
        json m;
        m["command"] = command;
        m["argv"] = argv_line;
        m["config"] = config;
        m["seeds"] = seeds;
        m["threads"] = threads;
        m["versions"] = {{"halfplane", kVersion},
                         {"compiler", std::string(__VERSION__)},
                         {"fftw", std::string(fftw_version)},
                         {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                       "." + std::to_string(EIGEN_MINOR_VERSION)}};
        m["outputs"] = outputs;
        std::ofstream os(out / "manifest.json");
        if (!os) throw ConfigError("cannot write " + (out / "manifest.json").string());
        os << std::setw(2) << m << '\n';
    }
};

void make_dir(const fs::path& p) {
    std::error_code ec;
    fs::create_directories(p, ec);
    if (ec) throw ConfigError("cannot create '" + p.string() + "': " + ec.message());
}

// ---------------------------------------------------------------- config sections

Grid2D read_grid(Section s) {
    int n1 = s.get("n1", 128), n2 = s.get("n2", 128);
    double dx1 = s.get("dx1", 0.3125), dx2 = s.get("dx2", 0.2);
    s.finish();
    if (n1 < 4 || n2 < 4 || !(dx1 > 0) || !(dx2 > 0)) throw ConfigError("grid: need n >= 4 and dx > 0");
    return half_plane_grid(n1, dx1, n2, dx2);
}

struct TimeSpec {
    Grid1D data, out;
};

TimeSpec read_time(Section s) {
    double T = s.get("T", 1.0), dt = s.get("dt", 0.01);
    double odt = s.get("output_dt", dt);
    if (!(T > 0) || !(dt > 0) || !(odt > 0)) throw ConfigError("time: T, dt and output_dt must be positive");
    auto count = [](double span, double h, const char* what) {
        double r = span / h;
        long n = std::lround(r);
        if (n < 1 || std::abs(r - n) > 1e-9 * std::max(1.0, r))
            throw ConfigError(std::string("time: ") + what + " must divide evenly");
        return static_cast<int>(n);
    };
    int nt = count(T, dt, "T / dt"), no = count(T, odt, "T / output_dt");
    count(odt, dt, "output_dt / dt");
    s.finish();
    return {Grid1D(nt + 1, 0, dt), Grid1D(no + 1, 0, odt)};
}

UtmConfig read_utm(Section s) {
    UtmConfig c;
    c.K_max = s.get("K_max", c.K_max);
    c.n_k1 = s.get("n_k1", c.n_k1);
    c.n_contour = s.get("n_contour", c.n_contour);
    c.imag_fraction = s.get("imag_fraction", c.imag_fraction);
    c.panel = s.get("panel", c.panel);
    c.x2_pad = s.get("x2_pad", c.x2_pad);
    c.truncation_tol = s.get("truncation_tol", c.truncation_tol);
    c.compat_tol = s.get("compat_tol", c.compat_tol);
    c.check_contour = s.get("check_contour", c.check_contour);
    c.contour_tol = s.get("contour_tol", c.contour_tol);
    s.finish();
    c.validate();
    return c;
}

CnConfig read_cn(Section s) {
    CnConfig c;
    c.refine = s.get("refine", 4);
    c.dt = s.get("dt", c.dt);
    c.richardson = s.get("richardson", true);
    c.edge_tol = s.get("edge_tol", c.edge_tol);
    c.max_sweeps = s.get("max_sweeps", c.max_sweeps);
    c.sweep_tol = s.get("sweep_tol", c.sweep_tol);
    s.finish();
    c.validate();
    return c;
}

NlsConfig read_nls(Section s, const UtmConfig& utm) {
    NlsConfig c;
    c.p = s.get("p", c.p);
    c.sign = s.get("sign", c.sign);
    c.s = s.get("s", c.s);
    c.T = s.get("T", c.T);
    c.c_s = s.get("c_s", c.c_s);
    c.c_p = s.get("c_p", c.c_p);
    c.max_iter = s.get("max_iter", c.max_iter);
    c.fixpoint_tol = s.get("fixpoint_tol", c.fixpoint_tol);
    std::string path = s.get<std::string>("path", "superposition");
    if (path == "direct") c.path = LinearPath::direct;
    else if (path != "superposition") throw ConfigError("nls.path must be 'direct' or 'superposition'");
    s.finish();
    c.utm = utm;
    c.validate();
    return c;
}

// Problem data: a closed-form family (so the CN oracle can sample it exactly) or files.
struct Data {
    std::optional<IbvpCase> analytic;
    HalfPlaneField u0;
    BoundaryTrace g0;
    std::optional<TimeSeriesField> f;
};

Data read_data(Section s, const Grid2D& g, const Grid1D& gt, Run& run, double tol) {
    std::string kind = s.get<std::string>("kind", "gaussian");
    Data d;
    if (kind == "gaussian") {
        double c2 = s.get("c2", 5.0), w = s.get("w", 1.0);
        cplx amp(s.get("amp_re", 1.0), s.get("amp_im", 0.0));
        d.analytic = gaussian_case(c2, w, amp);
    } else if (kind == "random") {
        std::uint64_t seed = s.get<std::uint64_t>("seed", 1);
        RandomCaseOptions o;
        o.order = s.get("order", o.order);
        o.amp = s.get("amp", o.amp);
        o.boundary_bump = s.get("boundary_bump", o.boundary_bump);
        o.forcing = s.get("forcing", o.forcing);
        run.seeds.push_back(seed);
        d.analytic = random_ibvp_case(seed, o);
    } else if (kind == "files") {
        d.u0 = io::read_hpf(s.required<std::string>("u0"), tol);
        d.g0 = io::read_btr(s.required<std::string>("g0"), tol);
        s.finish();
        if (!(d.u0.grid == g)) throw ConfigError("data.u0: grid differs from the configured grid");
        if (!(d.g0.gt == gt) || !(d.g0.gx1 == g.gx1))
            throw ConfigError("data.g0: grids differ from the configured x1 grid and time step");
        return d;
    } else {
        throw ConfigError("data.kind must be 'gaussian', 'random' or 'files'");
    }
    s.finish();
    d.u0 = d.analytic->sample_u0(g);
    d.g0 = d.analytic->sample_g0(g.gx1, gt);
    d.f = d.analytic->sample_f(g, gt);
    return d;
}

void write_series(Run& run, const std::string& prefix, const TimeSeriesField& u) {
    std::ofstream os(run.file(prefix + "_times.csv"));
    os << "index,t\n";
    for (int j = 0; j < u.nt(); ++j) {
        char name[64];
        std::snprintf(name, sizeof name, "%s_%04d.hpf", prefix.c_str(), j);
        io::write_hpf(run.file(name).string(), u.slices[j]);
        os << j << ',' << io::fmt(u.gt.node(j)) << '\n';
    }
}

void write_inputs(Run& run, const Data& d) {
    io::write_hpf(run.file("u0.hpf").string(), d.u0);
    io::write_btr(run.file("g0.btr").string(), d.g0);
    if (d.f) write_series(run, "f", *d.f);
}

int common_threads(Section& top) { return configure_threads(top.get("threads", 0)); }

// ---------------------------------------------------------------- subcommands

void cmd_solve_linear(const std::string& config, Run& run) {
    json in = load_json(config);
    Section top(in, "config");
    run.threads = common_threads(top);
    run.out = top.get<std::string>("out", "solve-linear-out");
    Grid2D g = read_grid(top.sub("grid"));
    TimeSpec ts = read_time(top.sub("time"));
    UtmConfig utm = read_utm(top.sub("utm"));
    std::string path = top.get<std::string>("path", "superposition");
    if (path != "direct" && path != "superposition") throw ConfigError("path must be 'direct' or 'superposition'");
    Data d = read_data(top.sub("data"), g, ts.data, run, utm.truncation_tol);
    run.config = top.finish();
    make_dir(run.out);

    const TimeSeriesField* f = d.f ? &*d.f : nullptr;
    TimeSeriesField u = path == "direct" ? solve_utm_direct(d.u0, d.g0, f, ts.out, utm)
                                         : solve_by_superposition(d.u0, d.g0, f, ts.out, utm);
    write_inputs(run, d);
    write_series(run, "u", u);
}

void cmd_oracle(const std::string& config, Run& run) {
    json in = load_json(config);
    Section top(in, "config");
    run.threads = common_threads(top);
    run.out = top.get<std::string>("out", "oracle-out");
    Grid2D g = read_grid(top.sub("grid"));
    TimeSpec ts = read_time(top.sub("time"));
    CnConfig cn = read_cn(top.sub("cn"));
    Data d = read_data(top.sub("data"), g, ts.data, run, kDefaultTruncationTol);
    run.config = top.finish();
    make_dir(run.out);

    TimeSeriesField u;
    if (d.analytic) {
        u = d.analytic->cn_solve(g, ts.out, cn);
    } else {
        u = crank_nicolson(d.u0, d.g0, nullptr, ts.out, cn);
    }
    write_inputs(run, d);
    write_series(run, "u", u);
}

void cmd_solve_nls(const std::string& config, Run& run) {
    json in = load_json(config);
    Section top(in, "config");
    run.threads = common_threads(top);
    run.out = top.get<std::string>("out", "solve-nls-out");
    Grid2D g = read_grid(top.sub("grid"));
    TimeSpec ts = read_time(top.sub("time"));
    UtmConfig utm = read_utm(top.sub("utm"));
    NlsConfig nc = read_nls(top.sub("nls"), utm);
    Data d = read_data(top.sub("data"), g, ts.data, run, utm.truncation_tol);
    run.config = top.finish();
    if (d.f) throw ConfigError("solve-nls: data must be unforced (set data.forcing = false)");
    make_dir(run.out);

    NlsResult R = solve_nls(d.u0, d.g0, nc);
    {
        std::ofstream os(run.file("history.csv"));
        os << NlsResult::csv_header() << '\n';
        for (const auto& h : R.history) os << h.iter << ',' << io::fmt(h.delta) << ',' << io::fmt(h.rho) << '\n';
    }
    {
        std::ofstream os(run.file("summary.json"));
        json s = {{"T_star", R.T_star}, {"data_norm", R.data_norm}, {"residual", R.residual},
                  {"iterations", R.history.size()}, {"c_sp", nc.c_sp()}};
        os << std::setw(2) << s << '\n';
    }
    write_inputs(run, d);
    write_series(run, "u", R.u);
}

void cmd_norms(const std::string& field, const std::string& trace, double s, std::optional<double> T, double tol,
               const std::string& out, Run& run) {
    if (field.empty() == trace.empty()) throw ConfigError("norms: give exactly one of --field or --trace");
    NormReport r;
    if (!field.empty()) {
        HalfPlaneField f = io::read_hpf(field, tol);
        if (f.tag == DomainTag::whole_plane) r = field_report("hs_plane", f, s, hs_plane(f, s));
        else r = field_report("hs_half_plane", f, s, hs_half_plane_extension(f, s));
    } else {
        BoundaryTrace g = io::read_btr(trace, tol);
        double TT = T.value_or(g.T());
        if (g.gt.index_of(TT) < 0) throw ConfigError("norms: --T must be a node of the trace's time grid");
        BoundaryTrace h = g.head(g.gt.index_of(TT) + 1);
        if (max_abs(h.values) > 0) {
            r = bst_norm(h, s, TT);
        } else {
            r.name = "bst";
            r.s = s;
            r.n1 = h.gx1.n;
            r.nt = h.gt.n;
            r.dx1 = h.gx1.dx;
            r.dt = h.gt.dx;
        }
    }
    std::cout << NormReport::csv_header() << '\n' << r.csv_row() << '\n';
    run.config = {{"field", field}, {"trace", trace}, {"s", s}, {"T", T ? json(*T) : json(nullptr)}, {"tol", tol}};
    if (!out.empty()) {
        run.out = out;
        make_dir(run.out);
        std::ofstream os(run.file("norms.csv"));
        os << NormReport::csv_header() << '\n' << r.csv_row() << '\n';
    }
}

void cmd_verify(const std::string& suite, std::uint64_t seed, int level, bool nls, const std::string& out, Run& run) {
    if (suite != "all" && suite != "identities" && suite != "inequalities")
        throw ConfigError("verify: --suite must be all, identities or inequalities");
    SuiteConfig cfg;
    cfg.seed = seed;
    cfg.level = level;
    cfg.include_nls = nls;
    run.out = out;
    run.seeds.push_back(seed);
    run.config = {{"suite", suite}, {"seed", seed}, {"level", level}, {"include_nls", nls}, {"T", cfg.T},
                  {"s_values", cfg.s_values}};
    make_dir(run.out);
    std::vector<std::string> failures;
    if (suite != "inequalities") {
        SuiteResult R = run_identity_suite(cfg);
        write_records_csv(run.file("identities.csv").string(), R.records);
        failures.insert(failures.end(), R.failures.begin(), R.failures.end());
    }
    if (suite != "identities") {
        SuiteResult R = run_inequality_suite(cfg);
        write_records_csv(run.file("estimates.csv").string(), R.records);
        failures.insert(failures.end(), R.failures.begin(), R.failures.end());
    }
    if (!failures.empty()) {
        std::string msg = std::to_string(failures.size()) + " verification failure(s):";
        for (const auto& f : failures) msg += "\n  " + f;
        throw VerifyFailure(msg);
    }
}

// samples: CSV with header k1,k2_re,k2_im,t[,reflected]
void cmd_global_relation(const std::string& dir, const std::string& samples, const std::string& out, Run& run) {
    fs::path d(dir);
    HalfPlaneField u0 = io::read_hpf((d / "u0.hpf").string());
    BoundaryTrace g0 = io::read_btr((d / "g0.btr").string());
    auto read_series = [&](const std::string& prefix) -> std::optional<TimeSeriesField> {
        if (!fs::exists(d / (prefix + "_times.csv"))) return std::nullopt;
        std::vector<HalfPlaneField> s;
        for (int j = 0; j < g0.gt.n; ++j) {
            char name[64];
            std::snprintf(name, sizeof name, "%s_%04d.hpf", prefix.c_str(), j);
            if (!fs::exists(d / name))
                throw ConfigError(dir + ": series '" + prefix + "' must be written at every data time (output_dt = dt)");
            s.push_back(io::read_hpf((d / name).string(), kUnchecked));
        }
        return TimeSeriesField(g0.gt, std::move(s));
    };
    auto u = read_series("u");
    if (!u) throw ConfigError(dir + ": no solution series u_*.hpf");
    auto f = read_series("f");
    GlobalRelationInput in{&*u, &u0, &g0, f ? &*f : nullptr};

    std::ifstream is(samples);
    if (!is) throw ConfigError("cannot open samples '" + samples + "'");
    std::string line;
    std::getline(is, line);
    run.out = out;
    run.config = {{"solution", dir}, {"samples", samples}};
    make_dir(run.out);
    std::ofstream os(run.file("global_relation.csv"));
    os << "k1_re,k2_re,k2_im,t,residual_abs\n";
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> v;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) {
            try {
                v.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw ConfigError(samples + ":" + std::to_string(lineno) + ": malformed number");
            }
        }
        if (v.size() != 4 && v.size() != 5) throw ConfigError(samples + ":" + std::to_string(lineno) + ": expected 4 or 5 columns");
        bool refl = v.size() == 5 && v[4] != 0;
        cplx k2(v[1], v[2]);
        double r = std::abs(global_relation_residual(in, v[0], k2, v[3], refl));
        os << io::fmt(v[0]) << ',' << io::fmt(v[1]) << ',' << io::fmt(v[2]) << ',' << io::fmt(v[3]) << ','
           << io::fmt(r) << '\n';
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Half-plane linear and nonlinear Schrodinger solvers with estimate verification"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string config;
    auto* lin = app.add_subcommand("solve-linear", "forced linear IBVP (direct or superposition path)");
    lin->add_option("--config", config, "JSON config")->required();
    auto* nls = app.add_subcommand("solve-nls", "Picard iteration for the cubic (or higher odd power) NLS");
    nls->add_option("--config", config, "JSON config")->required();
    auto* orc = app.add_subcommand("oracle", "Crank-Nicolson reference run");
    orc->add_option("--config", config, "JSON config")->required();

    std::string field, trace, norms_out;
    double s = 0;
    std::optional<double> T;
    auto* nrm = app.add_subcommand("norms", "H^s norm of a field or B^s_T norm of a boundary trace");
    nrm->add_option("--field", field, "HPF1 file");
    nrm->add_option("--trace", trace, "BTR1 file");
    nrm->add_option("--s", s, "smoothness index")->required();
    nrm->add_option("--T", T, "time horizon for traces (default: the trace's own)");
    double norms_tol = kDefaultTruncationTol;
    nrm->add_option("--tol", norms_tol, "truncation tolerance at the artificial box edges");
    nrm->add_option("--out", norms_out, "also write norms.csv and a manifest here");

    std::string suite = "all", verify_out = "verify-out";
    std::uint64_t seed = 1;
    int level = 0;
    bool no_nls = false;
    auto* ver = app.add_subcommand("verify", "run the identity and inequality suites");
    ver->add_option("--suite", suite, "all | identities | inequalities");
    ver->add_option("--seed", seed, "master seed");
    ver->add_option("--level", level, "grid refinement level");
    ver->add_flag("--no-nls", no_nls, "skip the nonlinear records");
    ver->add_option("--out", verify_out, "output directory");

    std::string solution, samples, gr_out = "global-relation-out";
    auto* gr = app.add_subcommand("global-relation", "global-relation residuals of a stored solution");
    gr->add_option("--solution", solution, "directory written by solve-linear with output_dt = dt")->required();
    gr->add_option("--samples", samples, "CSV: k1,k2_re,k2_im,t[,reflected]")->required();
    gr->add_option("--out", gr_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    Run run;
    try {
        run.threads = configure_threads();
        if (*lin) run.command = "solve-linear", cmd_solve_linear(config, run);
        else if (*nls) run.command = "solve-nls", cmd_solve_nls(config, run);
        else if (*orc) run.command = "oracle", cmd_oracle(config, run);
        else if (*nrm) run.command = "norms", cmd_norms(field, trace, s, T, norms_tol, norms_out, run);
        else if (*ver) run.command = "verify", cmd_verify(suite, seed, level, !no_nls, verify_out, run);
        else if (*gr) run.command = "global-relation", cmd_global_relation(solution, samples, gr_out, run);
        if (!run.out.empty()) run.write_manifest(join_argv(argc, argv));
    } catch (const VerifyFailure& e) {
        if (!run.out.empty()) run.write_manifest(join_argv(argc, argv));
        std::cerr << "halfplane " << run.command << ": " << e.what() << '\n';
        return 4;
    } catch (const NumericalError& e) {
        std::cerr << "halfplane " << run.command << ": numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "halfplane " << run.command << ": " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "halfplane " << run.command << ": invalid data: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
