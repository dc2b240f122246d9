// Command-line front end: run configuration comes from a sectioned key-value
// file, results are written as CSV / JSON with the resolved configuration
// embedded, so every artifact names the run that produced it.
//
// Exit codes: 0 success, 1 config error, 2 numerical non-convergence,
// 3 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "rhb/assembly.hpp"
#include "rhb/config.hpp"
#include "rhb/crtbp_seeds.hpp"
#include "rhb/integrate.hpp"
#include "rhb/solvers.hpp"
#include "rhb/spectral.hpp"
#include "rhb/systems.hpp"

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;
using namespace rhb;

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// CSV with LF endings and the config embedded as '# ' comment lines
class CsvWriter {
  public:
    CsvWriter(const fs::path& path, const Config& cfg)
        : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open " + path.string());
        std::istringstream raw(cfg.raw());
        std::string line;
        while (std::getline(raw, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            out_ << "# " << line << "\n";
        }
    }

    void row(const std::vector<std::string>& fields) {
        for (size_t i = 0; i < fields.size(); ++i)
            out_ << (i ? "," : "") << fields[i];
        out_ << "\n";
    }

  private:
    std::ofstream out_;
};

struct SystemBundle {
    SystemDef sys;
    std::optional<CRTBPParams> crtbp;
};

SystemBundle make_system(const Config& cfg) {
    const std::string name = cfg.get("system", "name");
    SystemBundle b;
    if (name == "duffing") {
        DuffingParams p;
        p.c = cfg.get_or("system", "c", p.c);
        p.k = cfg.get_or("system", "k", p.k);
        p.F = cfg.get_or("system", "F", p.F);
        const double alpha = cfg.get_or("system", "alpha", 1.0);
        const int degree = cfg.get_or("system", "degree", 3);
        p.nonlinear = {{alpha, degree}};
        b.sys = duffing_system(p);
    } else if (name == "rayleigh_plesset" ||
               name == "rayleigh_plesset_recast") {
        RayleighPlessetParams p;
        p.A = cfg.get_or("system", "A", p.A);
        p.B = cfg.get_or("system", "B", p.B);
        p.C = cfg.get_or("system", "C", p.C);
        p.D = cfg.get_or("system", "D", p.D);
        p.E = cfg.get_or("system", "E", p.E);
        b.sys = name == "rayleigh_plesset" ? rayleigh_plesset_system(p)
                                           : rayleigh_plesset_recast(p);
    } else if (name == "crtbp" || name == "crtbp_recast") {
        CRTBPParams p;
        p.mu = cfg.get_or("system", "mu", p.mu);
        const std::string pt = cfg.get_or("system", "point", std::string("L2"));
        if (pt == "L1")
            p.point = LibrationPoint::L1;
        else if (pt == "L2")
            p.point = LibrationPoint::L2;
        else
            throw ConfigError(0, "unknown libration point '" + pt + "'");
        b.crtbp = p;
        b.sys = name == "crtbp" ? crtbp_system(p) : crtbp_recast(p);
    } else {
        throw ConfigError(0, "unknown system '" + name + "'");
    }
    return b;
}

Mode parse_mode(const std::string& s) {
    if (s == "rhb") return Mode::RHB;
    if (s == "hdhb") return Mode::HDHB;
    if (s == "aft") return Mode::AFT;
    if (s == "custom") return Mode::CustomM;
    throw ConfigError(0, "unknown method mode '" + s + "'");
}

std::optional<PhaseAnchor> resolve_anchor(const Config& cfg,
                                          const SystemDef& sys) {
    const std::string a = cfg.get_or("method", "anchor", std::string("auto"));
    if (a == "none") return std::nullopt;
    if (a == "auto") {
        if (!sys.autonomous) return std::nullopt;
        // y-coordinate for the three-body families, first coordinate else
        return PhaseAnchor{sys.name.rfind("crtbp", 0) == 0 ? 1 : 0};
    }
    return PhaseAnchor{std::stoi(a)};
}

NewtonOptions solver_options(const Config& cfg) {
    NewtonOptions opt;
    opt.tol_residual = cfg.get_or("solver", "tol", opt.tol_residual);
    opt.max_iter = cfg.get_or("solver", "max_iter", opt.max_iter);
    return opt;
}

PhysicalityThresholds physicality_thresholds(const Config& cfg) {
    PhysicalityThresholds thr;
    thr.return_tol = cfg.get_or("solver", "return_tol", thr.return_tol);
    thr.defect_tol = cfg.get_or("solver", "defect_tol", thr.defect_tol);
    return thr;
}

FourierCoeffs read_coeffs_file(const std::string& path, int dim, int order_N) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open coefficients file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<double> vals;
        std::stringstream ss(line);
        std::string field;
        bool numeric = true;
        while (std::getline(ss, field, ',')) {
            char* end = nullptr;
            const double v = std::strtod(field.c_str(), &end);
            if (end == field.c_str()) {
                numeric = false;  // header row
                break;
            }
            vals.push_back(v);
        }
        if (numeric && !vals.empty()) rows.push_back(std::move(vals));
    }
    const int cols = 2 * order_N + 1;
    if (static_cast<int>(rows.size()) != dim)
        throw ConfigError(0, "coefficients file has " +
                                 std::to_string(rows.size()) + " rows, need " +
                                 std::to_string(dim));
    FourierCoeffs c(dim, order_N);
    for (int d = 0; d < dim; ++d) {
        if (static_cast<int>(rows[d].size()) != cols)
            throw ConfigError(0, "coefficients row " + std::to_string(d) +
                                     " has " + std::to_string(rows[d].size()) +
                                     " values, need " + std::to_string(cols));
        for (int j = 0; j < cols; ++j) c.c(d, j) = rows[d][j];
    }
    return c;
}

void write_coeffs_csv(const fs::path& path, const Config& cfg,
                      const FourierCoeffs& c) {
    CsvWriter out(path, cfg);
    std::vector<std::string> header = {"c0"};
    for (int n = 1; n <= c.order(); ++n) {
        header.push_back("cos" + std::to_string(n));
        header.push_back("sin" + std::to_string(n));
    }
    out.row(header);
    for (int d = 0; d < c.dim(); ++d) {
        std::vector<std::string> row;
        for (int j = 0; j < static_cast<int>(c.c.cols()); ++j)
            row.push_back(fmt17(c.c(d, j)));
        out.row(row);
    }
}

CRTBPFamily parse_family(const std::string& s) {
    if (s == "planar_lyapunov") return CRTBPFamily::PlanarLyapunov;
    if (s == "vertical_lyapunov") return CRTBPFamily::VerticalLyapunov;
    if (s == "halo") return CRTBPFamily::Halo;
    if (s == "dro") return CRTBPFamily::DRO;
    throw ConfigError(0, "unknown orbit family '" + s + "'");
}

struct InitialGuess {
    FourierCoeffs coeffs;
    std::optional<double> omega;          // family seeds carry their own
    std::optional<PhaseAnchor> anchor;    // likewise
};

InitialGuess initial_guess(const Config& cfg, const SystemBundle& b,
                           int order_N, const NewtonOptions& opt) {
    const std::string kind =
        cfg.get_or("initial", "kind", std::string("zero"));
    InitialGuess g;
    if (kind == "zero") {
        g.coeffs = FourierCoeffs(b.sys.dim, order_N);
    } else if (kind == "file") {
        g.coeffs = read_coeffs_file(cfg.get("initial", "file"), b.sys.dim,
                                    order_N);
    } else if (kind == "family") {
        if (!b.crtbp || b.sys.name != "crtbp_recast")
            throw ConfigError(0,
                              "initial kind 'family' needs system "
                              "crtbp_recast");
        const auto fam = parse_family(cfg.get("initial", "family"));
        auto s = family_seed(fam, *b.crtbp, order_N, opt);
        if (!s)
            throw std::runtime_error("family seed construction failed for '" +
                                     cfg.get("initial", "family") + "'");
        g.coeffs = s->coeffs;
        g.omega = s->omega;
        g.anchor = s->anchor;
    } else {
        throw ConfigError(0, "unknown initial kind '" + kind + "'");
    }
    return g;
}

std::string classification_name(Classification c) {
    switch (c) {
        case Classification::Physical: return "physical";
        case Classification::NonPhysical: return "non_physical";
        default: return "unverified";
    }
}

// induced infinity norm (max row sum); zero for an empty matrix
double inf_norm(const Mat& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().rowwise().sum().maxCoeff();
}

int cmd_solve(const Config& cfg, const fs::path& out_dir) {
    auto b = make_system(cfg);
    const int N = cfg.get_int("method", "order");
    const Mode mode = parse_mode(cfg.get("method", "mode"));
    const int custom_nodes = cfg.get_or("method", "nodes", 0);
    const auto opt = solver_options(cfg);

    auto guess = initial_guess(cfg, b, N, opt);
    const double omega = guess.omega ? *guess.omega
                                     : cfg.get_double("method", "omega");
    auto anchor = guess.anchor ? guess.anchor : resolve_anchor(cfg, b.sys);

    auto mcfg = make_method_config(mode, N, omega,
                                   std::max(b.sys.degree_phi, 1), custom_nodes);
    auto res = build_time_domain_residual(b.sys, mcfg, anchor);

    auto report = newton_solve(res, guess.coeffs, opt);
    HarmonicBasis basis(N, omega);
    classify(report, b.sys, basis, physicality_thresholds(cfg));

    json j;
    j["system"] = b.sys.name;
    j["mode"] = cfg.get("method", "mode");
    j["order"] = N;
    j["nodes"] = mcfg.nodes;
    j["omega"] = omega;
    j["converged"] = report.converged;
    j["iterations"] = report.iterations;
    j["residual_history"] = report.residual_history;
    j["classification"] = classification_name(report.classification);
    if (report.verification) {
        j["verification"] = {
            {"period_return_error", report.verification->period_return_error},
            {"defect_rms", report.verification->defect_rms},
            {"field_scale", report.verification->field_scale},
        };
    }
    if (b.sys.is_polynomial()) {
        // aliasing diagnostics: operator norm and the actual contribution
        // E_A h^' of the solution's higher harmonics
        double contrib = 0.0;
        if (res.ops().E_alias.size() > 0) {
            for (int d = 0; d < b.sys.dim; ++d) {
                const auto h = exact_poly_harmonics(
                    report.coeffs, b.sys.poly[d], basis, b.sys.degree_phi);
                contrib = std::max(
                    contrib, (res.ops().E_alias * h.high)
                                 .lpNorm<Eigen::Infinity>());
            }
        }
        j["aliasing"] = {
            {"e_alias_inf", inf_norm(res.ops().E_alias)},
            {"alias_contribution_inf", contrib},
        };
    }
    j["config"] = cfg.raw();

    {
        std::ofstream out(out_dir / "solve_report.json", std::ios::binary);
        out << j.dump(2) << "\n";
    }
    write_coeffs_csv(out_dir / "solve_coeffs.csv", cfg, report.coeffs);
    return report.converged ? 0 : 2;
}

int cmd_sweep(const Config& cfg, const fs::path& out_dir, std::uint64_t seed) {
    auto b = make_system(cfg);
    const int N = cfg.get_int("method", "order");
    const Mode mode = parse_mode(cfg.get("method", "mode"));
    const int custom_nodes = cfg.get_or("method", "nodes", 0);
    const auto opt = solver_options(cfg);

    const double lo = cfg.get_double("sweep", "omega_lo");
    const double hi = cfg.get_double("sweep", "omega_hi");
    const double step = cfg.get_double("sweep", "step");

    std::vector<SweepSeed> seeds;
    const std::string seed_kind =
        cfg.get_or("sweep", "seeds", std::string("multistart"));
    if (seed_kind == "families") {
        if (!b.crtbp || b.sys.name != "crtbp_recast")
            throw ConfigError(0, "sweep seeds 'families' needs crtbp_recast");
        seeds = crtbp_family_seeds(*b.crtbp, N, opt);
    } else if (seed_kind == "multistart") {
        const double omega0 = cfg.get_double("sweep", "seed_omega");
        const double mc_lo = cfg.get_or("sweep", "mc_lo", -1.0);
        const double mc_hi = cfg.get_or("sweep", "mc_hi", 1.0);
        const int trials = cfg.get_or("sweep", "mc_trials", 60);
        auto mcfg = make_method_config(mode, N, omega0,
                                       std::max(b.sys.degree_phi, 1),
                                       custom_nodes);
        auto res = build_time_domain_residual(b.sys, mcfg,
                                              resolve_anchor(cfg, b.sys));
        auto mc = multistart(res, mc_lo, mc_hi, trials, seed, opt);
        int k = 0;
        for (const auto& cl : mc.clusters) {
            SweepSeed s;
            s.label = "cluster_" + std::to_string(k++);
            s.omega = omega0;
            s.coeffs = cl.representative.coeffs;
            s.anchor = res.anchor();
            seeds.push_back(std::move(s));
        }
    } else if (seed_kind == "file") {
        SweepSeed s;
        s.label = "seed_0";
        s.omega = cfg.get_double("sweep", "seed_omega");
        s.coeffs = read_coeffs_file(cfg.get("initial", "file"), b.sys.dim, N);
        s.anchor = resolve_anchor(cfg, b.sys);
        seeds.push_back(std::move(s));
    } else {
        throw ConfigError(0, "unknown sweep seed kind '" + seed_kind + "'");
    }

    auto branches = frequency_sweep(b.sys, mode, N, custom_nodes, lo, hi,
                                    step, seeds, opt);

    CsvWriter out(out_dir / "sweep.csv", cfg);
    std::vector<std::string> header = {"branch_id", "label", "omega"};
    for (int d = 0; d < b.sys.dim; ++d)
        header.push_back("amplitude_" + std::to_string(d));
    header.push_back("coeff_file");
    out.row(header);
    for (size_t k = 0; k < branches.size(); ++k) {
        const std::string ref = "branch_" + std::to_string(k) + "_coeffs.csv";
        CsvWriter bc(out_dir / ref, cfg);
        std::vector<std::string> bh = {"omega"};
        for (int j = 0; j < b.sys.dim * (2 * N + 1); ++j)
            bh.push_back("c" + std::to_string(j));
        bc.row(bh);
        for (const auto& pt : branches[k].points) {
            std::vector<std::string> row = {std::to_string(k),
                                            branches[k].label,
                                            fmt17(pt.omega)};
            for (int d = 0; d < b.sys.dim; ++d)
                row.push_back(fmt17(pt.amplitude[d]));
            row.push_back(ref);
            out.row(row);

            std::vector<std::string> brow = {fmt17(pt.omega)};
            for (int d = 0; d < b.sys.dim; ++d)
                for (int j = 0; j < 2 * N + 1; ++j)
                    brow.push_back(fmt17(pt.coeffs.c(d, j)));
            bc.row(brow);
        }
    }
    return branches.empty() ? 2 : 0;
}

int cmd_montecarlo(const Config& cfg, const fs::path& out_dir,
                   std::uint64_t seed) {
    auto b = make_system(cfg);
    const int N = cfg.get_int("method", "order");
    const Mode mode = parse_mode(cfg.get("method", "mode"));
    const int custom_nodes = cfg.get_or("method", "nodes", 0);
    const double omega = cfg.get_double("method", "omega");
    const auto opt = solver_options(cfg);

    const int trials = cfg.get_int("montecarlo", "trials");
    const double lo = cfg.get_double("montecarlo", "lo");
    const double hi = cfg.get_double("montecarlo", "hi");
    const double cluster_tol =
        cfg.get_or("montecarlo", "cluster_tol", 1e-6);

    auto mcfg = make_method_config(mode, N, omega,
                                   std::max(b.sys.degree_phi, 1), custom_nodes);
    auto res = build_time_domain_residual(b.sys, mcfg,
                                          resolve_anchor(cfg, b.sys));
    auto mc = multistart(res, lo, hi, trials, seed, opt,
                         physicality_thresholds(cfg), cluster_tol);

    CsvWriter out(out_dir / "montecarlo.csv", cfg);
    std::vector<std::string> header = {"cluster_id", "hits", "classification",
                                       "residual"};
    for (int j = 0; j < b.sys.dim * (2 * N + 1); ++j)
        header.push_back("c" + std::to_string(j));
    out.row(header);
    for (size_t k = 0; k < mc.clusters.size(); ++k) {
        const auto& cl = mc.clusters[k];
        std::vector<std::string> row = {
            std::to_string(k), std::to_string(cl.hits),
            classification_name(cl.representative.classification),
            fmt17(cl.representative.residual_history.empty()
                      ? 0.0
                      : cl.representative.residual_history.back())};
        for (int d = 0; d < b.sys.dim; ++d)
            for (int j = 0; j < 2 * N + 1; ++j)
                row.push_back(fmt17(cl.representative.coeffs.c(d, j)));
        out.row(row);
    }
    return 0;
}

int cmd_aliasing(const Config& cfg, const fs::path& out_dir) {
    const int N = cfg.get_int("aliasing", "order");
    const int phi = cfg.get_int("aliasing", "degree");
    const int m_lo = cfg.get_or("aliasing", "m_lo", 2 * N + 1);
    const int m_hi = cfg.get_or("aliasing", "m_hi", (phi + 1) * N + 3);

    HarmonicBasis basis(N, 1.0);
    CsvWriter out(out_dir / "aliasing.csv", cfg);
    out.row({"M", "e_alias_inf", "predicted_nonzeros", "match"});
    for (int M = m_lo; M <= m_hi; ++M) {
        const auto grid = build_grid(basis, M);
        const auto ops = build_operators(basis, grid, phi);
        const Mat pred = predict_alias_entries(N, phi, M);
        int nonzeros = 0;
        for (int i = 0; i < pred.rows(); ++i)
            for (int j = 0; j < pred.cols(); ++j)
                if (pred(i, j) != 0.0) ++nonzeros;
        const bool match =
            ops.E_alias.size() == 0 ||
            (ops.E_alias - pred).lpNorm<Eigen::Infinity>() < 1e-10;
        out.row({std::to_string(M), fmt17(inf_norm(ops.E_alias)),
                 std::to_string(nonzeros), match ? "true" : "false"});
    }
    return 0;
}

int cmd_identity_check(const Config& cfg, const fs::path& out_dir,
                       std::uint64_t seed) {
    const int N = cfg.get_int("identity", "order");
    const int phi = cfg.get_int("identity", "degree");
    const int cases = cfg.get_or("identity", "cases", 200);
    const double tol = cfg.get_or("identity", "tol", 1e-10);

    HarmonicBasis basis(N, 1.0);
    CsvWriter out(out_dir / "identity.csv", cfg);
    out.row({"case", "M", "gap", "decomposition_gap", "pass"});
    bool all_pass = true;
    for (int c = 0; c < cases; ++c) {
        // random scalar polynomial of degree phi and random coefficients
        Polynomial poly(1);
        for (int d = 0; d <= phi; ++d) {
            double a = counter_uniform(seed, c, d, -1.0, 1.0);
            if (d == phi && std::abs(a) < 0.1) a = a < 0 ? -0.5 : 0.5;
            poly.add(a, {d});
        }
        FourierCoeffs x(1, N);
        for (int j = 0; j < 2 * N + 1; ++j)
            x.c(0, j) = counter_uniform(seed, c, 100 + j, -1.0, 1.0);

        const auto h = exact_poly_harmonics(x, poly, basis, phi);
        const double scale = 1.0 + h.low.lpNorm<Eigen::Infinity>();

        for (int M = 2 * N + 1; M <= (phi + 1) * N + 2; ++M) {
            const auto gap = conditional_identity_gap(x, poly, basis, phi, M);
            bool pass = gap.decomposition_gap <= tol * scale;
            if (M >= (phi + 1) * N + 1) pass = pass && gap.gap <= tol * scale;
            all_pass = all_pass && pass;
            out.row({std::to_string(c), std::to_string(M), fmt17(gap.gap),
                     fmt17(gap.decomposition_gap), pass ? "true" : "false"});
        }
    }
    return all_pass ? 0 : 2;
}

int cmd_propagate(const Config& cfg, const fs::path& out_dir) {
    auto b = make_system(cfg);
    const int N = cfg.get_int("method", "order");
    const auto opt = solver_options(cfg);

    auto guess = initial_guess(cfg, b, N, opt);
    const double omega = guess.omega ? *guess.omega
                                     : cfg.get_double("method", "omega");
    HarmonicBasis basis(N, omega);

    const int periods = cfg.get_or("propagate", "periods", 10);
    const int spp = cfg.get_or("propagate", "samples_per_period", 256);
    const double tol = cfg.get_or("propagate", "tol", 1e-12);

    const Vec x0 = eval_series(guess.coeffs, basis, 0.0);
    const double T = basis.period();
    auto traj = propagate(b.sys, x0, 0.0, periods * T, tol);

    CsvWriter out(out_dir / "trajectory.csv", cfg);
    std::vector<std::string> header = {"t"};
    for (int d = 0; d < b.sys.dim; ++d)
        header.push_back("x" + std::to_string(d));
    out.row(header);
    for (int i = 0; i <= periods * spp; ++i) {
        const double t = T * i / spp;
        const Vec s = traj.eval(t);
        std::vector<std::string> row = {fmt17(t)};
        for (int d = 0; d < b.sys.dim; ++d) row.push_back(fmt17(s[d]));
        out.row(row);
    }

    json j;
    j["system"] = b.sys.name;
    j["order"] = N;
    j["omega"] = omega;
    j["periods"] = periods;
    if (cfg.get_or("propagate", "keeping", true) && b.sys.dim >= 2) {
        const auto keep = orbit_keeping(
            b.sys, guess.coeffs, basis, periods,
            cfg.get_or("propagate", "drift_threshold", 0.05),
            cfg.get_or("propagate", "section_radius", 0.05));
        j["orbit_keeping"] = {
            {"periods_maintained", keep.periods_maintained},
            {"section_crossings", keep.section_crossings},
            {"drift_per_period", keep.drift_per_period},
        };
    }
    j["config"] = cfg.raw();
    std::ofstream rep(out_dir / "propagate_report.json", std::ios::binary);
    rep << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collocation harmonic-balance solver"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int threads = 0;

    app.add_option("--config", config_path, "run configuration file")
        ->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "random seed (overrides config)");
    app.add_option("--threads", threads, "worker thread count");

    auto* solve = app.add_subcommand("solve", "solve one configuration");
    auto* sweep = app.add_subcommand("sweep", "frequency sweep");
    auto* mc = app.add_subcommand("montecarlo", "multistart statistics");
    auto* aliasing = app.add_subcommand("aliasing", "aliasing-matrix table");
    auto* identity =
        app.add_subcommand("identity-check", "conditional identity check");
    auto* prop = app.add_subcommand("propagate", "trajectory export");
    for (auto* sub : {solve, sweep, mc, aliasing, identity, prop})
        sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        auto cfg = Config::parse_file(config_path);
        if (!app.count("--seed"))
            seed = static_cast<std::uint64_t>(cfg.get_or("run", "seed", 0));
        if (!app.count("--threads") && std::getenv("RHB_THREADS"))
            threads = std::atoi(std::getenv("RHB_THREADS"));
        if (threads > 0) Eigen::setNbThreads(threads);

        fs::path out(out_dir);
        fs::create_directories(out);

        if (solve->parsed()) return cmd_solve(cfg, out);
        if (sweep->parsed()) return cmd_sweep(cfg, out, seed);
        if (mc->parsed()) return cmd_montecarlo(cfg, out, seed);
        if (aliasing->parsed()) return cmd_aliasing(cfg, out);
        if (identity->parsed()) return cmd_identity_check(cfg, out, seed);
        if (prop->parsed()) return cmd_propagate(cfg, out);
        return 3;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
