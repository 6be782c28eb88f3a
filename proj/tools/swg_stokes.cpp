// Command-line driver: convergence tables, cavity fields, patch checks.
//
// Exit codes: 0 ok, 1 internal error, 2 bad configuration, 3 bad input
// (mesh file, geometry, boundary data), 4 solver did not converge,
// 5 a verification (patch exactness, divergence bound) failed.

#include "swg/analysis.hpp"
#include "swg/cases.hpp"
#include "swg/error.hpp"
#include "swg/grid.hpp"
#include "swg/output.hpp"
#include "swg/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kInternal = 1, kConfig = 2, kInput = 3, kNoConvergence = 4, kVerify = 5 };

struct RunConfig {
    std::string case_name;
    int n = 0;
    std::vector<int> ns;
    double kappa = 4.0;
    std::string mode = "swg";
    std::optional<std::string> rule; ///< fd for uniform tables, else poly-deg2
    std::optional<double> tol; ///< 1e-10, or 1e-12 for the patch checks
    int maxit = 0;
    std::string mesh;
    double perturb = 0.0;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    bool dump_system = false;
};

class ConfigError : public swg::Error {
public:
    using swg::Error::Error;
};

std::string sci(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

void dump(const swg::SaddleSystem& sys, const fs::path& dir, const std::string& stem)
{
    swg::write_matrix_market(sys.matrix, dir / (stem + "_matrix.mtx"));
    std::ofstream out = swg::open_output(dir / (stem + "_rhs.txt"));
    char buf[64];
    for (double b : sys.rhs) {
        std::snprintf(buf, sizeof buf, "%.17g", b);
        out << buf << '\n';
    }
}

int report_solve(const swg::SolveReport& r)
{
    std::cout << "solver: iterations " << r.iterations << ", relative residual "
              << sci(r.relative_residual) << (r.converged ? "" : " (NOT converged)") << '\n';
    return r.converged ? kOk : kNoConvergence;
}

int run_table(const RunConfig& cfg, const swg::RunOptions& opt, const fs::path& dir)
{
    std::vector<int> ns = cfg.ns;
    if (ns.empty()) {
        ns = cfg.n > 0 ? std::vector<int>{cfg.n} : std::vector<int>{8, 16, 32, 64};
    }
    const swg::StokesCase c = swg::case_by_name(cfg.case_name);
    const swg::ConvergenceTable table = swg::convergence_table(c, ns, opt);

    const std::string stem = cfg.case_name + "_" + std::string(swg::to_string(opt.mode));
    {
        std::ofstream out = swg::open_output(dir / (stem + "_table.csv"));
        swg::write_table_csv(out, table);
    }
    {
        std::ofstream out = swg::open_output(dir / (stem + "_table_full.csv"));
        swg::write_table_csv_full(out, table);
    }
    swg::write_table_csv(std::cout, table);
    if (cfg.dump_system) {
        const swg::PolygonalMesh mesh = swg::case_mesh(c, ns.back(), opt);
        dump(swg::run_case(c, mesh, opt).system, dir, stem);
    }
    int status = kOk;
    for (const swg::ConvergenceRow& row : table.rows) {
        if (!row.report.converged) {
            std::cerr << "n=" << row.n << ": solver did not converge (relative residual "
                      << sci(row.report.relative_residual) << ")\n";
            status = kNoConvergence;
        }
    }
    return status;
}

int run_cavity(const RunConfig& cfg, const swg::RunOptions& opt, const fs::path& dir)
{
    const swg::StokesCase c = swg::cavity();
    const swg::PolygonalMesh mesh = swg::case_mesh(c, cfg.n > 0 ? cfg.n : 32, opt);
    const swg::CaseRun run = swg::run_case(c, mesh, opt);
    {
        std::ofstream out = swg::open_output(dir / "cavity.vtk");
        swg::write_vtk(out, mesh, run.solution);
    }
    {
        std::ofstream out = swg::open_output(dir / "cavity_traces.csv");
        swg::write_trace_csv(out, mesh, run.solution);
    }
    {
        std::ofstream out = swg::open_output(dir / "cavity_cells.csv");
        swg::write_cell_csv(out, mesh, run.solution);
    }
    if (cfg.dump_system) {
        dump(run.system, dir, "cavity");
    }
    const int status = report_solve(run.report);
    const double div = swg::divergence_residual(mesh, run.solution);
    std::cout << "divergence residual: " << sci(div) << '\n';
    if (status != kOk) {
        return status;
    }
    return div <= 1e-8 ? kOk : kVerify;
}

// Linear exactness on a generated or user-supplied mesh.
int run_patch(const RunConfig& cfg, const swg::RunOptions& opt, const fs::path& dir,
              const swg::PolygonalMesh& mesh, const std::string& stem)
{
    const swg::StokesCase c = swg::patch();
    const swg::CaseRun run = swg::run_case(c, mesh, opt);
    if (cfg.dump_system) {
        dump(run.system, dir, stem);
    }
    {
        std::ofstream out = swg::open_output(dir / (stem + ".vtk"));
        swg::write_vtk(out, mesh, run.solution);
    }
    {
        std::ofstream out = swg::open_output(dir / (stem + "_traces.csv"));
        swg::write_trace_csv(out, mesh, run.solution);
    }
    const int status = report_solve(run.report);
    double err = 0.0;
    for (const swg::Edge& e : mesh.edges()) {
        const swg::Vec2 x = c.velocity(e.midpoint);
        const auto k = static_cast<std::size_t>(e.id);
        err = std::max({err, std::abs(run.solution.u[k] - x.x), std::abs(run.solution.v[k] - x.y)});
    }
    for (double p : run.solution.p) {
        err = std::max(err, std::abs(p));
    }
    const bool pass = err <= 1e-9;
    std::cout << "patch test: " << (pass ? "PASS" : "FAIL") << " (max error " << sci(err) << ")\n";
    if (status != kOk) {
        return status;
    }
    return pass ? kOk : kVerify;
}

int run(const RunConfig& cfg)
{
    if (!(cfg.kappa > 0.0)) {
        throw ConfigError("--kappa must be positive");
    }
    if (cfg.tol && !(*cfg.tol > 0.0)) {
        throw ConfigError("--tol must be positive");
    }
    if (cfg.maxit < 0) {
        throw ConfigError("--maxit must be non-negative");
    }
    if (cfg.n < 0 || std::any_of(cfg.ns.begin(), cfg.ns.end(), [](int n) { return n < 1; })) {
        throw ConfigError("grid sizes must be positive");
    }
    if (cfg.n > 0 && !cfg.ns.empty()) {
        throw ConfigError("give either --n or --ns, not both");
    }
    swg::RunOptions opt;
    opt.kappa = cfg.kappa;
    opt.mode = swg::parse_mode(cfg.mode);
    const bool table = cfg.case_name == "case1" || cfg.case_name == "case2";
    opt.rule = swg::parse_load_rule(cfg.rule.value_or(table && cfg.perturb == 0.0 ? "fd" : "poly-deg2"));
    const bool exactness = cfg.case_name == "patch" || cfg.case_name == "mesh-file";
    opt.tol = cfg.tol.value_or(exactness ? 1e-12 : 1e-10);
    opt.maxit = cfg.maxit;
    opt.perturb = cfg.perturb;
    opt.seed = cfg.seed;
    if (opt.mode == swg::SystemMode::Fd && opt.perturb > 0.0) {
        throw ConfigError("--mode fd needs a uniform grid; drop --perturb");
    }

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);

    if (cfg.case_name == "case1" || cfg.case_name == "case2") {
        return run_table(cfg, opt, dir);
    }
    if (!cfg.ns.empty()) {
        throw ConfigError("--ns applies to case1 and case2 only");
    }
    if (cfg.case_name == "cavity") {
        return run_cavity(cfg, opt, dir);
    }
    if (cfg.case_name == "patch") {
        const swg::PolygonalMesh mesh =
            swg::case_mesh(swg::patch(), cfg.n > 0 ? cfg.n : 4, opt);
        return run_patch(cfg, opt, dir, mesh, "patch");
    }
    // mesh-file
    if (cfg.mesh.empty()) {
        throw ConfigError("--case mesh-file needs --mesh <path>");
    }
    const swg::PolygonalMesh mesh = swg::load_mesh(cfg.mesh);
    if (opt.mode == swg::SystemMode::Fd && !swg::match_uniform_grid(mesh)) {
        throw ConfigError("--mode fd needs a uniform rectangular grid");
    }
    return run_patch(cfg, opt, dir, mesh, "mesh");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Simplified weak Galerkin / finite difference Stokes solver"};
    app.require_subcommand(1);
    RunConfig cfg;
    CLI::App* sub = app.add_subcommand("run", "run one experiment");
    sub->add_option("--case", cfg.case_name, "case1 | case2 | cavity | patch | mesh-file")
        ->required()
        ->check(CLI::IsMember({"case1", "case2", "cavity", "patch", "mesh-file"}));
    sub->add_option("--n", cfg.n, "grid size (cavity default 32, patch default 4)");
    sub->add_option("--ns", cfg.ns, "grid sizes for a convergence table (default 8,16,32,64)")
        ->delimiter(',');
    sub->add_option("--kappa", cfg.kappa, "stabilization parameter")->capture_default_str();
    sub->add_option("--mode", cfg.mode, "system builder: swg | fd")->capture_default_str();
    sub->add_option("--rule", cfg.rule,
                    "load rule: poly-deg2 | simpson-mid | fd (default fd for uniform tables, else poly-deg2)");
    sub->add_option("--tol", cfg.tol, "relative residual tolerance (default 1e-10; 1e-12 for patch and mesh-file)");
    sub->add_option("--maxit", cfg.maxit, "iteration cap (0: 20 x system size)");
    sub->add_option("--mesh", cfg.mesh, "JSON mesh file for --case mesh-file");
    sub->add_option("--perturb", cfg.perturb, "vertex perturbation amplitude in [0, 0.3)");
    sub->add_option("--seed", cfg.seed, "perturbation seed")->capture_default_str();
    sub->add_option("--out-dir", cfg.out_dir, "output directory")->capture_default_str();
    sub->add_flag("--dump-system", cfg.dump_system, "write the system in Matrix Market format");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        return run(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    } catch (const swg::ModeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    } catch (const swg::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const swg::MeshError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const swg::GeometryError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const swg::CompatibilityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInput;
    } catch (const swg::SolverError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInternal;
    }
}
