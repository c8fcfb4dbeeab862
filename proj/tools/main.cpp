// Command-line driver: single runs, convergence sweeps, and the
// verification suites for the nonlocal subdiffusion solver.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "subdiff/experiments.hpp"
#include "subdiff/sparse_solver.hpp"
#include "subdiff/verify.hpp"

namespace {

using namespace subdiff;

constexpr int kExitSolverFailure = 1;
constexpr int kExitUsage = 2;

struct CliOptions {
    int example = 1;
    double alpha = 0.5;
    std::string grading = "1";
    int N = 64;
    int Ms = 512;
    std::vector<int> N_list;
    std::vector<int> Ms_list;
    std::string forcing = "pure";
    double newton_tol = 1e-12;
    int max_newton = 25;
    int jobs = 1;
    std::string output;
    bool couple_space = false;
    bool couple_time = false;
    bool zero_forcing = false;
};

double resolve_grading(const std::string& text, double alpha) {
    if (text == "optimal") return optimal_grading(alpha);
    std::size_t pos = 0;
    const double r = std::stod(text, &pos);
    if (pos != text.size()) throw CLI::ValidationError("--grading", "expected a number or 'optimal'");
    if (r < 1.0) throw CLI::ValidationError("--grading", "grading exponent must be >= 1");
    return r;
}

RunConfig make_config(const CliOptions& opt) {
    RunConfig config;
    config.example = opt.example;
    config.alpha = opt.alpha;
    config.r = resolve_grading(opt.grading, opt.alpha);
    config.N = opt.N;
    config.Ms = opt.Ms;
    config.forcing = opt.forcing == "reactive" ? ForcingMode::reactive : ForcingMode::pure;
    config.newton_tol = opt.newton_tol;
    config.max_newton = opt.max_newton;
    return config;
}

void write_records(const CliOptions& opt, const std::vector<ErrorRecord>& records) {
    if (opt.output.empty()) {
        write_csv(std::cout, records);
        return;
    }
    std::ofstream file(opt.output);
    if (!file) throw std::runtime_error("cannot open output file " + opt.output);
    write_csv(file, records);
}

int cmd_run(const CliOptions& opt) {
    const RunConfig config = make_config(opt);
    const ManufacturedCase mc = manufactured_case(config.example, config.alpha, config.forcing);

    const SpatialMesh mesh = mc.kind == MeshKind::interval
                                 ? SpatialMesh::interval(mc.domain_length, config.Ms)
                                 : SpatialMesh::unit_square(config.Ms);
    const TimeGrid grid = build_time_grid(1.0, config.N, config.r);
    NewtonConfig newton{config.alpha, config.newton_tol, config.max_newton};

    ProblemSpec problem;
    if (opt.zero_forcing) {
        problem.a = mc.a;
        problem.da = mc.da;
        problem.f = [](Point, double, double) { return 0.0; };
        problem.dfdu = [](Point, double, double) { return 0.0; };
    } else {
        problem = mc.problem();
    }
    const SolveResult sol = solve(problem, grid, mesh, newton);

    // exact solution of the zero-forcing diagnostic is identically zero
    const auto exact = [&](Point p, double t) { return opt.zero_forcing ? 0.0 : mc.u(p, t); };
    const auto grad_exact = [&](Point p, double t) {
        return opt.zero_forcing ? Vec2{0.0, 0.0} : mc.grad_u(p, t);
    };

    const std::string path = opt.output.empty() ? "solution.csv" : opt.output;
    std::ofstream file(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    const bool two_d = mesh.kind() == MeshKind::unit_square;
    file << (two_d ? "x,y,numerical,exact\n" : "x,numerical,exact\n");
    const std::vector<double>& U = sol.history.back();
    for (int i = 0; i < mesh.num_nodes(); ++i) {
        const Point p = mesh.node(i);
        const int dof = mesh.interior_index(i);
        const double value = dof >= 0 ? U[static_cast<std::size_t>(dof)] : 0.0;
        file << format_double(p.x) << ',';
        if (two_d) file << format_double(p.y) << ',';
        file << format_double(value) << ',' << format_double(exact(p, grid.T)) << '\n';
    }

    const TimeMaxError l2 = max_over_time(mesh, sol.history, grid, exact, grad_exact, NormTag::linf_time_l2);
    const TimeMaxError h1 = max_over_time(mesh, sol.history, grid, exact, grad_exact, NormTag::h1_semi);
    int iters = 0;
    for (const StepStats& st : sol.steps) iters = std::max(iters, st.iterations);
    std::cout << "example=" << config.example << " alpha=" << format_double(config.alpha)
              << " r=" << format_double(config.r) << " N=" << config.N << " Ms=" << config.Ms
              << " Linf_time_L2=" << format_double(l2.value) << " (argmax n=" << l2.argmax << ")"
              << " H1_semi=" << format_double(h1.value) << " max_newton_iter=" << iters
              << " wrote " << path << "\n";
    return 0;
}

int cmd_sweep_time(const CliOptions& opt) {
    const RunConfig base = make_config(opt);
    const auto records = sweep_time(base, opt.N_list, opt.couple_space, opt.jobs);
    write_records(opt, records);
    return 0;
}

int cmd_sweep_space(const CliOptions& opt) {
    const RunConfig base = make_config(opt);
    const auto records = sweep_space(base, opt.Ms_list, opt.couple_time, opt.jobs);
    write_records(opt, records);
    return 0;
}

int cmd_verify() {
    const std::vector<CheckResult> checks = run_all_checks();
    bool all = true;
    std::cout << "suite,status,detail\n";
    for (const CheckResult& c : checks) {
        std::cout << c.name << ',' << (c.passed ? "pass" : "FAIL") << ',' << c.detail << '\n';
        all = all && c.passed;
    }
    std::cout << (all ? "verification passed" : "verification FAILED") << " (" << checks.size()
              << " suites)\n";
    return all ? 0 : kExitSolverFailure;
}

void add_common(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--example", opt.example, "manufactured case id")->check(CLI::Range(1, 3));
    cmd->add_option("--alpha", opt.alpha, "fractional order in (0,1)")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), std::nextafter(1.0, 0.0)));
    cmd->add_option("-r,--grading", opt.grading, "grading exponent >= 1, or 'optimal'");
    cmd->add_option("--forcing", opt.forcing, "forcing mode")
        ->check(CLI::IsMember({"pure", "reactive"}));
    cmd->add_option("--newton-tol", opt.newton_tol, "Newton stopping tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-newton", opt.max_newton, "Newton iteration cap")->check(CLI::PositiveNumber);
    cmd->add_option("-o,--output", opt.output, "output path (default: stdout / solution.csv)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"L1 graded-mesh finite element solver for subdiffusion with a nonlocal diffusion coefficient"};
    app.require_subcommand(1);
    CliOptions opt;

    CLI::App* run = app.add_subcommand("run", "single solve; writes nodal solution.csv");
    add_common(run, opt);
    run->add_option("--N", opt.N, "time steps")->check(CLI::PositiveNumber);
    run->add_option("--Ms", opt.Ms, "cells per side")->check(CLI::Range(2, 1 << 20));
    run->add_flag("--zero-forcing", opt.zero_forcing, "diagnostic run with f = 0, u0 = 0");

    CLI::App* st = app.add_subcommand("sweep-time", "temporal convergence table (CSV)");
    add_common(st, opt);
    st->add_option("--N", opt.N_list, "ascending list of time-step counts")->required()->expected(2, 16);
    st->add_option("--Ms", opt.Ms, "cells per side")->check(CLI::Range(2, 1 << 20));
    st->add_flag("--couple-space", opt.couple_space, "example 3 coupling Ms = floor(N^{(2-a)/2}) (x2 for a=0.7)");
    st->add_option("--jobs", opt.jobs, "parallel sweep points")->check(CLI::PositiveNumber);

    CLI::App* ss = app.add_subcommand("sweep-space", "spatial convergence table (CSV)");
    add_common(ss, opt);
    ss->add_option("--Ms", opt.Ms_list, "ascending list of cell counts")->required()->expected(2, 16);
    ss->add_option("--N", opt.N, "time steps")->check(CLI::PositiveNumber);
    ss->add_flag("--couple-time", opt.couple_time, "example 3 coupling N = floor(Ms^{2/(2-a)})");
    ss->add_option("--jobs", opt.jobs, "parallel sweep points")->check(CLI::PositiveNumber);

    CLI::App* verify = app.add_subcommand("verify", "run the property/verification suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(opt);
        if (st->parsed()) return cmd_sweep_time(opt);
        if (ss->parsed()) return cmd_sweep_space(opt);
        if (verify->parsed()) return cmd_verify();
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const SolverError& e) {
        std::cerr << "solver failure: " << e.what() << "\n";
        return kExitSolverFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolverFailure;
    }
    return 0;
}
