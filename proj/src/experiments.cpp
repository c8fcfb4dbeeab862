#include "subdiff/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace subdiff {

double optimal_grading(double alpha) { return (2.0 - alpha) / alpha; }

RunOutcome run_case(const RunConfig& config) {
    const ManufacturedCase mc = manufactured_case(config.example, config.alpha, config.forcing);
    const SpatialMesh mesh = mc.kind == MeshKind::interval
                                 ? SpatialMesh::interval(mc.domain_length, config.Ms)
                                 : SpatialMesh::unit_square(config.Ms);
    const TimeGrid grid = build_time_grid(1.0, config.N, config.r);

    NewtonConfig newton;
    newton.alpha = config.alpha;
    newton.tol = config.newton_tol;
    newton.max_iter = config.max_newton;

    const SolveResult sol = solve(mc.problem(), grid, mesh, newton);

    RunOutcome out;
    out.config = config;
    out.l2 = max_over_time(mesh, sol.history, grid, mc.u, mc.grad_u, NormTag::linf_time_l2);
    out.h1 = max_over_time(mesh, sol.history, grid, mc.u, mc.grad_u, NormTag::h1_semi);

    const QuadratureRule rule = norm_rule(mesh.kind());
    const double T = grid.T;
    out.l2_final = l2_error(mesh, sol.history.back(), [&](Point p) { return mc.u(p, T); }, rule);
    out.h1_final =
        h1_semi_error(mesh, sol.history.back(), [&](Point p) { return mc.grad_u(p, T); }, rule);

    for (const StepStats& st : sol.steps) {
        out.max_newton_iterations = std::max(out.max_newton_iterations, st.iterations);
        out.max_equivalence_gap = std::max(out.max_equivalence_gap, st.equivalence_gap);
        out.max_unbordered_residual = std::max(out.max_unbordered_residual, st.unbordered_residual);
    }
    out.final_level = sol.history.back();
    return out;
}

namespace {

int coupled_ms(int N, double alpha) {
    const int base = static_cast<int>(std::floor(std::pow(static_cast<double>(N), (2.0 - alpha) / 2.0)));
    return std::abs(alpha - 0.7) < 1e-12 ? 2 * base : base;
}

int coupled_n(int Ms, double alpha) {
    return static_cast<int>(std::floor(std::pow(static_cast<double>(Ms), 2.0 / (2.0 - alpha))));
}

std::vector<RunOutcome> run_points(const std::vector<RunConfig>& configs, int jobs) {
    std::vector<RunOutcome> outcomes(configs.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < configs.size(); ++i) outcomes[i] = run_case(configs[i]);
        return outcomes;
    }
    // work-stealing over sweep points; each point stays single-threaded
    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&]() {
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= configs.size()) break;
            try {
                outcomes[i] = run_case(configs[i]);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    const int threads = std::min<int>(jobs, static_cast<int>(configs.size()));
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return outcomes;
}

} // namespace

std::vector<ErrorRecord> sweep_time(const RunConfig& base, const std::vector<int>& Ns,
                                    bool couple_space, int jobs, std::vector<RunOutcome>* outcomes) {
    if (Ns.size() < 2) throw std::invalid_argument("sweep_time: need at least 2 values of N");
    if (!std::is_sorted(Ns.begin(), Ns.end())) throw std::invalid_argument("sweep_time: N list must ascend");

    std::vector<RunConfig> configs;
    for (int N : Ns) {
        RunConfig c = base;
        c.N = N;
        if (couple_space) c.Ms = coupled_ms(N, base.alpha);
        configs.push_back(c);
    }
    const std::vector<RunOutcome> runs = run_points(configs, jobs);

    std::vector<double> errors, resolutions;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        errors.push_back(runs[i].l2.value);
        resolutions.push_back(static_cast<double>(Ns[i]));
    }
    const auto orders = observed_orders(errors, resolutions);

    std::vector<ErrorRecord> records;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        ErrorRecord rec;
        rec.example = base.example;
        rec.alpha = base.alpha;
        rec.r = base.r;
        rec.N = configs[i].N;
        rec.Ms = configs[i].Ms;
        rec.norm = NormTag::linf_time_l2;
        rec.error = errors[i];
        if (i + 1 < runs.size()) rec.order = orders[i];
        records.push_back(rec);
    }
    if (outcomes) *outcomes = runs;
    return records;
}

std::vector<ErrorRecord> sweep_space(const RunConfig& base, const std::vector<int>& Mss,
                                     bool couple_time, int jobs, std::vector<RunOutcome>* outcomes) {
    if (Mss.size() < 2) throw std::invalid_argument("sweep_space: need at least 2 values of Ms");
    if (!std::is_sorted(Mss.begin(), Mss.end()))
        throw std::invalid_argument("sweep_space: Ms list must ascend");

    std::vector<RunConfig> configs;
    for (int Ms : Mss) {
        RunConfig c = base;
        c.Ms = Ms;
        if (couple_time) c.N = coupled_n(Ms, base.alpha);
        configs.push_back(c);
    }
    const std::vector<RunOutcome> runs = run_points(configs, jobs);

    std::vector<double> l2e, h1e, resolutions;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        l2e.push_back(runs[i].l2.value);
        h1e.push_back(runs[i].h1.value);
        resolutions.push_back(static_cast<double>(Mss[i]));
    }
    const auto l2o = observed_orders(l2e, resolutions);
    const auto h1o = observed_orders(h1e, resolutions);

    std::vector<ErrorRecord> records;
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < runs.size(); ++i) {
            ErrorRecord rec;
            rec.example = base.example;
            rec.alpha = base.alpha;
            rec.r = base.r;
            rec.N = configs[i].N;
            rec.Ms = configs[i].Ms;
            rec.norm = pass == 0 ? NormTag::l2_final_family : NormTag::h1_semi;
            rec.error = pass == 0 ? l2e[i] : h1e[i];
            if (i + 1 < runs.size()) rec.order = pass == 0 ? l2o[i] : h1o[i];
            records.push_back(rec);
        }
    }
    if (outcomes) *outcomes = runs;
    return records;
}

} // namespace subdiff
