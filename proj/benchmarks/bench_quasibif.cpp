#include <benchmark/benchmark.h>

#include <cmath>

#include <quasibif/bifurcation.hpp>
#include <quasibif/gfunction.hpp>
#include <quasibif/shooting.hpp>
#include <quasibif/timemap.hpp>

using namespace quasibif;

namespace {

ProblemInstance instance(double k, std::string kind, std::map<std::string, double> params = {}) {
    return ProblemInstance(make_phi_k(k), make_f(FamilyDescriptor{std::move(kind), std::move(params), {}}));
}

const ProblemInstance& exp_problem() {
    static const ProblemInstance p = instance(3, "exp_minus_one");
    return p;
}

const ProblemInstance& gamma0_problem() {
    static const ProblemInstance p = instance(3, "power_sum", {{"p", 2}, {"q", 7}});
    return p;
}

}  // namespace

static void BM_TimeMap(benchmark::State& state) {
    const double tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(time_map(exp_problem(), 0.8, 1.0, tol).t_value);
}
BENCHMARK(BM_TimeMap)->Arg(6)->Arg(9)->Arg(12);

static void BM_TimeMapAtEndpoint(benchmark::State& state) {
    const double r = blow_up_radius(exp_problem(), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(time_map(exp_problem(), r, 1.0).t_value);
}
BENCHMARK(BM_TimeMapAtEndpoint);

static void BM_TimeMapDerivative(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(time_map_derivative(exp_problem(), 0.8, 1.0));
}
BENCHMARK(BM_TimeMapDerivative);

static void BM_GEval(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(g_eval(gamma0_problem(), 0.5).value());
}
BENCHMARK(BM_GEval);

static void BM_FindExtrema(benchmark::State& state) {
    GridSpec grid;
    grid.points = static_cast<int>(state.range(0));
    grid.threads = 1;
    for (auto _ : state) benchmark::DoNotOptimize(find_extrema(gamma0_problem(), grid).extrema.size());
}
BENCHMARK(BM_FindExtrema)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

static void BM_SolveR(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(solve_r(exp_problem(), 1.0, 1.0).r);
}
BENCHMARK(BM_SolveR)->Unit(benchmark::kMicrosecond);

static void BM_Shoot(benchmark::State& state) {
    ShootOptions options;
    options.step_tol = std::pow(10.0, -static_cast<double>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(shoot(exp_problem(), 0.8, 1.0, options).half_length);
}
BENCHMARK(BM_Shoot)->Arg(8)->Arg(10)->Arg(12);

static void BM_BuildDiagram(benchmark::State& state) {
    const GProfile profile = g_profile(gamma0_problem());
    LambdaGrid grid;
    grid.per_decade = static_cast<int>(state.range(0));
    grid.threads = 1;
    const DiagramSpec spec = make_diagram_spec(gamma0_problem(), 0.346);
    for (auto _ : state) benchmark::DoNotOptimize(build_diagram(spec, profile, grid).intervals.size());
}
BENCHMARK(BM_BuildDiagram)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
