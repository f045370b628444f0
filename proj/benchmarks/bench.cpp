#include <benchmark/benchmark.h>

#include <pkgeom/actions.hpp>
#include <pkgeom/curvature.hpp>
#include <pkgeom/fibration.hpp>
#include <pkgeom/geometry.hpp>
#include <pkgeom/hamilton.hpp>

using namespace pkgeom;

namespace {
const ProfileFunction kProfile = ProfileFunction::linear(1.0);
const AmbientPoint kPoint{0.4, 1.3, 0.8, -0.2};
}  // namespace

static void BM_MetricEval(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(geometry::metric(kPoint, kProfile).m);
}
BENCHMARK(BM_MetricEval);

static void BM_CompatibilityResiduals(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(geometry::compatibility_residuals(kPoint, kProfile).max());
}
BENCHMARK(BM_CompatibilityResiduals);

static void BM_FieldBySolve(benchmark::State& state) {
    const auto tag = hamilton::HamiltonianTag::hamiltonian_h2();
    for (auto _ : state)
        benchmark::DoNotOptimize(hamilton::field_by_solve(kPoint, tag, kProfile));
}
BENCHMARK(BM_FieldBySolve);

static void BM_RicciLogdet(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(curvature::ricci_numeric_logdet(0.8, kProfile, 1e-3).zz);
}
BENCHMARK(BM_RicciLogdet);

static void BM_ScalarLeviCivita(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(curvature::scalar_numeric_full(kPoint, kProfile, 1e-2));
}
BENCHMARK(BM_ScalarLeviCivita);

static void BM_Lagrangianize(benchmark::State& state) {
    const fibration::BasePoint b(-2.0, 1.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(fibration::lagrangianize(b, kProfile, -1.0).u);
}
BENCHMARK(BM_Lagrangianize);

static void BM_DarbouxMatrix(benchmark::State& state) {
    const fibration::SectionHandle sec{};
    for (auto _ : state)
        benchmark::DoNotOptimize(fibration::darboux_matrix(kPoint, sec, kProfile)(0, 1));
}
BENCHMARK(BM_DarbouxMatrix);

static void BM_RecoverParameters(benchmark::State& state) {
    const actions::IsometryElement e{actions::MoebiusElement(1.0, 0.7, 0.0, 1.0), 1.1, false,
                                     false};
    const PointMap map = [&e](const AmbientPoint& p) { return actions::isometry_apply(e, p); };
    for (auto _ : state)
        benchmark::DoNotOptimize(actions::recover_parameters(map, kProfile).theta);
}
BENCHMARK(BM_RecoverParameters);

BENCHMARK_MAIN();
