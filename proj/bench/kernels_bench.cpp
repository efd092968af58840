// Parallel kernels against their serial reference paths.

#include <benchmark/benchmark.h>

#include "lohho/assembly.hpp"
#include "lohho/fespace.hpp"
#include "lohho/mesh_families.hpp"
#include "lohho/solver.hpp"

using namespace lohho;

namespace {

const MaterialParams material{1.0, 1e3};

Mesh bench_mesh(int dim, int n) { return dim == 2 ? structured_triangular_mesh(n) : cube_to_tet_mesh(n); }

void assemble_operator_bench(benchmark::State& state, Execution execution)
{
    const Mesh mesh = bench_mesh(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    for (auto _ : state) {
        auto op = assemble_operator(mesh, material, {10, execution});
        benchmark::DoNotOptimize(op.matrix.nonZeros());
    }
    state.counters["cells"] = static_cast<double>(mesh.num_cells());
}

void spmv_bench(benchmark::State& state, Execution execution)
{
    const Mesh mesh = bench_mesh(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const auto sys = assemble(mesh, material, {[](const Point&) { return Vec(1, 1, 1); }, {}});
    const Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(sys.size()), -1.0, 1.0);
    Eigen::VectorXd y;
    for (auto _ : state) {
        spmv(sys.matrix, x, y, execution);
        benchmark::DoNotOptimize(y.data());
    }
    state.counters["nnz"] = static_cast<double>(sys.nnz());
}

void reconstruct_bench(benchmark::State& state)
{
    const Mesh mesh = bench_mesh(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const DofMap dofs(mesh);
    const auto v = interpolate(mesh, dofs, [](const Point& x) { return Vec(x[1], -x[0], x[2]); }, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(reconstruct_all(mesh, v).data());
}

void sizes(benchmark::internal::Benchmark* b)
{
    b->Args({2, 64})->Args({2, 256})->Args({3, 8})->Args({3, 16})->Unit(benchmark::kMillisecond);
}

} // namespace

BENCHMARK_CAPTURE(assemble_operator_bench, parallel, Execution::parallel)->Apply(sizes);
BENCHMARK_CAPTURE(assemble_operator_bench, serial, Execution::serial)->Apply(sizes);
BENCHMARK_CAPTURE(spmv_bench, parallel, Execution::parallel)->Apply(sizes);
BENCHMARK_CAPTURE(spmv_bench, serial, Execution::serial)->Apply(sizes);
BENCHMARK(reconstruct_bench)->Apply(sizes);

BENCHMARK_MAIN();
