#include <random>

#include <benchmark/benchmark.h>

#include "confspec/bound_lab.hpp"
#include "confspec/conformal_volume.hpp"
#include "confspec/hersch_solver.hpp"
#include "confspec/spectral_solver.hpp"
#include "confspec/sphere_geometry.hpp"

using namespace confspec;

static void BM_MoebiusApply(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  Vec x(dim), xi(dim);
  for (int i = 0; i < dim; ++i) {
    x[i] = normal(rng);
    xi[i] = normal(rng);
  }
  x.normalize();
  xi *= 0.5 / xi.norm();
  for (auto _ : state) {
    x = moebius_apply(xi, x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_MoebiusApply)->Arg(3)->Arg(6);

static void BM_Assemble(benchmark::State& state) {
  const SurfaceMesh mesh = icosphere(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble(mesh));
  state.SetLabel(std::to_string(mesh.vertex_count()) + " vertices");
}
BENCHMARK(BM_Assemble)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_Eigenpairs(benchmark::State& state) {
  const SurfaceMesh mesh = icosphere(static_cast<int>(state.range(0)));
  const FemMatrices fem = assemble(mesh);
  for (auto _ : state) benchmark::DoNotOptimize(eigenpairs(fem, 6));
  state.SetLabel(std::to_string(mesh.vertex_count()) + " vertices");
}
BENCHMARK(BM_Eigenpairs)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_Renormalize(benchmark::State& state) {
  const SurfaceMesh mesh = icosphere(4);
  const ImmersionSamples phi = identity_immersion(mesh);
  Vec xi(3);
  xi << 0.3, -0.2, 0.5;
  const Eigen::MatrixXd moved = [&] {
    Eigen::MatrixXd m(3, mesh.vertex_count());
    for (int v = 0; v < mesh.vertex_count(); ++v) m.col(v) = moebius_apply(xi, Vec(phi.images().col(v)));
    return m;
  }();
  const DiscreteMeasure mu(moved, mesh.lumped_vertex_mass());
  for (auto _ : state) benchmark::DoNotOptimize(renormalize(mu));
}
BENCHMARK(BM_Renormalize)->Unit(benchmark::kMicrosecond);

static void BM_VolumeUnderMoebius(benchmark::State& state) {
  const SurfaceMesh mesh = icosphere(4);
  const ImmersionSamples phi = identity_immersion(mesh);
  Vec xi(3);
  xi << 0.0, 0.0, static_cast<double>(state.range(0)) / 1000.0;
  const BallPoint point(xi);
  for (auto _ : state) benchmark::DoNotOptimize(volume_under_moebius(mesh, phi, point));
}
BENCHMARK(BM_VolumeUnderMoebius)->Arg(0)->Arg(900)->Arg(999)->Unit(benchmark::kMillisecond);

static void BM_Psi(benchmark::State& state) {
  const SurfaceMesh mesh = icosphere(3);
  const ImmersionSamples phi = identity_immersion(mesh);
  const SpectralSummary s = eigenpairs(assemble(mesh), 4);
  const FirstEigenfunction f1 = choose_f1(s, mesh, phi);
  const SphericalCap cap(UnitVector::basis(3, 2), 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(psi(mesh, phi, f1.values, cap));
}
BENCHMARK(BM_Psi)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
