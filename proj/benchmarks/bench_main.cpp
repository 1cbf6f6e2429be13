#include <benchmark/benchmark.h>

#include "screw/coefficients.hpp"
#include "screw/criterion.hpp"
#include "screw/quadrature.hpp"
#include "screw/special_functions.hpp"
#include "screw/zero_free.hpp"
#include "screw/zeros.hpp"

using namespace screw;

namespace {

const ZeroMultiset& zeta_zeros() {
  static const ZeroMultiset z = ingest_zeros(SCREW_DATA_DIR "/zeta_zeros_10k.txt", ZeroFormat::plain_imag, true);
  return z;
}

void BM_Digamma(benchmark::State& st) {
  cplx w{0.3, 12.0};
  for (auto _ : st) {
    benchmark::DoNotOptimize(digamma(w));
    w += cplx{1e-9, 0.0};
  }
}
BENCHMARK(BM_Digamma);

void BM_LerchBracket(benchmark::State& st) {
  const double x = static_cast<double>(st.range(0)) / 1000.0;
  for (auto _ : st) benchmark::DoNotOptimize(lerch_bracket(x, cplx{0.25}));
}
BENCHMARK(BM_LerchBracket)->Arg(1)->Arg(400)->Arg(2000)->Arg(20000);

void BM_SieveVonMangoldt(benchmark::State& st) {
  const auto N = static_cast<std::uint64_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(sieve_von_mangoldt(N).entries().size());
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * N));
}
BENCHMARK(BM_SieveVonMangoldt)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMillisecond);

void BM_GFromZeros(benchmark::State& st) {
  const auto& z = zeta_zeros();
  double t = 1.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(g_from_zeros(t, z, 0.0));
    t += 1e-3;
  }
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * z.zeros().size()));
}
BENCHMARK(BM_GFromZeros);

void BM_GOnPanels(benchmark::State& st) {
  const auto& z = zeta_zeros();
  const auto& rule = quad::gk21();
  const auto panels = static_cast<std::size_t>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(g_on_panels(z, 0.0, 0.0, 1.0 / 1024, panels, rule.offsets).data());
  st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations() * panels * 21));
}
BENCHMARK(BM_GOnPanels)->Arg(64)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_PhiF(benchmark::State& st) {
  const auto spec = zeta_spec();
  const double t = static_cast<double>(st.range(0));
  phi_F(t, spec);  // build the coefficient table outside the loop
  for (auto _ : st) benchmark::DoNotOptimize(phi_F(t, spec));
}
BENCHMARK(BM_PhiF)->Arg(1)->Arg(10)->Arg(15);

void BM_ScanZeroSum(benchmark::State& st) {
  const auto z = zeta_zeros().first(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(scan_sign(z, 0.0, 0.0, 50.0, 0.01).min_value);
}
BENCHMARK(BM_ScanZeroSum)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
