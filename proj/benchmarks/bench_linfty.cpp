#include "linfty/cochain_io.hpp"
#include "linfty/coder.hpp"
#include "linfty/cohomology.hpp"
#include "linfty/deformation.hpp"
#include "linfty/moduli.hpp"
#include "linfty/scalar_parse.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace linfty;

namespace {

const GradedSpace onebar2({0, -1, 1}, Grading::Z);

std::string I(int x) { return std::to_string(x); }

Coderivation general_odd(int k, const ParamList& p) {
    return parse_cochain("ps[" + I(k - 1) + ",1,0;1]*a + ps[" + I(k) + ",0,0;3]*b + ps[" + I(k - 2) + ",1,1;3]*c",
                         onebar2, p);
}

Coderivation dk(int k) {
    return parse_cochain("ps[" + I(k - 1) + ",1,0;1] + ps[" + I(k - 2) + ",1,1;3]*(1/2)", onebar2, make_params({}));
}

void BM_SelfBracketSymbolic(benchmark::State& state) {
    ParamList p = make_params({"a", "b", "c"});
    Coderivation d = general_odd(static_cast<int>(state.range(0)), p);
    for (auto _ : state) benchmark::DoNotOptimize(bracket(d, d));
}
BENCHMARK(BM_SelfBracketSymbolic)->DenseRange(2, 6);

void BM_CoboundaryMatrix(benchmark::State& state) {
    ParamList p = make_params({"lambda", "mu"});
    Coderivation d = parse_cochain("ps[2,1,0;1]*lambda + ps[1,1,1;3]*mu", onebar2, p);
    const int l = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(coboundary_matrix(d, l, 0));
}
BENCHMARK(BM_CoboundaryMatrix)->DenseRange(1, 6);

void BM_CohomologyBasis(benchmark::State& state) {
    Coderivation d = dk(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        for (int n = 1; n <= 6; ++n) benchmark::DoNotOptimize(cohomology_basis(d, n, 1));
    }
}
BENCHMARK(BM_CohomologyBasis)->DenseRange(2, 5);

void BM_Miniversal(benchmark::State& state) {
    Coderivation d = parse_cochain("ps[2,1,0;1] + ps[1,1,1;3]*2", onebar2, make_params({}));
    for (auto _ : state) benchmark::DoNotOptimize(miniversal(d, 6, 5));
}
BENCHMARK(BM_Miniversal)->Unit(benchmark::kMillisecond);

void BM_IdentifyBetaPoint(benchmark::State& state) {
    const SpaceProfile profile = SpaceProfile::make(ProfileTag::onebar2_x0);
    const std::map<std::string, Rational> b = {{"t3", 1}, {"t4", 1}, {"t5", 1}, {"s5", 2}, {"s6", 1}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(identify_deformation_point(profile, label_dk(7, 1, Rational(1, 2)), b));
    }
}
BENCHMARK(BM_IdentifyBetaPoint)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
