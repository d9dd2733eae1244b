#include <benchmark/benchmark.h>

#include "gaq/model.hpp"
#include "gaq/parser.hpp"
#include "gaq/pipeline.hpp"

namespace {

using gaq::parse_expression;

void BM_ParseExpression(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(parse_expression("(a1*a2 + b1*c2)*(1 + b2*c2)/a2 - (c1*a2 + (1 + b1*c1)*c2/a1)^2"));
}
BENCHMARK(BM_ParseExpression);

// gcd of (g*x, g*y) with g, x, y dense in n variables.
void BM_PolyGcd(benchmark::State& state) {
  const char* vars[] = {"p", "q", "s", "t"};
  std::string g = "1", x = "2", y = "3";
  for (int i = 0; i < state.range(0); ++i) {
    const std::string v = vars[i];
    g += " + " + std::to_string(i + 2) + "*" + v + "^2 - " + v;
    x += " - " + v + "^3 + " + std::to_string(i + 1) + "*" + v;
    y += " + " + v + "^2*" + vars[(i + 1) % state.range(0)];
  }
  const gaq::Poly a = (parse_expression(g) * parse_expression(x)).num();
  const gaq::Poly b = (parse_expression(g) * parse_expression(y)).num();
  for (auto _ : state) benchmark::DoNotOptimize(gaq::gcd(a, b));
}
BENCHMARK(BM_PolyGcd)->DenseRange(1, 4);

void BM_RationalArithmetic(benchmark::State& state) {
  const auto f = parse_expression("(1 + b*c)/a + c/(a^2 + 1)");
  const auto g = parse_expression("(a - b)/(1 + b*c) - a*c");
  for (auto _ : state) benchmark::DoNotOptimize((f * g + f / g).differentiate("a"));
}
BENCHMARK(BM_RationalArithmetic);

void BM_Substitute(benchmark::State& state) {
  const auto law = parse_expression("c1*a2 + (1 + b1*c1)*c2/a1");
  const gaq::Bindings b{{"a1", parse_expression("a*x - y")}, {"b1", parse_expression("b/(1 + x^2)")},
                        {"c1", parse_expression("c + x*y")}};
  for (auto _ : state) benchmark::DoNotOptimize(law.substitute(b));
}
BENCHMARK(BM_Substitute);

void BM_Stage(benchmark::State& state, const char* model, gaq::Stage stage) {
  const gaq::ModelConfig config = gaq::parse_model(*gaq::builtin_model(model));
  for (auto _ : state) benchmark::DoNotOptimize(gaq::run_pipeline(config, stage));
}
BENCHMARK_CAPTURE(BM_Stage, principal_derive, "sl2r-principal", gaq::Stage::Derive)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Stage, principal, "sl2r-principal", gaq::Stage::Pipeline)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Stage, mock, "sl2r-mock", gaq::Stage::Pipeline)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Stage, discrete, "sl2r-discrete", gaq::Stage::Pipeline)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
