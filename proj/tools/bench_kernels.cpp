// Times the serial reference implementations against the OpenMP kernels:
// grid evaluation, degenerate-block fill, and large ring products.
#include <chrono>
#include <cstdio>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pdmlayer/algebra_verify.hpp"
#include "pdmlayer/numerics.hpp"

using namespace pdm;

namespace {

template <typename F>
double time_of(F&& fn, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) fn();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count() / reps;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::printf("%-28s serial %9.4f ms   parallel %9.4f ms   speedup %5.2fx   %s\n", name,
              serial * 1e3, parallel * 1e3, serial / parallel,
              same ? "results identical" : "RESULTS DIFFER");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d (hardware concurrency: %u)\n", omp_get_max_threads(),
              std::thread::hardware_concurrency());
#else
  std::printf("built without OpenMP; parallel paths run serially\n");
#endif
  const ModelParams p{BigRat(1), BigRat(3, 2)};
  const QuadratureGrid grid = QuadratureGrid::build(2000, 512, p);

  {
    // product of two level-10 members: a few hundred monomials on 1M nodes
    const SymFunction a10 = psi_first_basis({5, 0}, p);
    const SymFunction b10 = psi_first_basis({2, 6}, p);
    const SymFunction fat{ring_mul(a10.value, b10.value)};
    std::vector<double> a, b;
    const double ts = time_of([&] { a = grid_values(fat, grid, p, Exec::serial); }, 5);
    const double tp = time_of([&] { b = grid_values(fat, grid, p, Exec::parallel); }, 5);
    report("grid_values (2000x512)", ts, tp, a == b);
  }
  {
    const DiffOperator R = build_operator(OperatorName::R, p);
    DegenerateBlock a, b;
    const double ts = time_of([&] { a = degenerate_block(10, R, grid, p, Exec::serial); }, 3);
    const double tp = time_of([&] { b = degenerate_block(10, R, grid, p, Exec::parallel); }, 3);
    report("degenerate_block N=10, R", ts, tp, a.matrix == b.matrix);
  }
  {
    // large exact ring product, the kind op_compose feeds on sixth-order work
    const DiffOperator CC = op_compose(build_operator(OperatorName::C, p),
                                       build_operator(OperatorName::C, p));
    RingElement big;
    for (const auto& [key, c] : CC.terms()) big += c;
    RingElement a, b;
    const double ts = time_of([&] { a = ring_mul_serial(big, big); }, 3);
    const double tp = time_of([&] { b = ring_mul(big, big); }, 3);
    std::printf("(ring operand: %zu terms)\n", big.size());
    report("ring_mul (CoC)-coeff^2", ts, tp, a == b);
  }
  {
    const DiffOperator C = build_operator(OperatorName::C, p);
    DiffOperator a;
    const double t1 = time_of([&] { a = op_compose(C, C); }, 3);
    std::printf("%-28s %9.4f ms (order %d, %zu terms)\n", "op_compose C o C", t1 * 1e3,
                a.order(), a.term_count());
  }
  return 0;
}
