#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pdmlayer/numerics.hpp"
#include "pdmlayer/parafermion.hpp"

using namespace pdm;

namespace {
const ModelParams kP11{BigRat(1), BigRat(1)};

double binom_real(double a, int n) {
  double r = 1;
  for (int i = 1; i <= n; ++i) r *= (a + i) / i;
  return r;
}
}  // namespace

TEST_CASE("jacobi_poly values") {
  CHECK(jacobi_poly(0, 0.3, 1.7, -0.2) == 1.0);
  // P_n(1) = binom(n+a, n)
  for (int n = 0; n <= 5; ++n)
    CHECK(jacobi_poly(n, 0.5, 2.0, 1.0) == doctest::Approx(binom_real(0.5, n)).epsilon(1e-12));
  CHECK_THROWS_AS(jacobi_poly(2, -1.0, 0.0, 0.5), ParamOutOfRange);
  CHECK_THROWS_AS(jacobi_poly(2, 0.0, -1.5, 0.5), ParamOutOfRange);

  // orthogonality of P_1 and P_2 for (a,b) = (1/2, 1) under (1-t)^a (1+t)^b;
  // substitute t = 1 - 2v^2 so the weight's square root is handled exactly
  // and the integrand is polynomial in v
  std::vector<double> nodes, weights;
  gauss_legendre(64, nodes, weights);
  double acc = 0;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double v = (nodes[i] + 1) / 2;
    const double t = 1 - 2 * v * v;
    acc += (weights[i] / 2) * (4 * v) * std::sqrt(2.0) * v * (1 + t) *
           jacobi_poly(1, 0.5, 1, t) * jacobi_poly(2, 0.5, 1, t);
  }
  CHECK(std::fabs(acc) < 1e-12);

  // exact coefficients agree with the recurrence evaluation
  const UniPoly p3 = jacobi_poly_exact(3, BigRat(1, 2), 2);
  for (double t : {-0.7, 0.0, 0.4, 1.0}) {
    double v = 0, tp = 1;
    for (int d = 0; d <= p3.degree(); ++d, tp *= t) v += to_double(p3.coeff(d)) * tp;
    CHECK(v == doctest::Approx(jacobi_poly(3, 0.5, 2, t)).epsilon(1e-13));
  }
}

TEST_CASE("grid invariant: integral of sech^2 matches pi/q^2") {
  for (const auto& q : {BigRat(1), BigRat(2)}) {
    const ModelParams p{q, BigRat(1)};
    const QuadratureGrid g = QuadratureGrid::build(200, 64, p);
    const SymFunction sech2{RingElement::cosh_pow(Exponent(-2))};
    const SymFunction one{RingElement::one()};
    const double v = inner_product(sech2, one, g, p);
    const double expect = M_PI / to_double(q * q);
    CHECK(std::fabs(v - expect) < 1e-12);
    for (double w : g.x_weights) CHECK(w > 0);
    for (double w : g.y_weights) CHECK(w > 0);
  }
  CHECK_THROWS_AS(QuadratureGrid::build(8, 64, kP11), ParamOutOfRange);
}

TEST_CASE("psi examples and boundary behavior") {
  // (n,l) = (0,0): single monomial tanh^k sech^2 cos(qy)
  const SymFunction psi00 = psi_first_basis({0, 0}, kP11);
  REQUIRE(psi00.value.size() == 1);
  const auto& [key, coeff] = *psi00.value.terms().begin();
  CHECK(key.s == Exponent(1));
  CHECK(key.c == Exponent(-3));
  CHECK(key.cos_e == 1);
  CHECK(key.sin_e == 0);

  // vanishes at x -> 0 and y = +-pi/(2q), for integer and non-integer k
  for (const auto& k : {BigRat(1), BigRat(3, 2)}) {
    const ModelParams p{BigRat(1), k};
    for (const FirstBasisLabel lb : {FirstBasisLabel{0, 0}, {1, 2}, {0, 3}}) {
      const SymFunction psi = psi_first_basis(lb, p);
      CHECK(std::fabs(psi.value.evaluate(1e-8, 0.3, 1.0, to_double(k))) < 1e-6);
      CHECK(std::fabs(psi.value.evaluate(0.8, M_PI / 2, 1.0, to_double(k))) < 1e-12);
      CHECK(std::fabs(psi.value.evaluate(0.8, -M_PI / 2, 1.0, to_double(k))) < 1e-12);
    }
  }

  // the unphysical partner chi_bar_0 ~ sin(qy) fails the y boundary condition
  const SymFunction cb = chi_bar(0);
  CHECK(std::fabs(cb.value.evaluate(0.8, M_PI / 2, 1.0, 1.0)) == doctest::Approx(1.0));
}

TEST_CASE("inner products: parity zero, Jacobi orthogonality, positivity") {
  const QuadratureGrid g = QuadratureGrid::build(200, 64, kP11);
  const SymFunction a = psi_first_basis({0, 0}, kP11);
  const SymFunction b = psi_first_basis({0, 1}, kP11);
  CHECK(std::fabs(inner_product(a, b, g, kP11)) < 1e-12);  // odd in y
  const SymFunction c = psi_first_basis({1, 0}, kP11);
  CHECK(std::fabs(inner_product(a, c, g, kP11)) < 1e-8);   // Jacobi orthogonality
  CHECK(inner_product(a, a, g, kP11) > 0);
}

TEST_CASE("eigenchecks") {
  const QuadratureGrid g = QuadratureGrid::build(200, 64, kP11);
  const DiffOperator H = build_operator(OperatorName::H, kP11);
  const DiffOperator L = build_operator(OperatorName::L, kP11);
  const SymFunction psi00 = psi_first_basis({0, 0}, kP11);

  CHECK(eigencheck_symbolic(psi00, H, PolyQK::q(2) * BigRat(6)));
  CHECK(eigencheck(psi00, H, 6.0, g, kP11) < 1e-10);

  const SymFunction psi12 = psi_first_basis({1, 2}, kP11);
  CHECK(eigencheck(psi12, L, 9.0, g, kP11) < 1e-10);
  CHECK(eigencheck_symbolic(psi12, L, PolyQK::q(2) * BigRat(9)));

  // wrong eigenvalue control
  CHECK(eigencheck(psi00, H, 7.0, g, kP11) > 1e-3);

  // symbolic path at fractional coupling
  const ModelParams ph{BigRat(1), BigRat(3, 2)};
  const SymFunction psi = psi_first_basis({2, 1}, ph);
  const BigRat E = energy(5, ph);
  CHECK(eigencheck_symbolic(psi, build_operator(OperatorName::H, ph),
                            PolyQK::q(2) * BigRat(E / (ph.q * ph.q))));
}

TEST_CASE("degenerate blocks") {
  const QuadratureGrid g = QuadratureGrid::build(200, 64, kP11);
  // N = 0 with R: the 1x1 zero matrix
  const DegenerateBlock b0 = degenerate_block(0, build_operator(OperatorName::R, kP11), g, kP11);
  REQUIRE(b0.matrix.size() == 1);
  CHECK(std::fabs(b0.matrix[0][0]) < 1e-8);

  // N = 4 with L: diag(25, 9, 1) in the (0,4), (1,2), (2,0) ordering
  const DegenerateBlock bl = degenerate_block(4, build_operator(OperatorName::L, kP11), g, kP11);
  REQUIRE(bl.basis.size() == 3);
  CHECK(bl.basis[0].l == 4);
  CHECK(bl.basis[2].n == 2);
  const double expect[3] = {25, 9, 1};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::fabs(bl.matrix[i][j] - (i == j ? expect[i] : 0.0)) < 1e-8);

  // N = 4 with R: symmetric, eigenvalues {0, 8, 24}
  const DegenerateBlock br = degenerate_block(4, build_operator(OperatorName::R, kP11), g, kP11);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::fabs(br.matrix[i][j] - br.matrix[j][i]) < 1e-9);
}

TEST_CASE("second basis") {
  const QuadratureGrid g = QuadratureGrid::build(200, 64, kP11);
  const SecondBasis s0 = construct_second_basis(0, g, kP11);
  REQUIRE(s0.Z.size() == 1);
  CHECK(s0.Z[0][0] == doctest::Approx(1.0));

  const SecondBasis s4 = construct_second_basis(4, g, kP11);
  const double expect[3] = {0, 8, 24};
  for (int i = 0; i < 3; ++i)
    CHECK(std::fabs(s4.r_eigenvalues[i] - expect[i]) <= 1e-7 * std::max(1.0, expect[i]));
  // columns orthonormal
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double dot = 0;
      for (int r = 0; r < 3; ++r) dot += s4.Z[r][a] * s4.Z[r][b];
      CHECK(std::fabs(dot - (a == b ? 1.0 : 0.0)) < 1e-9);
    }
}

TEST_CASE("numeric L tridiagonal against the closed forms") {
  const QuadratureGrid g = QuadratureGrid::build(200, 64, kP11);
  const NumericTridiagonal t = l_matrix_numeric(4, g, kP11);
  CHECK(std::fabs(t.diag[0] - 10.0) < 1e-6);
  CHECK(std::fabs(t.diag[1] - 16.5) < 1e-6);
  CHECK(std::fabs(t.diag[2] - 8.5) < 1e-6);
  CHECK(std::fabs(std::fabs(t.offdiag[0]) - std::sqrt(90.0)) < 1e-6);
  CHECK(std::fabs(std::fabs(t.offdiag[1]) - std::sqrt(165.0) / 2) < 1e-6);
  CHECK(t.beyond_tridiagonal < 1e-7);
  CHECK(t.phases == std::vector<int>{-1, -1});  // s_2 = s_4 = -1

  // N = 2 entries match the formulas too
  const NumericTridiagonal t2 = l_matrix_numeric(2, g, kP11);
  const LTridiagonal e2 = l_tridiagonal(2, kP11);
  CHECK(t2.nu == std::vector<int>{0, 2});
  for (std::size_t i = 0; i < t2.diag.size(); ++i)
    CHECK(std::fabs(t2.diag[i] - to_double(e2.sigma[i])) < 1e-6);
  for (std::size_t i = 0; i < t2.offdiag.size(); ++i)
    CHECK(std::fabs(std::fabs(t2.offdiag[i]) - std::sqrt(to_double(e2.tau_sq[i]))) < 1e-6);

  // numeric-path trace identity within 1e-6
  double trace = 0;
  for (double d : t.diag) trace += d;
  CHECK(std::fabs(trace - (1 + 9 + 25)) < 1e-6);

  CHECK_THROWS_AS(SecondBasisLabel(4, 3), ParityMismatch);
  CHECK(SecondBasisLabel(4, 2).N0() == 2);
}

TEST_CASE("tridiagonal eigenvalues match the level spectrum across the sweep") {
  for (int N = 0; N <= 8; ++N)
    for (const auto& k : {BigRat(1, 2), BigRat(1), BigRat(3, 2), BigRat(2)}) {
      const ModelParams p{BigRat(1), k};
      const QuadratureGrid g = QuadratureGrid::build(200, 64, p);
      const NumericTridiagonal t = l_matrix_numeric(N, g, p);
      const std::vector<double> evs = tridiagonal_eigenvalues(t.diag, t.offdiag);
      int idx = 0;
      for (int l = N % 2; l <= N; l += 2, ++idx) {
        const double expect = (l + 1) * (l + 1);
        CHECK(std::fabs(evs[idx] - expect) <= 1e-6 * expect);
      }
    }
}

TEST_CASE("chain-built second basis matches the diagonalization route") {
  // Psi_{N,N0} = eta^dag(k) ... eta^dag(k+nu-1) Psi^(k+nu)_{N0,N0}, projected
  // onto the first basis, must reproduce the eigenvector columns with the
  // smallest-l-positive convention, signs included.
  for (const auto& k : {BigRat(1), BigRat(3, 2)}) {
    const ModelParams p{BigRat(1), k};
    const QuadratureGrid g = QuadratureGrid::build(200, 64, p);
    const int N = 4;
    const SecondBasis sb = construct_second_basis(N, g, p);

    // basis values and norms at coupling k
    std::vector<std::vector<double>> bv;
    std::vector<double> norms;
    for (int l = N; l >= 0; l -= 2) {
      bv.push_back(grid_values(psi_first_basis({(N - l) / 2, l}, p), g, p));
      norms.push_back(std::sqrt(inner_product_values(bv.back(), bv.back(), g)));
    }

    for (int col = 0, nu = 0; nu <= N; nu += 2, ++col) {
      const int N0 = N - nu;
      const ModelParams ptop{p.q, p.k + nu};
      const QuadratureGrid gtop = QuadratureGrid::build(200, 64, ptop);
      const SecondBasis sbtop = construct_second_basis(N0, gtop, ptop);
      // nu = 0 member at coupling k+nu as a ring combination
      RingElement acc;
      int r = 0;
      for (int l = N0; l >= 0; l -= 2, ++r) {
        const SymFunction f = psi_first_basis({(N0 - l) / 2, l}, ptop);
        const auto fv = grid_values(f, gtop, ptop);
        const double nf = std::sqrt(inner_product_values(fv, fv, gtop));
        const long long num = llround(sbtop.Z[r][0] / nf * 1e12);
        acc += f.value.scaled(PolyQK(BigRat(num, 1000000000000LL)));
      }
      SymFunction state{acc};
      for (int j = nu - 1; j >= 0; --j)
        state = op_apply(build_operator(OperatorName::EtaDag, ModelParams{p.q, p.k + j}), state);
      const auto sv = grid_values(state, g, p);
      const double nrm = std::sqrt(inner_product_values(sv, sv, g));
      for (int row = 0; row < int(bv.size()); ++row) {
        const double overlap = inner_product_values(bv[row], sv, g) / (norms[row] * nrm);
        CHECK(std::fabs(overlap - sb.Z[row][col]) < 1e-6);
      }
    }
  }
}

TEST_CASE("serial and parallel kernels agree bitwise") {
  const QuadratureGrid g = QuadratureGrid::build(200, 64, kP11);
  const SymFunction psi = psi_first_basis({2, 2}, kP11);
  CHECK(grid_values(psi, g, kP11, Exec::serial) == grid_values(psi, g, kP11, Exec::parallel));
  const DiffOperator R = build_operator(OperatorName::R, kP11);
  const DegenerateBlock a = degenerate_block(6, R, g, kP11, Exec::serial);
  const DegenerateBlock b = degenerate_block(6, R, g, kP11, Exec::parallel);
  CHECK(a.matrix == b.matrix);
}

TEST_CASE("positive semidefinite R on the nu = 0 member") {
  // ||eta Psi_{N,N}||^2 = <Psi, R Psi> -> 0 for the lowest R eigenvector
  const QuadratureGrid g = QuadratureGrid::build(200, 64, kP11);
  for (int N : {0, 2, 4}) {
    const SecondBasis sb = construct_second_basis(N, g, kP11);
    CHECK(std::fabs(sb.r_eigenvalues[0]) < 1e-7);
  }
}
