#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pdmlayer/algebra_verify.hpp"
#include "pdmlayer/numerics.hpp"

using namespace pdm;

namespace {
const std::vector<ModelParams> kSamples = {
    ModelParams{BigRat(1), BigRat(1)}, ModelParams{BigRat(1), BigRat(1, 2)},
    ModelParams{BigRat(2), BigRat(3, 2)}, ModelParams{BigRat(1), BigRat(3)}};
}

TEST_CASE("first-order algebra: all nine identities at several couplings") {
  for (const auto& p : kSamples) {
    const VerificationReport rep = first_order_algebra_check(p);
    CHECK(rep.entries.size() == 9);
    for (const auto& e : rep.entries) {
      INFO(e.identity);
      CHECK(e.pass);
      CHECK(e.decided_by == "symbolic");
    }
  }
}

TEST_CASE("mutated etabar breaks [dy, eta] = q etabar") {
  Mutations mut;
  mut.flip_eta_bar_sign = true;
  const VerificationReport rep = first_order_algebra_check(kSamples[0], mut);
  CHECK(!rep.all_pass());
  CHECK(!rep.entries[0].pass);  // [dy,eta] == q etabar fails first
}

TEST_CASE("C = [R, L] = q{dy, eta_dag etabar + etabar_dag eta}, third order") {
  for (const auto& p : kSamples) {
    const DiffOperator C = compute_C(p);
    const DiffOperator R = build_operator(OperatorName::R, p);
    const DiffOperator L = build_operator(OperatorName::L, p);
    CHECK(op_equals(C, op_commutator(R, L)).equal);
    CHECK(C.order() == 3);
  }
}

TEST_CASE("C is antisymmetric under the quadrature pairing") {
  const ModelParams p{BigRat(1), BigRat(1)};
  const QuadratureGrid grid = QuadratureGrid::build(200, 64, p);
  const DiffOperator C = compute_C(p);
  const SymFunction f = psi_first_basis({0, 4}, p);
  const SymFunction g = psi_first_basis({2, 0}, p);
  const double fg = inner_product(f, op_apply(C, g), grid, p);
  const double gf = inner_product(op_apply(C, f), g, grid, p);
  // <f, Cg> = -<Cf, g> within quadrature error, on a scale of ~|Cg|
  const double scale = std::sqrt(inner_product(op_apply(C, g), op_apply(C, g), grid, p)) + 1;
  CHECK(std::fabs(fg + gf) < 1e-8 * scale);
}

TEST_CASE("quadratic algebra relations with the model coefficient set") {
  for (const auto& p : kSamples) {
    AlgebraCoefficients co;
    REQUIRE_NOTHROW(co = quadratic_algebra_check(p));
    CHECK(co.a.is_zero());  // QR(3)
  }
  // evaluated coefficients at q=1: alpha = gamma = 8; eps = 16(k-1)(k+1)
  {
    const AlgebraCoefficients co = model_coefficients(kSamples[0]);  // k = 1
    CHECK(co.alpha.eval(1, 1) == 8);
    CHECK(co.gamma.eval(1, 1) == 8);
    CHECK(co.epsilon[0].eval(1, 1) == 0);
    // delta = 8(1 - H) at q=k=1: delta_0 = 8, delta_1 = -8
    CHECK(co.delta[0].eval(1, 1) == 8);
    CHECK(co.delta[1].eval(1, 1) == -8);
  }
  {
    const ModelParams p12{BigRat(1), BigRat(2)};
    const AlgebraCoefficients co = model_coefficients(p12);
    CHECK(co.epsilon[0].eval(1, 1) == 48);
  }
}

TEST_CASE("Jacobi identity [A,[B,C]] == [B,[A,C]]") {
  for (const auto& p : {kSamples[0], kSamples[2]}) {
    const DiffOperator A = build_operator(OperatorName::R, p);
    const DiffOperator B = build_operator(OperatorName::L, p);
    const DiffOperator C = compute_C(p);
    CHECK((op_commutator(A, op_commutator(B, C)) - op_commutator(B, op_commutator(A, C)))
              .is_zero());
  }
}

TEST_CASE("Casimir equals the expansion of the displayed product") {
  for (const auto& p : kSamples) {
    CasimirPolynomial kp;
    REQUIRE_NOTHROW(kp = casimir_check(p));
    CHECK(kp.k3.is_zero());
  }
  // (k0, k1, k2) at q = k = 1; the product expands to
  // -16 q^8 k(7k-6) + 8 q^6(10k-6) H - 12 q^4 H^2, so (-16, 32, -12)
  const CasimirPolynomial kp = expected_casimir(kSamples[0]);
  CHECK(kp.k0.eval(1, 1) == -16);
  CHECK(kp.k1.eval(1, 1) == 32);
  CHECK(kp.k2.eval(1, 1) == -12);
}

TEST_CASE("mutated Casimir constant is caught") {
  Mutations mut;
  mut.casimir_const_off = true;
  CHECK_THROWS_AS(casimir_check(kSamples[0], mut), ResidualNonzero);
}

TEST_CASE("K commutes with A and B; eigenvalue matches the polynomial at E_N") {
  const ModelParams p{BigRat(1), BigRat(1)};
  const DiffOperator K = casimir_operator(p);
  // the generic Casimir closes at order 6; for this model the fifth- and
  // sixth-order parts cancel exactly and K collapses to a quadratic in the
  // second-order H
  CHECK(K.order() == 4);
  const DiffOperator R = build_operator(OperatorName::R, p);
  const DiffOperator L = build_operator(OperatorName::L, p);
  CHECK(op_commutator(K, R).is_zero());
  CHECK(op_commutator(K, L).is_zero());

  // K acting on an H eigenfunction multiplies by k0 + k1 E + k2 E^2
  const CasimirPolynomial kp = expected_casimir(p);
  const SymFunction psi = psi_first_basis({1, 0}, p);  // N = 2
  const BigRat E = energy(2, p);
  const BigRat expect = kp.k0.eval(p.q, p.k) + kp.k1.eval(p.q, p.k) * E +
                        kp.k2.eval(p.q, p.k) * E * E;
  RingElement res = op_apply(K, psi).value - psi.value.scaled(PolyQK(expect).subst_q(p.q));
  CHECK(res.subst_q(p.q).is_zero());
}

TEST_CASE("coefficient fit rediscovers the coefficient set and flags mutations") {
  const ModelParams p{BigRat(1), BigRat(2)};
  const auto fit = fit_quadratic_coefficients(p);
  REQUIRE(fit.has_value());
  const AlgebraCoefficients co = model_coefficients(p);
  CHECK(fit->alpha == co.alpha.eval(p.q, p.k));
  CHECK(fit->gamma == co.gamma.eval(p.q, p.k));
  CHECK(fit->delta0 == co.delta[0].eval(p.q, p.k));
  CHECK(fit->delta1 == co.delta[1].eval(p.q, p.k));
  CHECK(fit->eps0 == co.epsilon[0].eval(p.q, p.k));
  CHECK(fit->eps1 == 0);
  CHECK(fit->zeta0 == co.zeta[0].eval(p.q, p.k));
  CHECK(fit->zeta1 == co.zeta[1].eval(p.q, p.k));
  CHECK(fit->zeta2 == 0);

  Mutations mut;
  mut.flip_eta_bar_sign = true;
  const auto bad = fit_quadratic_coefficients(p, mut);
  const bool detected =
      !bad.has_value() || bad->alpha != fit->alpha || bad->gamma != fit->gamma ||
      bad->delta0 != fit->delta0 || bad->eps0 != fit->eps0 || bad->zeta0 != fit->zeta0;
  CHECK(detected);
}

TEST_CASE("verify_algebra aggregates at least 14 passing identities") {
  const VerificationReport rep = verify_algebra(kSamples[0]);
  CHECK(rep.entries.size() >= 14);
  CHECK(rep.all_pass());
  const std::string json = report_to_json(rep);
  CHECK(json.find("\"status\": \"pass\"") != std::string::npos);
  CHECK(json.find("\"identity\"") != std::string::npos);
  CHECK(json.find("\"residual_terms\"") != std::string::npos);
}
