#ifndef PDMLAYER_ALGEBRA_VERIFY_HPP
#define PDMLAYER_ALGEBRA_VERIFY_HPP

#include <optional>
#include <vector>

#include "pdmlayer/model.hpp"
#include "pdmlayer/report.hpp"

namespace pdm {

/// Coefficient set of the quadratic algebra relations. alpha, gamma, a, d
/// are scalars; delta, epsilon, zeta, z are stored as coefficient lists in
/// powers of H (all entries polynomials in q, with k already substituted).
struct AlgebraCoefficients {
  PolyQK alpha, gamma, a;
  std::vector<PolyQK> delta;    // delta_0 + delta_1 H
  std::vector<PolyQK> epsilon;  // epsilon_0 (+ epsilon_1 H)
  std::vector<PolyQK> zeta;     // zeta_0 + zeta_1 H + zeta_2 H^2
  std::vector<PolyQK> d;        // d_0 (+ d_1 H)
  std::vector<PolyQK> z;        // z_0 + z_1 H + z_2 H^2
};

/// K = k0 + k1 H + k2 H^2 + k3 H^3; k3 == 0 for this model.
struct CasimirPolynomial {
  PolyQK k0, k1, k2, k3;
};

/// Single-sign mutations used by the mutation-control suite.
struct Mutations {
  bool flip_eta_bar_sign{false};   // flips the q sinh cos term of etabar
  bool casimir_const_off{false};   // shifts the Casimir constant by +q^8
  static Mutations none() { return {}; }
};

/// The model's quadratic-algebra coefficient set (k substituted from params).
AlgebraCoefficients model_coefficients(const ModelParams& p);

/// The expected Casimir H-polynomial: expansion of
/// -4q^4 [2q^2(7k-6) - 3H](2q^2 k - H).
CasimirPolynomial expected_casimir(const ModelParams& p);

/// The 9 first-order commutation relations (6 displayed + the conjugate
/// closures), each reported pass/fail.
VerificationReport first_order_algebra_check(const ModelParams& p,
                                             const Mutations& mut = Mutations::none(),
                                             std::uint64_t oracle_seed = 0x5EED);

/// C = q {Dy, eta^dag etabar + etabar^dag eta}; equals [R, L].
DiffOperator compute_C(const ModelParams& p);

/// Verifies [A,C] and [B,C] against the model coefficient set; throws
/// ResidualNonzero (with the residual dump) on mismatch.
AlgebraCoefficients quadratic_algebra_check(const ModelParams& p);

/// Builds K from the general sixth-order formula, verifies it equals the
/// expected H-polynomial; throws ResidualNonzero on mismatch.
CasimirPolynomial casimir_check(const ModelParams& p,
                                const Mutations& mut = Mutations::none());

/// The sixth-order Casimir operator itself (for commutation tests).
DiffOperator casimir_operator(const ModelParams& p);

/// Assembles k0 + k1 H + k2 H^2 + k3 H^3 as an operator.
DiffOperator casimir_from_polynomial(const CasimirPolynomial& kp, const ModelParams& p);

/// Discovery path: solve for the nine coefficient values at fixed rational
/// (q, k) by matching canonical monomials of [A,C]. Returns nullopt when the
/// ansatz cannot reproduce the commutator (e.g. under a mutation).
struct FittedCoefficients {
  BigRat alpha, gamma, delta0, delta1, eps0, eps1, zeta0, zeta1, zeta2;
};
std::optional<FittedCoefficients> fit_quadratic_coefficients(
    const ModelParams& p, const Mutations& mut = Mutations::none());

/// Full quantum suite as run by the CLI: first-order relations, integrals of
/// motion, intertwining, factorizations, sum rule, C identities, quadratic
/// relations, Casimir.
VerificationReport verify_algebra(const ModelParams& p,
                                  const Mutations& mut = Mutations::none(),
                                  std::uint64_t oracle_seed = 0x5EED);

}  // namespace pdm

#endif
