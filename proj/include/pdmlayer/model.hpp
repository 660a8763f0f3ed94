#ifndef PDMLAYER_MODEL_HPP
#define PDMLAYER_MODEL_HPP

#include <optional>
#include <string>

#include "pdmlayer/diff_op.hpp"

namespace pdm {

/// Model parameters: inverse length q and coupling k, both positive exact
/// rationals (units hbar = 2 m0 = 1; the additive constant v0 is fixed to 0).
struct ModelParams {
  BigRat q{1};
  BigRat k{1};

  ModelParams() = default;
  ModelParams(BigRat q_, BigRat k_) : q(std::move(q_)), k(std::move(k_)) {
    if (q <= 0) throw ParamOutOfRange("q must be positive");
    if (k <= 0) throw ParamOutOfRange("k must be positive");
  }
  double qd() const { return to_double(q); }
  double kd() const { return to_double(k); }
};

enum class OperatorName {
  H, H1, L, R, Rbar, Eta, EtaDag, EtaBar, EtaBarDag, Dy, Xi, XiBar, MassInv, Veff, C
};

std::optional<OperatorName> operator_name_from_string(const std::string& s);
std::string to_string(OperatorName n);

/// Exact operator with the coupling k substituted from params; q stays a
/// symbolic polynomial variable, so identities hold for every q at once.
DiffOperator build_operator(OperatorName name, const ModelParams& p);

/// Fully symbolic variant (k kept as a polynomial/exponent variable).
DiffOperator build_operator_symbolic(OperatorName name);

/// E_N = q^2 (N+2)(N+2k+1), returned as an exact rational using params.
BigRat energy(int N, const ModelParams& p);

/// Level coefficient (N+2)(N+2k+1) as a polynomial in k (degree 1); the q^2
/// factor is structural. Used for the polynomial-identity checks.
std::vector<BigRat> energy_poly_k(int N);

/// floor(N/2) + 1.
int degeneracy(int N);

/// r_nu = q^2 nu (nu + 2k).
BigRat r_eigenvalue(int nu, const ModelParams& p);

/// H = L + R + Rbar + 2 q^2 k, verified as an operator identity.
bool sum_rule_check(const ModelParams& p);

}  // namespace pdm

#endif
