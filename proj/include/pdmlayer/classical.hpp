#ifndef PDMLAYER_CLASSICAL_HPP
#define PDMLAYER_CLASSICAL_HPP

#include <map>
#include <string>
#include <utility>

#include "pdmlayer/model.hpp"
#include "pdmlayer/report.hpp"

namespace pdm {

/// Classical parameters: Q = q/hbar and Kc = hbar k (capital-K coupling,
/// renamed to avoid the clash with the Casimir).
struct ClassicalParams {
  BigRat Q{1};
  BigRat Kc{1};
  ClassicalParams() = default;
  ClassicalParams(BigRat Q_, BigRat Kc_) : Q(std::move(Q_)), Kc(std::move(Kc_)) {
    if (Q <= 0) throw ParamOutOfRange("Q must be positive");
    if (Kc <= 0) throw ParamOutOfRange("Kc must be positive");
  }
};

/// Polynomial on phase space: sum of (X-ring coefficient) * P_X^a P_Y^b with
/// commuting momenta. The X-ring reuses the symbolic kernel with q read as Q
/// and k as Kc.
class PhaseSpacePolynomial {
 public:
  using Key = std::pair<int, int>;  // (power of P_X, power of P_Y)

  PhaseSpacePolynomial() = default;
  PhaseSpacePolynomial(int px, int py, RingElement coeff);

  static PhaseSpacePolynomial zero() { return {}; }
  static PhaseSpacePolynomial one() { return {0, 0, RingElement::one()}; }
  static PhaseSpacePolynomial px() { return {1, 0, RingElement::one()}; }
  static PhaseSpacePolynomial py() { return {0, 1, RingElement::one()}; }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, RingElement>& terms() const { return terms_; }
  RingElement coeff(int px, int py) const;
  std::size_t term_count() const;

  PhaseSpacePolynomial& operator+=(const PhaseSpacePolynomial& o);
  PhaseSpacePolynomial& operator-=(const PhaseSpacePolynomial& o);
  friend PhaseSpacePolynomial operator+(PhaseSpacePolynomial a, const PhaseSpacePolynomial& b) {
    return a += b;
  }
  friend PhaseSpacePolynomial operator-(PhaseSpacePolynomial a, const PhaseSpacePolynomial& b) {
    return a -= b;
  }
  friend PhaseSpacePolynomial operator-(const PhaseSpacePolynomial& a);
  friend PhaseSpacePolynomial operator*(const PhaseSpacePolynomial& a,
                                        const PhaseSpacePolynomial& b);
  friend bool operator==(const PhaseSpacePolynomial& a, const PhaseSpacePolynomial& b) {
    return a.terms_ == b.terms_;
  }
  PhaseSpacePolynomial scaled(const PolyQK& c) const;

  std::string dump() const;

  void add_term(int px, int py, const RingElement& coeff);

 private:
  std::map<Key, RingElement> terms_;
};

/// Canonical bracket sum over (X,P_X) and (Y,P_Y); bilinear, antisymmetric,
/// Leibniz.
PhaseSpacePolynomial poisson_bracket(const PhaseSpacePolynomial& f,
                                     const PhaseSpacePolynomial& g);

struct ComplexPhaseSpace {
  PhaseSpacePolynomial re, im;
  ComplexPhaseSpace conj() const { return {re, -im}; }
  friend ComplexPhaseSpace operator*(const ComplexPhaseSpace& a, const ComplexPhaseSpace& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexPhaseSpace operator+(const ComplexPhaseSpace& a, const ComplexPhaseSpace& b) {
    return {a.re + b.re, a.im + b.im};
  }
};

/// eta_c and etabar_c (complex first-order limits of the intertwiners).
ComplexPhaseSpace classical_eta(const ClassicalParams& cp);
ComplexPhaseSpace classical_eta_bar(const ClassicalParams& cp);

/// Real classical observables: H, L, R, Rbar, C, Xi, XiBar, MassInv, Veff.
/// Throws std::invalid_argument for names without a real classical analog.
PhaseSpacePolynomial classical_object(OperatorName name, const ClassicalParams& cp);

/// Full classical suite: bracket relations with the classical coefficient
/// set, sum rule, involution of the integrals, vanishing Casimir, Jacobi
/// identity, and the hbar-scaling consistency of the quantum coefficients.
VerificationReport classical_algebra_check(const ClassicalParams& cp);

}  // namespace pdm

#endif
