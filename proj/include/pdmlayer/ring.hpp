#ifndef PDMLAYER_RING_HPP
#define PDMLAYER_RING_HPP

#include <map>
#include <string>
#include <vector>

#include "pdmlayer/errors.hpp"
#include "pdmlayer/poly.hpp"
#include "pdmlayer/rational.hpp"

namespace pdm {

/// Exponent of a hyperbolic factor: value = const_part + k_part * k.
/// Both components exact rationals in lowest terms.
struct Exponent {
  BigRat const_part{0};
  BigRat k_part{0};

  Exponent() = default;
  Exponent(BigRat c, BigRat kp) : const_part(std::move(c)), k_part(std::move(kp)) {}
  Exponent(int c) : const_part(c) {}  // NOLINT: implicit by design

  bool is_zero() const { return const_part == 0 && k_part == 0; }
  friend Exponent operator+(const Exponent& a, const Exponent& b) {
    return {a.const_part + b.const_part, a.k_part + b.k_part};
  }
  friend Exponent operator-(const Exponent& a, const Exponent& b) {
    return {a.const_part - b.const_part, a.k_part - b.k_part};
  }
  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.const_part == b.const_part && a.k_part == b.k_part;
  }
  friend bool operator<(const Exponent& a, const Exponent& b) {
    if (a.const_part != b.const_part) return a.const_part < b.const_part;
    return a.k_part < b.k_part;
  }
  double value(double k) const { return to_double(const_part) + to_double(k_part) * k; }
  std::string str() const;
};

/// Key of one monomial: sinh(qx)^s * cosh(qx)^c * sin(qy)^m * cos(qy)^e.
/// Canonical form keeps e in {0,1} and the hyperbolic const parts inside the
/// windows enforced by canonicalize().
struct MonoKey {
  Exponent s;   // power of sinh qx
  Exponent c;   // power of cosh qx
  int sin_e{0};
  int cos_e{0};

  friend bool operator<(const MonoKey& a, const MonoKey& b) {
    if (!(a.s == b.s)) return a.s < b.s;
    if (!(a.c == b.c)) return a.c < b.c;
    if (a.sin_e != b.sin_e) return a.sin_e < b.sin_e;
    return a.cos_e < b.cos_e;
  }
  friend bool operator==(const MonoKey& a, const MonoKey& b) {
    return a.s == b.s && a.c == b.c && a.sin_e == b.sin_e && a.cos_e == b.cos_e;
  }
};

/// Element of the coefficient ring: finite sum of monomials with PolyQK
/// coefficients, kept canonical at all times.
class RingElement {
 public:
  RingElement() = default;

  /// Single monomial, canonicalized.
  RingElement(const MonoKey& key, const PolyQK& coeff);

  static RingElement zero() { return {}; }
  static RingElement one() { return constant(PolyQK(BigRat(1))); }
  static RingElement constant(const PolyQK& c) { return RingElement(MonoKey{}, c); }
  static RingElement sinh_pow(const Exponent& e) { return RingElement(MonoKey{e, 0, 0, 0}, PolyQK(BigRat(1))); }
  static RingElement cosh_pow(const Exponent& e) { return RingElement(MonoKey{0, e, 0, 0}, PolyQK(BigRat(1))); }
  static RingElement sin_pow(int m) { return RingElement(MonoKey{0, 0, m, 0}, PolyQK(BigRat(1))); }
  static RingElement cos_pow(int m) { return RingElement(MonoKey{0, 0, 0, m}, PolyQK(BigRat(1))); }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<MonoKey, PolyQK>& terms() const { return terms_; }

  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator-(const RingElement& a);
  friend RingElement operator*(const RingElement& a, const RingElement& b) { return ring_mul(a, b); }
  friend bool operator==(const RingElement& a, const RingElement& b) { return a.terms_ == b.terms_; }

  RingElement scaled(const PolyQK& c) const;

  /// d/dx (axis='x') or d/dy (axis='y'); exact, canonical.
  RingElement diff(char axis) const;

  /// Substitutions into the coefficient polynomials / exponents.
  RingElement subst_k(const BigRat& kv) const;  // fold k_part*kv into const_part too
  RingElement subst_q(const BigRat& qv) const;
  RingElement shift_k() const;  // k -> k+1 everywhere (exponents and coefficients)

  /// Floating-point value at a point. Throws SingularPoint for negative sinh
  /// powers at x = 0.
  double evaluate(double x, double y, double q, double k) const;

  /// One term per line: coeff * s^a c^b S^m C^d.
  std::string dump() const;

  bool depends_on_k() const;

 private:
  friend RingElement ring_mul(const RingElement& a, const RingElement& b);
  friend RingElement ring_mul_serial(const RingElement& a, const RingElement& b);
  friend RingElement canonicalize(const std::map<MonoKey, PolyQK>& raw_terms);
  void add_canonical(const MonoKey& key, const PolyQK& coeff);
  std::map<MonoKey, PolyQK> terms_;
};

/// Pointwise product, canonical. Dispatches to an OpenMP path for large
/// operands; ring_mul_serial is the reference implementation.
RingElement ring_mul(const RingElement& a, const RingElement& b);
RingElement ring_mul_serial(const RingElement& a, const RingElement& b);

/// Rewrites one monomial to canonical form into `out` (appends).
/// Exposed for the canonicalization property tests.
void canonicalize_monomial(const MonoKey& key, const PolyQK& coeff,
                           std::vector<std::pair<MonoKey, PolyQK>>& out);

/// Re-canonicalizes an arbitrary term list (idempotent on canonical input).
RingElement canonicalize(const std::map<MonoKey, PolyQK>& raw_terms);

/// cos(m*qy) and sin(m*qy) expanded into the ring (Chebyshev-style recurrence).
RingElement cos_multiple(int m);
RingElement sin_multiple(int m);

/// A closed-form function of (x, y): a zero-order element of the ring.
struct SymFunction {
  RingElement value;
};

}  // namespace pdm

#endif
