#ifndef PDMLAYER_DIFF_OP_HPP
#define PDMLAYER_DIFF_OP_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "pdmlayer/ring.hpp"

namespace pdm {

/// Finite-order differential operator sum c_{ij}(x,y) Dx^i Dy^j over the
/// coefficient ring. Order is capped; the Casimir needs 6.
class DiffOperator {
 public:
  static constexpr int kMaxOrder = 8;
  using Key = std::pair<int, int>;  // (i, j)

  DiffOperator() = default;
  DiffOperator(int i, int j, RingElement coeff);

  static DiffOperator zero() { return {}; }
  static DiffOperator identity() { return DiffOperator(0, 0, RingElement::one()); }
  static DiffOperator dx() { return DiffOperator(1, 0, RingElement::one()); }
  static DiffOperator dy() { return DiffOperator(0, 1, RingElement::one()); }
  static DiffOperator mul_op(RingElement f) { return DiffOperator(0, 0, std::move(f)); }

  bool is_zero() const { return terms_.empty(); }
  int order() const;
  std::size_t term_count() const;
  const std::map<Key, RingElement>& terms() const { return terms_; }
  RingElement coeff(int i, int j) const;

  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  friend DiffOperator operator-(const DiffOperator& a);
  DiffOperator scaled(const PolyQK& c) const;
  DiffOperator scaled(const RingElement& f) const;  // left multiplication by f

  DiffOperator subst_k(const BigRat& kv) const;
  DiffOperator subst_q(const BigRat& qv) const;
  DiffOperator shift_k() const;

  std::string dump() const;
  bool depends_on_k() const;

  void add_term(int i, int j, const RingElement& coeff);

 private:
  std::map<Key, RingElement> terms_;
};

/// Leibniz composition: (A o B) f = A(B f). Throws OperatorOrderExceeded
/// past kMaxOrder.
DiffOperator op_compose(const DiffOperator& a, const DiffOperator& b);

/// [A, B] = A o B - B o A.
DiffOperator op_commutator(const DiffOperator& a, const DiffOperator& b);

/// Anticommutator {A, B} = A o B + B o A.
DiffOperator op_anticommutator(const DiffOperator& a, const DiffOperator& b);

/// Exact image A f.
SymFunction op_apply(const DiffOperator& a, const SymFunction& f);

enum class EqualityPath : std::uint8_t { Symbolic, Numeric };

struct EqualsResult {
  bool equal;
  EqualityPath decided_by;
  std::size_t residual_terms;  // canonical terms of A - B
  explicit operator bool() const { return equal; }
};

/// Decidable equality: canonical difference empty => equal (symbolic path).
/// A nonempty residual is confirmed by the randomized evaluation oracle
/// (seeded sampling of (q,k) and interior points); disagreement between the
/// two paths throws OracleInconclusive.
EqualsResult op_equals(const DiffOperator& a, const DiffOperator& b,
                       std::uint64_t seed = 0x5EED);

/// The evaluation oracle on its own: max relative residual of the
/// coefficients of A - B over the sample set.
double op_residual_norm(const DiffOperator& a, const DiffOperator& b,
                        std::uint64_t seed = 0x5EED);

}  // namespace pdm

#endif
