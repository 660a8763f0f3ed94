#ifndef PDMLAYER_UNIPOLY_HPP
#define PDMLAYER_UNIPOLY_HPP

#include <vector>

#include "pdmlayer/rational.hpp"

namespace pdm {

/// Dense univariate polynomial over BigRat; coeffs[i] multiplies x^i.
/// Used for the k-polynomials of the representation formulas and for
/// characteristic polynomials in lambda.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(BigRat c) {
    if (c != 0) coeffs_.push_back(std::move(c));
  }
  UniPoly(std::initializer_list<BigRat> c) : coeffs_(c) { trim(); }
  static UniPoly x() { return UniPoly{BigRat(0), BigRat(1)}; }
  /// a + b x
  static UniPoly linear(BigRat a, BigRat b) {
    UniPoly p;
    p.coeffs_ = {std::move(a), std::move(b)};
    p.trim();
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<BigRat>& coeffs() const { return coeffs_; }
  BigRat coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigRat(0); }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), BigRat(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    r.trim();
    return r;
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), BigRat(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i] -= b.coeffs_[i];
    r.trim();
    return r;
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    UniPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, BigRat(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    r.trim();
    return r;
  }
  friend UniPoly operator*(const UniPoly& a, const BigRat& s) {
    UniPoly r;
    if (s == 0) return r;
    r.coeffs_ = a.coeffs_;
    for (auto& c : r.coeffs_) c *= s;
    return r;
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  BigRat eval(const BigRat& x) const {
    BigRat acc = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
    return acc;
  }

  /// Exact division by (x - root); asserts zero remainder.
  UniPoly divide_out_root(const BigRat& root) const {
    UniPoly r;
    if (is_zero()) return r;
    r.coeffs_.assign(coeffs_.size() - 1, BigRat(0));
    BigRat carry = 0;
    for (std::size_t i = coeffs_.size(); i-- > 1;) {
      carry = coeffs_[i] + carry * root;
      r.coeffs_[i - 1] = carry;
    }
    // remainder must vanish for a true root
    if (coeffs_[0] + carry * root != 0)
      throw std::logic_error("divide_out_root: nonzero remainder");
    r.trim();
    return r;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<BigRat> coeffs_;
};

}  // namespace pdm

#endif
