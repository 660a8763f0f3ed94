#ifndef PDMLAYER_POLY_HPP
#define PDMLAYER_POLY_HPP

#include <map>
#include <string>
#include <utility>

#include "pdmlayer/rational.hpp"

namespace pdm {

/// Exact polynomial in the two model parameters (q, k) over BigRat.
/// Coefficient ring of the symbolic kernel; also reused for (Q, Kc) in the
/// classical module.
class PolyQK {
 public:
  using Key = std::pair<int, int>;  // (degree in q, degree in k)

  PolyQK() = default;
  explicit PolyQK(const BigRat& c) {
    if (c != 0) terms_[{0, 0}] = c;
  }
  PolyQK(int qdeg, int kdeg, const BigRat& c) {
    if (c != 0) terms_[{qdeg, kdeg}] = c;
  }

  static PolyQK constant(const BigRat& c) { return PolyQK(c); }
  static PolyQK q(int deg = 1) { return PolyQK(deg, 0, 1); }
  static PolyQK k(int deg = 1) { return PolyQK(0, deg, 1); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Key, BigRat>& terms() const { return terms_; }

  int degree_k() const {
    int d = -1;
    for (const auto& [key, c] : terms_) d = std::max(d, key.second);
    return d;
  }

  PolyQK& operator+=(const PolyQK& o) {
    for (const auto& [key, c] : o.terms_) add_term(key, c);
    return *this;
  }
  PolyQK& operator-=(const PolyQK& o) {
    for (const auto& [key, c] : o.terms_) add_term(key, -c);
    return *this;
  }
  friend PolyQK operator+(PolyQK a, const PolyQK& b) { return a += b; }
  friend PolyQK operator-(PolyQK a, const PolyQK& b) { return a -= b; }
  friend PolyQK operator-(const PolyQK& a) {
    PolyQK r;
    for (const auto& [key, c] : a.terms_) r.terms_[key] = -c;
    return r;
  }
  friend PolyQK operator*(const PolyQK& a, const PolyQK& b) {
    PolyQK r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        r.add_term({ka.first + kb.first, ka.second + kb.second}, ca * cb);
    return r;
  }
  PolyQK& operator*=(const PolyQK& o) { return *this = *this * o; }
  friend PolyQK operator*(const PolyQK& a, const BigRat& s) {
    PolyQK r;
    if (s == 0) return r;
    for (const auto& [key, c] : a.terms_) r.terms_[key] = c * s;
    return r;
  }
  friend bool operator==(const PolyQK& a, const PolyQK& b) { return a.terms_ == b.terms_; }

  /// Substitute k -> k + 1 (the SUSY shift used by H1); exact.
  PolyQK shift_k() const {
    PolyQK r;
    for (const auto& [key, c] : terms_) {
      // k^n -> (k+1)^n expanded by binomials
      BigRat binom = 1;
      for (int j = key.second; j >= 0; --j) {
        r.add_term({key.first, j}, c * binom);
        // next: C(n, j-1) = C(n, j) * j / (n - j + 1)
        if (j > 0) binom = binom * j / (key.second - j + 1);
      }
    }
    return r;
  }

  /// Substitute an exact rational value for k; result depends on q only.
  PolyQK subst_k(const BigRat& kv) const {
    PolyQK r;
    for (const auto& [key, c] : terms_) {
      BigRat p = 1;
      for (int j = 0; j < key.second; ++j) p *= kv;
      r.add_term({key.first, 0}, c * p);
    }
    return r;
  }
  PolyQK subst_q(const BigRat& qv) const {
    PolyQK r;
    for (const auto& [key, c] : terms_) {
      BigRat p = 1;
      for (int j = 0; j < key.first; ++j) p *= qv;
      r.add_term({0, key.second}, c * p);
    }
    return r;
  }

  BigRat eval(const BigRat& qv, const BigRat& kv) const {
    BigRat sum = 0;
    for (const auto& [key, c] : terms_) {
      BigRat t = c;
      for (int j = 0; j < key.first; ++j) t *= qv;
      for (int j = 0; j < key.second; ++j) t *= kv;
      sum += t;
    }
    return sum;
  }

  double eval_double(double qv, double kv) const {
    double sum = 0;
    for (const auto& [key, c] : terms_) {
      double t = to_double(c);
      for (int j = 0; j < key.first; ++j) t *= qv;
      for (int j = 0; j < key.second; ++j) t *= kv;
      sum += t;
    }
    return sum;
  }

  std::string str(const char* qname = "q", const char* kname = "k") const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, c] : terms_) {
      std::string piece = rat_str(c);
      if (key.first > 0) piece += "*" + std::string(qname) + (key.first > 1 ? "^" + std::to_string(key.first) : "");
      if (key.second > 0) piece += "*" + std::string(kname) + (key.second > 1 ? "^" + std::to_string(key.second) : "");
      if (!first && piece[0] != '-') out += "+";
      out += piece;
      first = false;
    }
    return out;
  }

 private:
  void add_term(const Key& key, const BigRat& c) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (c != 0) terms_[key] = c;
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  std::map<Key, BigRat> terms_;
};

}  // namespace pdm

#endif
