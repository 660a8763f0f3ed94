#include "pdmlayer/diff_op.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

namespace pdm {

DiffOperator::DiffOperator(int i, int j, RingElement coeff) {
  add_term(i, j, coeff);
}

void DiffOperator::add_term(int i, int j, const RingElement& coeff) {
  if (coeff.is_zero()) return;
  if (i + j > kMaxOrder)
    throw OperatorOrderExceeded("operator term of order " + std::to_string(i + j) +
                                " exceeds cap " + std::to_string(kMaxOrder));
  auto it = terms_.find({i, j});
  if (it == terms_.end()) {
    terms_.emplace(Key{i, j}, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int DiffOperator::order() const {
  int o = 0;
  for (const auto& [key, c] : terms_) o = std::max(o, key.first + key.second);
  return o;
}

std::size_t DiffOperator::term_count() const {
  std::size_t n = 0;
  for (const auto& [key, c] : terms_) n += c.size();
  return n;
}

RingElement DiffOperator::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? RingElement::zero() : it->second;
}

DiffOperator& DiffOperator::operator+=(const DiffOperator& o) {
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
  return *this;
}

DiffOperator& DiffOperator::operator-=(const DiffOperator& o) {
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
  return *this;
}

DiffOperator operator-(const DiffOperator& a) {
  DiffOperator r;
  for (const auto& [key, c] : a.terms_) r.terms_.emplace(key, -c);
  return r;
}

DiffOperator DiffOperator::scaled(const PolyQK& c) const {
  DiffOperator r;
  if (c.is_zero()) return r;
  for (const auto& [key, t] : terms_) {
    RingElement sc = t.scaled(c);
    if (!sc.is_zero()) r.terms_.emplace(key, std::move(sc));
  }
  return r;
}

DiffOperator DiffOperator::scaled(const RingElement& f) const {
  DiffOperator r;
  for (const auto& [key, t] : terms_) r.add_term(key.first, key.second, ring_mul(f, t));
  return r;
}

DiffOperator DiffOperator::subst_k(const BigRat& kv) const {
  DiffOperator r;
  for (const auto& [key, t] : terms_) r.add_term(key.first, key.second, t.subst_k(kv));
  return r;
}

DiffOperator DiffOperator::subst_q(const BigRat& qv) const {
  DiffOperator r;
  for (const auto& [key, t] : terms_) r.add_term(key.first, key.second, t.subst_q(qv));
  return r;
}

DiffOperator DiffOperator::shift_k() const {
  DiffOperator r;
  for (const auto& [key, t] : terms_) r.add_term(key.first, key.second, t.shift_k());
  return r;
}

bool DiffOperator::depends_on_k() const {
  for (const auto& [key, t] : terms_)
    if (t.depends_on_k()) return true;
  return false;
}

std::string DiffOperator::dump() const {
  if (terms_.empty()) return "0\n";
  std::ostringstream os;
  for (const auto& [key, t] : terms_) {
    for (const auto& [mk, coeff] : t.terms()) {
      os << "(" << coeff.str() << ")";
      if (!mk.s.is_zero()) os << " * s^(" << mk.s.str() << ")";
      if (!mk.c.is_zero()) os << " * c^(" << mk.c.str() << ")";
      if (mk.sin_e) os << " * S^" << mk.sin_e;
      if (mk.cos_e) os << " * C^" << mk.cos_e;
      if (key.first) os << " * Dx^" << key.first;
      if (key.second) os << " * Dy^" << key.second;
      os << "\n";
    }
  }
  return os.str();
}

namespace {

// n-th iterated derivative of a ring element along one axis
RingElement iter_diff(RingElement e, char axis, int n) {
  for (int i = 0; i < n && !e.is_zero(); ++i) e = e.diff(axis);
  return e;
}

std::vector<std::vector<long long>> binomials(int n) {
  std::vector<std::vector<long long>> b(n + 1);
  for (int i = 0; i <= n; ++i) {
    b[i].resize(i + 1);
    b[i][0] = b[i][i] = 1;
    for (int j = 1; j < i; ++j) b[i][j] = b[i - 1][j - 1] + b[i - 1][j];
  }
  return b;
}

}  // namespace

DiffOperator op_compose(const DiffOperator& a, const DiffOperator& b) {
  // Dx^i Dy^j o (g Dx^p Dy^q) = sum_{m<=i, n<=j} C(i,m) C(j,n)
  //     (d_x^{i-m} d_y^{j-n} g) Dx^{m+p} Dy^{n+q}
  static const auto binom = binomials(DiffOperator::kMaxOrder);
  DiffOperator r;
  for (const auto& [ka, ca] : a.terms()) {
    const int i = ka.first, j = ka.second;
    for (const auto& [kb, cb] : b.terms()) {
      const int p = kb.first, q = kb.second;
      for (int m = 0; m <= i; ++m) {
        RingElement gx = iter_diff(cb, 'x', i - m);
        if (gx.is_zero()) continue;
        for (int n = 0; n <= j; ++n) {
          RingElement g = iter_diff(gx, 'y', j - n);
          if (g.is_zero()) continue;
          PolyQK scale(BigRat(binom[i][m] * binom[j][n]));
          r.add_term(m + p, n + q, ring_mul(ca, g).scaled(scale));
        }
      }
    }
  }
  return r;
}

DiffOperator op_commutator(const DiffOperator& a, const DiffOperator& b) {
  return op_compose(a, b) - op_compose(b, a);
}

DiffOperator op_anticommutator(const DiffOperator& a, const DiffOperator& b) {
  return op_compose(a, b) + op_compose(b, a);
}

SymFunction op_apply(const DiffOperator& a, const SymFunction& f) {
  RingElement out;
  for (const auto& [key, c] : a.terms()) {
    RingElement g = iter_diff(f.value, 'x', key.first);
    g = iter_diff(g, 'y', key.second);
    if (!g.is_zero()) out += ring_mul(c, g);
  }
  return SymFunction{out};
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Max relative residual of the coefficients of D over the sample set:
// 3 rational (q,k) samples x 20 interior points, seeded.
double residual_norm(const DiffOperator& d, const DiffOperator& a,
                     const DiffOperator& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0;
  for (int sample = 0; sample < 3; ++sample) {
    const double q = (1.0 + double(rng() % 8)) / (1.0 + double(rng() % 4));
    const double k = (1.0 + double(rng() % 8)) / (1.0 + double(rng() % 4));
    const double ymax = M_PI / (2 * q) - 0.1;
    for (int pt = 0; pt < 20; ++pt) {
      const double x = 0.1 + 1.9 * uniform01(rng);
      const double y = ymax <= 0 ? 0.0 : -ymax + 2 * ymax * uniform01(rng);
      for (const auto& [key, c] : d.terms()) {
        const double rv = c.evaluate(x, y, q, k);
        const double sa = std::fabs(a.coeff(key.first, key.second).evaluate(x, y, q, k));
        const double sb = std::fabs(b.coeff(key.first, key.second).evaluate(x, y, q, k));
        const double rel = std::fabs(rv) / (sa + sb + 1.0);
        worst = std::max(worst, rel);
      }
    }
  }
  return worst;
}

}  // namespace

double op_residual_norm(const DiffOperator& a, const DiffOperator& b, std::uint64_t seed) {
  return residual_norm(a - b, a, b, seed);
}

EqualsResult op_equals(const DiffOperator& a, const DiffOperator& b, std::uint64_t seed) {
  DiffOperator d = a - b;
  if (d.is_zero()) return {true, EqualityPath::Symbolic, 0};
  // Nonempty canonical residual: confirm with the evaluation oracle. The
  // normal form is unique per exponent coset, so a residual the oracle calls
  // zero means a canonicalization bug, not a borderline case.
  const double r = residual_norm(d, a, b, seed);
  if (r < 1e-9)
    throw OracleInconclusive(
        "symbolic residual (" + std::to_string(d.term_count()) +
        " terms) evaluates to zero numerically; residual dump:\n" + d.dump());
  return {false, EqualityPath::Numeric, d.term_count()};
}

}  // namespace pdm
