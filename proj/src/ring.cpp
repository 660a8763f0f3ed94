#include "pdmlayer/ring.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pdm {

std::string Exponent::str() const {
  std::string out = rat_str(const_part);
  if (k_part != 0) {
    out += " + (" + rat_str(k_part) + ")k";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Canonicalization.
//
// Rewrite rules, guards on the const part of each exponent (k parts ride
// along; every rule is an identity for arbitrary real exponents on x > 0):
//   R1: cos_e >= 2            : C^2 -> 1 - S^2
//   R2: c_const >= 2          : c^e -> c^{e-2} + s^2 c^{e-2}
//   R3: c_const < 0, s_const>=2 : s^a c^e -> s^{a-2} c^{e+2} - s^{a-2} c^e
//   R4: c_const < 0, s_const<0  : s^a c^e -> s^a c^{e+2} - s^{a+2} c^e
// Terminating; the normal form (c_const in [0,2), or c_const < 0 with
// s_const in [0,2)) is unique on each exponent coset, so empty difference
// is a complete equality test within a coset.
// ---------------------------------------------------------------------------

void canonicalize_monomial(const MonoKey& key, const PolyQK& coeff,
                           std::vector<std::pair<MonoKey, PolyQK>>& out) {
  if (coeff.is_zero()) return;
  std::vector<std::pair<MonoKey, PolyQK>> stack{{key, coeff}};
  const BigRat two(2), zero(0);
  while (!stack.empty()) {
    auto [m, c] = stack.back();
    stack.pop_back();
    if (m.cos_e >= 2) {  // R1
      MonoKey a = m, b = m;
      a.cos_e -= 2;
      b.cos_e -= 2;
      b.sin_e += 2;
      stack.push_back({a, c});
      stack.push_back({b, -c});
      continue;
    }
    if (m.c.const_part >= two) {  // R2
      MonoKey a = m, b = m;
      a.c.const_part -= 2;
      b.c.const_part -= 2;
      b.s.const_part += 2;
      stack.push_back({a, c});
      stack.push_back({b, c});
      continue;
    }
    if (m.c.const_part < zero && m.s.const_part >= two) {  // R3
      MonoKey a = m, b = m;
      a.s.const_part -= 2;
      a.c.const_part += 2;
      b.s.const_part -= 2;
      stack.push_back({a, c});
      stack.push_back({b, -c});
      continue;
    }
    if (m.c.const_part < zero && m.s.const_part < zero) {  // R4
      MonoKey a = m, b = m;
      a.c.const_part += 2;
      b.s.const_part += 2;
      stack.push_back({a, c});
      stack.push_back({b, -c});
      continue;
    }
    out.push_back({m, c});
  }
}

RingElement::RingElement(const MonoKey& key, const PolyQK& coeff) {
  add_canonical(key, coeff);
}

void RingElement::add_canonical(const MonoKey& key, const PolyQK& coeff) {
  std::vector<std::pair<MonoKey, PolyQK>> flat;
  canonicalize_monomial(key, coeff, flat);
  for (auto& [m, c] : flat) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(m, std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
}

RingElement canonicalize(const std::map<MonoKey, PolyQK>& raw_terms) {
  RingElement r;
  for (const auto& [key, c] : raw_terms) r.add_canonical(key, c);
  return r;
}

RingElement& RingElement::operator+=(const RingElement& o) {
  // both sides canonical: plain key merge
  for (const auto& [key, c] : o.terms_) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  for (const auto& [key, c] : o.terms_) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, -c);
    } else {
      it->second -= c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  return *this;
}

RingElement operator-(const RingElement& a) {
  RingElement r;
  for (const auto& [key, c] : a.terms_) r.terms_.emplace(key, -c);
  return r;
}

RingElement RingElement::scaled(const PolyQK& c) const {
  RingElement r;
  if (c.is_zero()) return r;
  for (const auto& [key, t] : terms_) r.terms_.emplace(key, t * c);
  return r;
}

static MonoKey mono_product(const MonoKey& a, const MonoKey& b) {
  return MonoKey{a.s + b.s, a.c + b.c, a.sin_e + b.sin_e, a.cos_e + b.cos_e};
}

RingElement ring_mul_serial(const RingElement& a, const RingElement& b) {
  RingElement r;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      r.add_canonical(mono_product(ka, kb), ca * cb);
  return r;
}

RingElement ring_mul(const RingElement& a, const RingElement& b) {
#ifdef _OPENMP
  const std::size_t work = a.size() * b.size();
  if (work >= 512 && omp_get_max_threads() > 1) {
    std::vector<std::pair<MonoKey, PolyQK>> av(a.terms().begin(), a.terms().end());
    const int nt = omp_get_max_threads();
    std::vector<RingElement> partial(nt);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < av.size(); ++i) {
      RingElement& acc = partial[omp_get_thread_num()];
      for (const auto& [kb, cb] : b.terms())
        acc.add_canonical(mono_product(av[i].first, kb), av[i].second * cb);
    }
    RingElement r;
    for (auto& p : partial) r += p;
    return r;
  }
#endif
  return ring_mul_serial(a, b);
}

RingElement RingElement::diff(char axis) const {
  // d/dx sinh^a cosh^b = q a s^{a-1} c^{b+1} + q b s^{a+1} c^{b-1}
  // d/dy sin^m cos^e   = q m S^{m-1} C^{e+1} - q e S^{m+1} C^{e-1}
  RingElement r;
  const PolyQK q = PolyQK::q();
  for (const auto& [key, coeff] : terms_) {
    if (axis == 'x') {
      if (!key.s.is_zero()) {
        MonoKey m = key;
        m.s.const_part -= 1;
        m.c.const_part += 1;
        PolyQK factor = q * key.s.const_part + PolyQK(0, 1, BigRat(1)) * q * key.s.k_part;
        r.add_canonical(m, coeff * factor);
      }
      if (!key.c.is_zero()) {
        MonoKey m = key;
        m.s.const_part += 1;
        m.c.const_part -= 1;
        PolyQK factor = q * key.c.const_part + PolyQK(0, 1, BigRat(1)) * q * key.c.k_part;
        r.add_canonical(m, coeff * factor);
      }
    } else {
      if (key.sin_e > 0) {
        MonoKey m = key;
        m.sin_e -= 1;
        m.cos_e += 1;
        r.add_canonical(m, coeff * q * BigRat(key.sin_e));
      }
      if (key.cos_e > 0) {
        MonoKey m = key;
        m.sin_e += 1;
        m.cos_e -= 1;
        r.add_canonical(m, coeff * q * BigRat(-key.cos_e));
      }
    }
  }
  return r;
}

RingElement RingElement::subst_k(const BigRat& kv) const {
  RingElement r;
  for (const auto& [key, coeff] : terms_) {
    MonoKey m = key;
    m.s = Exponent{key.s.const_part + key.s.k_part * kv, BigRat(0)};
    m.c = Exponent{key.c.const_part + key.c.k_part * kv, BigRat(0)};
    r.add_canonical(m, coeff.subst_k(kv));
  }
  return r;
}

RingElement RingElement::subst_q(const BigRat& qv) const {
  RingElement r;
  for (const auto& [key, coeff] : terms_) r.add_canonical(key, coeff.subst_q(qv));
  return r;
}

RingElement RingElement::shift_k() const {
  RingElement r;
  for (const auto& [key, coeff] : terms_) {
    MonoKey m = key;
    m.s.const_part += key.s.k_part;
    m.c.const_part += key.c.k_part;
    r.add_canonical(m, coeff.shift_k());
  }
  return r;
}

bool RingElement::depends_on_k() const {
  for (const auto& [key, coeff] : terms_) {
    if (key.s.k_part != 0 || key.c.k_part != 0) return true;
    if (coeff.degree_k() > 0) return true;
  }
  return false;
}

double RingElement::evaluate(double x, double y, double q, double k) const {
  const double s = std::sinh(q * x), c = std::cosh(q * x);
  const double S = std::sin(q * y), C = std::cos(q * y);
  double sum = 0;
  for (const auto& [key, coeff] : terms_) {
    const double se = key.s.value(k);
    if (s == 0.0 && se < 0.0)
      throw SingularPoint("csch power evaluated at x = 0");
    double t = coeff.eval_double(q, k);
    if (se != 0.0) t *= std::pow(s, se);
    const double ce = key.c.value(k);
    if (ce != 0.0) t *= std::pow(c, ce);
    for (int i = 0; i < key.sin_e; ++i) t *= S;
    for (int i = 0; i < key.cos_e; ++i) t *= C;
    sum += t;
  }
  return sum;
}

std::string RingElement::dump() const {
  if (terms_.empty()) return "0\n";
  std::ostringstream os;
  for (const auto& [key, coeff] : terms_) {
    os << "(" << coeff.str() << ")";
    if (!key.s.is_zero()) os << " * s^(" << key.s.str() << ")";
    if (!key.c.is_zero()) os << " * c^(" << key.c.str() << ")";
    if (key.sin_e) os << " * S^" << key.sin_e;
    if (key.cos_e) os << " * C^" << key.cos_e;
    os << "\n";
  }
  return os.str();
}

RingElement cos_multiple(int m) {
  // cos(m t), sin(m t) expanded over {S^a C^{0,1}} by the angle-addition
  // recurrence; exact and already canonical.
  RingElement cosm = RingElement::one();
  RingElement sinm = RingElement::zero();
  const RingElement C = RingElement::cos_pow(1), S = RingElement::sin_pow(1);
  for (int i = 0; i < m; ++i) {
    RingElement c2 = C * cosm - S * sinm;
    RingElement s2 = S * cosm + C * sinm;
    cosm = std::move(c2);
    sinm = std::move(s2);
  }
  return cosm;
}

RingElement sin_multiple(int m) {
  RingElement cosm = RingElement::one();
  RingElement sinm = RingElement::zero();
  const RingElement C = RingElement::cos_pow(1), S = RingElement::sin_pow(1);
  for (int i = 0; i < m; ++i) {
    RingElement c2 = C * cosm - S * sinm;
    RingElement s2 = S * cosm + C * sinm;
    cosm = std::move(c2);
    sinm = std::move(s2);
  }
  return sinm;
}

}  // namespace pdm
