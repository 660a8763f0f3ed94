#include "pdmlayer/classical.hpp"

#include <sstream>

namespace pdm {

PhaseSpacePolynomial::PhaseSpacePolynomial(int px, int py, RingElement coeff) {
  add_term(px, py, coeff);
}

void PhaseSpacePolynomial::add_term(int px, int py, const RingElement& coeff) {
  if (coeff.is_zero()) return;
  auto it = terms_.find({px, py});
  if (it == terms_.end()) {
    terms_.emplace(Key{px, py}, coeff);
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

RingElement PhaseSpacePolynomial::coeff(int px, int py) const {
  auto it = terms_.find({px, py});
  return it == terms_.end() ? RingElement::zero() : it->second;
}

std::size_t PhaseSpacePolynomial::term_count() const {
  std::size_t n = 0;
  for (const auto& [key, c] : terms_) n += c.size();
  return n;
}

PhaseSpacePolynomial& PhaseSpacePolynomial::operator+=(const PhaseSpacePolynomial& o) {
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, c);
  return *this;
}

PhaseSpacePolynomial& PhaseSpacePolynomial::operator-=(const PhaseSpacePolynomial& o) {
  for (const auto& [key, c] : o.terms_) add_term(key.first, key.second, -c);
  return *this;
}

PhaseSpacePolynomial operator-(const PhaseSpacePolynomial& a) {
  PhaseSpacePolynomial r;
  for (const auto& [key, c] : a.terms_) r.terms_.emplace(key, -c);
  return r;
}

PhaseSpacePolynomial operator*(const PhaseSpacePolynomial& a, const PhaseSpacePolynomial& b) {
  PhaseSpacePolynomial r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      r.add_term(ka.first + kb.first, ka.second + kb.second, ring_mul(ca, cb));
  return r;
}

PhaseSpacePolynomial PhaseSpacePolynomial::scaled(const PolyQK& c) const {
  PhaseSpacePolynomial r;
  for (const auto& [key, t] : terms_) {
    RingElement sc = t.scaled(c);
    if (!sc.is_zero()) r.terms_.emplace(key, std::move(sc));
  }
  return r;
}

std::string PhaseSpacePolynomial::dump() const {
  if (terms_.empty()) return "0\n";
  std::ostringstream os;
  for (const auto& [key, t] : terms_) {
    for (const auto& [mk, coeff] : t.terms()) {
      os << "(" << coeff.str("Q", "K") << ")";
      if (!mk.s.is_zero()) os << " * s^(" << mk.s.str() << ")";
      if (!mk.c.is_zero()) os << " * c^(" << mk.c.str() << ")";
      if (mk.sin_e) os << " * S^" << mk.sin_e;
      if (mk.cos_e) os << " * C^" << mk.cos_e;
      if (key.first) os << " * Px^" << key.first;
      if (key.second) os << " * Py^" << key.second;
      os << "\n";
    }
  }
  return os.str();
}

PhaseSpacePolynomial poisson_bracket(const PhaseSpacePolynomial& f,
                                     const PhaseSpacePolynomial& g) {
  // {f,g} = fX gPX - fPX gX + fY gPY - fPY gY
  auto d_coord = [](const PhaseSpacePolynomial& h, char axis) {
    PhaseSpacePolynomial r;
    for (const auto& [key, c] : h.terms()) r.add_term(key.first, key.second, c.diff(axis));
    return r;
  };
  auto d_mom = [](const PhaseSpacePolynomial& h, bool wrt_px) {
    PhaseSpacePolynomial r;
    for (const auto& [key, c] : h.terms()) {
      const int n = wrt_px ? key.first : key.second;
      if (n == 0) continue;
      r.add_term(wrt_px ? key.first - 1 : key.first, wrt_px ? key.second : key.second - 1,
                 c.scaled(PolyQK(BigRat(n))));
    }
    return r;
  };
  return d_coord(f, 'x') * d_mom(g, true) - d_mom(f, true) * d_coord(g, 'x') +
         d_coord(f, 'y') * d_mom(g, false) - d_mom(f, false) * d_coord(g, 'y');
}

namespace {

const PolyQK kQ = PolyQK::q();     // read as Q in this module
const PolyQK kQ2 = PolyQK::q(2);
const PolyQK kQ4 = PolyQK::q(4);
const PolyQK kK = PolyQK::k();     // read as Kc

RingElement mono(int se, int ce, int sine, int cose, PolyQK coeff) {
  return RingElement(MonoKey{Exponent(se), Exponent(ce), sine, cose}, coeff);
}

RingElement subst(const RingElement& e, const ClassicalParams& cp) {
  return e.subst_k(cp.Kc);
}

}  // namespace

ComplexPhaseSpace classical_eta(const ClassicalParams& cp) {
  // i cosh sin P_X - i sinh cos P_Y - Q K csch sin
  ComplexPhaseSpace e;
  e.im.add_term(1, 0, subst(mono(0, 1, 1, 0, PolyQK(BigRat(1))), cp));
  e.im.add_term(0, 1, subst(mono(1, 0, 0, 1, PolyQK(BigRat(-1))), cp));
  e.re.add_term(0, 0, subst(mono(-1, 0, 1, 0, -(kQ * kK)), cp));
  return e;
}

ComplexPhaseSpace classical_eta_bar(const ClassicalParams& cp) {
  // i cosh cos P_X + i sinh sin P_Y - Q K csch cos
  ComplexPhaseSpace e;
  e.im.add_term(1, 0, subst(mono(0, 1, 0, 1, PolyQK(BigRat(1))), cp));
  e.im.add_term(0, 1, subst(mono(1, 0, 1, 0, PolyQK(BigRat(1))), cp));
  e.re.add_term(0, 0, subst(mono(-1, 0, 0, 1, -(kQ * kK)), cp));
  return e;
}

PhaseSpacePolynomial classical_object(OperatorName name, const ClassicalParams& cp) {
  switch (name) {
    case OperatorName::H: {
      PhaseSpacePolynomial h;
      h.add_term(2, 0, subst(mono(0, 2, 0, 0, PolyQK(BigRat(1))), cp));
      h.add_term(0, 2, subst(mono(0, 2, 0, 0, PolyQK(BigRat(1))), cp));
      h.add_term(0, 0, subst(mono(-2, 0, 0, 0, kQ2 * kK * kK), cp));
      return h;
    }
    case OperatorName::L:
      return PhaseSpacePolynomial(0, 2, RingElement::one());
    case OperatorName::R: {
      PhaseSpacePolynomial r;
      r.add_term(2, 0, subst(mono(0, 2, 2, 0, PolyQK(BigRat(1))), cp));
      r.add_term(1, 1, subst(mono(1, 1, 1, 1, PolyQK(BigRat(-2))), cp));
      r.add_term(0, 2, subst(mono(2, 0, 0, 2, PolyQK(BigRat(1))), cp));
      r.add_term(0, 0, subst(mono(-2, 0, 2, 0, kQ2 * kK * kK), cp));
      return r;
    }
    case OperatorName::Rbar: {
      PhaseSpacePolynomial r;
      r.add_term(2, 0, subst(mono(0, 2, 0, 2, PolyQK(BigRat(1))), cp));
      r.add_term(1, 1, subst(mono(1, 1, 1, 1, PolyQK(BigRat(2))), cp));
      r.add_term(0, 2, subst(mono(2, 0, 2, 0, PolyQK(BigRat(1))), cp));
      r.add_term(0, 0, subst(mono(-2, 0, 0, 2, kQ2 * kK * kK), cp));
      return r;
    }
    case OperatorName::C: {
      // 2Q P_Y (eta* etabar + etabar* eta); the imaginary part cancels
      const ComplexPhaseSpace e = classical_eta(cp), eb = classical_eta_bar(cp);
      ComplexPhaseSpace prod = e.conj() * eb + eb.conj() * e;
      if (!prod.im.is_zero())
        throw ResidualNonzero("classical C has a nonzero imaginary part");
      PhaseSpacePolynomial c = (PhaseSpacePolynomial::py() * prod.re).scaled(kQ * BigRat(2));
      return c;
    }
    case OperatorName::Xi:
      return PhaseSpacePolynomial(0, 0, mono(-1, 0, 1, 0, PolyQK(BigRat(1))));
    case OperatorName::XiBar:
      return PhaseSpacePolynomial(0, 0, mono(-1, 0, 0, 1, PolyQK(BigRat(1))));
    case OperatorName::MassInv:
      return PhaseSpacePolynomial(0, 0, mono(0, 2, 0, 0, PolyQK(BigRat(1))));
    case OperatorName::Veff:
      return PhaseSpacePolynomial(0, 0, subst(mono(-2, 0, 0, 0, kQ2 * kK * kK), cp));
    default:
      throw std::invalid_argument("no real classical analog for operator " + to_string(name) +
                                  " (eta limits are complex; see classical_eta)");
  }
}

namespace {

// Classical limit of a quantum coefficient under q -> hbar Q, k -> Kc/hbar
// and the (i hbar)^{-1} bracket convention: monomial q^a k^b carries
// hbar^{a-b}; the surviving weight is -[coefficient of hbar^2]. Lower powers
// diverging would flag an inconsistency.
struct HbarLimit {
  PolyQK value;
  bool divergent{false};
};

HbarLimit hbar_limit(const PolyQK& quantum) {
  HbarLimit out;
  for (const auto& [key, c] : quantum.terms()) {
    const int hpow = key.first - key.second;
    if (hpow < 2)
      out.divergent = true;
    else if (hpow == 2)
      out.value += PolyQK(key.first, key.second, -c);
  }
  return out;
}

}  // namespace

VerificationReport classical_algebra_check(const ClassicalParams& cp) {
  VerificationReport rep;
  const PhaseSpacePolynomial A = classical_object(OperatorName::R, cp);
  const PhaseSpacePolynomial B = classical_object(OperatorName::L, cp);
  const PhaseSpacePolynomial H = classical_object(OperatorName::H, cp);
  const PhaseSpacePolynomial Rb = classical_object(OperatorName::Rbar, cp);
  const PhaseSpacePolynomial C = classical_object(OperatorName::C, cp);

  // R_c = eta_c^* eta_c
  {
    const ComplexPhaseSpace e = classical_eta(cp);
    ComplexPhaseSpace prod = e.conj() * e;
    rep.add("R_c == eta_c^* eta_c", prod.im.is_zero() && (prod.re - A).is_zero());
  }
  rep.add("H_c == L_c + R_c + Rbar_c", (H - (B + A + Rb)).is_zero());
  rep.add("{H_c,L_c} == 0", poisson_bracket(H, B).is_zero());
  rep.add("{H_c,R_c} == 0", poisson_bracket(H, A).is_zero());
  rep.add("{H_c,Rbar_c} == 0", poisson_bracket(H, Rb).is_zero());
  rep.add("{A_c,B_c} == C_c", (poisson_bracket(A, B) - C).is_zero());

  // classical coefficient set
  const PolyQK alpha_c = (kQ2 * BigRat(-8));
  const PolyQK gamma_c = alpha_c;
  const PolyQK eps_c = (kQ4 * kK * kK * BigRat(-16)).subst_k(cp.Kc);
  const PhaseSpacePolynomial delta_cA = (H * A).scaled(kQ2 * BigRat(8));
  const PhaseSpacePolynomial delta_cB = (H * B).scaled(kQ2 * BigRat(8));

  {
    PhaseSpacePolynomial rhs = (A * A).scaled(alpha_c) + (A * B).scaled(gamma_c * BigRat(2)) +
                               delta_cA + B.scaled(eps_c);
    PhaseSpacePolynomial res = poisson_bracket(A, C) - rhs;
    rep.add("{A_c,C_c} == alpha_c A^2 + 2 gamma_c AB + delta_c A + eps_c B", res.is_zero(),
            res.term_count());
  }
  {
    PhaseSpacePolynomial rhs = -(B * B).scaled(gamma_c) - (A * B).scaled(alpha_c * BigRat(2)) -
                               delta_cB;
    PhaseSpacePolynomial res = poisson_bracket(B, C) - rhs;
    rep.add("{B_c,C_c} == -gamma_c B^2 - 2 alpha_c AB - delta_c B", res.is_zero(),
            res.term_count());
  }
  {
    // Poisson Casimir with the classical weights:
    //   K_c = C^2 - 2 alpha A^2 B - 2 gamma A B^2 - 2 delta AB - eps B^2
    // (a_c = d_c = z_c = zeta_c = 0); identically zero for this model.
    PhaseSpacePolynomial Kc = C * C - (A * A * B).scaled(alpha_c * BigRat(2)) -
                              (A * B * B).scaled(gamma_c * BigRat(2)) -
                              (delta_cA * B).scaled(PolyQK(BigRat(2))) -
                              (B * B).scaled(eps_c);
    rep.add("K_c == 0", Kc.is_zero(), Kc.term_count());
  }
  {
    PhaseSpacePolynomial cyc = poisson_bracket(A, poisson_bracket(B, C)) +
                               poisson_bracket(B, poisson_bracket(C, A)) +
                               poisson_bracket(C, poisson_bracket(A, B));
    rep.add("Jacobi cyclic sum == 0", cyc.is_zero());
  }
  {
    // hbar-scaling consistency with the quantum coefficient set
    const PolyQK q2 = PolyQK::q(2), q4 = PolyQK::q(4), k1 = PolyQK::k();
    auto lim = [&](const PolyQK& quantum, const PolyQK& expect, const char* name) {
      HbarLimit l = hbar_limit(quantum);
      rep.add(std::string("hbar limit: ") + name, !l.divergent && l.value == expect);
    };
    lim(q2 * BigRat(8), q2 * BigRat(-8), "alpha -> alpha_c");
    lim(q2 * BigRat(8), q2 * BigRat(-8), "gamma -> gamma_c");
    // delta_1 H: -8q^2 H -> +8Q^2 H_c
    lim(q2 * BigRat(-8), q2 * BigRat(8), "delta_1 -> delta_c/H_c");
    lim(q4 * (k1 * k1 - PolyQK(BigRat(1))) * BigRat(16), q4 * k1 * k1 * BigRat(-16),
        "epsilon -> eps_c");
    lim(PolyQK::q(6) * (k1 * (k1 - PolyQK(BigRat(1)))) * BigRat(16), PolyQK(), "zeta_0 -> 0");
    lim(q4 * (k1 - PolyQK(BigRat(1))) * BigRat(-8), PolyQK(), "zeta_1 -> 0");
    lim(q4 * BigRat(16), PolyQK(), "d -> 0");
    lim(PolyQK::q(6) * k1 * BigRat(16), PolyQK(), "z_0 -> 0");
    lim(q4 * BigRat(-8), PolyQK(), "z_1 -> 0");
  }
  return rep;
}

}  // namespace pdm
