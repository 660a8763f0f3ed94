#include "pdmlayer/model.hpp"

#include <array>

namespace pdm {

namespace {

// building blocks, fully symbolic in q and k
const PolyQK kQ = PolyQK::q();
const PolyQK kQ2 = PolyQK::q(2);
const PolyQK kK = PolyQK::k();

RingElement mono(int se, int ce, int sine, int cose, PolyQK coeff) {
  return RingElement(MonoKey{Exponent(se), Exponent(ce), sine, cose}, coeff);
}

// eta      =  cosh sin Dx - sinh cos Dy + (q sinh - q k csch) sin
// eta^dag  = -cosh sin Dx + sinh cos Dy - (q sinh + q k csch) sin
// etabar   =  cosh cos Dx + sinh sin Dy + (q sinh - q k csch) cos
// etab^dag = -cosh cos Dx - sinh sin Dy - (q sinh + q k csch) cos
DiffOperator make_eta(int sign_deriv, bool barred) {
  const int sine = barred ? 0 : 1;
  const int cose = barred ? 1 : 0;
  DiffOperator op;
  op.add_term(1, 0, mono(0, 1, sine, cose, PolyQK(BigRat(sign_deriv))));
  const int ysign = barred ? sign_deriv : -sign_deriv;
  op.add_term(0, 1, mono(1, 0, cose, sine, PolyQK(BigRat(ysign))));
  RingElement c0 = mono(1, 0, sine, cose, kQ * BigRat(sign_deriv)) +
                   mono(-1, 0, sine, cose, -(kQ * kK));
  op.add_term(0, 0, c0);
  return op;
}

DiffOperator make_H() {
  DiffOperator op;
  op.add_term(2, 0, mono(0, 2, 0, 0, PolyQK(BigRat(-1))));
  op.add_term(1, 0, mono(1, 1, 0, 0, kQ * BigRat(-2)));
  op.add_term(0, 2, mono(0, 2, 0, 0, PolyQK(BigRat(-1))));
  // V_eff = -q^2 cosh^2 + q^2 k(k-1) csch^2
  RingElement veff = mono(0, 2, 0, 0, -kQ2) + mono(-2, 0, 0, 0, kQ2 * (kK * kK - kK));
  op.add_term(0, 0, veff);
  return op;
}

DiffOperator make_R(bool barred) {
  // barred = false: the R display; barred = true swaps sin <-> cos and the
  // signs of the mixed terms.
  DiffOperator op;
  const int mix = barred ? -1 : 1;
  op.add_term(2, 0, mono(0, 2, barred ? 0 : 2, barred ? 2 : 0, PolyQK(BigRat(-1))));
  op.add_term(1, 1, mono(1, 1, 1, 1, PolyQK(BigRat(2 * mix))));
  op.add_term(0, 2, mono(2, 0, barred ? 2 : 0, barred ? 0 : 2, PolyQK(BigRat(-1))));
  // q sinh cosh (1 - 4 sin^2) Dx   [barred: 1 - 4 cos^2]
  {
    RingElement c = mono(1, 1, 0, 0, kQ) +
                    mono(1, 1, barred ? 0 : 2, barred ? 2 : 0, kQ * BigRat(-4));
    op.add_term(1, 0, c);
  }
  // +- q (1 + 4 sinh^2) sin cos Dy
  {
    RingElement c = mono(0, 0, 1, 1, kQ * BigRat(mix)) + mono(2, 0, 1, 1, kQ * BigRat(4 * mix));
    op.add_term(0, 1, c);
  }
  // q^2 (sinh^2 - t^2 - 3 sinh^2 t^2) - q^2 k (1 + csch^2 t^2) + q^2 k^2 csch^2 t^2,
  // with t = sin (plain) or cos (barred)
  {
    const int ts = barred ? 0 : 2, tc = barred ? 2 : 0;
    RingElement c = mono(2, 0, 0, 0, kQ2) + mono(0, 0, ts, tc, -kQ2) +
                    mono(2, 0, ts, tc, kQ2 * BigRat(-3)) + mono(0, 0, 0, 0, -(kQ2 * kK)) +
                    mono(-2, 0, ts, tc, -(kQ2 * kK)) + mono(-2, 0, ts, tc, kQ2 * kK * kK);
    op.add_term(0, 0, c);
  }
  return op;
}

DiffOperator make_symbolic(OperatorName name) {
  switch (name) {
    case OperatorName::H:
      return make_H();
    case OperatorName::H1:
      // H^{(k+1)} + 2 q^2 k
      return make_H().shift_k() + DiffOperator::mul_op(RingElement::constant(kQ2 * kK * 2));
    case OperatorName::L:
      return DiffOperator(0, 2, RingElement::constant(PolyQK(BigRat(-1))));
    case OperatorName::R:
      return make_R(false);
    case OperatorName::Rbar:
      return make_R(true);
    case OperatorName::Eta:
      return make_eta(+1, false);
    case OperatorName::EtaDag:
      return make_eta(-1, false);
    case OperatorName::EtaBar:
      return make_eta(+1, true);
    case OperatorName::EtaBarDag:
      return make_eta(-1, true);
    case OperatorName::Dy:
      return DiffOperator::dy();
    case OperatorName::Xi:
      return DiffOperator::mul_op(mono(-1, 0, 1, 0, PolyQK(BigRat(1))));
    case OperatorName::XiBar:
      return DiffOperator::mul_op(mono(-1, 0, 0, 1, PolyQK(BigRat(1))));
    case OperatorName::MassInv:
      return DiffOperator::mul_op(mono(0, 2, 0, 0, PolyQK(BigRat(1))));
    case OperatorName::Veff:
      return DiffOperator::mul_op(mono(0, 2, 0, 0, -kQ2) +
                                  mono(-2, 0, 0, 0, kQ2 * (kK * kK - kK)));
    case OperatorName::C: {
      // C = q {Dy, eta^dag etabar + etabar^dag eta}
      DiffOperator inner = op_compose(make_eta(-1, false), make_eta(+1, true)) +
                           op_compose(make_eta(-1, true), make_eta(+1, false));
      return op_anticommutator(DiffOperator::dy(), inner).scaled(kQ);
    }
  }
  return {};
}

}  // namespace

DiffOperator build_operator_symbolic(OperatorName name) { return make_symbolic(name); }

DiffOperator build_operator(OperatorName name, const ModelParams& p) {
  return make_symbolic(name).subst_k(p.k);
}

std::optional<OperatorName> operator_name_from_string(const std::string& s) {
  static const std::array<std::pair<const char*, OperatorName>, 15> table{{
      {"h", OperatorName::H}, {"h1", OperatorName::H1}, {"l", OperatorName::L},
      {"r", OperatorName::R}, {"rbar", OperatorName::Rbar}, {"eta", OperatorName::Eta},
      {"eta_dag", OperatorName::EtaDag}, {"eta_bar", OperatorName::EtaBar},
      {"eta_bar_dag", OperatorName::EtaBarDag}, {"dy", OperatorName::Dy},
      {"xi", OperatorName::Xi}, {"xi_bar", OperatorName::XiBar},
      {"mass_inv", OperatorName::MassInv}, {"veff", OperatorName::Veff},
      {"c", OperatorName::C},
  }};
  for (const auto& [key, val] : table)
    if (s == key) return val;
  return std::nullopt;
}

std::string to_string(OperatorName n) {
  switch (n) {
    case OperatorName::H: return "h";
    case OperatorName::H1: return "h1";
    case OperatorName::L: return "l";
    case OperatorName::R: return "r";
    case OperatorName::Rbar: return "rbar";
    case OperatorName::Eta: return "eta";
    case OperatorName::EtaDag: return "eta_dag";
    case OperatorName::EtaBar: return "eta_bar";
    case OperatorName::EtaBarDag: return "eta_bar_dag";
    case OperatorName::Dy: return "dy";
    case OperatorName::Xi: return "xi";
    case OperatorName::XiBar: return "xi_bar";
    case OperatorName::MassInv: return "mass_inv";
    case OperatorName::Veff: return "veff";
    case OperatorName::C: return "c";
  }
  return "?";
}

BigRat energy(int N, const ModelParams& p) {
  return p.q * p.q * BigRat(N + 2) * (BigRat(N + 1) + 2 * p.k);
}

std::vector<BigRat> energy_poly_k(int N) {
  // (N+2)(N+2k+1) = (N+2)(N+1) + 2(N+2) k
  return {BigRat((N + 2) * (N + 1)), BigRat(2 * (N + 2))};
}

int degeneracy(int N) { return N / 2 + 1; }

BigRat r_eigenvalue(int nu, const ModelParams& p) {
  return p.q * p.q * BigRat(nu) * (BigRat(nu) + 2 * p.k);
}

bool sum_rule_check(const ModelParams& p) {
  const DiffOperator h = build_operator(OperatorName::H, p);
  DiffOperator rhs = build_operator(OperatorName::L, p) +
                     build_operator(OperatorName::R, p) +
                     build_operator(OperatorName::Rbar, p);
  rhs += DiffOperator::mul_op(RingElement::constant((kQ2 * kK * 2).subst_k(p.k)));
  return op_equals(h, rhs).equal;
}

}  // namespace pdm
