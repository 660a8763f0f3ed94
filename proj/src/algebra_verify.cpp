#include "pdmlayer/algebra_verify.hpp"

#include <vector>

namespace pdm {

namespace {

const PolyQK kQ = PolyQK::q();
const PolyQK kQ2 = PolyQK::q(2);
const PolyQK kQ4 = PolyQK::q(4);
const PolyQK kQ6 = PolyQK::q(6);
const PolyQK kQ8 = PolyQK::q(8);
const PolyQK kK = PolyQK::k();
const BigRat kThird(1, 3);

DiffOperator eta_bar(const ModelParams& p, const Mutations& mut) {
  DiffOperator op = build_operator(OperatorName::EtaBar, p);
  if (mut.flip_eta_bar_sign) {
    // flip the q sinh qx cos qy multiplication term
    RingElement fix(MonoKey{Exponent(1), Exponent(0), 0, 1}, kQ * BigRat(-2));
    op.add_term(0, 0, fix);
  }
  return op;
}

IdentityResult check_one(std::string name, const DiffOperator& lhs, const DiffOperator& rhs,
                         std::uint64_t seed = 0x5EED) {
  EqualsResult r = op_equals(lhs, rhs, seed);
  return {std::move(name), r.equal, r.residual_terms,
          r.decided_by == EqualityPath::Symbolic ? "symbolic" : "numeric"};
}

}  // namespace

AlgebraCoefficients model_coefficients(const ModelParams& p) {
  AlgebraCoefficients co;
  co.alpha = kQ2 * BigRat(8);
  co.gamma = kQ2 * BigRat(8);
  co.a = PolyQK();
  co.delta = {kQ4 * (kK * BigRat(2) - PolyQK(BigRat(1))) * BigRat(8), kQ2 * BigRat(-8)};
  co.epsilon = {kQ4 * ((kK - PolyQK(BigRat(1))) * (kK + PolyQK(BigRat(1)))) * BigRat(16)};
  co.zeta = {kQ6 * (kK * (kK - PolyQK(BigRat(1)))) * BigRat(16),
             kQ4 * (kK - PolyQK(BigRat(1))) * BigRat(-8)};
  co.d = {kQ4 * BigRat(16)};
  co.z = {kQ6 * kK * BigRat(16), kQ4 * BigRat(-8)};
  // substitute the model's k
  auto sub = [&](PolyQK& c) { c = c.subst_k(p.k); };
  sub(co.alpha);
  sub(co.gamma);
  sub(co.a);
  for (auto& c : co.delta) sub(c);
  for (auto& c : co.epsilon) sub(c);
  for (auto& c : co.zeta) sub(c);
  for (auto& c : co.d) sub(c);
  for (auto& c : co.z) sub(c);
  return co;
}

CasimirPolynomial expected_casimir(const ModelParams& p) {
  // -4q^4 [2q^2(7k-6) - 3H](2q^2 k - H)
  //   = -16 q^8 k(7k-6) + 8 q^6 (10k-6) H - 12 q^4 H^2
  CasimirPolynomial kp;
  kp.k0 = (kQ8 * (kK * (kK * BigRat(7) - PolyQK(BigRat(6)))) * BigRat(-16)).subst_k(p.k);
  kp.k1 = (kQ6 * (kK * BigRat(10) - PolyQK(BigRat(6))) * BigRat(8)).subst_k(p.k);
  kp.k2 = kQ4 * BigRat(-12);
  kp.k3 = PolyQK();
  return kp;
}

VerificationReport first_order_algebra_check(const ModelParams& p, const Mutations& mut,
                                             std::uint64_t oracle_seed) {
  const DiffOperator dy = DiffOperator::dy();
  const DiffOperator e = build_operator(OperatorName::Eta, p);
  const DiffOperator ed = build_operator(OperatorName::EtaDag, p);
  const DiffOperator eb = eta_bar(p, mut);
  const DiffOperator ebd = build_operator(OperatorName::EtaBarDag, p);
  const RingElement xi = build_operator(OperatorName::Xi, p).coeff(0, 0);
  const RingElement xib = build_operator(OperatorName::XiBar, p).coeff(0, 0);
  const PolyQK qp = kQ.subst_k(p.k);
  const PolyQK two_q2k = (kQ2 * kK * BigRat(2)).subst_k(p.k);

  auto mul_of = [](const RingElement& f) { return DiffOperator::mul_op(f); };
  const RingElement one = RingElement::one();

  VerificationReport rep;
  rep.entries.push_back(check_one("[dy,eta] == q etabar", op_commutator(dy, e), eb.scaled(qp), oracle_seed));
  rep.entries.push_back(check_one("[dy,etabar] == -q eta", op_commutator(dy, eb), e.scaled(-qp), oracle_seed));
  rep.entries.push_back(check_one("[eta,etabar] == q dy", op_commutator(e, eb), dy.scaled(qp), oracle_seed));
  rep.entries.push_back(check_one("[eta,eta_dag] == 2q^2k(1+xi^2)", op_commutator(e, ed),
                                  mul_of((one + ring_mul(xi, xi)).scaled(two_q2k)),
                                  oracle_seed));
  rep.entries.push_back(check_one("[etabar,etabar_dag] == 2q^2k(1+xibar^2)",
                                  op_commutator(eb, ebd),
                                  mul_of((one + ring_mul(xib, xib)).scaled(two_q2k)),
                                  oracle_seed));
  rep.entries.push_back(check_one("[eta,etabar_dag] == -q dy + 2q^2k xi xibar",
                                  op_commutator(e, ebd),
                                  dy.scaled(-qp) + mul_of(ring_mul(xi, xib).scaled(two_q2k)),
                                  oracle_seed));
  rep.entries.push_back(check_one("[dy,eta_dag] == q etabar_dag", op_commutator(dy, ed),
                                  ebd.scaled(qp), oracle_seed));
  rep.entries.push_back(check_one("[dy,etabar_dag] == -q eta_dag", op_commutator(dy, ebd),
                                  ed.scaled(-qp), oracle_seed));
  rep.entries.push_back(check_one("[eta_dag,etabar_dag] == q dy", op_commutator(ed, ebd),
                                  dy.scaled(qp), oracle_seed));
  return rep;
}

DiffOperator compute_C(const ModelParams& p) { return build_operator(OperatorName::C, p); }

namespace {

// H-polynomial applied as an operator: c0 + c1 H + c2 H^2 (H commutes with
// A and B, so left placement is canonical).
DiffOperator h_poly_op(const std::vector<PolyQK>& c, const DiffOperator& h) {
  DiffOperator r;
  DiffOperator hp = DiffOperator::identity();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) hp = op_compose(h, hp);
    r += hp.scaled(c[i]);
  }
  return r;
}

DiffOperator h_poly_times(const std::vector<PolyQK>& c, const DiffOperator& h,
                          const DiffOperator& target) {
  return op_compose(h_poly_op(c, h), target);
}

std::vector<PolyQK> scale_list(const std::vector<PolyQK>& c, const PolyQK& s) {
  std::vector<PolyQK> r;
  r.reserve(c.size());
  for (const auto& e : c) r.push_back(e * s);
  return r;
}

}  // namespace

AlgebraCoefficients quadratic_algebra_check(const ModelParams& p) {
  const AlgebraCoefficients co = model_coefficients(p);
  const DiffOperator A = build_operator(OperatorName::R, p);
  const DiffOperator B = build_operator(OperatorName::L, p);
  const DiffOperator H = build_operator(OperatorName::H, p);
  const DiffOperator C = compute_C(p);

  DiffOperator rhs1 = op_compose(A, A).scaled(co.alpha) +
                      op_anticommutator(A, B).scaled(co.gamma) +
                      h_poly_times(co.delta, H, A) + h_poly_times(co.epsilon, H, B) +
                      h_poly_op(co.zeta, H);
  DiffOperator res1 = op_commutator(A, C) - rhs1;
  if (!res1.is_zero())
    throw ResidualNonzero("[A,C] residual has " + std::to_string(res1.term_count()) +
                          " terms:\n" + res1.dump());

  DiffOperator rhs2 = op_compose(A, A).scaled(co.a) - op_compose(B, B).scaled(co.gamma) -
                      op_anticommutator(A, B).scaled(co.alpha) + h_poly_times(co.d, H, A) -
                      h_poly_times(co.delta, H, B) + h_poly_op(co.z, H);
  DiffOperator res2 = op_commutator(B, C) - rhs2;
  if (!res2.is_zero())
    throw ResidualNonzero("[B,C] residual has " + std::to_string(res2.term_count()) +
                          " terms:\n" + res2.dump());
  return co;
}

DiffOperator casimir_operator(const ModelParams& p) {
  const AlgebraCoefficients co = model_coefficients(p);
  const DiffOperator A = build_operator(OperatorName::R, p);
  const DiffOperator B = build_operator(OperatorName::L, p);
  const DiffOperator H = build_operator(OperatorName::H, p);
  const DiffOperator C = compute_C(p);

  const DiffOperator AA = op_compose(A, A);
  const DiffOperator AB = op_compose(A, B);
  const DiffOperator BA = op_compose(B, A);
  const DiffOperator BB = op_compose(B, B);
  // symmetrized triples: all six orderings of the multiset
  DiffOperator AAB = (op_compose(AA, B) + op_compose(A, op_compose(B, A)) +
                      op_compose(B, AA)).scaled(PolyQK(BigRat(2)));
  DiffOperator ABB = (op_compose(A, BB) + op_compose(B, AB) +
                      op_compose(BB, A)).scaled(PolyQK(BigRat(2)));

  const BigRat kTwoThirds = BigRat(2) * kThird;
  DiffOperator K = op_compose(C, C);
  K += op_compose(A, AA).scaled(co.a * kTwoThirds);
  K -= AAB.scaled(co.alpha * kThird);
  K -= ABB.scaled(co.gamma * kThird);
  K += AA.scaled(co.alpha * co.alpha * kTwoThirds + co.a * co.gamma * kTwoThirds);
  K += h_poly_times(co.d, H, AA);
  K += (AB + BA).scaled(co.alpha * co.gamma * kThird);
  K -= h_poly_times(co.delta, H, AB + BA);
  K += BB.scaled(co.gamma * co.gamma * kTwoThirds);
  K -= h_poly_times(co.epsilon, H, BB);
  K += h_poly_times(scale_list(co.delta, co.alpha * kTwoThirds), H, A);
  K += h_poly_times(scale_list(co.epsilon, co.a * kThird), H, A);
  K += h_poly_times(scale_list(co.d, co.gamma * kThird), H, A);
  K += h_poly_times(scale_list(co.z, PolyQK(BigRat(2))), H, A);
  K -= h_poly_times(scale_list(co.epsilon, co.alpha * kThird), H, B);
  K += h_poly_times(scale_list(co.delta, co.gamma * kTwoThirds), H, B);
  K -= h_poly_times(scale_list(co.zeta, PolyQK(BigRat(2))), H, B);
  K += h_poly_op(scale_list(co.z, co.gamma * kThird), H);
  K -= h_poly_op(scale_list(co.zeta, co.alpha * kThird), H);
  return K;
}

DiffOperator casimir_from_polynomial(const CasimirPolynomial& kp, const ModelParams& p) {
  const DiffOperator H = build_operator(OperatorName::H, p);
  return h_poly_op({kp.k0, kp.k1, kp.k2, kp.k3}, H);
}

CasimirPolynomial casimir_check(const ModelParams& p, const Mutations& mut) {
  CasimirPolynomial kp = expected_casimir(p);
  if (mut.casimir_const_off) kp.k0 += kQ8;
  const DiffOperator K = casimir_operator(p);
  DiffOperator res = K - casimir_from_polynomial(kp, p);
  if (!res.is_zero())
    throw ResidualNonzero("Casimir residual has " + std::to_string(res.term_count()) +
                          " terms:\n" + res.dump());
  return kp;
}

std::optional<FittedCoefficients> fit_quadratic_coefficients(const ModelParams& p,
                                                             const Mutations& mut) {
  // Exact linear solve at fixed (q, k): match canonical monomials of [A,C]
  // against span{A^2, {A,B}, A, HA, B, HB, 1, H, H^2}.
  DiffOperator A = build_operator(OperatorName::R, p).subst_q(p.q);
  DiffOperator B = build_operator(OperatorName::L, p).subst_q(p.q);
  DiffOperator H = build_operator(OperatorName::H, p).subst_q(p.q);
  DiffOperator ebar = eta_bar(p, mut).subst_q(p.q);
  DiffOperator C = op_anticommutator(
      DiffOperator::dy(),
      op_compose(build_operator(OperatorName::EtaDag, p).subst_q(p.q), ebar) +
          op_compose(build_operator(OperatorName::EtaBarDag, p).subst_q(p.q),
                     build_operator(OperatorName::Eta, p).subst_q(p.q)))
                         .scaled(kQ.subst_k(p.k).subst_q(p.q));

  std::vector<DiffOperator> basis = {
      op_compose(A, A), op_anticommutator(A, B), A, op_compose(H, A),
      B, op_compose(H, B), DiffOperator::identity(), H, op_compose(H, H)};
  DiffOperator lhs = op_commutator(A, C);

  // row space: every (operator key, monomial key) seen anywhere
  std::map<std::pair<DiffOperator::Key, MonoKey>, std::size_t> rows;
  auto collect = [&rows](const DiffOperator& op) {
    for (const auto& [ok, ring] : op.terms())
      for (const auto& [mk, c] : ring.terms())
        rows.emplace(std::make_pair(ok, mk), rows.size());
  };
  collect(lhs);
  for (const auto& b : basis) collect(b);

  const std::size_t m = rows.size(), n = basis.size();
  std::vector<std::vector<BigRat>> M(m, std::vector<BigRat>(n + 1, BigRat(0)));
  auto fill = [&](const DiffOperator& op, std::size_t col) {
    for (const auto& [ok, ring] : op.terms())
      for (const auto& [mk, c] : ring.terms())
        M[rows.at({ok, mk})][col] = c.eval(1, 1);  // constant after substitution
  };
  for (std::size_t j = 0; j < n; ++j) fill(basis[j], j);
  fill(lhs, n);

  // Gaussian elimination with partial pivot search (exact)
  std::vector<std::size_t> pivot_row(n, SIZE_MAX);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t pr = SIZE_MAX;
    for (std::size_t i = r; i < m; ++i)
      if (M[i][c] != 0) { pr = i; break; }
    if (pr == SIZE_MAX) continue;
    std::swap(M[r], M[pr]);
    const BigRat inv = M[r][c];
    for (auto& v : M[r]) v /= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || M[i][c] == 0) continue;
      const BigRat f = M[i][c];
      for (std::size_t j2 = c; j2 <= n; ++j2) M[i][j2] -= f * M[r][j2];
    }
    pivot_row[c] = r;
    ++r;
  }
  // consistency: all remaining rows must be zero
  for (std::size_t i = r; i < m; ++i)
    if (M[i][n] != 0) return std::nullopt;
  std::vector<BigRat> sol(n, BigRat(0));
  for (std::size_t c = 0; c < n; ++c)
    if (pivot_row[c] != SIZE_MAX) sol[c] = M[pivot_row[c]][n];

  FittedCoefficients out;
  out.alpha = sol[0];
  out.gamma = sol[1];
  out.delta0 = sol[2];
  out.delta1 = sol[3];
  out.eps0 = sol[4];
  out.eps1 = sol[5];
  out.zeta0 = sol[6];
  out.zeta1 = sol[7];
  out.zeta2 = sol[8];
  return out;
}

VerificationReport verify_algebra(const ModelParams& p, const Mutations& mut,
                                  std::uint64_t oracle_seed) {
  VerificationReport rep = first_order_algebra_check(p, mut, oracle_seed);

  const DiffOperator H = build_operator(OperatorName::H, p);
  const DiffOperator L = build_operator(OperatorName::L, p);
  const DiffOperator R = build_operator(OperatorName::R, p);
  const DiffOperator Rbar = build_operator(OperatorName::Rbar, p);
  const DiffOperator e = build_operator(OperatorName::Eta, p);
  const DiffOperator ed = build_operator(OperatorName::EtaDag, p);
  const DiffOperator eb = eta_bar(p, mut);
  const DiffOperator ebd = build_operator(OperatorName::EtaBarDag, p);
  const DiffOperator zero = DiffOperator::zero();

  rep.entries.push_back(check_one("[H,L] == 0", op_commutator(H, L), zero));
  rep.entries.push_back(check_one("[H,R] == 0", op_commutator(H, R), zero));
  rep.entries.push_back(check_one("[H,Rbar] == 0", op_commutator(H, Rbar), zero));
  {
    // L and R must NOT commute
    bool noncommuting = false;
    try {
      noncommuting = !op_equals(op_commutator(L, R), zero).equal;
    } catch (const OracleInconclusive&) {
      noncommuting = false;
    }
    rep.add("[L,R] != 0", noncommuting, 0, "numeric");
  }
  const DiffOperator H1 = build_operator(OperatorName::H1, p);
  rep.entries.push_back(
      check_one("eta H == H1 eta (intertwining)", op_compose(e, H), op_compose(H1, e)));
  rep.entries.push_back(
      check_one("etabar H == H1 etabar (intertwining)", op_compose(eb, H), op_compose(H1, eb)));
  rep.entries.push_back(check_one("R == eta_dag o eta", R, op_compose(ed, e)));
  rep.entries.push_back(check_one("Rbar == etabar_dag o etabar", Rbar, op_compose(ebd, eb)));
  {
    DiffOperator rhs = L + R + Rbar +
                       DiffOperator::mul_op(RingElement::constant((kQ2 * kK * BigRat(2)).subst_k(p.k)));
    rep.entries.push_back(check_one("H == L + R + Rbar + 2q^2k", H, rhs));
  }
  const DiffOperator C = compute_C(p);
  rep.entries.push_back(check_one("C == [R,L]", C, op_commutator(R, L)));
  rep.add("C is third order", C.order() == 3);
  {
    bool qpass = true;
    try {
      quadratic_algebra_check(p);
    } catch (const ResidualNonzero&) {
      qpass = false;
    }
    rep.add("[A,C] and [B,C] match the coefficient set", qpass);
    rep.add("a == 0 (QR(3))", model_coefficients(p).a.is_zero());
  }
  {
    // Jacobi identity [A,[B,C]] == [B,[A,C]]
    const DiffOperator lhs = op_commutator(R, op_commutator(L, C));
    const DiffOperator rhs = op_commutator(L, op_commutator(R, C));
    rep.entries.push_back(check_one("Jacobi [A,[B,C]] == [B,[A,C]]", lhs, rhs));
  }
  {
    bool cpass = true;
    try {
      casimir_check(p, mut);
    } catch (const ResidualNonzero&) {
      cpass = false;
    }
    rep.add("K == -4q^4[2q^2(7k-6)-3H](2q^2k-H)", cpass);
    rep.add("k3 == 0", expected_casimir(p).k3.is_zero());
  }
  return rep;
}

}  // namespace pdm
