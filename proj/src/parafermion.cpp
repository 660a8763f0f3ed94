#include "pdmlayer/parafermion.hpp"

namespace pdm {

namespace {

BigRat pow_rat(const BigRat& b, int e) {
  BigRat r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

BigRat pow2(int e) { return pow_rat(BigRat(2), e); }

// model coefficient values at H = E (scalars; q, k from params)
struct CoeffValues {
  BigRat alpha, gamma, a, delta, eps, zeta, d, z, K;
};

CoeffValues coeff_values(const BigRat& E, const ModelParams& p) {
  const BigRat q2 = p.q * p.q, q4 = q2 * q2, q6 = q4 * q2;
  const BigRat& k = p.k;
  CoeffValues v;
  v.alpha = 8 * q2;
  v.gamma = 8 * q2;
  v.a = 0;
  v.delta = 8 * q2 * (q2 * (2 * k - 1) - E);
  v.eps = 16 * q4 * (k - 1) * (k + 1);
  v.zeta = 8 * q4 * (k - 1) * (2 * q2 * k - E);
  v.d = 16 * q4;
  v.z = 8 * q4 * (2 * q2 * k - E);
  // Casimir eigenvalue: -4q^4 [2q^2(7k-6) - 3E](2q^2 k - E)
  v.K = -4 * q4 * (2 * q2 * (7 * k - 6) - 3 * E) * (2 * q2 * k - E);
  return v;
}

}  // namespace

BigRat phi_general(const BigRat& x, const StructureFunctionParams& sp, const ModelParams& p) {
  const CoeffValues v = coeff_values(sp.E, p);
  const BigRat g2 = v.gamma * v.gamma;
  const BigRat g4 = g2 * g2, g6 = g4 * g2, g8 = g4 * g4;
  const BigRat xu = x + sp.u;
  const BigRat t1 = 2 * xu - 1, t3 = 2 * xu - 3, tp = 2 * xu + 1;
  const BigRat t1_2 = t1 * t1, t1_4 = t1_2 * t1_2;

  BigRat phi = -3072 * g6 * v.K * t1_2;
  phi -= 48 * g6 * (v.alpha * v.alpha * v.eps - v.alpha * v.gamma * v.delta +
                    v.a * v.gamma * v.eps - v.d * g2) * t3 * t1_4 * tp;
  phi += g8 * (3 * v.alpha * v.alpha + 4 * v.a * v.gamma) * t3 * t3 * t1_4 * tp * tp;
  {
    const BigRat m = v.alpha * v.eps * v.eps - 2 * v.gamma * v.delta * v.eps + 4 * g2 * v.zeta;
    phi += 768 * m * m;
  }
  phi += 32 * g4 *
         (3 * v.alpha * v.alpha * v.eps * v.eps - 6 * v.alpha * v.gamma * v.delta * v.eps +
          2 * v.a * v.gamma * v.eps * v.eps + 2 * g2 * v.delta * v.delta -
          4 * v.d * g2 * v.eps + 8 * g2 * v.gamma * v.z + 4 * v.alpha * g2 * v.zeta) *
         t1_2 * (12 * xu * xu - 12 * xu - 1);
  phi -= 256 * g2 *
         (3 * v.alpha * v.alpha * v.eps * v.eps * v.eps -
          9 * v.alpha * v.gamma * v.delta * v.eps * v.eps + v.a * v.gamma * v.eps * v.eps * v.eps +
          6 * g2 * v.delta * v.delta * v.eps - 3 * v.d * g2 * v.eps * v.eps +
          2 * g4 * v.delta * v.delta + 2 * v.d * g4 * v.eps + 12 * g2 * v.gamma * v.eps * v.z -
          4 * g4 * v.gamma * v.z + 12 * v.alpha * g2 * v.eps * v.zeta -
          12 * g2 * v.gamma * v.delta * v.zeta + 4 * v.alpha * g4 * v.zeta) *
         t1_2;
  return phi;
}

BigRat phi_factorized(const BigRat& x, const StructureFunctionParams& sp, const ModelParams& p) {
  const BigRat q2 = p.q * p.q;
  const BigRat& k = p.k;
  const BigRat delta_sq = (k - BigRat(1, 2)) * (k - BigRat(1, 2)) + sp.E / q2;
  if (delta_sq < 0) throw ComplexDelta("Delta^2 = (k-1/2)^2 + E/q^2 is negative");
  const BigRat X = 2 * (x + sp.u);
  const BigRat quad1 = (X - BigRat(1, 2)) * (X - BigRat(1, 2)) - delta_sq;
  const BigRat quad2 = (X - BigRat(3, 2)) * (X - BigRat(3, 2)) - delta_sq;
  return 3 * pow2(30) * pow_rat(p.q, 20) * (X + k - 1) * (X + k - 2) * (X - k) * (X - k - 1) *
         quad1 * quad2;
}

BigRat phi_branch(const BigRat& x, const BigRat& u, int p_order, Branch branch,
                  const ModelParams& p) {
  const BigRat& k = p.k;
  const BigRat pr(p_order);
  const BigRat sgn = branch == Branch::upper ? BigRat(1, 2) : BigRat(-1, 2);
  const BigRat scale = 3 * pow2(38) * pow_rat(p.q, 20);
  if (u == k / 2) {
    return scale * x * (pr + 1 - x) * (x - BigRat(1, 2)) * (pr + 1 + sgn - x) *
           (x + k - BigRat(1, 2)) * (x + k - 1) * (x + pr + k + BigRat(1, 4) + sgn / 2) *
           (x + pr + k - BigRat(1, 4) + sgn / 2);
  }
  return scale * x * (pr + 1 - x) * (x + BigRat(1, 2)) * (pr + 1 + sgn - x) * (x + k) *
         (x + k - BigRat(1, 2)) * (x + pr + k + BigRat(5, 4) + sgn / 2) *
         (x + pr + k + BigRat(3, 4) + sgn / 2);
}

BigRat a_eigenvalue(int m, const BigRat& u, const ModelParams& p) {
  const BigRat& k = p.k;
  return p.q * p.q * (2 * m + 2 * u - k) * (2 * m + 2 * u + k);
}

BigRat branch_energy(const BigRat& u, int p_order, Branch branch, const ModelParams& p) {
  const BigRat q2 = p.q * p.q;
  const BigRat& k = p.k;
  const BigRat s = branch == Branch::upper ? BigRat(1, 2) : BigRat(-1, 2);
  if (u == k / 2)
    return q2 * (2 * p_order + BigRat(3, 2) + s) * (2 * p_order + 2 * k + BigRat(1, 2) + s);
  return q2 * (2 * p_order + BigRat(5, 2) + s) * (2 * p_order + 2 * k + BigRat(3, 2) + s);
}

UniPoly branch_energy_poly_k(Parity parity, int p_order, Branch branch) {
  const BigRat s = branch == Branch::upper ? BigRat(1, 2) : BigRat(-1, 2);
  if (parity == Parity::even) {
    // (2p + 3/2 + s)(2p + 2k + 1/2 + s)
    const BigRat a = 2 * p_order + BigRat(3, 2) + s;
    return UniPoly::linear(a * (2 * p_order + BigRat(1, 2) + s), a * 2);
  }
  const BigRat a = 2 * p_order + BigRat(5, 2) + s;
  return UniPoly::linear(a * (2 * p_order + BigRat(3, 2) + s), a * 2);
}

std::vector<RepresentationSolution> solve_representations(int p_order, const ModelParams& p) {
  std::vector<RepresentationSolution> out;
  const BigRat& k = p.k;
  for (const BigRat& u : {BigRat(k / 2), BigRat((k + 1) / 2)}) {
    const Parity parity = (u == k / 2) ? Parity::even : Parity::odd;
    for (Branch br : {Branch::upper, Branch::lower}) {
      RepresentationSolution sol;
      sol.params = {u, branch_energy(u, p_order, br, p), p_order, br};
      sol.parity = parity;
      sol.structure_ok = true;
      std::string why;
      const auto phi = [&](int x) { return phi_factorized(BigRat(x), sol.params, p); };
      if (phi(0) != 0) {
        sol.structure_ok = false;
        why = "Phi(0) != 0";
      }
      if (sol.structure_ok && phi(p_order + 1) != 0) {
        sol.structure_ok = false;
        why = "Phi(p+1) != 0";
      }
      for (int x = 1; sol.structure_ok && x <= p_order; ++x)
        if (phi(x) <= 0) {
          sol.structure_ok = false;
          why = "Phi(" + std::to_string(x) + ") <= 0";
        }
      for (int m = 0; sol.structure_ok && m <= p_order; ++m)
        if (a_eigenvalue(m, u, p) < 0) {
          sol.structure_ok = false;
          why = "A(" + std::to_string(m) + ") < 0";
        }
      sol.reason = why;
      out.push_back(std::move(sol));
    }
  }
  return out;
}

std::vector<RepresentationSolution> physical_filter(std::vector<RepresentationSolution> sols,
                                                    const ModelParams& p) {
  for (auto& sol : sols) {
    sol.physical = false;
    if (!sol.structure_ok) {
      if (sol.reason.empty()) sol.reason = "structure function conditions failed";
      continue;
    }
    // find integer N with energy(N) == E; E_N is strictly increasing
    int found = -1;
    for (int N = 0; N <= 4 * sol.params.p + 8; ++N) {
      if (energy(N, p) == sol.params.E) {
        found = N;
        break;
      }
    }
    if (found < 0) {
      sol.reason = "E matches no level";
      continue;
    }
    const bool even_level = (found % 2 == 0);
    if ((sol.parity == Parity::even) != even_level) {
      sol.reason = "E = E_" + std::to_string(found) + " but parity mismatches";
      continue;
    }
    const int expected_p = sol.parity == Parity::even ? found / 2 : (found - 1) / 2;
    if (expected_p != sol.params.p) {
      sol.reason = "E = E_" + std::to_string(found) + " but p != " +
                   std::to_string(expected_p);
      continue;
    }
    sol.physical = true;
    sol.N = found;
    sol.reason.clear();
    sol.A_eigenvalues.clear();
    for (int m = 0; m <= sol.params.p; ++m)
      sol.A_eigenvalues.push_back(a_eigenvalue(m, sol.params.u, p));
  }
  return sols;
}

BigRat phi_nu(int nu, int N, const ModelParams& p) {
  if (nu < 0 || nu > N || (nu % 2) != (N % 2))
    throw ParityMismatch("phi_nu requires 0 <= nu <= N with nu == N (mod 2)");
  const BigRat& k = p.k;
  return 3 * pow2(30) * pow_rat(p.q, 20) * nu * (nu - 1) * (nu + 2 * k - 1) * (nu + 2 * k - 2) *
         (N + nu + 2 * k) * (N + nu + 2 * k + 1) * (N - nu + 2) * (N - nu + 3);
}

namespace {

// evaluate num(k)/den(k) at k0, dividing out common roots exactly
BigRat eval_with_cancellation(UniPoly num, UniPoly den, const BigRat& k0) {
  if (num.is_zero()) return 0;
  while (den.eval(k0) == 0) {
    den = den.divide_out_root(k0);
    num = num.divide_out_root(k0);  // throws if the singularity is not removable
  }
  return num.eval(k0) / den.eval(k0);
}

UniPoly lin(const BigRat& a, const BigRat& b = 1) { return UniPoly::linear(a, b); }  // a + b k

}  // namespace

BigRat sigma_nu(int nu, int N, const ModelParams& p) {
  if (nu < 0 || nu > N || (nu % 2) != (N % 2))
    throw ParityMismatch("sigma_nu requires 0 <= nu <= N with nu == N (mod 2)");
  // q^2 / (2(nu+k-1)(nu+k+1)) * { -(nu+k-1)^2(nu+k+1)^2
  //   + [N^2+(2k+3)N+2k^2+2k+1](nu+k-1)(nu+k+1) - k(k-1)(N+k+1)(N+k+2) }
  const UniPoly f1 = lin(BigRat(nu - 1));      // nu + k - 1
  const UniPoly f2 = lin(BigRat(nu + 1));      // nu + k + 1
  const UniPoly mid{BigRat(N * N + 3 * N + 1), BigRat(2 * N + 2), BigRat(2)};
  const UniPoly kk1 = UniPoly::x() * lin(BigRat(-1));  // k(k-1)
  UniPoly num = UniPoly(BigRat(-1)) * f1 * f1 * f2 * f2 + mid * f1 * f2 -
                kk1 * lin(BigRat(N + 1)) * lin(BigRat(N + 2));
  UniPoly den = (f1 * f2) * BigRat(2);
  return p.q * p.q * eval_with_cancellation(num, den, p.k);
}

BigRat tau_nu_sq(int nu, int N, const ModelParams& p) {
  if (nu < 0 || nu > N || (nu % 2) != (N % 2))
    throw ParityMismatch("tau_nu_sq requires 0 <= nu <= N with nu == N (mod 2)");
  const BigRat q4 = pow_rat(p.q, 4);
  UniPoly num = UniPoly(BigRat(nu) * BigRat(nu - 1) * BigRat(N - nu + 2) * BigRat(N - nu + 3)) *
                lin(BigRat(nu - 1), 2) * lin(BigRat(nu - 2), 2) * lin(BigRat(N + nu), 2) *
                lin(BigRat(N + nu + 1), 2);
  UniPoly den = lin(BigRat(nu - 2)) * lin(BigRat(nu - 1)) * lin(BigRat(nu - 1)) *
                lin(BigRat(nu)) * BigRat(16);
  return q4 * eval_with_cancellation(num, den, p.k);
}

BigRat sigma_nu_realization(int nu, int N, const ModelParams& p) {
  // sigma(m) = -(alpha/4)[(m+u)^2 - 1/4] + (alpha eps - gamma delta)/(2 gamma^2)
  //            - (alpha eps^2 - 2 gamma delta eps + 4 gamma^2 zeta)
  //              / (4 gamma^4 [(m+u)^2 - 1/4]),
  // with m+u = (nu+k)/2 on both parities and everything at H = E_N; assembled
  // as polynomials in k over the common denominator D = [(m+u)^2 - 1/4].
  const BigRat q2 = p.q * p.q, q4 = q2 * q2, q6 = q4 * q2;
  const UniPoly E = UniPoly::linear(q2 * BigRat((N + 2) * (N + 1)), q2 * BigRat(2 * (N + 2)));
  const UniPoly delta = (UniPoly::linear(-q2, BigRat(2) * q2) - E) * (8 * q2);  // 8q^2[q^2(2k-1)-E]
  const UniPoly eps = (UniPoly::x() * UniPoly::x() - UniPoly(BigRat(1))) * (16 * q4);
  const UniPoly zeta = (UniPoly::linear(BigRat(0), 2 * q2) - E) * UniPoly::linear(BigRat(-1), 1) *
                       (8 * q4);
  // D = ((nu+k)^2 - 1)/4
  const UniPoly D = (lin(BigRat(nu)) * lin(BigRat(nu)) - UniPoly(BigRat(1))) * BigRat(1, 4);
  // sigma * D = -2 q^2 D^2 + (eps - delta) D / (16 q^2)
  //             - (eps^2 - 2 delta eps + 32 q^2 zeta) / (2048 q^6)
  UniPoly num = D * D * (-2 * q2) + (eps - delta) * D * (BigRat(1) / (16 * q2)) -
                (eps * eps - delta * eps * BigRat(2) + zeta * (32 * q2)) *
                    (BigRat(1) / (2048 * q6));
  return eval_with_cancellation(num, D, p.k);
}

BigRat tau_nu_sq_realization(int nu, int N, const ModelParams& p) {
  // tau_nu^2 = rho^2(m-1) Phi_nu with
  // rho^2(m-1) = 1 / (3*2^12 gamma^8 (m+u-1)(m+u)(2(m+u)-1)^2)
  //            = 1 / (3*2^36 q^16 ((nu+k)/2 - 1)((nu+k)/2)(nu+k-1)^2).
  if (nu < 2) return 0;  // Phi_nu vanishes at nu in {0,1}
  UniPoly phin = UniPoly(BigRat(3) * pow2(30) * pow_rat(p.q, 20) * nu * (nu - 1) *
                         BigRat(N - nu + 2) * BigRat(N - nu + 3)) *
                 lin(BigRat(nu - 1), 2) * lin(BigRat(nu - 2), 2) * lin(BigRat(N + nu), 2) *
                 lin(BigRat(N + nu + 1), 2);
  UniPoly den = (lin(BigRat(nu)) * BigRat(1, 2) - UniPoly(BigRat(1))) * (lin(BigRat(nu)) * BigRat(1, 2)) *
                lin(BigRat(nu - 1)) * lin(BigRat(nu - 1)) *
                (BigRat(3) * pow2(36) * pow_rat(p.q, 16));
  return eval_with_cancellation(phin, den, p.k);
}

LTridiagonal l_tridiagonal(int N, const ModelParams& p, std::vector<int> phases,
                           const SigmaMutation& mut) {
  LTridiagonal t;
  t.N = N;
  const int numin = N % 2;
  for (int nu = numin; nu <= N; nu += 2) {
    BigRat s = sigma_nu(nu, N, p);
    if (mut.offset_sigma) s += p.q * p.q;
    t.sigma.push_back(s);
    if (nu > numin) t.tau_sq.push_back(tau_nu_sq(nu, N, p));
  }
  if (phases.empty()) phases.assign(t.tau_sq.size(), -1);
  if (phases.size() != t.tau_sq.size())
    throw ParamOutOfRange("phase list size must match the off-diagonal count");
  t.phases = std::move(phases);
  return t;
}

UniPoly char_poly(const LTridiagonal& t) {
  // det(M - lambda I) by the three-term recurrence; depends on tau^2 only,
  // so the phases drop out (diagonal sign similarity).
  UniPoly pm1(BigRat(1));
  UniPoly pcur = UniPoly::linear(t.sigma.empty() ? BigRat(0) : t.sigma[0], BigRat(-1));
  if (t.sigma.empty()) return pm1;
  for (std::size_t i = 1; i < t.sigma.size(); ++i) {
    UniPoly pnext = UniPoly::linear(t.sigma[i], BigRat(-1)) * pcur - pm1 * t.tau_sq[i - 1];
    pm1 = std::move(pcur);
    pcur = std::move(pnext);
  }
  return pcur;
}

bool spectrum_exact_check(const LTridiagonal& t, const ModelParams& p) {
  UniPoly expected(BigRat(1));
  BigRat trace_expected = 0;
  for (int l = t.N % 2; l <= t.N; l += 2) {
    const BigRat ev = p.q * p.q * BigRat(l + 1) * BigRat(l + 1);
    expected = expected * UniPoly::linear(ev, BigRat(-1));
    trace_expected += ev;
  }
  BigRat trace = 0;
  for (const auto& s : t.sigma) trace += s;
  return char_poly(t) == expected && trace == trace_expected;
}

bool fock_contract_check(int N, const ModelParams& p) {
  const int numin = N % 2;
  const int pord = (N - numin) / 2;
  const BigRat u = numin == 0 ? BigRat(p.k / 2) : BigRat((p.k + 1) / 2);
  const StructureFunctionParams sp{u, energy(N, p), pord, Branch::upper};
  // squared ladder amplitudes w[m] = Phi(m) on the (p+2)-dim truncation
  std::vector<BigRat> w(pord + 2);
  for (int m = 0; m <= pord + 1; ++m) {
    w[m] = phi_factorized(BigRat(m), sp, p);
    // the recast single form must agree where it applies
    if (numin + 2 * m <= N && w[m] != phi_nu(numin + 2 * m, N, p)) return false;
  }
  if (w[0] != 0) return false;         // Phi(0) = 0
  if (w[pord + 1] != 0) return false;  // Phi(p+1) = 0: consistent truncation
  for (int m = 1; m <= pord; ++m)
    if (w[m] <= 0) return false;       // positivity inside the Fock space
  // With b^dag the up-shift of squared amplitude w[m] into slot m, b^dag b
  // and b b^dag are diag(w[m]) and diag(w[m+1]) exactly; the nilpotency
  // (b^dag)^{p+1} = 0 requires every (p+1)-fold consecutive product to
  // vanish, which within the truncated space is the start = 0 product.
  BigRat prod = 1;
  for (int j = 1; j <= pord + 1; ++j) prod *= w[j];
  return prod == 0;
}

}  // namespace pdm
