#ifndef PDMLAYER_PARAFERMION_HPP
#define PDMLAYER_PARAFERMION_HPP

#include <string>
#include <vector>

#include "pdmlayer/model.hpp"
#include "pdmlayer/unipoly.hpp"

namespace pdm {

enum class Branch { upper, lower };
enum class Parity { even, odd };  // even: nu = 2m, odd: nu = 2m+1

/// One candidate deformed-parafermionic representation: offset u, energy E
/// (the value substituted for H), order p, and the +- branch choice.
struct StructureFunctionParams {
  BigRat u;
  BigRat E;
  int p{0};
  Branch branch{Branch::upper};
};

struct RepresentationSolution {
  StructureFunctionParams params;
  Parity parity{Parity::even};
  bool structure_ok{false};   // Phi(0)=0, Phi(p+1)=0, Phi>0 on 1..p, A(m)>=0
  bool physical{false};       // E matches energy(N) with the parity-consistent p
  int N{-1};                  // recovered level when physical
  std::vector<BigRat> A_eigenvalues;
  std::string reason;         // rejection reason when not physical
};

/// sigma / tau data of L in the (H,R)-diagonal basis, ordered by ascending
/// nu = N mod 2, N mod 2 + 2, ..., N. tau_sq[i] couples entries i and i+1
/// (that is nu = numin + 2(i+1)); phases are the s_nu signs.
struct LTridiagonal {
  int N{0};
  std::vector<BigRat> sigma;
  std::vector<BigRat> tau_sq;
  std::vector<int> phases;  // one per tau entry, +1 or -1
};

/// General structure function (the eight-line display) evaluated with the
/// model coefficient set at H = E; exact rational.
BigRat phi_general(const BigRat& x, const StructureFunctionParams& sp, const ModelParams& p);

/// Factorized structure function 3*2^30 q^20 * (eight linear factors); the
/// +-Delta factors are multiplied in conjugate pairs so only Delta^2 enters.
/// Throws ComplexDelta when (k-1/2)^2 + E/q^2 < 0.
BigRat phi_factorized(const BigRat& x, const StructureFunctionParams& sp, const ModelParams& p);

/// The +-branch displays (3*2^38 normalization); equals phi_factorized with
/// the matching branch energy.
BigRat phi_branch(const BigRat& x, const BigRat& u, int p_order, Branch branch,
                  const ModelParams& p);

/// A(m) = q^2 (2m+2u-k)(2m+2u+k).
BigRat a_eigenvalue(int m, const BigRat& u, const ModelParams& p);

/// Branch energy: u = k/2: q^2(2p+3/2 +- 1/2)(2p+2k+1/2 +- 1/2);
/// u = (k+1)/2: q^2(2p+5/2 +- 1/2)(2p+2k+3/2 +- 1/2).
BigRat branch_energy(const BigRat& u, int p_order, Branch branch, const ModelParams& p);

/// Same energy over q^2 as a polynomial in k (for the identity checks).
UniPoly branch_energy_poly_k(Parity parity, int p_order, Branch branch);

/// Enumerates the four (u, branch) candidates at order p and imposes the
/// structure-function conditions; physical_filter then annotates levels.
std::vector<RepresentationSolution> solve_representations(int p_order, const ModelParams& p);

/// Keeps solutions whose E equals energy(N) for an integer N with the
/// parity-consistent p; annotates N, parity, A eigenvalues.
std::vector<RepresentationSolution> physical_filter(std::vector<RepresentationSolution> sols,
                                                    const ModelParams& p);

/// Phi_nu = 3*2^30 q^20 nu(nu-1)(nu+2k-1)(nu+2k-2)(N+nu+2k)(N+nu+2k+1)
///          (N-nu+2)(N-nu+3); throws ParityMismatch unless nu == N (mod 2),
///          0 <= nu <= N.
BigRat phi_nu(int nu, int N, const ModelParams& p);

/// Closed-form sigma_nu and tau_nu^2; removable singularities of the
/// displayed ratios are handled by exact polynomial division in k.
BigRat sigma_nu(int nu, int N, const ModelParams& p);
BigRat tau_nu_sq(int nu, int N, const ModelParams& p);

/// Realization-route duplicates (sigma(m) and rho^2 Phi formulas with the
/// coefficient set); used as the independent route in tests.
BigRat sigma_nu_realization(int nu, int N, const ModelParams& p);
BigRat tau_nu_sq_realization(int nu, int N, const ModelParams& p);

struct SigmaMutation {
  bool offset_sigma{false};  // adds q^2 to every sigma_nu (single-coefficient slip)
};

/// Assembles the L tridiagonal for level N; default phases all -1.
LTridiagonal l_tridiagonal(int N, const ModelParams& p, std::vector<int> phases = {},
                           const SigmaMutation& mut = {});

/// Characteristic polynomial det(M - lambda I) of the assembled tridiagonal,
/// exact in lambda (depends only on tau^2).
UniPoly char_poly(const LTridiagonal& t);

/// Exact check: char_poly factors as prod (q^2(l+1)^2 - lambda) over the
/// level's l values, and the trace identity holds.
bool spectrum_exact_check(const LTridiagonal& t, const ModelParams& p);

/// Fock/truncation contract on the (p+2)-dimensional matrices: b^dag b and
/// b b^dag act as Phi(N)/Phi(N+1) and (b^dag)^{p+1} = 0; exact (squared
/// amplitudes are rational).
bool fock_contract_check(int N, const ModelParams& p);

}  // namespace pdm

#endif
