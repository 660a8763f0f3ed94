#ifndef PDMLAYER_NUMERICS_HPP
#define PDMLAYER_NUMERICS_HPP

#include <vector>

#include "pdmlayer/model.hpp"
#include "pdmlayer/unipoly.hpp"

namespace pdm {

/// Standard Jacobi polynomial P_n^{(a,b)}(t) by the three-term recurrence.
/// Throws ParamOutOfRange for a <= -1 or b <= -1.
double jacobi_poly(int n, double a, double b, double t);

/// Exact coefficient list of P_n^{(a,b)} in powers of t (a rational, b a
/// nonnegative integer) for the symbolic wavefunctions.
UniPoly jacobi_poly_exact(int n, const BigRat& a, int b);

/// Execution policy of the data-parallel kernels. Serial is the reference
/// implementation; the parallel path must produce bitwise-identical sums
/// (per-row ownership, no atomics).
enum class Exec { serial, parallel };

/// Gauss-Legendre product grid: x mapped from t = tanh(qx) on (0,1), y on
/// (-pi/2q, pi/2q).
struct QuadratureGrid {
  std::vector<double> x_nodes, x_weights;
  std::vector<double> y_nodes, y_weights;
  double q{1};

  static QuadratureGrid build(int nx, int ny, const ModelParams& p);
  std::size_t size() const { return x_nodes.size() * y_nodes.size(); }
};

/// Gauss-Legendre nodes/weights on (-1, 1).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

struct FirstBasisLabel {
  int n{0};
  int l{0};
  int level() const { return 2 * n + l; }
};

/// Unnormalized separable eigenfunction
/// (tanh qx)^k (sech qx)^{l+2} P_n^{(k-1/2,l+1)}(1-2 tanh^2 qx) chi_l(qy),
/// expanded exactly into the ring (normalization is numeric).
SymFunction psi_first_basis(FirstBasisLabel label, const ModelParams& p);

/// The boundary-violating partner chi_bar_l(y) (sin for even l, cos for odd).
SymFunction chi_bar(int l);

/// Values of f on the grid, row-major (ix * ny + iy). The OpenMP kernel;
/// exploits the x/y separability of the monomials.
std::vector<double> grid_values(const SymFunction& f, const QuadratureGrid& g,
                                const ModelParams& p, Exec ex = Exec::parallel);

/// Quadrature approximation of the plain L^2(dx dy) pairing on D.
double inner_product(const SymFunction& f, const SymFunction& g, const QuadratureGrid& grid,
                     const ModelParams& p, Exec ex = Exec::parallel);

/// Pairing from cached grid values.
double inner_product_values(const std::vector<double>& fv, const std::vector<double>& gv,
                            const QuadratureGrid& grid);

/// || A f - lambda f || / || f || in the grid norm.
double eigencheck(const SymFunction& f, const DiffOperator& A, double lambda,
                  const QuadratureGrid& grid, const ModelParams& p);

/// Symbolic eigencheck: op_apply(A, f) - lambda f canonicalizes to zero
/// (lambda exact, as a polynomial scale of q^2).
bool eigencheck_symbolic(const SymFunction& f, const DiffOperator& A, const PolyQK& lambda);

struct DegenerateBlock {
  int N{0};
  std::vector<FirstBasisLabel> basis;            // (0,N), (1,N-2), ..., descending l
  std::vector<std::vector<double>> matrix;       // <psi_i, A psi_j> (normalized)
};

/// Matrix of A over the normalized first-basis members of level N.
DegenerateBlock degenerate_block(int N, const DiffOperator& A, const QuadratureGrid& grid,
                                 const ModelParams& p, Exec ex = Exec::parallel);

/// Label of a second-basis member Psi_{N, N0}: nu = N - N0 with nu <= N and
/// nu == N (mod 2).
struct SecondBasisLabel {
  int N{0};
  int nu{0};
  SecondBasisLabel(int N_, int nu_) : N(N_), nu(nu_) {
    if (nu < 0 || nu > N || (nu % 2) != (N % 2))
      throw ParityMismatch("second-basis label requires 0 <= nu <= N, nu == N (mod 2)");
  }
  int N0() const { return N - nu; }
};

struct SecondBasis {
  int N{0};
  std::vector<SecondBasisLabel> labels;          // nu ascending
  std::vector<double> r_eigenvalues;             // ascending == r_nu, nu ascending
  std::vector<std::vector<double>> Z;            // Z[row][col]; columns orthonormal
};

/// Diagonalizes the R block; eigenvalue i matches r_nu. Phase convention:
/// positive component on the smallest-l member, matching the phases the
/// successive-eta^dag construction induces. Throws DegenerateRSpectrum on
/// eigenvalue collision.
SecondBasis construct_second_basis(int N, const QuadratureGrid& grid, const ModelParams& p,
                                   Exec ex = Exec::parallel);

struct NumericTridiagonal {
  int N{0};
  std::vector<int> nu;             // row labels, ascending
  std::vector<double> diag;        // sigma_nu
  std::vector<double> offdiag;     // signed tau_nu as measured (index i: nu[i+1])
  std::vector<int> phases;         // measured s_nu = sign(offdiag)
  double beyond_tridiagonal{0};    // max |entry| outside the tridiagonal band
};

/// L in the second basis; entries beyond the first off-diagonal vanish.
NumericTridiagonal l_matrix_numeric(int N, const QuadratureGrid& grid, const ModelParams& p,
                                    Exec ex = Exec::parallel);

/// Cyclic-Jacobi eigensolver for small dense symmetric matrices; ascending
/// eigenvalues, eigenvectors as columns of `vecs`.
void symmetric_eigen(std::vector<std::vector<double>> m, std::vector<double>& vals,
                     std::vector<std::vector<double>>& vecs);

/// Eigenvalues of a symmetric tridiagonal given diagonal/off-diagonal.
std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& offdiag);

}  // namespace pdm

#endif
