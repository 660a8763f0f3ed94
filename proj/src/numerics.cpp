#include "pdmlayer/numerics.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pdm {

double jacobi_poly(int n, double a, double b, double t) {
  if (a <= -1.0 || b <= -1.0)
    throw ParamOutOfRange("jacobi_poly requires a > -1 and b > -1");
  if (n == 0) return 1.0;
  double pm1 = 1.0;
  double p0 = (a - b) / 2 + (a + b + 2) / 2 * t;
  for (int m = 2; m <= n; ++m) {
    const double c = 2 * m + a + b;
    const double a1 = 2 * m * (m + a + b) * (c - 2);
    const double a2 = (c - 1) * (a * a - b * b);
    const double a3 = (c - 2) * (c - 1) * c;
    const double a4 = 2 * (m + a - 1) * (m + b - 1) * c;
    const double p1 = ((a2 + a3 * t) * p0 - a4 * pm1) / a1;
    pm1 = p0;
    p0 = p1;
  }
  return p0;
}

UniPoly jacobi_poly_exact(int n, const BigRat& a, int b) {
  if (a <= -1 || b <= -1) throw ParamOutOfRange("jacobi_poly_exact requires a, b > -1");
  UniPoly pm1(BigRat(1));
  if (n == 0) return pm1;
  UniPoly p0 = UniPoly::linear((a - b) / 2, (a + b + 2) / 2);
  for (int m = 2; m <= n; ++m) {
    const BigRat c = 2 * m + a + b;
    const BigRat a1 = 2 * m * (m + a + b) * (c - 2);
    const BigRat a2 = (c - 1) * (a * a - BigRat(b) * b);
    const BigRat a3 = (c - 2) * (c - 1) * c;
    const BigRat a4 = 2 * (m + a - 1) * (m + b - 1) * c;
    UniPoly p1 = (UniPoly::linear(a2, a3) * p0 - pm1 * a4) * (1 / a1);
    pm1 = std::move(p0);
    p0 = std::move(p1);
  }
  return p0;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev estimate
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= n; ++m) {
        const double p2 = ((2 * m - 1) * x * p1 - (m - 1) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureGrid QuadratureGrid::build(int nx, int ny, const ModelParams& p) {
  if (nx < 16 || ny < 16) throw ParamOutOfRange("grid sizes must be >= 16");
  QuadratureGrid g;
  g.q = p.qd();
  std::vector<double> u, w;
  gauss_legendre(nx, u, w);
  g.x_nodes.resize(nx);
  g.x_weights.resize(nx);
  for (int i = 0; i < nx; ++i) {
    const double t = (u[i] + 1.0) / 2.0;           // t = tanh(qx) in (0,1)
    g.x_nodes[i] = std::atanh(t) / g.q;
    g.x_weights[i] = w[i] / 2.0 / (g.q * (1.0 - t * t));
  }
  gauss_legendre(ny, u, w);
  const double a = M_PI / (2 * g.q);
  g.y_nodes.resize(ny);
  g.y_weights.resize(ny);
  for (int j = 0; j < ny; ++j) {
    g.y_nodes[j] = a * u[j];
    g.y_weights[j] = a * w[j];
  }
  return g;
}

SymFunction psi_first_basis(FirstBasisLabel label, const ModelParams& p) {
  const int n = label.n, l = label.l;
  // base factor (tanh qx)^k (sech qx)^{l+2}, exponents with k substituted
  RingElement base(MonoKey{Exponent{p.k, BigRat(0)}, Exponent{-p.k - (l + 2), BigRat(0)}, 0, 0},
                   PolyQK(BigRat(1)));
  // P_n^{(k-1/2, l+1)}(1 - 2 tanh^2) via Horner in the ring
  UniPoly jac = jacobi_poly_exact(n, p.k - BigRat(1, 2), l + 1);
  RingElement t = RingElement::one() -
                  RingElement(MonoKey{Exponent(2), Exponent(-2), 0, 0}, PolyQK(BigRat(2)));
  RingElement poly = RingElement::zero();
  for (int d = jac.degree(); d >= 0; --d) {
    poly = ring_mul(poly, t);
    poly += RingElement::constant(PolyQK(jac.coeff(d)));
  }
  RingElement chi = (l % 2 == 0) ? cos_multiple(l + 1) : sin_multiple(l + 1);
  return SymFunction{ring_mul(ring_mul(base, poly), chi)};
}

SymFunction chi_bar(int l) {
  return SymFunction{(l % 2 == 0) ? sin_multiple(l + 1) : cos_multiple(l + 1)};
}

std::vector<double> grid_values(const SymFunction& f, const QuadratureGrid& g,
                                const ModelParams& p, Exec ex) {
  const int nx = static_cast<int>(g.x_nodes.size());
  const int ny = static_cast<int>(g.y_nodes.size());
  const double q = g.q, k = p.kd();
  std::vector<double> out(static_cast<std::size_t>(nx) * ny, 0.0);

  struct Mono {
    double coeff, s_e, c_e;
    int sin_e, cos_e;
  };
  std::vector<Mono> monos;
  monos.reserve(f.value.size());
  for (const auto& [key, poly] : f.value.terms())
    monos.push_back({poly.eval_double(q, k), key.s.value(k), key.c.value(k), key.sin_e,
                     key.cos_e});

  // y-factors per monomial (small table)
  std::vector<double> ytab(monos.size() * ny);
  for (std::size_t m = 0; m < monos.size(); ++m)
    for (int j = 0; j < ny; ++j) {
      const double S = std::sin(q * g.y_nodes[j]), C = std::cos(q * g.y_nodes[j]);
      double v = 1.0;
      for (int e = 0; e < monos[m].sin_e; ++e) v *= S;
      for (int e = 0; e < monos[m].cos_e; ++e) v *= C;
      ytab[m * ny + j] = v;
    }

  auto row = [&](int i) {
    const double s = std::sinh(q * g.x_nodes[i]), c = std::cosh(q * g.x_nodes[i]);
    double* dst = out.data() + static_cast<std::size_t>(i) * ny;
    for (std::size_t m = 0; m < monos.size(); ++m) {
      double xv = monos[m].coeff;
      if (monos[m].s_e != 0.0) xv *= std::pow(s, monos[m].s_e);
      if (monos[m].c_e != 0.0) xv *= std::pow(c, monos[m].c_e);
      const double* yt = ytab.data() + m * ny;
      for (int j = 0; j < ny; ++j) dst[j] += xv * yt[j];
    }
  };

  if (ex == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < nx; ++i) row(i);
  } else {
    for (int i = 0; i < nx; ++i) row(i);
  }
  return out;
}

double inner_product_values(const std::vector<double>& fv, const std::vector<double>& gv,
                            const QuadratureGrid& grid) {
  const int nx = static_cast<int>(grid.x_nodes.size());
  const int ny = static_cast<int>(grid.y_nodes.size());
  double sum = 0;
  for (int i = 0; i < nx; ++i) {
    double rowsum = 0;
    const std::size_t off = static_cast<std::size_t>(i) * ny;
    for (int j = 0; j < ny; ++j) rowsum += grid.y_weights[j] * fv[off + j] * gv[off + j];
    sum += grid.x_weights[i] * rowsum;
  }
  return sum;
}

double inner_product(const SymFunction& f, const SymFunction& g, const QuadratureGrid& grid,
                     const ModelParams& p, Exec ex) {
  return inner_product_values(grid_values(f, grid, p, ex), grid_values(g, grid, p, ex), grid);
}

double eigencheck(const SymFunction& f, const DiffOperator& A, double lambda,
                  const QuadratureGrid& grid, const ModelParams& p) {
  const std::vector<double> fv = grid_values(f, grid, p);
  const std::vector<double> av = grid_values(op_apply(A, f), grid, p);
  double num = 0, den = 0;
  const int nx = static_cast<int>(grid.x_nodes.size());
  const int ny = static_cast<int>(grid.y_nodes.size());
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * ny + j;
      const double w = grid.x_weights[i] * grid.y_weights[j];
      const double r = av[idx] - lambda * fv[idx];
      num += w * r * r;
      den += w * fv[idx] * fv[idx];
    }
  return std::sqrt(num / den);
}

bool eigencheck_symbolic(const SymFunction& f, const DiffOperator& A, const PolyQK& lambda) {
  RingElement res = op_apply(A, f).value - f.value.scaled(lambda);
  return res.is_zero();
}

DegenerateBlock degenerate_block(int N, const DiffOperator& A, const QuadratureGrid& grid,
                                 const ModelParams& p, Exec ex) {
  DegenerateBlock blk;
  blk.N = N;
  for (int l = N; l >= 0; l -= 2) blk.basis.push_back({(N - l) / 2, l});
  const int d = static_cast<int>(blk.basis.size());

  // per-member work (symbolic image plus grid evaluation) is independent;
  // the parallel path owns one slot per member
  std::vector<std::vector<double>> fv(d), av(d);
  std::vector<double> norm(d);
  auto fill = [&](int i) {
    SymFunction psi = psi_first_basis(blk.basis[i], p);
    fv[i] = grid_values(psi, grid, p, Exec::serial);
    av[i] = grid_values(op_apply(A, psi), grid, p, Exec::serial);
    norm[i] = std::sqrt(inner_product_values(fv[i], fv[i], grid));
  };
  if (ex == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < d; ++i) fill(i);
  } else {
    for (int i = 0; i < d; ++i) fill(i);
  }
  blk.matrix.assign(d, std::vector<double>(d, 0.0));
  const int pairs = d * d;
  auto entry = [&](int idx) {
    const int i = idx / d, j = idx % d;
    blk.matrix[i][j] = inner_product_values(fv[i], av[j], grid) / (norm[i] * norm[j]);
  };
  if (ex == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int idx = 0; idx < pairs; ++idx) entry(idx);
  } else {
    for (int idx = 0; idx < pairs; ++idx) entry(idx);
  }
  return blk;
}

void symmetric_eigen(std::vector<std::vector<double>> m, std::vector<double>& vals,
                     std::vector<std::vector<double>>& vecs) {
  const int n = static_cast<int>(m.size());
  vecs.assign(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) vecs[i][i] = 1.0;
  double scale = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scale = std::max(scale, std::fabs(m[i][j]));
  if (scale == 0) scale = 1;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off = std::max(off, std::fabs(m[i][j]));
    if (off < 1e-15 * scale) break;
    for (int pq = 0; pq < n; ++pq)
      for (int rq = pq + 1; rq < n; ++rq) {
        if (std::fabs(m[pq][rq]) < 1e-18 * scale) continue;
        const double theta = (m[rq][rq] - m[pq][pq]) / (2 * m[pq][rq]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int i = 0; i < n; ++i) {
          const double mip = m[i][pq], miq = m[i][rq];
          m[i][pq] = c * mip - s * miq;
          m[i][rq] = s * mip + c * miq;
        }
        for (int i = 0; i < n; ++i) {
          const double mpi = m[pq][i], mqi = m[rq][i];
          m[pq][i] = c * mpi - s * mqi;
          m[rq][i] = s * mpi + c * mqi;
        }
        for (int i = 0; i < n; ++i) {
          const double vip = vecs[i][pq], viq = vecs[i][rq];
          vecs[i][pq] = c * vip - s * viq;
          vecs[i][rq] = s * vip + c * viq;
        }
      }
  }
  // sort ascending, carrying columns
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return m[a][a] < m[b][b]; });
  vals.resize(n);
  std::vector<std::vector<double>> sorted(n, std::vector<double>(n));
  for (int c = 0; c < n; ++c) {
    vals[c] = m[order[c]][order[c]];
    for (int r = 0; r < n; ++r) sorted[r][c] = vecs[r][order[c]];
  }
  vecs = std::move(sorted);
}

std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& diag,
                                            const std::vector<double>& offdiag) {
  const int n = static_cast<int>(diag.size());
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) m[i][i] = diag[i];
  for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = offdiag[i];
  std::vector<double> vals;
  std::vector<std::vector<double>> vecs;
  symmetric_eigen(std::move(m), vals, vecs);
  return vals;
}

SecondBasis construct_second_basis(int N, const QuadratureGrid& grid, const ModelParams& p,
                                   Exec ex) {
  DegenerateBlock blk = degenerate_block(N, build_operator(OperatorName::R, p), grid, p, ex);
  const int d = static_cast<int>(blk.basis.size());
  // symmetrize before the eigensolve (block is symmetric to quadrature error)
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double avg = (blk.matrix[i][j] + blk.matrix[j][i]) / 2;
      blk.matrix[i][j] = blk.matrix[j][i] = avg;
    }
  SecondBasis sb;
  sb.N = N;
  for (int nu = N % 2; nu <= N; nu += 2) sb.labels.push_back({N, nu});
  symmetric_eigen(blk.matrix, sb.r_eigenvalues, sb.Z);
  const double scale = std::fabs(sb.r_eigenvalues.back()) + 1.0;
  for (int i = 0; i + 1 < d; ++i)
    if (std::fabs(sb.r_eigenvalues[i + 1] - sb.r_eigenvalues[i]) < 1e-9 * scale)
      throw DegenerateRSpectrum("R eigenvalues collide at level N = " + std::to_string(N));
  // Phase: positive component on the smallest-l (largest-n) member, the last
  // basis index. This is the convention induced by building the states with
  // successive eta^dag applications, and it reproduces the N=4 phase factors
  // s_2 = s_4 = -1.
  for (int c = 0; c < d; ++c)
    if (sb.Z[d - 1][c] < 0)
      for (int r = 0; r < d; ++r) sb.Z[r][c] = -sb.Z[r][c];
  return sb;
}

NumericTridiagonal l_matrix_numeric(int N, const QuadratureGrid& grid, const ModelParams& p,
                                    Exec ex) {
  const SecondBasis sb = construct_second_basis(N, grid, p, ex);
  const DegenerateBlock lblk =
      degenerate_block(N, build_operator(OperatorName::L, p), grid, p, ex);
  const int d = static_cast<int>(sb.Z.size());
  // T = Z^T L Z
  std::vector<std::vector<double>> T(d, std::vector<double>(d, 0.0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double acc = 0;
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) acc += sb.Z[r][i] * lblk.matrix[r][c] * sb.Z[c][j];
      T[i][j] = acc;
    }
  NumericTridiagonal t;
  t.N = N;
  for (const auto& lb : sb.labels) t.nu.push_back(lb.nu);
  for (int i = 0; i < d; ++i) t.diag.push_back(T[i][i]);
  for (int i = 0; i + 1 < d; ++i) {
    const double v = (T[i][i + 1] + T[i + 1][i]) / 2;
    t.offdiag.push_back(v);
    t.phases.push_back(v < 0 ? -1 : 1);
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (std::abs(i - j) >= 2) t.beyond_tridiagonal = std::max(t.beyond_tridiagonal,
                                                                std::fabs(T[i][j]));
  return t;
}

}  // namespace pdm
