// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cubicpt/numkit/complex_path.hpp"

namespace cubicpt {

// LU factorisation with partial pivoting of a complex tridiagonal matrix.
class TridiagonalLu {
 public:
  // sub[i] = A(i+1, i), diag[i] = A(i, i), super[i] = A(i, i+1).
  TridiagonalLu(std::vector<cplx> sub, std::vector<cplx> diag, std::vector<cplx> super);
  std::vector<cplx> solve(std::vector<cplx> b) const;
  std::size_t size() const { return d_.size(); }

 private:
  std::vector<cplx> l_, d_, u1_, u2_;
  std::vector<std::size_t> pivot_;  // row swapped with i at step i: i or i+1
};

struct FdEigenpair {
  cplx lambda;
  double residual = 0.0;  // ||(A - lambda) v|| / ||v||
  int iterations = 0;
};

struct FdResult {
  int n_intervals = 0;
  double half_width = 0.0;
  std::vector<cplx> lambda;         // Richardson extrapolation over N and N/2
  std::vector<FdEigenpair> fine;    // N intervals
  std::vector<FdEigenpair> coarse;  // N/2 intervals
  std::vector<std::pair<int, int>> collisions;  // index pairs closer than 1e-6
};

// Eigenpair of the central-difference discretisation of -d^2/dx^2 + i x^3 + i alpha x on [-L, L]
// with Dirichlet ends and N intervals, by shifted inverse iteration from `shift`.
FdEigenpair fd_eigenpair(double alpha, int N, double L, cplx shift);

// The k lowest eigenvalues, seeded by Bohr-Sommerfeld values or by `seeds` when given.
FdResult fd_oracle(double alpha, int N, double L, int k,
                   std::optional<std::vector<cplx>> seeds = std::nullopt);

}  // namespace cubicpt
