#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "obstructo/linalg.hpp"
#include "obstructo/opalg.hpp"

namespace obstructo {

/// Finite matrices assigned to operator generators. Truncated bases record
/// how far one generator moves a basis index (`reach`), which fixes the
/// columns on which a product of generators is computed without loss.
struct MatrixRep {
  std::string basis;  // "hermite-unnormalized", "spin-m", "fourier-n"
  std::size_t dim = 0;
  int first_label = 0;  // basis label of column 0 (n = -N for fourier)
  int reach = 0;        // 0 when the representation is not truncated
  std::map<std::string, Eigen::MatrixXcd> generators;

  const Eigen::MatrixXcd& at(const std::string& name) const;
  /// Columns on which every word of length <= word_len is exact.
  std::vector<std::size_t> interior(unsigned word_len) const;
};

/// Q (position) and P (momentum) on the first N unnormalized Hermite functions.
MatrixRep schrodinger_matrices(std::size_t N, double hbar = 1.0);
/// Adds "qq", "qp", "pp" for Q(q^2), Q(qp), Q(p^2) to the Schrodinger pair.
MatrixRep metaplectic_matrices(std::size_t N, double hbar = 1.0);
/// S1, S2, S3 in the basis m = j, j-1, ..., -j; `two_j` = 2j.
MatrixRep spin_matrices(unsigned two_j, double hbar = 1.0);
/// L, C, S on e^{i n theta}, |n| <= N.
MatrixRep e2_fourier_matrices(std::size_t N, double nu, double hbar = 1.0);

/// Substitutes the rep's matrices into the words of x.
Eigen::MatrixXcd evaluate_oppoly(const MatrixRep& rep, const OpPoly& x, const Bindings& bindings);

/// Exact Hermite-basis matrices of multiplication by q and of d/dq.
linalg::Matrix hermite_position_exact(std::size_t N);
linalg::Matrix hermite_derivative_exact(std::size_t N);

/// Result of solving [Q(q), E] = 0, [Q(p), E] = -2 i hbar Q(q) for an
/// N x N matrix E. Entry E[j][k] is the coefficient of |j> in E|k>.
struct QuadraticElementReport {
  std::size_t N = 0;
  std::size_t interior = 0;          // indices < interior are reported
  linalg::Matrix E;                  // particular solution (free parameters zero)
  std::size_t kernel_dim = 0;
  bool kernel_scalar_on_interior = false;
  bool upper_band = false;           // E[k+2][k] = 1/4
  bool lower_band = false;           // E[k-2][k] = k(k-1)
  bool diagonal = false;             // E[k][k] - E[0][0] = k
  bool off_band_zero = false;
  GaussRat epsilon;                  // E[0][0] - 1/2 for the particular solution
  bool closure_unique = false;       // adding [Q(qp), E] = -2 i hbar E fixes epsilon
  GaussRat forced_epsilon;
  double max_band_error = 0.0;       // floating check against the expected bands

  Eigen::MatrixXcd matrix() const;
};

QuadraticElementReport solve_quadratic_element(std::size_t N);

}  // namespace obstructo
