#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "funtf/eigensteps.hpp"
#include "funtf/frame.hpp"

namespace funtf {

/// Spectrum of a Hermitian matrix in descending order with a matching unitary
/// eigenbasis. `groups` lists index ranges of eigenvalues equal within the
/// grouping tolerance.
struct SpectralDecomposition {
  Eigen::VectorXd eigenvalues;
  CMatrix eigenvectors;
  std::vector<std::vector<int>> groups;
};

SpectralDecomposition decompose(const CMatrix& hermitian, double tol_group);

/// Clusters the entries of a descending sequence into runs whose consecutive
/// differences are at most tol_group.
std::vector<std::vector<int>> group_descending(std::span<const double> values, double tol_group);

/// Unit vector v scaled by a unit-modulus phase so that its largest-modulus
/// entry (lowest index on ties) is real and positive.
CVector canonical_phase(const CVector& v);

/// Squared norm of the projection of f_{k+1} onto the mu-eigenspace of S_k
/// implied by consecutive eigenstep rows: the residue
///   -lim_{x -> mu} (x - mu) p_{k+1}(x) / p_k(x),
/// with p_k(x) = prod_j (x - row_k[j]). Multiplicities are counted within
/// tol_group. Throws InvalidArgument when the rows cannot interlace at mu and
/// NumericalError when the weight is below -tol_group; otherwise the result is
/// clamped at 0.
double limit_weight(std::span<const double> row_k, std::span<const double> row_k1, double mu,
                    double tol_group);

struct LiftOptions {
  double tol = 1e-8;        ///< table validation and round-trip acceptance
  double tol_group = -1.0;  ///< < 0 selects 1e-8 max(1, N/d)
};

double default_group_tolerance(int d, int N);

/// Per-run numerical record of a lift.
struct LiftReport {
  double max_weight_sum_error = 0.0;  ///< max_k | sum_mu w_mu - 1 |
  double max_clamp = 0.0;             ///< largest |w| clamped from below 0
  double round_trip_error = 0.0;      ///< max entry error of eigensteps_of(F)
};

/// A FUNTF whose eigensteps are complete_table(x). f_1 = e_1; each next vector
/// is sum_mu sqrt(w_mu) v_mu over the distinct eigenvalues of S_k, v_mu the
/// canonical first eigenvector of the mu-eigenspace. Deterministic.
FrameMatrix lift_to_fiber(const IndependentEigensteps& x, const LiftOptions& options = {},
                          LiftReport* report = nullptr);

}  // namespace funtf
