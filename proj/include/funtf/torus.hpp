#pragma once

#include <vector>

#include "funtf/eigensteps.hpp"
#include "funtf/frame.hpp"
#include "funtf/random.hpp"

namespace funtf {

/// Angles indexed by the independent-eigenstep positions, reduced to [0, 2pi).
struct TorusElement {
  IndexSet index_set;
  std::vector<double> angles;

  TorusElement(IndexSet set, std::vector<double> raw_angles);
};

double default_isolation_tolerance(int d, int N);

/// Multiplies f_1..f_k by exp(i t u u^*) = I + (e^{it} - 1) u u^*, where u is the
/// canonical unit eigenvector of S_k for its j-th largest eigenvalue. Throws
/// IsolationError when that eigenvalue is within tol_iso of a neighbour.
FrameMatrix circle_action(const FrameMatrix& frame, int k, int j, double t, double tol_iso);

/// Circle actions applied one after another over the index set in canonical
/// order, recomputing S_k at each step.
FrameMatrix torus_action(const FrameMatrix& frame, const TorusElement& theta, double tol_iso);

/// Independent uniform angles in [0, 2pi).
TorusElement random_torus_element(const IndexSet& index_set, Rng& rng);

}  // namespace funtf
