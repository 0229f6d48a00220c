#pragma once

#include <cstdint>
#include <vector>

#include "cheegerlab/cheeger.hpp"
#include "cheegerlab/diagram.hpp"
#include "cheegerlab/geometry.hpp"

namespace cheegerlab {

// Vertex parametrization: a flat coordinate vector (x_0..x_{n-1}, y_0..y_{n-1})
// in counterclockwise order. Convexity is the sign condition C_k <= 0 with
//   C_k = (x_{k-1}-x_k)(y_{k+1}-y_k) - (y_{k-1}-y_k)(x_{k+1}-x_k).

std::vector<double> convexity_constraints(const std::vector<double>& coords);

struct GradientBundle {
  std::vector<double> dh;               // shape derivative of h
  std::vector<double> dp;               // perimeter gradient
  std::vector<double> da;               // area gradient
  std::vector<std::vector<double>> dc;  // one row per convexity constraint
};

// Shape derivative of the Cheeger constant under vertex displacements. The
// boundary of the Cheeger set has curvature 1/t* on its arcs and 0 on the
// contact segments, so for a displacement field V,
//   h'(V) = -(h/|C|) * integral over the contact set of <V, n>.
// With V the piecewise-linear hat of one vertex coordinate, the integrals
// reduce to closed forms per contact sub-segment.
std::vector<double> cheeger_gradient(const ConvexPolygon& p);

std::vector<double> area_gradient(const std::vector<double>& coords);
std::vector<double> perimeter_gradient(const std::vector<double>& coords);
std::vector<std::vector<double>> convexity_gradients(
    const std::vector<double>& coords);

GradientBundle gradient_bundle(const ConvexPolygon& p);

struct OptimizerOptions {
  int starts = 8;
  std::uint64_t seed = 1;
  int max_outer = 6;       // continuation rounds; barrier shrinks each round
  int max_inner = 400;     // projected-gradient steps per round
  double penalty0 = 10.0;  // initial equality penalty weight
  double penalty_factor = 10.0;
  double barrier0 = 1e-6;  // initial convexity barrier weight
  double feas_tol = 1e-8;
  double grad_tol = 1e-6;
};

struct OptimizeResult {
  ConvexPolygon polygon;
  double h = 0.0;
  bool converged = false;
  double area_residual = 0.0;
  double perimeter_residual = 0.0;
  double max_convexity = 0.0;      // max C_k at the solution (<= 0 feasible)
  bool cheeger_regular = false;
  int effective_sides = 0;         // after merging near-collinear vertices
  double projected_gradient = 0.0;
};

// max { h(P) : P an n-gon, area 1, perimeter p0 }. Feasible-point method:
// every iterate is retracted onto {A = 1, P = p0} by Newton steps before the
// objective is evaluated; the ascent direction is the h-gradient projected
// against the two constraint gradients, with a vanishing log-barrier keeping
// C_k < 0. Multistart: a stretched regular polygon matched to p0 plus random
// Valtr starts (and, for even n, the equiangular elongation, which is already
// optimal there).
OptimizeResult maximize_h(int n, double p0, const OptimizerOptions& opts = {});

// One maximize_h per grid abscissa, warm-starting from the previous optimum.
// Emits the empirical upper boundary of the n-gon diagram.
std::vector<DiagramPoint> trace_upper_boundary(
    int n, const std::vector<double>& p_grid,
    const OptimizerOptions& opts = {});

}  // namespace cheegerlab
