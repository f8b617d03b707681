#pragma once

#include "sphlkc/grid.hpp"

namespace sphlkc {

/// Observed geometry of one excursion set {x : f(x) >= u}.
struct ExcursionSummary {
  double level = 0.0;
  double area = 0.0;             // steradians
  double boundary_length = 0.0;  // radians of great-circle arc
  long euler_char = 0;
  double sup_value = 0.0;        // grid max (see sup_refined for the polish)
};

/// Quadrature of the excursion indicator: sum of node weights with f >= u.
double excursion_area(const PixelField& field, double u);

/// Level-curve length by marching squares on the (theta, phi) mesh with
/// linear interpolation along edges; segments measured as great-circle arcs.
/// The phi seam is identified and the polar caps are closed by triangle fans
/// to a synthetic pole vertex carrying the adjacent ring mean.
double boundary_length(const PixelField& field, double u);

/// V - E + F of the excursion subcomplex of the quadrilateral mesh (vertices,
/// edges and faces enter only when fully excursed). The seam is identified
/// and two pole vertices close the complex, so a fully excursed sphere gives 2.
long euler_characteristic(const PixelField& field, double u);

ExcursionSummary summarize_excursion(const PixelField& field, double u);

/// Grid max plus one local quadratic refinement around the argmax (separable
/// parabola fits along theta and phi). The raw grid max under-biases the
/// supremum; the refinement removes most of that at these resolutions.
double sup_refined(const PixelField& field);

}
