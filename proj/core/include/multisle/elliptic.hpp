#pragma once

#include "multisle/geometry.hpp"

namespace msle {

/// Arithmetic-geometric mean, iterated to relative tolerance 1e-14.
double agm(double a, double b);

/// Complete elliptic integral of the first kind K(k) for modulus 0 <= k < 1.
double elliptic_k(double k);

/// Modulus k with K(k') / K(k) = 2 * aspect, k' = sqrt(1 - k^2).
double rectangle_modulus(double aspect);

/// Preimages (-1/k, -1, 1, 1/k) of the corners of a rectangle with
/// height / width = aspect under the Schwarz–Christoffel map onto it. In
/// increasing order they are the top-left, bottom-left, bottom-right and
/// top-right corners.
BoundaryConfig rect_corner_preimages(double aspect);

/// The same corners relabelled counterclockwise from the bottom-left one
/// (BL, BR, TR, TL) and moved to increasing order by an order-preserving
/// Moebius map. Its cross ratio is 1 - cross_ratio(rect_corner_preimages).
BoundaryConfig rectangle_ccw_corner_config(double aspect);

}  // namespace msle
