#pragma once

namespace skdv::airy {

/// Airy function of the first kind.  Maclaurin series in extended precision on [-7, 8],
/// Poincare asymptotic expansions beyond it; absolute error below 1e-12 on the
/// real line.
double ai(double x);

}  // namespace skdv::airy
