#pragma once

#include <span>
#include <vector>

namespace shallowwell {

/// Least-squares polynomial coefficients a_0 ... a_degree of y(x), solved by
/// column-pivoted QR on the Vandermonde matrix. Needs more than `degree`
/// points; throws NoConvergence if the design matrix is rank deficient.
std::vector<double> polyfit(std::span<const double> xs,
                            std::span<const double> ys, int degree);

/// sum_k a_k x^k
double polyval(std::span<const double> a, double x);

} // namespace shallowwell
