#pragma once

#include <complex>
#include <vector>

#include "trivortex/polynomial.hpp"

namespace trivortex {

/// All complex roots of p. Closed forms for degree <= 3 (trigonometric /
/// Cardano branch chosen for numerical robustness), companion-matrix
/// eigenvalues beyond that. Every root is Newton-polished and roots with
/// |Im| < 1e-12 * scale are snapped onto the real axis.
std::vector<std::complex<double>> poly_roots(const UniPoly<double>& p);

std::vector<std::complex<double>> poly_roots(const UniPoly<Rational>& p);

/// Real roots only, ascending, using the snapping rule above.
std::vector<double> poly_real_roots(const UniPoly<double>& p);

/// A few complex Newton steps against p; returns the improved root.
std::complex<double> newton_polish(const UniPoly<double>& p, std::complex<double> z,
                                   int max_iter = 12);

}  // namespace trivortex
