#pragma once

#include <functional>

namespace asprt {

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b] to an absolute
// tolerance. Intervals are bisected until the embedded-rule error estimate on
// each piece fits within its share of the budget.
double adaptive_gauss_kronrod(const std::function<double(double)>& f, double a,
                              double b, double abs_tol);

}  // namespace asprt
