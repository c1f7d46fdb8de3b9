#pragma once

namespace chaosde {

// p-value kernels. Continued-fraction / series evaluation, absolute error
// well below 1e-10 over the parameter ranges the tests exercise.

/// I_x(a, b) for x in [0, 1], a, b > 0.
double regularized_incomplete_beta(double x, double a, double b);

/// P(a, x), the regularized lower incomplete gamma, for a > 0, x >= 0.
double regularized_lower_gamma(double a, double x);

/// Q(a, x) = 1 - P(a, x).
double regularized_upper_gamma(double a, double x);

double error_function(double x);

}  // namespace chaosde
