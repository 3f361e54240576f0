#pragma once

namespace supplyrisk::special {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
// Continued fraction (modified Lentz), relative accuracy about 1e-14.
double incomplete_beta(double x, double a, double b);

// Two-sided p-value of a Student t statistic with df degrees of freedom.
double student_t_two_sided(double t, double df);

// Upper-tail p-value P(F > f) of an F(d1, d2) statistic.
double f_upper_tail(double f, double d1, double d2);

} // namespace supplyrisk::special
