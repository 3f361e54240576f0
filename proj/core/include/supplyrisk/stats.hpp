#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace supplyrisk {

struct LorenzPoint {
    double population_share;
    double value_share;

    friend bool operator==(const LorenzPoint &, const LorenzPoint &) = default;
};

/**
 * Lorenz curve over regions: regions sorted by ascending value per unit of
 * weight (e.g. exposure per capita), one point per region boundary, starting
 * at (0,0) and ending at (1,1). order[k] is the input index of the k-th region
 * along the curve.
 */
struct LorenzCurve {
    std::vector<LorenzPoint> points;
    std::vector<std::size_t> order;
};

// values >= 0, weights > 0, at least one positive value.
LorenzCurve lorenz(std::span<const double> values, std::span<const double> weights);

// 1 - 2 * (area under the curve), trapezoid rule.
double gini(const LorenzCurve &curve);

struct Correlation {
    double r = 0.0;
    double p_value = 1.0;  // two-sided, t test with n - 2 degrees of freedom
    std::size_t n = 0;
};

Correlation pearson(std::span<const double> x, std::span<const double> y);

// y ~ prefactor * x^exponent by least squares on (log x, log y). Pairs with a
// non-positive coordinate are dropped and counted.
struct PowerLawFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double r_squared = 0.0;
    std::size_t used = 0;
    std::size_t dropped = 0;
};

PowerLawFit loglog_fit(std::span<const double> x, std::span<const double> y);

struct Coefficient {
    std::string name;
    double estimate = 0.0;
    double std_error = 0.0;
    double t_value = 0.0;
    double p_value = 1.0;
};

struct RegressionResult {
    std::vector<Coefficient> coefficients;
    double r_squared = 0.0;
    double adjusted_r_squared = 0.0;
    double f_statistic = 0.0;
    double model_p_value = 1.0;
    std::size_t observations = 0;
    std::vector<double> residuals;
};

/**
 * Ordinary least squares y = X b + e via Householder QR.
 *
 * covariates holds one column per regressor, each of length y.size(). With
 * add_intercept a leading column of ones named "intercept" is added. Requires
 * more observations than parameters and a full-rank design; throws
 * ComputationError otherwise. When y has no variance, R^2 is reported as 0
 * and the model p-value as 1.
 */
RegressionResult ols_multi(std::span<const double> y, const std::vector<std::vector<double>> &covariates,
                           const std::vector<std::string> &names, bool add_intercept = true);

} // namespace supplyrisk
