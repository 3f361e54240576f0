#include "supplyrisk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "supplyrisk/error.hpp"
#include "supplyrisk/special_functions.hpp"

namespace supplyrisk {

namespace {

void require_same_length(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw InputError("paired vectors differ in length (" + std::to_string(x.size()) + " vs " +
                         std::to_string(y.size()) + ")");
}

double mean(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

} // namespace

LorenzCurve lorenz(std::span<const double> values, std::span<const double> weights) {
    require_same_length(values, weights);
    if (values.empty())
        throw InputError("Lorenz curve needs at least one region");
    double total_value = 0.0;
    double total_weight = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!(values[k] >= 0.0) || !std::isfinite(values[k]))
            throw InputError("Lorenz values must be finite and non-negative");
        if (!(weights[k] > 0.0) || !std::isfinite(weights[k]))
            throw InputError("Lorenz weights must be finite and positive");
        total_value += values[k];
        total_weight += weights[k];
    }
    if (!(total_value > 0.0))
        throw ComputationError("Lorenz curve of all-zero values is undefined");

    LorenzCurve curve;
    curve.order.resize(values.size());
    std::iota(curve.order.begin(), curve.order.end(), std::size_t{0});
    std::stable_sort(curve.order.begin(), curve.order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] / weights[a] < values[b] / weights[b];
    });

    curve.points.reserve(values.size() + 1);
    curve.points.push_back({0.0, 0.0});
    double cum_value = 0.0;
    double cum_weight = 0.0;
    for (std::size_t k : curve.order) {
        cum_value += values[k];
        cum_weight += weights[k];
        curve.points.push_back({cum_weight / total_weight, cum_value / total_value});
    }
    return curve;
}

double gini(const LorenzCurve &curve) {
    double twice_area = 0.0;
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        const auto &a = curve.points[k - 1];
        const auto &b = curve.points[k];
        twice_area += (b.population_share - a.population_share) * (b.value_share + a.value_share);
    }
    return std::max(0.0, 1.0 - twice_area);
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
    require_same_length(x, y);
    const std::size_t n = x.size();
    if (n < 3)
        throw InputError("Pearson correlation needs at least 3 pairs");
    const double mx = mean(x);
    const double my = mean(y);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = x[k] - mx;
        const double dy = y[k] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw ComputationError("Pearson correlation of a constant vector is undefined");

    Correlation out;
    out.n = n;
    out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    const double df = static_cast<double>(n - 2);
    const double one_minus = 1.0 - out.r * out.r;
    if (one_minus <= 0.0) {
        out.p_value = 0.0;
    } else {
        const double t = out.r * std::sqrt(df / one_minus);
        out.p_value = special::student_t_two_sided(t, df);
    }
    return out;
}

PowerLawFit loglog_fit(std::span<const double> x, std::span<const double> y) {
    require_same_length(x, y);
    std::vector<double> lx, ly;
    PowerLawFit fit;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] > 0.0 && y[k] > 0.0 && std::isfinite(x[k]) && std::isfinite(y[k])) {
            lx.push_back(std::log(x[k]));
            ly.push_back(std::log(y[k]));
        } else {
            ++fit.dropped;
        }
    }
    fit.used = lx.size();
    if (fit.used < 3)
        throw ComputationError("log-log fit needs at least 3 strictly positive pairs, got " +
                               std::to_string(fit.used));
    const double mx = mean(lx);
    const double my = mean(ly);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < lx.size(); ++k) {
        const double dx = lx[k] - mx;
        const double dy = ly[k] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0)
        throw ComputationError("log-log fit needs at least two distinct x values");
    fit.exponent = sxy / sxx;
    fit.prefactor = std::exp(my - fit.exponent * mx);
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

RegressionResult ols_multi(std::span<const double> y, const std::vector<std::vector<double>> &covariates,
                           const std::vector<std::string> &names, bool add_intercept) {
    if (names.size() != covariates.size())
        throw InputError("one name per covariate is required");
    const std::size_t n = y.size();
    const std::size_t p = covariates.size() + (add_intercept ? 1 : 0);
    if (p == 0)
        throw InputError("regression needs at least one regressor");
    for (const auto &column : covariates)
        if (column.size() != n)
            throw InputError("covariate length does not match the response");
    if (n <= p)
        throw ComputationError("regression needs more observations (" + std::to_string(n) + ") than parameters (" +
                               std::to_string(p) + ")");

    Eigen::MatrixXd design(n, p);
    Eigen::VectorXd response(n);
    std::vector<std::string> labels;
    std::size_t col = 0;
    if (add_intercept) {
        design.col(col++).setOnes();
        labels.emplace_back("intercept");
    }
    for (std::size_t k = 0; k < covariates.size(); ++k, ++col) {
        for (std::size_t r = 0; r < n; ++r)
            design(r, col) = covariates[k][r];
        labels.push_back(names[k]);
    }
    for (std::size_t r = 0; r < n; ++r)
        response(r) = y[r];

    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pivoted(design);
    if (static_cast<std::size_t>(pivoted.rank()) < p)
        throw ComputationError("rank-deficient design matrix (rank " + std::to_string(pivoted.rank()) + " < " +
                               std::to_string(p) + ")");

    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(design);
    const Eigen::VectorXd beta = qr.solve(response);
    const Eigen::VectorXd residual = response - design * beta;

    const Eigen::MatrixXd upper = qr.matrixQR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd upper_inv =
        upper.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::MatrixXd unscaled_cov = upper_inv * upper_inv.transpose();

    const double sse = residual.squaredNorm();
    const double dof = static_cast<double>(n - p);
    const double sigma2 = sse / dof;
    double sst = 0.0;
    if (add_intercept) {
        const double my = response.mean();
        sst = (response.array() - my).square().sum();
    } else {
        sst = response.squaredNorm();
    }

    RegressionResult out;
    out.observations = n;
    out.residuals.assign(residual.data(), residual.data() + n);
    for (std::size_t k = 0; k < p; ++k) {
        Coefficient c;
        c.name = labels[k];
        c.estimate = beta(k);
        c.std_error = std::sqrt(sigma2 * unscaled_cov(k, k));
        if (c.std_error > 0.0) {
            c.t_value = c.estimate / c.std_error;
            c.p_value = special::student_t_two_sided(c.t_value, dof);
        } else if (c.estimate == 0.0) {
            c.t_value = 0.0;
            c.p_value = 1.0;
        } else {
            c.t_value = std::copysign(std::numeric_limits<double>::infinity(), c.estimate);
            c.p_value = 0.0;
        }
        out.coefficients.push_back(std::move(c));
    }

    const double model_dof = static_cast<double>(p - (add_intercept ? 1 : 0));
    if (sst > 0.0) {
        out.r_squared = std::clamp(1.0 - sse / sst, 0.0, 1.0);
        const double baseline_dof = static_cast<double>(n - (add_intercept ? 1 : 0));
        out.adjusted_r_squared = 1.0 - (1.0 - out.r_squared) * baseline_dof / dof;
        if (model_dof > 0.0) {
            out.f_statistic = sse > 0.0 ? std::max(0.0, sst - sse) / model_dof / sigma2
                                        : std::numeric_limits<double>::infinity();
            out.model_p_value = special::f_upper_tail(out.f_statistic, model_dof, dof);
        }
    } else {
        out.r_squared = 0.0;
        out.adjusted_r_squared = 0.0;
        out.f_statistic = 0.0;
        out.model_p_value = 1.0;
    }
    return out;
}

} // namespace supplyrisk
