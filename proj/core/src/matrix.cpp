#include "supplyrisk/matrix.hpp"

#include "supplyrisk/error.hpp"

namespace supplyrisk {

std::string_view to_string(MatrixKind kind) {
    switch (kind) {
    case MatrixKind::Expected:
        return "expected";
    case MatrixKind::ExposedValue:
        return "exposed_value";
    case MatrixKind::LinkCount:
        return "link_count";
    case MatrixKind::MeanOutlinks:
        return "mean_outlinks";
    }
    return "unknown";
}

MatrixKind matrix_kind_from_string(std::string_view name) {
    for (auto kind : {MatrixKind::Expected, MatrixKind::ExposedValue, MatrixKind::LinkCount,
                      MatrixKind::MeanOutlinks}) {
        if (to_string(kind) == name)
            return kind;
    }
    throw InputError("unknown matrix kind '" + std::string(name) + "'");
}

ExposureMatrix::ExposureMatrix(std::vector<std::string> labels, MatrixKind kind)
    : labels_(std::move(labels)), kind_(kind), values_(labels_.size() * labels_.size(), 0.0) {}

ExposureMatrix::ExposureMatrix(std::vector<std::string> labels, MatrixKind kind, std::vector<double> values)
    : labels_(std::move(labels)), kind_(kind), values_(std::move(values)) {
    if (values_.size() != labels_.size() * labels_.size())
        throw InputError("matrix with " + std::to_string(labels_.size()) + " labels needs " +
                         std::to_string(labels_.size() * labels_.size()) + " values, got " +
                         std::to_string(values_.size()));
}

std::vector<double> ExposureMatrix::column_sums() const {
    const std::size_t n = size();
    std::vector<double> sums(n, 0.0);
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
            sums[d] += values_[c * n + d];
    return sums;
}

} // namespace supplyrisk
