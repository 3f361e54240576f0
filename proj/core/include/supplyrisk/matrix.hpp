#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace supplyrisk {

enum class MatrixKind {
    Expected,      // E^cd, expected relative production loss
    ExposedValue,  // V^cd = k^d E^cd
    LinkCount,     // A^cd
    MeanOutlinks,  // A^cd / N^c
};

std::string_view to_string(MatrixKind kind);
MatrixKind matrix_kind_from_string(std::string_view name);

// Square region x region matrix. Rows are the origin region c, columns the
// affected region d; both axes share one label order.
class ExposureMatrix {
public:
    ExposureMatrix() = default;
    ExposureMatrix(std::vector<std::string> labels, MatrixKind kind);
    ExposureMatrix(std::vector<std::string> labels, MatrixKind kind, std::vector<double> values);

    std::size_t size() const noexcept { return labels_.size(); }
    bool empty() const noexcept { return labels_.empty(); }
    MatrixKind kind() const noexcept { return kind_; }
    const std::vector<std::string> &labels() const noexcept { return labels_; }

    double &operator()(std::size_t c, std::size_t d) { return values_[c * labels_.size() + d]; }
    double operator()(std::size_t c, std::size_t d) const { return values_[c * labels_.size() + d]; }

    std::span<const double> row(std::size_t c) const {
        return std::span<const double>(values_).subspan(c * labels_.size(), labels_.size());
    }
    const std::vector<double> &values() const noexcept { return values_; }

    std::vector<double> column_sums() const;

    friend bool operator==(const ExposureMatrix &, const ExposureMatrix &) = default;

private:
    std::vector<std::string> labels_;
    MatrixKind kind_ = MatrixKind::Expected;
    std::vector<double> values_;
};

} // namespace supplyrisk
