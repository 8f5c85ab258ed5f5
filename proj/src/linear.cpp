#include <Eigen/Dense>

#include "fedsurvey/models.hpp"

namespace fedsurvey {

LinearModel fit_ols(const std::vector<double>& x, const std::vector<double>& y,
                    std::size_t n, std::size_t m, double jitter) {
    if (x.size() != n * m || y.size() != n)
        throw ModelError("DimensionMismatch: fit_ols input sizes");
    if (n == 0) throw ModelError("fit_ols: empty input");

    const auto rows = static_cast<Eigen::Index>(n);
    const auto cols = static_cast<Eigen::Index>(m + 1);
    Eigen::MatrixXd design(rows, cols);
    design.col(0).setOnes();
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(m); ++j)
            design(i, j + 1) = x[static_cast<std::size_t>(i) * m + static_cast<std::size_t>(j)];
    Eigen::VectorXd target = Eigen::Map<const Eigen::VectorXd>(y.data(), rows);

    LinearModel model;
    model.coefficients.resize(m);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    Eigen::VectorXd beta;
    if (rows >= cols && qr.rank() == cols) {
        beta = qr.solve(target);
    } else if (jitter > 0.0) {
        // Ridge fallback: (A'A + jitter I) beta = A'y.
        Eigen::MatrixXd gram = design.transpose() * design;
        gram.diagonal().array() += jitter;
        beta = gram.ldlt().solve(design.transpose() * target);
        model.ridged = true;
    } else {
        throw ModelError("DegenerateDesign: rank " + std::to_string(qr.rank()) + " of " +
                         std::to_string(cols) + " with jitter = 0");
    }

    if (!beta.allFinite()) throw ModelError("fit_ols: non-finite solution");
    model.intercept = beta(0);
    for (std::size_t j = 0; j < m; ++j)
        model.coefficients[j] = beta(static_cast<Eigen::Index>(j) + 1);
    return model;
}

double linear_predict_row(const LinearModel& model, const double* row, std::size_t m) {
    if (model.coefficients.size() != m)
        throw ModelError("DimensionMismatch: linear model expects " +
                         std::to_string(model.coefficients.size()) + " features, got " +
                         std::to_string(m));
    double out = model.intercept;
    for (std::size_t j = 0; j < m; ++j) out += model.coefficients[j] * row[j];
    return out;
}

std::vector<double> linear_predict(const LinearModel& model, const std::vector<double>& x,
                                   std::size_t n, std::size_t m) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = linear_predict_row(model, x.data() + i * m, m);
    return out;
}

}  // namespace fedsurvey
