#include "dicola/citest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/normal.hpp>

#include "dicola/errors.hpp"
#include "dicola/oracle.hpp"

namespace dicola {

namespace {

constexpr double kRidge = 1e-10;
constexpr double kMaxCondition = 1e12;
constexpr double kMaxAbsCorrelation = 1.0 - 1e-12;

void validate(const VertexNames& vars, int x, int y, std::span<const int> z) {
    const int n = vars.size();
    if (x < 0 || y < 0 || x >= n || y >= n) throw InputError("CI test: variable index out of range");
    if (x == y) throw InputError("CI test: x and y must differ (" + vars.name(x) + ")");
    for (int v : z) {
        if (v < 0 || v >= n) throw InputError("CI test: conditioning index out of range");
        if (v == x || v == y) throw InputError("CI test: conditioning set contains " + vars.name(v));
    }
}

}  // namespace

bool CiTester::test_independence(int x, int y, std::span<const int> z) {
    validate(variables_, x, y, z);
    if (deadline_ && Clock::now() > *deadline_) throw TimeoutError("CI-test deadline exceeded");
    count_.fetch_add(1, std::memory_order_relaxed);
    return evaluate(x, y, z);
}

bool CiTester::test_independence(std::string_view x, std::string_view y, std::span<const std::string> z) {
    auto zi = variables_.indices_of(z);
    return test_independence(variables_.index_of(x), variables_.index_of(y), zi);
}

OracleTester::OracleTester(MixedGraph mag) : CiTester(mag.vertices()), mag_(std::move(mag)) {
    if (mag_.kind() == GraphKind::Pag) throw InputError("oracle tester needs a DAG or MAG");
}

bool OracleTester::evaluate(int x, int y, std::span<const int> z) const { return m_separated(mag_, x, y, z); }

double partial_correlation(const Dataset& d, int x, int y, std::span<const int> z) {
    validate(d.columns(), x, y, z);
    const auto& corr = d.correlation();
    if (z.empty()) {
        if (!std::isfinite(corr(x, y)))
            throw NumericalError("correlation is undefined for (" + d.columns().name(x) + ", " + d.columns().name(y) + ")");
        return corr(x, y);
    }

    const auto k = static_cast<Eigen::Index>(z.size() + 2);
    std::vector<int> idx{x, y};
    idx.insert(idx.end(), z.begin(), z.end());
    Eigen::MatrixXd sub(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) sub(i, j) = corr(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sub);
    auto condition = [](const Eigen::VectorXd& ev) {
        if (!ev.allFinite()) return std::numeric_limits<double>::infinity();
        double lo = ev.minCoeff();
        double hi = ev.maxCoeff();
        return lo <= 0 ? std::numeric_limits<double>::infinity() : hi / lo;
    };
    Eigen::VectorXd values = eig.eigenvalues();
    if (condition(values) > kMaxCondition) {
        values.array() += kRidge;
        if (condition(values) > kMaxCondition)
            throw NumericalError("correlation submatrix is singular for (" + d.columns().name(x) + ", " +
                                 d.columns().name(y) + ")");
    }
    // Only three entries of the precision matrix are needed.
    const Eigen::MatrixXd& vecs = eig.eigenvectors();
    double pxx = 0, pyy = 0, pxy = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
        double inv = 1.0 / values(i);
        pxx += vecs(0, i) * vecs(0, i) * inv;
        pyy += vecs(1, i) * vecs(1, i) * inv;
        pxy += vecs(0, i) * vecs(1, i) * inv;
    }
    return std::clamp(-pxy / std::sqrt(pxx * pyy), -1.0, 1.0);
}

double partial_correlation(const Dataset& d, std::string_view x, std::string_view y, std::span<const std::string> z) {
    auto zi = d.columns().indices_of(z);
    return partial_correlation(d, d.columns().index_of(x), d.columns().index_of(y), zi);
}

double fisher_z_statistic(const Dataset& d, int x, int y, std::span<const int> z) {
    const double dof = static_cast<double>(d.num_samples()) - static_cast<double>(z.size()) - 3.0;
    if (dof <= 0)
        throw SampleSizeError("Fisher-Z needs more samples than |z| + 3 (m=" + std::to_string(d.num_samples()) +
                              ", |z|=" + std::to_string(z.size()) + ")");
    double r = std::clamp(partial_correlation(d, x, y, z), -kMaxAbsCorrelation, kMaxAbsCorrelation);
    return std::sqrt(dof) * 0.5 * std::log((1.0 + r) / (1.0 - r));
}

FisherZTester::FisherZTester(std::shared_ptr<const Dataset> data, double alpha)
    : CiTester(data ? data->columns() : VertexNames{}), data_(std::move(data)), alpha_(alpha) {
    if (!data_) throw InputError("Fisher-Z tester needs a dataset");
    if (!(alpha_ > 0.0 && alpha_ < 1.0)) throw InputError("alpha must lie in (0, 1)");
    critical_ = boost::math::quantile(boost::math::normal_distribution<double>(), 1.0 - alpha_ / 2.0);
}

bool FisherZTester::evaluate(int x, int y, std::span<const int> z) const {
    return std::abs(fisher_z_statistic(*data_, x, y, z)) <= critical_;
}

}  // namespace dicola
