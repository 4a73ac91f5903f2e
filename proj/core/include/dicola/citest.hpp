#ifndef DICOLA_CITEST_HPP
#define DICOLA_CITEST_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dicola/dataset.hpp"
#include "dicola/graph.hpp"

namespace dicola {

/// Conditional-independence test over a fixed set of named variables.
///
/// Every call to `test_independence` bumps the shared counter by one, whatever
/// the backend. Variables are addressed by their index in `variables()`.
class CiTester {
public:
    using Clock = std::chrono::steady_clock;

    explicit CiTester(VertexNames variables) : variables_(std::move(variables)) {}
    virtual ~CiTester() = default;
    CiTester(const CiTester&) = delete;
    CiTester& operator=(const CiTester&) = delete;

    const VertexNames& variables() const { return variables_; }

    /// True when x and y are judged independent given z. Throws TimeoutError
    /// once the deadline has passed.
    bool test_independence(int x, int y, std::span<const int> z);
    bool test_independence(std::string_view x, std::string_view y, std::span<const std::string> z);

    std::uint64_t count() const { return count_.load(std::memory_order_relaxed); }
    void reset_count() { count_.store(0, std::memory_order_relaxed); }

    void set_deadline(std::optional<Clock::time_point> deadline) { deadline_ = deadline; }

protected:
    virtual bool evaluate(int x, int y, std::span<const int> z) const = 0;

private:
    VertexNames variables_;
    std::atomic<std::uint64_t> count_{0};
    std::optional<Clock::time_point> deadline_;
};

/// Answers with m-separation in a known MAG (or DAG).
class OracleTester final : public CiTester {
public:
    explicit OracleTester(MixedGraph mag);
    const MixedGraph& graph() const { return mag_; }

protected:
    bool evaluate(int x, int y, std::span<const int> z) const override;

private:
    MixedGraph mag_;
};

inline constexpr double kDefaultAlpha = 0.01;

/// Partial correlation of x and y given z from the inverse of the correlation
/// submatrix over {x, y} u z. Ill-conditioned submatrices (condition number
/// above 1e12) get one ridge of 1e-10 on the diagonal; if that is not enough a
/// NumericalError is thrown.
double partial_correlation(const Dataset& d, int x, int y, std::span<const int> z);
double partial_correlation(const Dataset& d, std::string_view x, std::string_view y, std::span<const std::string> z);

/// Fisher-Z statistic sqrt(m - |z| - 3) * atanh(r), with |r| clamped below 1.
double fisher_z_statistic(const Dataset& d, int x, int y, std::span<const int> z);

/// Fisher-Z test of zero partial correlation at level alpha.
class FisherZTester final : public CiTester {
public:
    FisherZTester(std::shared_ptr<const Dataset> data, double alpha = kDefaultAlpha);
    double alpha() const { return alpha_; }
    double critical_value() const { return critical_; }
    const Dataset& data() const { return *data_; }

protected:
    bool evaluate(int x, int y, std::span<const int> z) const override;

private:
    std::shared_ptr<const Dataset> data_;
    double alpha_;
    double critical_;
};

/// Counts the tests one algorithm phase issues, independent of the shared
/// counter of the underlying tester.
class CountingTester {
public:
    explicit CountingTester(CiTester& tester) : tester_(tester) {}
    bool operator()(int x, int y, std::span<const int> z) {
        ++count_;
        return tester_.test_independence(x, y, z);
    }
    std::uint64_t count() const { return count_; }
    CiTester& base() const { return tester_; }

private:
    CiTester& tester_;
    std::uint64_t count_ = 0;
};

}  // namespace dicola

#endif  // DICOLA_CITEST_HPP
