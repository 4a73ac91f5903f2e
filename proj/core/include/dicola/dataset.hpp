#ifndef DICOLA_DATASET_HPP
#define DICOLA_DATASET_HPP

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dicola/graph.hpp"

namespace dicola {

/// Column-named sample matrix (rows are samples) with its correlation matrix
/// computed once at construction.
class Dataset {
public:
    Dataset() = default;
    Dataset(std::vector<std::string> columns, Eigen::MatrixXd data);

    int num_samples() const { return static_cast<int>(data_.rows()); }
    int num_variables() const { return static_cast<int>(data_.cols()); }
    const VertexNames& columns() const { return columns_; }
    const Eigen::MatrixXd& data() const { return data_; }
    const Eigen::MatrixXd& correlation() const { return corr_; }

    /// Copy restricted to `columns`, in the given order.
    Dataset select(std::span<const std::string> columns) const;

    /// CSV: header row of names, then one row per sample; ',' delimited, '.' decimal point.
    static Dataset read_csv(std::istream& in);
    static Dataset load_csv(const std::filesystem::path& path);
    void write_csv(std::ostream& out) const;
    void save_csv(const std::filesystem::path& path) const;

private:
    VertexNames columns_;
    Eigen::MatrixXd data_;
    Eigen::MatrixXd corr_;
};

}  // namespace dicola

#endif  // DICOLA_DATASET_HPP
