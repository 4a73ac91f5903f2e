#include "dicola/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "dicola/errors.hpp"

namespace dicola {

namespace {

Eigen::MatrixXd correlation_of(const Eigen::MatrixXd& data) {
    const Eigen::Index p = data.cols();
    Eigen::MatrixXd corr = Eigen::MatrixXd::Identity(p, p);
    if (data.rows() < 2) return corr;
    Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
    Eigen::MatrixXd cov = centered.transpose() * centered;
    Eigen::VectorXd sd = cov.diagonal().cwiseSqrt();
    for (Eigen::Index i = 0; i < p; ++i) {
        for (Eigen::Index j = i + 1; j < p; ++j) {
            double denom = sd(i) * sd(j);
            double r = denom > 0 ? cov(i, j) / denom : 0.0;
            corr(i, j) = corr(j, i) = std::clamp(r, -1.0, 1.0);
        }
    }
    return corr;
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto comma = line.find(',', start);
        auto field = line.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
        while (!field.empty() && field.front() == ' ') field.erase(field.begin());
        out.push_back(std::move(field));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

Dataset::Dataset(std::vector<std::string> columns, Eigen::MatrixXd data)
    : columns_(std::move(columns)), data_(std::move(data)) {
    if (data_.cols() != columns_.size()) throw InputError("dataset: column count does not match names");
    if (!data_.allFinite()) throw InputError("dataset: non-finite value");
    corr_ = correlation_of(data_);
}

Dataset Dataset::select(std::span<const std::string> columns) const {
    Eigen::MatrixXd out(data_.rows(), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j)
        out.col(static_cast<Eigen::Index>(j)) = data_.col(columns_.index_of(columns[j]));
    return Dataset(std::vector<std::string>(columns.begin(), columns.end()), std::move(out));
}

Dataset Dataset::read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("csv: missing header row");
    auto names = split_row(line);
    const std::size_t p = names.size();
    std::vector<double> values;
    std::size_t rows = 0;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto fields = split_row(line);
        if (fields.size() != p)
            throw InputError("csv line " + std::to_string(line_no) + ": expected " + std::to_string(p) + " fields");
        for (const auto& f : fields) {
            double v = 0;
            auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
            if (ec != std::errc() || ptr != f.data() + f.size() || !std::isfinite(v))
                throw InputError("csv line " + std::to_string(line_no) + ": not a number '" + f + "'");
            values.push_back(v);
        }
        ++rows;
    }
    Eigen::MatrixXd data(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(p));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < p; ++c)
            data(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = values[r * p + c];
    return Dataset(std::move(names), std::move(data));
}

Dataset Dataset::load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open csv " + path.string());
    return read_csv(in);
}

void Dataset::write_csv(std::ostream& out) const {
    for (int j = 0; j < num_variables(); ++j) out << (j ? "," : "") << columns_.name(j);
    out << '\n';
    out << std::setprecision(17);
    for (Eigen::Index i = 0; i < data_.rows(); ++i) {
        for (Eigen::Index j = 0; j < data_.cols(); ++j) out << (j ? "," : "") << data_(i, j);
        out << '\n';
    }
}

void Dataset::save_csv(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write csv " + path.string());
    write_csv(out);
}

}  // namespace dicola
