#include "symcub/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "symcub/errors.hpp"

namespace symcub {

namespace {

std::vector<std::vector<double>> read_numeric_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::vector<double> row;
        double value = 0.0;
        while (ss >> value) row.push_back(value);
        if (!ss.eof()) {
            throw InvalidInput(path + ":" + std::to_string(line_no) + ": malformed number");
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InvalidInput(path + ": no data rows");
    return rows;
}

}  // namespace

std::vector<GeneratorVector> read_generator_file(const std::string& path) {
    const auto rows = read_numeric_rows(path);
    const std::size_t m = rows.front().size();
    std::vector<GeneratorVector> generators;
    generators.reserve(rows.size());
    for (const auto& row : rows) {
        if (row.size() != m) {
            throw InvalidInput(path + ": inconsistent generator dimensions (expected " +
                               std::to_string(m) + ", found " + std::to_string(row.size()) + ")");
        }
        generators.push_back(
            canonicalize(Eigen::Map<const Eigen::VectorXd>(row.data(), static_cast<long>(m))));
    }
    return generators;
}

std::vector<MultiIndex> read_multi_index_file(const std::string& path) {
    const auto rows = read_numeric_rows(path);
    const std::size_t m = rows.front().size();
    std::vector<MultiIndex> indices;
    for (const auto& row : rows) {
        if (row.size() != m) throw InvalidInput(path + ": inconsistent multi-index dimensions");
        MultiIndex alpha;
        for (double v : row) {
            const int a = static_cast<int>(v);
            if (v != a || a < 0) {
                throw InvalidInput(path + ": multi-index entries must be non-negative integers");
            }
            alpha.push_back(a);
        }
        indices.push_back(std::move(alpha));
    }
    return indices;
}

Eigen::MatrixXd read_matrix_file(const std::string& path) {
    const auto rows = read_numeric_rows(path);
    const std::size_t cols = rows.front().size();
    Eigen::MatrixXd M(static_cast<long>(rows.size()), static_cast<long>(cols));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InvalidInput(path + ": ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) M(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];
    }
    return M;
}

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream file;
    std::ostream* out = nullptr;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
    if (path == "-" || path.empty()) {
        impl_->out = &std::cout;
    } else {
        impl_->file.open(path);
        if (!impl_->file) {
            delete impl_;
            throw InvalidInput("cannot open output file: " + path);
        }
        impl_->out = &impl_->file;
    }
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::header(const std::vector<std::string>& columns) { row(columns); }

void CsvWriter::row(const std::vector<std::string>& cells) {
    std::ostream& out = *impl_->out;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) out << ',';
        out << cells[i];
    }
    out << '\n';
}

}  // namespace symcub
