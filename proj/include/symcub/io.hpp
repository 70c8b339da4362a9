#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symcub/fss.hpp"

namespace symcub {

/// Generator file: one generator per line, whitespace-separated decimals,
/// '#' comments and blank lines allowed. The dimension is inferred from the
/// first data line and enforced afterwards.
std::vector<GeneratorVector> read_generator_file(const std::string& path);

/// Multi-index file: one non-negative integer multi-index per line, same
/// comment rules.
std::vector<MultiIndex> read_multi_index_file(const std::string& path);

/// Matrix file: one row per line, whitespace-separated decimals.
Eigen::MatrixXd read_matrix_file(const std::string& path);

/// Shortest round-trip decimal formatting; fixed across runs so CSV output
/// is byte-reproducible for identical inputs.
std::string format_double(double value);

/// Minimal CSV sink writing to a file or stdout ("-").
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);
    ~CsvWriter();
    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void header(const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);

private:
    struct Impl;
    Impl* impl_;
};

}  // namespace symcub
