#pragma once

#include <Eigen/Dense>
#include <string>

#include "ssc/errors.hpp"

namespace ssc {

// Matrix file: first line `# rows=<n> cols=<N>`, then n comma-separated rows
// with 17 significant digits. Columns are data points.
void write_matrix_csv(const std::string& path,
                      const Eigen::Ref<const Eigen::MatrixXd>& m);
Eigen::MatrixXd read_matrix_csv(const std::string& path);

// Labels file: one comma-separated line of integers 1..L.
void write_labels_csv(const std::string& path,
                      const Eigen::Ref<const Eigen::VectorXi>& labels);
Eigen::VectorXi read_labels_csv(const std::string& path);

}  // namespace ssc
