#include "ssc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace ssc {

namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_matrix_csv(const std::string& path,
                      const Eigen::Ref<const Eigen::MatrixXd>& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << "# rows=" << m.rows() << " cols=" << m.cols() << "\n";
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ",";
      out << format_double(m(i, j));
    }
    out << "\n";
  }
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string header;
  std::getline(in, header);
  int rows = 0, cols = 0;
  if (std::sscanf(header.c_str(), "# rows=%d cols=%d", &rows, &cols) != 2 ||
      rows < 1 || cols < 1) {
    throw Error(path + ": malformed matrix header '" + header + "'");
  }
  Eigen::MatrixXd m(rows, cols);
  std::string line;
  for (int i = 0; i < rows; ++i) {
    if (!std::getline(in, line)) {
      throw Error(path + ": expected " + std::to_string(rows) + " rows");
    }
    std::stringstream ss(line);
    std::string cell;
    for (int j = 0; j < cols; ++j) {
      if (!std::getline(ss, cell, ',')) {
        throw Error(path + ": row " + std::to_string(i) + " has fewer than " +
                    std::to_string(cols) + " values");
      }
      m(i, j) = std::stod(cell);
    }
  }
  return m;
}

void write_labels_csv(const std::string& path,
                      const Eigen::Ref<const Eigen::VectorXi>& labels) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  for (int i = 0; i < labels.size(); ++i) {
    if (i) out << ",";
    out << labels(i);
  }
  out << "\n";
}

Eigen::VectorXi read_labels_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw Error(path + ": empty labels file");
  std::vector<int> values;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) values.push_back(std::stoi(cell));
  if (values.empty()) throw Error(path + ": no labels found");
  Eigen::VectorXi labels(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    labels(static_cast<int>(i)) = values[i];
  }
  return labels;
}

}  // namespace ssc
