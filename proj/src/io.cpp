#include "seriate/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace seriate {

namespace {

[[noreturn]] void parse_fail(const std::string& name, int line, const std::string& why) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + why);
}

std::ifstream open_for_read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return in;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  return out;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

}  // namespace

Matrix read_csv_matrix(std::istream& in, const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        parse_fail(name, lineno, "bad numeric cell `" + cell + "`");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      parse_fail(name, lineno, "ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(name + ": empty matrix file");
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix read_csv_matrix(const std::string& path) {
  std::ifstream in = open_for_read(path);
  return read_csv_matrix(in, path);
}

void write_csv_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out = open_for_write(path);
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

Matrix read_matrix_market(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw std::runtime_error(name + ": empty file");
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate") {
    parse_fail(name, lineno, "expected a MatrixMarket coordinate header");
  }
  if (field != "real" && field != "integer" && field != "pattern") {
    parse_fail(name, lineno, "unsupported field `" + field + "`");
  }
  const bool symmetric = (symmetry == "symmetric");
  if (!symmetric && symmetry != "general") {
    parse_fail(name, lineno, "unsupported symmetry `" + symmetry + "`");
  }
  const bool pattern = (field == "pattern");

  long nrows = -1, ncols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[0] == '%') continue;
    std::istringstream ls(line);
    if (!(ls >> nrows >> ncols >> nnz)) parse_fail(name, lineno, "bad size line");
    break;
  }
  if (nrows < 0) throw std::runtime_error(name + ": missing size line");

  Matrix m = Matrix::Zero(nrows, ncols);
  long seen = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line) || line[0] == '%') continue;
    std::istringstream ls(line);
    long i, j;
    double v = 1.0;
    if (!(ls >> i >> j) || (!pattern && !(ls >> v))) parse_fail(name, lineno, "bad entry line");
    if (i < 1 || i > nrows || j < 1 || j > ncols) parse_fail(name, lineno, "index out of range");
    m(i - 1, j - 1) = v;
    if (symmetric) m(j - 1, i - 1) = v;
    ++seen;
  }
  if (seen != nnz) {
    throw std::runtime_error(name + ": entry count " + std::to_string(seen) +
                             " disagrees with header " + std::to_string(nnz));
  }
  return m;
}

Matrix read_matrix_market(const std::string& path) {
  std::ifstream in = open_for_read(path);
  return read_matrix_market(in, path);
}

void write_matrix_market_symmetric(const std::string& path, const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("write_matrix_market_symmetric: matrix must be square");
  }
  long nnz = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      if (m(i, j) != 0.0) ++nnz;
    }
  }
  std::ofstream out = open_for_write(path);
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << m.rows() << ' ' << m.cols() << ' ' << nnz << '\n';
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      if (m(i, j) != 0.0) out << i + 1 << ' ' << j + 1 << ' ' << m(i, j) << '\n';
    }
  }
}

Matrix read_matrix(const std::string& path) {
  const auto dot = path.rfind('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  if (ext == ".mtx") return read_matrix_market(path);
  return read_csv_matrix(path);
}

Permutation read_permutation(const std::string& path) {
  std::ifstream in = open_for_read(path);
  std::vector<int> order;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    try {
      order.push_back(std::stoi(line));
    } catch (const std::exception&) {
      parse_fail(path, lineno, "bad index `" + line + "`");
    }
  }
  return Permutation::from_one_based(order);
}

void write_permutation(const std::string& path, const Permutation& p) {
  std::ofstream out = open_for_write(path);
  for (int v : p.one_based()) out << v << '\n';
}

}  // namespace seriate
