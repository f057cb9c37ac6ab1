#pragma once

#include <iosfwd>
#include <string>

#include "seriate/core.hpp"
#include "seriate/permutation.hpp"

namespace seriate {

// Dense matrices travel as CSV (one row per line, comma-separated); sparse
// symmetric matrices as MatrixMarket coordinate files. read_matrix dispatches
// on the .mtx extension. Permutation files hold one 1-based index per line.

Matrix read_csv_matrix(const std::string& path);
Matrix read_csv_matrix(std::istream& in, const std::string& name);
void write_csv_matrix(const std::string& path, const Matrix& m);

Matrix read_matrix_market(const std::string& path);
Matrix read_matrix_market(std::istream& in, const std::string& name);
// Writes the lower triangle in coordinate real symmetric format, skipping
// zero entries.
void write_matrix_market_symmetric(const std::string& path, const Matrix& m);

Matrix read_matrix(const std::string& path);

Permutation read_permutation(const std::string& path);
void write_permutation(const std::string& path, const Permutation& p);

}  // namespace seriate
