#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <string>

namespace sbmr {

/// SDP solution in factorized form: one vector per vertex (row u is the
/// vector assigned to vertex u).
struct Embedding {
  Eigen::MatrixXd vectors;

  int vertex_count() const { return static_cast<int>(vectors.rows()); }
  int dimension() const { return static_cast<int>(vectors.cols()); }
};

/// Embedding file: header "N r", then one row of r decimals per vertex,
/// written in the shortest form that parses back to the same double.
void write_embedding(std::ostream& out, const Embedding& e);
Embedding read_embedding(std::istream& in);
void write_embedding_file(const std::string& path, const Embedding& e);
Embedding read_embedding_file(const std::string& path);

}  // namespace sbmr
