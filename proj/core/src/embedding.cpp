#include "sbmr/embedding.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sbmr/errors.hpp"

namespace sbmr {

void write_embedding(std::ostream& out, const Embedding& e) {
  out << e.vertex_count() << ' ' << e.dimension() << '\n';
  char buf[64];
  for (int u = 0; u < e.vertex_count(); ++u) {
    for (int j = 0; j < e.dimension(); ++j) {
      auto res = std::to_chars(buf, buf + sizeof(buf), e.vectors(u, j));
      if (j) out << ' ';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

Embedding read_embedding(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty embedding file", 1);
  std::istringstream header(line);
  int n = 0, r = 0;
  if (!(header >> n >> r) || n < 1 || r < 1)
    throw ParseError("bad embedding header, expected 'N r'", 1);
  Embedding e{Eigen::MatrixXd(n, r)};
  for (int u = 0; u < n; ++u) {
    if (!std::getline(in, line)) throw ParseError("unexpected end of embedding", u + 2);
    std::istringstream row(line);
    for (int j = 0; j < r; ++j) {
      double x = 0.0;
      if (!(row >> x)) throw ParseError("bad embedding row", u + 2);
      e.vectors(u, j) = x;
    }
  }
  return e;
}

void write_embedding_file(const std::string& path, const Embedding& e) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_embedding(out, e);
}

Embedding read_embedding_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return read_embedding(in);
}

}  // namespace sbmr
