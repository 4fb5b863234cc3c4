// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "dualarc/linalg.hpp"

namespace dualarc::linalg {

namespace {

std::runtime_error parse_error(const std::string& what) {
  return std::runtime_error("subspace block: " + what);
}

bool next_content_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

}  // namespace

void write_subspace(std::ostream& os, const Subspace& s) {
  const gf::Field& f = *s.field();
  os << "q=" << f.p() << '^' << f.e() << " N=" << s.ambient_dim() << " r=" << s.rank() << '\n';
  for (std::size_t i = 0; i < static_cast<std::size_t>(s.rank()); ++i) {
    auto row = s.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) os << ' ';
      os << f.format(row[k]);
    }
    os << '\n';
  }
}

std::string to_text(const Subspace& s) {
  std::ostringstream os;
  write_subspace(os, s);
  return os.str();
}

Subspace read_subspace(std::istream& is, const FieldPtr& field) {
  std::string line;
  if (!next_content_line(is, line)) throw parse_error("unexpected end of input");
  unsigned p = 0, e = 0;
  int n = -1, r = -1;
  char tail = 0;
  if (std::sscanf(line.c_str(), " q=%u^%u N=%d r=%d %c", &p, &e, &n, &r, &tail) != 4) {
    throw parse_error("bad header '" + line + "'");
  }
  if (n < 0 || r < 0 || r > n + 1) throw parse_error("inconsistent dimensions in '" + line + "'");
  FieldPtr f = field;
  if (f && (f->p() != p || f->e() != e)) throw parse_error("field does not match the enclosing file");
  if (!f) f = gf::make_field(p, e);

  Matrix m(0, static_cast<std::size_t>(n) + 1);
  Vector row;
  for (int i = 0; i < r; ++i) {
    if (!next_content_line(is, line)) throw parse_error("missing basis row");
    std::istringstream ls(line);
    row.clear();
    std::string token;
    while (ls >> token) row.push_back(f->parse(token));
    if (row.size() != static_cast<std::size_t>(n) + 1) throw parse_error("row has wrong length");
    m.append_row(row);
  }
  Subspace s = Subspace::from_matrix(f, n, std::move(m));
  if (s.rank() != r) throw parse_error("basis rows are linearly dependent");
  return s;
}

}  // namespace dualarc::linalg
