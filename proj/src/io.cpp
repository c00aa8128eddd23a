#include "rdl/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "rdl/errors.hpp"

namespace rdl {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string matrix_to_csv(const Eigen::MatrixXd& M) {
  std::string out;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) out += ',';
      out += format_double(M(i, j));
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::vector<double>> parse_csv_rows(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        fail("BadParams", "CSV cell is not a number: '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), "BadParams", "CSV input is empty");
  for (const auto& row : rows)
    require(row.size() == rows.front().size(), "BadParams", "ragged CSV rows");
  return rows;
}

}  // namespace

Eigen::MatrixXd matrix_from_csv(const std::string& text) {
  auto rows = parse_csv_rows(text);
  Eigen::MatrixXd M(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) M(i, j) = rows[i][j];
  return M;
}

std::string cvector_to_csv(const Eigen::VectorXcd& v) {
  std::string out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out += format_double(v(i).real());
    out += ',';
    out += format_double(v(i).imag());
    out += '\n';
  }
  return out;
}

Eigen::VectorXcd cvector_from_csv(const std::string& text) {
  auto rows = parse_csv_rows(text);
  Eigen::VectorXcd v(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == 2, "BadParams", "vector CSV rows must be re,im pairs");
    v(static_cast<Eigen::Index>(i)) = {rows[i][0], rows[i][1]};
  }
  return v;
}

Json digraph_to_json(const RegularDigraph& A) {
  Json j;
  j["n"] = A.n();
  j["d"] = A.d();
  Json adj = Json::array();
  for (int i = 0; i < A.n(); ++i) {
    Json row = Json::array();
    for (int v : A.out_neighbors(i)) row.push_back(v + 1);
    adj.push_back(std::move(row));
  }
  j["out_adj"] = std::move(adj);
  return j;
}

RegularDigraph digraph_from_json(const Json& j) {
  require(j.contains("n") && j.contains("d") && j.contains("out_adj"), "BadParams",
          "digraph JSON needs n, d, out_adj");
  int n = j["n"].get<int>();
  int d = j["d"].get<int>();
  std::vector<std::vector<int>> out;
  for (const auto& row : j["out_adj"]) {
    std::vector<int> r;
    for (const auto& v : row) r.push_back(v.get<int>() - 1);
    out.push_back(std::move(r));
  }
  return RegularDigraph::from_out_lists(n, d, std::move(out));
}

Json index_set_to_json(const IndexSet& S) {
  Json j = Json::array();
  for (int v : S) j.push_back(v + 1);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), "BadParams", "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), "BadParams", "cannot write file: " + path);
  out << content;
}

}  // namespace rdl
