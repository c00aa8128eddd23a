#pragma once

#include <Eigen/Dense>
#include <string>

#include "json.hpp"

#include "rdl/digraph.hpp"

namespace rdl {

// Stable key order so identical configs serialize byte-identically.
using Json = nlohmann::ordered_json;

// Formats with 17 significant digits (round-trip exact for doubles).
std::string format_double(double x);

// Matrices as CSV, one row per line, comma separated. Real matrices only;
// complex-valued data is written as (re, im) column pairs by the vector calls.
std::string matrix_to_csv(const Eigen::MatrixXd& M);
Eigen::MatrixXd matrix_from_csv(const std::string& text);

// Complex vectors as CSV rows "re,im".
std::string cvector_to_csv(const Eigen::VectorXcd& v);
Eigen::VectorXcd cvector_from_csv(const std::string& text);

// Digraph JSON: {n, d, out_adj} with 1-based vertex labels.
Json digraph_to_json(const RegularDigraph& A);
RegularDigraph digraph_from_json(const Json& j);

// 1-based copies of index sets for reports.
Json index_set_to_json(const IndexSet& S);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace rdl
