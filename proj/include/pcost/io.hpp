#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pcost/homology.hpp"
#include "pcost/metric.hpp"
#include "pcost/module.hpp"
#include "pcost/vr.hpp"

namespace pcost::io {

using nlohmann::json;

/// Coordinates of the two 13-point example sets with equal barcodes.
std::vector<std::vector<double>> set1_points();
std::vector<std::vector<double>> set2_points();

/// CSV rows of decimals. Blank lines and lines starting with '#' are
/// skipped; a first line that does not parse as numbers is a header.
std::vector<std::vector<double>> read_csv(const std::string& path);

/// Loads a space from:
///   "set1" / "set2"          built-in example sets,
///   *.json                   {"n": int, "d": [[...]]} distance matrix,
///   *.csv with the prefix "matrix:" or a square, zero-diagonal, symmetric
///   table                    distance matrix,
///   any other CSV            point cloud under the given norm.
FiniteMetricSpace read_space(const std::string& source, Norm norm = Norm::L2);
FiniteMetricSpace space_from_json(const json& j);
json space_to_json(const FiniteMetricSpace& x);

/// {"map": [t_0, ..., t_{n-1}]}.
std::vector<std::size_t> read_map(const std::string& path);
json map_to_json(const std::vector<std::size_t>& assignment);

json to_json(const Bar& b);
json to_json(const PersistenceDiagram& d);
PersistenceDiagram diagram_from_json(const json& j);
PersistenceDiagram read_diagram(const std::string& path);

json to_json(const Matching& m);
json to_json(const f2::Matrix& m);  // rows of 0/1
json to_json(const GridModule& m);
json to_json(const GridHom& h);
json to_json(const Filtration& f);

json read_json(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Renders one or more diagrams as stacked barcodes.
std::string barcode_svg(const std::vector<PersistenceDiagram>& diagrams, const std::string& title = "");

}  // namespace pcost::io
