#include "pcost/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "pcost/errors.hpp"

namespace pcost::io {

std::vector<std::vector<double>> set1_points() {
  return {{0, 0}, {0, -1}, {1, 0}, {1, -1}, {0, 1},  {0, -2}, {1, 1},
          {1, -2}, {2, -1}, {3, 0}, {3, -1}, {4, 0}, {4, -1}};
}

std::vector<std::vector<double>> set2_points() {
  return {{0, -1}, {1, 0},  {-1, 0}, {2, 0},  {-2, 0},  {2, 1},  {-2, 1},
          {2, -1}, {-2, -1}, {1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

bool parse_row(const std::string& line, std::vector<double>& row) {
  row.clear();
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    if (b == std::string::npos) return false;
    cell = cell.substr(b, e - b + 1);
    std::size_t used = 0;
    try {
      row.push_back(std::stod(cell, &used));
    } catch (const std::exception&) {
      return false;
    }
    if (used != cell.size()) return false;
  }
  return !row.empty();
}

bool looks_like_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n || rows[i][i] != 0.0) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (rows[i][j] != rows[j][i]) return false;
  }
  return n > 1;
}

double parse_death(const json& v) {
  if (v.is_null()) return kInfinity;
  if (v.is_string()) {
    auto s = v.get<std::string>();
    if (s == "inf" || s == "Infinity" || s == "infinity") return kInfinity;
    throw Error("bad death value: " + s);
  }
  return v.get<double>();
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

}  // namespace

std::vector<std::vector<double>> read_csv(const std::string& path) {
  std::stringstream in(read_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  std::vector<double> row;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    if (parse_row(line, row)) {
      rows.push_back(row);
    } else if (!first) {
      throw Error(path + ": cannot parse line '" + line + "'");
    }
    first = false;
  }
  if (rows.empty()) throw EmptyInput(path + ": no data rows");
  return rows;
}

FiniteMetricSpace space_from_json(const json& j) {
  if (!j.contains("d")) throw InvalidMatrix("distance JSON needs a \"d\" field");
  auto d = j.at("d").get<std::vector<std::vector<double>>>();
  if (j.contains("n") && j.at("n").get<std::size_t>() != d.size())
    throw InvalidMatrix("\"n\" does not match the matrix size");
  return validate_metric(d);
}

json space_to_json(const FiniteMetricSpace& x) { return {{"n", x.size()}, {"d", x.matrix()}}; }

FiniteMetricSpace read_space(const std::string& source, Norm norm) {
  if (source == "set1") return point_cloud_space(set1_points(), norm);
  if (source == "set2") return point_cloud_space(set2_points(), norm);
  if (source.rfind("matrix:", 0) == 0) return validate_metric(read_csv(source.substr(7)));
  if (ends_with(source, ".json")) return space_from_json(read_json(source));
  auto rows = read_csv(source);
  if (looks_like_matrix(rows)) return validate_metric(rows);
  return point_cloud_space(rows, norm);
}

std::vector<std::size_t> read_map(const std::string& path) {
  auto j = read_json(path);
  if (!j.contains("map")) throw InvalidMap(path + ": expected {\"map\": [...]}");
  for (const auto& v : j.at("map"))
    if (!v.is_number_integer() || v.get<long long>() < 0) throw InvalidMap(path + ": map entries must be indices");
  return j.at("map").get<std::vector<std::size_t>>();
}

json map_to_json(const std::vector<std::size_t>& assignment) { return {{"map", assignment}}; }

json to_json(const Bar& b) {
  json j{{"birth", b.birth}, {"mult", b.mult}};
  if (b.infinite())
    j["death"] = "inf";
  else
    j["death"] = b.death;
  return j;
}

json to_json(const PersistenceDiagram& d) {
  json bars = json::array();
  for (const auto& b : d.bars()) bars.push_back(to_json(b));
  return {{"dim", d.dim()}, {"bars", bars}};
}

PersistenceDiagram diagram_from_json(const json& j) {
  PersistenceDiagram d(j.value("dim", 0));
  for (const auto& b : j.at("bars")) {
    long long mult = b.value("mult", 1LL);
    if (mult <= 0) throw Error("bar multiplicity must be positive");
    double birth = b.at("birth").get<double>();
    double death = parse_death(b.at("death"));
    if (!(birth < death)) throw Error("bar needs birth < death");
    d.add(birth, death, static_cast<std::size_t>(mult));
  }
  return d;
}

PersistenceDiagram read_diagram(const std::string& path) { return diagram_from_json(read_json(path)); }

json to_json(const Matching& m) {
  json pairs = json::array();
  for (const auto& p : m.pairs) pairs.push_back({{"source", to_json(p.source)}, {"target", to_json(p.target)}});
  return {{"pairs", pairs},
          {"unmatched_source", to_json(m.unmatched_source)["bars"]},
          {"unmatched_target", to_json(m.unmatched_target)["bars"]}};
}

json to_json(const f2::Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.get(i, j) ? 1 : 0);
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

json to_json(const GridModule& m) {
  json t = json::array();
  for (const auto& x : m.transitions) t.push_back(to_json(x));
  return {{"scales", m.scales}, {"dims", m.dims}, {"transitions", t}};
}

json to_json(const GridHom& h) {
  json maps = json::array();
  for (const auto& x : h.maps) maps.push_back(to_json(x));
  return {{"shift", h.shift}, {"source", to_json(h.source)}, {"target", to_json(h.target)}, {"maps", maps}};
}

json to_json(const Filtration& f) {
  json out = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) out.push_back({{"vertices", f.simplex(i)}, {"value", f.value(i)}});
  return out;
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string barcode_svg(const std::vector<PersistenceDiagram>& diagrams, const std::string& title) {
  const double width = 640, left = 60, right = 30, bar_h = 8, gap = 4, panel_gap = 36, top = 40;
  double hi = 0.0;
  for (const auto& d : diagrams)
    for (const auto& b : d.bars()) hi = std::max(hi, b.infinite() ? b.birth : b.death);
  if (hi <= 0.0) hi = 1.0;
  const double x_max = hi * 1.1;
  auto xpos = [&](double v) { return left + (width - left - right) * v / x_max; };

  std::ostringstream body;
  double y = top;
  for (const auto& d : diagrams) {
    body << "<text x=\"10\" y=\"" << y + 10 << "\" font-size=\"13\">H" << d.dim() << "</text>\n";
    for (const auto& b : d.expanded()) {
      double x0 = xpos(b.birth), x1 = b.infinite() ? width - right : xpos(b.death);
      body << "<rect x=\"" << x0 << "\" y=\"" << y << "\" width=\"" << std::max(1.0, x1 - x0)
           << "\" height=\"" << bar_h << "\" fill=\"#3366aa\"/>\n";
      if (b.infinite())
        body << "<polygon points=\"" << x1 << "," << y - 2 << " " << x1 + 8 << "," << y + bar_h / 2 << " " << x1
             << "," << y + bar_h + 2 << "\" fill=\"#3366aa\"/>\n";
      y += bar_h + gap;
    }
    y += panel_gap;
  }
  const double axis_y = y - panel_gap / 2;
  body << "<line x1=\"" << left << "\" y1=\"" << axis_y << "\" x2=\"" << width - right << "\" y2=\"" << axis_y
       << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    double v = x_max * k / 5.0;
    body << "<line x1=\"" << xpos(v) << "\" y1=\"" << axis_y << "\" x2=\"" << xpos(v) << "\" y2=\"" << axis_y + 5
         << "\" stroke=\"black\"/>\n<text x=\"" << xpos(v) - 8 << "\" y=\"" << axis_y + 18
         << "\" font-size=\"11\">" << fmt(v) << "</text>\n";
  }
  const double height = axis_y + 30;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) svg << "<text x=\"" << left << "\" y=\"22\" font-size=\"15\">" << title << "</text>\n";
  svg << body.str() << "</svg>\n";
  return svg.str();
}

}  // namespace pcost::io
