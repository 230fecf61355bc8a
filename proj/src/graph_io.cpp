#include "gspc/graph_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace gspc {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' || c == '[';
  }
  return false;
}

std::vector<std::vector<double>> parse_csv_rows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[line.find_first_not_of(" \t")] == '#') continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw InputError("CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ShiftGraph graph_from_edges(int n, const std::vector<Edge>& edges,
                            std::vector<std::string> labels) {
  if (n < 2) throw InputError("graph needs at least 2 vertices");
  RMatrix a = RMatrix::Zero(n, n);
  for (const Edge& e : edges) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n) {
      std::ostringstream os;
      os << "edge " << e.from << "->" << e.to << " out of range for n=" << n;
      throw InputError(os.str());
    }
    a(e.to, e.from) += e.weight;
  }
  return ShiftGraph(std::move(a), std::move(labels));
}

ShiftGraph load_graph_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw InputError("graph JSON must be an object");
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() < 2 || e.size() > 3)
        throw InputError("each edge must be [from, to] or [from, to, weight]");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e.size() == 3 ? e[2].get<double>() : 1.0});
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return graph_from_edges(n, edges, std::move(labels));
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed graph JSON: ") + ex.what());
  }
}

ShiftGraph load_graph_csv(std::istream& in) {
  const auto rows = parse_csv_rows(in);
  const auto n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw InputError("empty graph CSV");
  RMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != n) {
      std::ostringstream os;
      os << "graph CSV is not square: row " << i << " has " << rows[i].size()
         << " columns, expected " << n;
      throw InputError(os.str());
    }
    for (Eigen::Index k = 0; k < n; ++k) a(i, k) = rows[i][k];
  }
  return ShiftGraph(std::move(a));
}

ShiftGraph load_graph(const std::string& path) {
  const std::string text = read_file(path);
  if (looks_like_json(text)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
      throw InputError("'" + path + "': " + ex.what());
    }
    return load_graph_json(j);
  }
  std::istringstream in(text);
  return load_graph_csv(in);
}

CVector load_signal_json(const nlohmann::json& j) {
  try {
    const nlohmann::json& arr = j.is_object() ? j.at("values") : j;
    if (!arr.is_array()) throw InputError("signal JSON must be an array");
    CVector v(static_cast<Eigen::Index>(arr.size()));
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& e = arr[i];
      if (e.is_number()) {
        v[i] = cplx(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2) {
        v[i] = cplx(e[0].get<double>(), e[1].get<double>());
      } else {
        throw InputError("signal entries must be numbers or [re, im] pairs");
      }
    }
    return v;
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed signal JSON: ") + ex.what());
  }
}

CVector load_signal_csv(std::istream& in) {
  const auto rows = parse_csv_rows(in);
  CVector v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 1) throw InputError("signal CSV must have a single column");
    v[i] = rows[i][0];
  }
  return v;
}

CVector load_signal(const std::string& path) {
  const std::string text = read_file(path);
  if (looks_like_json(text)) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
      throw InputError("'" + path + "': " + ex.what());
    }
    return load_signal_json(j);
  }
  std::istringstream in(text);
  return load_signal_csv(in);
}

nlohmann::json to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json to_json(const CVector& v) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v[i]));
  return out;
}

nlohmann::json to_json(const CMatrix& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

nlohmann::json to_json(const RMatrix& m) {
  auto out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    auto row = nlohmann::json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    out.push_back(std::move(row));
  }
  return out;
}

nlohmann::json graph_to_json(const ShiftGraph& g) {
  nlohmann::json j;
  j["n"] = g.size();
  auto edges = nlohmann::json::array();
  const RMatrix& a = g.matrix();
  for (Eigen::Index from = 0; from < a.cols(); ++from)
    for (Eigen::Index to = 0; to < a.rows(); ++to)
      if (a(to, from) != 0.0) {
        if (a(to, from) == 1.0)
          edges.push_back({from, to});
        else
          edges.push_back({from, to, a(to, from)});
      }
  j["edges"] = std::move(edges);
  if (!g.labels().empty()) j["labels"] = g.labels();
  return j;
}

}  // namespace gspc
