#pragma once

/// \file
/// Graph and signal file formats.
///
/// Graphs: JSON `{"n": N, "edges": [[from, to, weight?], ...]}` (weight
/// defaults to 1; `"labels"` optional) or a dense CSV of N rows by N
/// columns holding A directly. Signals: JSON array of reals or of
/// `[re, im]` pairs, or a single-column CSV of reals.

#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gspc/graph_model.hpp"

namespace gspc {

struct Edge {
  int from = 0;
  int to = 0;
  double weight = 1.0;
};

/// A(to, from) += weight for every edge.
ShiftGraph graph_from_edges(int n, const std::vector<Edge>& edges,
                            std::vector<std::string> labels = {});

ShiftGraph load_graph_json(const nlohmann::json& j);
ShiftGraph load_graph_csv(std::istream& in);
/// Dispatches on content: a leading '{' means JSON, anything else CSV.
ShiftGraph load_graph(const std::string& path);

CVector load_signal_json(const nlohmann::json& j);
CVector load_signal_csv(std::istream& in);
CVector load_signal(const std::string& path);

nlohmann::json to_json(cplx z);
nlohmann::json to_json(const CVector& v);
nlohmann::json to_json(const CMatrix& m);
nlohmann::json to_json(const RMatrix& m);
nlohmann::json graph_to_json(const ShiftGraph& g);

}  // namespace gspc
