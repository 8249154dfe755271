#pragma once

// JSON and CSV serialization. Exact values are written as "num/den" strings.

#include "finq/cliff.hpp"
#include "finq/liecore.hpp"
#include "finq/qset.hpp"
#include "finq/vertexnet.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace finq {

using Json = nlohmann::ordered_json;

Json to_json(const MatQ& m);
Json to_json(const Mat<double>& m);
/// List of [set-text, numerator, denominator] triples in blade order.
Json to_json(const Multivector<Rational>& w);
Json to_json(const SparseTensor& t);
Json to_json(const ParityReport& r);

/// Network description:
///   {"gamma": {"p": 1, "q": 1},
///    "vertices": [{"type": "gauge"}, {"type": "iota", "m": 2, "rank": 2}],
///    "edges": [{"from": [0, 2], "to": [1, 0]}],
///    "open": [[0, 0], [0, 1]]}
/// Vertex and leg indices are 0-based. "gamma" is needed only for gauge vertices.
VertexNetwork network_from_json(const Json& j);
VertexNetwork load_network(const std::string& path);

/// RFC 4180 quoting where needed.
std::string csv_row(const std::vector<std::string>& cells);

}  // namespace finq
