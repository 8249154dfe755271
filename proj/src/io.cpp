#include "finq/io.hpp"

#include <fstream>
#include <sstream>

namespace finq {

Json to_json(const MatQ& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(format_scalar(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Mat<double>& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(format_scalar(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const Multivector<Rational>& w) {
  Json out = Json::array();
  for (const auto& [b, c] : w.terms())
    out.push_back({w.frame()->label(b).to_string(), boost::multiprecision::numerator(c).str(),
                   boost::multiprecision::denominator(c).str()});
  return out;
}

Json to_json(const SparseTensor& t) {
  Json entries = Json::array();
  for (const auto& [idx, v] : t.entries) {
    Json e = Json::array();
    for (auto i : idx) e.push_back(i);
    e.push_back(format_scalar(v));
    entries.push_back(std::move(e));
  }
  return {{"dims", t.dims}, {"nnz", t.nnz()}, {"entries", std::move(entries)}};
}

Json to_json(const ParityReport& r) {
  Json f = Json::array();
  for (const auto& x : r.findings) f.push_back({{"kind", x.kind}, {"vertex", x.vertex}, {"message", x.message}});
  return {{"ok", r.ok()}, {"findings", std::move(f)}};
}

namespace {

Slot slot_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw DomainError("a slot is a [vertex, leg] pair");
  return {j[0].get<std::size_t>(), j[1].get<std::size_t>()};
}

}  // namespace

VertexNetwork network_from_json(const Json& j) {
  try {
    VertexNetwork net;
    std::optional<GammaSet> gammas;
    for (const auto& v : j.at("vertices")) {
      const std::string type = v.at("type").get<std::string>();
      if (type == "gauge") {
        if (!gammas) {
          if (!j.contains("gamma")) throw DomainError("gauge vertices need a \"gamma\" signature");
          gammas = build_gammas(j["gamma"].at("p").get<int>(), j["gamma"].at("q").get<int>());
        }
        net.vertices.push_back(make_vertex(*gammas));
      } else if (type == "iota") {
        net.vertices.push_back(make_iota_node(v.at("m").get<std::size_t>(), v.at("rank").get<std::size_t>()));
      } else {
        throw DomainError("unknown vertex type '" + type + "'");
      }
    }
    if (j.contains("edges"))
      for (const auto& e : j["edges"]) net.edges.push_back({slot_from(e.at("from")), slot_from(e.at("to"))});
    if (j.contains("open"))
      for (const auto& s : j["open"]) net.open.push_back(slot_from(s));
    net.validate();
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed network description: ") + e.what());
  }
}

VertexNetwork load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open network file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("network file is not valid JSON: " + std::string(e.what()));
  }
  return network_from_json(j);
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") == std::string::npos) {
      out += c;
      continue;
    }
    out += '"';
    for (char ch : c) {
      if (ch == '"') out += '"';
      out += ch;
    }
    out += '"';
  }
  return out;
}

}  // namespace finq
