#include "hyperlap/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hyperlap/errors.hpp"

namespace hyperlap {

using nlohmann::json;

namespace {

Dyadic scalar_from_json(const json& j, const char* where) {
  if (j.is_string()) return Dyadic::parse(j.get<std::string>());
  if (j.is_number_integer()) return Dyadic(j.get<long>());
  throw Error(ErrorCode::ParseError,
              std::string(where) + " must be an exact string or integer, "
              "floating-point literals are not accepted");
}

}  // namespace

Instance parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& ex) {
    throw Error(ErrorCode::ParseError, std::string("instance JSON: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges") ||
      !j.contains("demand")) {
    throw Error(ErrorCode::ParseError,
                "instance needs fields 'n', 'edges', 'demand'");
  }
  Instance inst;
  inst.hypergraph.vertex_count = j.at("n").get<int>();
  if (inst.hypergraph.vertex_count < 0) {
    throw Error(ErrorCode::ParseError, "'n' must be nonnegative");
  }
  for (const auto& je : j.at("edges")) {
    Hyperedge e;
    if (!je.contains("verts") || !je.contains("w")) {
      throw Error(ErrorCode::ParseError, "edge needs 'verts' and 'w'");
    }
    e.verts = je.at("verts").get<std::vector<int>>();
    e.weight = scalar_from_json(je.at("w"), "edge weight");
    inst.hypergraph.edges.push_back(std::move(e));
  }
  for (const auto& js : j.at("demand")) {
    inst.demand.push_back(scalar_from_json(js, "demand entry"));
  }
  if (static_cast<int>(inst.demand.size()) != inst.hypergraph.vertex_count) {
    throw Error(ErrorCode::ParseError, "demand length does not match 'n'");
  }
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string serialize_instance(const Instance& inst) {
  json j;
  j["n"] = inst.hypergraph.vertex_count;
  j["edges"] = json::array();
  for (const auto& e : inst.hypergraph.edges) {
    j["edges"].push_back({{"verts", e.verts}, {"w", e.weight.to_string()}});
  }
  j["demand"] = json::array();
  for (const auto& s : inst.demand) j["demand"].push_back(s.to_string());
  return j.dump(2);
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << serialize_instance(inst) << "\n";
}

std::uint64_t instance_hash(const Instance& inst) {
  std::string canon = serialize_instance(inst);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace hyperlap
