#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "smartroute/graph.hpp"

namespace smartroute {

namespace {

using nlohmann::json;

template <typename T>
T field(const json& record, const char* key, const std::string& where) {
  const auto it = record.find(key);
  if (it == record.end()) throw TopologyError(where + ": missing field '" + key + "'");
  try {
    if constexpr (std::is_same_v<T, std::uint32_t>) {
      if (!it->is_number_integer() || it->get<std::int64_t>() < 0 ||
          it->get<std::int64_t>() > std::numeric_limits<std::uint32_t>::max()) {
        throw TopologyError(where + ": field '" + key + "' must be a non-negative integer");
      }
      return static_cast<std::uint32_t>(it->get<std::int64_t>());
    } else if constexpr (std::is_same_v<T, double>) {
      if (!it->is_number()) throw TopologyError(where + ": field '" + key + "' must be a number");
      return it->get<double>();
    } else {
      return it->get<T>();
    }
  } catch (const json::exception& e) {
    throw TopologyError(where + ": field '" + key + "': " + e.what());
  }
}

}  // namespace

Topology parse_topology(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw TopologyError("malformed topology JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) throw TopologyError("topology file must contain a JSON object");

  std::string name = doc.contains("name") ? field<std::string>(doc, "name", "topology") : std::string{};
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw TopologyError("topology: 'nodes' must be an array");
  if (!doc.contains("links") || !doc["links"].is_array()) throw TopologyError("topology: 'links' must be an array");

  std::vector<Node> nodes;
  const auto& jn = doc["nodes"];
  nodes.reserve(jn.size());
  for (std::size_t i = 0; i < jn.size(); ++i) {
    const std::string where = "nodes[" + std::to_string(i) + "]";
    if (!jn[i].is_object()) throw TopologyError(where + ": expected an object");
    nodes.push_back(Node{NodeId{field<std::uint32_t>(jn[i], "id", where)}, field<double>(jn[i], "x", where),
                         field<double>(jn[i], "y", where)});
  }

  std::vector<Link> links;
  const auto& jl = doc["links"];
  links.reserve(jl.size());
  for (std::size_t i = 0; i < jl.size(); ++i) {
    const std::string where = "links[" + std::to_string(i) + "]";
    if (!jl[i].is_object()) throw TopologyError(where + ": expected an object");
    links.push_back(Link{LinkId{field<std::uint32_t>(jl[i], "id", where)}, NodeId{field<std::uint32_t>(jl[i], "a", where)},
                         NodeId{field<std::uint32_t>(jl[i], "b", where)}, field<double>(jl[i], "length_km", where)});
  }

  return Topology::create(std::move(name), std::move(nodes), std::move(links));
}

std::string serialize_topology(const Topology& topology) {
  nlohmann::ordered_json doc;
  doc["name"] = topology.name();
  auto nodes = nlohmann::ordered_json::array();
  for (const Node& n : topology.nodes()) {
    nodes.push_back({{"id", n.id.value}, {"x", n.x}, {"y", n.y}});
  }
  auto links = nlohmann::ordered_json::array();
  for (const Link& l : topology.links()) {
    links.push_back({{"id", l.id.value}, {"a", l.a.value}, {"b", l.b.value}, {"length_km", l.length_km}});
  }
  doc["nodes"] = std::move(nodes);
  doc["links"] = std::move(links);
  return doc.dump(1) + "\n";
}

Topology load_topology(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TopologyError("cannot open topology file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_topology(buf.str());
  } catch (const TopologyError& e) {
    throw TopologyError(path.string() + ": " + e.what());
  }
}

}  // namespace smartroute
