#include "mstlab/network.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mstlab/dsu.hpp"
#include "mstlab/format.hpp"
#include "json.hpp"

namespace mstlab {

void validate_network(const Network& net) {
  if (net.n_vertices <= 0) throw std::invalid_argument("empty vertex set");
  for (const Edge& e : net.edges) {
    if (e.u < 0 || e.v < 0 || e.u >= net.n_vertices || e.v >= net.n_vertices)
      throw std::invalid_argument("vertex id out of range");
    if (e.u == e.v) throw std::invalid_argument("self loop");
    if (!(e.len > 0.0)) throw std::invalid_argument("non-positive length");
  }

  std::vector<std::uint64_t> pairs;
  pairs.reserve(net.edges.size());
  for (const Edge& e : net.edges) {
    std::uint64_t a = static_cast<std::uint32_t>(std::min(e.u, e.v));
    std::uint64_t b = static_cast<std::uint32_t>(std::max(e.u, e.v));
    pairs.push_back((a << 32) | b);
  }
  std::sort(pairs.begin(), pairs.end());
  if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end())
    throw std::invalid_argument("duplicate edge");

  std::vector<double> lens;
  lens.reserve(net.edges.size());
  for (const Edge& e : net.edges) lens.push_back(e.len);
  std::sort(lens.begin(), lens.end());
  if (std::adjacent_find(lens.begin(), lens.end()) != lens.end())
    throw std::invalid_argument("tied lengths");
}

bool is_connected(const Network& net) {
  if (net.n_vertices <= 1) return true;
  DisjointSet dsu(net.n_vertices);
  for (const Edge& e : net.edges) dsu.unite(e.u, e.v);
  return dsu.component_count() == 1;
}

std::vector<std::int32_t> components_at(const Network& net, double t) {
  DisjointSet dsu(net.n_vertices);
  for (const Edge& e : net.edges)
    if (e.len < t) dsu.unite(e.u, e.v);
  std::vector<std::int32_t> label(net.n_vertices, -1);
  std::int32_t next = 0;
  for (VertexId v = 0; v < net.n_vertices; ++v) {
    std::int32_t r = dsu.find(v);
    if (label[r] < 0) label[r] = next++;
    label[v] = label[r];
  }
  return label;
}

bool is_spanning_tree(const Network& net, const std::vector<EdgeId>& edge_ids) {
  if (static_cast<VertexId>(edge_ids.size()) != net.n_vertices - 1) return false;
  DisjointSet dsu(net.n_vertices);
  for (EdgeId id : edge_ids) {
    if (id < 0 || id >= net.n_edges()) throw std::invalid_argument("bad edge id");
    const Edge& e = net.edges[id];
    if (!dsu.unite(e.u, e.v)) return false;  // cycle
  }
  return dsu.component_count() == 1;
}

void save_network(const Network& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "u,v,len\n";
  for (const Edge& e : net.edges)
    out << e.u << ',' << e.v << ',' << format_double(e.len) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);

  if (net.meta) {
    const ModelMeta& m = *net.meta;
    nlohmann::ordered_json j;
    j["model"] = m.model;
    j["d"] = m.d;
    j["m"] = m.m;
    j["n"] = m.n;
    j["seed"] = m.seed;
    if (!m.dist.empty()) j["dist"] = m.dist;
    if (m.cutoff > 0.0) {
      j["cutoff"] = m.cutoff;
      j["cutoff_validated"] = m.cutoff_validated;
    }
    if (!m.coords.empty()) j["coords"] = m.coords;
    std::ofstream meta(path + ".meta.json");
    if (!meta) throw std::runtime_error("cannot write " + path + ".meta.json");
    meta << j.dump(2) << '\n';
  }
}

Network load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  Network net;
  std::string line;
  if (!std::getline(in, line) || line.rfind("u,v,len", 0) != 0)
    throw std::runtime_error("bad header in " + path);
  VertexId max_vertex = -1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    Edge e{};
    if (!std::getline(row, field, ',')) throw std::runtime_error("bad row: " + line);
    e.u = std::stoi(field);
    if (!std::getline(row, field, ',')) throw std::runtime_error("bad row: " + line);
    e.v = std::stoi(field);
    if (!std::getline(row, field, ',')) throw std::runtime_error("bad row: " + line);
    e.len = std::stod(field);
    max_vertex = std::max({max_vertex, e.u, e.v});
    net.edges.push_back(e);
  }
  net.n_vertices = max_vertex + 1;

  std::ifstream meta(path + ".meta.json");
  if (meta) {
    nlohmann::json j = nlohmann::json::parse(meta);
    ModelMeta m;
    m.model = j.value("model", "");
    m.d = j.value("d", 0);
    m.m = j.value("m", std::int64_t{0});
    m.n = j.value("n", std::int64_t{0});
    m.seed = j.value("seed", std::uint64_t{0});
    m.dist = j.value("dist", "");
    m.cutoff = j.value("cutoff", 0.0);
    m.cutoff_validated = j.value("cutoff_validated", false);
    if (j.contains("coords")) m.coords = j["coords"].get<std::vector<double>>();
    if (m.n > net.n_vertices) net.n_vertices = static_cast<VertexId>(m.n);
    net.meta = std::move(m);
  }

  validate_network(net);
  return net;
}

}  // namespace mstlab
