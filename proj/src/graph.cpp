#include "rzlab/graph.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

namespace rzlab {

namespace {

using json = nlohmann::json;
using Adjacency = std::map<LatticeKey, std::vector<LatticeKey>>;

// Applies fn to every element on up to `jobs` threads; results keep the
// input order. The first exception thrown by a worker is rethrown.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& in, int jobs, Fn fn) {
  using R = decltype(fn(in.front()));
  std::vector<R> out(in.size());
  const std::size_t workers = std::min<std::size_t>(std::max(jobs, 1), in.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = fn(in[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next++) < in.size();) {
      try {
        out[i] = fn(in[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = in.size();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

Adjacency adjacency(const FiberGraph& g) {
  Adjacency adj;
  for (const auto& [k, v] : g.vertices) adj[k];
  for (const auto& [l, p] : g.edges) {
    adj[l].push_back(p);
    adj[p].push_back(l);
  }
  for (auto& [k, ns] : adj) std::sort(ns.begin(), ns.end());
  return adj;
}

struct Found {
  Lattice lat;
  NormClass cls;
};

std::string quoted(const LatticeKey& k) { return "\"" + k.to_string() + "\""; }

}  // namespace

std::string to_string(VertexKind kind) { return kind == VertexKind::Line ? "line" : "point"; }

std::size_t FiberGraph::count(VertexKind kind) const {
  return std::count_if(vertices.begin(), vertices.end(), [&](const auto& kv) { return kv.second.kind == kind; });
}

std::vector<LatticeKey> FiberGraph::adjacent(const LatticeKey& key) const {
  std::vector<LatticeKey> out;
  for (const auto& [l, p] : edges) {
    if (l == key) out.push_back(p);
    if (p == key) out.push_back(l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

int line_modularity(const Extension& ext) {
  switch (ext.kind()) {
    case ExtKind::RP: return -1;
    case ExtKind::RU: return 0;
    case ExtKind::UNRAM: break;
  }
  throw InvalidExtension("fiber graphs are defined for ramified extensions");
}

int point_modularity(const Extension& ext) { return line_modularity(ext) + 1; }

bool is_line_vertex(const Lattice& lat) {
  const Extension& ext = lat.ext();
  if (!is_pi_modular(lat, line_modularity(ext))) return false;
  return ext.kind() == ExtKind::RP || norm_exponent(lat) >= 1;
}

Lattice default_base_line(const Extension& ext) {
  const int i = line_modularity(ext);
  const EElem one(ext.one()), zero(ext.zero());
  return Lattice::from_basis(ext, {Vec2{one, zero}, Vec2{zero, EElem::pi_pow(ext, i)}});
}

int required_precision(const Extension& ext, int radius) { return ext.e() * (radius + 6); }

FiberGraph build_ball(const Lattice& base, int radius, int jobs) {
  const Extension& ext = base.ext();
  const int li = line_modularity(ext);
  const int pi = point_modularity(ext);
  if (radius < 0) throw FormatError("radius must be non-negative");
  if (ext.field().precision() < required_precision(ext, radius))
    throw PrecisionExhausted("radius " + std::to_string(radius) + " needs precision " +
                             std::to_string(required_precision(ext, radius)) + ", field has " +
                             std::to_string(ext.field().precision()));
  if (!is_line_vertex(base)) throw UnsupportedModularity("base lattice is not a line vertex");

  FiberGraph g;
  g.kind = ext.kind();
  g.q = ext.q();
  g.hyperbolic_ell = hyperbolic_norm_exponent(ext);
  g.radius = radius;
  const NormClass bc = norm_class(base, li);
  g.vertices[base.key()] = {VertexKind::Line, bc.ell, bc.hyperbolic, 0, false};

  auto expand = [&](int from, int to, bool lines_only) {
    return [&ext, from, to, lines_only](const Lattice& lat) {
      std::vector<Found> out;
      for (const auto& m : modular_neighbors(lat, from, to).neighbors) {
        const NormClass c = norm_class(m, to);
        if (lines_only && ext.kind() == ExtKind::RU && c.ell < 1) continue;
        out.push_back({m, c});
      }
      return out;
    };
  };

  std::vector<Lattice> lines{base};
  for (int layer = 0;; ++layer) {
    const auto pts = parallel_map(lines, jobs, expand(li, pi, false));
    std::vector<Lattice> new_points;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (const auto& f : pts[i]) {
        g.edges.emplace(lines[i].key(), f.lat.key());
        const bool fresh =
            g.vertices.try_emplace(f.lat.key(), VertexInfo{VertexKind::Point, f.cls.ell, f.cls.hyperbolic, layer, true})
                .second;
        if (fresh) new_points.push_back(f.lat);
      }
    }
    if (layer == radius) break;

    std::sort(new_points.begin(), new_points.end());
    const auto lns = parallel_map(new_points, jobs, expand(pi, li, true));
    lines.clear();
    for (std::size_t i = 0; i < new_points.size(); ++i) {
      g.vertices.at(new_points[i].key()).frontier = false;
      for (const auto& f : lns[i]) {
        g.edges.emplace(f.lat.key(), new_points[i].key());
        const bool fresh =
            g.vertices
                .try_emplace(f.lat.key(), VertexInfo{VertexKind::Line, f.cls.ell, f.cls.hyperbolic, layer + 1, false})
                .second;
        if (fresh) lines.push_back(f.lat);
      }
    }
    std::sort(lines.begin(), lines.end());
  }
  return g;
}

FiberGraph hyperbolic_core(const FiberGraph& g) {
  FiberGraph c = g;
  c.vertices.clear();
  c.edges.clear();
  for (const auto& [k, v] : g.vertices)
    if (v.hyperbolic) c.vertices.emplace(k, v);
  for (const auto& e : g.edges)
    if (c.vertices.count(e.first) && c.vertices.count(e.second)) c.edges.insert(e);
  return c;
}

std::vector<TailInfo> tails_report(const FiberGraph& g, bool require_closed) {
  const Adjacency adj = adjacency(g);
  std::set<LatticeKey> done;
  std::vector<std::pair<LatticeKey, TailInfo>> found;  // (smallest member, info)
  for (const auto& [start, sv] : g.vertices) {
    if (sv.hyperbolic || done.count(start)) continue;
    TailInfo t;
    std::set<LatticeKey> attach;
    int min_ell = INT_MAX;
    std::vector<LatticeKey> stack{start};
    done.insert(start);
    while (!stack.empty()) {
      const LatticeKey k = stack.back();
      stack.pop_back();
      const VertexInfo& v = g.vertices.at(k);
      (v.kind == VertexKind::Line ? t.lines : t.points) += 1;
      min_ell = std::min(min_ell, v.ell);
      if (v.frontier) t.closed = false;
      for (const auto& n : adj.at(k)) {
        if (g.vertices.at(n).hyperbolic) {
          attach.insert(n);
        } else if (done.insert(n).second) {
          stack.push_back(n);
        }
      }
    }
    t.attachments = static_cast<int>(attach.size());
    if (!attach.empty()) t.attachment = *attach.begin();
    t.max_drop = g.hyperbolic_ell - min_ell;
    if (require_closed && !t.closed)
      throw TruncatedTail("tail at " + t.attachment.to_string() + " reaches the frontier; increase the radius");
    found.emplace_back(start, t);
  }
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
    return std::tie(x.second.attachment, x.first) < std::tie(y.second.attachment, y.first);
  });
  std::vector<TailInfo> out;
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

GraphStats graph_stats(const FiberGraph& g) {
  const Adjacency adj = adjacency(g);
  GraphStats s;
  s.edges = g.edges.size();
  for (const auto& [k, v] : g.vertices) {
    const ClassKey c{v.kind, v.ell, v.hyperbolic};
    ++s.vertices[c];
    if (v.frontier) {
      ++s.frontier;
      continue;
    }
    ++s.degrees[c][static_cast<int>(adj.at(k).size())];
  }
  return s;
}

void write_dot(std::ostream& os, const FiberGraph& g) {
  os << "graph fiber {\n";
  os << "  // " << to_string(g.kind) << " q=" << g.q << " radius=" << g.radius << "\n";
  for (const auto& [k, v] : g.vertices) {
    os << "  " << quoted(k) << " [shape=" << (v.kind == VertexKind::Line ? "box" : "circle")
       << ", style=" << (v.hyperbolic ? "solid" : "dashed") << ", label=\"" << k.to_string() << "\\nl=" << v.ell
       << "\"];\n";
  }
  for (const auto& [l, p] : g.edges) {
    const bool solid = g.vertices.at(l).hyperbolic && g.vertices.at(p).hyperbolic;
    os << "  " << quoted(l) << " -- " << quoted(p) << " [style=" << (solid ? "solid" : "dashed") << "];\n";
  }
  os << "}\n";
}

void write_json(std::ostream& os, const FiberGraph& g) {
  json doc;
  doc["case"] = to_string(g.kind);
  doc["q"] = g.q;
  doc["hyperbolic_ell"] = g.hyperbolic_ell;
  doc["radius"] = g.radius;
  json vs = json::array();
  for (const auto& [k, v] : g.vertices) {
    vs.push_back({{"key", k.to_string()},
                  {"kind", to_string(v.kind)},
                  {"ell", v.ell},
                  {"hyperbolic", v.hyperbolic},
                  {"layer", v.layer},
                  {"frontier", v.frontier}});
  }
  json es = json::array();
  for (const auto& [l, p] : g.edges) es.push_back({l.to_string(), p.to_string()});
  doc["vertices"] = std::move(vs);
  doc["edges"] = std::move(es);
  os << doc.dump(2) << "\n";
}

FiberGraph read_json(std::istream& is) {
  try {
    const json doc = json::parse(is);
    FiberGraph g;
    g.kind = ext_kind_from_string(doc.at("case").get<std::string>());
    g.q = doc.at("q").get<int>();
    g.hyperbolic_ell = doc.at("hyperbolic_ell").get<int>();
    g.radius = doc.at("radius").get<int>();
    for (const auto& v : doc.at("vertices")) {
      const std::string kind = v.at("kind").get<std::string>();
      if (kind != "line" && kind != "point") throw FormatError("unknown vertex kind '" + kind + "'");
      VertexInfo info{kind == "line" ? VertexKind::Line : VertexKind::Point, v.at("ell").get<int>(),
                      v.at("hyperbolic").get<bool>(), v.value("layer", 0), v.value("frontier", false)};
      if (!g.vertices.emplace(LatticeKey::parse(v.at("key").get<std::string>()), info).second)
        throw FormatError("duplicate vertex " + v.at("key").get<std::string>());
    }
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("an edge is a [line, point] pair");
      const LatticeKey l = LatticeKey::parse(e[0].get<std::string>());
      const LatticeKey p = LatticeKey::parse(e[1].get<std::string>());
      const auto li = g.vertices.find(l), pi = g.vertices.find(p);
      if (li == g.vertices.end() || pi == g.vertices.end()) throw FormatError("edge references an unknown vertex");
      if (li->second.kind != VertexKind::Line || pi->second.kind != VertexKind::Point)
        throw FormatError("edges run from a line to a point");
      g.edges.emplace(l, p);
    }
    return g;
  } catch (const json::exception& err) {
    throw FormatError(std::string("graph JSON: ") + err.what());
  }
}

}  // namespace rzlab
