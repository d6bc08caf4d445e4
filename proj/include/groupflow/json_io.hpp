#pragma once

// JSON forms for every shipped value: graphs, rotations, group elements,
// certificates, profiles, solver reports, and separation witnesses. Objects
// serialize with sorted keys and arrays keep input order, so serialization
// is canonical byte-for-byte.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "groupflow/cycle_structure.hpp"
#include "groupflow/decide.hpp"
#include "groupflow/families.hpp"
#include "groupflow/group.hpp"
#include "groupflow/multigraph.hpp"
#include "groupflow/planar.hpp"
#include "groupflow/solve.hpp"

namespace groupflow {

using json = nlohmann::json;

inline std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Graphs and rotations.
// ---------------------------------------------------------------------------

inline json graph_to_json(const Multigraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"id", e.id}, {"tail", g.vertex_id(e.tail)}, {"head", g.vertex_id(e.head)}});
  return {{"vertices", g.vertex_ids()}, {"edges", edges}};
}

inline Multigraph graph_from_json(const json& j) {
  Multigraph g;
  if (!j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument("graph JSON needs \"vertices\" and \"edges\"");
  for (const auto& v : j.at("vertices")) g.add_vertex(v.get<std::string>());
  for (const auto& e : j.at("edges"))
    g.add_edge(e.at("id").get<std::string>(), e.at("tail").get<std::string>(),
               e.at("head").get<std::string>());
  return g;
}

inline json rotation_to_json(const Multigraph& g, const RotationSystem& rot) {
  json out = json::object();
  for (int v = 0; v < g.num_vertices(); ++v) {
    json ring = json::array();
    for (const auto& end : rot.at[v])
      ring.push_back({g.edge(end.edge).id, end.at_head ? "head" : "tail"});
    out[g.vertex_id(v)] = ring;
  }
  return out;
}

inline RotationSystem rotation_from_json(const Multigraph& g, const json& j) {
  RotationSystem rot;
  rot.at.resize(g.num_vertices());
  for (auto it = j.begin(); it != j.end(); ++it) {
    int v = g.vertex_index(it.key());
    for (const auto& entry : it.value()) {
      std::string id = entry.at(0).get<std::string>();
      std::string marker = entry.at(1).get<std::string>();
      if (marker != "tail" && marker != "head")
        throw std::invalid_argument("rotation end marker must be \"tail\" or \"head\"");
      rot.at[v].push_back(EdgeEnd{g.edge_index(id), marker == "head"});
    }
  }
  return rot;
}

// ---------------------------------------------------------------------------
// Elements and element maps.
// ---------------------------------------------------------------------------

inline json element_to_json(const GroupTable& t, int idx) {
  return json(t.element(idx));
}

inline int element_from_json(const GroupTable& t, const json& j) {
  GroupElement e;
  for (const auto& r : j) e.push_back(r.get<long long>());
  return t.index(e);
}

inline json vertex_values_to_json(const Multigraph& g, const GroupTable& t,
                                  const std::vector<int>& values) {
  json out = json::object();
  for (int v = 0; v < g.num_vertices(); ++v) out[g.vertex_id(v)] = element_to_json(t, values[v]);
  return out;
}

inline json edge_values_to_json(const Multigraph& g, const GroupTable& t,
                                const std::vector<int>& values) {
  json out = json::object();
  for (int e = 0; e < g.num_edges(); ++e) out[g.edge(e).id] = element_to_json(t, values[e]);
  return out;
}

inline std::vector<int> vertex_values_from_json(const Multigraph& g, const GroupTable& t,
                                                const json& j) {
  std::vector<int> out(g.num_vertices(), t.zero());
  std::vector<bool> seen(g.num_vertices(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    int v = g.vertex_index(it.key());
    out[v] = element_from_json(t, it.value());
    seen[v] = true;
  }
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!seen[v]) throw std::invalid_argument("missing value for vertex " + g.vertex_id(v));
  return out;
}

inline std::vector<int> edge_values_from_json(const Multigraph& g, const GroupTable& t,
                                              const json& j) {
  std::vector<int> out(g.num_edges(), t.zero());
  std::vector<bool> seen(g.num_edges(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    int e = g.edge_index(it.key());
    out[e] = element_from_json(t, it.value());
    seen[e] = true;
  }
  for (int e = 0; e < g.num_edges(); ++e)
    if (!seen[e]) throw std::invalid_argument("missing value for edge " + g.edge(e).id);
  return out;
}

inline json forbidden_to_json(const Multigraph& g, const GroupTable& t, const ForbiddenMap& fm) {
  json out = json::object();
  for (int e = 0; e < g.num_edges(); ++e) {
    json vals = json::array();
    for (int x : fm.forbidden[e]) vals.push_back(element_to_json(t, x));
    out[g.edge(e).id] = vals;
  }
  return out;
}

// Missing edges get empty sets.
inline ForbiddenMap forbidden_from_json(const Multigraph& g, const GroupTable& t, const json& j) {
  ForbiddenMap fm = ForbiddenMap::empty(g.num_edges());
  for (auto it = j.begin(); it != j.end(); ++it) {
    int e = g.edge_index(it.key());
    for (const auto& el : it.value()) fm.forbidden[e].push_back(element_from_json(t, el));
    std::sort(fm.forbidden[e].begin(), fm.forbidden[e].end());
    fm.forbidden[e].erase(std::unique(fm.forbidden[e].begin(), fm.forbidden[e].end()),
                          fm.forbidden[e].end());
  }
  return fm;
}

// ---------------------------------------------------------------------------
// Certificates. A certificate is self-describing: kind, group spec, values,
// and whatever context the checker needs.
// ---------------------------------------------------------------------------

inline json boundary_certificate(const Multigraph& g, const GroupTable& t,
                                 const BoundaryMap& beta,
                                 const std::optional<std::string>& bridge = std::nullopt) {
  json c = {{"kind", "boundary"},
            {"group", format_group_spec(t.group())},
            {"values", vertex_values_to_json(g, t, beta.beta)}};
  if (bridge) c["bridge"] = *bridge;
  return c;
}

inline json edge_map_certificate(const Multigraph& g, const GroupTable& t, const EdgeGroupMap& phi) {
  return {{"kind", "edge-map"},
          {"group", format_group_spec(t.group())},
          {"values", edge_values_to_json(g, t, phi.values)}};
}

inline json flow_certificate(const Multigraph& g, const GroupTable& t, const FlowAssignment& f,
                             const std::optional<BoundaryMap>& beta = std::nullopt,
                             const std::optional<ForbiddenMap>& fm = std::nullopt) {
  json c = {{"kind", "flow"},
            {"group", format_group_spec(t.group())},
            {"values", edge_values_to_json(g, t, f.values)}};
  if (beta) c["boundary"] = vertex_values_to_json(g, t, beta->beta);
  if (fm) c["forbidden"] = forbidden_to_json(g, t, *fm);
  return c;
}

inline json coloring_certificate(const Multigraph& g, const GroupTable& t,
                                 const ColoringAssignment& c, const EdgeGroupMap& phi) {
  return {{"kind", "coloring"},
          {"group", format_group_spec(t.group())},
          {"values", vertex_values_to_json(g, t, c.values)},
          {"edge_map", edge_values_to_json(g, t, phi.values)}};
}

// Checks a certificate against a graph. Assignments are verified directly;
// counterexample kinds (boundary, edge-map) are re-decided exhaustively.
inline VerifyResult check_certificate(const Multigraph& g, const json& cert,
                                      std::uint64_t budget = 1'000'000'000) {
  std::string kind = cert.at("kind").get<std::string>();
  GroupTable t(parse_group_spec(cert.at("group").get<std::string>()));
  if (kind == "flow") {
    FlowAssignment f{edge_values_from_json(g, t, cert.at("values"))};
    BoundaryMap beta{std::vector<int>(g.num_vertices(), t.zero())};
    if (cert.contains("boundary")) beta.beta = vertex_values_from_json(g, t, cert.at("boundary"));
    ForbiddenMap fm = ForbiddenMap::empty(g.num_edges());
    if (cert.contains("forbidden")) fm = forbidden_from_json(g, t, cert.at("forbidden"));
    return verify_flow(g, t, f, beta, fm);
  }
  if (kind == "coloring") {
    ColoringAssignment c{vertex_values_from_json(g, t, cert.at("values"))};
    EdgeGroupMap phi{edge_values_from_json(g, t, cert.at("edge_map"))};
    return verify_coloring(g, t, c, phi);
  }
  if (kind == "boundary") {
    BoundaryMap beta{vertex_values_from_json(g, t, cert.at("values"))};
    int sum = t.zero();
    for (int x : beta.beta) sum = t.add(sum, x);
    if (sum != t.zero()) return {false, "boundary does not sum to zero"};
    ForbiddenMap zero;
    zero.forbidden.assign(g.num_edges(), {t.zero()});
    auto r = find_flow(g, t, beta, zero, budget);
    if (r.budget_exceeded) return {false, "re-decision exceeded its budget"};
    if (r.found) return {false, "a nowhere-zero flow exists for this boundary"};
    return {};
  }
  if (kind == "edge-map") {
    EdgeGroupMap phi{edge_values_from_json(g, t, cert.at("values"))};
    if (find_coloring(g, t, phi)) return {false, "a proper coloring exists for this edge map"};
    return {};
  }
  return {false, "unknown certificate kind \"" + kind + "\""};
}

// ---------------------------------------------------------------------------
// Profiles, solver reports, witnesses.
// ---------------------------------------------------------------------------

inline json profile_to_json(const Multigraph& g, const Profile& p) {
  json orders = json::array();
  for (std::size_t i = 0; i < p.by_order.size(); ++i) {
    json row = json::array();
    for (const auto& gv : p.by_order[i]) {
      GroupTable t(gv.group);
      json entry = {{"group", format_group_spec(gv.group)}, {"verdict", gv.yes ? "yes" : "no"}};
      if (gv.beta) entry["certificate"] = boundary_certificate(g, t, *gv.beta, gv.bridge_id);
      if (gv.phi) entry["certificate"] = edge_map_certificate(g, t, *gv.phi);
      row.push_back(entry);
    }
    orders.push_back({{"order", static_cast<long long>(i + 1)}, {"groups", row}});
  }
  json out = {{"kind", p.kind == Profile::Kind::connectivity ? "connectivity" : "colorability"},
              {"max_order", p.max_order},
              {"orders", orders},
              {"bounded_evidence", true},
              {"budget_exceeded", p.budget_exceeded},
              {"completed_up_to", p.completed_up_to}};
  out["weak_number"] = p.weak_number ? json(*p.weak_number) : json(nullptr);
  out["strong_evidence_number"] =
      p.strong_evidence_number ? json(*p.strong_evidence_number) : json(nullptr);
  return out;
}

inline json basis_to_json(const SimpleSumBasis& b) {
  return {{"pi", b.pi},
          {"pi_prime", b.pi_prime},
          {"k", b.parameter_k},
          {"pi_prime_size", b.pi_prime_size},
          {"bound_met", b.bound_met},
          {"exhaustive", b.exhaustive}};
}

inline json solver_report_to_json(const SolverReport& rep, const GroupTable& t,
                                  const ForbiddenMap& original_fm) {
  json out;
  out["found"] = rep.found;
  out["path"] = rep.path == SolverPath::structured ? "structured" : "fallback";
  out["regime"] = rep.regime;
  out["graph"] = graph_to_json(rep.flow_graph);
  if (rep.found)
    out["certificate"] = flow_certificate(rep.flow_graph, t, rep.flow, std::nullopt, original_fm);
  json s1 = json::array();
  for (const auto& c : rep.step1_choices)
    s1.push_back({{"pair", c.pair_index}, {"cycle", c.cycle_edges}, {"gamma", c.gamma}});
  json s2 = json::array();
  for (const auto& r : rep.step2_rounds)
    s2.push_back({{"gamma", r.gamma}, {"in_pi", r.gamma_in_pi}, {"repaired", r.repaired_edges}});
  out["step1_choices"] = s1;
  out["step2_rounds"] = s2;
  out["basis"] = basis_to_json(rep.basis);
  out["lift_shortcut_used"] = rep.lift_shortcut_used;
  if (!rep.failure_note.empty()) out["failure_note"] = rep.failure_note;
  if (rep.path == SolverPath::fallback) out["fallback_space"] = rep.fallback_space;
  return out;
}

inline json witness_to_json(const SeparationWitness& w) {
  GroupTable tb(w.bad_group);
  json out = {{"kind", "separation"},
              {"family", w.colorability ? "dual" : "theta"},
              {"graph", graph_to_json(w.graph)},
              {"good", {{"group", format_group_spec(w.good_group)},
                        {"verdict", w.good_yes ? "yes" : "no"}}},
              {"bad", {{"group", format_group_spec(w.bad_group)},
                       {"verdict", w.bad_no ? "no" : "yes"}}}};
  if (w.bad_beta) out["bad"]["certificate"] = boundary_certificate(w.graph, tb, *w.bad_beta);
  if (w.bad_phi) out["bad"]["certificate"] = edge_map_certificate(w.graph, tb, *w.bad_phi);
  return out;
}

}  // namespace groupflow
