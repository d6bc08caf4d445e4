// Command-line front end over JSON files: deciders, profiles, solvers,
// family generators, planar duals, the coloring lift, and the certificate
// checker. Verdict outputs go to stdout as canonical JSON; diagnostics go to
// stderr. Exit codes: 0 = yes/success, 1 = no (certificate emitted),
// 2 = error or budget exceeded.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "groupflow/json_io.hpp"

namespace gf = groupflow;
using gf::json;

namespace {

json read_json_input(const std::string& path) {
  if (path == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return json::parse(buf.str());
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

// Accepts either a bare graph object or a bundle carrying a "graph" field.
gf::Multigraph load_graph(const json& j) {
  if (j.contains("graph")) return gf::graph_from_json(j.at("graph"));
  return gf::graph_from_json(j);
}

void emit(const json& j) { std::cout << gf::canonical_dump(j); }

int run(int argc, char** argv) {
  CLI::App app{"exact group-valued flows and colorings on multigraphs"};
  app.require_subcommand(1);
  unsigned long long seed = 0;  // reserved for seeded corpus generation
  app.add_option("--seed", seed, "seed for randomized tie-breaking (reserved)");

  // --- gen ---
  auto* gen = app.add_subcommand("gen", "generate a graph from a family");
  std::string gen_kind;
  int gen_q = 3, gen_len = 1, gen_n = 3;
  bool gen_rotation = false;
  gen->add_option("kind", gen_kind, "family: theta | cycle | complete")->required();
  gen->add_option("--q", gen_q, "number of parallel paths (theta)");
  gen->add_option("--len", gen_len, "path length (theta)");
  gen->add_option("--n", gen_n, "vertex count (cycle, complete)");
  gen->add_flag("--rotation", gen_rotation, "emit a bundle with the planar rotation");

  // --- cyclicity ---
  auto* cyc = app.add_subcommand("cyclicity", "cycle-equivalence classes and cyclicity");
  std::string cyc_path;
  cyc->add_option("graph", cyc_path, "graph JSON (or - for stdin)")->required();

  // --- decide-connected / decide-colorable ---
  auto* dc = app.add_subcommand("decide-connected", "decide group connectivity");
  auto* dcol = app.add_subcommand("decide-colorable", "decide group colorability");
  std::string dc_group, dc_path, dcol_group, dcol_path;
  std::uint64_t dc_budget = 1'000'000'000, dcol_budget = 1'000'000'000;
  dc->add_option("--group", dc_group, "group spec, e.g. Z5 or Z2^2")->required();
  dc->add_option("--budget", dc_budget, "elementary check budget");
  dc->add_option("graph", dc_path)->required();
  dcol->add_option("--group", dcol_group)->required();
  dcol->add_option("--budget", dcol_budget);
  dcol->add_option("graph", dcol_path)->required();

  // --- profile ---
  auto* prof = app.add_subcommand("profile", "verdicts per group order");
  std::string prof_kind = "connected", prof_path;
  long long prof_max = 4;
  std::uint64_t prof_budget = 1'000'000'000;
  prof->add_option("--kind", prof_kind, "connected | colorable");
  prof->add_option("--max-order", prof_max)->required();
  prof->add_option("--budget", prof_budget);
  prof->add_option("graph", prof_path)->required();

  // --- solve-flow ---
  auto* solve = app.add_subcommand("solve-flow", "constructive forbidden-value flow");
  std::string solve_group, solve_path, solve_fm_path, solve_apex, solve_mode = "auto";
  bool require_structured = false;
  solve->add_option("--group", solve_group)->required();
  solve->add_option("--forbidden", solve_fm_path, "forbidden map JSON")->required();
  solve->add_option("--apex", solve_apex, "degree-3 vertex for the apex form");
  solve->add_option("--mode", solve_mode, "auto | apex | 3ec | 2ec");
  solve->add_flag("--require-structured", require_structured,
                  "fail instead of falling back to exhaustive search");
  solve->add_option("graph", solve_path)->required();

  // --- dual ---
  auto* dual = app.add_subcommand("dual", "planar dual from a rotation bundle");
  std::string dual_path, dual_rot_path;
  dual->add_option("--rotation", dual_rot_path, "rotation JSON (when not bundled)");
  dual->add_option("graph", dual_path)->required();

  // --- lift ---
  auto* lift = app.add_subcommand("lift", "lift a Z3-coloring to Z5 for a given edge map");
  std::string lift_path, lift_phi_path;
  lift->add_option("--phi", lift_phi_path, "edge map over Z5")->required();
  lift->add_option("graph", lift_path)->required();

  // --- verify ---
  auto* ver = app.add_subcommand("verify", "check a certificate against a graph");
  std::string ver_graph_path, ver_cert_path;
  std::uint64_t ver_budget = 1'000'000'000;
  ver->add_option("--graph", ver_graph_path, "graph JSON")->required();
  ver->add_option("--budget", ver_budget);
  ver->add_option("certificate", ver_cert_path)->required();

  // --- families ---
  auto* fam = app.add_subcommand("families", "separation witness bundles");
  std::string fam_kind;
  int fam_k = 1, fam_q = 3;
  fam->add_option("kind", fam_kind, "theta | dual")->required();
  fam->add_option("--k", fam_k)->required();
  fam->add_option("--q", fam_q)->required();

  CLI11_PARSE(app, argc, argv);

  if (*gen) {
    gf::Multigraph g;
    json bundle;
    if (gen_kind == "theta") {
      g = gf::gen_theta(gen_q, gen_len);
      if (gen_rotation)
        bundle["rotation"] = gf::rotation_to_json(g, gf::rotation_for_theta(g, gen_q, gen_len));
    } else if (gen_kind == "cycle") {
      g = gf::gen_cycle(gen_n);
      if (gen_rotation) bundle["rotation"] = gf::rotation_to_json(g, gf::rotation_for_cycle(g));
    } else if (gen_kind == "complete") {
      g = gf::gen_complete(gen_n);
      if (gen_rotation) {
        if (gen_n != 4) throw std::runtime_error("a shipped rotation exists only for n = 4");
        bundle["rotation"] = gf::rotation_to_json(g, gf::rotation_for_k4(g));
      }
    } else {
      throw std::runtime_error("unknown family: " + gen_kind);
    }
    if (gen_rotation) {
      bundle["graph"] = gf::graph_to_json(g);
      emit(bundle);
    } else {
      emit(gf::graph_to_json(g));
    }
    return 0;
  }

  if (*cyc) {
    auto g = load_graph(read_json_input(cyc_path));
    auto part = gf::cycle_equivalence(g);
    json classes = json::array();
    for (const auto& cls : part.classes) {
      json ids = json::array();
      for (int e : cls) ids.push_back(g.edge(e).id);
      classes.push_back(ids);
    }
    emit({{"cyclicity", part.cyclicity}, {"classes", classes}});
    return 0;
  }

  if (*dc) {
    auto g = load_graph(read_json_input(dc_path));
    gf::GroupTable t(gf::parse_group_spec(dc_group));
    auto v = gf::is_group_connected(g, t, dc_budget);
    if (v.budget_exceeded) {
      std::cerr << "budget exceeded after " << v.checked << " checks\n";
      return 2;
    }
    json out = {{"graph", gf::graph_to_json(g)},
                {"group", gf::format_group_spec(t.group())},
                {"verdict", v.connected ? "yes" : "no"}};
    if (!v.connected)
      out["certificate"] = gf::boundary_certificate(g, t, *v.failing_beta, v.bridge_id);
    emit(out);
    return v.connected ? 0 : 1;
  }

  if (*dcol) {
    auto g = load_graph(read_json_input(dcol_path));
    gf::GroupTable t(gf::parse_group_spec(dcol_group));
    auto v = gf::is_group_colorable(g, t, dcol_budget);
    if (v.budget_exceeded) {
      std::cerr << "budget exceeded after " << v.checked << " checks\n";
      return 2;
    }
    json out = {{"graph", gf::graph_to_json(g)},
                {"group", gf::format_group_spec(t.group())},
                {"verdict", v.colorable ? "yes" : "no"}};
    if (!v.colorable) out["certificate"] = gf::edge_map_certificate(g, t, *v.failing_phi);
    emit(out);
    return v.colorable ? 0 : 1;
  }

  if (*prof) {
    auto g = load_graph(read_json_input(prof_path));
    gf::Profile p;
    if (prof_kind == "connected") p = gf::connectivity_profile(g, prof_max, prof_budget);
    else if (prof_kind == "colorable") p = gf::colorability_profile(g, prof_max, prof_budget);
    else throw std::runtime_error("profile kind must be connected or colorable");
    emit(gf::profile_to_json(g, p));
    if (p.budget_exceeded) {
      std::cerr << "budget exceeded; profile complete up to order " << p.completed_up_to << "\n";
      return 2;
    }
    return 0;
  }

  if (*solve) {
    auto g = load_graph(read_json_input(solve_path));
    gf::GroupTable t(gf::parse_group_spec(solve_group));
    auto fm = gf::forbidden_from_json(g, t, read_json_input(solve_fm_path));
    gf::SolverOptions opts;
    opts.require_structured = require_structured;
    std::string mode = solve_mode;
    if (!solve_apex.empty() && mode == "auto") mode = "apex";
    if (mode == "auto") {
      int cls = gf::edge_connectivity_class(g);
      if (cls >= 3) mode = "3ec";
      else if (cls == 2) mode = "2ec";
      else throw std::runtime_error("graph is not 2-edge-connected");
    }
    gf::SolverReport rep;
    try {
      if (mode == "apex") {
        if (solve_apex.empty()) throw std::runtime_error("--apex is required in apex mode");
        rep = gf::solve_forbidden_flow_apex(g, solve_apex, fm, t, opts);
      } else if (mode == "3ec") {
        rep = gf::solve_forbidden_flow_3ec(g, fm, t, opts);
      } else if (mode == "2ec") {
        rep = gf::solve_forbidden_flow_2ec(g, fm, t, opts);
      } else {
        throw std::runtime_error("unknown mode: " + mode);
      }
    } catch (const gf::BudgetExceededError& ex) {
      std::cerr << ex.what() << "\n";
      return 2;
    } catch (const gf::StructuredPathError& ex) {
      std::cerr << ex.what() << "\n";
      return 2;
    }
    // Restrict the forbidden map to the flow graph for the emitted report.
    gf::ForbiddenMap fm_flow = gf::ForbiddenMap::empty(rep.flow_graph.num_edges());
    for (int e = 0; e < rep.flow_graph.num_edges(); ++e) {
      const std::string& id = rep.flow_graph.edge(e).id;
      if (g.has_edge(id)) fm_flow.forbidden[e] = fm.forbidden[g.edge_index(id)];
    }
    emit(gf::solver_report_to_json(rep, t, fm_flow));
    return rep.found ? 0 : 1;
  }

  if (*dual) {
    auto input = read_json_input(dual_path);
    auto g = load_graph(input);
    json rot_json;
    if (!dual_rot_path.empty()) rot_json = read_json_input(dual_rot_path);
    else if (input.contains("rotation")) rot_json = input.at("rotation");
    else throw std::runtime_error("dual needs a rotation (bundle field or --rotation)");
    auto rot = gf::rotation_from_json(g, rot_json);
    auto d = gf::planar_dual(g, rot);
    emit({{"graph", gf::graph_to_json(d.dual)},
          {"rotation", gf::rotation_to_json(d.dual, d.dual_rotation)}});
    return 0;
  }

  if (*lift) {
    auto g = load_graph(read_json_input(lift_path));
    gf::GroupTable t5(gf::parse_group_spec("Z5")), t3(gf::parse_group_spec("Z3"));
    gf::EdgeGroupMap phi{gf::edge_values_from_json(g, t5, read_json_input(lift_phi_path))};
    auto z3 = gf::is_group_colorable(g, t3);
    if (!z3.colorable) {
      json out = {{"graph", gf::graph_to_json(g)},
                  {"verdict", "no"},
                  {"certificate", gf::edge_map_certificate(g, t3, *z3.failing_phi)}};
      emit(out);
      return 1;
    }
    auto r = gf::lift_z3_to_z5(g, phi);
    json out = {{"graph", gf::graph_to_json(g)},
                {"certificate", gf::coloring_certificate(g, t5, r.coloring, phi)},
                {"audit",
                 {{"reduced_phi", gf::edge_values_to_json(g, t3, r.reduced_phi.values)},
                  {"base_coloring", gf::vertex_values_to_json(g, t3, r.base_coloring.values)}}}};
    emit(out);
    return 0;
  }

  if (*ver) {
    auto g = load_graph(read_json_input(ver_graph_path));
    auto input = read_json_input(ver_cert_path);
    std::vector<json> certs;
    if (input.is_array()) certs.assign(input.begin(), input.end());
    else if (input.contains("certificate")) certs.push_back(input.at("certificate"));
    else if (input.contains("certificates"))
      certs.assign(input.at("certificates").begin(), input.at("certificates").end());
    else certs.push_back(input);
    json results = json::array();
    bool all_ok = true;
    for (const auto& c : certs) {
      auto r = gf::check_certificate(g, c, ver_budget);
      all_ok = all_ok && r.ok;
      json entry = {{"kind", c.at("kind")}, {"valid", r.ok}};
      if (!r.ok) entry["reason"] = r.violation;
      results.push_back(entry);
    }
    emit({{"results", results}, {"all_valid", all_ok}});
    return all_ok ? 0 : 1;
  }

  if (*fam) {
    gf::SeparationWitness w;
    if (fam_kind == "theta") w = gf::theta_separation(fam_k, fam_q);
    else if (fam_kind == "dual") w = gf::dual_separation(fam_k, fam_q);
    else throw std::runtime_error("families kind must be theta or dual");
    emit(gf::witness_to_json(w));
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gf::BudgetExceededError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
}
