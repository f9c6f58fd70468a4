// dcurv: distance-matrix curvature toolkit for finite connected graphs.
//
// Subcommands: gen, curvature, op {bridge, merge, cut, product}, verify, search.
// Exit codes: 0 success, 2 bad parameters or failed precondition,
// 3 curvature system unsolvable (certificate printed), 4 disconnected input.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dcurv/curvature.hpp"
#include "dcurv/generators.hpp"
#include "dcurv/graph_io.hpp"
#include "dcurv/json_io.hpp"
#include "dcurv/ops.hpp"
#include "dcurv/search.hpp"
#include "dcurv/spectral.hpp"
#include "dcurv/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNoSolution = 3;
constexpr int kExitDisconnected = 4;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dcurv::parse_error("cannot open input: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

dcurv::Graph load_graph(const std::string& path) { return dcurv::read_graph(read_input(path)); }

std::string format_vector(const dcurv::RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += dcurv::to_string(v[i]);
  }
  s += ")";
  return s;
}

std::pair<int, int> parse_pair_flag(const std::string& text, const char* flag) {
  auto comma = text.find(',');
  if (comma == std::string::npos)
    throw dcurv::parse_error(std::string(flag) + " expects two comma-separated vertex ids");
  try {
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw dcurv::parse_error(std::string(flag) + " expects two comma-separated vertex ids");
  }
}

int cmd_gen(const std::string& family, const std::vector<std::int64_t>& params,
            const std::string& format) {
  dcurv::GraphFamily fam{dcurv::parse_family_kind(family), params};
  dcurv::Graph g = dcurv::generate(fam);
  std::cout << dcurv::serialize(g, dcurv::parse_format(format));
  return kExitOk;
}

int cmd_curvature(const std::string& input, bool as_json) {
  dcurv::Graph g = load_graph(input);
  dcurv::CurvatureReport rep = dcurv::curvature(g);

  if (as_json) {
    std::cout << dcurv::curvature_report_json(g, rep).dump() << "\n";
  } else {
    std::cout << "n: " << rep.n << "\n";
    std::cout << "kind: " << dcurv::to_cstring(rep.kind) << "\n";
    if (rep.solvable()) {
      std::cout << "w: " << format_vector(rep.w) << "\n";
      std::cout << "total: " << dcurv::to_string(rep.total) << "\n";
      std::cout << "nullity: " << rep.nullity() << "\n";
      if (rep.constant_value)
        std::cout << "constant: " << dcurv::to_string(*rep.constant_value) << "\n";
      std::cout << "nonnegative_witness: " << dcurv::to_cstring(rep.witness_status) << "\n";
      if (rep.nonneg_witness) {
        std::cout << "witness: " << format_vector(*rep.nonneg_witness) << "\n";
        dcurv::BonnetMyersReport bm = dcurv::bonnet_myers(g, *rep.nonneg_witness);
        std::cout << "bonnet_myers: bound=" << dcurv::to_string(bm.bound) << " diam=" << bm.diam
                  << " K=" << dcurv::to_string(bm.k_min) << " sharp=" << (bm.sharp ? "true" : "false")
                  << "\n";
      }
    } else {
      std::cout << "certificate: " << format_vector(rep.certificate) << "\n";
    }
  }
  return rep.solvable() ? kExitOk : kExitNoSolution;
}

int cmd_op_bridge_or_merge(bool do_merge, const std::string& in1, const std::string& in2,
                           const std::string& at, bool as_json) {
  dcurv::Graph g1 = load_graph(in1);
  dcurv::Graph g2 = load_graph(in2);
  auto [u, v] = parse_pair_flag(at, "--at");
  dcurv::OpResult op = do_merge ? dcurv::merge(g1, u, g2, v) : dcurv::bridge(g1, u, g2, v);

  dcurv::CurvatureReport r1 = dcurv::curvature(g1);
  dcurv::CurvatureReport r2 = dcurv::curvature(g2);
  dcurv::CurvatureReport direct = dcurv::curvature(op.combined);

  std::optional<dcurv::PredictedCurvature> pred;
  std::string note;
  if (r1.nonneg_witness && r2.nonneg_witness) {
    dcurv::RatVector w1 = dcurv::permute_to_block(op.perm1, *r1.nonneg_witness, 0, op.blocks.n1);
    dcurv::RatVector w2 = dcurv::permute_to_block(
        op.perm2, *r2.nonneg_witness, do_merge ? op.blocks.n1 - 1 : op.blocks.n1, op.blocks.n2);
    pred = do_merge ? dcurv::predicted_merge_curvature(w1, w2, op.blocks)
                    : dcurv::predicted_bridge_curvature(w1, w2, op.blocks);
  } else {
    note = "transport hypotheses unmet: an input lacks a nonnegative curvature";
  }

  bool agree = false;
  if (pred && direct.solvable()) {
    dcurv::verify_curvature(dcurv::distance_matrix(op.combined), pred->w, false);
    agree = direct.kind == dcurv::CurvatureKind::Unique ? pred->w == direct.w : true;
  }

  if (as_json) {
    dcurv::Json j;
    j["operation"] = do_merge ? "merge" : "bridge";
    j["graph6"] = dcurv::serialize_graph6(op.combined);
    j["perm1"] = op.perm1;
    j["perm2"] = op.perm2;
    if (pred) {
      j["coefficients"] = dcurv::json_of(pred->coeffs);
      j["predicted"] = dcurv::json_of(pred->w);
      j["verified"] = true;
      j["agree"] = agree;
    }
    if (!note.empty()) j["note"] = note;
    j["direct"] = dcurv::curvature_report_json(op.combined, direct);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "operation: " << (do_merge ? "merge" : "bridge") << "\n";
    std::cout << "result: " << dcurv::serialize_graph6(op.combined) << "\n";
    if (pred) {
      std::cout << "alpha: " << dcurv::to_string(pred->coeffs.alpha)
                << " s: " << dcurv::to_string(pred->coeffs.s)
                << " scale: " << dcurv::to_string(pred->coeffs.scale) << "\n";
      std::cout << "predicted: " << format_vector(pred->w) << "\n";
    }
    if (!note.empty()) std::cout << "note: " << note << "\n";
    if (direct.solvable())
      std::cout << "direct: " << format_vector(direct.w) << "\n";
    else
      std::cout << "direct: no solution\n";
    if (pred) std::cout << "agree: " << (agree ? "true" : "false") << "\n";
  }
  if (pred && !agree) throw std::logic_error("transport disagrees with the direct solve");
  return kExitOk;
}

int cmd_op_cut(const std::string& input, const std::string& edge, bool as_json) {
  dcurv::Graph g = load_graph(input);
  auto e = parse_pair_flag(edge, "--edge");
  dcurv::CurvatureReport rep = dcurv::curvature(g);
  if (!rep.nonneg_witness)
    throw dcurv::graph_error("cut: graph admits no nonnegative curvature (cutting theorem hypothesis)");
  dcurv::CutCurvatures cc = dcurv::cut_curvatures(g, e, *rep.nonneg_witness);

  if (as_json) {
    dcurv::Json j;
    j["operation"] = "cut";
    j["edge"] = {e.first, e.second};
    j["part1"] = {{"graph6", dcurv::serialize_graph6(cc.parts.part1)},
                  {"vertices", cc.parts.orig1},
                  {"w", dcurv::json_of(cc.w1)}};
    j["part2"] = {{"graph6", dcurv::serialize_graph6(cc.parts.part2)},
                  {"vertices", cc.parts.orig2},
                  {"w", dcurv::json_of(cc.w2)}};
    j["verified"] = true;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "operation: cut at {" << e.first << "," << e.second << "}\n";
    std::cout << "part1: " << dcurv::serialize_graph6(cc.parts.part1) << " w: " << format_vector(cc.w1)
              << "\n";
    std::cout << "part2: " << dcurv::serialize_graph6(cc.parts.part2) << " w: " << format_vector(cc.w2)
              << "\n";
    std::cout << "verified: true\n";
  }
  return kExitOk;
}

int cmd_op_product(const std::string& in1, const std::string& in2, bool as_json) {
  dcurv::Graph g1 = load_graph(in1);
  dcurv::Graph g2 = load_graph(in2);
  dcurv::Graph prod = dcurv::cartesian_product(g1, g2);

  dcurv::CurvatureReport r1 = dcurv::curvature(g1);
  dcurv::CurvatureReport r2 = dcurv::curvature(g2);
  int d1 = dcurv::diameter(g1), d2 = dcurv::diameter(g2);

  std::optional<std::pair<dcurv::Rational, bool>> sharpness;
  std::string note;
  if (r1.constant_value && r2.constant_value && *r1.constant_value > 0 && *r2.constant_value > 0) {
    sharpness = dcurv::product_sharpness(*r1.constant_value, *r2.constant_value, d1, d2);
  } else {
    note = "sharpness formula needs positive constant curvature on both factors";
  }

  if (as_json) {
    dcurv::Json j;
    j["operation"] = "product";
    j["graph6"] = dcurv::serialize_graph6(prod);
    j["n"] = prod.vertex_count();
    j["diameter"] = dcurv::diameter(prod);
    if (sharpness) {
      j["K"] = dcurv::to_string(sharpness->first);
      j["sharp"] = sharpness->second;
    }
    if (!note.empty()) j["note"] = note;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "operation: product\n";
    std::cout << "result: " << dcurv::serialize_graph6(prod) << "\n";
    std::cout << "diameter: " << dcurv::diameter(prod) << " (factors " << d1 << " + " << d2 << ")\n";
    if (sharpness)
      std::cout << "K: " << dcurv::to_string(sharpness->first)
                << " sharp: " << (sharpness->second ? "true" : "false") << "\n";
    if (!note.empty()) std::cout << "note: " << note << "\n";
  }
  return kExitOk;
}

std::vector<std::pair<dcurv::Graph, dcurv::RatVector>> load_findings(const std::string& path) {
  std::vector<std::pair<dcurv::Graph, dcurv::RatVector>> out;
  std::istringstream is(read_input(path));
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    dcurv::Json j = dcurv::Json::parse(line);
    dcurv::Graph g = dcurv::parse_graph6(j.at("graph6").get<std::string>());
    dcurv::RatVector cert;
    for (const auto& s : j.at("certificate")) cert.push_back(dcurv::parse_rational(s.get<std::string>()));
    out.emplace_back(std::move(g), std::move(cert));
  }
  return out;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, const std::string& findings_path,
               bool as_json) {
  std::vector<std::pair<dcurv::Graph, dcurv::RatVector>> findings;
  if (!findings_path.empty()) findings = load_findings(findings_path);
  dcurv::SuiteResult res = dcurv::verify_suite(suite, seed, trials, findings);
  if (as_json) {
    std::cout << dcurv::json_of(res).dump() << "\n";
  } else {
    std::cout << res.suite << ": " << res.passed << "/" << res.executed << " passed";
    if (res.skipped) std::cout << " (" << res.skipped << " skipped)";
    std::cout << " seed=" << res.seed << " -> " << (res.ok() ? "OK" : "FAIL") << "\n";
  }
  return res.ok() ? kExitOk : 1;
}

int cmd_search(const std::string& input, int enumerate_n, const std::string& findings_path, bool dedup,
               bool as_json) {
  std::ofstream findings;
  if (!findings_path.empty()) {
    findings.open(findings_path, std::ios::binary);
    if (!findings) throw dcurv::parse_error("cannot open findings file: " + findings_path);
  }

  std::uint64_t total = 0, solvable = 0, unsolvable = 0, skipped = 0, collapsed = 0;
  std::set<std::string> fingerprints;

  auto emit = [&](const dcurv::Graph& g, std::uint64_t index) {
    if (dedup) {
      std::string fp = dcurv::distance_fingerprint(dcurv::distance_matrix(g));
      if (!fingerprints.insert(fp).second) {
        ++collapsed;
        return;
      }
    }
    dcurv::SearchRecord rec = dcurv::classify_graph(g, index);
    ++total;
    (rec.solvable ? solvable : unsolvable)++;
    if (as_json) {
      std::cout << dcurv::json_of(rec).dump() << "\n";
    } else {
      std::cout << rec.index << " " << rec.graph6 << " n=" << rec.n
                << (rec.solvable ? " solvable" : " UNSOLVABLE") << " nullity=" << rec.nullity;
      if (rec.certificate) std::cout << " certificate=" << format_vector(*rec.certificate);
      std::cout << "\n";
    }
    if (!rec.solvable && findings.is_open()) findings << dcurv::json_of(rec).dump() << "\n";
  };

  if (enumerate_n > 0) {
    if (enumerate_n > dcurv::kEnumerateCap)
      throw dcurv::graph_error("search: --enumerate capped at n <= " +
                               std::to_string(dcurv::kEnumerateCap));
    std::uint64_t index = 0;
    dcurv::enumerate_connected(enumerate_n, [&](const dcurv::Graph& g) { emit(g, index++); });
  } else {
    std::istringstream is(read_input(input));
    std::string line;
    std::uint64_t index = 0;
    while (std::getline(is, line)) {
      std::uint64_t here = index++;
      if (line.empty()) {
        ++skipped;
        continue;
      }
      try {
        dcurv::Graph g = dcurv::parse_graph6(line);
        if (!g.is_connected()) {
          std::cerr << "warning: line " << here << " is disconnected, skipped\n";
          ++skipped;
          continue;
        }
        emit(g, here);
      } catch (const dcurv::parse_error& e) {
        std::cerr << "warning: line " << here << " malformed (" << e.what() << "), skipped\n";
        ++skipped;
      }
    }
  }

  if (as_json) {
    dcurv::Json j;
    j["summary"] = {{"total", total},
                    {"solvable", solvable},
                    {"unsolvable", unsolvable},
                    {"skipped", skipped},
                    {"collapsed", collapsed}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "summary: total=" << total << " solvable=" << solvable << " unsolvable=" << unsolvable
              << " skipped=" << skipped;
    if (dedup) std::cout << " collapsed=" << collapsed;
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steinerberger curvature of graphs from exact distance-matrix linear algebra"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph from a named family");
  std::string gen_family;
  std::vector<std::int64_t> gen_params;
  std::string gen_format = "graph6";
  gen->add_option("family", gen_family, "path|cycle|complete|star|complete_bipartite|hypercube|random_tree")
      ->required();
  gen->add_option("params", gen_params, "family parameters")->expected(-1);
  gen->add_option("--format", gen_format, "graph6|edge_list|dot");

  // curvature
  auto* curv = app.add_subcommand("curvature", "classify D w = n 1 for one graph");
  std::string curv_input;
  bool curv_json = false;
  curv->add_option("input", curv_input, "graph file (graph6 or edge list), or - for stdin")->required();
  curv->add_flag("--json", curv_json, "emit JSON");

  // op
  auto* op = app.add_subcommand("op", "graph operations with curvature transport");
  op->require_subcommand(1);
  std::string op_in1, op_in2, op_at = "0,0", op_edge;
  bool op_json = false;

  auto* opb = op->add_subcommand("bridge", "join two graphs with a new edge");
  opb->add_option("g1", op_in1)->required();
  opb->add_option("g2", op_in2)->required();
  opb->add_option("--at", op_at, "attachment vertices u,v");
  opb->add_flag("--json", op_json);

  auto* opm = op->add_subcommand("merge", "identify a vertex of each graph");
  opm->add_option("g1", op_in1)->required();
  opm->add_option("g2", op_in2)->required();
  opm->add_option("--at", op_at, "attachment vertices u,v");
  opm->add_flag("--json", op_json);

  auto* opc = op->add_subcommand("cut", "remove a bridge and transport curvature");
  opc->add_option("g", op_in1)->required();
  opc->add_option("--edge", op_edge, "bridge edge u,v")->required();
  opc->add_flag("--json", op_json);

  auto* opp = op->add_subcommand("product", "Cartesian product with sharpness report");
  opp->add_option("g1", op_in1)->required();
  opp->add_option("g2", op_in2)->required();
  opp->add_flag("--json", op_json);

  // verify
  auto* ver = app.add_subcommand("verify", "run a seeded property suite");
  std::string ver_suite, ver_findings;
  std::uint64_t ver_seed = 1;
  int ver_trials = 0;
  bool ver_json = false;
  ver->add_option("suite", ver_suite, "thm1|prop1|thm2|thm3|thm4|thm5|thm6|prop2|prop4|mass")->required();
  ver->add_option("--seed", ver_seed, "rng seed");
  ver->add_option("--trials", ver_trials, "trial count (0 = suite default)");
  ver->add_option("--findings", ver_findings, "findings file from search (used by thm6)");
  ver->add_flag("--json", ver_json);

  // search
  auto* sea = app.add_subcommand("search", "classify a graph6 stream or enumerate small graphs");
  std::string sea_input = "-", sea_findings;
  int sea_enum = 0;
  bool sea_dedup = false, sea_json = false;
  sea->add_option("input", sea_input, "graph6 lines, one graph per line, or - for stdin");
  sea->add_option("--enumerate", sea_enum, "classify all connected graphs on n vertices (n <= 7)");
  sea->add_option("--findings", sea_findings, "write unsolvable records (JSON lines) here");
  sea->add_flag("--dedup", sea_dedup, "collapse by distance fingerprint");
  sea->add_flag("--json", sea_json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_family, gen_params, gen_format);
    if (curv->parsed()) return cmd_curvature(curv_input, curv_json);
    if (opb->parsed()) return cmd_op_bridge_or_merge(false, op_in1, op_in2, op_at, op_json);
    if (opm->parsed()) return cmd_op_bridge_or_merge(true, op_in1, op_in2, op_at, op_json);
    if (opc->parsed()) return cmd_op_cut(op_in1, op_edge, op_json);
    if (opp->parsed()) return cmd_op_product(op_in1, op_in2, op_json);
    if (ver->parsed()) return cmd_verify(ver_suite, ver_seed, ver_trials, ver_findings, ver_json);
    if (sea->parsed()) return cmd_search(sea_input, sea_enum, sea_findings, sea_dedup, sea_json);
  } catch (const dcurv::disconnected_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDisconnected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
