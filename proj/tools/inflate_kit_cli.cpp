// inflate-kit: command-line front end. Every verb reads JSON inputs, writes
// one JSON report (stdout or --out) and exits with
//   0 ok / verified, 1 verdict false, 2 input error, 3 size bound exceeded.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "inflate_kit.hpp"

namespace ik = inflate_kit;
using ik::Json;

namespace {

constexpr int kOk = 0;
constexpr int kVerdictFalse = 1;
constexpr int kInputError = 2;
constexpr int kTooLarge = 3;

void warn_redundant(const ik::Poset& p, const std::string& path) {
  if (p.redundant_covers_dropped())
    std::cerr << "warning: " << path << ": covers implied by transitivity were dropped\n";
}

ik::Poset load_poset(const std::string& path) {
  ik::Poset p = ik::parse_poset(ik::load_json_file(path));
  warn_redundant(p, path);
  return p;
}

ik::Diagram load_diagram(const std::string& path) {
  ik::Diagram d = ik::parse_diagram(ik::load_json_file(path));
  warn_redundant(d.base(), path);
  return d;
}

int exit_code_for(ik::ErrorKind kind) {
  switch (kind) {
    case ik::ErrorKind::TooLarge:
      return kTooLarge;
    case ik::ErrorKind::HypothesisViolated:
    case ik::ErrorKind::CertificateFailed:
      return kVerdictFalse;
    default:
      return kInputError;
  }
}

struct Common {
  std::string out;
  bool unsafe_limits = false;

  ik::Limits limits() const {
    if (unsafe_limits) return ik::Limits{static_cast<std::size_t>(62), static_cast<std::size_t>(-1)};
    return ik::Limits::from_env();
  }
};

Json envelope(const std::string& verb) {
  return {{"tool", "inflate-kit"}, {"version", ik::kVersion}, {"verb", verb}};
}

/// Writes next to the destination and renames, so readers never see a
/// half-written report.
void emit(const Json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  const std::filesystem::path target(out);
  std::filesystem::path temp = target;
  temp += ".tmp";
  {
    std::ofstream f(temp, std::ios::binary | std::ios::trunc);
    if (!f) throw ik::Error(ik::ErrorKind::ParseError, "cannot write " + temp.string());
    f << text;
    if (!f.flush()) throw ik::Error(ik::ErrorKind::ParseError, "cannot write " + temp.string());
  }
  std::filesystem::rename(temp, target);
}

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> counts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      if (v < 1 || v > 1'000'000) throw ik::Error(ik::ErrorKind::NonPositiveCount, "count '" + item + "' must be positive");
      counts.push_back(static_cast<int>(v));
    } catch (const std::logic_error&) {
      throw ik::Error(ik::ErrorKind::ParseError, "--counts expects comma-separated integers, got '" + item + "'");
    }
  }
  return counts;
}

Json flags_json(bool inhabited, bool flabby) { return {{"inhabited", inhabited}, {"flabby", flabby}}; }

// --- verbs -----------------------------------------------------------------

int check_sheaf(const std::string& diagram_path, const std::vector<std::string>& open, const Common& common) {
  const auto limits = common.limits();
  const ik::Diagram d = load_diagram(diagram_path);
  Json report = envelope("check-sheaf");
  const auto hole = ik::empty_open(d, limits);
  const auto flabby = ik::is_flabby(d, limits);
  report["hypotheses"] = flags_json(!hole, flabby.flabby);
  report["trivial"] = ik::is_trivial(d);
  report["complexity"] = ik::complexity(d);
  report["unsectioned_open"] = hole ? ik::to_json(d, *hole) : Json(nullptr);
  if (flabby.witness) {
    report["witness"] = {{"larger", ik::to_json(d, flabby.witness->larger)},
                         {"smaller", ik::to_json(d, flabby.witness->smaller)},
                         {"section", ik::render_section(d, flabby.witness->section)},
                         {"text", ik::describe_witness(d, *flabby.witness)}};
  } else {
    report["witness"] = nullptr;
  }
  if (!open.empty()) {
    const ik::OpenSet u = ik::make_open(d.base(), open);
    Json list = Json::array();
    for (const auto& s : ik::sections(d, u)) list.push_back(ik::render_section(d, s));
    report["sections"] = list;
  }
  emit(report, common.out);
  if (flabby.witness) std::cerr << "not flabby: " << ik::describe_witness(d, *flabby.witness) << "\n";
  return (!hole && flabby.flabby) ? kOk : kVerdictFalse;
}

int inflate_verb(const std::string& poset_path, const std::string& diagram_path, bool completion_only,
                 const Common& common) {
  const ik::Diagram d = load_diagram(diagram_path);
  Json report = envelope("inflate");
  ik::CompletedPoset result;
  if (completion_only) {
    result = ik::completion(d.base(), d);
  } else {
    const ik::Poset p = poset_path.empty() ? d.base().dual() : load_poset(poset_path);
    result = ik::inflate(p, d);
  }
  report["mode"] = completion_only ? "completion" : "inflation";
  report["poset"] = ik::to_json(result.result);
  Json projection = Json::object();
  for (ik::Index r = 0; r < result.result.size(); ++r)
    projection[result.result.name(r)] = result.base.name(result.projection(r));
  report["projection"] = projection;
  report["size"] = result.result.size();
  emit(report, common.out);
  return kOk;
}

int homology_verb(const std::string& complex_path, const std::string& poset_path, const Common& common) {
  const auto limits = common.limits();
  Json report = envelope("homology");
  ik::SimplicialComplex k;
  if (!complex_path.empty()) {
    k = ik::parse_complex(ik::load_json_file(complex_path));
    report["source"] = "complex";
  } else {
    k = ik::order_complex(load_poset(poset_path), limits);
    report["source"] = "order complex";
  }
  const auto h = ik::homology(k, limits);
  report["homology"] = ik::to_json(h);
  report["reduced_euler_characteristic"] = ik::euler_characteristic(k);
  report["faces"] = k.face_count();
  report["dimension"] = k.dimension();
  emit(report, common.out);
  return kOk;
}

int verify_wedge(const std::string& complex_path, const std::string& counts_text, const std::string& diagram_path,
                 const std::string& graph_path, const Common& common) {
  const auto limits = common.limits();
  ik::Poset base;
  ik::Diagram d;
  Json report = envelope("verify-wedge");
  if (!graph_path.empty()) {
    auto mc = ik::multiclique_diagram(ik::parse_multigraph(ik::load_json_file(graph_path)));
    base = mc.diagram.base().dual();
    d = std::move(mc.diagram);
    report["construction"] = "multiclique";
  } else if (!complex_path.empty() && !counts_text.empty()) {
    const auto k = ik::parse_complex(ik::load_json_file(complex_path));
    d = ik::vertex_inflation_diagram(k, parse_counts(counts_text));
    base = d.base().dual();
    report["construction"] = "vertex inflation";
  } else if (!diagram_path.empty()) {
    d = load_diagram(diagram_path);
    base = complex_path.empty() ? d.base().dual() : ik::face_poset(ik::parse_complex(ik::load_json_file(complex_path))).poset();
    report["construction"] = "diagram";
  } else {
    throw ik::Error(ik::ErrorKind::ParseError, "verify-wedge needs --graph, --complex with --counts, or --diagram");
  }
  const auto r = ik::verify_inflation(base, d, limits);
  Json body = ik::to_json(r);
  for (auto& [key, value] : body.items()) report[key] = value;
  emit(report, common.out);
  return r.applicable && r.match ? kOk : kVerdictFalse;
}

int cm_verb(const std::string& complex_path, const std::string& poset_path, const Common& common) {
  const auto limits = common.limits();
  const ik::SimplicialPoset p = !complex_path.empty()
                                    ? ik::face_poset(ik::parse_complex(ik::load_json_file(complex_path)))
                                    : ik::SimplicialPoset::from_poset(load_poset(poset_path));
  const auto v = ik::cm_check(p, limits);
  Json report = envelope("cm-check");
  report["hypotheses"] = {{"simplicial", true}, {"pure", v.pure}};
  report["verdict"] = ik::to_json(v);
  emit(report, common.out);
  return v.cohen_macaulay ? kOk : kVerdictFalse;
}

int from_map(const std::string& map_path, bool verify, const Common& common) {
  const auto f = ik::parse_simplicial_map(ik::load_json_file(map_path));
  Json report = envelope("from-map");
  const ik::Diagram d = ik::diagram_from_map(f);
  report["hypotheses"] = {{"nondegenerate", true}, {"surjective", true}};
  report["diagram"] = ik::to_json(d);
  int code = kOk;
  if (verify) {
    const auto source = ik::face_poset(f.source()).poset();
    const auto inflated = ik::inflate(d.base().dual(), d);
    const auto iso = ik::find_isomorphism(inflated.result, source);
    report["isomorphic_to_source"] = iso.has_value();
    if (iso) {
      Json mapping = Json::object();
      for (ik::Index r = 0; r < iso->size(); ++r) mapping[inflated.result.name(r)] = source.name((*iso)[r]);
      report["isomorphism"] = mapping;
    } else {
      code = kVerdictFalse;
    }
  }
  emit(report, common.out);
  return code;
}

int vertex_inflate(const std::string& complex_path, const std::string& counts_text, const Common& common) {
  const auto limits = common.limits();
  const auto k = ik::parse_complex(ik::load_json_file(complex_path));
  const ik::Diagram d = ik::vertex_inflation_diagram(k, parse_counts(counts_text));
  const auto inflated = ik::inflate(d.base().dual(), d);
  Json report = envelope("vertex-inflate");
  report["hypotheses"] = flags_json(true, true);
  report["diagram"] = ik::to_json(d);
  report["inflation"] = ik::to_json(inflated.result);
  report["homology"] = ik::to_json(ik::poset_homology(inflated.result, limits));
  emit(report, common.out);
  return kOk;
}

int multiclique_verb(const std::string& graph_path, const Common& common) {
  const auto limits = common.limits();
  const auto mc = ik::multiclique_diagram(ik::parse_multigraph(ik::load_json_file(graph_path)));
  const auto inflated = ik::inflate(mc.diagram.base().dual(), mc.diagram);
  Json report = envelope("multiclique");
  report["hypotheses"] = flags_json(true, true);
  report["clique_complex"] = ik::to_json(mc.clique_complex);
  report["diagram"] = ik::to_json(mc.diagram);
  report["inflation"] = ik::to_json(inflated.result);
  report["homology"] = ik::to_json(ik::poset_homology(inflated.result, limits));
  emit(report, common.out);
  return kOk;
}

int etale_verb(const std::string& diagram_path, const Common& common) {
  const auto limits = common.limits();
  const ik::Diagram d = load_diagram(diagram_path);
  const bool ok = ik::etale_check(d.base(), d, limits);
  Json report = envelope("etale-check");
  report["hypotheses"] = Json::object();
  report["homeomorphic"] = ok;
  emit(report, common.out);
  return ok ? kOk : kVerdictFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inflations of simplicial posets along diagrams of finite sets"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ik::kVersion));
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", common.out, "write the report to this file instead of stdout");
    sub->add_flag("--unsafe-limits", common.unsafe_limits, "lift the size bounds on open sets and faces");
  };

  std::string diagram, poset, complex, counts, graph, map;
  std::vector<std::string> open;
  bool completion_only = false, verify = false;

  auto* check = app.add_subcommand("check-sheaf", "inhabited / flabby checks with witnesses");
  check->add_option("--diagram", diagram)->required()->check(CLI::ExistingFile);
  check->add_option("--open", open, "also list the sections over this open set")->delimiter(',');
  add_common(check);

  auto* infl = app.add_subcommand("inflate", "inflation P_D (or the completion with --completion)");
  infl->add_option("--diagram", diagram)->required()->check(CLI::ExistingFile);
  infl->add_option("--poset", poset, "base poset P; defaults to the dual of the diagram's base")
      ->check(CLI::ExistingFile);
  infl->add_flag("--completion", completion_only, "complete the diagram's own base instead");
  add_common(infl);

  auto* hom = app.add_subcommand("homology", "reduced integral homology");
  auto* hom_input = hom->add_option_group("input", "exactly one of --complex or --poset");
  hom_input->add_option("--complex", complex)->check(CLI::ExistingFile);
  hom_input->add_option("--poset", poset)->check(CLI::ExistingFile);
  hom_input->require_option(1);
  add_common(hom);

  auto* wedge = app.add_subcommand("verify-wedge", "compare predicted and actual Betti numbers of an inflation");
  wedge->add_option("--complex", complex)->check(CLI::ExistingFile);
  wedge->add_option("--counts", counts, "vertex counts in the complex's vertex order, e.g. 2,2");
  wedge->add_option("--diagram", diagram)->check(CLI::ExistingFile);
  wedge->add_option("--graph", graph, "multigraph file (edge inflation)")->check(CLI::ExistingFile);
  add_common(wedge);

  auto* cm = app.add_subcommand("cm-check", "homological Cohen-Macaulay test");
  auto* cm_input = cm->add_option_group("input", "exactly one of --complex or --poset");
  cm_input->add_option("--complex", complex)->check(CLI::ExistingFile);
  cm_input->add_option("--poset", poset)->check(CLI::ExistingFile);
  cm_input->require_option(1);
  add_common(cm);

  auto* fmap = app.add_subcommand("from-map", "diagram induced by a nondegenerate surjective simplicial map");
  fmap->add_option("--map", map)->required()->check(CLI::ExistingFile);
  fmap->add_flag("--verify", verify, "check that the inflation recovers the source");
  add_common(fmap);

  auto* vinf = app.add_subcommand("vertex-inflate", "vertex inflation of a complex");
  vinf->add_option("--complex", complex)->required()->check(CLI::ExistingFile);
  vinf->add_option("--counts", counts)->required();
  add_common(vinf);

  auto* mcl = app.add_subcommand("multiclique", "edge inflation of a multigraph");
  mcl->add_option("--graph", graph)->required()->check(CLI::ExistingFile);
  add_common(mcl);

  auto* etale = app.add_subcommand("etale-check", "compare the etale space with the completion");
  etale->add_option("--diagram", diagram)->required()->check(CLI::ExistingFile);
  add_common(etale);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) return check_sheaf(diagram, open, common);
    if (*infl) return inflate_verb(poset, diagram, completion_only, common);
    if (*hom) return homology_verb(complex, poset, common);
    if (*wedge) return verify_wedge(complex, counts, diagram, graph, common);
    if (*cm) return cm_verb(complex, poset, common);
    if (*fmap) return from_map(map, verify, common);
    if (*vinf) return vertex_inflate(complex, counts, common);
    if (*mcl) return multiclique_verb(graph, common);
    if (*etale) return etale_verb(diagram, common);
  } catch (const ik::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
