// arbor: command-line front end.
//
//   arbor poset  --tree FILE [--out FILE]
//   arbor link   betti|export --tree FILE [--field F] [--format json|off] [--out FILE]
//   arbor cat    homtable|rhom|restrict --tree FILE [--root NAME] [--corr FILE] [--field F]
//   arbor verify [--max-size N] [--suites a,b] [--field F] [--workers N] [--out FILE]
//
// Exit codes: 0 ok, 1 suite failure, 2 parse error, 3 validation error,
// 4 unsupported export.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "arbor/error.hpp"
#include "arbor/io.hpp"
#include "arbor/link.hpp"
#include "arbor/poset.hpp"
#include "arbor/quiver.hpp"
#include "arbor/sheaf.hpp"
#include "arbor/verify.hpp"

using namespace arbor;

namespace {

enum Exit { kOk = 0, kSuiteFailure = 1, kParseError = 2, kInvalid = 3, kUnsupported = 4 };

struct Config {
  std::string tree_file;
  std::string root;
  std::string corr_file;
  std::string field = "q";
  unsigned workers = 1;
  std::string out;
  std::string format = "json";
  int max_size = 3;
  std::vector<std::string> suites;
  std::string action;
};

unsigned default_workers() {
  if (const char* env = std::getenv("ARBOR_WORKERS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

io::TreeInput load_tree(const Config& cfg) {
  io::TreeInput in = io::parse_tree_text(io::read_file(cfg.tree_file));
  if (!cfg.root.empty()) {
    in.tree.index_of(cfg.root);
    in.root = cfg.root;
  }
  return in;
}

// Writes to --out (atomically, via a sibling temporary) or to stdout.
void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  const std::string tmp = cfg.out + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw Error(ErrorKind::kParse, "cannot write " + cfg.out);
    f << text;
  }
  std::filesystem::rename(tmp, cfg.out);
}

std::string format_vector(const std::vector<std::size_t>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + ")";
}

std::string format_table(const Tree& t, const std::vector<Vertex>& rows,
                         const std::vector<std::vector<GradedDims>>& table) {
  std::size_t width = 1;
  for (Vertex v : rows) width = std::max(width, t.label(v).size());
  for (const auto& row : table)
    for (const auto& e : row) width = std::max(width, to_string(e).size());
  auto pad = [&](const std::string& s) { return s + std::string(width + 2 - s.size(), ' '); };
  std::string out = pad("");
  for (Vertex v : rows) out += pad(t.label(v));
  out += '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out += pad(t.label(rows[i]));
    for (const auto& e : table[i]) out += pad(to_string(e));
    out += '\n';
  }
  return out;
}

int cmd_poset(const Config& cfg) {
  const io::TreeInput in = load_tree(cfg);
  const ArborealPoset p = enumerate_poset(in.tree);
  std::ostringstream report;
  report << "elements: " << p.size() << "\n";
  report << "link f-vector: " << format_vector(f_vector(p)) << "\n";
  if (!cfg.out.empty()) emit(cfg, io::poset_to_json(p).dump(1) + "\n");
  std::cout << report.str();
  return kOk;
}

int cmd_link(const Config& cfg) {
  const io::TreeInput in = load_tree(cfg);
  const ArborealPoset p = enumerate_poset(in.tree);
  if (cfg.action == "betti") {
    const BettiNumbers b = betti(order_complex(p, true), Field::parse(cfg.field));
    emit(cfg, b.to_string() + "\n");
    return kOk;
  }
  if (cfg.format == "off") {
    emit(cfg, export_cell_mesh(p));
  } else {
    emit(cfg, export_complex(order_complex(p, true), ExportFormat::kJson));
  }
  return kOk;
}

int cmd_cat(const Config& cfg) {
  const io::TreeInput in = load_tree(cfg);
  const RootedTree rt = in.rooted();
  const Tree& t = rt.tree();
  const Field field = Field::parse(cfg.field);
  const TreeQuiver q(rt);
  std::vector<Vertex> all(t.size());
  for (Vertex v = 0; v < static_cast<Vertex>(t.size()); ++v) all[v] = v;
  const std::size_t n = t.size();
  std::vector<std::vector<GradedDims>> table(n, std::vector<GradedDims>(n));

  if (cfg.action == "homtable") {
    for (Vertex a = 0; a < static_cast<Vertex>(n); ++a)
      for (Vertex b = 0; b < static_cast<Vertex>(n); ++b) {
        const HomExt he = hom_ext(q, projective(q, a), projective(q, b), field);
        if (he.hom) table[a][b][0] = he.hom;
        if (he.ext) table[a][b][1] = he.ext;
      }
    emit(cfg, format_table(t, all, table));
    return kOk;
  }
  if (cfg.action == "rhom") {
    std::vector<FunctorComplex> gens;
    for (Vertex a = 0; a < static_cast<Vertex>(n); ++a) gens.push_back(generator_P(rt, a));
    for (Vertex a = 0; a < static_cast<Vertex>(n); ++a)
      for (Vertex b = 0; b < static_cast<Vertex>(n); ++b) table[a][b] = rhom(gens[a], gens[b], field);
    emit(cfg, format_table(t, all, table));
    return kOk;
  }
  // restrict
  const Correspondence c =
      cfg.corr_file.empty() ? identity_correspondence(t) : io::parse_correspondence_text(t, io::read_file(cfg.corr_file));
  const TreeQuiver rq = quotient_quiver(q, c);
  std::vector<PerfectComplex> images;
  std::ostringstream text;
  text << "correspondence: " << describe(t, c) << "\n";
  text << "quotient root: " << rq.tree().label(rq.rooted().root()) << "\n";
  for (Vertex a = 0; a < static_cast<Vertex>(n); ++a) {
    images.push_back(minimize(restriction(q, c, std_resolution(q, projective(q, a)))));
    text << "P_" << t.label(a) << " -> " << io::perfect_complex_to_json(rq, images.back()).dump() << "\n";
  }
  for (Vertex a = 0; a < static_cast<Vertex>(n); ++a)
    for (Vertex b = 0; b < static_cast<Vertex>(n); ++b) table[a][b] = hom(rq, images[a], images[b], field);
  text << format_table(t, all, table);
  emit(cfg, text.str());
  return kOk;
}

int cmd_verify(const Config& cfg) {
  VerifyOptions options;
  options.max_size = cfg.max_size;
  options.suites = cfg.suites;
  options.field = Field::parse(cfg.field);
  options.workers = cfg.workers;
  const VerifyReport report = run_verify(options);
  emit(cfg, report.to_json().dump(1) + "\n");
  if (!cfg.out.empty()) {
    for (const SuiteResult& s : report.suites)
      std::cout << s.name << ": " << (s.ok() ? "pass" : "FAIL") << " (" << s.checks << " checks)\n";
  }
  return report.ok() ? kOk : kSuiteFailure;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kParse: return kParseError;
    case ErrorKind::kDimensionTooHigh: return kUnsupported;
    default: return kInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  cfg.workers = default_workers();
  CLI::App app{"Arboreal singularities: posets, links, hypersurfaces and microlocal categories"};
  app.require_subcommand(1);
  app.add_option("--field", cfg.field, "Coefficient field: q or fp:P")->capture_default_str();
  app.add_option("--workers", cfg.workers, "Worker threads (default: $ARBOR_WORKERS or all cores)");
  app.add_option("--out", cfg.out, "Output file");

  auto* poset = app.add_subcommand("poset", "Enumerate the correspondence poset");
  poset->add_option("--tree", cfg.tree_file, "Tree JSON file")->required();

  auto* link = app.add_subcommand("link", "Homology and export of the link");
  link->add_option("action", cfg.action, "betti | export")->required()->check(CLI::IsMember({"betti", "export"}));
  link->add_option("--tree", cfg.tree_file, "Tree JSON file")->required();
  link->add_option("--format", cfg.format, "Export format: json (order complex) or off (cell mesh)")
      ->check(CLI::IsMember({"json", "off"}));

  auto* cat = app.add_subcommand("cat", "Hom tables of the microlocal category");
  cat->add_option("action", cfg.action, "homtable | rhom | restrict")
      ->required()
      ->check(CLI::IsMember({"homtable", "rhom", "restrict"}));
  cat->add_option("--tree", cfg.tree_file, "Tree JSON file")->required();
  cat->add_option("--root", cfg.root, "Root vertex (overrides the file)");
  cat->add_option("--corr", cfg.corr_file, "Correspondence JSON file for restrict");

  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--max-size", cfg.max_size, "Largest tree size")->capture_default_str();
  verify->add_option("--suites", cfg.suites, "Comma-separated suite names")->delimiter(',');

  for (auto* sub : {poset, link, cat, verify}) {
    sub->add_option("--field", cfg.field, "Coefficient field: q or fp:P");
    sub->add_option("--workers", cfg.workers, "Worker threads");
    sub->add_option("--out", cfg.out, "Output file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (cfg.workers < 1) throw Error(ErrorKind::kTooLarge, "worker count must be at least 1");
    Field::parse(cfg.field);
    if (poset->parsed()) return cmd_poset(cfg);
    if (link->parsed()) return cmd_link(cfg);
    if (cat->parsed()) return cmd_cat(cfg);
    return cmd_verify(cfg);
  } catch (const Error& e) {
    std::cerr << "arbor: " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "arbor: " << e.what() << "\n";
    return kInvalid;
  }
}
