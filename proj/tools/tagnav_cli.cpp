#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <httplib.h>

#include "tagnav/bench.hpp"
#include "tagnav/dfa.hpp"
#include "tagnav/document.hpp"
#include "tagnav/error.hpp"
#include "tagnav/nd_automaton.hpp"
#include "tagnav/server.hpp"
#include "tagnav/session.hpp"

using namespace tagnav;

namespace {

int serve(const std::string& collection_path, const std::string& ui_dir, int port, bool mutations,
          const std::string& engine) {
  ServiceOptions options;
  options.engine = parse_engine_kind(engine);
  options.enable_mutations = mutations;
  Service service(options);
  if (!collection_path.empty()) {
    std::cerr << "loaded " << collection_path << " as " << service.add_collection(load_collection(collection_path))
              << "\n";
  }

  httplib::Server server;
  std::optional<std::filesystem::path> ui;
  if (!ui_dir.empty()) ui = ui_dir;
  mount(service, server, ui);

  const char* env = std::getenv("TAGNAV_BIND_ADDRESS");
  const std::string host = env && *env ? env : "127.0.0.1";
  std::cerr << "listening on http://" << host << ":" << port << "\n";
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
    return 1;
  }
  return 0;
}

struct BenchArgs {
  std::string spec_path;
  std::optional<std::size_t> resources;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> round_size;
  std::optional<double> browse_factor;
  std::optional<double> reconfig_factor;
  std::string engine = "both";
  bool validate = false;
  std::string out;
};

void summarize(const char* label, const RunResult& r) {
  std::fprintf(stderr, "%-10s insert %.3fs  browse %.3fs  reconfig %.3fs  total %.3fs  resets %zu  nodes %zu\n",
               label, r.seconds_by_kind[0], r.seconds_by_kind[1], r.seconds_by_kind[2],
               r.records.empty() ? 0.0 : r.records.back().cumulative_seconds, r.resets, r.automaton_nodes);
}

int bench(const BenchArgs& args) {
  WorkloadSpec spec;
  if (!args.spec_path.empty()) spec = workload_from_json(parse_json(read_file(args.spec_path)));
  if (args.resources) spec.synthetic.resource_count = *args.resources;
  if (args.seed) spec.seed = *args.seed;
  if (args.round_size) spec.insertion_round_size = *args.round_size;
  if (args.browse_factor) spec.browse_factor = *args.browse_factor;
  if (args.reconfig_factor) spec.reconfig_factor = *args.reconfig_factor;

  const Workload workload = prepare_workload(spec);
  std::cerr << workload.source.size() << " resources, " << workload.operations.size() << " operations\n";

  std::vector<BenchRecord> records;
  if (args.validate) {
    auto r = run_lockstep(workload);
    summarize("lockstep", r);
    std::cerr << "validation passed\n";
    records = std::move(r.records);
  } else {
    std::vector<EngineKind> engines;
    if (args.engine == "both") {
      engines = {EngineKind::Automaton, EngineKind::Inverted};
    } else {
      engines = {parse_engine_kind(args.engine)};
    }
    for (EngineKind kind : engines) {
      auto r = run(workload, kind);
      summarize(std::string(to_string(kind)).c_str(), r);
      records.insert(records.end(), r.records.begin(), r.records.end());
    }
  }

  if (args.out.empty() || args.out == "-") {
    std::cout << format_csv(records);
  } else {
    emit_csv(records, args.out);
  }
  return 0;
}

int browse(const std::string& path, const std::vector<std::string>& tags, const std::string& engine, bool all) {
  Collection c = load_collection(path);
  auto e = make_engine(parse_engine_kind(engine), c);
  Session s = Session::open(c, *e);
  for (const auto& t : tags) s.select_tag(t);

  std::cout << "breadcrumb:";
  for (const auto& l : s.breadcrumb_labels()) std::cout << ' ' << l;
  std::cout << "\nresources (" << s.resource_count() << "):";
  for (const auto& id : s.visit_ids()) std::cout << ' ' << id;
  std::cout << "\ncloud (" << s.cloud().size() << "):\n";
  const auto& tree = c.categories();
  if (all) {
    for (const auto& d : s.display_cloud()) std::cout << "  " << d.tag << '\t' << d.count << '\n';
    return 0;
  }
  for (const auto& group : group_cloud(tree, s.cloud())) {
    std::cout << "  [" << (group.category ? tree.path(*group.category) : std::string("uncategorized")) << "]\n";
    for (const auto& d : display_order(group.cloud, c.vocabulary())) {
      std::cout << "    " << d.tag << '\t' << d.count << '\n';
    }
  }
  return 0;
}

int dfa(const std::string& path, std::size_t adversarial_n, const std::string& out, std::size_t limit) {
  Collection c = adversarial_n ? adversarial(adversarial_n) : load_collection(path);
  Dfa d = Dfa::build(c, limit);
  std::cout << "states " << d.count_states() << "\ntransitions " << d.count_transitions() << "\n";
  if (!out.empty()) {
    std::ofstream file(out);
    if (!file) throw Error(ErrorCode::IoError, "cannot write '" + out + "'");
    d.export_transitions(file, c.vocabulary());
  }
  return 0;
}

int tree(const std::string& path, const std::vector<std::string>& tags) {
  Collection c = load_collection(path);
  NdAutomaton nd(c);
  Frontier f = nd.initial_frontier();
  for (const auto& label : tags) {
    auto tag = c.find_tag(label);
    if (!tag) throw Error(ErrorCode::InfeasibleTag, "unknown tag '" + label + "'");
    f = nd.select(f, *tag);
  }
  nd.export_tree(std::cout, c.vocabulary());
  std::cerr << nd.node_count() << " nodes for " << nd.resource_count() << " resources\n";
  return 0;
}

int normalize(const std::string& in, const std::string& out) {
  Collection c = load_collection(in);
  if (out.empty() || out == "-") {
    std::cout << serialize_collection(c);
  } else {
    save_collection(c, out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel tag-cloud browsing"};
  app.require_subcommand(1);

  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  std::string serve_collection;
  std::string ui_dir;
  int port = 8080;
  bool mutations = false;
  std::string serve_engine = "automaton";
  serve_cmd->add_option("--collection", serve_collection, "Collection document to preload")->check(CLI::ExistingFile);
  serve_cmd->add_option("--ui-dir", ui_dir, "Static files served under /ui")->check(CLI::ExistingDirectory);
  serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(1, 65535));
  serve_cmd->add_flag("--enable-mutations", mutations, "Allow adding and removing resources over HTTP");
  serve_cmd->add_option("--engine", serve_engine)->check(CLI::IsMember({"automaton", "inverted"}));

  auto* bench_cmd = app.add_subcommand("bench", "Run the mixed workload and write a CSV time series");
  BenchArgs bargs;
  bench_cmd->add_option("--spec", bargs.spec_path, "Collection/workload envelope (JSON)")->check(CLI::ExistingFile);
  bench_cmd->add_option("--resources", bargs.resources, "Synthetic collection size");
  bench_cmd->add_option("--seed", bargs.seed);
  bench_cmd->add_option("--round-size", bargs.round_size);
  bench_cmd->add_option("--browse-factor", bargs.browse_factor);
  bench_cmd->add_option("--reconfig-factor", bargs.reconfig_factor);
  bench_cmd->add_option("--engine", bargs.engine)->check(CLI::IsMember({"automaton", "inverted", "both"}));
  bench_cmd->add_flag("--validate", bargs.validate, "Run both engines in lockstep and cross-check every step");
  bench_cmd->add_option("--out", bargs.out, "CSV path (default stdout)");

  auto* browse_cmd = app.add_subcommand("browse", "Select tags and print the resulting state");
  std::string browse_path;
  std::vector<std::string> browse_tags;
  std::string browse_engine = "automaton";
  bool browse_flat = false;
  browse_cmd->add_option("collection", browse_path)->required()->check(CLI::ExistingFile);
  browse_cmd->add_option("--select", browse_tags, "Tag to select (repeatable, in order)");
  browse_cmd->add_option("--engine", browse_engine)->check(CLI::IsMember({"automaton", "inverted"}));
  browse_cmd->add_flag("--flat", browse_flat, "Print the cloud without category grouping");

  auto* dfa_cmd = app.add_subcommand("dfa", "Build the explicit automaton and report its size");
  std::string dfa_path;
  std::size_t dfa_adversarial = 0;
  std::string dfa_out;
  std::size_t dfa_limit = kDefaultStateLimit;
  dfa_cmd->add_option("collection", dfa_path)->check(CLI::ExistingFile);
  dfa_cmd->add_option("--adversarial", dfa_adversarial, "Use the worst-case family of this size instead");
  dfa_cmd->add_option("--out", dfa_out, "Write transitions as TSV");
  dfa_cmd->add_option("--limit", dfa_limit, "State limit");

  auto* tree_cmd = app.add_subcommand("tree", "Print the split tree after a selection path");
  std::string tree_path;
  std::vector<std::string> tree_tags;
  tree_cmd->add_option("collection", tree_path)->required()->check(CLI::ExistingFile);
  tree_cmd->add_option("--select", tree_tags, "Tag to select (repeatable, in order)");

  auto* norm_cmd = app.add_subcommand("normalize", "Rewrite a collection document in canonical form");
  std::string norm_in;
  std::string norm_out;
  norm_cmd->add_option("input", norm_in)->required()->check(CLI::ExistingFile);
  norm_cmd->add_option("output", norm_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Usage errors exit 2; --help exits 0.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*serve_cmd) return serve(serve_collection, ui_dir, port, mutations, serve_engine);
    if (*bench_cmd) return bench(bargs);
    if (*browse_cmd) return browse(browse_path, browse_tags, browse_engine, browse_flat);
    if (*dfa_cmd) {
      if (dfa_path.empty() && dfa_adversarial == 0) {
        std::cerr << "error: give a collection or --adversarial N\n";
        return 2;
      }
      return dfa(dfa_path, dfa_adversarial, dfa_out, dfa_limit);
    }
    if (*tree_cmd) return tree(tree_path, tree_tags);
    if (*norm_cmd) return normalize(norm_in, norm_out);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 1;
  }
  return 0;
}
