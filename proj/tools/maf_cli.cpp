#include <chrono>
#include <cstdint>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "maf/corpus.hpp"
#include "maf/newick.hpp"
#include "maf/oracle.hpp"
#include "maf/split_core.hpp"

namespace {

using maf::Algo;
using maf::PhyloTree;
using maf::TaxonSet;
using maf::TaxonTable;
using maf::TreeKind;
using json = nlohmann::ordered_json;

constexpr int kExitFeasible = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

constexpr const char* kRunSchema = "maf-run/1";
constexpr const char* kVerifySchema = "maf-verify/1";
constexpr const char* kBenchSchema = "maf-bench/1";
constexpr const char* kCoreSchema = "maf-core/1";

struct KindFlags {
  bool rooted = false;
  bool unrooted = false;

  void add(CLI::App& app) {
    auto* r = app.add_flag("--rooted", rooted, "Rooted trees");
    auto* u = app.add_flag("--unrooted", unrooted, "Unrooted trees (default)");
    r->excludes(u);
  }
  TreeKind kind() const { return rooted ? TreeKind::rooted : TreeKind::unrooted; }
};

struct InputTree {
  std::string source;
  std::string text;
};

struct LoadedPair {
  TaxonTable table;
  PhyloTree first;
  PhyloTree second;
  std::vector<InputTree> inputs;
};

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (unsigned char c : text) h = (h ^ c) * 0x100000001b3ULL;
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

LoadedPair load_pair(const std::vector<std::string>& files, TreeKind kind) {
  LoadedPair p;
  if (files.size() == 1) {
    const auto lines = maf::read_newick_file(files[0]);
    if (lines.size() != 2) throw std::runtime_error(files[0] + ": expected two trees, found " + std::to_string(lines.size()));
    p.inputs = {{files[0] + ":1", lines[0]}, {files[0] + ":2", lines[1]}};
  } else {
    for (const auto& f : files) {
      const auto lines = maf::read_newick_file(f);
      if (lines.size() != 1) throw std::runtime_error(f + ": expected one tree, found " + std::to_string(lines.size()));
      p.inputs.push_back({f, lines[0]});
    }
  }
  const auto a = maf::parse_newick_raw(p.inputs[0].text);
  const auto b = maf::parse_newick_raw(p.inputs[1].text);
  auto la = a.leaf_labels(), lb = b.leaf_labels();
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  if (la != lb) {
    std::vector<std::string> only_a, only_b;
    std::set_difference(la.begin(), la.end(), lb.begin(), lb.end(), std::back_inserter(only_a));
    std::set_difference(lb.begin(), lb.end(), la.begin(), la.end(), std::back_inserter(only_b));
    throw std::runtime_error("trees have different taxa; only in first: {" + join(only_a, ",") + "}; only in second: {" +
                             join(only_b, ",") + "}");
  }
  p.table = TaxonTable::from_labels(la);
  p.first = maf::to_tree(a, kind, p.table);
  p.second = maf::to_tree(b, kind, p.table);
  return p;
}

json blocks_json(const std::vector<TaxonSet>& forest, const TaxonTable& table) {
  json out = json::array();
  for (const auto& b : forest) out.push_back(table.labels(b));
  return out;
}

json rules_json(const std::map<std::string, std::uint64_t>& fired) {
  json out = json::object();
  for (const auto& [rule, n] : fired) out[rule] = n;
  return out;
}

struct SolveOptions {
  KindFlags kind;
  std::string algo = "improved";
  std::optional<int> max_k;
  std::vector<std::string> files;
  bool json = false;
};

int solve_pair(const SolveOptions& o, const char* forced_algo) {
  const std::string algo = forced_algo ? forced_algo : o.algo;
  const auto p = load_pair(o.files, o.kind.kind());
  const int max_k = o.max_k.value_or(std::max(0, p.first.leaf_count() - 1));
  if (max_k < 0) throw std::runtime_error("--max-k must be non-negative");

  const auto start = std::chrono::steady_clock::now();
  maf::SolveResult result;
  maf::SearchStats stats;
  if (algo == "oracle") result = maf::brute_maf(p.first, p.second, max_k);
  else result = maf::Solver(o.kind.kind(), algo == "improved" ? Algo::improved : Algo::baseline, stats)
                    .solve_min(p.first, p.second, max_k);
  const double wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (result.feasible() && (static_cast<int>(result.forest.size()) != *result.cuts + 1 ||
                            !maf::is_agreement_forest(p.first, p.second, result.forest)))
    throw std::logic_error("internal error: witness is not an agreement forest");

  if (o.json) {
    json inputs = json::array();
    for (const auto& in : p.inputs) inputs.push_back({{"source", in.source}, {"digest", digest(in.text)}});
    json j{{"schema", kRunSchema},
           {"kind", maf::to_string(o.kind.kind())},
           {"algo", algo},
           {"inputs", inputs},
           {"taxa", p.table.size()},
           {"max_k", max_k},
           {"feasible", result.feasible()}};
    j["min_cuts"] = result.feasible() ? json(*result.cuts) : json(nullptr);
    j["components"] = result.feasible() ? json(result.forest.size()) : json(nullptr);
    j["witness"] = blocks_json(result.forest, p.table);
    j["recursion_nodes"] = stats.nodes;
    j["rules"] = rules_json(stats.fired);
    j["wall_ms"] = wall_ms;
    std::cout << j.dump(2) << '\n';
  } else if (result.feasible()) {
    std::cout << "min cuts: " << *result.cuts << "\ncomponents: " << result.forest.size() << '\n';
    for (const auto& b : result.forest) std::cout << "  " << p.table.format(b) << '\n';
    std::cout << "recursion nodes: " << stats.nodes << "\nwall time: " << wall_ms << " ms\n";
  } else {
    std::cout << "no agreement forest with at most " << max_k << " cuts\n";
  }
  return result.feasible() ? kExitFeasible : kExitInfeasible;
}

void add_solve_options(CLI::App& cmd, SolveOptions& o, bool with_algo) {
  o.kind.add(cmd);
  if (with_algo)
    cmd.add_option("--algo", o.algo, "Algorithm")
        ->check(CLI::IsMember({"improved", "baseline", "oracle"}))
        ->capture_default_str();
  cmd.add_option("--max-k", o.max_k, "Largest cut count to try (default: iterate until feasible)");
  cmd.add_flag("--json", o.json, "JSON report");
  cmd.add_option("trees", o.files, "Two Newick files, or one file with two trees")
      ->required()
      ->expected(1, 2)
      ->check(CLI::ExistingFile);
}

struct CorpusOptions {
  KindFlags kind;
  std::size_t count = 0;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  int moves_min = 0;
  int moves_max = 0;
  std::uint64_t seed = 1;

  void add(CLI::App& cmd) {
    kind.add(cmd);
    cmd.add_option("--count", count, "Number of pairs")->capture_default_str();
    cmd.add_option("--n-min", n_min, "Fewest leaves")->capture_default_str();
    cmd.add_option("--n-max", n_max, "Most leaves")->capture_default_str();
    cmd.add_option("--moves-min", moves_min, "Fewest rearrangements")->capture_default_str();
    cmd.add_option("--moves-max", moves_max, "Most rearrangements")->capture_default_str();
    cmd.add_option("--seed", seed, "Seed of the first pair; pair i uses seed+i")->capture_default_str();
  }
  maf::CorpusSpec spec() const { return {kind.kind(), count, n_min, n_max, moves_min, moves_max, seed}; }
};

json spec_json(const maf::CorpusSpec& s) {
  return {{"kind", maf::to_string(s.kind)}, {"count", s.count},         {"n_min", s.n_min},
          {"n_max", s.n_max},               {"moves_min", s.moves_min}, {"moves_max", s.moves_max},
          {"seed", s.seed}};
}

json opt_json(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

std::string opt_text(const std::optional<int>& v) { return v ? std::to_string(*v) : "-"; }

int run_verify(const CorpusOptions& o, std::size_t oracle_max_n, bool as_json) {
  const auto spec = o.spec();
  const auto rows = maf::run_verify(spec, oracle_max_n, maf::thread_count());
  std::size_t mismatches = 0, oracle_checked = 0;
  json bad = json::array();
  for (const auto& r : rows) {
    oracle_checked += r.oracle ? 1 : 0;
    if (!r.mismatch()) continue;
    ++mismatches;
    if (as_json) {
      bad.push_back({{"seed", r.item.seed},
                     {"n", r.item.n},
                     {"moves", r.item.moves},
                     {"improved", opt_json(r.improved)},
                     {"baseline", opt_json(r.baseline)},
                     {"oracle", opt_json(r.oracle)},
                     {"witnesses_valid", r.witnesses_valid},
                     {"error", r.error}});
    } else {
      std::cout << "mismatch seed=" << r.item.seed << " n=" << r.item.n << " moves=" << r.item.moves
                << " improved=" << opt_text(r.improved) << " baseline=" << opt_text(r.baseline)
                << " oracle=" << opt_text(r.oracle) << (r.witnesses_valid ? "" : " invalid-witness")
                << (r.error.empty() ? "" : " error=" + r.error) << '\n';
    }
  }
  if (as_json) {
    std::cout << json{{"schema", kVerifySchema},
                      {"spec", spec_json(spec)},
                      {"pairs", rows.size()},
                      {"oracle_checked", oracle_checked},
                      {"mismatch_count", mismatches},
                      {"mismatches", bad}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << "verified " << rows.size() << ' ' << maf::to_string(spec.kind) << " pairs (" << oracle_checked
              << " against the oracle): " << mismatches << " mismatches\n";
  }
  return mismatches ? kExitError : kExitFeasible;
}

int run_bench(const CorpusOptions& o, const std::vector<std::string>& algo_names, const std::string& format) {
  std::vector<Algo> algos;
  for (const auto& a : algo_names) algos.push_back(a == "improved" ? Algo::improved : Algo::baseline);
  const auto spec = o.spec();
  const auto rows = maf::run_bench(spec, algos, maf::thread_count());
  const auto medians = maf::bench_medians(rows);
  if (format == "json") {
    json jr = json::array(), jm = json::array();
    for (const auto& r : rows)
      jr.push_back({{"seed", r.item.seed},
                    {"n", r.item.n},
                    {"moves", r.item.moves},
                    {"algo", maf::to_string(r.algo)},
                    {"cuts", r.cuts},
                    {"recursion_nodes", r.nodes},
                    {"rules", rules_json(r.fired)}});
    for (const auto& m : medians)
      jm.push_back({{"algo", maf::to_string(m.algo)}, {"k", opt_json(m.k)}, {"count", m.count}, {"median_nodes", m.median_nodes}});
    std::cout << json{{"schema", kBenchSchema}, {"spec", spec_json(spec)}, {"rows", jr}, {"medians", jm}}.dump(2) << '\n';
  } else {
    std::cout << "seed,n,moves,algo,cuts,recursion_nodes\n";
    for (const auto& r : rows)
      std::cout << r.item.seed << ',' << r.item.n << ',' << r.item.moves << ',' << maf::to_string(r.algo) << ','
                << r.cuts << ',' << r.nodes << '\n';
    std::cout << "\nalgo,k,count,median_nodes\n";
    for (const auto& m : medians)
      std::cout << maf::to_string(m.algo) << ',' << (m.k ? std::to_string(*m.k) : "all") << ',' << m.count << ','
                << m.median_nodes << '\n';
  }
  return kExitFeasible;
}

TaxonSet parse_side(const std::string& list, const TaxonTable& table) {
  TaxonSet s;
  std::stringstream in(list);
  for (std::string label; std::getline(in, label, ',');) s.insert(table.index(label));
  return s;
}

int run_core(const std::string& file, TreeKind kind, const std::string& y_list, const std::string& z_list) {
  const auto lines = maf::read_newick_file(file);
  if (lines.empty()) throw std::runtime_error(file + ": no tree");
  TaxonTable table;
  const auto t = maf::parse_newick(lines[0], kind, table);
  const auto y = parse_side(y_list, table);
  const auto z = z_list.empty() ? t.taxa() - y : parse_side(z_list, table);
  const auto core = maf::build_core(t, y, z);
  json cuts = json::array();
  for (const auto& cut : core.cuts) {
    json edges = json::array();
    for (int v : cut) edges.push_back({table.labels(t.cluster(v)), table.labels(t.taxa() - t.cluster(v))});
    json pieces = json::array();
    for (const auto& piece : maf::split_by_edges(t, cut)) pieces.push_back(table.labels(piece));
    cuts.push_back({{"size", cut.size()}, {"edges", edges}, {"pieces", pieces}});
  }
  std::cout << json{{"schema", kCoreSchema},
                    {"kind", maf::to_string(kind)},
                    {"y", table.labels(y)},
                    {"z", table.labels(z)},
                    {"weight", core.weight_string()},
                    {"within_half", core.weight_within_half()},
                    {"cuts", cuts}}
                   .dump(2)
            << '\n';
  return kExitFeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum agreement forests of rooted and unrooted binary phylogenetic trees."};
  app.require_subcommand(1);

  SolveOptions solve_opts;
  auto* solve = app.add_subcommand("solve", "Maximum agreement forest of two trees");
  add_solve_options(*solve, solve_opts, true);

  SolveOptions oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive reference solver (small inputs only)");
  add_solve_options(*oracle, oracle_opts, false);

  KindFlags gen_kind;
  std::size_t gen_n = 0;
  int gen_moves = 0;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "Random tree and a copy perturbed by rearrangements");
  gen_kind.add(*gen);
  gen->add_option("--n", gen_n, "Number of leaves")->required();
  gen->add_option("--moves", gen_moves, "Number of rearrangements")->capture_default_str()->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();

  CorpusOptions verify_opts{{}, 300, 4, 9, 0, 4, 1};
  std::size_t oracle_max_n = 10;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify", "Improved vs baseline vs oracle on a seeded corpus");
  verify_opts.add(*verify);
  verify->add_option("--oracle-max-n", oracle_max_n, "Skip the oracle above this many leaves")->capture_default_str();
  verify->add_flag("--json", verify_json, "JSON report");

  CorpusOptions bench_opts{{}, 20, 50, 50, 4, 10, 1};
  std::vector<std::string> bench_algos{"improved", "baseline"};
  std::string bench_format = "csv";
  auto* bench = app.add_subcommand("bench", "Recursion-node counts on a seeded corpus");
  bench_opts.add(*bench);
  bench->add_option("--algos", bench_algos, "Algorithms")
      ->delimiter(',')
      ->check(CLI::IsMember({"improved", "baseline"}))
      ->capture_default_str();
  bench->add_option("--format", bench_format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  KindFlags core_kind;
  std::string core_file, core_y, core_z;
  auto* core = app.add_subcommand("core", "Splitting core of a tree for a bipartition, as JSON");
  core_kind.add(*core);
  core->add_option("tree", core_file, "Newick file (first tree is used)")->required()->check(CLI::ExistingFile);
  core->add_option("--y", core_y, "Comma-separated taxa on one side")->required();
  core->add_option("--z", core_z, "Comma-separated taxa on the other side (default: the rest)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*solve) return solve_pair(solve_opts, nullptr);
    if (*oracle) return solve_pair(oracle_opts, "oracle");
    if (*gen) {
      const auto g = maf::generate_pair(gen_n, gen_moves, gen_seed, gen_kind.kind());
      std::cout << maf::write_newick(g.first, g.table) << '\n' << maf::write_newick(g.second, g.table) << '\n';
      return kExitFeasible;
    }
    if (*verify) return run_verify(verify_opts, oracle_max_n, verify_json);
    if (*bench) return run_bench(bench_opts, bench_algos, bench_format);
    if (*core) return run_core(core_file, core_kind.kind(), core_y, core_z);
  } catch (const maf::OracleLimit& e) {
    std::cerr << "error: oracle limit reached: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitError;
}
