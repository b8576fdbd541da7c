#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tightcycle/cycle_finder.hpp"
#include "tightcycle/errors.hpp"
#include "tightcycle/expander.hpp"
#include "tightcycle/generators.hpp"
#include "tightcycle/hypergraph.hpp"
#include "tightcycle/line_graph.hpp"
#include "tightcycle/oracle.hpp"
#include "tightcycle/random.hpp"

namespace tightcycle {

namespace {

constexpr const char* kThresholdEnv = "TIGHTCYCLE_EXACT_THRESHOLD";
constexpr const char* kCsvVersion = "# tightcycle-experiment v1";

struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<double> lambda;
  std::optional<std::int64_t> dmin;
  std::optional<double> K;
  std::optional<double> epsilon;
  std::optional<std::size_t> max_len;
  std::optional<std::size_t> exact_threshold;
  std::size_t parallel = 1;
  std::string format = "hg";
  std::string output;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Sends text to the -o file when one was given, otherwise to out.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary);
  if (!f) throw InputError("cannot write '" + o.output + "'");
  f << text;
}

std::size_t exact_threshold(const Options& o) {
  std::size_t t = kDefaultExactThreshold;
  if (const char* env = std::getenv(kThresholdEnv); env && *env) {
    try {
      std::size_t pos = 0;
      t = std::stoull(env, &pos);
      if (env[pos] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw InputError(std::string(kThresholdEnv) + " is not a number");
    }
  }
  if (o.exact_threshold) t = *o.exact_threshold;
  if (t > kMaxExactThreshold) throw InputError("exact threshold above " + std::to_string(kMaxExactThreshold));
  return t;
}

std::uint64_t require_seed(const Options& o, const std::string& why) {
  if (!o.seed) throw InputError("--seed is required " + why);
  return *o.seed;
}

struct Loaded {
  Hypergraph original;
  PartiteReduction reduced;
  LineGraph graph;
};

Loaded load(const std::string& path, const Options& o) {
  Hypergraph h = parse_hypergraph(read_file(path));
  std::uint64_t seed = h.is_partitioned() ? o.seed.value_or(0) : require_seed(o, "for unpartitioned input");
  PartiteReduction red = make_r_partite(h, seed);
  LineGraph g = from_hypergraph(red.graph);
  return {std::move(h), std::move(red), std::move(g)};
}

SearchParams search_params(const Options& o) {
  SearchParams p;
  p.lambda = o.lambda;
  if (o.dmin) p.d = Rational(*o.dmin);
  p.K = o.K;
  p.epsilon = o.epsilon;
  p.seed = o.seed.value_or(0);
  if (o.max_len) p.max_path_size = *o.max_len;
  p.exact_threshold = exact_threshold(o);
  return p;
}

void add_search_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--lambda", o.lambda, "Expansion factor")->check(CLI::Range(1e-12, 1.0));
  cmd->add_option("--dmin", o.dmin, "Degree floor d")->check(CLI::PositiveNumber);
  cmd->add_option("--K", o.K, "Shrink factor of dense subgraphs")->check(CLI::Range(1.0 + 1e-12, 1e300));
  cmd->add_option("--epsilon", o.epsilon, "Slack")->check(CLI::Range(1e-12, 1.0 - 1e-12));
  cmd->add_option("--max-len", o.max_len, "Longest sigma-path, in vertices")->check(CLI::PositiveNumber);
  cmd->add_option("--exact-threshold", o.exact_threshold, "Largest graph checked exhaustively");
  cmd->add_option("--parallel", o.parallel, "Worker threads")->check(CLI::PositiveNumber);
}

std::string chain_comment(const SearchOutcome& s) {
  std::ostringstream out;
  for (const auto& link : s.chain)
    out << "# chain n=" << link.num_vertices << " density=" << to_string(link.density)
        << " delta=" << link.min_degree << " K=" << link.K << " d=" << link.degree << '\n';
  return out.str();
}

std::string failure_comment(const SearchOutcome& s) {
  std::ostringstream out;
  std::string detail;
  if (auto* f = std::get_if<Failure>(&s.result)) detail = f->detail;
  out << "# NO-CYCLE stage=" << to_string(s.stage) << " detail=" << detail << '\n';
  return out.str();
}

// Maps a cycle found in the reduced graph back to the input's ids and checks
// it against the input.
std::optional<TightCycle> to_original(const Loaded& in, const TightCycle& c) {
  TightCycle mapped{c.rank, {}};
  for (auto id : c.ids) mapped.ids.push_back(in.reduced.original_id[id]);
  if (!validate_tight_cycle(in.original, mapped.ids)) return std::nullopt;
  return mapped;
}

int cmd_gen(const std::string& kind, const std::size_t n, std::size_t r, std::uint32_t m, double p, std::size_t l,
            const std::vector<std::uint32_t>& parts, const Options& o, std::ostream& out) {
  std::optional<Hypergraph> h;
  if (kind == "star") {
    h = gen_star(n, r);
  } else if (kind == "multipartite") {
    if (parts.empty()) throw InputError("--parts is required");
    h = gen_complete_multipartite(parts);
  } else if (kind == "cycle") {
    h = gen_tight_cycle(l, r);
  } else if (kind == "random") {
    h = gen_random_rpartite(m, r, p, require_seed(o, "for random instances"));
  } else if (kind == "grid") {
    h = gen_full_grid(m, r);
  } else {
    throw InputError("unknown generator '" + kind + "'");
  }
  emit(o, out, serialize_hypergraph(*h));
  return 0;
}

int cmd_stats(const std::string& path, const Options& o, std::ostream& out) {
  Loaded in = load(path, o);
  auto s = stats(in.graph);
  std::ostringstream text;
  if (o.format == "csv") {
    text << "r,vertices,edges,kept,n,p,density,delta\n";
    text << in.original.rank() << ',' << in.original.vertex_count() << ',' << in.original.edge_count() << ','
         << in.reduced.graph.edge_count() << ',' << s.num_vertices << ',' << s.num_blocks << ','
         << to_string(s.density) << ',' << s.min_degree << '\n';
  } else {
    text << "r=" << in.original.rank() << '\n'
         << "vertices=" << in.original.vertex_count() << '\n'
         << "edges=" << in.original.edge_count() << '\n'
         << "partitioned=" << (in.original.is_partitioned() ? "yes" : "no") << '\n'
         << "kept_edges=" << in.reduced.graph.edge_count() << '\n'
         << "n=" << s.num_vertices << '\n'
         << "p=" << s.num_blocks << '\n'
         << "density=" << to_string(s.density) << '\n'
         << "delta=" << s.min_degree << '\n';
  }
  emit(o, out, text.str());
  return 0;
}

int cmd_extract(const std::string& path, const Options& o, std::ostream& out) {
  Loaded in = load(path, o);
  const auto& g = in.graph;
  if (g.empty()) throw InputError("empty graph");
  ExpanderParams p;
  p.lambda = o.lambda.value_or(g.size() < 2 ? 0.5 : std::min(1.0, 1.0 / (2.0 * std::log2(double(g.size())))));
  p.d = o.dmin ? Rational(*o.dmin) : stats(g).density;
  p.epsilon = o.epsilon.value_or(0.1);
  p.exact_threshold = exact_threshold(o);
  ExtractedExpander e;
  try {
    e = extract_expander(g, p);
  } catch (const PreconditionError& ex) {
    throw InputError(ex.what());
  }
  auto s = stats(e.graph);
  std::ostringstream text;
  const std::size_t witness = e.certificate.witness ? e.certificate.witness->size() : 0;
  if (o.format == "csv") {
    text << "n,p,density,delta,lambda,mode,witness_size\n";
    text << s.num_vertices << ',' << s.num_blocks << ',' << to_string(s.density) << ',' << s.min_degree << ','
         << p.lambda << ',' << to_string(e.certificate.mode) << ',' << witness << '\n';
  } else {
    text << "# EXPANDER lambda=" << p.lambda << " d=" << e.certificate.d << " mode=" << to_string(e.certificate.mode)
         << " iterations=" << e.iterations << " density=" << to_string(s.density) << '\n';
    text << serialize_hypergraph(to_hypergraph(e.graph));
  }
  emit(o, out, text.str());
  return 0;
}

int cmd_find_cycle(const std::string& path, std::optional<std::size_t> length, bool single, const Options& o,
                   std::ostream& out, std::ostream& err) {
  require_seed(o, "for find-cycle");
  Loaded in = load(path, o);
  SearchParams params = search_params(o);
  SearchOutcome s;
  try {
    if (length)
      s = find_cycle_of_length(in.graph, *length, params);
    else if (single)
      s = assemble_cycle(in.graph, params, Permutation::identity(in.graph.rank()));
    else
      s = density_increment_search(in.graph, params);
  } catch (const PreconditionError& ex) {
    throw InputError(ex.what());
  }
  if (s.is_cycle()) {
    auto mapped = to_original(in, std::get<TightCycle>(s.result));
    if (!mapped) {
      err << "error: search produced a cycle that fails validation\n";
      return 1;
    }
    emit(o, out, serialize_cycle(*mapped));
    return 0;
  }
  if (s.kind() == OutcomeKind::kDense)
    emit(o, out, chain_comment(s) + serialize_dense(std::get<DenseSubgraph>(s.result)));
  else
    emit(o, out, failure_comment(s) + chain_comment(s));
  return 1;
}

int cmd_verify(const std::string& graph_path, const std::string& witness_path, std::ostream& out) {
  Hypergraph h = parse_hypergraph(read_file(graph_path));
  std::string text = read_file(witness_path);
  std::istringstream in(text);
  std::string line, tag;
  while (std::getline(in, line))
    if (!line.empty() && line[0] != '#') {
      std::istringstream(line) >> tag;
      break;
    }
  std::vector<VertexId> ids;
  if (tag == "TC") {
    auto c = parse_cycle(text);
    if (c.rank != h.rank()) {
      out << "invalid\n";
      return 1;
    }
    ids = c.ids;
  } else if (tag == "TCW") {
    ids = parse_witness(text);
  } else {
    throw InputError("witness file must start with TC or TCW");
  }
  bool ok = validate_tight_cycle(h, ids);
  out << (ok ? "valid\n" : "invalid\n");
  return ok ? 0 : 1;
}

int cmd_oracle(const std::string& path, std::size_t max_vertices, const Options& o, std::ostream& out) {
  Hypergraph h = parse_hypergraph(read_file(path));
  std::size_t max_len = o.max_len.value_or(h.vertex_count());
  if (max_len < h.rank() + 1) max_len = h.rank() + 1;
  std::optional<std::vector<VertexId>> w;
  try {
    w = brute_force_tight_cycle(h, max_len, max_vertices);
  } catch (const PreconditionError& ex) {
    throw InputError(ex.what());
  }
  if (!w) {
    emit(o, out, "# NO-CYCLE\n");
    return 1;
  }
  emit(o, out, serialize_witness(*w));
  return 0;
}

struct Cell {
  std::uint32_t m;
  std::size_t r;
  double p;
  std::optional<double> lambda, K;
  std::size_t run;
  std::uint64_t seed;
};

std::string run_cell(const Cell& c, const Options& o, bool timing) {
  auto start = std::chrono::steady_clock::now();
  LineGraph g = from_hypergraph(gen_random_rpartite(c.m, c.r, c.p, c.seed));
  SearchParams params = search_params(o);
  params.lambda = c.lambda;
  params.K = c.K;
  params.seed = derive_seed(c.seed, 1);
  auto s = stats(g);
  SearchOutcome res = density_increment_search(g, params);
  std::string kind(to_string(res.kind()));
  std::size_t length = 0;
  if (res.is_cycle()) {
    const auto& cyc = std::get<TightCycle>(res.result);
    length = cyc.ids.size();
    if (!validate_tight_cycle(to_hypergraph(g), cyc.ids)) kind = "invalid";
  }
  auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream row;
  row << c.m << ',' << c.r << ',' << c.p << ',';
  if (c.lambda) row << *c.lambda;
  row << ',';
  if (c.K) row << *c.K;
  row << ',' << c.seed << ',' << s.num_vertices << ',' << to_string(s.density) << ',' << s.min_degree << ','
      << kind << ',' << length << ',' << to_string(res.stage) << ',' << res.chain.size() << ',';
  if (timing) row << static_cast<long long>(std::llround(ms));
  row << '\n';
  return row.str();
}

int cmd_experiment(const std::vector<std::uint32_t>& ms, const std::vector<std::size_t>& rs,
                   const std::vector<double>& ps, const std::vector<double>& lambdas, const std::vector<double>& ks,
                   std::size_t runs, bool timing, const Options& o, std::ostream& out) {
  const std::uint64_t seed = require_seed(o, "for experiments");
  for (auto p : ps)
    if (!(p >= 0.0 && p <= 1.0)) throw InputError("probability outside [0, 1]");
  std::vector<std::optional<double>> lam, kk;
  if (lambdas.empty()) lam.push_back(std::nullopt);
  for (auto v : lambdas) lam.push_back(v);
  if (ks.empty()) kk.push_back(std::nullopt);
  for (auto v : ks) kk.push_back(v);

  std::vector<Cell> cells;
  for (auto m : ms)
    for (auto r : rs)
      for (auto p : ps)
        for (const auto& l : lam)
          for (const auto& k : kk)
            for (std::size_t run = 0; run < runs; ++run)
              cells.push_back({m, r, p, l, k, run, derive_seed(seed, cells.size())});

  std::vector<std::string> rows(cells.size());
  std::vector<std::string> errors(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < cells.size();) {
      try {
        rows[i] = run_cell(cells[i], o, timing);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(o.parallel, cells.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw InputError(e);

  std::ostringstream text;
  text << kCsvVersion << '\n';
  text << "m,r,p,lambda,K,seed,n,density,delta,outcome,cycle_length,stage,levels,wall_ms\n";
  for (const auto& row : rows) text << row;
  emit(o, out, text.str());
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tight cycle search in r-uniform hypergraphs", "tightcycle"};
  app.require_subcommand(1);
  Options o;

  std::string kind;
  std::size_t gen_n = 0, gen_r = 3, gen_l = 0;
  std::uint32_t gen_m = 2;
  double gen_p = 0.5;
  std::vector<std::uint32_t> gen_parts;
  auto* gen = app.add_subcommand("gen", "Write a generated hypergraph");
  gen->add_option("kind", kind, "star | multipartite | cycle | random | grid")->required();
  gen->add_option("--n", gen_n, "Vertices (star)");
  gen->add_option("--r", gen_r, "Uniformity");
  gen->add_option("--m", gen_m, "Part size (random, grid)");
  gen->add_option("--p", gen_p, "Edge probability (random)");
  gen->add_option("--l", gen_l, "Cycle length (cycle)");
  gen->add_option("--parts", gen_parts, "Part sizes (multipartite)")->delimiter(',');
  gen->add_option("--seed", o.seed, "Random seed");
  gen->add_option("-o,--output", o.output, "Output file");

  std::string input, witness;
  auto* st = app.add_subcommand("stats", "Line-graph statistics of a hypergraph");
  st->add_option("input", input)->required();
  st->add_option("--seed", o.seed, "Seed for the r-partite reduction");
  st->add_option("--format", o.format)->check(CLI::IsMember({"hg", "csv"}));
  st->add_option("-o,--output", o.output, "Output file");

  auto* ex = app.add_subcommand("extract-expander", "Extract an expander from the line graph");
  ex->add_option("input", input)->required();
  add_search_flags(ex, o);
  ex->add_option("--format", o.format)->check(CLI::IsMember({"hg", "csv"}));
  ex->add_option("-o,--output", o.output, "Output file");

  std::optional<std::size_t> length;
  bool single = false;
  auto* fc = app.add_subcommand("find-cycle", "Search for a tight cycle");
  fc->add_option("input", input)->required();
  add_search_flags(fc, o);
  fc->add_option("--length", length, "Exact cycle length (a multiple of r)");
  fc->add_flag("--single", single, "One assembly step, no descent into dense subgraphs");
  fc->add_option("-o,--output", o.output, "Output file");

  auto* ve = app.add_subcommand("verify", "Check a TC or TCW witness against a hypergraph");
  ve->add_option("graph", input)->required();
  ve->add_option("witness", witness)->required();

  std::size_t oracle_vertices = kDefaultOracleVertices;
  auto* orc = app.add_subcommand("oracle", "Exhaustive tight-cycle search on small inputs");
  orc->add_option("input", input)->required();
  orc->add_option("--max-len", o.max_len, "Longest cycle tried");
  orc->add_option("--max-vertices", oracle_vertices, "Refuse larger inputs");
  orc->add_option("-o,--output", o.output, "Output file");

  std::vector<std::uint32_t> ms{4};
  std::vector<std::size_t> rs{3};
  std::vector<double> ps{0.5}, lambdas, ks;
  std::size_t runs = 1;
  bool no_timing = false;
  auto* exp = app.add_subcommand("experiment", "Sweep random instances and write CSV");
  exp->add_option("--m", ms, "Part sizes")->delimiter(',');
  exp->add_option("--r", rs, "Uniformities")->delimiter(',');
  exp->add_option("--p", ps, "Edge probabilities")->delimiter(',');
  exp->add_option("--lambda", lambdas, "Expansion factors")->delimiter(',');
  exp->add_option("--K", ks, "Shrink factors")->delimiter(',');
  exp->add_option("--runs", runs, "Runs per cell")->check(CLI::PositiveNumber);
  exp->add_option("--seed", o.seed, "Base seed");
  exp->add_option("--dmin", o.dmin)->check(CLI::PositiveNumber);
  exp->add_option("--epsilon", o.epsilon)->check(CLI::Range(1e-12, 1.0 - 1e-12));
  exp->add_option("--max-len", o.max_len)->check(CLI::PositiveNumber);
  exp->add_option("--exact-threshold", o.exact_threshold);
  exp->add_option("--parallel", o.parallel)->check(CLI::PositiveNumber);
  exp->add_option("--format", o.format)->check(CLI::IsMember({"csv"}));
  exp->add_flag("--no-timing", no_timing, "Leave wall_ms empty so output is reproducible");
  exp->add_option("-o,--output", o.output, "Output file");

  std::vector<std::string> argv_store{"tightcycle"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gen) return cmd_gen(kind, gen_n, gen_r, gen_m, gen_p, gen_l, gen_parts, o, out);
    if (*st) return cmd_stats(input, o, out);
    if (*ex) return cmd_extract(input, o, out);
    if (*fc) return cmd_find_cycle(input, length, single, o, out, err);
    if (*ve) return cmd_verify(input, witness, out);
    if (*orc) return cmd_oracle(input, oracle_vertices, o, out);
    if (*exp) return cmd_experiment(ms, rs, ps, lambdas, ks, runs, !no_timing, o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace tightcycle
