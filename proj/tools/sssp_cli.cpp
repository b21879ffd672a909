// Command-line driver: replay scripts, verify them against Dijkstra in
// lockstep, benchmark the engines, and generate reduction instances.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "incsssp/driver.hpp"
#include "incsssp/gadgets.hpp"

namespace {

using namespace incsssp;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// demo.sssp -> demo.expected; anything else gets .expected appended.
std::string sidecar_path(const std::string& script_path) {
  std::string p = script_path;
  const std::string ext = ".sssp";
  if (p.size() > ext.size() && p.compare(p.size() - ext.size(), ext.size(), ext) == 0)
    p.resize(p.size() - ext.size());
  return p + ".expected";
}

UpdateScript load_script(const std::string& path, const std::string& expected_override) {
  UpdateScript s = parse_script(read_file(path));
  std::string exp = expected_override.empty() ? sidecar_path(path) : expected_override;
  if (!expected_override.empty() || std::filesystem::exists(exp))
    s.expected = parse_answers(read_file(exp));
  return s;
}

Algo algo_from(const std::string& name) {
  std::optional<Algo> a = parse_algo(name);
  if (!a) throw std::runtime_error("unknown algorithm '" + name + "'");
  return *a;
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

struct SeedOpt {
  uint64_t value = 1;
  bool given = false;

  // --seed wins; otherwise the SSSP_SEED environment variable; otherwise 1.
  uint64_t resolve() const {
    if (given) return value;
    if (const char* env = std::getenv("SSSP_SEED")) return std::strtoull(env, nullptr, 10);
    return value;
  }
};

int do_run(const std::string& path, const std::string& algo_name_arg, double eps,
           std::optional<double> test_constants, const std::string& expected,
           const std::string& out_path) {
  UpdateScript script = load_script(path, expected);
  RunOptions opt;
  opt.eps = eps;
  opt.test_constants = test_constants;
  RunResult res = run_script(script, algo_from(algo_name_arg), opt);
  std::string out;
  if (test_constants) out += "# test-constants " + fmt_double(*test_constants) + "\n";
  out += serialize_answers(res.answers);
  if (out_path.empty())
    std::cout << out;
  else
    write_file(out_path, out);
  std::cerr << "ran " << script.events.size() << " events (" << script.insert_count()
            << " inserts), m_final=" << res.m_final << ", answers=" << res.answers.size() << "\n";
  return 0;
}

int do_verify(const std::string& path, const std::string& algo_name_arg, double eps,
              std::optional<double> test_constants, const std::string& expected,
              int64_t sample) {
  UpdateScript script = load_script(path, expected);
  VerifyOptions opt;
  opt.eps = eps;
  opt.check_every = sample;
  opt.test_constants = test_constants;
  VerifyReport rep = verify_script(script, algo_from(algo_name_arg), opt);
  if (!rep.ok) {
    std::cout << "verify FAILED\n" << rep.message;
    return 1;
  }
  std::cout << "verify OK: " << rep.events << " events, " << rep.checks << " vertex checks, "
            << rep.queries << " queries";
  if (test_constants) std::cout << " [test-constants " << fmt_double(*test_constants) << "]";
  std::cout << "\n";
  return 0;
}

int do_bench(const std::vector<int>& sizes, const std::string& algo_name_arg, double eps,
             std::optional<double> test_constants, const SeedOpt& seed, double density,
             int64_t max_weight, int64_t query_every) {
  Algo algo = algo_from(algo_name_arg);
  uint64_t base_seed = seed.resolve();
  std::cout << bench_csv_header() << "\n";
  if (test_constants) std::cout << "# test-constants " << fmt_double(*test_constants) << "\n";

  std::vector<BenchRecord> records;
  for (int n : sizes) {
    GenOptions g;
    g.n = n;
    g.max_weight = static_cast<Weight>(max_weight);
    g.seed = base_seed * 1000003ULL + static_cast<uint64_t>(n);
    g.query_every = query_every;
    g.density = density;
    UpdateScript script = gen_dense_script(g);
    RunOptions opt;
    opt.eps = eps;
    opt.test_constants = test_constants;
    BenchRecord rec = bench_script(script, algo, opt);
    std::cout << to_csv_row(rec) << "\n";
    records.push_back(std::move(rec));
  }

  // Companion diagnostics as comments: per-level i-scan counts and the
  // measured growth exponent of the combined work counters.
  for (const BenchRecord& rec : records) {
    if (rec.per_i_scans.empty()) continue;
    std::cout << "# i-scans n=" << rec.n << ":";
    for (size_t i = 0; i < rec.per_i_scans.size(); ++i)
      std::cout << " i" << i << "=" << rec.per_i_scans[i];
    std::cout << "\n";
  }
  for (size_t i = 0; i + 1 < records.size(); ++i) {
    const BenchRecord& a = records[i];
    const BenchRecord& b = records[i + 1];
    double wa = static_cast<double>(a.decrements + a.workset_inserts + a.iscan_total);
    double wb = static_cast<double>(b.decrements + b.workset_inserts + b.iscan_total);
    if (wa > 0 && wb > 0 && a.n != b.n) {
      double slope = std::log(wb / wa) / std::log(static_cast<double>(b.n) / a.n);
      std::cout << "# slope " << a.n << "->" << b.n << ": " << fmt_double(slope) << "\n";
    }
  }
  return 0;
}

int do_gen_kcycle(int n, int k, const SeedOpt& seed, double density, const std::string& out) {
  uint64_t s = seed.resolve();
  detail::SplitMix rng(s);
  DynGraph host(n, 0);
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = 0; v < n; ++v) {
      if (u == v) continue;
      double coin = static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
      if (coin < density) host.insert_or_relax(u, v, 1);
    }
  std::vector<int> partition(static_cast<size_t>(n));
  for (auto& c : partition) c = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(k)));

  KCycleInstance inst = gen_kcycle(host, k, partition);
  write_file(out + ".sssp", serialize_script(inst.script));
  write_file(out + ".expected", serialize_answers(inst.script.expected));
  bool hit = false;
  for (size_t i = 0; i < inst.stages.size(); ++i)
    hit |= inst.script.expected[i].dist == inst.stages[i].threshold;
  std::cout << "wrote " << out << ".sssp + .expected: host n=" << n << " m=" << host.m()
            << " k=" << k << " stages=" << inst.stages.size() << " seed=" << s
            << " k-cycle=" << (hit ? "yes" : "no") << "\n";
  return 0;
}

int do_gen_omv3(int n, const SeedOpt& seed, const std::string& out) {
  uint64_t s = seed.resolve();
  detail::SplitMix rng(s);
  BitMatrix A(static_cast<size_t>(n), BitVec(static_cast<size_t>(n), 0));
  for (auto& row : A)
    for (auto& bit : row) bit = static_cast<uint8_t>(rng.below(2));
  std::vector<std::array<BitVec, 3>> queries(static_cast<size_t>(n));
  for (auto& q : queries)
    for (auto& vec : q) {
      vec.assign(static_cast<size_t>(n), 0);
      for (auto& bit : vec) bit = static_cast<uint8_t>(rng.below(2));
    }

  Omv3Instance inst = gen_omv3(A, queries);
  write_file(out + ".sssp", serialize_script(inst.script));
  write_file(out + ".expected", serialize_answers(inst.script.expected));
  size_t hits = 0;
  for (size_t i = 0; i < inst.rounds.size(); ++i)
    hits += inst.script.expected[i].dist == inst.rounds[i].threshold;
  std::cout << "wrote " << out << ".sssp + .expected: n=" << n << " rounds=" << inst.rounds.size()
            << " seed=" << s << " triple-hits=" << hits << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"incremental (1+eps)-approximate SSSP: run, verify, bench, gen"};
  app.require_subcommand(1);

  std::string script_path, algo = "lazy", expected, out_path;
  double eps = 0.25;
  std::optional<double> test_constants;
  SeedOpt seed;
  int64_t sample = 1;

  auto add_common = [&](CLI::App* cmd, bool with_algo) {
    cmd->add_option("--eps", eps, "stretch parameter in (0, 2]")->capture_default_str();
    if (with_algo)
      cmd->add_option("--algo", algo, "lazy | es | warmup | oracle")->capture_default_str();
    cmd->add_option("--test-constants", test_constants,
                    "multiplier on the heaviness-threshold bases (labeled in output)");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "replay a script and print query answers");
  run_cmd->add_option("script", script_path, "update script (.sssp)")->required();
  add_common(run_cmd, true);
  run_cmd->add_option("--expected", expected, "answer sidecar (default: <script>.expected)");
  run_cmd->add_option("--out", out_path, "write answers here instead of stdout");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "lockstep-check a script against Dijkstra and its sidecar");
  verify_cmd->add_option("script", script_path, "update script (.sssp)")->required();
  add_common(verify_cmd, true);
  verify_cmd->add_option("--expected", expected, "answer sidecar (default: <script>.expected)");
  verify_cmd->add_option("--sample", sample,
                         "full all-vertex check every Nth event (queries always checked)")
      ->capture_default_str();

  std::vector<int> sizes{64, 128, 256, 512};
  double density = 1.0;
  int64_t max_weight = 1, query_every = 0;
  CLI::App* bench_cmd = app.add_subcommand("bench", "benchmark dense random scripts, CSV output");
  add_common(bench_cmd, true);
  bench_cmd->add_option("--sizes", sizes, "vertex counts, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--seed", seed.value, "script seed (env SSSP_SEED when omitted)");
  bench_cmd->add_option("--density", density, "fraction of ordered pairs inserted")
      ->capture_default_str();
  bench_cmd->add_option("--max-weight", max_weight, "uniform weights on [1, W]")
      ->capture_default_str();
  bench_cmd->add_option("--query-every", query_every, "emit a query every N inserts (0 = none)")
      ->capture_default_str();

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate reduction instances");
  gen_cmd->require_subcommand(1);
  int gen_n = 8, gen_k = 3;
  std::string gen_out;
  CLI::App* kc_cmd = gen_cmd->add_subcommand("kcycle", "k-cycle detection reduction");
  kc_cmd->add_option("--n", gen_n, "host graph vertices")->required();
  kc_cmd->add_option("--k", gen_k, "cycle length")->required();
  kc_cmd->add_option("--seed", seed.value, "host seed (env SSSP_SEED when omitted)");
  kc_cmd->add_option("--density", density, "host edge probability")->capture_default_str();
  kc_cmd->add_option("--out", gen_out, "output prefix (.sssp/.expected)")->required();
  CLI::App* omv_cmd = gen_cmd->add_subcommand("omv3", "triple-product OMv reduction");
  omv_cmd->add_option("--n", gen_n, "matrix dimension")->required();
  omv_cmd->add_option("--seed", seed.value, "instance seed (env SSSP_SEED when omitted)");
  omv_cmd->add_option("--out", gen_out, "output prefix (.sssp/.expected)")->required();

  CLI11_PARSE(app, argc, argv);
  seed.given = bench_cmd->count("--seed") || kc_cmd->count("--seed") || omv_cmd->count("--seed");

  try {
    if (*run_cmd)
      return do_run(script_path, algo, eps, test_constants, expected, out_path);
    if (*verify_cmd)
      return do_verify(script_path, algo, eps, test_constants, expected, sample);
    if (*bench_cmd)
      return do_bench(sizes, algo, eps, test_constants, seed, density, max_weight, query_every);
    if (*kc_cmd) return do_gen_kcycle(gen_n, gen_k, seed, density, gen_out);
    if (*omv_cmd) return do_gen_omv3(gen_n, seed, gen_out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
