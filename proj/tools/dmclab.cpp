// dmclab — command line laboratory for commitment over noisy channels.
//
// Commands:
//   channel info      reduction, triviality, separation, both capacities
//   capacity          capacity numbers alone, with optimizer knobs
//   codebook build    derive parameters and sample an expurgated codebook
//   protocol run      honest commit/reveal rounds, transcript log
//   attack binding    cheating-input search for double revelation
//   attack concealing total variation between two messages' output mixtures
//   audit converse    exact entropy chain bounding the rate of a codebook
//   bounds typicality self-check battery for the counting estimates
//   bounds chernoff   empirical tail frequencies against the analytic bound
//   report render     pretty-print a saved machine report
//
// Exit status: 0 all requested checks passed, 1 a check failed, 2 usage or
// input error.  With --threads 1 every output is byte-reproducible from
// (inputs, flags, seed); exact values are thread-count invariant either way.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dmclab/io.hpp"

namespace {

using namespace dmclab;

constexpr const char* kToolVersion = "0.1.0";

std::string fmt(double v, int prec = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
  return buf;
}

std::string fmt_vec(const std::vector<double>& v, int prec = 6) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt(v[i], prec);
  }
  return s + ")";
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

json make_artifact(const std::string& kind, json inputs, json report) {
  json j;
  j["kind"] = kind;
  j["tool_version"] = kToolVersion;
  j["inputs"] = std::move(inputs);
  j["report"] = std::move(report);
  return j;
}

void maybe_save(const json& artifact, const std::string& out_path) {
  if (!out_path.empty()) {
    save_json(artifact, out_path);
    std::cout << "wrote " << out_path << "\n";
  }
}

Distribution parse_input_dist(const std::vector<double>& flag, const Channel& w) {
  if (flag.empty()) return Distribution::uniform(w.input_count());
  return Distribution(flag);
}

Codebook load_codebook_file(const std::string& path) {
  json j = load_json(path);
  if (j.contains("report") && j.at("report").contains("codebook"))
    return codebook_from_json(j.at("report").at("codebook"));
  if (j.contains("codebook")) return codebook_from_json(j.at("codebook"));
  return codebook_from_json(j);
}

Channel pick_channel(const Codebook& book, const std::string& channel_path) {
  if (channel_path.empty()) return book.channel();
  return load_channel(channel_path);
}

// ---------------------------------------------------------------------------
// Renderers: one per artifact kind, driven by the machine report so the
// printed numbers are the stored numbers (rounded to 6 significant digits).

void render_capacity_report(const json& r) {
  const json& red = r.at("reduction");
  int kept = static_cast<int>(red.at("reduced").at("input").size());
  int removed = static_cast<int>(red.at("removed").size());
  std::cout << "reduction: kept " << kept << " of " << (kept + removed) << " input rows\n";
  for (const json& ri : red.at("removed")) {
    std::cout << "  removed \"" << ri.at("label").get<std::string>() << "\" =";
    bool first = true;
    for (const json& t : ri.at("witness")) {
      std::cout << (first ? " " : " + ") << fmt(t.at("weight").get<double>()) << " * \""
                << t.at("label").get<std::string>() << "\"";
      first = false;
    }
    std::cout << "\n";
  }
  for (const json& grp : red.at("merged_duplicates")) {
    std::cout << "  duplicate rows merged:";
    for (const json& l : grp) std::cout << " \"" << l.get<std::string>() << "\"";
    std::cout << "\n";
  }
  std::cout << "trivial: " << yesno(r.at("trivial").get<bool>()) << "\n";
  if (r.at("eta").is_null())
    std::cout << "eta: undefined (fewer than two non-redundant rows)\n";
  else
    std::cout << "eta: " << fmt(number_from_json(r.at("eta"))) << "\n";
  auto line = [&](const char* label, const json& c) {
    std::cout << label << fmt(c.at("value").get<double>()) << "  at P = "
              << fmt_vec(c.at("argmax").get<std::vector<double>>()) << "  ["
              << c.at("method").get<std::string>() << ", gap "
              << fmt(c.at("gap_estimate").get<double>(), 3) << "]\n";
  };
  line("commitment capacity   C_com = ", r.at("commitment_capacity"));
  line("transmission capacity C     = ", r.at("transmission_capacity"));
  std::cout << "C + C_com = " << fmt(r.at("capacity_sum").get<double>())
            << "  vs log2 min(|X|,|Z|) = " << fmt(r.at("min_alphabet_log2").get<double>())
            << "  exceeds: " << yesno(r.at("sum_exceeds_alphabet_log").get<bool>()) << "\n";
}

void render_params(const json& p) {
  std::cout << "parameters (mode " << p.at("mode").get<std::string>() << ")\n";
  std::cout << "  n = " << p.at("n").get<int>() << "  sigma = " << fmt(p.at("sigma").get<double>())
            << "  eta = " << fmt(p.at("eta").get<double>())
            << "  tau = " << fmt(p.at("tau").get<double>(), 10) << "\n";
  std::cout << "  eps_code = " << fmt(p.at("eps_code").get<double>())
            << "  eps_test = " << fmt(p.at("eps_test").get<double>()) << "\n";
  std::cout << "  scale constants: D = " << fmt(p.at("d_const").get<double>())
            << "  E = " << fmt(p.at("e_const").get<double>())
            << "  F = " << fmt(p.at("f_const").get<double>())
            << "  G = " << fmt(p.at("g_const").get<double>())
            << "  G' = " << fmt(p.at("g_prime").get<double>())
            << "  G_sigma = " << fmt(p.at("g_sigma").get<double>()) << "\n";
  std::cout << "  log2 K bound = " << fmt(number_from_json(p.at("log2_k_bound")))
            << "  (guarantees a message: " << yesno(p.at("k_bound_at_least_one").get<bool>())
            << ")\n";
  std::cout << "  log2 L bound = " << fmt(number_from_json(p.at("log2_l_bound"))) << "\n";
  std::cout << "  concealment bound = " << fmt(p.at("epsilon_bound").get<double>(), 4)
            << " (protocol), " << fmt(p.at("epsilon_bound_code").get<double>(), 4)
            << " (codebook); binding bound = " << fmt(p.at("delta_bound").get<double>(), 4)
            << "\n";
  std::cout << "  analytic bounds apply: " << yesno(p.at("analytic_bounds_apply").get<bool>())
            << "; concealment bound drops below 0.01 at n = "
            << fmt(p.at("epsilon_crossover_n").get<double>(), 17) << "\n";
}

void render_codebook(const json& r) {
  const json& cb = r.at("codebook");
  std::cout << "codebook: K = " << cb.at("message_count").get<int>()
            << " messages x L = " << cb.at("key_count").get<int>() << " keys, block length "
            << cb.at("params").at("n").get<int>() << ", seed " << cb.at("seed") << "\n";
  const json& log = cb.at("log");
  std::cout << "build: attempts = " << log.at("attempts").get<int>()
            << ", expurgated entries (last attempt) = " << log.at("bad_entries_last").get<int>()
            << ", columns trimmed = " << log.at("columns_trimmed").get<int>() << "\n";
  render_params(cb.at("params"));
}

void render_bounds(const json& r) {
  std::printf("%-36s %-14s %-14s %-12s %-7s %s\n", "check", "analytical", "measured", "method",
              "trials", "ok");
  for (const json& c : r.at("results")) {
    std::printf("%-36s %-14s %-14s %-12s %-7ld %s\n", c.at("name").get<std::string>().c_str(),
                fmt(number_from_json(c.at("analytical"))).c_str(),
                fmt(number_from_json(c.at("measured"))).c_str(),
                c.at("method").get<std::string>().c_str(), c.at("trials").get<long>(),
                c.at("satisfied").get<bool>() ? "ok" : "VIOLATION");
    const std::string note = c.at("note").get<std::string>();
    if (!note.empty()) std::printf("%36s   %s\n", "", note.c_str());
  }
  std::cout << "all satisfied: " << yesno(r.at("all_satisfied").get<bool>()) << "\n";
}

void render_binding(const json& r) {
  std::cout << "binding attack (" << r.at("strategy").get<std::string>() << "): delta_bind = "
            << fmt(number_from_json(r.at("security").at("delta_bind")), 10) << " ["
            << r.at("security").at("method").get<std::string>() << "]\n";
  std::cout << "best strategy: " << r.at("security").at("attack_description").get<std::string>()
            << "\n";
  if (!r.at("security").at("delta_bound").is_null())
    std::cout << "analytic binding bound: "
              << fmt(number_from_json(r.at("security").at("delta_bound")), 4) << "\n";
}

void render_concealing(const json& r) {
  std::cout << "concealing, messages " << r.at("pair")[0] << " vs " << r.at("pair")[1]
            << ": TV = " << fmt(number_from_json(r.at("tv").at("value")), 10) << " ["
            << r.at("tv").at("method").get<std::string>() << "]\n";
  const std::string note = r.at("tv").at("note").get<std::string>();
  if (!note.empty()) std::cout << "  " << note << "\n";
  if (r.contains("triangle") && !r.at("triangle").is_null()) {
    const json& t = r.at("triangle");
    std::cout << "  distance to product law: " << fmt(t.at("distance_a").get<double>(), 10)
              << " and " << fmt(t.at("distance_a_prime").get<double>(), 10)
              << "; TV <= sum: " << yesno(t.at("holds").get<bool>()) << "\n";
  }
  if (r.contains("pairs")) {
    std::cout << "  worst pair over " << r.at("pairs").size() << " message pairs\n";
  }
  if (!r.at("epsilon_bound").is_null())
    std::cout << "analytic concealment bound: " << fmt(number_from_json(r.at("epsilon_bound")), 4)
              << "\n";
}

void render_audit(const json& r) {
  std::cout << "converse audit: n = " << r.at("n").get<int>() << ", K = "
            << r.at("message_count").get<int>() << "\n";
  std::cout << "  H(A) = " << fmt(r.at("h_a").get<double>(), 10)
            << "  H(X|Z) = " << fmt(r.at("h_x_given_z").get<double>(), 10)
            << "  I(A;Z) = " << fmt(r.at("i_a_z").get<double>(), 10)
            << "  H(A|XZ) = " << fmt(r.at("h_a_given_xz").get<double>(), 10) << "\n";
  std::cout << "  epsilon = " << fmt(r.at("epsilon").get<double>(), 10)
            << "  delta = " << fmt(r.at("delta").get<double>(), 10)
            << "  epsilon' = " << fmt(r.at("epsilon_prime").get<double>(), 10)
            << "  delta' = " << fmt(r.at("delta_prime").get<double>(), 10) << "\n";
  std::cout << "  max equivocation = " << fmt(r.at("max_equivocation").get<double>(), 10)
            << "  rate bound rhs = " << fmt(r.at("rate_bound_rhs").get<double>(), 10) << "\n";
  std::printf("  %-34s %-16s %-16s %s\n", "inequality", "lhs", "rhs", "ok");
  for (const json& c : r.at("chain"))
    std::printf("  %-34s %-16s %-16s %s\n", c.at("name").get<std::string>().c_str(),
                fmt(number_from_json(c.at("lhs")), 10).c_str(),
                fmt(number_from_json(c.at("rhs")), 10).c_str(),
                c.at("holds").get<bool>() ? "ok" : "VIOLATION");
  std::cout << "chain holds: " << yesno(r.at("holds").get<bool>()) << "\n";
}

void render_protocol_summary(const json& r) {
  std::cout << "protocol: " << r.at("trials").get<long>() << " honest runs, accepted "
            << r.at("accepted").get<long>() << ", rejected " << r.at("rejected").get<long>()
            << " (rate " << fmt(r.at("acceptance_rate").get<double>(), 6) << ")\n";
}

void render_artifact(const json& artifact) {
  const std::string kind = artifact.at("kind").get<std::string>();
  const json& r = artifact.at("report");
  if (kind == "channel-info" || kind == "capacity") render_capacity_report(r);
  else if (kind == "codebook") render_codebook(r);
  else if (kind == "parameters") render_params(r.at("params"));
  else if (kind == "bounds-typicality" || kind == "bounds-chernoff") render_bounds(r);
  else if (kind == "attack-binding") render_binding(r);
  else if (kind == "attack-concealing") render_concealing(r);
  else if (kind == "audit-converse") render_audit(r);
  else if (kind == "protocol-run") render_protocol_summary(r);
  else throw std::runtime_error("report render: unknown artifact kind \"" + kind + "\"");
}

// ---------------------------------------------------------------------------
// Command handlers.  Each returns the process exit code.

struct CapacityFlags {
  std::string channel_path;
  std::string out_path;
  double tolerance = 1e-6;
  int restarts = 32;
  std::uint64_t seed = 0x5eed;
};

int run_capacity_like(const CapacityFlags& f, const std::string& kind) {
  json cj = load_json(f.channel_path);
  Channel w = channel_from_json(cj);
  EquivocationOptions opt;
  opt.tolerance = f.tolerance;
  opt.restarts = f.restarts;
  opt.seed = f.seed;
  CapacityReport rep = capacity_report(w, opt);
  json inputs;
  inputs["channel"] = f.channel_path;
  inputs["channel_hash"] = json_hash(cj);
  inputs["tolerance"] = f.tolerance;
  inputs["restarts"] = f.restarts;
  inputs["seed"] = f.seed;
  json artifact = make_artifact(kind, inputs, to_json(rep));
  render_artifact(artifact);
  maybe_save(artifact, f.out_path);
  return 0;
}

struct BuildFlags {
  std::string channel_path;
  std::string out_path;
  std::vector<double> p;
  int n = 0;
  double sigma = 0.0;
  int k = 2;
  int l = 2;
  std::string mode = "desk";
  double eps_test = -1.0;
  double eps_code = -1.0;
  std::uint64_t seed = 1;
  int max_attempts = 50;
  bool params_only = false;
};

int run_codebook_build(const BuildFlags& f) {
  json cj = load_json(f.channel_path);
  Channel w = channel_from_json(cj);
  Distribution p = parse_input_dist(f.p, w);
  ParamMode mode;
  if (f.mode == "theory") mode = ParamMode::Theory;
  else if (f.mode == "desk") mode = ParamMode::Desk;
  else throw CLI::ValidationError("--mode must be theory or desk");
  DeskOverrides ov;
  if (f.eps_test >= 0.0) ov.eps_test = f.eps_test;
  if (f.eps_code >= 0.0) ov.eps_code = f.eps_code;
  ParameterSet ps = derive_parameters(w, p, f.n, f.sigma, mode, ov);

  json inputs;
  inputs["channel"] = f.channel_path;
  inputs["channel_hash"] = json_hash(cj);
  inputs["n"] = f.n;
  inputs["sigma"] = f.sigma;
  inputs["K"] = f.k;
  inputs["L"] = f.l;
  inputs["mode"] = f.mode;
  inputs["seed"] = f.seed;

  if (f.params_only) {
    json rep;
    rep["params"] = to_json(ps);
    json artifact = make_artifact("parameters", inputs, rep);
    render_artifact(artifact);
    maybe_save(artifact, f.out_path);
    return 0;
  }
  Codebook book = build_codebook(w, ps, f.k, f.l, f.seed, f.max_attempts);
  json rep;
  rep["codebook"] = to_json(book);
  json artifact = make_artifact("codebook", inputs, rep);
  render_artifact(artifact);
  maybe_save(artifact, f.out_path);
  return 0;
}

struct ProtocolFlags {
  std::string codebook_path;
  std::string channel_path;
  std::string out_path;
  int a = 0;  // 0 = round-robin
  long trials = 1;
  std::uint64_t seed = 1;
};

int run_protocol_cmd(const ProtocolFlags& f) {
  Codebook book = load_codebook_file(f.codebook_path);
  Channel w = pick_channel(book, f.channel_path);
  std::ofstream log;
  if (!f.out_path.empty()) {
    log.open(f.out_path);
    if (!log) throw std::runtime_error("cannot open " + f.out_path);
  }
  long accepted = 0;
  for (long t = 0; t < f.trials; ++t) {
    int a = f.a > 0 ? f.a : 1 + static_cast<int>(t % book.message_count());
    Transcript tr = dmclab::run_protocol(book, w, a, mix_seed(f.seed, static_cast<std::uint64_t>(t)));
    if (tr.verdict == Verdict::Acc) ++accepted;
    if (log) log << to_json(tr).dump() << "\n";
  }
  json rep;
  rep["trials"] = f.trials;
  rep["accepted"] = accepted;
  rep["rejected"] = f.trials - accepted;
  rep["acceptance_rate"] = static_cast<double>(accepted) / f.trials;
  json artifact = make_artifact("protocol-run", json{{"codebook", f.codebook_path}}, rep);
  render_artifact(artifact);
  if (log) std::cout << "wrote " << f.out_path << "\n";
  return 0;
}

struct AttackFlags {
  std::string codebook_path;
  std::string channel_path;
  std::string out_path;
  std::string strategy = "midpoint";
  long trials = 2000;
  long budget = 200;
  std::int64_t enum_limit = kDefaultEnumLimit;
  std::uint64_t seed = 1;
  int a = 1;
  int a_prime = 2;
  bool all_pairs = false;
};

int run_attack_binding(const AttackFlags& f) {
  Codebook book = load_codebook_file(f.codebook_path);
  Channel w = pick_channel(book, f.channel_path);
  AttackStrategy strategy;
  if (f.strategy == "midpoint") strategy = AttackStrategy::Midpoint;
  else if (f.strategy == "hillclimb") strategy = AttackStrategy::HillClimb;
  else if (f.strategy == "exhaustive") strategy = AttackStrategy::Exhaustive;
  else throw CLI::ValidationError("--strategy must be midpoint, hillclimb or exhaustive");
  BindingOptions opt;
  opt.trials = f.trials;
  opt.hill_climb_budget = f.budget;
  opt.enum_limit = f.enum_limit;
  SecurityReport sec = binding_attack(book, w, strategy, f.seed, opt);
  json rep;
  rep["strategy"] = f.strategy;
  rep["security"] = to_json(sec);
  json artifact = make_artifact("attack-binding", json{{"codebook", f.codebook_path}}, rep);
  render_artifact(artifact);
  maybe_save(artifact, f.out_path);
  bool ok = !sec.delta_bound || !sec.delta_bind || *sec.delta_bind <= *sec.delta_bound;
  return ok ? 0 : 1;
}

int run_attack_concealing(const AttackFlags& f) {
  Codebook book = load_codebook_file(f.codebook_path);
  Channel w = pick_channel(book, f.channel_path);
  const int n = book.block_length();
  const double log2_cost = n * std::log2(static_cast<double>(w.output_count()));
  const bool exact = log2_cost <= std::log2(static_cast<double>(f.enum_limit));

  std::vector<std::pair<int, int>> pairs;
  if (f.all_pairs) {
    for (int a = 1; a <= book.message_count(); ++a)
      for (int ap = a + 1; ap <= book.message_count(); ++ap) pairs.emplace_back(a, ap);
  } else {
    pairs.emplace_back(f.a, f.a_prime);
  }

  json rep;
  TvResult worst;
  worst.value = -1.0;
  std::pair<int, int> worst_pair = pairs.front();
  json pair_list = json::array();
  for (auto [a, ap] : pairs) {
    TvResult tv = exact ? measure_concealing_exact(book, w, a, ap, f.enum_limit)
                        : measure_concealing_mc(book, w, a, ap, f.trials, f.seed);
    pair_list.push_back(json{{"a", a}, {"a_prime", ap}, {"tv", to_json(tv)}});
    if (tv.value > worst.value) {
      worst = tv;
      worst_pair = {a, ap};
    }
  }
  rep["pair"] = json::array({worst_pair.first, worst_pair.second});
  rep["tv"] = to_json(worst);
  if (f.all_pairs) rep["pairs"] = pair_list;

  bool ok = true;
  if (exact) {
    double da = mixture_distance_to_product_exact(book, w, worst_pair.first, f.enum_limit);
    double dap = mixture_distance_to_product_exact(book, w, worst_pair.second, f.enum_limit);
    bool holds = worst.value <= da + dap + 1e-12;
    json tri;
    tri["distance_a"] = da;
    tri["distance_a_prime"] = dap;
    tri["holds"] = holds;
    rep["triangle"] = tri;
    ok = ok && holds;
  } else {
    rep["triangle"] = nullptr;
  }
  if (book.params().analytic_bounds_apply) {
    rep["epsilon_bound"] = number_to_json(book.params().epsilon_bound);
    if (exact) ok = ok && worst.value <= book.params().epsilon_bound;
  } else {
    rep["epsilon_bound"] = nullptr;
  }
  json artifact = make_artifact("attack-concealing", json{{"codebook", f.codebook_path}}, rep);
  render_artifact(artifact);
  maybe_save(artifact, f.out_path);
  return ok ? 0 : 1;
}

struct AuditFlags {
  std::string codebook_path;
  std::string channel_path;
  std::string out_path;
  std::int64_t enum_limit = kDefaultEnumLimit;
};

int run_audit(const AuditFlags& f) {
  Codebook book = load_codebook_file(f.codebook_path);
  Channel w = pick_channel(book, f.channel_path);
  ConverseAudit audit = converse_audit(book, w, f.enum_limit);
  json artifact =
      make_artifact("audit-converse", json{{"codebook", f.codebook_path}}, to_json(audit));
  render_artifact(artifact);
  maybe_save(artifact, f.out_path);
  return audit.holds ? 0 : 1;
}

struct BoundsFlags {
  std::string channel_path;
  std::string out_path;
  std::vector<double> p;
  std::vector<int> grid_n{20, 50, 100};
  std::vector<double> grid_eps{0.05, 0.1, 0.2};
  long trials = 10000;
  std::uint64_t seed = 1;
  int threads = 0;
};

int run_bounds_typicality(const BoundsFlags& f) {
  json cj = load_json(f.channel_path);
  Channel w = channel_from_json(cj);
  Distribution p = parse_input_dist(f.p, w);
  std::vector<std::pair<int, double>> grid;
  for (int n : f.grid_n)
    for (double eps : f.grid_eps) grid.emplace_back(n, eps);
  std::vector<BoundCheckResult> results =
      verify_bound_suite(w, p, grid, f.trials, f.seed, resolve_threads(f.threads));
  bool all = true;
  for (const BoundCheckResult& r : results) all = all && r.satisfied;
  json rep;
  rep["channel_hash"] = json_hash(cj);
  json grid_json = json::array();
  for (auto [n, e] : grid) grid_json.push_back(json::array({n, e}));
  rep["grid"] = grid_json;
  rep["trials"] = f.trials;
  rep["seed"] = f.seed;
  rep["results"] = to_json(results);
  rep["all_satisfied"] = all;
  json artifact = make_artifact("bounds-typicality", json{{"channel", f.channel_path}}, rep);
  render_artifact(artifact);
  maybe_save(artifact, f.out_path);
  return all ? 0 : 1;
}

struct ChernoffFlags {
  std::string out_path;
  std::vector<double> p{0.5, 0.1, 0.3};
  std::vector<double> eta{0.2, 1.0, 0.5};
  std::vector<int> n_vars{100, 200, 400};
  long trials = 100000;
  std::uint64_t seed = 1;
  int threads = 0;
};

int run_bounds_chernoff(const ChernoffFlags& f) {
  if (f.p.size() != f.eta.size() || f.p.size() != f.n_vars.size())
    throw CLI::ValidationError("--p, --eta and --N must have the same length");
  std::vector<BoundCheckResult> results;
  for (std::size_t i = 0; i < f.p.size(); ++i) {
    std::vector<BoundCheckResult> pair =
        chernoff_check(f.p[i], f.eta[i], f.n_vars[i], f.trials,
                       mix_seed(f.seed, static_cast<std::uint64_t>(i)), resolve_threads(f.threads));
    results.insert(results.end(), pair.begin(), pair.end());
  }
  bool all = true;
  for (const BoundCheckResult& r : results) all = all && r.satisfied;
  json rep;
  rep["trials"] = f.trials;
  rep["seed"] = f.seed;
  rep["results"] = to_json(results);
  rep["all_satisfied"] = all;
  json artifact = make_artifact("bounds-chernoff", json::object(), rep);
  render_artifact(artifact);
  maybe_save(artifact, f.out_path);
  return all ? 0 : 1;
}

int run_render(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("report render: cannot open " + path);
  // Transcript logs are one object per line; reports are a single object.
  std::vector<json> objects;
  json j;
  while (in.peek(), !in.eof()) {
    try {
      in >> j;
    } catch (const json::parse_error&) {
      break;
    }
    objects.push_back(j);
    in >> std::ws;
  }
  if (objects.empty()) throw std::runtime_error("report render: no JSON objects in " + path);
  if (objects.size() > 1 || objects.front().contains("verdict")) {
    std::printf("%-6s %-4s %-4s %-10s %-10s %s\n", "trial", "a", "mu", "revealed", "verdict",
                "seed");
    long i = 0;
    for (const json& t : objects)
      std::printf("%-6ld %-4d %-4d (%d,%d)%-4s %-10s %s\n", i++, t.at("a").get<int>(),
                  t.at("mu").get<int>(), t.at("revealed_a").get<int>(),
                  t.at("revealed_mu").get<int>(), "", t.at("verdict").get<std::string>().c_str(),
                  t.at("seed").dump().c_str());
    return 0;
  }
  render_artifact(objects.front());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dmclab: commitment over discrete memoryless channels, measured"};
  app.require_subcommand(1);
  int rc = 0;

  // channel info / capacity
  CapacityFlags cap_flags;
  CLI::App* channel_cmd = app.add_subcommand("channel", "channel file inspection");
  channel_cmd->require_subcommand(1);
  CLI::App* info = channel_cmd->add_subcommand("info", "reduction, triviality, capacities");
  info->add_option("--channel", cap_flags.channel_path, "channel JSON file")->required();
  info->add_option("--out", cap_flags.out_path, "write machine report here");
  info->add_option("--tolerance", cap_flags.tolerance, "optimizer stationarity tolerance");
  info->add_option("--restarts", cap_flags.restarts, "optimizer restarts");
  info->add_option("--seed", cap_flags.seed, "optimizer restart seed");
  info->callback([&] { rc = run_capacity_like(cap_flags, "channel-info"); });

  CapacityFlags cap2_flags;
  CLI::App* capacity_cmd = app.add_subcommand("capacity", "capacity numbers for a channel");
  capacity_cmd->add_option("--channel", cap2_flags.channel_path, "channel JSON file")->required();
  capacity_cmd->add_option("--out", cap2_flags.out_path, "write machine report here");
  capacity_cmd->add_option("--tolerance", cap2_flags.tolerance, "optimizer stationarity tolerance");
  capacity_cmd->add_option("--restarts", cap2_flags.restarts, "optimizer restarts");
  capacity_cmd->add_option("--seed", cap2_flags.seed, "optimizer restart seed");
  capacity_cmd->callback([&] { rc = run_capacity_like(cap2_flags, "capacity"); });

  // codebook build
  BuildFlags build_flags;
  CLI::App* codebook_cmd = app.add_subcommand("codebook", "codebook operations");
  codebook_cmd->require_subcommand(1);
  CLI::App* build = codebook_cmd->add_subcommand("build", "derive parameters and sample words");
  build->add_option("--channel", build_flags.channel_path, "channel JSON file")->required();
  build->add_option("--out", build_flags.out_path, "write codebook artifact here");
  build->add_option("--n", build_flags.n, "block length")->required();
  build->add_option("--sigma", build_flags.sigma, "distance parameter in (0, 1/2)")->required();
  build->add_option("--K", build_flags.k, "message count");
  build->add_option("--L", build_flags.l, "keys per message");
  build->add_option("--p", build_flags.p, "input distribution (default uniform)")->delimiter(',');
  build->add_option("--mode", build_flags.mode, "theory or desk");
  build->add_option("--eps-test", build_flags.eps_test, "reveal-test width override");
  build->add_option("--eps-code", build_flags.eps_code, "codeword typicality width override");
  build->add_option("--seed", build_flags.seed, "sampling seed");
  build->add_option("--max-attempts", build_flags.max_attempts, "expurgation retries");
  build->add_flag("--params-only", build_flags.params_only, "derive parameters, skip sampling");
  build->callback([&] { rc = run_codebook_build(build_flags); });

  // protocol run
  ProtocolFlags proto_flags;
  CLI::App* protocol_cmd = app.add_subcommand("protocol", "honest protocol execution");
  protocol_cmd->require_subcommand(1);
  CLI::App* prun = protocol_cmd->add_subcommand("run", "commit/transmit/reveal rounds");
  prun->add_option("--codebook", proto_flags.codebook_path, "codebook JSON file")->required();
  prun->add_option("--channel", proto_flags.channel_path, "override physical channel");
  prun->add_option("--a", proto_flags.a, "message to commit (0 = round-robin)");
  prun->add_option("--trials", proto_flags.trials, "number of runs");
  prun->add_option("--seed", proto_flags.seed, "master seed");
  prun->add_option("--out", proto_flags.out_path, "transcript log (one JSON object per line)");
  prun->callback([&] { rc = run_protocol_cmd(proto_flags); });

  // attack binding | concealing
  AttackFlags attack_flags;
  CLI::App* attack_cmd = app.add_subcommand("attack", "adversarial measurements");
  attack_cmd->require_subcommand(1);
  CLI::App* binding = attack_cmd->add_subcommand("binding", "double-revelation search");
  binding->add_option("--codebook", attack_flags.codebook_path, "codebook JSON file")->required();
  binding->add_option("--channel", attack_flags.channel_path, "override physical channel");
  binding->add_option("--strategy", attack_flags.strategy, "midpoint, hillclimb or exhaustive");
  binding->add_option("--trials", attack_flags.trials, "Monte Carlo trials per candidate");
  binding->add_option("--budget", attack_flags.budget, "hill-climb evaluations per pair");
  binding->add_option("--enum-limit", attack_flags.enum_limit, "exact enumeration budget");
  binding->add_option("--seed", attack_flags.seed, "attack seed");
  binding->add_option("--out", attack_flags.out_path, "write machine report here");
  binding->callback([&] { rc = run_attack_binding(attack_flags); });

  AttackFlags conceal_flags;
  CLI::App* conceal = attack_cmd->add_subcommand("concealing", "output-mixture distance");
  conceal->add_option("--codebook", conceal_flags.codebook_path, "codebook JSON file")->required();
  conceal->add_option("--channel", conceal_flags.channel_path, "override physical channel");
  conceal->add_option("--a", conceal_flags.a, "first message");
  conceal->add_option("--a-prime", conceal_flags.a_prime, "second message");
  conceal->add_flag("--all-pairs", conceal_flags.all_pairs, "report the worst message pair");
  conceal->add_option("--trials", conceal_flags.trials, "Monte Carlo trials when not enumerable");
  conceal->add_option("--enum-limit", conceal_flags.enum_limit, "exact enumeration budget");
  conceal->add_option("--seed", conceal_flags.seed, "sampling seed");
  conceal->add_option("--out", conceal_flags.out_path, "write machine report here");
  conceal->callback([&] { rc = run_attack_concealing(conceal_flags); });

  // audit converse
  AuditFlags audit_flags;
  CLI::App* audit_cmd = app.add_subcommand("audit", "information-theoretic audits");
  audit_cmd->require_subcommand(1);
  CLI::App* converse = audit_cmd->add_subcommand("converse", "exact entropy chain for a codebook");
  converse->add_option("--codebook", audit_flags.codebook_path, "codebook JSON file")->required();
  converse->add_option("--channel", audit_flags.channel_path, "override physical channel");
  converse->add_option("--enum-limit", audit_flags.enum_limit, "exact enumeration budget");
  converse->add_option("--out", audit_flags.out_path, "write machine report here");
  converse->callback([&] { rc = run_audit(audit_flags); });

  // bounds typicality | chernoff
  BoundsFlags bounds_flags;
  CLI::App* bounds_cmd = app.add_subcommand("bounds", "self-check batteries");
  bounds_cmd->require_subcommand(1);
  CLI::App* typ = bounds_cmd->add_subcommand("typicality", "counting-bound battery over a grid");
  typ->add_option("--channel", bounds_flags.channel_path, "channel JSON file")->required();
  typ->add_option("--p", bounds_flags.p, "input distribution (default uniform)")->delimiter(',');
  typ->add_option("--n", bounds_flags.grid_n, "block lengths")->delimiter(',');
  typ->add_option("--eps", bounds_flags.grid_eps, "typicality widths")->delimiter(',');
  typ->add_option("--trials", bounds_flags.trials, "samples per sampled check");
  typ->add_option("--seed", bounds_flags.seed, "master seed");
  typ->add_option("--threads", bounds_flags.threads, "worker threads (0 = auto)");
  typ->add_option("--out", bounds_flags.out_path, "write machine report here");
  typ->callback([&] { rc = run_bounds_typicality(bounds_flags); });

  ChernoffFlags chern_flags;
  CLI::App* chern = bounds_cmd->add_subcommand("chernoff", "Bernoulli tail bound battery");
  chern->add_option("--p", chern_flags.p, "success probabilities")->delimiter(',');
  chern->add_option("--eta", chern_flags.eta, "relative deviations")->delimiter(',');
  chern->add_option("--N", chern_flags.n_vars, "variables per experiment")->delimiter(',');
  chern->add_option("--trials", chern_flags.trials, "experiments per triple");
  chern->add_option("--seed", chern_flags.seed, "master seed");
  chern->add_option("--threads", chern_flags.threads, "worker threads (0 = auto)");
  chern->add_option("--out", chern_flags.out_path, "write machine report here");
  chern->callback([&] { rc = run_bounds_chernoff(chern_flags); });

  // report render
  std::string render_path;
  CLI::App* report_cmd = app.add_subcommand("report", "report utilities");
  report_cmd->require_subcommand(1);
  CLI::App* render = report_cmd->add_subcommand("render", "pretty-print a machine report");
  render->add_option("path", render_path, "report or transcript file")->required();
  render->callback([&] { rc = run_render(render_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help = success, anything else = usage error
  } catch (const enumeration_limit_error& e) {
    std::cerr << "error: " << e.what()
              << "\nhint: raise --enum-limit or lower n, or use a Monte Carlo strategy\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
