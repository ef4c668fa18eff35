#include "dmclab/io.hpp"

#include <cmath>
#include <fstream>

namespace dmclab {
namespace {

std::string method_name(CheckMethod m) {
  return m == CheckMethod::Exact ? "exact" : "monte-carlo";
}

std::string capacity_method_name(CapacityMethod m) {
  switch (m) {
    case CapacityMethod::MultistartAscent: return "multistart-ascent";
    case CapacityMethod::GridSearch: return "grid-search";
    default: return "blahut-arimoto";
  }
}

json optional_to_json(const std::optional<double>& v) {
  return v ? number_to_json(*v) : json(nullptr);
}

json word_to_json(const Word& w) { return json(w.symbols); }

}  // namespace

json number_to_json(double v) {
  if (std::isnan(v)) return json("nan");
  if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
  return json(v);
}

double number_from_json(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw std::invalid_argument("number_from_json: expected a number or inf/-inf/nan");
}

json to_json(const Distribution& p) {
  json a = json::array();
  for (double v : p.probs()) a.push_back(v);
  return a;
}

Distribution distribution_from_json(const json& j) {
  return Distribution(j.get<std::vector<double>>());
}

json to_json(const Channel& w) {
  json j;
  j["input"] = w.input_labels();
  j["output"] = w.output_labels();
  json m = json::array();
  for (const auto& row : w.matrix()) m.push_back(row);
  j["matrix"] = m;
  return j;
}

Channel channel_from_json(const json& j) {
  return Channel(j.at("input").get<std::vector<std::string>>(),
                 j.at("output").get<std::vector<std::string>>(),
                 j.at("matrix").get<std::vector<std::vector<double>>>());
}

json to_json(const ReductionReport& r) {
  json j;
  j["reduced"] = to_json(r.reduced);
  json removed = json::array();
  for (const RemovedInput& ri : r.removed) {
    json w = json::array();
    for (const auto& [label, weight] : ri.witness)
      w.push_back(json{{"label", label}, {"weight", weight}});
    removed.push_back(json{{"label", ri.label}, {"witness", w}});
  }
  j["removed"] = removed;
  j["merged_duplicates"] = r.merged_duplicates;
  return j;
}

json to_json(const CapacityResult& r) {
  json j;
  j["value"] = r.value;
  j["argmax"] = to_json(r.argmax);
  j["method"] = capacity_method_name(r.method);
  j["iterations"] = r.iterations;
  j["gap_estimate"] = r.gap_estimate;
  return j;
}

json to_json(const CapacityReport& r) {
  json j;
  j["reduction"] = to_json(r.reduction);
  j["trivial"] = r.trivial;
  j["eta"] = optional_to_json(r.eta);
  j["commitment_capacity"] = to_json(r.commitment);
  j["transmission_capacity"] = to_json(r.transmission);
  j["capacity_sum"] = r.capacity_sum;
  j["min_alphabet_log2"] = r.min_alphabet_log2;
  j["sum_exceeds_alphabet_log"] = r.sum_exceeds_alphabet_log;
  return j;
}

json to_json(const BoundCheckResult& r) {
  json j;
  j["name"] = r.name;
  j["analytical"] = number_to_json(r.analytical);
  j["measured"] = number_to_json(r.measured);
  j["log2_domain"] = r.log2_domain;
  j["method"] = method_name(r.method);
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["satisfied"] = r.satisfied;
  j["note"] = r.note;
  return j;
}

json to_json(const std::vector<BoundCheckResult>& rs) {
  json a = json::array();
  for (const BoundCheckResult& r : rs) a.push_back(to_json(r));
  return a;
}

json to_json(const ParameterSet& ps) {
  json j;
  j["p"] = to_json(ps.p);
  j["n"] = ps.n;
  j["sigma"] = ps.sigma;
  j["eta"] = ps.eta;
  j["tau"] = ps.tau;
  j["eps_test"] = ps.eps_test;
  j["eps_code"] = ps.eps_code;
  j["d_const"] = ps.d_const;
  j["e_const"] = ps.e_const;
  j["f_const"] = ps.f_const;
  j["g_const"] = ps.g_const;
  j["g_prime"] = ps.g_prime;
  j["g_sigma"] = ps.g_sigma;
  j["log2_k_bound"] = number_to_json(ps.log2_k_bound);
  j["log2_l_bound"] = number_to_json(ps.log2_l_bound);
  j["k_bound_at_least_one"] = ps.k_bound_at_least_one;
  j["epsilon_bound"] = ps.epsilon_bound;
  j["epsilon_bound_code"] = ps.epsilon_bound_code;
  j["delta_bound"] = ps.delta_bound;
  j["epsilon_crossover_n"] = ps.epsilon_crossover_n;
  j["mode"] = ps.mode == ParamMode::Theory ? "theory" : "desk";
  j["analytic_bounds_apply"] = ps.analytic_bounds_apply;
  return j;
}

ParameterSet parameter_set_from_json(const json& j) {
  ParameterSet ps{distribution_from_json(j.at("p"))};
  ps.n = j.at("n").get<int>();
  ps.sigma = j.at("sigma").get<double>();
  ps.eta = j.at("eta").get<double>();
  ps.tau = j.at("tau").get<double>();
  ps.eps_test = j.at("eps_test").get<double>();
  ps.eps_code = j.at("eps_code").get<double>();
  ps.d_const = j.at("d_const").get<double>();
  ps.e_const = j.at("e_const").get<double>();
  ps.f_const = j.at("f_const").get<double>();
  ps.g_const = j.at("g_const").get<double>();
  ps.g_prime = j.at("g_prime").get<double>();
  ps.g_sigma = j.at("g_sigma").get<double>();
  ps.log2_k_bound = number_from_json(j.at("log2_k_bound"));
  ps.log2_l_bound = number_from_json(j.at("log2_l_bound"));
  ps.k_bound_at_least_one = j.at("k_bound_at_least_one").get<bool>();
  ps.epsilon_bound = j.at("epsilon_bound").get<double>();
  ps.epsilon_bound_code = j.at("epsilon_bound_code").get<double>();
  ps.delta_bound = j.at("delta_bound").get<double>();
  ps.epsilon_crossover_n = j.at("epsilon_crossover_n").get<double>();
  ps.mode = j.at("mode").get<std::string>() == "theory" ? ParamMode::Theory : ParamMode::Desk;
  ps.analytic_bounds_apply = j.at("analytic_bounds_apply").get<bool>();
  return ps;
}

json to_json(const CodebookBuildLog& log) {
  json j;
  j["attempts"] = log.attempts;
  j["bad_entries_last"] = log.bad_entries_last;
  j["rows_dropped_last"] = log.rows_dropped_last;
  j["columns_trimmed"] = log.columns_trimmed;
  return j;
}

json to_json(const Codebook& book) {
  json j;
  j["channel"] = to_json(book.channel());
  j["params"] = to_json(book.params());
  j["message_count"] = book.message_count();
  j["key_count"] = book.key_count();
  j["seed"] = book.seed();
  j["log"] = to_json(book.log());
  json words = json::array();
  for (const Word& w : book.words()) words.push_back(word_to_json(w));
  j["words"] = words;
  return j;
}

Codebook codebook_from_json(const json& j) {
  Channel ch = channel_from_json(j.at("channel"));
  ParameterSet ps = parameter_set_from_json(j.at("params"));
  CodebookBuildLog log;
  log.attempts = j.at("log").at("attempts").get<int>();
  log.bad_entries_last = j.at("log").at("bad_entries_last").get<int>();
  log.rows_dropped_last = j.at("log").at("rows_dropped_last").get<int>();
  log.columns_trimmed = j.at("log").at("columns_trimmed").get<int>();
  std::vector<Word> words;
  for (const json& wj : j.at("words"))
    words.push_back(make_word(wj.get<std::vector<int>>(), ch.input_count()));
  return Codebook(std::move(ch), std::move(ps), j.at("message_count").get<int>(),
                  j.at("key_count").get<int>(), std::move(words),
                  j.at("seed").get<std::uint64_t>(), log);
}

json to_json(const Transcript& t) {
  json j;
  j["a"] = t.a;
  j["mu"] = t.mu;
  j["sent"] = word_to_json(t.sent);
  j["received"] = word_to_json(t.received);
  j["revealed_a"] = t.revealed_a;
  j["revealed_mu"] = t.revealed_mu;
  j["verdict"] = t.verdict == Verdict::Acc ? "acc" : "rej";
  j["seed"] = t.seed;
  return j;
}

json to_json(const TvResult& r) {
  json j;
  j["value"] = r.value;
  j["method"] = method_name(r.method);
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["note"] = r.note;
  return j;
}

json to_json(const SoundnessResult& r) {
  json j;
  j["rejection_rate"] = r.rejection_rate;
  j["std_error"] = r.std_error;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["exact_rejection"] = optional_to_json(r.exact_rejection);
  j["consistent_with_exact"] = r.consistent_with_exact;
  return j;
}

json to_json(const SecurityReport& r) {
  json j;
  j["epsilon_measured"] = optional_to_json(r.epsilon_measured);
  j["delta_sound"] = optional_to_json(r.delta_sound);
  j["delta_bind"] = optional_to_json(r.delta_bind);
  j["method"] = method_name(r.method);
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["attack_description"] = r.attack_description;
  j["epsilon_bound"] = optional_to_json(r.epsilon_bound);
  j["delta_bound"] = optional_to_json(r.delta_bound);
  return j;
}

json to_json(const ChainCheck& c) {
  json j;
  j["name"] = c.name;
  j["lhs"] = number_to_json(c.lhs);
  j["rhs"] = number_to_json(c.rhs);
  j["holds"] = c.holds;
  return j;
}

json to_json(const ConverseAudit& a) {
  json j;
  j["n"] = a.n;
  j["message_count"] = a.message_count;
  j["h_a"] = a.h_a;
  j["h_x_given_z"] = a.h_x_given_z;
  j["i_a_z"] = a.i_a_z;
  j["h_a_given_xz"] = a.h_a_given_xz;
  j["sum_h_xk_given_zk"] = a.sum_h_xk_given_zk;
  j["epsilon"] = a.epsilon;
  j["delta"] = a.delta;
  j["epsilon_prime"] = a.epsilon_prime;
  j["delta_prime"] = a.delta_prime;
  j["b_rate"] = a.b_rate;
  j["max_equivocation"] = a.max_equivocation;
  j["rate_bound_rhs"] = a.rate_bound_rhs;
  json chain = json::array();
  for (const ChainCheck& c : a.chain) chain.push_back(to_json(c));
  j["chain"] = chain;
  j["holds"] = a.holds;
  return j;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_json: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("load_json: " + path + ": " + e.what());
  }
  return j;
}

void save_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_json: cannot open " + path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("save_json: write failed for " + path);
}

Channel load_channel(const std::string& path) { return channel_from_json(load_json(path)); }

std::string json_hash(const json& j) { return hash_hex(fnv1a64(j.dump())); }

}  // namespace dmclab
