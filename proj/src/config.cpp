#include "mfent/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mfent/errors.hpp"
#include "mfent/spectrum.hpp"

namespace mfent {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& message) {
  throw ConfigError(field + ": " + message);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(field, "must be finite");
  return v;
}

int integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

std::vector<double> numbers(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<double> sorted_grid(const json& j, const std::string& field) {
  auto out = numbers(j, field);
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i] > out[i - 1])) fail(field, "must be strictly increasing");
  return out;
}

Word word(const json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "expected a word string");
  try {
    return Word::parse(j.get<std::string>());
  } catch (const DomainError& e) {
    fail(field, e.what());
  }
}

std::vector<Word> words(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of words");
  std::vector<Word> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(word(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Eigen::MatrixXd real_matrix(const json& j, int m, const std::string& field) {
  if (!j.is_array() || static_cast<int>(j.size()) != m) fail(field, "expected " + std::to_string(m) + " rows");
  Eigen::MatrixXd out(m, m);
  for (int r = 0; r < m; ++r) {
    const json& row = j[static_cast<std::size_t>(r)];
    const std::string rf = field + "[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != m) fail(rf, "expected " + std::to_string(m) + " entries");
    for (int c = 0; c < m; ++c) out(r, c) = number(row[static_cast<std::size_t>(c)], rf + "[" + std::to_string(c) + "]");
  }
  return out;
}

ShiftSpace parse_space(const json& root) {
  if (!root.contains("alphabet")) fail("alphabet", "missing");
  const int m = integer(root["alphabet"], "alphabet");
  if (m < 2) fail("alphabet", "must be >= 2");
  if (!root.contains("transitions")) return ShiftSpace::full(m);
  const Eigen::MatrixXd a = real_matrix(root["transitions"], m, "transitions");
  if (((a.array() != 0.0) && (a.array() != 1.0)).any()) fail("transitions", "entries must be 0 or 1");
  try {
    return ShiftSpace(a.cast<int>());
  } catch (const DomainError& e) {
    fail("transitions", e.what());
  }
}

MeasureModel parse_measure(const json& j, const ShiftSpace& space) {
  if (!j.is_object()) fail("measure", "expected an object");
  if (!j.contains("kind") || !j["kind"].is_string()) fail("measure.kind", "missing");
  const std::string kind = j["kind"].get<std::string>();
  const int m = space.alphabet_size();
  try {
    if (kind == "bernoulli") {
      if (!space.is_full()) fail("measure.kind", "bernoulli needs the full shift");
      if (!j.contains("p")) fail("measure.p", "missing");
      auto p = numbers(j["p"], "measure.p");
      if (static_cast<int>(p.size()) != m) fail("measure.p", "expected " + std::to_string(m) + " weights");
      return MeasureModel::bernoulli(std::move(p));
    }
    if (kind == "markov") {
      if (!j.contains("P")) fail("measure.P", "missing");
      const Eigen::MatrixXd P = real_matrix(j["P"], m, "measure.P");
      if (j.contains("pi")) {
        const auto pi = numbers(j["pi"], "measure.pi");
        if (static_cast<int>(pi.size()) != m) fail("measure.pi", "expected " + std::to_string(m) + " entries");
        return MeasureModel::markov(space, P, Eigen::Map<const Eigen::VectorXd>(pi.data(), m));
      }
      return MeasureModel::markov(space, P);
    }
    if (kind == "gibbs") {
      Potential psi;
      if (j.contains("r")) psi.r = integer(j["r"], "measure.r");
      if (!j.contains("psi") || !j["psi"].is_object()) fail("measure.psi", "expected an object of word: value");
      for (const auto& [key, value] : j["psi"].items()) {
        psi.table[word(json(key), "measure.psi")] = number(value, "measure.psi." + key);
      }
      return MeasureModel::gibbs(space, psi);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const DomainError& e) {
    fail("measure", e.what());
  }
  fail("measure.kind", "unknown kind '" + kind + "' (expected bernoulli, markov or gibbs)");
}

std::vector<ScheduleEntry> parse_schedule(const json& j) {
  if (!j.is_array() || j.empty()) fail("schedule", "expected a non-empty array");
  std::vector<ScheduleEntry> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string f = "schedule[" + std::to_string(i) + "]";
    const json& e = j[i];
    ScheduleEntry entry{};
    if (e.is_number_integer()) {
      entry.N = entry.D = e.get<int>();
    } else if (e.is_object() && e.contains("N")) {
      entry.N = integer(e["N"], f + ".N");
      entry.D = e.contains("D") ? integer(e["D"], f + ".D") : entry.N;
    } else {
      fail(f, "expected N or {\"N\": .., \"D\": ..}");
    }
    if (entry.N < 1) fail(f, "N must be >= 1");
    if (entry.D < entry.N) fail(f, "D must be >= N");
    out.push_back(entry);
  }
  return out;
}

int positive(const json& j, const std::string& field, int min_value) {
  const int v = integer(j, field);
  if (v < min_value) fail(field, "must be >= " + std::to_string(min_value));
  return v;
}

ExperimentConfig parse_root(const json& root) {
  if (!root.is_object()) throw ConfigError("config: expected a JSON object");
  ExperimentConfig c;
  c.space = parse_space(root);
  if (!root.contains("measure")) fail("measure", "missing");
  c.measure = parse_measure(root["measure"], c.space);

  c.q_grid = root.contains("q_grid") ? sorted_grid(root["q_grid"], "q_grid") : symmetric_grid(3.0, 0.25);
  if (root.contains("beta_grid")) c.beta_grid = sorted_grid(root["beta_grid"], "beta_grid");
  if (root.contains("k")) c.k = DepthOffset(positive(root["k"], "k", 0));
  if (root.contains("schedule")) c.schedule = parse_schedule(root["schedule"]);
  if (root.contains("set")) {
    c.set = words(root["set"], "set");
    try {
      (void)CylinderSet(c.space, c.set);
    } catch (const DomainError& e) {
      fail("set", e.what());
    }
  }
  if (root.contains("q")) c.q = number(root["q"], "q");
  if (root.contains("t")) c.t = number(root["t"], "t");
  if (root.contains("N")) c.N = positive(root["N"], "N", 1);
  if (root.contains("D")) c.D = positive(root["D"], "D", 1);
  if (c.D < c.N) fail("D", "must be >= N");
  if (root.contains("cover_depth")) c.cover_depth = positive(root["cover_depth"], "cover_depth", 0);
  if (root.contains("doubling")) {
    const json& d = root["doubling"];
    if (!d.is_object()) fail("doubling", "expected an object");
    if (d.contains("k")) c.doubling_k = positive(d["k"], "doubling.k", 1);
    if (d.contains("n_max")) c.doubling_n_max = positive(d["n_max"], "doubling.n_max", 1);
  }
  if (root.contains("local")) {
    const json& l = root["local"];
    if (!l.is_object()) fail("local", "expected an object");
    if (l.contains("n_max")) c.n_max = positive(l["n_max"], "local.n_max", 1);
    if (l.contains("samples")) c.samples = static_cast<std::size_t>(positive(l["samples"], "local.samples", 1));
    if (l.contains("tail_fraction")) {
      c.tail_fraction = number(l["tail_fraction"], "local.tail_fraction");
      if (!(c.tail_fraction > 0.0 && c.tail_fraction <= 1.0)) fail("local.tail_fraction", "must lie in (0, 1]");
    }
    if (l.contains("words")) c.words = words(l["words"], "local.words");
  }
  if (root.contains("n")) c.n = positive(root["n"], "n", 3);
  if (root.contains("bin_width")) {
    c.bin_width = number(root["bin_width"], "bin_width");
    if (!(c.bin_width > 0.0)) fail("bin_width", "must be > 0");
  }
  if (root.contains("window")) {
    c.window = number(root["window"], "window");
    if (!(c.window > 0.0)) fail("window", "must be > 0");
  }
  if (root.contains("identity_q")) c.identity_q = numbers(root["identity_q"], "identity_q");
  if (root.contains("gibbs_q")) c.gibbs_q = numbers(root["gibbs_q"], "gibbs_q");
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned() && !(root["seed"].is_number_integer() && root["seed"].get<long long>() >= 0))
      fail("seed", "expected a non-negative integer");
    c.seed = root["seed"].get<std::uint64_t>();
  }
  return c;
}

}  // namespace

const MeasureModel& ExperimentConfig::model() const {
  if (!measure) throw ConfigError("measure: missing");
  return *measure;
}

CylinderSet ExperimentConfig::target_set() const {
  return set.empty() ? CylinderSet::whole(space) : CylinderSet(space, set);
}

ExperimentConfig parse_config_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_root(root);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

}  // namespace mfent
