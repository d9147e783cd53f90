#include "arealaw/cli/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>

#include "arealaw/core/random.hpp"
#include "arealaw/lattice/templates.hpp"

namespace arealaw::cli {

using nlohmann::json;

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <class T>
T get(const json& j, const char* key, const std::string& where, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

template <class T>
T require(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + " needs '" + key + "'");
  return get<T>(j, key, where, T{});
}

// Parsed documents give unsigned numbers; programmatically built ones may hold signed values.
bool non_negative_integer(const json& v) {
  return v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
}

std::size_t count(const json& j, const char* key, const std::string& where, std::size_t fallback) {
  if (j.contains(key) && !non_negative_integer(j.at(key))) throw ConfigError(where + "." + key + " must be a non-negative integer");
  return get<std::size_t>(j, key, where, fallback);
}

double positive(double v, const std::string& what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(what + " must be positive");
  return v;
}

std::optional<std::uint64_t> seed_of(const json& j, const std::string& where) {
  if (!j.contains("seed")) return std::nullopt;
  if (!non_negative_integer(j.at("seed"))) throw ConfigError(where + ".seed must be a non-negative integer");
  return j.at("seed").get<std::uint64_t>();
}

HamiltonianTemplate parse_hamiltonian(const json& j, const std::string& where) {
  check_keys(j, {"template", "J", "g", "strength", "support", "seed"}, where);
  HamiltonianTemplate h;
  h.name = require<std::string>(j, "template", where);
  static const std::set<std::string> known{"ising", "heisenberg", "transverse_field", "random_local"};
  if (!known.count(h.name)) throw ConfigError(where + ": unknown Hamiltonian template '" + h.name + "'");
  h.J = get<double>(j, "J", where, h.J);
  h.g = get<double>(j, "g", where, h.g);
  h.strength = get<double>(j, "strength", where, h.strength);
  h.support = count(j, "support", where, h.support);
  h.seed = seed_of(j, where);
  if (h.name == "random_local" && h.support < 1) throw ConfigError(where + ".support must be at least 1");
  return h;
}

InstrumentTemplate parse_instrument(const json& j, const std::string& where) {
  InstrumentTemplate t;
  if (j.is_string()) {
    t.name = j.get<std::string>();
  } else {
    check_keys(j, {"template", "p", "gamma", "anc_dim", "seed"}, where);
    t.name = require<std::string>(j, "template", where);
    t.p = get<double>(j, "p", where, t.p);
    t.gamma = get<double>(j, "gamma", where, t.gamma);
    t.anc_dim = count(j, "anc_dim", where, t.anc_dim);
    t.seed = seed_of(j, where);
  }
  static const std::set<std::string> known{"projective_z", "projective_x", "swap",  "identity", "depolarize",
                                           "amplitude_damp", "random_isometry", "flip", "none"};
  if (!known.count(t.name)) throw ConfigError(where + ": unknown instrument template '" + t.name + "'");
  if (t.p < 0 || t.p > 1) throw ConfigError(where + ".p must lie in [0, 1]");
  if (t.gamma < 0 || t.gamma > 1) throw ConfigError(where + ".gamma must lie in [0, 1]");
  if (t.anc_dim < 1) throw ConfigError(where + ".anc_dim must be positive");
  return t;
}

std::vector<std::size_t> sites(const json& j, const char* key, const std::string& where) {
  auto v = get<std::vector<std::size_t>>(j, key, where, {});
  return v;
}

CouplingConfig parse_coupling(const json& j, const std::string& where) {
  check_keys(j, {"op", "strength", "sites", "envelope"}, where);
  CouplingConfig c;
  c.op = get<std::string>(j, "op", where, "exchange");
  static const std::set<std::string> ops{"exchange", "xx", "swap", "none"};
  if (!ops.count(c.op)) throw ConfigError(where + ": unknown coupling operator '" + c.op + "'");
  c.strength = get<double>(j, "strength", where, c.strength);
  c.sites = sites(j, "sites", where);
  c.envelope = get<std::string>(j, "envelope", where, c.envelope);
  if (c.envelope != "constant" && c.envelope != "sine") throw ConfigError(where + ".envelope must be constant or sine");
  if (c.op != "none" && c.sites.empty()) throw ConfigError(where + ".sites must not be empty");
  return c;
}

Kind parse_kind(const std::string& s) {
  if (s == "area_sweep") return Kind::area_sweep;
  if (s == "sie_check") return Kind::sie_check;
  if (s == "signaling") return Kind::signaling;
  if (s == "harvest") return Kind::harvest;
  if (s == "process_measure") return Kind::process_measure;
  if (s == "validate") return Kind::validate;
  throw ConfigError("unknown kind '" + s + "'");
}

Track parse_track(const std::string& s) {
  if (s == "alice_only") return Track::alice_only;
  if (s == "alice_and_bob") return Track::alice_and_bob;
  if (s == "bob_only") return Track::bob_only;
  throw ConfigError("unknown track '" + s + "'");
}

void check_sites(const std::vector<std::size_t>& s, const LatticeSpec& lattice, const std::string& what) {
  for (std::size_t v : s)
    if (v >= lattice.num_sites()) throw ConfigError(what + " names site " + std::to_string(v) + " outside the lattice");
  std::vector<std::size_t> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ConfigError(what + " repeats a site");
}

}  // namespace

std::string kind_name(Kind k) {
  switch (k) {
    case Kind::area_sweep: return "area_sweep";
    case Kind::sie_check: return "sie_check";
    case Kind::signaling: return "signaling";
    case Kind::harvest: return "harvest";
    case Kind::process_measure: return "process_measure";
    case Kind::validate: return "validate";
  }
  return "?";
}

bool ExperimentConfig::randomized() const {
  for (const auto& h : hamiltonian)
    if (h.name == "random_local" && !h.seed) return true;
  auto random_ins = [](const InstrumentTemplate& t) { return t.randomized() && !t.seed; };
  switch (kind) {
    case Kind::area_sweep:
      return initial_state == "random" || random_ins(alice) || random_ins(bob);
    case Kind::sie_check: return true;
    case Kind::signaling:
      return initial_state == "random" || random_ins(signaling.bob) ||
             std::any_of(signaling.settings.begin(), signaling.settings.end(), random_ins);
    case Kind::harvest: return initial_state == "random";
    case Kind::process_measure: return true;  // optimizer restarts
    case Kind::validate: return false;
  }
  return false;
}

ExperimentConfig parse_config(const json& doc) {
  check_keys(doc, {"$schema", "kind", "description", "seed", "runs", "c_sie", "dim_cap", "lattice", "hamiltonian",
                   "sigma", "timing", "instruments", "initial_state", "track", "proof_chain", "sie", "signaling",
                   "harvest", "process", "target"},
             "config");
  ExperimentConfig cfg;
  cfg.source = doc;
  cfg.kind = parse_kind(require<std::string>(doc, "kind", "config"));
  cfg.seed = seed_of(doc, "config");
  cfg.runs = count(doc, "runs", "config", 1);
  if (cfg.runs < 1) throw ConfigError("config.runs must be at least 1");
  cfg.c_sie = positive(get<double>(doc, "c_sie", "config", cfg.c_sie), "c_sie");
  cfg.dim_cap = dim_cap_from_env(count(doc, "dim_cap", "config", tol::default_dim_cap));

  if (cfg.kind == Kind::validate) {
    cfg.target = require<std::string>(doc, "target", "config");
    return cfg;
  }

  if (cfg.kind != Kind::process_measure) {
    const json& lat = doc.contains("lattice") ? doc.at("lattice") : throw ConfigError("config needs 'lattice'");
    check_keys(lat, {"extents", "local_dim", "periodic"}, "lattice");
    cfg.lattice.extents = require<std::vector<std::size_t>>(lat, "extents", "lattice");
    cfg.lattice.local_dim = count(lat, "local_dim", "lattice", 2);
    if (lat.contains("periodic") && lat.at("periodic").is_boolean())
      cfg.lattice.periodic.assign(cfg.lattice.extents.size(), lat.at("periodic").get<bool>());
    else
      cfg.lattice.periodic = get<std::vector<bool>>(lat, "periodic", "lattice", {});
    try {
      cfg.lattice.validate();
    } catch (const Error& e) {
      throw ConfigError(std::string("lattice: ") + e.what());
    }

    if (!doc.contains("hamiltonian")) throw ConfigError("config needs 'hamiltonian'");
    const json& hs = doc.at("hamiltonian");
    if (hs.is_array()) {
      for (std::size_t k = 0; k < hs.size(); ++k)
        cfg.hamiltonian.push_back(parse_hamiltonian(hs[k], "hamiltonian[" + std::to_string(k) + "]"));
    } else {
      cfg.hamiltonian.push_back(parse_hamiltonian(hs, "hamiltonian"));
    }

    cfg.sigma = require<std::vector<std::size_t>>(doc, "sigma", "config");
    check_sites(cfg.sigma, cfg.lattice, "sigma");
    if (cfg.sigma.empty()) throw ConfigError("sigma must not be empty");
    if (cfg.sigma.size() == cfg.lattice.num_sites() && cfg.kind != Kind::area_sweep)
      throw ConfigError("sigma must leave a non-empty complement");
  }

  if (doc.contains("timing")) {
    const json& t = doc.at("timing");
    check_keys(t, {"steps_before", "T_steps", "steps_after", "dt"}, "timing");
    cfg.timing.steps_before = count(t, "steps_before", "timing", cfg.timing.steps_before);
    cfg.timing.steps_after = count(t, "steps_after", "timing", cfg.timing.steps_after);
    if (t.contains("T_steps"))
      cfg.timing.T_steps = t.at("T_steps").is_array() ? get<std::vector<std::size_t>>(t, "T_steps", "timing", {})
                                                      : std::vector<std::size_t>{count(t, "T_steps", "timing", 1)};
    cfg.timing.dt = positive(get<double>(t, "dt", "timing", cfg.timing.dt), "timing.dt");
    if (cfg.timing.T_steps.empty()) throw ConfigError("timing.T_steps must not be empty");
    for (auto T : cfg.timing.T_steps)
      if (T < 1) throw ConfigError("timing.T_steps entries must be at least 1");
  }
  if (doc.contains("instruments")) {
    const json& ins = doc.at("instruments");
    check_keys(ins, {"alice", "bob"}, "instruments");
    if (ins.contains("alice")) cfg.alice = parse_instrument(ins.at("alice"), "instruments.alice");
    if (ins.contains("bob")) cfg.bob = parse_instrument(ins.at("bob"), "instruments.bob");
  }
  cfg.initial_state = get<std::string>(doc, "initial_state", "config", cfg.initial_state);
  static const std::set<std::string> states{"zero", "random", "neel", "bell_boundary"};
  if (!states.count(cfg.initial_state)) throw ConfigError("unknown initial_state '" + cfg.initial_state + "'");
  if (doc.contains("track")) cfg.track = parse_track(get<std::string>(doc, "track", "config", ""));
  cfg.proof_chain = get<bool>(doc, "proof_chain", "config", cfg.proof_chain);
  if (cfg.proof_chain && cfg.track == Track::bob_only) throw ConfigError("proof_chain needs Alice's ancillas tracked");

  if (doc.contains("sie")) {
    const json& s = doc.at("sie");
    check_keys(s, {"dt", "ancillas"}, "sie");
    cfg.sie_dt = positive(get<double>(s, "dt", "sie", cfg.sie_dt), "sie.dt");
    cfg.sie_ancillas = count(s, "ancillas", "sie", cfg.sie_ancillas);
  }

  if (cfg.kind == Kind::signaling) {
    if (!doc.contains("signaling")) throw ConfigError("signaling config needs 'signaling'");
    const json& s = doc.at("signaling");
    check_keys(s, {"settings", "probabilities", "bob_sites", "bob"}, "signaling");
    const json& settings = s.contains("settings") ? s.at("settings") : throw ConfigError("signaling needs 'settings'");
    if (!settings.is_array() || settings.size() < 1) throw ConfigError("signaling.settings must be a non-empty array");
    for (std::size_t k = 0; k < settings.size(); ++k)
      cfg.signaling.settings.push_back(parse_instrument(settings[k], "signaling.settings[" + std::to_string(k) + "]"));
    cfg.signaling.probabilities = get<std::vector<double>>(s, "probabilities", "signaling", {});
    if (!cfg.signaling.probabilities.empty() && cfg.signaling.probabilities.size() != settings.size())
      throw ConfigError("signaling.probabilities must have one entry per setting");
    cfg.signaling.bob_sites = require<std::vector<std::size_t>>(s, "bob_sites", "signaling");
    check_sites(cfg.signaling.bob_sites, cfg.lattice, "signaling.bob_sites");
    for (auto b : cfg.signaling.bob_sites)
      if (std::find(cfg.sigma.begin(), cfg.sigma.end(), b) != cfg.sigma.end())
        throw ConfigError("signaling.bob_sites must lie outside sigma");
    if (s.contains("bob")) cfg.signaling.bob = parse_instrument(s.at("bob"), "signaling.bob");
  }

  if (cfg.kind == Kind::harvest) {
    if (!doc.contains("harvest")) throw ConfigError("harvest config needs 'harvest'");
    const json& h = doc.at("harvest");
    check_keys(h, {"m", "t_start", "t_alpha", "t_beta", "t_end", "detector_dim", "a_sigma", "b_complement", "b_sigma"},
               "harvest");
    cfg.harvest.m = get<std::vector<std::size_t>>(h, "m", "harvest", cfg.harvest.m);
    if (cfg.harvest.m.empty()) throw ConfigError("harvest.m must not be empty");
    for (auto m : cfg.harvest.m)
      if (m < 1) throw ConfigError("harvest.m entries must be at least 1");
    cfg.harvest.t_start = get<double>(h, "t_start", "harvest", cfg.harvest.t_start);
    cfg.harvest.t_alpha = get<double>(h, "t_alpha", "harvest", cfg.harvest.t_alpha);
    cfg.harvest.t_beta = get<double>(h, "t_beta", "harvest", cfg.harvest.t_beta);
    if (h.contains("t_end")) cfg.harvest.t_end = get<double>(h, "t_end", "harvest", 0.0);
    if (!(cfg.harvest.t_beta > cfg.harvest.t_alpha)) throw ConfigError("harvest needs t_beta > t_alpha");
    if (cfg.harvest.t_start > cfg.harvest.t_alpha) throw ConfigError("harvest needs t_start <= t_alpha");
    if (cfg.harvest.t_end && *cfg.harvest.t_end < cfg.harvest.t_beta) throw ConfigError("harvest needs t_end >= t_beta");
    cfg.harvest.detector_dim = count(h, "detector_dim", "harvest", cfg.harvest.detector_dim);
    if (cfg.harvest.detector_dim < 1) throw ConfigError("harvest.detector_dim must be positive");
    if (h.contains("a_sigma")) cfg.harvest.a_sigma = parse_coupling(h.at("a_sigma"), "harvest.a_sigma");
    if (h.contains("b_complement")) cfg.harvest.b_complement = parse_coupling(h.at("b_complement"), "harvest.b_complement");
    if (h.contains("b_sigma")) cfg.harvest.b_sigma = parse_coupling(h.at("b_sigma"), "harvest.b_sigma");
    for (const auto* c : {&cfg.harvest.a_sigma, &cfg.harvest.b_complement, &cfg.harvest.b_sigma})
      check_sites(c->sites, cfg.lattice, "harvest coupling sites");
  }

  if (cfg.kind == Kind::process_measure) {
    const json& p = doc.contains("process") ? doc.at("process") : throw ConfigError("process_measure needs 'process'");
    check_keys(p, {"source", "state", "channel", "p", "memory", "path", "group", "restarts", "iterations",
                   "max_ancilla_dim"},
               "process");
    auto& pc = cfg.process;
    pc.source = get<std::string>(p, "source", "process", pc.source);
    static const std::set<std::string> sources{"counterexample", "state", "channel", "random_causal", "file"};
    if (!sources.count(pc.source)) throw ConfigError("unknown process source '" + pc.source + "'");
    pc.state = get<std::string>(p, "state", "process", pc.state);
    if (pc.state != "bell" && pc.state != "product" && pc.state != "random_mixed")
      throw ConfigError("process.state must be bell, product or random_mixed");
    pc.channel = get<std::string>(p, "channel", "process", pc.channel);
    if (pc.channel != "identity" && pc.channel != "depolarize")
      throw ConfigError("process.channel must be identity or depolarize");
    pc.p = get<double>(p, "p", "process", pc.p);
    if (pc.p < 0 || pc.p > 1) throw ConfigError("process.p must lie in [0, 1]");
    pc.memory = count(p, "memory", "process", pc.memory);
    if (pc.memory < 1) throw ConfigError("process.memory must be positive");
    if (pc.source == "file") pc.path = require<std::string>(p, "path", "process");
    pc.group = get<std::vector<std::size_t>>(p, "group", "process", pc.group);
    pc.restarts = count(p, "restarts", "process", pc.restarts);
    pc.iterations = count(p, "iterations", "process", pc.iterations);
    pc.max_ancilla_dim = count(p, "max_ancilla_dim", "process", pc.max_ancilla_dim);
  }

  if (cfg.randomized() && !cfg.seed) throw ConfigError("a seed is required for randomized runs");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
  }
  auto cfg = parse_config(doc);
  if (cfg.kind == Kind::validate && cfg.target.is_relative()) cfg.target = path.parent_path() / cfg.target;
  if (cfg.kind == Kind::process_measure && cfg.process.source == "file" && cfg.process.path.is_relative())
    cfg.process.path = path.parent_path() / cfg.process.path;
  return cfg;
}

std::size_t dim_cap_from_env(std::size_t fallback) {
  const char* env = std::getenv("AREALAW_DIM_CAP");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw ConfigError("AREALAW_DIM_CAP must be a positive integer");
  return static_cast<std::size_t>(v);
}

LocalHamiltonian build_hamiltonian(const ExperimentConfig& cfg, std::uint64_t run_seed) {
  std::vector<HamiltonianTerm> terms;
  std::size_t range = 0;
  for (std::size_t k = 0; k < cfg.hamiltonian.size(); ++k) {
    const auto& t = cfg.hamiltonian[k];
    LocalHamiltonian part = [&] {
      try {
        if (t.name == "ising") return hamiltonians::ising(cfg.lattice, t.J, t.g);
        if (t.name == "heisenberg") return hamiltonians::heisenberg(cfg.lattice, t.J);
        if (t.name == "transverse_field") return hamiltonians::transverse_field(cfg.lattice, t.g);
        return hamiltonians::random_local(cfg.lattice, t.support, t.strength, t.seed ? *t.seed : mix_seed(run_seed, 0x4A, k));
      } catch (const ValidationError& e) {
        throw ConfigError("hamiltonian[" + std::to_string(k) + "]: " + e.what());
      }
    }();
    range = std::max(range, part.range());
    terms.insert(terms.end(), part.terms().begin(), part.terms().end());
  }
  return LocalHamiltonian(cfg.lattice, std::move(terms), range);
}

}  // namespace arealaw::cli
