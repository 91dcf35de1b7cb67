#include "icnsim/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace icnsim {

using nlohmann::json;

namespace {

class ConfigReader
{
public:
  ConfigReader(const json& node, std::string path)
    : m_node(node)
    , m_path(std::move(path))
  {
    if (!m_node.is_object()) {
      throw ParseError(displayPath(), "expected a map");
    }
  }

  /// Rejects keys outside `allowed`.
  void
  only(std::initializer_list<const char*> allowed) const
  {
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : m_node.items()) {
      if (ok.count(key) == 0) {
        throw ParseError(child(key), "unknown key");
      }
    }
  }

  bool
  has(const char* key) const
  {
    return m_node.contains(key);
  }

  const json&
  at(const char* key) const
  {
    return m_node.at(key);
  }

  std::string
  child(const std::string& key) const
  {
    return m_path.empty() ? key : m_path + "." + key;
  }

  template<typename T>
  void
  read(const char* key, T& out) const
  {
    if (!has(key)) {
      return;
    }
    out = as<T>(m_node.at(key), child(key));
  }

  template<typename T>
  static T
  as(const json& v, const std::string& path)
  {
    if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) {
        throw ParseError(path, "expected a string");
      }
      return v.get<std::string>();
    }
    else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) {
        throw ParseError(path, "expected an integer");
      }
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_unsigned() || v.get<std::int64_t>() >= 0) {
          return v.get<T>();
        }
        throw ParseError(path, "expected a non-negative integer");
      }
      else {
        return v.get<T>();
      }
    }
    else {
      if (!v.is_number()) {
        throw ParseError(path, "expected a number");
      }
      return v.get<T>();
    }
  }

private:
  std::string
  displayPath() const
  {
    return m_path.empty() ? "<root>" : m_path;
  }

  const json& m_node;
  std::string m_path;
};

void
validationError(const std::string& what)
{
  throw Error(ErrorCode::ValidationError, what);
}

TopologySpec
readTopology(const json& node)
{
  ConfigReader r(node, "topology");
  r.only({"ws", "file"});
  if (r.has("ws") == r.has("file")) {
    throw ParseError("topology", "expected exactly one of 'ws' or 'file'");
  }
  if (r.has("ws")) {
    ConfigReader ws(r.at("ws"), "topology.ws");
    ws.only({"n", "k", "p"});
    WsTopology t;
    ws.read("n", t.n);
    ws.read("k", t.k);
    ws.read("p", t.p);
    return t;
  }
  return FileTopology{ConfigReader::as<std::string>(r.at("file"), "topology.file")};
}

} // namespace

void
ExperimentConfig::validate() const
{
  if (const auto* ws = std::get_if<WsTopology>(&topology)) {
    if (ws->n < 3 || ws->k < 1 || ws->k >= ws->n || !(ws->p >= 0.0 && ws->p <= 1.0)) {
      validationError("topology.ws: require n >= 3, 1 <= k < n, 0 <= p <= 1");
    }
  }
  else if (std::get<FileTopology>(topology).path.empty()) {
    validationError("topology.file: empty path");
  }
  if (topologyRealizations < 0) {
    validationError("topology_realizations must be >= 0");
  }
  if (topologyRealizations > 0 && !std::holds_alternative<WsTopology>(topology)) {
    validationError("topology_realizations needs a generated (ws) topology");
  }
  if (policies.empty()) {
    validationError("policies: at least one policy required");
  }
  try {
    ucWeights.validate();
  }
  catch (const Error& e) {
    validationError(std::string("uc_weights: ") + e.what());
  }
  if (catalogSize < 1) {
    validationError("catalog_size must be >= 1");
  }
  if (cachePctSweep.empty()) {
    validationError("cache_pct_sweep: at least one point required");
  }
  for (double pct : cachePctSweep) {
    if (!(pct > 0.0 && pct <= 100.0)) {
      validationError("cache_pct_sweep: " + formatNumber(pct) + " outside (0, 100]");
    }
  }
  if (mzipfSets.empty()) {
    validationError("mzipf_sets: at least one set required");
  }
  for (const auto& z : mzipfSets) {
    if (!(z.alpha > 0.0) || !(z.q >= 0.0)) {
      validationError("mzipf_sets: require alpha > 0 and q >= 0");
    }
  }
  if (!(aggregateRate > 0.0)) {
    validationError("aggregate_rate must be > 0");
  }
  if (!(duration > warmup && warmup >= 0.0)) {
    validationError("require duration > warmup >= 0");
  }
  if (replications < 1) {
    validationError("replications must be >= 1");
  }
  if (!(pitLifetime > 0.0)) {
    validationError("pit_lifetime must be > 0");
  }
  if (!(linkDelay >= 0.0)) {
    validationError("link_delay must be >= 0");
  }
}

ExperimentConfig
parseConfig(std::string_view text)
{
  json root;
  try {
    root = json::parse(text);
  }
  catch (const json::parse_error& e) {
    throw ParseError(std::string("<root>"), e.what());
  }

  ConfigReader r(root, "");
  r.only({"topology", "policies", "uc_weights", "catalog_size", "cache_pct_sweep", "mzipf_sets",
          "aggregate_rate", "duration", "warmup", "replications", "base_seed", "pit_lifetime",
          "link_delay", "arrival_process", "producer_placement", "single_producer",
          "topology_realizations"});

  ExperimentConfig cfg;
  if (!r.has("topology")) {
    throw ParseError(std::string("topology"), "required key missing");
  }
  cfg.topology = readTopology(r.at("topology"));

  if (r.has("policies")) {
    const auto& list = r.at("policies");
    if (!list.is_array()) {
      throw ParseError(std::string("policies"), "expected a list");
    }
    cfg.policies.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      auto path = "policies[" + std::to_string(i) + "]";
      try {
        auto kind = parsePolicyKind(ConfigReader::as<std::string>(list[i], path));
        if (std::find(cfg.policies.begin(), cfg.policies.end(), kind) == cfg.policies.end()) {
          cfg.policies.push_back(kind);
        }
      }
      catch (const ParseError&) {
        throw;
      }
      catch (const Error& e) {
        throw ParseError(path, e.what());
      }
    }
  }

  if (r.has("uc_weights")) {
    ConfigReader w(r.at("uc_weights"), "uc_weights");
    w.only({"frequency", "distance", "reachability"});
    w.read("frequency", cfg.ucWeights.frequency);
    w.read("distance", cfg.ucWeights.distance);
    w.read("reachability", cfg.ucWeights.reachability);
  }

  r.read("catalog_size", cfg.catalogSize);

  if (r.has("cache_pct_sweep")) {
    const auto& list = r.at("cache_pct_sweep");
    if (!list.is_array()) {
      throw ParseError(std::string("cache_pct_sweep"), "expected a list");
    }
    cfg.cachePctSweep.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      cfg.cachePctSweep.push_back(ConfigReader::as<double>(list[i], "cache_pct_sweep[" + std::to_string(i) + "]"));
    }
  }

  if (r.has("mzipf_sets")) {
    const auto& list = r.at("mzipf_sets");
    if (!list.is_array()) {
      throw ParseError(std::string("mzipf_sets"), "expected a list");
    }
    cfg.mzipfSets.clear();
    for (std::size_t i = 0; i < list.size(); ++i) {
      ConfigReader z(list[i], "mzipf_sets[" + std::to_string(i) + "]");
      z.only({"q", "alpha"});
      if (!z.has("q") || !z.has("alpha")) {
        throw ParseError(z.child("alpha"), "both 'q' and 'alpha' are required");
      }
      MZipfSet set;
      z.read("q", set.q);
      z.read("alpha", set.alpha);
      cfg.mzipfSets.push_back(set);
    }
  }

  r.read("aggregate_rate", cfg.aggregateRate);
  r.read("duration", cfg.duration);
  if (r.has("warmup")) {
    r.read("warmup", cfg.warmup);
  }
  else {
    cfg.warmup = 0.1 * cfg.duration;
  }
  r.read("replications", cfg.replications);
  r.read("base_seed", cfg.baseSeed);
  r.read("pit_lifetime", cfg.pitLifetime);
  r.read("link_delay", cfg.linkDelay);

  if (r.has("arrival_process")) {
    auto v = ConfigReader::as<std::string>(r.at("arrival_process"), "arrival_process");
    if (v == "poisson") {
      cfg.arrivals = ArrivalProcess::Poisson;
    }
    else if (v == "periodic") {
      cfg.arrivals = ArrivalProcess::Periodic;
    }
    else {
      throw ParseError(std::string("arrival_process"), "expected 'poisson' or 'periodic'");
    }
  }
  if (r.has("producer_placement")) {
    auto v = ConfigReader::as<std::string>(r.at("producer_placement"), "producer_placement");
    if (v == "random") {
      cfg.placement = ProducerPlacement::Random;
    }
    else if (v == "single") {
      cfg.placement = ProducerPlacement::Single;
    }
    else {
      throw ParseError(std::string("producer_placement"), "expected 'random' or 'single'");
    }
  }
  r.read("single_producer", cfg.singleProducer);
  r.read("topology_realizations", cfg.topologyRealizations);

  cfg.validate();
  return cfg;
}

ExperimentConfig
loadConfigFile(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  ExperimentConfig cfg = parseConfig(buf.str());

  // relative topology files resolve against the config's directory
  if (auto* file = std::get_if<FileTopology>(&cfg.topology)) {
    std::filesystem::path p(file->path);
    if (p.is_relative()) {
      file->path = (path.parent_path() / p).lexically_normal().string();
    }
  }
  return cfg;
}

std::size_t
cacheCapacity(double cachePct, std::int64_t catalogSize)
{
  auto slots = std::llround(cachePct / 100.0 * static_cast<double>(catalogSize));
  return static_cast<std::size_t>(std::max<long long>(1, slots));
}

std::string
topologyLabel(const TopologySpec& spec)
{
  if (const auto* ws = std::get_if<WsTopology>(&spec)) {
    return "ws_n" + std::to_string(ws->n) + "_k" + std::to_string(ws->k) + "_p" + formatNumber(ws->p);
  }
  return std::filesystem::path(std::get<FileTopology>(spec).path).stem().string();
}

std::vector<TopologyRealization>
buildTopologies(const ExperimentConfig& cfg)
{
  const SimTime delay = fromSeconds(cfg.linkDelay);
  const std::string label = topologyLabel(cfg.topology);
  std::vector<TopologyRealization> out;

  if (const auto* ws = std::get_if<WsTopology>(&cfg.topology)) {
    auto make = [&] (std::uint64_t seed) {
      Graph g = generateWattsStrogatz(ws->n, ws->k, ws->p, seed);
      return std::make_shared<const Graph>(g.nodeCount(), g.edges(), delay);
    };
    if (cfg.topologyRealizations == 0) {
      out.push_back({label, make(cfg.baseSeed)});
    }
    // generation retries walk seed, seed+1, ..., seed+16; stride 17 keeps realizations disjoint
    for (int j = 1; j <= cfg.topologyRealizations; ++j) {
      auto seed = cfg.baseSeed + 17 * static_cast<std::uint64_t>(j - 1);
      out.push_back({label + "/Topo-" + std::to_string(j), make(seed)});
    }
    return out;
  }

  out.push_back({label, std::make_shared<const Graph>(loadTopologyFile(std::get<FileTopology>(cfg.topology).path, delay))});
  return out;
}

SimulationConfig
makeSimulationConfig(const ExperimentConfig& cfg, std::shared_ptr<const Graph> graph,
                     std::shared_ptr<const MZipf> popularity, PolicyKind policy, double cachePct,
                     std::size_t replication)
{
  SimulationConfig sc;
  sc.graph = std::move(graph);
  sc.popularity = std::move(popularity);
  sc.policy = policy;
  sc.ucWeights = cfg.ucWeights;
  sc.csCapacity = cacheCapacity(cachePct, cfg.catalogSize);
  sc.aggregateRate = cfg.aggregateRate;
  sc.arrivals = cfg.arrivals;
  sc.duration = fromSeconds(cfg.duration);
  sc.warmup = fromSeconds(cfg.warmup);
  sc.pitLifetime = fromSeconds(cfg.pitLifetime);
  sc.placement = cfg.placement;
  sc.singleProducer = cfg.singleProducer;
  sc.seed = cfg.baseSeed + replication;
  return sc;
}

SweepResult
expandAndRun(const ExperimentConfig& cfg, const RunOptions& options)
{
  cfg.validate();
  const auto topologies = buildTopologies(cfg);

  std::vector<std::shared_ptr<const MZipf>> popularity;
  for (const auto& z : cfg.mzipfSets) {
    popularity.push_back(std::make_shared<const MZipf>(MZipfParams{z.alpha, z.q, cfg.catalogSize}));
  }

  struct Cell
  {
    CellKey key;
    std::shared_ptr<const Graph> graph;
    std::shared_ptr<const MZipf> popularity;
    std::vector<RunReport> runs;
    std::size_t finished = 0;
    bool failed = false;
  };
  std::vector<Cell> cells;
  for (const auto& topo : topologies) {
    for (PolicyKind policy : cfg.policies) {
      for (double pct : cfg.cachePctSweep) {
        for (std::size_t z = 0; z < cfg.mzipfSets.size(); ++z) {
          Cell c;
          c.key = CellKey{topo.label, policy, pct, cfg.mzipfSets[z].alpha, cfg.mzipfSets[z].q, cfg.catalogSize};
          c.graph = topo.graph;
          c.popularity = popularity[z];
          c.runs.resize(cfg.replications);
          cells.push_back(std::move(c));
        }
      }
    }
  }
  std::sort(cells.begin(), cells.end(), [] (const Cell& a, const Cell& b) { return a.key < b.key; });

  const std::size_t jobCount = cells.size() * cfg.replications;
  std::atomic<std::size_t> nextJob{0};
  std::mutex mutex;
  SweepResult result;

  auto worker = [&] {
    for (std::size_t job = nextJob++; job < jobCount; job = nextJob++) {
      Cell& cell = cells[job / cfg.replications];
      const std::size_t rep = job % cfg.replications;
      std::string error;
      RunReport report;
      try {
        Simulation sim(makeSimulationConfig(cfg, cell.graph, cell.popularity, cell.key.policy,
                                            cell.key.cachePct, rep));
        report = sim.run();
      }
      catch (const std::exception& e) {
        error = e.what();
      }

      std::lock_guard<std::mutex> lock(mutex);
      if (!error.empty()) {
        cell.failed = true;
        result.failures.push_back({cell.key, rep, error});
      }
      else {
        cell.runs[rep] = std::move(report);
      }
      if (++cell.finished == cfg.replications && !cell.failed && options.onCellDone) {
        options.onCellDone(summarize(cell.key, cfg.baseSeed, cell.runs));
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(options.parallel, static_cast<unsigned>(jobCount)));
  if (threads == 1) {
    worker();
  }
  else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
  }

  for (auto& cell : cells) {
    if (!cell.failed) {
      result.reports.push_back(summarize(cell.key, cfg.baseSeed, std::move(cell.runs)));
    }
  }
  std::sort(result.failures.begin(), result.failures.end(), [] (const CellFailure& a, const CellFailure& b) {
    return std::tie(a.cell, a.replication) < std::tie(b.cell, b.replication);
  });
  return result;
}

} // namespace icnsim
