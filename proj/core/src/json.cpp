#include "blockpart/json.hpp"

#include "blockpart/error.hpp"

namespace blockpart {

using nlohmann::json;

json as_json(const CutVector& cv) { return json(cv.cuts()); }

json as_json(const PartitionResult& r) {
  json j{{"cuts", as_json(r.cuts)},
         {"sizes", r.sizes},
         {"spread", r.spread},
         {"iterations", r.iterations},
         {"termination", std::string(to_string(r.termination))}};
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

json as_json(const OracleReport& r) {
  return json{{"min_spread", r.min_spread},
              {"argmin", as_json(r.argmin)},
              {"partitions_examined", r.partitions_examined}};
}

namespace {

json interval(const Interval& b) { return json::array({b.begin, b.end}); }

json witness(const std::optional<ConditionWitness>& w) {
  if (!w) return nullptr;
  return json{{"first", interval(w->first)},
              {"second", interval(w->second)},
              {"first_size", w->first_size},
              {"second_size", w->second_size}};
}

}  // namespace

json as_json(const ConditionReport& r) {
  return json{{"holds_i", r.holds.nonnegative},
              {"holds_ii", r.holds.unit_growth},
              {"holds_iii", r.holds.unit_change},
              {"witness", witness(r.witness)},
              {"witness_i", witness(r.nonnegative_witness)},
              {"witness_ii", witness(r.unit_growth_witness)},
              {"witness_iii", witness(r.unit_change_witness)},
              {"blocks_tested", r.blocks_tested},
              {"pairs_tested", r.pairs_tested}};
}

json as_json(const GroupedSequence& g) {
  json groups = json::array();
  for (const auto& b : g.groups) groups.push_back(interval(b));
  return json{{"groups", groups}, {"sizes", g.sizes}, {"merges", g.merges}};
}

json as_json(const StreamPlan& p) {
  json j{{"target", p.target},
         {"branch", std::string(to_string(p.branch))},
         {"k_found", p.k_found ? json(*p.k_found) : json(nullptr)},
         {"horizon", p.horizon},
         {"prefix_sizes", p.prefix_sizes},
         {"consumed", p.consumed}};
  j["horizon_cuts"] = p.horizon_cuts ? as_json(*p.horizon_cuts) : json(nullptr);
  return j;
}

json as_json(const EmittedBlock& b) {
  return json{{"start", b.begin}, {"end", b.end}, {"size", b.size}};
}

json as_json(const BenchReport& r) {
  json cells = json::array();
  for (const auto& c : r.cells) {
    cells.push_back(json{{"n", c.n},
                         {"k", c.k},
                         {"mean_iterations", c.mean_iterations},
                         {"max_iterations", c.max_iterations},
                         {"bound", c.bound}});
  }
  json exponents = json::object();
  for (const auto& [k, e] : r.exponent_by_k) exponents[std::to_string(k)] = e;
  json j{{"generator", kBenchGenerator},
         {"seed", r.seed},
         {"trials", r.trials},
         {"init", r.init == BenchInit::first_block ? "first_block" : "threshold"},
         {"cells", cells},
         {"fitted_exponent", exponents},
         {"max_fitted_exponent", r.max_exponent ? json(*r.max_exponent) : json(nullptr)}};
  if (r.violation) {
    const auto& v = *r.violation;
    j["violation"] = json{{"n", v.n},         {"k", v.k},
                          {"trial", v.trial}, {"trial_seed", v.trial_seed},
                          {"sequence", v.sequence}, {"iterations", v.iterations},
                          {"reason", v.reason}};
  }
  return j;
}

PartitionResult partition_from_json(const json& j, std::size_t n) {
  try {
    auto sizes = j.at("sizes").get<std::vector<double>>();
    auto cuts = j.at("cuts").get<std::vector<std::size_t>>();
    const std::string t = j.at("termination").get<std::string>();
    Termination term = Termination::converged;
    if (t == "iteration_cap") term = Termination::iteration_cap;
    else if (t == "solver_fallback") term = Termination::solver_fallback;
    else if (t != "converged") throw ValidationError("unknown termination '" + t + "'");
    const std::size_t k = sizes.size();
    return PartitionResult{CutVector(n, k, std::move(cuts)), std::move(sizes),
                           j.at("spread").get<double>(), j.at("iterations").get<std::size_t>(),
                           term, j.value("diagnostic", std::string())};
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed partition JSON: ") + e.what());
  }
}

}  // namespace blockpart
