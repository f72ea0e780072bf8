#pragma once

// JSON encodings used by the command-line front end.

#include <nlohmann/json.hpp>

#include "blockpart/bench.hpp"
#include "blockpart/functionals.hpp"
#include "blockpart/oracle.hpp"
#include "blockpart/preprocess.hpp"
#include "blockpart/sequence.hpp"
#include "blockpart/streaming.hpp"

namespace blockpart {

// {"cuts":[...],"sizes":[...],"spread":x,"iterations":m,"termination":"..."}
// plus "diagnostic" when one was produced.
nlohmann::json as_json(const PartitionResult& r);
nlohmann::json as_json(const CutVector& cv);
nlohmann::json as_json(const OracleReport& r);
nlohmann::json as_json(const ConditionReport& r);
nlohmann::json as_json(const GroupedSequence& g);
nlohmann::json as_json(const StreamPlan& p);
// {"start":i,"end":j,"size":x}
nlohmann::json as_json(const EmittedBlock& b);
nlohmann::json as_json(const BenchReport& r);

// Reads the "cuts"/"sizes"/... object back; n and k are taken from the sizes.
PartitionResult partition_from_json(const nlohmann::json& j, std::size_t n);

}  // namespace blockpart
