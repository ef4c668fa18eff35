#pragma once

// JSON serialization for every artifact the lab produces, plus content
// hashing for reproducibility checks.  All doubles round-trip losslessly:
// finite values use the shortest digit string that parses back to the same
// IEEE double (the library serializer already guarantees this), and
// non-finite values become the strings "inf" / "-inf" / "nan" so they survive
// a trip through the file instead of degrading to null.  Machine artifacts
// carry no timestamps: identical inputs must produce identical bytes.

#include <string>

#include <json.hpp>

#include "dmclab/capacity.hpp"
#include "dmclab/channel.hpp"
#include "dmclab/commitment.hpp"
#include "dmclab/security.hpp"
#include "dmclab/typicality.hpp"

namespace dmclab {

using json = nlohmann::ordered_json;

// Lossless double <-> JSON (non-finite values as strings).
json number_to_json(double v);
double number_from_json(const json& j);

json to_json(const Distribution& p);
Distribution distribution_from_json(const json& j);

// {"input": [...], "output": [...], "matrix": [[...], ...]}
json to_json(const Channel& w);
Channel channel_from_json(const json& j);

json to_json(const ReductionReport& r);
json to_json(const CapacityResult& r);
json to_json(const CapacityReport& r);
json to_json(const BoundCheckResult& r);
json to_json(const std::vector<BoundCheckResult>& rs);
json to_json(const ParameterSet& ps);
ParameterSet parameter_set_from_json(const json& j);
json to_json(const CodebookBuildLog& log);
json to_json(const Codebook& book);
Codebook codebook_from_json(const json& j);
json to_json(const Transcript& t);
json to_json(const TvResult& r);
json to_json(const SoundnessResult& r);
json to_json(const SecurityReport& r);
json to_json(const ChainCheck& c);
json to_json(const ConverseAudit& a);

// File helpers; save_json ends the file with a newline.
json load_json(const std::string& path);
void save_json(const json& j, const std::string& path);
Channel load_channel(const std::string& path);

// FNV-1a 64 over the compact dump; stable across platforms because the dump
// itself is byte-stable.
std::string json_hash(const json& j);

}  // namespace dmclab
