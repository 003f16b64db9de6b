#ifndef SZPIRO_SERIALIZE_HPP
#define SZPIRO_SERIALIZE_HPP

#include <string>

#include "json.hpp"

#include "szpiro/abc.hpp"
#include "szpiro/elliptic.hpp"
#include "szpiro/modcount.hpp"
#include "szpiro/quadratic.hpp"

namespace szpiro {

// All numeric payloads are serialized as decimal strings; doubles use 17
// significant digits so equal values always produce equal bytes.
std::string fmt_double(double v);

nlohmann::json to_json(const AbcReport& r);
nlohmann::json to_json(const WeierstrassModel& m);
nlohmann::json to_json(const LocalReduction& lr);
nlohmann::json to_json(const CurveData& cd);
nlohmann::json to_json(const BoundReport& br);
nlohmann::json to_json(const CensusResult& cr);

// Envelope with the schema marker; `dump(2)` of this is the CLI contract.
nlohmann::json envelope(const std::string& kind, nlohmann::json payload);

std::string dump_json(const nlohmann::json& j);

}  // namespace szpiro

#endif
