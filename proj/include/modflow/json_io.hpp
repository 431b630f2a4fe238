#pragma once

#include <json.hpp>

#include "modflow/geodesics.hpp"
#include "modflow/mobius_system.hpp"

namespace modflow {

using json = nlohmann::json;

// Digit sequences: {"alphabet": ..., "head": n (rcf only),
// "preperiod": [...], "period": [...]}; rcf digits are numbers, the two-digit
// alphabets encode as "2-" / "1+".
json rcf_to_json(const RcfExpansion& e);
json lehner_to_json(const DigitSequence<LehnerDigit>& s, const std::string& alphabet = "lehner");
json farey_to_json(const DigitSequence<FareyDigit>& s);

RcfExpansion rcf_from_json(const json& j);
DigitSequence<LehnerDigit> lehner_from_json(const json& j);
DigitSequence<FareyDigit> farey_from_json(const json& j);

json geodesic_to_json(const Geodesic& g);
Geodesic geodesic_from_json(const json& j);

json cutting_sequence_to_json(const CuttingSequence& cs);
CuttingSequence cutting_sequence_from_json(const json& j);

}  // namespace modflow
