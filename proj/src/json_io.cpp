#include "modflow/json_io.hpp"

namespace modflow {

namespace {

json mpz_to_json(const mpz_class& n) {
    if (n.fits_slong_p()) return json(n.get_si());
    return json(n.get_str());
}

mpz_class mpz_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    if (j.is_string()) return mpz_class(j.get<std::string>());
    raise(errc::parse_error, "expected an integer digit");
}

json run_array(const std::vector<RcfDigit>& v) {
    json a = json::array();
    for (const auto& d : v) a.push_back(mpz_to_json(d.n));
    return a;
}

std::vector<RcfDigit> run_array_from(const json& a) {
    std::vector<RcfDigit> out;
    for (const auto& e : a) out.push_back(RcfDigit{mpz_from_json(e)});
    return out;
}

template <class A, class Code>
json coded_array(const std::vector<A>& v, Code code) {
    json a = json::array();
    for (A d : v) a.push_back(code(d));
    return a;
}

LehnerDigit lehner_digit_from(const std::string& s) {
    if (s == "2-") return LehnerDigit::d21;
    if (s == "1+") return LehnerDigit::d11;
    raise(errc::parse_error, "unknown lehner digit " + s);
}

FareyDigit farey_digit_from(const std::string& s) {
    if (s == "2-") return FareyDigit::m12;
    if (s == "1+") return FareyDigit::p11;
    raise(errc::parse_error, "unknown farey digit " + s);
}

}  // namespace

json rcf_to_json(const RcfExpansion& e) {
    return json{{"alphabet", "rcf"},
                {"head", mpz_to_json(e.head)},
                {"preperiod", run_array(e.digits.preperiod)},
                {"period", run_array(e.digits.period)}};
}

json lehner_to_json(const DigitSequence<LehnerDigit>& s, const std::string& alphabet) {
    return json{{"alphabet", alphabet},
                {"preperiod", coded_array(s.preperiod, lehner_digit_code)},
                {"period", coded_array(s.period, lehner_digit_code)}};
}

json farey_to_json(const DigitSequence<FareyDigit>& s) {
    return json{{"alphabet", "farey"},
                {"preperiod", coded_array(s.preperiod, farey_digit_code)},
                {"period", coded_array(s.period, farey_digit_code)}};
}

RcfExpansion rcf_from_json(const json& j) {
    if (j.value("alphabet", "") != "rcf") raise(errc::parse_error, "alphabet must be rcf");
    RcfExpansion e;
    e.head = mpz_from_json(j.at("head"));
    e.digits =
        DigitSequence<RcfDigit>(run_array_from(j.at("preperiod")), run_array_from(j.at("period")));
    return e;
}

DigitSequence<LehnerDigit> lehner_from_json(const json& j) {
    std::string alpha = j.value("alphabet", "");
    if (alpha != "lehner" && alpha != "fstar")
        raise(errc::parse_error, "alphabet must be lehner or fstar");
    std::vector<LehnerDigit> pre, per;
    for (const auto& e : j.at("preperiod")) pre.push_back(lehner_digit_from(e.get<std::string>()));
    for (const auto& e : j.at("period")) per.push_back(lehner_digit_from(e.get<std::string>()));
    return DigitSequence<LehnerDigit>(std::move(pre), std::move(per));
}

DigitSequence<FareyDigit> farey_from_json(const json& j) {
    if (j.value("alphabet", "") != "farey") raise(errc::parse_error, "alphabet must be farey");
    std::vector<FareyDigit> pre, per;
    for (const auto& e : j.at("preperiod")) pre.push_back(farey_digit_from(e.get<std::string>()));
    for (const auto& e : j.at("period")) per.push_back(farey_digit_from(e.get<std::string>()));
    return DigitSequence<FareyDigit>(std::move(pre), std::move(per));
}

json geodesic_to_json(const Geodesic& g) {
    return json{{"backward", g.backward.str()}, {"forward", g.forward.str()}};
}

Geodesic geodesic_from_json(const json& j) {
    return Geodesic{parse_exact(j.at("backward").get<std::string>()),
                    parse_exact(j.at("forward").get<std::string>())};
}

json cutting_sequence_to_json(const CuttingSequence& cs) {
    auto runs = [](const DigitSequence<RcfDigit>& r) {
        return json{{"preperiod", run_array(r.preperiod)}, {"period", run_array(r.period)}};
    };
    return json{{"runs_backward", runs(cs.backward_runs)},
                {"n0", mpz_to_json(cs.n0)},
                {"runs_forward", runs(cs.forward_runs)}};
}

CuttingSequence cutting_sequence_from_json(const json& j) {
    auto runs = [](const json& r) {
        return DigitSequence<RcfDigit>(run_array_from(r.at("preperiod")),
                                       run_array_from(r.at("period")));
    };
    CuttingSequence cs;
    cs.n0 = mpz_from_json(j.at("n0"));
    cs.forward_runs = runs(j.at("runs_forward"));
    cs.backward_runs = runs(j.at("runs_backward"));
    return cs;
}

}  // namespace modflow
