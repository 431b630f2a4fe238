#pragma once

#include "modflow/cf.hpp"

namespace modflow {

// Lehner digit (a,e): (2,-1) or (1,+1).
enum class LehnerDigit { d21, d11 };

// Farey digit (f/b): (-1/2) or (+1/1).
enum class FareyDigit { m12, p11 };

inline mpz_class lehner_quotient(LehnerDigit d) { return d == LehnerDigit::d21 ? 2 : 1; }
inline int lehner_sign(LehnerDigit d) { return d == LehnerDigit::d21 ? -1 : +1; }
inline CFTerm lehner_term(LehnerDigit d) { return CFTerm{lehner_quotient(d), lehner_sign(d)}; }

inline int farey_numerator(FareyDigit d) { return d == FareyDigit::m12 ? -1 : +1; }
inline mpz_class farey_quotient(FareyDigit d) { return d == FareyDigit::m12 ? 2 : 1; }

// One-step Moebius maps: t -> a + e/t for Lehner terms, y -> f/(b + y) for
// Farey digits.
inline UnimodularMap lehner_step_matrix(LehnerDigit d) {
    return UnimodularMap(lehner_quotient(d), lehner_sign(d), 1, 0);
}
inline UnimodularMap farey_step_matrix(FareyDigit d) {
    return UnimodularMap(0, farey_numerator(d), 1, farey_quotient(d));
}

// Shared text encoding used by the JSON interfaces: "2-" and "1+".
inline const char* lehner_digit_code(LehnerDigit d) {
    return d == LehnerDigit::d21 ? "2-" : "1+";
}
inline const char* farey_digit_code(FareyDigit d) {
    return d == FareyDigit::m12 ? "2-" : "1+";
}

// The digit (e/a) dual to a Lehner digit (a,e), and back.
inline FareyDigit lehner_to_farey(LehnerDigit d) {
    return d == LehnerDigit::d21 ? FareyDigit::m12 : FareyDigit::p11;
}
inline LehnerDigit farey_to_lehner(FareyDigit d) {
    return d == FareyDigit::m12 ? LehnerDigit::d21 : LehnerDigit::d11;
}

}  // namespace modflow
