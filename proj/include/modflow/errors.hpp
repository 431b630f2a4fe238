#pragma once

#include <stdexcept>
#include <string>

namespace modflow {

// Typed failure codes shared by the whole library. Every domain error the
// public operations can raise appears here so callers (and tests) can match
// on the code instead of parsing messages.
enum class errc {
    invalid_number,
    not_same_field,
    parse_error,
    out_of_domain,
    division_by_zero,
    degenerate_denominator,
    budget_exceeded,
    tail_past_termination,
    not_quadratic,
    unsupported_head,
    position_out_of_range,
    no_root_in_range,
    not_in_image,
    excluded_geodesic,
    degenerate_endpoints,
    out_of_window,
    invalid_runs,
    rational_endpoint_reached,
    no_intersection,
    formula_undefined,
    invalid_period,
    dual_verification_failed,
    unknown_suite,
};

const char* errc_name(errc code) noexcept;

class mf_error : public std::runtime_error {
public:
    mf_error(errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& msg) {
    throw mf_error(code, msg);
}

}  // namespace modflow
