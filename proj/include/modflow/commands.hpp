#pragma once

#include <optional>

#include "modflow/json_io.hpp"
#include "modflow/verify.hpp"

namespace modflow {

/// Outcome of one CLI command; status "error" always carries diagnostics.
struct CommandResult {
    bool ok = true;
    json payload = json::object();
    std::vector<std::string> diagnostics;

    json to_json() const;
    int exit_code() const { return ok ? 0 : 1; }
};

CommandResult cmd_expand(const std::string& system, const std::string& value_text,
                         size_t max_digits = 4096);

// One of value_text / rcf_text must be present. The rcf syntax is
// "n0;n1,n2,..." where a trailing "..." repeats the final digit forever and
// "(a,b)" marks an explicit period; a leading "-" negates the value.
CommandResult cmd_convert(const std::string& to, const std::optional<std::string>& value_text,
                          const std::optional<std::string>& rcf_text);

CommandResult cmd_geodesic(const std::string& backward_text, const std::string& forward_text,
                           size_t letters, mpfr_prec_t prec = 128);

CommandResult cmd_verify(const std::string& suite, size_t samples, uint64_t seed);

// Parsed "n0;n1,..." input: sign, head and digit sequence.
struct RcfText {
    int sign = +1;
    mpz_class head;
    DigitSequence<RcfDigit> digits;
};
RcfText parse_rcf_text(const std::string& text);

}  // namespace modflow
