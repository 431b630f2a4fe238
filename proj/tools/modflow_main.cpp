#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "modflow/commands.hpp"

using namespace modflow;

namespace {

mpfr_prec_t precision_from_env() {
    const char* env = std::getenv("MODFLOW_PRECISION_BITS");
    if (!env) return 128;
    long bits = std::strtol(env, nullptr, 10);
    return bits >= 53 ? static_cast<mpfr_prec_t>(bits) : 128;
}

int emit(const CommandResult& r, bool machine) {
    if (machine)
        std::cout << r.to_json().dump() << "\n";
    else
        std::cout << r.to_json().dump(2) << "\n";
    return r.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Lehner/Farey continued fractions and modular-surface geodesic coding"};
    app.require_subcommand(1);
    bool machine = false;
    app.add_flag("--json", machine, "compact machine output");

    auto* expand = app.add_subcommand("expand", "expand a value in a digit system");
    std::string system = "lehner", value;
    size_t max_digits = 4096;
    expand->add_option("--system", system, "rcf|lehner|farey|fstar")->required();
    expand->add_option("--value", value, "exact real, e.g. \"sqrt(2)\" or \"-2/3\"")->required();
    expand->add_option("--max-digits", max_digits, "digit budget");

    auto* convert = app.add_subcommand("convert", "convert a regular continued fraction");
    std::string to;
    std::string conv_value, conv_rcf;
    convert->add_option("--to", to, "lehner|farey")->required();
    auto* ov = convert->add_option("--value", conv_value, "exact real to convert");
    auto* orc = convert->add_option("--rcf", conv_rcf, "rcf text like \"1;2,2,...\" or \"1;(2)\"");
    ov->excludes(orc);

    auto* geodesic = app.add_subcommand("geodesic", "lift and code a geodesic");
    std::string backward, forward;
    size_t letters = 32;
    geodesic->add_option("--backward", backward, "backward endpoint")->required();
    geodesic->add_option("--forward", forward, "forward endpoint")->required();
    geodesic->add_option("--letters", letters, "cutting-sequence letters to emit");

    auto* verify = app.add_subcommand("verify", "run a verification sweep");
    std::string suite;
    size_t samples = 1000;
    uint64_t seed = 7;
    verify->add_option("--suite", suite, "transfer|natext|commute|theorem1|closed")->required();
    verify->add_option("--samples", samples, "sample count");
    verify->add_option("--seed", seed, "rng seed");

    CLI11_PARSE(app, argc, argv);

    if (expand->parsed()) return emit(cmd_expand(system, value, max_digits), machine);
    if (convert->parsed()) {
        std::optional<std::string> v, r;
        if (ov->count()) v = conv_value;
        if (orc->count()) r = conv_rcf;
        return emit(cmd_convert(to, v, r), machine);
    }
    if (geodesic->parsed())
        return emit(cmd_geodesic(backward, forward, letters, precision_from_env()), machine);
    if (verify->parsed()) return emit(cmd_verify(suite, samples, seed), machine);
    return 1;
}
