#pragma once

namespace hsp {

/**
 * Entry point of the `hsp` command-line tool. Subcommands:
 *
 *   enumerate-subgroups --p P --r R --t0 T0
 *   solve-hsp           --N N --p P --phi11 F --hidden DESC [--k K] [--seed S]
 *   estimate-success    --N N --p P --phi11 F --hidden DESC --trials T ...
 *   decompose           --N N --p P --phi11 F
 *   distribution        --p P --r R --t T --s S --hidden DESC
 *
 * Every subcommand writes one JSON document to stdout (--pretty for
 * indentation). The default seed comes from the HSP_SEED environment
 * variable; --seed overrides it.
 *
 * Exit codes: 0 success; 1 invalid input or solver failure; 2 internal
 * consistency violation; 64 malformed command line.
 */
int cli_main(int argc, const char* const* argv);

}  // namespace hsp
