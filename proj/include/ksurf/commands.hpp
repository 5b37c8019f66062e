#pragma once

// CLI command implementations, kept out of main() so tests can drive the
// whole binary in-process.  Every command returns a report::Report; run_cli
// parses argv, dispatches, renders, and returns the process exit code
// (0 pass, 1 any failed section, 2 usage or parse error).

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "ksurf/report.hpp"

namespace ksurf::cli {

struct GlobalFlags {
    bool machine = false;        // print only the structured key-value block
    bool trace = false;          // include full proof traces in verdict sections
    std::size_t sweep = 10;      // case-sweep bound for the main decision procedure
    std::size_t max_cosets = 100000;
    std::string corrupt;         // verify test mode: "", "psl27", "goeritz", "cert"
};

// subcommand in {abelianize, deficiency, b2bound, todd-coxeter, schreier,
// quotient-order}; input is a presentation "<gens | rels>" except for
// quotient-order, which takes ';'-separated permutation image lists
// "[1,0,3,2];[2,0,1,3]".  subgroup is a comma-separated word list ("" =
// trivial subgroup).
report::Report cmd_group(const std::string& subcommand, const std::string& input,
                         const std::string& subgroup, const GlobalFlags& flags);

// subcommand in {pi1, h1, euler, kill-fiber}; input "S2(b; p/q, ...)".
report::Report cmd_seifert(const std::string& subcommand, const std::string& input,
                           const GlobalFlags& flags);

// subcommand in {det, goeritz, dbc}; input "P(e1,...,en)".
report::Report cmd_pretzel(const std::string& subcommand, const std::string& input,
                           const GlobalFlags& flags);

// Parses a surface spec file and runs every applicable decision procedure on
// the subject (last declared) surface.
report::Report cmd_surface_check(const std::string& path, const GlobalFlags& flags);

// The end-to-end reproduction suite: every anchored quantity the toolkit
// certifies, in a fixed order, with pinned expected values.
report::Report cmd_paper_verify(const GlobalFlags& flags);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ksurf::cli
