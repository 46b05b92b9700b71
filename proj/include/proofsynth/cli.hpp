#pragma once

// The proofsynth command line: gen-dataset, synthesize, check, repair, eval
// and bench. Exit codes: 0 success (proved), 2 search budget exhausted,
// 1 usage or runtime error.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "proofsynth/search.hpp"

namespace proofsynth {

// args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "null", "fixed:<term>", "corrupt:<k>" or "exec:<command line>".
// Throws std::invalid_argument.
GuideSpec parse_guide_spec(std::string_view s);

}  // namespace proofsynth
