#pragma once

#include "scriptgeo/core.hpp"

#include <iosfwd>

namespace scriptgeo {

// exit codes: 0 success, 1 property false, 2 error
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// FILE, "-" (stdin), catalog:ID, gen:KIND[:a,b,...]
Script load_source(const std::string& spec, std::istream& in);

}  // namespace scriptgeo
