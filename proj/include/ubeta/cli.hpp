#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ubeta/types.hpp"

namespace ubeta {

/// Complex literal in the "a+bi" CLI syntax (also "a", "bi", "i", "-i",
/// exponent forms like "1e-3-2.5e-2i"). Throws DomainError on bad syntax.
cplx parse_complex(const std::string& text);

/// Comma-separated complex list, e.g. "1,1.41421356,0+1i".
std::vector<cplx> parse_complex_list(const std::string& text);

/// Entry point behind the ubeta binary. Exit codes: 0 success/pass,
/// 1 numerical failure, 2 invalid input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ubeta
