#pragma once
// Command-line front-end.  Exit codes: 0 success, 1 usage/config error,
// 2 physically infeasible request (e.g. impedance matching at C <= 1/2).

namespace cavityforge::cli {

int run(int argc, const char* const* argv);

}  // namespace cavityforge::cli
