#ifndef MRF_CLI_HPP
#define MRF_CLI_HPP

namespace mrf {

// Exit codes: 0 all verdicts/assertions pass, 1 verdict or assertion
// failure, 2 usage or parse error.
int run_cli(int argc, const char* const* argv);

}  // namespace mrf

#endif
