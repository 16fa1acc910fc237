#pragma once

namespace testspace {

// Command-line front end. Exit codes: 0 success, 1 an audited bound failed,
// 2 invalid input, 3 construction failure. Errors go to stderr as JSON.
int run_cli(int argc, char** argv);

}  // namespace testspace
