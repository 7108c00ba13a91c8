// Command line front end. Links only the C API of the shared library.

#include <unistd.h>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "trep/trep.h"

namespace {

struct SessionDeleter {
  void operator()(trep_session *s) const { trep_session_free(s); }
};

struct OutputGuard {
  char *p = nullptr;
  ~OutputGuard() { trep_string_free(p); }
};

// Prints the result of one line; errors go to stderr.
void report(int status, const char *out) {
  if (!out || !*out) return;
  if (status == 1 || status == 2)
    std::cerr << out << "\n";
  else
    std::cout << out << "\n";
}

int run_script(trep_session *session, std::istream &in, bool interactive) {
  int last = 0;
  std::string line;
  if (interactive) std::cout << "trep> " << std::flush;
  while (std::getline(in, line)) {
    OutputGuard out;
    int status = trep_eval(session, line.c_str(), &out.p);
    report(status, out.p);
    last = status;
    if (!interactive && (status == 1 || status == 2)) return status;
    if (interactive) std::cout << "trep> " << std::flush;
  }
  if (interactive) {
    std::cout << "\n";
    return 0;
  }
  return last;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"trep: exact calculator for Thompson's groups F and T and their "
               "quasi-regular representations"};

  std::string script;
  std::string command;
  std::uint64_t seed = 0;
  double s_param = 0.0;
  bool json = false;
  app.add_option("--script", script, "run commands from a file, then exit");
  app.add_option("-c,--command", command, "run a single command, then exit");
  app.add_option("--seed", seed, "seed for random(...) draws")->default_val(0);
  app.add_option("--s", s_param, "default representation parameter for numeric output")
      ->default_val(0.0);
  app.add_flag("--json", json, "emit one JSON object per command");
  app.set_version_flag("--version", std::string(trep_version()));

  CLI11_PARSE(app, argc, argv);

  std::unique_ptr<trep_session, SessionDeleter> session(trep_session_new(seed));
  if (!session) {
    std::cerr << "error: cannot create session\n";
    return 2;
  }
  trep_session_set_param(session.get(), s_param);
  trep_session_set_json(session.get(), json ? 1 : 0);

  if (!command.empty()) {
    OutputGuard out;
    int status = trep_eval(session.get(), command.c_str(), &out.p);
    report(status, out.p);
    return status;
  }

  if (!script.empty()) {
    std::ifstream file(script);
    if (!file) {
      std::cerr << "error: cannot open script '" << script << "'\n";
      return 2;
    }
    return run_script(session.get(), file, false);
  }

  bool interactive = isatty(fileno(stdin)) != 0;
  return run_script(session.get(), std::cin, interactive);
}
