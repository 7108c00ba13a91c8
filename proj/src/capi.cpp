#include "trep/trep.h"

#include <cstdlib>
#include <cstring>
#include <new>

#include "trep/session.hpp"

struct trep_session {
  trep::Session impl;
};

namespace {

char *dup_string(const std::string& s) {
  char *p = static_cast<char *>(std::malloc(s.size() + 1));
  if (!p) return nullptr;
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void deliver(char **out, const std::string& s) {
  if (!out) return;
  *out = s.empty() ? nullptr : dup_string(s);
}

}  // namespace

extern "C" {

trep_session *trep_session_new(uint64_t seed) {
  return new (std::nothrow) trep_session{trep::Session(seed)};
}

void trep_session_free(trep_session *s) { delete s; }

int trep_eval(trep_session *s, const char *line, char **out) {
  if (out) *out = nullptr;
  if (!s || !line) {
    deliver(out, "error: null argument");
    return 2;
  }
  try {
    trep::Session::Result r = s->impl.eval_line(line);
    deliver(out, r.output);
    return r.status;
  } catch (const std::exception &e) {
    deliver(out, std::string("internal error: ") + e.what());
    return 2;
  } catch (...) {
    deliver(out, "internal error");
    return 2;
  }
}

void trep_string_free(char *p) { std::free(p); }

int trep_session_save(trep_session *s, const char *path, char **out) {
  if (out) *out = nullptr;
  if (!s || !path) {
    deliver(out, "error: null argument");
    return 2;
  }
  try {
    s->impl.save(path);
    return 0;
  } catch (const std::exception &e) {
    deliver(out, std::string("error: ") + e.what());
    return 2;
  }
}

int trep_session_load(trep_session *s, const char *path, char **out) {
  if (out) *out = nullptr;
  if (!s || !path) {
    deliver(out, "error: null argument");
    return 2;
  }
  try {
    s->impl.load(path);
    return 0;
  } catch (const std::exception &e) {
    deliver(out, std::string("error: ") + e.what());
    return 2;
  }
}

void trep_session_set_param(trep_session *s, double sval) {
  if (s) s->impl.set_default_s(sval);
}

double trep_session_get_param(const trep_session *s) {
  return s ? s->impl.default_s() : 0.0;
}

void trep_session_set_json(trep_session *s, int enabled) {
  if (s) s->impl.set_json(enabled != 0);
}

const char *trep_version(void) { return "0.1.0"; }

}  // extern "C"
