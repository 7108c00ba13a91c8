/*
 * C interface to the trep calculator: exact computations with Thompson's
 * groups F and T and the unitary representations attached to their actions
 * on the unit interval and circle.
 *
 * A session holds named bindings and a reproducible random source. Commands
 * are submitted as text lines; results come back as text in canonical form.
 *
 * Status codes:
 *   0  success
 *   1  parse error
 *   2  validation or precondition error (also used for I/O failures)
 *   3  a probe reported a negative verdict (constant / vanishes / inequivalent)
 */
#ifndef TREP_H
#define TREP_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct trep_session trep_session;

/* Creates a session whose random(...) draws are reproducible from seed. */
trep_session *trep_session_new(uint64_t seed);
void trep_session_free(trep_session *s);

/*
 * Evaluates one command line. On return *out (when out is non-NULL) holds a
 * malloc'd NUL terminated string with the printable result, or NULL when the
 * command produced no output. The caller releases it with trep_string_free.
 * Returns a status code; diagnostic text for statuses 1 and 2 is also
 * delivered through *out.
 */
int trep_eval(trep_session *s, const char *line, char **out);
void trep_string_free(char *p);

/* Session persistence; on failure returns 2 and fills *out when non-NULL. */
int trep_session_save(trep_session *s, const char *path, char **out);
int trep_session_load(trep_session *s, const char *path, char **out);

/* Default representation parameter used by numeric output. */
void trep_session_set_param(trep_session *s, double sval);
double trep_session_get_param(const trep_session *s);

/* When enabled, every evaluation returns a single-line JSON object. */
void trep_session_set_json(trep_session *s, int enabled);

const char *trep_version(void);

#ifdef __cplusplus
}
#endif

#endif /* TREP_H */
