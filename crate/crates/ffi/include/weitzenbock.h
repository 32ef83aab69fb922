#ifndef WEITZENBOCK_H
#define WEITZENBOCK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum WeitzStatus {
  WEITZ_STATUS_OK = 0,
  WEITZ_STATUS_NULL_POINTER = 1,
  WEITZ_STATUS_INVALID_UTF8 = 2,
  WEITZ_STATUS_SYNTAX = 3,
  WEITZ_STATUS_INVALID_CONTEXT = 4,
  WEITZ_STATUS_NOT_SEMI_INVARIANT = 5,
  WEITZ_STATUS_OUT_OF_RANGE = 6,
  WEITZ_STATUS_DOMAIN = 7,
  WEITZ_STATUS_PANIC = 8,
} WeitzStatus;

/*
 A set of roman letters with their sizes, e.g. from `"2,3"`.
 */
typedef struct WeitzContext WeitzContext;

typedef struct WeitzPolynomial WeitzPolynomial;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failure on this thread, or NULL. Owned by the library.
 */
const char *weitz_last_error(void);

void weitz_string_free(char *s);

/*
 Context from a comma-separated signature such as `"2,3"`.
 */
enum WeitzStatus weitz_context_new(const char *signature, struct WeitzContext **out);

void weitz_context_free(struct WeitzContext *ctx);

enum WeitzStatus weitz_poly_parse(const struct WeitzContext *ctx,
                                  const char *source,
                                  struct WeitzPolynomial **out);

void weitz_poly_free(struct WeitzPolynomial *p);

/*
 Text form; free with `weitz_string_free`.
 */
enum WeitzStatus weitz_poly_to_string(const struct WeitzPolynomial *p, char **out);

/*
 JSON form; free with `weitz_string_free`.
 */
enum WeitzStatus weitz_poly_to_json(const struct WeitzPolynomial *p, char **out);

/*
 The lowering operator `D`.
 */
enum WeitzStatus weitz_poly_lower(const struct WeitzPolynomial *p, struct WeitzPolynomial **out);

/*
 The raising operator `D*`.
 */
enum WeitzStatus weitz_poly_raise(const struct WeitzPolynomial *p, struct WeitzPolynomial **out);

enum WeitzStatus weitz_poly_is_semi_invariant(const struct WeitzPolynomial *p, bool *out);

enum WeitzStatus weitz_poly_order(const struct WeitzPolynomial *p, uint32_t *out);

/*
 The semi-transvectant `[f,g]^r`.
 */
enum WeitzStatus weitz_transvectant(const struct WeitzPolynomial *f,
                                    const struct WeitzPolynomial *g,
                                    uint32_t r,
                                    struct WeitzPolynomial **out);

/*
 `Lambda` of a bracket expression under an assignment such as `"a:x,b:y"`.
 */
enum WeitzStatus weitz_lambda(const struct WeitzContext *ctx,
                              const char *expr,
                              const char *assignment,
                              struct WeitzPolynomial **out);

/*
 A bracket expression and its assignment, as `"expr ; a:x,b:x"`.
 */
enum WeitzStatus weitz_symbolize(const struct WeitzContext *ctx,
                                 const struct WeitzPolynomial *p,
                                 char **out);

/*
 Kernel generators up to `max_degree`, as the JSON document of the CLI.
 */
enum WeitzStatus weitz_kernel_generators_json(const struct WeitzContext *ctx,
                                              uint32_t max_degree,
                                              char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WEITZENBOCK_H */
