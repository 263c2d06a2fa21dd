#ifndef POISSON_FFI_H
#define POISSON_FFI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result codes. The nonzero values below 6 match the exit codes of the
 `poisson` command.
 */
typedef enum PoissonStatus {
  POISSON_STATUS_OK = 0,
  POISSON_STATUS_CHECK_FAILED = 1,
  POISSON_STATUS_PARSE_ERROR = 2,
  POISSON_STATUS_JACOBI_ERROR = 3,
  POISSON_STATUS_AXIOM_ERROR = 4,
  POISSON_STATUS_MODE_ERROR = 5,
  POISSON_STATUS_NULL_POINTER = 6,
  POISSON_STATUS_INVALID_UTF8 = 7,
  POISSON_STATUS_PANIC = 8,
} PoissonStatus;

/*
 Which complex `poisson_betti_json` computes.
 */
typedef enum PoissonKind {
  POISSON_KIND_HOMOLOGY = 0,
  POISSON_KIND_COHOMOLOGY = 1,
} PoissonKind;

/*
 Which module the computations use.
 */
typedef enum PoissonModuleChoice {
  /*
   The module given in the file.
   */
  POISSON_MODULE_CHOICE_SPEC = 0,
  /*
   The file's module twisted by the modular derivation.
   */
  POISSON_MODULE_CHOICE_TWISTED = 1,
} PoissonModuleChoice;

/*
 A loaded structure and module.
 */
typedef struct PoissonHandle PoissonHandle;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Parses a structure file given as text and stores a new handle in `out`.

 # Safety
 `toml_text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum PoissonStatus poisson_load(const char *toml_text, struct PoissonHandle **out);

/*
 Releases a handle. Null is ignored.

 # Safety
 `handle` must come from `poisson_load` and not have been freed.
 */
void poisson_free(struct PoissonHandle *handle);

/*
 Releases a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not have been freed.
 */
void poisson_string_free(char *s);

/*
 Message for the last failed call on this thread, or null. Valid until the
 next call into the library from the same thread.
 */
const char *poisson_last_error(void);

/*
 Number of variables.

 # Safety
 `handle` must be a live handle.
 */
uintptr_t poisson_dim(const struct PoissonHandle *handle);

/*
 The modular derivation as JSON, written to `out`.

 # Safety
 `handle` must be a live handle and `out` a valid pointer.
 */
enum PoissonStatus poisson_modular_json(const struct PoissonHandle *handle, char **out);

/*
 Betti table as JSON for all degrees `p` and `d` in `lo..=hi`.
 `filtered` selects the filtered approximation instead of exact slices.

 # Safety
 `handle` must be a live handle and `out` a valid pointer.
 */
enum PoissonStatus poisson_betti_json(const struct PoissonHandle *handle,
                                      enum PoissonKind kind,
                                      enum PoissonModuleChoice module,
                                      int64_t lo,
                                      int64_t hi,
                                      bool filtered,
                                      char **out);

/*
 Checks the duality square on all basis cochains with values of weight at
 most `max_degree`. Returns `POISSON_STATUS_CHECK_FAILED` on a mismatch.

 # Safety
 `handle` must be a live handle.
 */
enum PoissonStatus poisson_verify_duality(const struct PoissonHandle *handle, int64_t max_degree);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POISSON_FFI_H */
