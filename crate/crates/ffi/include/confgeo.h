#ifndef CONFGEO_H
#define CONFGEO_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every function.
typedef enum ConfgeoStatus {
  CONFGEO_STATUS_OK = 0,
  CONFGEO_STATUS_NULL_POINTER = 1,
  CONFGEO_STATUS_INVALID_UTF8 = 2,
  CONFGEO_STATUS_INVALID_ARGUMENT = 3,
  CONFGEO_STATUS_PARSE = 4,
  CONFGEO_STATUS_BUDGET_EXCEEDED = 5,
  CONFGEO_STATUS_INTERNAL = 6,
} ConfgeoStatus;

// Opaque incidence structure.
typedef struct ConfgeoStructure ConfgeoStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty if none.
// The pointer stays valid until the next failing call on the same thread.
const char *confgeo_last_error(void);

// Builds a catalog entry. Parameters that the builder ignores may be zero.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum ConfgeoStatus confgeo_build(const char *name,
                                 uint32_t n,
                                 uint32_t g,
                                 uint32_t v,
                                 uint64_t q,
                                 struct ConfgeoStructure **out);

// Parses the JSON interchange format.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum ConfgeoStatus confgeo_from_json(const char *json, struct ConfgeoStructure **out);

// # Safety
// `s` must be null or a handle obtained from this library, freed at most once.
void confgeo_structure_free(struct ConfgeoStructure *s);

// # Safety
// `s` must be null or a string returned by this library, freed at most once.
void confgeo_string_free(char *s);

// Number of points and blocks.
//
// # Safety
// `s` must be a live handle; `v` and `b` valid pointers.
enum ConfgeoStatus confgeo_size(const struct ConfgeoStructure *s, size_t *v, size_t *b);

// Writes 1 if point `x` lies on block `j`, else 0.
//
// # Safety
// `s` must be a live handle and `out` a valid pointer.
enum ConfgeoStatus confgeo_incident(const struct ConfgeoStructure *s,
                                    size_t x,
                                    size_t j,
                                    uint8_t *out);

// Serializes to the JSON interchange format.
//
// # Safety
// `s` must be a live handle and `out` a valid pointer.
enum ConfgeoStatus confgeo_to_json(const struct ConfgeoStructure *s, char **out);

// Full analysis report as JSON. `with_symmetry = 0` skips group computations.
//
// # Safety
// `s` must be a live handle and `out` a valid pointer.
enum ConfgeoStatus confgeo_analyze(const struct ConfgeoStructure *s,
                                   uint8_t with_symmetry,
                                   char **out);

// Writes 1 if the structures are isomorphic, else 0.
//
// # Safety
// `a` and `b` must be live handles and `out` a valid pointer.
enum ConfgeoStatus confgeo_is_isomorphic(const struct ConfgeoStructure *a,
                                         const struct ConfgeoStructure *b,
                                         uint8_t *out);

// Number of symmetric `v_3` classes; `budget = 0` means unlimited.
//
// # Safety
// `out` must be a valid pointer.
enum ConfgeoStatus confgeo_enumerate_v3(uint32_t v, uint8_t lineal, uint64_t budget, size_t *out);

// Static NUL-terminated version string.
const char *confgeo_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CONFGEO_H */
