#ifndef DBA_LAB_H
#define DBA_LAB_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define DBA_TYPE_I 1

#define DBA_TYPE_II 2

#define DBA_TYPE_III 4

#define DBA_TYPE_IV 8

#define DBA_TYPE_V 16

// Result code of every fallible call.
typedef enum DbaStatus {
  DBA_STATUS_OK = 0,
  DBA_STATUS_NULL_ARGUMENT = 1,
  // Malformed JSON, bad table shape or an out-of-range table cell.
  DBA_STATUS_INVALID_INPUT = 2,
  // Well-formed tables that violate a defining identity.
  DBA_STATUS_NOT_A_DBA = 3,
  // An element id or list index outside its range.
  DBA_STATUS_OUT_OF_RANGE = 4,
  DBA_STATUS_UNKNOWN_NAME = 5,
  DBA_STATUS_CAP_EXCEEDED = 6,
  // The operation's precondition does not hold for this input.
  DBA_STATUS_CONTRACT = 7,
  DBA_STATUS_INTERNAL = 8,
  DBA_STATUS_PANIC = 9,
} DbaStatus;

// Operations accepted by [`dba_algebra_eval`]. Unary operations ignore `y`.
typedef enum DbaOp {
  DBA_OP_MEET = 0,
  DBA_OP_JOIN = 1,
  DBA_OP_NEG = 2,
  DBA_OP_OPP = 3,
  DBA_OP_VEE = 4,
  DBA_OP_WEDGE = 5,
  DBA_OP_PLUS = 6,
  DBA_OP_DOT = 7,
} DbaOp;

// A verified algebra with optional element labels.
typedef struct DbaAlgebra DbaAlgebra;

typedef struct DbaAlgebraList DbaAlgebraList;

typedef struct DbaClassification {
  bool is_pure;
  bool is_trivial;
  bool is_regular;
  // Bitwise OR of the `DBA_TYPE_*` flags.
  uint32_t types;
  size_t meet_part_size;
  size_t join_part_size;
  size_t pure_part_size;
} DbaClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses and verifies an algebra in the JSON interchange format.
//
// # Safety
// `json` must be NUL-terminated; `out` must be writable.
enum DbaStatus dba_algebra_from_json(const char *json, struct DbaAlgebra **out_algebra);

// Builds and verifies an algebra from row-major tables. `meet` and `join`
// hold `size * size` entries, `neg` and `opp` hold `size`.
//
// # Safety
// Each table pointer must reference at least the stated number of entries.
enum DbaStatus dba_algebra_from_tables(size_t size,
                                       size_t bot,
                                       size_t top,
                                       const size_t *meet,
                                       const size_t *join,
                                       const size_t *neg,
                                       const size_t *opp,
                                       struct DbaAlgebra **out_algebra);

// Looks up a bundled algebra by alias or name, e.g. `"D4"` or `"D_3,I"`.
//
// # Safety
// `name` must be NUL-terminated; `out` must be writable.
enum DbaStatus dba_catalog_get(const char *name, struct DbaAlgebra **out_algebra);

// Releases a handle. Null is ignored.
//
// # Safety
// `algebra` must come from this library and not be used afterwards.
void dba_algebra_free(struct DbaAlgebra *algebra);

// Carrier size, or 0 for a null handle.
//
// # Safety
// `algebra` must be null or a live handle.
size_t dba_algebra_size(const struct DbaAlgebra *algebra);

// # Safety
// `algebra` must be a live handle; `out` must be writable.
enum DbaStatus dba_algebra_bounds(const struct DbaAlgebra *algebra,
                                  size_t *out_bot,
                                  size_t *out_top);

// # Safety
// `algebra` must be a live handle; `out` must be writable.
enum DbaStatus dba_algebra_eval(const struct DbaAlgebra *algebra,
                                enum DbaOp op,
                                size_t x,
                                size_t y,
                                size_t *out_value);

// Checks JSON tables against the defining identities without building a
// handle. Returns `DBA_STATUS_OK` with `*out_is_dba = false` for tables that
// parse but violate an identity.
//
// # Safety
// `json` must be NUL-terminated; `out_is_dba` must be writable.
enum DbaStatus dba_is_dba_json(const char *json, bool *out_is_dba);

// # Safety
// `algebra` must be a live handle; `out` must be writable.
enum DbaStatus dba_algebra_classify(const struct DbaAlgebra *algebra,
                                    struct DbaClassification *out_class);

// Number of congruences.
//
// # Safety
// `algebra` must be a live handle; `out` must be writable.
enum DbaStatus dba_algebra_congruence_count(const struct DbaAlgebra *algebra, size_t *out_count);

// Simplicity, decided by the structural criterion (no congruence search).
//
// # Safety
// `algebra` must be a live handle; `out` must be writable.
enum DbaStatus dba_algebra_is_simple(const struct DbaAlgebra *algebra, bool *out_simple);

// Subdirect irreducibility, from the congruence lattice.
//
// # Safety
// `algebra` must be a live handle; `out` must be writable.
enum DbaStatus dba_algebra_is_si(const struct DbaAlgebra *algebra, bool *out_si);

// Glued sum of two Boolean algebras, each given as a dBa handle whose `¬`
// and `⌟` coincide. Fails with `DBA_STATUS_CONTRACT` otherwise.
//
// # Safety
// `p` and `q` must be live handles; `out` must be writable.
enum DbaStatus dba_glued_sum(const struct DbaAlgebra *p,
                             const struct DbaAlgebra *q,
                             struct DbaAlgebra **out_algebra);

// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum DbaStatus dba_is_isomorphic(const struct DbaAlgebra *a,
                                 const struct DbaAlgebra *b,
                                 bool *out_iso);

// All algebras of size `n` up to isomorphism. Sizes above the certified
// cap need `allow_uncertified`.
//
// # Safety
// `out_list` must be writable.
enum DbaStatus dba_enumerate(size_t n, bool allow_uncertified, struct DbaAlgebraList **out_list);

// Number of algebras in a list, or 0 for null.
//
// # Safety
// `list` must be null or a live list.
size_t dba_list_len(const struct DbaAlgebraList *list);

// A borrowed handle into the list, valid until the list is freed. Do not
// pass it to [`dba_algebra_free`]. Returns null when out of range.
//
// # Safety
// `list` must be null or a live list.
const struct DbaAlgebra *dba_list_get(const struct DbaAlgebraList *list, size_t index);

// # Safety
// `list` must come from [`dba_enumerate`] and not be used afterwards.
void dba_list_free(struct DbaAlgebraList *list);

// Full report (axioms, structure, congruences) as JSON. Free the string with
// [`dba_string_free`].
//
// # Safety
// `algebra` must be a live handle; `out_json` must be writable.
enum DbaStatus dba_algebra_report_json(const struct DbaAlgebra *algebra, char **out_json);

// # Safety
// `s` must be null or a string returned by this library.
void dba_string_free(char *s);

// Message for the last failed call on this thread, or null.
const char *dba_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DBA_LAB_H */
