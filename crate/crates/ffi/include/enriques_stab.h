#ifndef ENRIQUES_STAB_H
#define ENRIQUES_STAB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Number of coordinates of a class.
 */
#define ES_RANK 10

typedef enum EsBinding {
  ES_BINDING_NONE = 0,
  ES_BINDING_AMPLE_CONE = 1,
  ES_BINDING_NEGATIVE_A = 2,
  ES_BINDING_ISOTROPIC = 3,
} EsBinding;

typedef enum EsStatus {
  ES_STATUS_OK = 0,
  ES_STATUS_PARSE = 1,
  ES_STATUS_DOMAIN = 2,
  ES_STATUS_CONFIG = 3,
  ES_STATUS_INTERNAL = 4,
  /**
   * A central charge vanishes at the queried point.
   */
  ES_STATUS_HOLE = 5,
  ES_STATUS_NULL_ARGUMENT = 6,
  ES_STATUS_PANIC = 7,
} EsStatus;

typedef enum EsVeryAmple {
  ES_VERY_AMPLE_NO = 0,
  ES_VERY_AMPLE_YES = 1,
  ES_VERY_AMPLE_OPEN = 2,
} EsVeryAmple;

typedef enum EsWallKind {
  ES_WALL_KIND_CIRCLE = 0,
  ES_WALL_KIND_VERTICAL_LINE = 1,
  ES_WALL_KIND_EVERYWHERE = 2,
  ES_WALL_KIND_NOWHERE = 3,
} EsWallKind;

typedef struct EsHilbertWalls EsHilbertWalls;

/**
 * The Gram form together with the reference ample class.
 */
typedef struct EsLattice EsLattice;

typedef struct EsPhi {
  int64_t value;
  int64_t witness[ES_RANK];
} EsPhi;

/**
 * A Mukai vector `(r, c, s2/2)`.
 */
typedef struct EsMukai {
  int64_t r;
  int64_t c[ES_RANK];
  int64_t s2;
} EsMukai;

/**
 * `p/q` with `q > 0`.
 */
typedef struct EsRational {
  int64_t num;
  int64_t den;
} EsRational;

/**
 * `center_b` and `radius_sq` are set for circles, `b` for vertical lines.
 */
typedef struct EsWallLocus {
  enum EsWallKind kind;
  struct EsRational center_b;
  struct EsRational radius_sq;
  struct EsRational b;
} EsWallLocus;

/**
 * One wall of the Hilbert scheme; `t0 = t0_a + sqrt(t0_rad)`.
 */
typedef struct EsHilbertWall {
  int64_t k;
  struct EsRational center_b;
  struct EsRational radius_sq;
  struct EsRational t0_a;
  struct EsRational t0_rad;
  size_t witness_count;
} EsHilbertWall;

/**
 * `witness` and `pairing_value` are set when `binding` is `Isotropic`.
 */
typedef struct EsNefResult {
  bool nef;
  enum EsBinding binding;
  int64_t witness[ES_RANK];
  int64_t pairing_value;
} EsNefResult;

typedef struct EsLinSys {
  int64_t d;
  int64_t phi;
  bool bpf;
  enum EsVeryAmple very_ample;
  int64_t n_very_ample_max;
  int64_t vanishing_max_n;
} EsLinSys;

/**
 * Sentinels: `dim = -1` undefined; `ss_codim` is `-1` infinite, `-2` for
 * "greater than one", `-3` undefined; `smooth` is `1` or `-1` unknown;
 * `k_trivial` is `1`, `0`, or `-1` outside the covered range.
 */
typedef struct EsModuli {
  int64_t m;
  struct EsMukai v0;
  int64_t v0_sq;
  bool nonempty;
  int64_t dim;
  bool stable_nonempty;
  int64_t ss_codim;
  int smooth;
  int k_trivial;
} EsModuli;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * The default lattice U ⊕ E8(−1) with reference class (1, 1, 0, ..., 0).
 */
struct EsLattice *es_lattice_new_default(void);

/**
 * Reads a JSON config `{"name", "gram", "reference_ample"}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum EsStatus es_lattice_from_json(const char *json, struct EsLattice **out_lattice);

/**
 * # Safety
 * `lattice` must come from this library and not be used afterwards.
 */
void es_lattice_free(struct EsLattice *lattice);

/**
 * The message of the last failure on this thread, or NULL.
 */
char *es_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void es_string_free(char *s);

/**
 * # Safety
 * All pointers must be valid.
 */
enum EsStatus es_phi(const struct EsLattice *lattice,
                     const int64_t (*d)[ES_RANK],
                     struct EsPhi *result);

/**
 * `x.y` in the Gram form.
 *
 * # Safety
 * All pointers must be valid.
 */
enum EsStatus es_pair(const struct EsLattice *lattice,
                      const int64_t (*x)[ES_RANK],
                      const int64_t (*y)[ES_RANK],
                      int64_t *result);

/**
 * # Safety
 * All pointers must be valid.
 */
enum EsStatus es_mukai_pair(const struct EsLattice *lattice,
                            const struct EsMukai *v,
                            const struct EsMukai *w,
                            struct EsRational *result);

/**
 * `Z(v) = re + i·t·im_over_t` at `(H, b, u = t²)`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum EsStatus es_central_charge(const struct EsLattice *lattice,
                                const struct EsMukai *v,
                                const int64_t (*h)[ES_RANK],
                                struct EsRational b,
                                struct EsRational u,
                                struct EsRational *re,
                                struct EsRational *im_over_t);

/**
 * Writes −1, 0 or 1 as the phase of `v` is below, equal to or above that
 * of `w`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum EsStatus es_phase_cmp(const struct EsLattice *lattice,
                           const struct EsMukai *v,
                           const struct EsMukai *w,
                           const int64_t (*h)[ES_RANK],
                           struct EsRational b,
                           struct EsRational u,
                           int *result);

/**
 * # Safety
 * All pointers must be valid.
 */
enum EsStatus es_wall_locus(const struct EsLattice *lattice,
                            const struct EsMukai *v,
                            const struct EsMukai *w,
                            const int64_t (*h)[ES_RANK],
                            struct EsWallLocus *result);

/**
 * The walls of the Hilbert scheme of `n` points for the class `h`,
 * outermost first.
 *
 * # Safety
 * All pointers must be valid.
 */
enum EsStatus es_hilbert_walls(const struct EsLattice *lattice,
                               int64_t n,
                               const int64_t (*h)[ES_RANK],
                               struct EsHilbertWalls **result);

/**
 * # Safety
 * `walls` must be a valid handle.
 */
size_t es_hilbert_walls_len(const struct EsHilbertWalls *walls);

/**
 * # Safety
 * All pointers must be valid.
 */
enum EsStatus es_hilbert_walls_get(const struct EsHilbertWalls *walls,
                                   size_t index,
                                   struct EsHilbertWall *result);

/**
 * Witness `j` of wall `index`, with `H.F = k > 0`.
 *
 * # Safety
 * All pointers must be valid.
 */
enum EsStatus es_hilbert_walls_witness(const struct EsHilbertWalls *walls,
                                       size_t index,
                                       size_t j,
                                       int64_t (*result)[ES_RANK]);

/**
 * # Safety
 * `walls` must come from `es_hilbert_walls` and not be used afterwards.
 */
void es_hilbert_walls_free(struct EsHilbertWalls *walls);

/**
 * Whether `D̃ − aB` is nef on the Hilbert scheme of `n` points.
 *
 * # Safety
 * All pointers must be valid; `d` points to ten rationals.
 */
enum EsStatus es_nef_hilbert(const struct EsLattice *lattice,
                             const struct EsRational (*d)[ES_RANK],
                             struct EsRational a,
                             int64_t n,
                             struct EsNefResult *result);

/**
 * # Safety
 * All pointers must be valid.
 */
enum EsStatus es_linsys(const struct EsLattice *lattice,
                        const int64_t (*h)[ES_RANK],
                        struct EsLinSys *result);

/**
 * # Safety
 * All pointers must be valid.
 */
enum EsStatus es_classify(const struct EsLattice *lattice,
                          const struct EsMukai *v,
                          struct EsModuli *result);

/**
 * Runs a command line (without the program name) and returns its exit
 * code; stdout and stderr text are returned as owned strings.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings; `out_text` and
 * `err_text` must be valid pointers.
 */
int es_run(size_t argc, const char *const *argv, char **out_text, char **err_text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENRIQUES_STAB_H */
