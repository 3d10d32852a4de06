#ifndef COSYX_H
#define COSYX_H

/* C interface to the chain-complex toolkit. Every call returns a status
 * int doubling as a process exit code: 0 success, 1 bad input, 2 broken
 * property, 3 budget refusal. Output strings are heap-allocated; release
 * them with cosyx_free_str. On failure *err (when given) receives the
 * message. Verdict-style calls (validate, local-check, cones-check,
 * verify-product) return 2 with the report still filled when the checked
 * property fails; the report explains the verdict. */

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cosyx_complex cosyx_complex;

typedef struct cosyx_opts {
  int k;                     /* degree, -1 unset */
  int l;                     /* product degree / cycle length, 0 default */
  int m_max;                 /* collection ceiling, default 3 */
  int budget;                /* log2 of the admissible search steps */
  int workers;               /* threads inside searches, default 1 */
  unsigned long long seed;   /* echoed into report headers */
  const char* weight;        /* hamming | normalized | topcell */
} cosyx_opts;

void cosyx_opts_init(cosyx_opts* o);

const char* cosyx_version(void); /* static, do not free */
void cosyx_free_str(char* s);
void cosyx_complex_free(cosyx_complex* x);

/* family: cycle L | skeleton N K | lm N K P | flag Q; args are the
 * numeric tails as strings. */
int cosyx_gen(const char* family, const char* const* args, int nargs,
              unsigned long long seed, cosyx_complex** out, char** err);

/* Augmented full simplex on n vertices together with its cone table,
 * serialized for cosyx_cones_check. */
int cosyx_simplex_cones(int n, cosyx_complex** out, char** cones_text,
                        char** err);

int cosyx_complex_read(const char* text, cosyx_complex** out, char** err);

/* Reads one complex starting at byte *pos and advances *pos past it, so
 * several complexes can sit in one stream. */
int cosyx_complex_read_at(const char* text, long long* pos,
                          cosyx_complex** out, char** err);

int cosyx_complex_write(const cosyx_complex* x, char** text, char** err);
int cosyx_tensor(const cosyx_complex* a, const cosyx_complex* b,
                 cosyx_complex** out, char** err);
int cosyx_complex_dim(const cosyx_complex* x);

int cosyx_validate(const cosyx_complex* x, const cosyx_opts* o, char** report,
                   char** err);
int cosyx_homology(const cosyx_complex* x, const cosyx_opts* o, char** report,
                   char** err);
int cosyx_expansion(const cosyx_complex* x, const cosyx_opts* o, char** report,
                    char** err);

/* members: one string per collection member, comma-separated cell ids of
 * degree o->k. xi/eps: rational or decimal strings, both or neither. */
int cosyx_local_check(const cosyx_complex* x, const cosyx_opts* o,
                      const char* const* members, int nmembers,
                      const char* xi, const char* eps, char** report,
                      char** err);

/* cones_text: the serialized cone table for x. */
int cosyx_cones_check(const cosyx_complex* x, const char* cones_text,
                      const cosyx_opts* o, char** report, char** err);

/* want_params runs the exact distance search; format "dense" or "alist"
 * fills *matrices with both parity checks, NULL format skips export. */
int cosyx_css(const cosyx_complex* x, const cosyx_opts* o, int want_params,
              const char* format, char** report, char** matrices, char** err);

int cosyx_balance(const cosyx_complex* x, const cosyx_opts* o, char** report,
                  char** err);

int cosyx_verify_product(const cosyx_complex* a, const cosyx_complex* b,
                         const cosyx_opts* o, char** report, char** err);

#ifdef __cplusplus
}
#endif

#endif /* COSYX_H */
