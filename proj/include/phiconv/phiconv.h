/* C interface of the phiconv toolkit. All results are returned through
 * opaque handles; every call returns a phc_status. On failure the message
 * is available from phc_last_error() on the same thread. */
#ifndef PHICONV_H
#define PHICONV_H

#include <stddef.h>

#if defined(PHICONV_BUILDING)
#define PHC_API __attribute__((visibility("default")))
#else
#define PHC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum phc_status {
  PHC_OK = 0,
  PHC_INVALID_ARGUMENT = 1,
  PHC_UNSUPPORTED = 2,
  PHC_PARSE_ERROR = 3,
  PHC_DOMAIN_ERROR = 4,
  PHC_INTERNAL_ERROR = 5,
  PHC_NOT_FOUND = 6
} phc_status;

typedef struct phc_instance phc_instance;
typedef struct phc_result phc_result;

/* Which function a conjugate refers to. */
enum { PHC_F = 0, PHC_G = 1 };

PHC_API const char* phc_last_error(void);
PHC_API const char* phc_status_name(phc_status s);

PHC_API size_t phc_catalog_size(void);
/* NULL when index is out of range. */
PHC_API const char* phc_catalog_name(size_t index);

PHC_API phc_status phc_instance_from_json(const char* json, phc_instance** out);
/* PHC_NOT_FOUND for an unknown name. */
PHC_API phc_status phc_instance_from_catalog(const char* name, phc_instance** out);
PHC_API void phc_instance_free(phc_instance* inst);

/* config_json may be NULL or "" (defaults). Keys: box, grid, a_max, v_max,
 * phi_grid, eps_list, alpha_list, tol. */
PHC_API phc_status phc_dual_report(const phc_instance* inst, const char* config_json, phc_result** out);
/* Duality report plus a "gap_analysis" section. */
PHC_API phc_status phc_gap_analyze(const phc_instance* inst, const char* config_json, phc_result** out);
/* phi* = -a|x|^2 + <w, x>; n and nw are the lengths of x and w. */
PHC_API phc_status phc_kkt_verify(const phc_instance* inst, const double* x, size_t n, double a, const double* w,
                                  size_t nw, const char* config_json, phc_result** out);
/* f*(phi) or g*(phi) for phi = -a|x|^2 + <w, x> + c. Infinities are written
 * as IEEE infinities. */
PHC_API phc_status phc_conjugate(const phc_instance* inst, int which, double a, const double* w, size_t n, double c,
                                 const char* config_json, double* out);

/* Owned by the result; valid until phc_result_free. */
PHC_API const char* phc_result_json(const phc_result* r);
/* NULL for results without a CSV form. */
PHC_API const char* phc_result_csv(const phc_result* r);
/* Named boolean of the result ("chain_ok", "optimal", "bui_overall",
 * "contradiction"); -1 when absent. */
PHC_API int phc_result_flag(const phc_result* r, const char* name);
PHC_API void phc_result_free(phc_result* r);

#ifdef __cplusplus
}
#endif

#endif
