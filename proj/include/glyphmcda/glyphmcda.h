/*
 * glyphmcda: C interface to the glyph-design MCDA engine.
 *
 * All documents cross the boundary as NUL-terminated UTF-8 JSON (or plain
 * text reports). Strings and byte buffers returned through out-parameters
 * are owned by the caller and released with gm_string_free / gm_bytes_free.
 * On failure every call returns a non-zero gm_status; gm_last_error() and
 * gm_last_error_path() then describe the failure for the calling thread.
 */
#ifndef GLYPHMCDA_H
#define GLYPHMCDA_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(GLYPHMCDA_BUILDING)
#    define GM_API __declspec(dllexport)
#  else
#    define GM_API __declspec(dllimport)
#  endif
#else
#  define GM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gm_status {
    GM_OK = 0,
    GM_ERR_VALIDATION = 1,      /* malformed document or argument; see gm_last_error_path */
    GM_ERR_NOT_FOUND = 2,       /* unknown design, sheet or channel kind */
    GM_ERR_CONFLICT = 3,        /* stale revision on a conditional write */
    GM_ERR_CRITERION_INPUT = 4, /* inputs a level function cannot score */
    GM_ERR_IO = 5,
    GM_ERR_INTERNAL = 6,
    GM_ERR_ARGUMENT = 7         /* NULL where a value is required */
} gm_status;

typedef enum gm_format {
    GM_FORMAT_TEXT = 0,
    GM_FORMAT_STRUCTURED = 1
} gm_format;

typedef struct gm_workspace gm_workspace;

GM_API const char* gm_version(void);
GM_API const char* gm_status_name(gm_status status);

/* Thread-local description of the last failure; "" after a success. */
GM_API const char* gm_last_error(void);
GM_API const char* gm_last_error_path(void);

GM_API void gm_string_free(char* s);
GM_API void gm_bytes_free(unsigned char* bytes);

/* ---- workspace ---- */

GM_API gm_status gm_workspace_open(const char* root, int create, gm_workspace** out);
GM_API void gm_workspace_close(gm_workspace* ws);

/* if_match may be NULL for an unconditional write. */
GM_API gm_status gm_put_design(gm_workspace* ws, const char* design_json, const char* if_match, char** out_revision);
GM_API gm_status gm_get_design(gm_workspace* ws, const char* id, char** out_json, char** out_revision);
GM_API gm_status gm_put_sheet(gm_workspace* ws, const char* sheet_json, const char* if_match, char** out_revision);
GM_API gm_status gm_get_sheet(gm_workspace* ws, const char* design, const char* assessor, char** out_json,
                              char** out_revision);
/* JSON array of design ids. */
GM_API gm_status gm_list_designs(gm_workspace* ws, char** out_json);

/* ---- documents without a workspace ---- */

/* {"design", "valid", "violations"}; GM_OK even when violations exist. */
GM_API gm_status gm_validate_design(const char* design_json, char** out_json);
/* Canonical form of a score sheet. */
GM_API gm_status gm_canonical_sheet(const char* sheet_json, char** out_json);
/* All twelve criteria in null mode at their default weights. */
GM_API gm_status gm_blank_sheet(const char* design, const char* assessor, const char* timestamp, char** out_json);
GM_API gm_status gm_aggregate_sheet(const char* sheet_json, gm_format format, char** out);
GM_API gm_status gm_derive(const char* criterion, const char* inputs_json, char** out_json);
GM_API gm_status gm_kop(const char* channel_kind, char** out_json);

/* ---- aggregation over a workspace ---- */

/* request_json: NULL, {"assessor": ...} or a merge policy document. */
GM_API gm_status gm_aggregate(gm_workspace* ws, const char* design, const char* request_json, gm_format format,
                              char** out);
GM_API gm_status gm_merge(gm_workspace* ws, const char* design, const char* policy_json, char** out_sheet_json);
/* merge: NULL for the default per-design rule, or "mean". */
GM_API gm_status gm_compare(gm_workspace* ws, const char* const* ids, size_t count, const char* merge,
                            gm_format format, char** out);
/* count == 0 renders every design in the workspace. */
GM_API gm_status gm_report(gm_workspace* ws, const char* const* ids, size_t count, gm_format format, char** out);

/* ---- invariance sheets ---- */

/* shape: "circular" or "rectangular". */
GM_API gm_status gm_geometry_sheet(const unsigned char* png, size_t png_len, double vf_deg, double vd_cm,
                                   double ppcm, const char* shape, unsigned char** out_png, size_t* out_png_len,
                                   char** out_manifest);
GM_API gm_status gm_colorimetry_sheet(const unsigned char* png, size_t png_len, unsigned char** out_png,
                                      size_t* out_png_len, char** out_manifest);

/* ---- service ---- */

/* Serves the HTTP API until the process ends. Returns only on failure. */
GM_API gm_status gm_serve(gm_workspace* ws, const char* host, int port);

#ifdef __cplusplus
}
#endif

#endif /* GLYPHMCDA_H */
