#ifndef RANK2_H
#define RANK2_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum Rank2Command {
  RANK2_COMMAND_CATALOG = 0,
  RANK2_COMMAND_SPLIT = 1,
  RANK2_COMMAND_VERIFY = 2,
  RANK2_COMMAND_RECOMBINE = 3,
  RANK2_COMMAND_SERIES = 4,
} Rank2Command;

typedef enum Rank2Status {
  RANK2_STATUS_OK = 0,
  RANK2_STATUS_NULL_POINTER = 1,
  RANK2_STATUS_INVALID_UTF8 = 2,
  RANK2_STATUS_INVALID_SPEC = 3,
  RANK2_STATUS_CUTOFF_EXCEEDED = 4,
  RANK2_STATUS_MATH_FAILURE = 5,
  RANK2_STATUS_BUFFER_TOO_SMALL = 6,
  RANK2_STATUS_INTERNAL = 7,
} Rank2Status;

typedef struct Rank2Config Rank2Config;

typedef struct Rank2Report Rank2Report;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Static description of a status code.
 */
const char *rank2_status_message(enum Rank2Status status);

const char *rank2_version(void);

/*
 Validate a configuration. `cutoff` 0 selects the default 4p^2.

 # Safety
 `group` must be a NUL-terminated string; `out` must be writable.
 */
enum Rank2Status rank2_config_new(uint32_t p,
                                  const char *group,
                                  uint32_t cutoff,
                                  uint64_t seed,
                                  struct Rank2Config **out);

/*
 # Safety
 `config` must come from `rank2_config_new` or be NULL.
 */
void rank2_config_free(struct Rank2Config *config);

/*
 Run a command. `summand` may be NULL except for Recombine and Series.

 # Safety
 `config` must be a live handle; `summand` NULL or NUL-terminated; `out` writable.
 */
enum Rank2Status rank2_run(const struct Rank2Config *config,
                           enum Rank2Command command,
                           const char *summand,
                           struct Rank2Report **out);

/*
 1 if no check failed, 0 otherwise, -1 for NULL.

 # Safety
 `report` must be a live handle or NULL.
 */
int32_t rank2_report_passed(const struct Rank2Report *report);

/*
 Number of checks and number of failing checks.

 # Safety
 `report` must be a live handle; the out pointers writable.
 */
enum Rank2Status rank2_report_counts(const struct Rank2Report *report,
                                     size_t *checks,
                                     size_t *failed);

/*
 Copy the JSON report, NUL included, into `buf`. `needed` receives the required size.

 # Safety
 `report` must be a live handle; `buf` must hold `len` bytes or be NULL with `len` 0.
 */
enum Rank2Status rank2_report_json(const struct Rank2Report *report,
                                   char *buf,
                                   size_t len,
                                   size_t *needed);

/*
 Coefficients from a Series report, degrees 0..=cutoff.

 # Safety
 `report` must be a live handle; `buf` must hold `len` values or be NULL with `len` 0.
 */
enum Rank2Status rank2_report_expansion(const struct Rank2Report *report,
                                        int64_t *buf,
                                        size_t len,
                                        size_t *needed);

/*
 # Safety
 `report` must come from `rank2_run` or be NULL.
 */
void rank2_report_free(struct Rank2Report *report);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RANK2_H */
