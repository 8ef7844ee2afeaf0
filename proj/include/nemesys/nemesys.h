#ifndef NEMESYS_NEMESYS_H
#define NEMESYS_NEMESYS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NEMESYS_BUILDING)
#    define NEMESYS_API __declspec(dllexport)
#  else
#    define NEMESYS_API __declspec(dllimport)
#  endif
#else
#  define NEMESYS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nemesys_status {
    NEMESYS_OK = 0,
    NEMESYS_E_INVALID_ARGUMENT = 1, /* null pointer, bad number, bad hex, bad options */
    NEMESYS_E_COMMAND = 2,          /* command spec rejected (unknown pattern, range, ...) */
    NEMESYS_E_CONFIG = 3,           /* config file missing or invalid */
    NEMESYS_E_IO = 4,               /* file or socket failure */
    NEMESYS_E_STATE = 5,            /* call not valid in the current state */
    NEMESYS_E_INTERNAL = 99
} nemesys_status;

/* Message for the last failing call on this thread; empty after success. */
NEMESYS_API const char* nemesys_last_error(void);
NEMESYS_API const char* nemesys_status_name(nemesys_status status);
NEMESYS_API const char* nemesys_version(void);

/* Every char** output is heap allocated; release with nemesys_free_string. */
NEMESYS_API void nemesys_free_string(char* s);

/* ---- command link ---------------------------------------------------- */

typedef struct nemesys_link nemesys_link;

/* config_dir may be NULL for the shipped quantization table. */
NEMESYS_API nemesys_status nemesys_link_create(const char* config_dir, nemesys_link** out);
NEMESYS_API void nemesys_link_destroy(nemesys_link* link);

/* Spec text such as "circle speed=0.5 depth=1 radius=5 dir=ccw". hex_out
   receives the 25-digit packet; report_json (nullable) the field breakdown. */
NEMESYS_API nemesys_status nemesys_link_encode(const nemesys_link* link, const char* spec,
                                               char** hex_out, char** report_json);

/* Any-length hex bit stream (4 bits per digit). The report carries the
   disposition; a stream that fails to decode is still NEMESYS_OK. */
NEMESYS_API nemesys_status nemesys_link_decode(const nemesys_link* link, const char* hex,
                                               char** report_json);

NEMESYS_API nemesys_status nemesys_link_quant_table(const nemesys_link* link, char** json_out);

/* ---- Monte Carlo sweep ------------------------------------------------ */

/* options_json keys (all optional): t_values, ber_values, trials, seed,
   codeword_only, threads. table_out gets "T,ber,n,trials,successes,rate". */
NEMESYS_API nemesys_status nemesys_sweep(const char* options_json, char** table_out,
                                         char** summary_json);

/* ---- vehicle ------------------------------------------------------------ */

/* Standard trials for shipped configuration 1..3 (config_dir nullable). */
NEMESYS_API nemesys_status nemesys_vehicle_report(int configuration, const char* config_dir,
                                                  char** json_out);

/* ---- mission simulation --------------------------------------------- */

typedef struct nemesys_sim nemesys_sim;

typedef struct nemesys_snapshot {
    double t;
    double x, y, z;
    double phi, psi;
    double u, w, r;
    int plan_id;
    int waypoint_index;
    int waypoint_count;
    char phase[24];
    char last_disposition[16]; /* empty before the first packet */
} nemesys_snapshot;

NEMESYS_API nemesys_status nemesys_sim_create(int vehicle_configuration, const char* config_dir,
                                              nemesys_sim** out);
NEMESYS_API void nemesys_sim_destroy(nemesys_sim* sim);

/* Noise applied by nemesys_sim_submit_spec and nemesys_sim_run_schedule.
   Packet i (counting from 0) sees a bit-flip channel seeded from (seed, i). */
NEMESYS_API nemesys_status nemesys_sim_set_channel(nemesys_sim* sim, double ber, uint64_t seed);

/* Raw hex stream, delivered as is. disposition_out (nullable) gets e.g. "CLEAN". */
NEMESYS_API nemesys_status nemesys_sim_submit_hex(nemesys_sim* sim, const char* hex,
                                                  char** disposition_out);
/* Encode, pass through the channel, then submit. */
NEMESYS_API nemesys_status nemesys_sim_submit_spec(nemesys_sim* sim, const char* spec,
                                                   char** disposition_out);

NEMESYS_API nemesys_status nemesys_sim_tick(nemesys_sim* sim, uint64_t ticks);

/* Schedule text: lines "<t> hex <digits>" or "<t> spec <command>". Runs
   until simulation time `duration`. */
NEMESYS_API nemesys_status nemesys_sim_run_schedule(nemesys_sim* sim, const char* schedule,
                                                    double duration);

NEMESYS_API nemesys_status nemesys_sim_snapshot(const nemesys_sim* sim, nemesys_snapshot* out);
NEMESYS_API nemesys_status nemesys_sim_trajectory_csv(const nemesys_sim* sim, char** csv_out);
NEMESYS_API nemesys_status nemesys_sim_command_log_csv(const nemesys_sim* sim, char** csv_out);
/* Active plan as "index,x,y,depth,speed" rows; header only without a plan. */
NEMESYS_API nemesys_status nemesys_sim_plan_csv(const nemesys_sim* sim, char** csv_out);

/* ---- operator console service ----------------------------------------- */

typedef struct nemesys_service nemesys_service;

typedef struct nemesys_service_options {
    const char* address;    /* NULL for 127.0.0.1 */
    uint16_t port;          /* 0 for an ephemeral port */
    int vehicle_configuration;
    double ber;
    uint64_t seed;
    double realtime_factor; /* 0 runs unthrottled */
    const char* config_dir; /* nullable */
} nemesys_service_options;

NEMESYS_API void nemesys_service_options_init(nemesys_service_options* options);
/* Binds and starts serving on a background thread. */
NEMESYS_API nemesys_status nemesys_service_start(const nemesys_service_options* options,
                                                 nemesys_service** out);
NEMESYS_API uint16_t nemesys_service_port(const nemesys_service* service);
/* Blocks until nemesys_service_stop is called from another thread. */
NEMESYS_API nemesys_status nemesys_service_wait(nemesys_service* service);
NEMESYS_API void nemesys_service_stop(nemesys_service* service);
NEMESYS_API void nemesys_service_destroy(nemesys_service* service);

#ifdef __cplusplus
}
#endif

#endif
