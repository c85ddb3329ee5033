/* Copyright 2026 The dfsnet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* dfsnet: heralded simulator of a photon-mediated quantum network whose
 * logical qubits live in two-atom decoherence-free subspaces.
 *
 * The library is exposed through opaque handles and integer status codes.
 * Every function that can fail returns a dfsnet_status; on failure,
 * dfsnet_last_error() returns a thread-local description of what went wrong.
 * Out-parameters are written only on DFSNET_OK.
 */

#ifndef DFSNET_DFSNET_H_
#define DFSNET_DFSNET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define DFSNET_API
#else
#define DFSNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dfsnet_status {
    DFSNET_OK = 0,
    DFSNET_ERROR = 1,             /* unexpected runtime failure */
    DFSNET_INVALID_ARGUMENT = 2,  /* bad handle, index, or name */
    DFSNET_PARSE_ERROR = 3,       /* malformed scenario or table text */
    DFSNET_VALIDATION_ERROR = 4,  /* well-formed input with invalid content */
    DFSNET_IMPOSSIBLE_BRANCH = 5, /* post-selection on a zero-probability event */
} dfsnet_status;

/* Library version, "major.minor.patch". Static storage; do not free. */
DFSNET_API const char* dfsnet_version(void);

/* Description of the most recent failure on this thread. Static storage,
 * valid until the next failing call on the same thread; do not free. */
DFSNET_API const char* dfsnet_last_error(void);

/* Frees a string returned through a char** out-parameter. NULL is a no-op. */
DFSNET_API void dfsnet_string_free(char* s);

/* ------------------------------------------------------------------------
 * Network simulation
 * --------------------------------------------------------------------- */

/* A network of 1..6 nodes, each holding one logical qubit encoded in two
 * atoms, plus the transient photonic bus. The handle owns the register
 * state and the random stream used when sampling. */
typedef struct dfsnet_network dfsnet_network;

typedef struct dfsnet_noise_params {
    int dephasing_kind;    /* 0 off, 1 uniform, 2 gaussian */
    double dephasing_sigma; /* radians; width of the gaussian draw */
    int dephasing_scope;   /* 0 per-node, 1 global */
    int dephasing_epoch;   /* 0 before first pulse, 1 between pulses, 2 both */
    double loss_reflection; /* photon-loss probability per cavity reflection */
    double loss_hop;        /* photon-loss probability per inter-node hop */
    double cpf_phase_error; /* radians added to the conditional pi phase */
    uint64_t seed;          /* random stream seed */
} dfsnet_noise_params;

/* Fills *params with the noiseless defaults. */
DFSNET_API void dfsnet_noise_params_init(dfsnet_noise_params* params);

typedef struct dfsnet_gate_result {
    int success;             /* 1 when the herald fired */
    char detector[8];        /* heralding detector label, e.g. "D0" */
    double probability;      /* success-branch probability (post-selection)
                              * or the trajectory weight (sampling) */
    int photons;             /* photons consumed */
    int cavity_reflections;  /* cavity reflections consumed */
    int channel_hops;        /* inter-node channel uses */
    double leakage;          /* population outside the code space afterwards */
} dfsnet_gate_result;

typedef struct dfsnet_teleport_result {
    int success;
    int m_i;                 /* logical Bell outcome at the payload node */
    int m_j;                 /* logical Bell outcome at the relay node */
    char correction[4];      /* "I", "X", "Z", or "ZX" */
    double branch_probability;
    double herald_probability;
    double total_success_probability;
    int photons;
    int cavity_reflections;
    int channel_hops;
    double leakage;
} dfsnet_teleport_result;

typedef struct dfsnet_readout {
    int dominant;      /* most populated configuration: 0, 1, or 2 (leaked) */
    double alpha_re;   /* logical |0> amplitude (phase-canonical) */
    double alpha_im;
    double beta_re;    /* logical |1> amplitude */
    double beta_im;
    int entangled;     /* 1 when the node is entangled with the rest */
    double p_code0;
    double p_code1;
    double p_leak;
} dfsnet_readout;

/* Creates a network of `nodes` nodes in the all-|0> logical state. */
DFSNET_API dfsnet_status dfsnet_network_create(int nodes, dfsnet_network** out);
DFSNET_API void dfsnet_network_free(dfsnet_network* net);

/* Replaces the noise model (and reseeds the random stream). Configure the
 * network before running gates on it. */
DFSNET_API dfsnet_status dfsnet_network_set_noise(dfsnet_network* net,
                                                  const dfsnet_noise_params* params);

/* Selects how heralds are resolved: 0 post-selects the success branch and
 * reports its probability, 1 samples a trajectory with the handle's random
 * stream. Default 0. */
DFSNET_API dfsnet_status dfsnet_network_set_sampling(dfsnet_network* net,
                                                     int sample);

/* Resets the register to the logical basis state `bits` ('0'/'1' per node,
 * node 0 first). */
DFSNET_API dfsnet_status dfsnet_network_encode_basis(dfsnet_network* net,
                                                     const char* bits);

/* Resets the register to a logical superposition: count parallel entries of
 * per-node bitstrings and complex amplitudes. The amplitudes must be
 * normalized to within 1e-6. */
DFSNET_API dfsnet_status dfsnet_network_superpose(dfsnet_network* net, size_t count,
                                                  const char* const* bits,
                                                  const double* re,
                                                  const double* im);

/* Runs one heralded gate. `gate` is one of "x", "z", "hadamard" (1 node),
 * "cz", "cnot", "swap", "bell_prep" (2 nodes); `nodes` lists the target
 * node indices. The register advances to the post-gate state (the heralded
 * branch under post-selection, the sampled branch otherwise). `result` may
 * be NULL. */
DFSNET_API dfsnet_status dfsnet_network_apply_gate(dfsnet_network* net,
                                                   const char* gate,
                                                   const int* nodes,
                                                   size_t node_count,
                                                   dfsnet_gate_result* result);

/* Teleports the logical state of node i to node k via the relay node j.
 * force_m_i / force_m_j pin the Bell outcomes (pass 0 or 1); pass -1 to
 * leave an outcome unforced (sampled, or uniform post-selection weight).
 * `result` may be NULL. */
DFSNET_API dfsnet_status dfsnet_network_teleport(dfsnet_network* net, int node_i,
                                                 int node_j, int node_k,
                                                 int force_m_i, int force_m_j,
                                                 dfsnet_teleport_result* result);

/* Reads the logical content of one node. */
DFSNET_API dfsnet_status dfsnet_network_readout(const dfsnet_network* net, int node,
                                                dfsnet_readout* out);

/* Amplitude of one logical basis string in the current register state. */
DFSNET_API dfsnet_status dfsnet_network_amplitude(const dfsnet_network* net,
                                                  const char* bits, double* re,
                                                  double* im);

/* Fidelity |<target|state>|^2 of the register against the logical
 * superposition given by count/bits/re/im (same convention as superpose). */
DFSNET_API dfsnet_status dfsnet_network_logical_fidelity(const dfsnet_network* net,
                                                         size_t count,
                                                         const char* const* bits,
                                                         const double* re,
                                                         const double* im,
                                                         double* out);

/* Total population outside the code space. */
DFSNET_API dfsnet_status dfsnet_network_leakage(const dfsnet_network* net,
                                                double* out);

/* ------------------------------------------------------------------------
 * Scenarios and reports
 * --------------------------------------------------------------------- */

typedef struct dfsnet_scenario dfsnet_scenario;
typedef struct dfsnet_report dfsnet_report;

DFSNET_API dfsnet_status dfsnet_scenario_parse(const char* text,
                                               dfsnet_scenario** out);
DFSNET_API dfsnet_status dfsnet_scenario_load(const char* path,
                                              dfsnet_scenario** out);
DFSNET_API dfsnet_status dfsnet_scenario_serialize(const dfsnet_scenario* sc,
                                                   char** out);
DFSNET_API void dfsnet_scenario_free(dfsnet_scenario* sc);

/* Command-line style overrides, applied after parsing. */
DFSNET_API dfsnet_status dfsnet_scenario_set_seed(dfsnet_scenario* sc,
                                                  uint64_t seed);
DFSNET_API dfsnet_status dfsnet_scenario_set_trials(dfsnet_scenario* sc,
                                                    int64_t trials);
DFSNET_API dfsnet_status dfsnet_scenario_set_format(dfsnet_scenario* sc,
                                                    const char* format);
DFSNET_API dfsnet_status dfsnet_scenario_set_force_branch(dfsnet_scenario* sc,
                                                          int m_i, int m_j);

/* Runs the scenario (gate, teleport, or routing check). */
DFSNET_API dfsnet_status dfsnet_scenario_run(const dfsnet_scenario* sc,
                                             dfsnet_report** out);

/* Ideal logical truth table of a gate protocol over `nodes` nodes. */
DFSNET_API dfsnet_status dfsnet_truth_table(const char* protocol, int nodes,
                                            dfsnet_report** out);

/* Sweeps one noise parameter ("cpf_phase_error", "photon_loss", or
 * "dephasing_sigma") over a monotone grid. */
DFSNET_API dfsnet_status dfsnet_sweep(const dfsnet_scenario* sc,
                                      const char* parameter, const double* grid,
                                      size_t grid_size, dfsnet_report** out);

/* Routes a photon through the scenario's optical table and checks the
 * traversal (and, when named, the expected path). */
DFSNET_API dfsnet_status dfsnet_routing_check(const dfsnet_scenario* sc,
                                              dfsnet_report** out);

/* Photon budget and wall-clock estimate for the scenario's protocol. */
DFSNET_API dfsnet_status dfsnet_estimate_time(const dfsnet_scenario* sc,
                                              dfsnet_report** out);

/* Renders a report. `format` is "json", "csv", or NULL for the scenario's
 * declared format; include_timestamp 0 omits the generation time, making
 * the output byte-stable. Free the string with dfsnet_string_free. */
DFSNET_API dfsnet_status dfsnet_report_render(const dfsnet_report* report,
                                              const char* format,
                                              int include_timestamp, char** out);

/* Process exit code the report asks for: 0 success, 3 when an expectation
 * or routing check failed. */
DFSNET_API dfsnet_status dfsnet_report_exit_code(const dfsnet_report* report,
                                                 int* out);
DFSNET_API void dfsnet_report_free(dfsnet_report* report);

/* ------------------------------------------------------------------------
 * Physical timing
 * --------------------------------------------------------------------- */

/* Gate-time estimate for a protocol ("x", "z", "hadamard", "cz", "cnot",
 * "swap", "bell_prep", "teleport") from cavity linewidth kappa/2pi [MHz],
 * coupling g/2pi [MHz], atomic linewidth gamma/2pi [MHz], and single-
 * reflection duration t [us]. Any out-parameter may be NULL. */
DFSNET_API dfsnet_status dfsnet_estimate_gate_time(double kappa_mhz, double g_mhz,
                                                   double gamma_mhz, double t_us,
                                                   const char* protocol,
                                                   double* seconds,
                                                   double* kappa_t,
                                                   double* cooperativity,
                                                   int* regime_ok);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DFSNET_DFSNET_H_ */
