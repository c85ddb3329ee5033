// Copyright 2026 The dfsnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dfs.hpp"
#include "statevec.hpp"

namespace dfsnet {

// ---------------------------------------------------------------------------
// Polarization-optics primitives (state evolution)
// ---------------------------------------------------------------------------

// Half-wave plate at angle theta (degrees) in the {|h>, |v>} basis:
//     [[cos 2t,  sin 2t],
//      [sin 2t, -cos 2t]].
// 45 degrees swaps h and v; 22.5 degrees is the polarization Hadamard.
Matrix hwp_unitary(double theta_degrees);

// Transmission axis cos(t)|h> + sin(t)|v> of a linear polarizer.
std::array<Complex, 2> polarizer_axis(double theta_degrees);

// Projects the in-flight photon onto the polarizer axis; the post-state has
// the photon absorbed (removed from the register).
ProjectionResult polarizer_project(const StateVector& state, double theta_degrees);

// Conditional phase picked up when the photon pulse reflects off a node's
// cavity: components with the photon in |h> and both node atoms in |1>
// acquire exp(i(pi + phase_error)); everything else is unchanged (|v> light
// bypasses the cavity at the polarizing beam splitter).
void cavity_reflect(StateVector& state, const NetworkLayout& layout, int node,
                    double phase_error = 0.0);

// ---------------------------------------------------------------------------
// Pulse routing over an optical table
// ---------------------------------------------------------------------------

enum class ElementKind {
    Port,        // entry/exit coupler; reaching its input from inside is an error
    Tr,          // switchable transmit/reflect coupler
    Circulator,  // one-way port cycler p1 -> p2 -> p3 -> p1
    Pbs,         // polarizing beam splitter; routed as one pulse (a <-> b)
    Hwp,
    Mirror,
    Polarizer,
    Cavity,
    Detector,  // sink
    Loss,      // sink (absorbed, no click)
};

// TR semantics: four ports a, b, c, d.
//   transmit: a <-> b, c <-> d
//   reflect:  a <-> d, b <-> c
enum class TrState { Transmit, Reflect };

struct Element {
    std::string name;   // unique within a table
    ElementKind kind = ElementKind::Mirror;
    std::string label;  // display label used in traces; defaults to name
    double angle = 0.0;  // hwp/polarizer
    int node = -1;       // cavity
};

struct PortRef {
    std::string element;
    std::string port;

    friend bool operator<(const PortRef& a, const PortRef& b) {
        return a.element != b.element ? a.element < b.element : a.port < b.port;
    }
    friend bool operator==(const PortRef&, const PortRef&) = default;
    std::string str() const { return element + "." + port; }
};

// Edge transit time: a number, or symbolic t0/t1 resolved against the
// active schedule's segment durations.
struct EdgeTime {
    enum class Kind { Value, T0, T1 };
    Kind kind = Kind::Value;
    double value = 0.0;

    static EdgeTime number(double v) { return {Kind::Value, v}; }
    static EdgeTime t0() { return {Kind::T0, 0.0}; }
    static EdgeTime t1() { return {Kind::T1, 0.0}; }
};

struct Edge {
    PortRef from;
    PortRef to;
    EdgeTime time;
};

struct SwitchEvent {
    double time = 0.0;
    TrState state = TrState::Transmit;
};

// Per-TR switching timeline. The state at time t is the last event at or
// before t; every timeline must start at time 0. t0 and t1 are the
// durations of the two loop segments (entry->cavity->output coupler, and
// output coupler->waveplate->mirror->entry coupler) that symbolic edge
// times refer to.
struct TRSchedule {
    double t0 = 1.0;
    double t1 = 0.5;
    std::map<std::string, std::vector<SwitchEvent>> trs;

    TrState state_at(const std::string& tr, double time) const;
    void validate() const;
};

class OpticalTable {
public:
    void add_element(Element e);
    void add_edge(PortRef from, PortRef to, EdgeTime time = {});
    void add_entry(const std::string& element_name);

    const Element* find(const std::string& name) const;
    const Element& require(const std::string& name) const;
    const std::vector<Element>& elements() const { return elements_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<std::string>& entries() const { return entries_; }
    const Edge* edge_from(const PortRef& port) const;

private:
    std::vector<Element> elements_;
    std::vector<Edge> edges_;
    std::vector<std::string> entries_;
    std::map<PortRef, std::size_t> by_from_;
};

struct TraceStep {
    std::string element;  // unique name
    std::string label;    // display label (caption-style)
    double time = 0.0;
    std::string action;   // enter/transmit/reflect/pass/route/detect/absorb
};

struct RouteResult {
    std::vector<TraceStep> steps;
    bool ok = false;        // pulse reached a sink
    bool detected = false;  // sink was a detector
    std::string terminal;   // sink element name
    std::string error;      // routing error description when !ok
};

// Walks one pulse from the entry port at start_time until it reaches a sink,
// leaves the table, hits a dead end, or exceeds the hop bound.
RouteResult route_photon(const OpticalTable& table, const TRSchedule& schedule,
                         const std::string& entry, double start_time = 0.0);

struct ScheduleValidation {
    bool ok = false;
    int divergence_index = -1;  // first position where the trace differs
    std::string expected;
    std::string actual;
    std::string message;
    RouteResult route;
};

// Routes the pulse and compares the visited display labels against the
// expected sequence.
ScheduleValidation validate_schedule(const OpticalTable& table, const TRSchedule& schedule,
                                     std::span<const std::string> expected_labels,
                                     const std::string& entry, double start_time = 0.0);

// A table plus its named schedules and expected paths, as stored in the
// declarative text format.
struct TableDocument {
    std::string name;
    OpticalTable table;
    std::map<std::string, TRSchedule> schedules;
    std::map<std::string, std::vector<std::string>> expected_paths;
};

// Built-in single-node loop: entry coupler TR1, circulator, polarizing beam
// splitter in front of the cavity, output coupler TR2, waveplate HWP1 and
// mirror on the return arm, 45-degree polarizer and detector at the exit.
// Ships schedules "standard" (switch TR1 after the full loop time),
// "early_switch" (flip TR1 right after the pulse passes), and two broken
// ones ("tr1_stuck_transmit", "tr2_stuck_reflect"), plus expected path
// "hadamard".
TableDocument single_node_table(double t0 = 1.0, double t1 = 0.5);

// Built-in two-node network joined by a channel holding waveplate HWP2.
// Schedules "cz_forward" (pulse enters at node i, detected at Dj) and
// "cz_reverse" keep every TR static. Expected paths "cz_forward" and
// "cz_reverse".
TableDocument two_node_table(double t0 = 1.0, double t1 = 0.5, double hop_time = 1.0);

// Declarative text format (keys: elements, edges, schedules, expected_paths).
TableDocument parse_table_document(std::string_view text);
TableDocument load_table_document(const std::string& path);
std::string serialize_table_document(const TableDocument& doc);

}  // namespace dfsnet
