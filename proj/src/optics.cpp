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

#include "optics.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "config.hpp"
#include "error.hpp"

namespace dfsnet {

namespace {

constexpr int kMaxRouteSteps = 256;

}  // namespace

// ---------------------------------------------------------------------------
// Polarization primitives
// ---------------------------------------------------------------------------

Matrix hwp_unitary(double theta_degrees) {
    const double t = 2.0 * theta_degrees * std::numbers::pi / 180.0;
    const double c = std::cos(t);
    const double s = std::sin(t);
    return Matrix::from_rows({{c, s}, {s, -c}});
}

std::array<Complex, 2> polarizer_axis(double theta_degrees) {
    const double t = theta_degrees * std::numbers::pi / 180.0;
    return {Complex(std::cos(t), 0.0), Complex(std::sin(t), 0.0)};
}

ProjectionResult polarizer_project(const StateVector& state, double theta_degrees) {
    if (!state.has_photon()) {
        throw_invalid("polarizer_project: no photon in the register");
    }
    return state.project(QubitLabel::photon(), polarizer_axis(theta_degrees));
}

void cavity_reflect(StateVector& state, const NetworkLayout& layout, int node,
                    double phase_error) {
    layout.require_node(node);
    if (!state.has_photon()) {
        throw_invalid("cavity_reflect: no photon in the register");
    }
    const std::array<BitCondition, 3> conds = {
        BitCondition{QubitLabel::photon(), 0},
        BitCondition{layout.atom(node, 1), 1},
        BitCondition{layout.atom(node, 2), 1},
    };
    const Complex phase = phase_error == 0.0
                              ? Complex(-1.0, 0.0)
                              : std::polar(1.0, std::numbers::pi + phase_error);
    state.controlled_phase(conds, phase);
}

// ---------------------------------------------------------------------------
// TRSchedule
// ---------------------------------------------------------------------------

TrState TRSchedule::state_at(const std::string& tr, double time) const {
    auto it = trs.find(tr);
    if (it == trs.end() || it->second.empty()) {
        throw_validation("schedule has no timeline for coupler '" + tr + "'");
    }
    const auto& events = it->second;
    TrState state = events.front().state;
    for (const auto& ev : events) {
        if (ev.time <= time) {
            state = ev.state;
        } else {
            break;
        }
    }
    return state;
}

void TRSchedule::validate() const {
    if (!(t0 > 0.0) || !(t1 > 0.0)) {
        throw_validation("schedule segment durations t0 and t1 must be positive");
    }
    for (const auto& [name, events] : trs) {
        if (events.empty()) {
            throw_validation("coupler '" + name + "' has an empty timeline");
        }
        if (events.front().time != 0.0) {
            throw_validation("coupler '" + name + "' timeline must start at time 0");
        }
        for (std::size_t i = 1; i < events.size(); ++i) {
            if (!(events[i].time > events[i - 1].time)) {
                throw_validation("coupler '" + name +
                                 "' timeline times must be strictly increasing");
            }
        }
    }
}

// ---------------------------------------------------------------------------
// OpticalTable
// ---------------------------------------------------------------------------

void OpticalTable::add_element(Element e) {
    if (e.name.empty()) throw_invalid("element name must be non-empty");
    if (e.name.find('.') != std::string::npos) {
        throw_invalid("element name '" + e.name + "' must not contain '.'");
    }
    if (find(e.name) != nullptr) {
        throw_invalid("duplicate element name '" + e.name + "'");
    }
    if (e.label.empty()) e.label = e.name;
    elements_.push_back(std::move(e));
}

void OpticalTable::add_edge(PortRef from, PortRef to, EdgeTime time) {
    require(from.element);
    require(to.element);
    if (by_from_.contains(from)) {
        throw_invalid("duplicate line leaving " + from.str());
    }
    by_from_[from] = edges_.size();
    edges_.push_back(Edge{std::move(from), std::move(to), time});
}

void OpticalTable::add_entry(const std::string& element_name) {
    const Element& e = require(element_name);
    if (e.kind != ElementKind::Port) {
        throw_invalid("entry element '" + element_name + "' is not a port");
    }
    entries_.push_back(element_name);
}

const Element* OpticalTable::find(const std::string& name) const {
    for (const auto& e : elements_) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

const Element& OpticalTable::require(const std::string& name) const {
    const Element* e = find(name);
    if (!e) throw_invalid("unknown element '" + name + "'");
    return *e;
}

const Edge* OpticalTable::edge_from(const PortRef& port) const {
    auto it = by_from_.find(port);
    return it == by_from_.end() ? nullptr : &edges_[it->second];
}

// ---------------------------------------------------------------------------
// Routing
// ---------------------------------------------------------------------------

namespace {

double resolve_time(const EdgeTime& t, const TRSchedule& schedule) {
    switch (t.kind) {
        case EdgeTime::Kind::Value: return t.value;
        case EdgeTime::Kind::T0: return schedule.t0;
        case EdgeTime::Kind::T1: return schedule.t1;
    }
    throw_validation("unreachable edge-time kind");
}

std::string tr_exit_port(const Element& e, const std::string& arrival, TrState state) {
    // transmit couples a<->b and c<->d; reflect couples a<->d and b<->c.
    if (state == TrState::Transmit) {
        if (arrival == "a") return "b";
        if (arrival == "b") return "a";
        if (arrival == "c") return "d";
        if (arrival == "d") return "c";
    } else {
        if (arrival == "a") return "d";
        if (arrival == "d") return "a";
        if (arrival == "b") return "c";
        if (arrival == "c") return "b";
    }
    throw_validation("coupler '" + e.name + "' has no port '" + arrival + "'");
}

std::string circulator_exit_port(const Element& e, const std::string& arrival) {
    if (arrival == "p1") return "p2";
    if (arrival == "p2") return "p3";
    if (arrival == "p3") return "p1";
    throw_validation("circulator '" + e.name + "' has no port '" + arrival + "'");
}

std::string pbs_exit_port(const Element& e, const std::string& arrival) {
    if (arrival == "a") return "b";
    if (arrival == "b") return "a";
    throw_validation("beam splitter '" + e.name + "' has no port '" + arrival + "'");
}

}  // namespace

RouteResult route_photon(const OpticalTable& table, const TRSchedule& schedule,
                         const std::string& entry, double start_time) {
    schedule.validate();
    const Element& launch = table.require(entry);
    if (launch.kind != ElementKind::Port) {
        throw_invalid("entry element '" + entry + "' is not a port");
    }

    RouteResult result;
    double time = start_time;
    result.steps.push_back(TraceStep{launch.name, launch.label, time, "enter"});

    // The launch port has exactly one outgoing line.
    const Edge* out = nullptr;
    for (const auto& e : table.edges()) {
        if (e.from.element == entry) {
            if (out) throw_invalid("entry port '" + entry + "' has multiple outgoing lines");
            out = &e;
        }
    }
    if (!out) {
        result.error = "dead end: no line leaves entry port '" + entry + "'";
        return result;
    }

    PortRef from = out->from;
    while (true) {
        const Edge* edge = table.edge_from(from);
        if (!edge) {
            result.error = "dead end: no line leaves " + from.str();
            return result;
        }
        time += resolve_time(edge->time, schedule);
        const Element& here = table.require(edge->to.element);
        const std::string& arrival = edge->to.port;

        std::string action;
        std::string exit_port;
        switch (here.kind) {
            case ElementKind::Detector:
                result.steps.push_back(TraceStep{here.name, here.label, time, "detect"});
                result.ok = true;
                result.detected = true;
                result.terminal = here.name;
                return result;
            case ElementKind::Loss:
                result.steps.push_back(TraceStep{here.name, here.label, time, "absorb"});
                result.ok = true;
                result.detected = false;
                result.terminal = here.name;
                return result;
            case ElementKind::Port:
                result.steps.push_back(TraceStep{here.name, here.label, time, "exit"});
                result.error = "pulse left the table at port '" + here.name + "'";
                return result;
            case ElementKind::Tr: {
                const TrState state = schedule.state_at(here.name, time);
                action = state == TrState::Transmit ? "transmit" : "reflect";
                exit_port = tr_exit_port(here, arrival, state);
                break;
            }
            case ElementKind::Circulator:
                action = "route";
                exit_port = circulator_exit_port(here, arrival);
                break;
            case ElementKind::Pbs:
                action = "cross";
                exit_port = pbs_exit_port(here, arrival);
                break;
            case ElementKind::Hwp:
            case ElementKind::Mirror:
            case ElementKind::Polarizer:
            case ElementKind::Cavity:
                action = "pass";
                exit_port = arrival;
                break;
        }
        result.steps.push_back(TraceStep{here.name, here.label, time, action});
        if (static_cast<int>(result.steps.size()) > kMaxRouteSteps) {
            result.error = "hop bound exceeded (" + std::to_string(kMaxRouteSteps) +
                           " steps): the schedule loops the pulse";
            return result;
        }
        from = PortRef{here.name, exit_port};
    }
}

ScheduleValidation validate_schedule(const OpticalTable& table, const TRSchedule& schedule,
                                     std::span<const std::string> expected_labels,
                                     const std::string& entry, double start_time) {
    ScheduleValidation v;
    v.route = route_photon(table, schedule, entry, start_time);

    const std::size_t n = std::min(v.route.steps.size(), expected_labels.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (v.route.steps[i].label != expected_labels[i]) {
            v.divergence_index = static_cast<int>(i);
            v.expected = expected_labels[i];
            v.actual = v.route.steps[i].label;
            v.message = "trace diverges at step " + std::to_string(i) + ": expected '" +
                        v.expected + "', got '" + v.actual + "'";
            return v;
        }
    }
    if (v.route.steps.size() != expected_labels.size()) {
        v.divergence_index = static_cast<int>(n);
        v.expected = n < expected_labels.size() ? expected_labels[n] : "<end>";
        v.actual = n < v.route.steps.size() ? v.route.steps[n].label : "<end>";
        v.message = "trace diverges at step " + std::to_string(n) + ": expected '" +
                    v.expected + "', got '" + v.actual + "'";
        if (!v.route.ok && !v.route.error.empty()) {
            v.message += " (" + v.route.error + ")";
        }
        return v;
    }
    if (!v.route.ok) {
        v.message = v.route.error.empty() ? "pulse did not reach a sink" : v.route.error;
        return v;
    }
    v.ok = true;
    v.message = "trace matches (" + std::to_string(expected_labels.size()) + " steps, " +
                (v.route.detected ? "detected at '" + v.route.terminal + "'"
                                  : "absorbed at '" + v.route.terminal + "'") +
                ")";
    return v;
}

// ---------------------------------------------------------------------------
// Built-in tables
// ---------------------------------------------------------------------------

namespace {

PortRef pr(std::string element, std::string port) {
    return PortRef{std::move(element), std::move(port)};
}

// One node's loop: entry/exit couplers around a circulator, a polarizing
// beam splitter in front of the cavity, and a waveplate+mirror return arm.
// `suffix` distinguishes the per-node copies in multi-node tables; `in_tr`
// and `out_tr` are the couplers that bracket the loop.
void add_node_loop(OpticalTable& t, const std::string& suffix, const std::string& node_label,
                   int node, const std::string& in_tr, const std::string& in_tr_port,
                   const std::string& out_tr, const std::string& detector_label) {
    const std::string c = "c" + suffix;
    const std::string pbs = "pbs" + suffix;
    const std::string cavity = "cavity" + suffix;
    const std::string hwp1 = "hwp1" + suffix;
    const std::string m = "m" + suffix;
    const std::string p45 = "p45" + suffix;
    const std::string d = "d" + suffix;

    t.add_element(Element{c, ElementKind::Circulator, "C", 0.0, -1});
    t.add_element(Element{pbs, ElementKind::Pbs, "PBS", 0.0, -1});
    t.add_element(Element{cavity, ElementKind::Cavity, node_label, 0.0, node});
    t.add_element(Element{hwp1, ElementKind::Hwp, "HWP1", 45.0, -1});
    t.add_element(Element{m, ElementKind::Mirror, "M", 0.0, -1});
    t.add_element(Element{p45, ElementKind::Polarizer, "P45", 45.0, -1});
    t.add_element(Element{d, ElementKind::Detector, detector_label, 0.0, -1});

    t.add_edge(pr(in_tr, in_tr_port), pr(c, "p1"));
    t.add_edge(pr(c, "p2"), pr(pbs, "a"));
    t.add_edge(pr(pbs, "b"), pr(cavity, "a"));
    t.add_edge(pr(cavity, "a"), pr(pbs, "b"));
    t.add_edge(pr(pbs, "a"), pr(c, "p3"));
    t.add_edge(pr(c, "p1"), pr(out_tr, "a"), EdgeTime::t0());
    t.add_edge(pr(out_tr, "d"), pr(hwp1, "a"));
    t.add_edge(pr(hwp1, "a"), pr(m, "a"));
    t.add_edge(pr(out_tr, "b"), pr(p45, "a"));
    t.add_edge(pr(p45, "a"), pr(d, "a"));
}

std::vector<SwitchEvent> static_state(TrState s) {
    return {SwitchEvent{0.0, s}};
}

}  // namespace

TableDocument single_node_table(double t0, double t1) {
    TableDocument doc;
    doc.name = "single_node";

    OpticalTable& t = doc.table;
    t.add_element(Element{"port_i", ElementKind::Port, "port i", 0.0, -1});
    t.add_element(Element{"tr1", ElementKind::Tr, "TR1", 0.0, -1});
    t.add_element(Element{"tr2", ElementKind::Tr, "TR2", 0.0, -1});
    add_node_loop(t, "0", "Cavity", 0, "tr1", "b", "tr2", "Di");
    t.add_edge(pr("port_i", "a"), pr("tr1", "a"));
    t.add_edge(pr("m0", "a"), pr("tr1", "c"), EdgeTime::t1());
    t.add_entry("port_i");

    // Loop timing: the pulse reaches the output coupler t0 after entering,
    // returns to the entry coupler at t0+t1, and reaches the output coupler
    // again at 2*t0+t1.
    TRSchedule standard;
    standard.t0 = t0;
    standard.t1 = t1;
    standard.trs["tr1"] = {SwitchEvent{0.0, TrState::Transmit},
                           SwitchEvent{t0 + t1, TrState::Reflect}};
    standard.trs["tr2"] = {SwitchEvent{0.0, TrState::Reflect},
                           SwitchEvent{2.0 * t0 + t1, TrState::Transmit}};
    doc.schedules["standard"] = standard;

    // Switching while the pulse is away from the coupler changes nothing.
    TRSchedule early;
    early.t0 = t0;
    early.t1 = t1;
    early.trs["tr1"] = {SwitchEvent{0.0, TrState::Transmit},
                        SwitchEvent{0.5 * t0, TrState::Reflect}};
    early.trs["tr2"] = {SwitchEvent{0.0, TrState::Reflect},
                        SwitchEvent{t0 + 0.5 * t1, TrState::Transmit}};
    doc.schedules["early_switch"] = early;

    // Failure modes for schedule validation.
    TRSchedule stuck1 = standard;
    stuck1.trs["tr1"] = static_state(TrState::Transmit);
    doc.schedules["tr1_stuck_transmit"] = stuck1;

    TRSchedule stuck2 = standard;
    stuck2.trs["tr2"] = static_state(TrState::Reflect);
    doc.schedules["tr2_stuck_reflect"] = stuck2;

    doc.expected_paths["hadamard"] = {
        "port i", "TR1", "C", "PBS", "Cavity", "PBS", "C", "TR2", "HWP1", "M",
        "TR1",    "C",   "PBS", "Cavity", "PBS", "C", "TR2", "P45", "Di",
    };
    return doc;
}

TableDocument two_node_table(double t0, double t1, double hop_time) {
    TableDocument doc;
    doc.name = "two_node";

    OpticalTable& t = doc.table;
    t.add_element(Element{"port_i", ElementKind::Port, "port i", 0.0, -1});
    t.add_element(Element{"port_j", ElementKind::Port, "port j", 0.0, -1});
    t.add_element(Element{"tr1", ElementKind::Tr, "TR1", 0.0, -1});
    t.add_element(Element{"tr1s", ElementKind::Tr, "TR1*", 0.0, -1});
    t.add_element(Element{"tr2", ElementKind::Tr, "TR2", 0.0, -1});
    t.add_element(Element{"tr3s", ElementKind::Tr, "TR3*", 0.0, -1});
    t.add_element(Element{"tr3", ElementKind::Tr, "TR3", 0.0, -1});
    t.add_element(Element{"tr4", ElementKind::Tr, "TR4", 0.0, -1});
    t.add_element(Element{"hwp2", ElementKind::Hwp, "HWP2", 45.0, -1});

    add_node_loop(t, "0", "Cavity i", 0, "tr1s", "b", "tr2", "Di");
    add_node_loop(t, "1", "Cavity j", 1, "tr3", "b", "tr4", "Dj");

    // Node i entry chain: port -> TR1 -> TR1* -> loop.
    t.add_edge(pr("port_i", "a"), pr("tr1", "a"));
    t.add_edge(pr("tr1", "b"), pr("tr1s", "a"));
    t.add_edge(pr("m0", "a"), pr("tr1", "c"), EdgeTime::t1());
    // Node j entry chain: port -> TR3* -> TR3 -> loop.
    t.add_edge(pr("port_j", "a"), pr("tr3s", "a"));
    t.add_edge(pr("tr3s", "b"), pr("tr3", "a"));
    t.add_edge(pr("m1", "a"), pr("tr3", "c"), EdgeTime::t1());
    // Channel between the nodes, with the shared waveplate in the middle.
    t.add_edge(pr("tr1", "d"), pr("hwp2", "a"), EdgeTime::number(hop_time));
    t.add_edge(pr("hwp2", "a"), pr("tr3s", "c"));
    t.add_edge(pr("tr3", "d"), pr("hwp2", "b"), EdgeTime::number(hop_time));
    t.add_edge(pr("hwp2", "b"), pr("tr1s", "c"));

    t.add_entry("port_i");
    t.add_entry("port_j");

    TRSchedule forward;
    forward.t0 = t0;
    forward.t1 = t1;
    forward.trs["tr1"] = static_state(TrState::Transmit);
    forward.trs["tr1s"] = static_state(TrState::Transmit);
    forward.trs["tr2"] = static_state(TrState::Reflect);
    forward.trs["tr3s"] = static_state(TrState::Reflect);
    forward.trs["tr3"] = static_state(TrState::Transmit);
    forward.trs["tr4"] = static_state(TrState::Transmit);
    doc.schedules["cz_forward"] = forward;

    TRSchedule reverse;
    reverse.t0 = t0;
    reverse.t1 = t1;
    reverse.trs["tr1"] = static_state(TrState::Transmit);
    reverse.trs["tr1s"] = static_state(TrState::Reflect);
    reverse.trs["tr2"] = static_state(TrState::Transmit);
    reverse.trs["tr3s"] = static_state(TrState::Transmit);
    reverse.trs["tr3"] = static_state(TrState::Transmit);
    reverse.trs["tr4"] = static_state(TrState::Reflect);
    doc.schedules["cz_reverse"] = reverse;

    doc.expected_paths["cz_forward"] = {
        "port i", "TR1", "TR1*", "C",   "PBS", "Cavity i", "PBS", "C",
        "TR2",    "HWP1", "M",   "TR1", "HWP2", "TR3*",    "TR3", "C",
        "PBS",    "Cavity j", "PBS", "C", "TR4", "P45",    "Dj",
    };
    doc.expected_paths["cz_reverse"] = {
        "port j", "TR3*", "TR3", "C",   "PBS", "Cavity j", "PBS", "C",
        "TR4",    "HWP1", "M",   "TR3", "HWP2", "TR1*",    "C",   "PBS",
        "Cavity i", "PBS", "C",  "TR2", "P45", "Di",
    };
    return doc;
}

// ---------------------------------------------------------------------------
// Declarative text format
// ---------------------------------------------------------------------------

namespace {

std::string kind_to_string(ElementKind k) {
    switch (k) {
        case ElementKind::Port: return "port";
        case ElementKind::Tr: return "tr";
        case ElementKind::Circulator: return "circulator";
        case ElementKind::Pbs: return "pbs";
        case ElementKind::Hwp: return "hwp";
        case ElementKind::Mirror: return "mirror";
        case ElementKind::Polarizer: return "polarizer";
        case ElementKind::Cavity: return "cavity";
        case ElementKind::Detector: return "detector";
        case ElementKind::Loss: return "loss";
    }
    throw_invalid("unreachable element kind");
}

ElementKind kind_from_string(const std::string& s, const ConfigNode& where) {
    if (s == "port") return ElementKind::Port;
    if (s == "tr") return ElementKind::Tr;
    if (s == "circulator") return ElementKind::Circulator;
    if (s == "pbs") return ElementKind::Pbs;
    if (s == "hwp") return ElementKind::Hwp;
    if (s == "mirror") return ElementKind::Mirror;
    if (s == "polarizer") return ElementKind::Polarizer;
    if (s == "cavity") return ElementKind::Cavity;
    if (s == "detector") return ElementKind::Detector;
    if (s == "loss") return ElementKind::Loss;
    where.fail("unknown element kind '" + s + "'");
}

PortRef parse_port_ref(const std::string& s, const ConfigNode& where) {
    const auto dot = s.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == s.size()) {
        where.fail("expected element.port, got '" + s + "'");
    }
    return PortRef{s.substr(0, dot), s.substr(dot + 1)};
}

EdgeTime parse_edge_time(const std::string& s, const ConfigNode& where) {
    if (s == "t0") return EdgeTime::t0();
    if (s == "t1") return EdgeTime::t1();
    try {
        return EdgeTime::number(parse_double(s));
    } catch (const Error&) {
        where.fail("expected a number, t0, or t1, got '" + s + "'");
    }
}

std::string edge_time_to_string(const EdgeTime& t) {
    switch (t.kind) {
        case EdgeTime::Kind::Value: return format_double(t.value);
        case EdgeTime::Kind::T0: return "t0";
        case EdgeTime::Kind::T1: return "t1";
    }
    throw_invalid("unreachable edge-time kind");
}

TrState tr_state_from_string(const std::string& s, const ConfigNode& where) {
    if (s == "transmit") return TrState::Transmit;
    if (s == "reflect") return TrState::Reflect;
    where.fail("expected transmit or reflect, got '" + s + "'");
}

}  // namespace

TableDocument parse_table_document(std::string_view text) {
    const ConfigNode root = parse_config(text);
    TableDocument doc;
    if (auto name = root.scalar("name")) doc.name = *name;

    const ConfigNode& elements = root.require_child("elements");
    for (const auto& el : elements.children) {
        Element e;
        e.name = el.key;
        auto kind = el.scalar("kind");
        if (!kind) el.fail("element '" + el.key + "' needs a kind");
        e.kind = kind_from_string(*kind, el);
        if (auto label = el.scalar("label")) e.label = *label;
        if (const ConfigNode* angle = el.child("angle")) {
            e.angle = angle->value_as_double(0);
        }
        if (const ConfigNode* node = el.child("node")) {
            e.node = node->value_as_int(0);
        }
        doc.table.add_element(std::move(e));
    }

    const ConfigNode& edges = root.require_child("edges");
    for (const auto& ed : edges.children) {
        if (ed.key != "line") ed.fail("expected 'line', got '" + ed.key + "'");
        if (ed.value_count() != 2 && ed.value_count() != 3) {
            ed.fail("line needs: from.port to.port [time]");
        }
        EdgeTime time;
        if (ed.value_count() == 3) time = parse_edge_time(ed.value(2), ed);
        doc.table.add_edge(parse_port_ref(ed.value(0), ed), parse_port_ref(ed.value(1), ed),
                           time);
    }

    for (const auto& entry : root.children_of("entry")) {
        if (entry->value_count() != 1) entry->fail("entry takes one element name");
        doc.table.add_entry(entry->value(0));
    }

    if (const ConfigNode* schedules = root.child("schedules")) {
        for (const auto& sch : schedules->children) {
            TRSchedule s;
            for (const auto& item : sch.children) {
                if (item.key == "t0") {
                    s.t0 = item.value_as_double(0);
                } else if (item.key == "t1") {
                    s.t1 = item.value_as_double(0);
                } else {
                    std::vector<SwitchEvent> events;
                    for (const auto& ev : item.children) {
                        if (ev.key != "at" || ev.value_count() != 2) {
                            ev.fail("expected: at <time> <transmit|reflect>");
                        }
                        events.push_back(SwitchEvent{ev.value_as_double(0),
                                                     tr_state_from_string(ev.value(1), ev)});
                    }
                    if (events.empty()) {
                        item.fail("coupler '" + item.key + "' needs at least one 'at' event");
                    }
                    s.trs[item.key] = std::move(events);
                }
            }
            s.validate();
            doc.schedules[sch.key] = std::move(s);
        }
    }

    if (const ConfigNode* paths = root.child("expected_paths")) {
        for (const auto& p : paths->children) {
            std::vector<std::string> labels;
            labels.reserve(p.value_count());
            for (std::size_t i = 0; i < p.value_count(); ++i) labels.push_back(p.value(i));
            if (labels.empty()) p.fail("expected path '" + p.key + "' has no labels");
            doc.expected_paths[p.key] = std::move(labels);
        }
    }
    return doc;
}

TableDocument load_table_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_invalid("cannot open table file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_table_document(buf.str());
    } catch (const Error& e) {
        throw Error(e.code(), path + ": " + e.what());
    }
}

std::string serialize_table_document(const TableDocument& doc) {
    ConfigNode root;
    auto& top = root.children;

    auto add_scalar = [](ConfigNode& parent, std::string key,
                         std::vector<std::string> values) -> ConfigNode& {
        ConfigNode n;
        n.key = std::move(key);
        n.values = std::move(values);
        parent.children.push_back(std::move(n));
        return parent.children.back();
    };

    if (!doc.name.empty()) add_scalar(root, "name", {doc.name});
    for (const auto& entry : doc.table.entries()) add_scalar(root, "entry", {entry});

    ConfigNode elements;
    elements.key = "elements";
    for (const auto& e : doc.table.elements()) {
        ConfigNode n;
        n.key = e.name;
        add_scalar(n, "kind", {kind_to_string(e.kind)});
        if (e.label != e.name) add_scalar(n, "label", {e.label});
        if (e.kind == ElementKind::Hwp || e.kind == ElementKind::Polarizer) {
            add_scalar(n, "angle", {format_double(e.angle)});
        }
        if (e.kind == ElementKind::Cavity) {
            add_scalar(n, "node", {std::to_string(e.node)});
        }
        elements.children.push_back(std::move(n));
    }
    top.push_back(std::move(elements));

    ConfigNode edges;
    edges.key = "edges";
    for (const auto& ed : doc.table.edges()) {
        std::vector<std::string> values = {ed.from.str(), ed.to.str()};
        if (!(ed.time.kind == EdgeTime::Kind::Value && ed.time.value == 0.0)) {
            values.push_back(edge_time_to_string(ed.time));
        }
        add_scalar(edges, "line", std::move(values));
    }
    top.push_back(std::move(edges));

    if (!doc.schedules.empty()) {
        ConfigNode schedules;
        schedules.key = "schedules";
        for (const auto& [name, s] : doc.schedules) {
            ConfigNode n;
            n.key = name;
            add_scalar(n, "t0", {format_double(s.t0)});
            add_scalar(n, "t1", {format_double(s.t1)});
            for (const auto& [tr, events] : s.trs) {
                ConfigNode timeline;
                timeline.key = tr;
                for (const auto& ev : events) {
                    add_scalar(timeline, "at",
                               {format_double(ev.time),
                                ev.state == TrState::Transmit ? "transmit" : "reflect"});
                }
                n.children.push_back(std::move(timeline));
            }
            schedules.children.push_back(std::move(n));
        }
        top.push_back(std::move(schedules));
    }

    if (!doc.expected_paths.empty()) {
        ConfigNode paths;
        paths.key = "expected_paths";
        for (const auto& [name, labels] : doc.expected_paths) {
            add_scalar(paths, name, labels);
        }
        top.push_back(std::move(paths));
    }
    return serialize_config(root);
}

}  // namespace dfsnet
