// Copyright 2026 The Trilinear Authors
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

#include "trilinear/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "trilinear/error.hpp"
#include "trilinear/io.hpp"
#include "trilinear/kernels.hpp"
#include "trilinear/metrics.hpp"
#include "trilinear/protocol.hpp"
#include "trilinear/router.hpp"
#include "trilinear/scheduler.hpp"

namespace trilinear::cli {

namespace {

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::uint64_t seed = 0;
  bool seed_set = false;

  std::string gate;
  std::string defects_path;
  std::string circuit_path;
  std::size_t random_ops = 0;
  bool serial = false;
  std::vector<long long> ns;
  std::vector<std::string> variants;
};

RunConfig load_config(const Options& o) {
  RunConfig c = o.config_path.empty() ? RunConfig{} : config_from_json(read_json_file(o.config_path));
  if (o.seed_set) c.seed = o.seed;
  c.validate();
  return c;
}

std::string format_of(const Options& o, const std::string& fallback) {
  return o.format.empty() ? fallback : o.format;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out_path);
  if (!f) throw Error(ErrorCode::InvalidConfig, "cannot write " + o.out_path);
  f << text;
}

std::pair<Cell, Cell> parse_gate(const std::string& spec) {
  int r1, c1, r2, c2;
  char comma1, colon, comma2;
  std::istringstream is(spec);
  if (!(is >> r1 >> comma1 >> c1 >> colon >> r2 >> comma2 >> c2) || comma1 != ',' ||
      colon != ':' || comma2 != ',' || !(is >> std::ws).eof()) {
    throw Error(ErrorCode::ParseError, "gate must look like r,c:r,c, got '" + spec + "'");
  }
  return {{r1, c1}, {r2, c2}};
}

DefectMap merged_defects(const RunConfig& c, const Options& o) {
  DefectMap d = c.defects;
  if (!o.defects_path.empty()) {
    const DefectMap extra = defects_from_json(read_json_file(o.defects_path));
    for (const auto& s : extra.sites()) d.add_site(s);
    for (const auto& [a, b] : extra.barriers()) d.add_barrier(a, b);
  }
  d.validate(c.layout());
  return d;
}

void cmd_map(const Options& o, std::ostream& out) {
  const auto c = load_config(o);
  const auto layout = c.layout();
  if (format_of(o, "json") == "csv") {
    emit(o, layout_to_csv(layout), out);
  } else {
    emit(o, layout_to_json(layout).dump(2) + "\n", out);
  }
}

void cmd_route(const Options& o, std::ostream& out) {
  const auto c = load_config(o);
  const auto layout = c.layout();
  const auto defects = merged_defects(c, o);
  const auto [a, b] = parse_gate(o.gate);
  const auto plan = two_qubit_plan(layout, a, b, defects, {}, c.durations);
  if (format_of(o, "json") == "csv") {
    emit(o, plan_to_csv(plan), out);
  } else {
    emit(o, plan_to_json(plan).dump(2) + "\n", out);
  }
}

Circuit load_circuit(const Options& o, const RunConfig& c, const TrilinearLayout& layout,
                     const DefectMap& defects) {
  if (!o.circuit_path.empty()) return circuit_from_json(read_json_file(o.circuit_path));
  return random_circuit(layout, defects, o.random_ops, c.seed);
}

void cmd_schedule(const Options& o, std::ostream& out) {
  const auto c = load_config(o);
  const auto layout = c.layout();
  const auto defects = merged_defects(c, o);
  const auto circuit = load_circuit(o, c, layout, defects);
  const CompileOptions opts{c.durations};
  const auto schedule = o.serial ? compile_serial(circuit, layout, defects, c.mux, opts)
                                 : compile(circuit, layout, defects, c.mux, opts);
  const auto summary = summarize(circuit, schedule, layout, defects, c.mux, c.fidelity);
  if (format_of(o, "json") == "csv") {
    emit(o, summary_to_csv(summary), out);
  } else {
    emit(o, schedule_to_json(schedule, summary).dump(2) + "\n", out);
  }
}

double phase_error(double net) {
  return std::min(net, 2.0 * std::numbers::pi - net);
}

void cmd_simulate(const Options& o, std::ostream& out) {
  const auto c = load_config(o);
  const auto layout = c.layout();
  const auto defects = merged_defects(c, o);
  const auto circuit = load_circuit(o, c, layout, defects);
  ArrayState state = init_half_filled(layout, defects);
  const auto initial = state.occupancy();
  const int spacing = c.set_spacing > 0 ? c.set_spacing : default_set_spacing(layout);
  const auto fixture = default_fixture(layout, spacing);

  std::vector<ProtocolEvent> events;
  Json unintended = Json::array();
  int clock = 0, gates = 0, exact = 0, readouts = 0, skipped = 0, steps = 0;
  auto ticks_of = [](const std::vector<MicroOp>& ops) {
    int t = 0;
    for (const auto& op : ops) t += op.duration_ticks;
    return t;
  };
  auto shifted = [&](std::vector<ProtocolEvent> evs) {
    for (auto& e : evs) {
      e.tick += clock;
      events.push_back(std::move(e));
    }
  };

  for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
    const auto& op = circuit.ops[i];
    if (op.cells.empty() || !layout.grid().contains(op.cells[0])) {
      throw Error(ErrorCode::InvalidCircuit, "op " + std::to_string(i) + " has no valid cell");
    }
    const auto resident = state.occupant(layout.site_of(op.cells[0]));
    if (op.kind != GateKind::TwoQubit && !resident) {
      throw Error(ErrorCode::InvalidCircuit,
                  "op " + std::to_string(i) + ": cell " + to_string(op.cells[0]) +
                      " holds no qubit in the half-filled array");
    }
    const int q = resident.value_or(-1);
    switch (op.kind) {
      case GateKind::OneQubit: {
        auto g = addressed_single_qubit_gate(state, q, {"x", op.param}, c.protocol, c.durations);
        ++gates;
        if (g.addressed_exactly()) {
          ++exact;
        } else {
          Json extra = Json::array();
          for (int r : g.rotated) {
            if (r != q) extra.push_back(r);
          }
          unintended.push_back({{"op", i}, {"target", q}, {"also_rotated", std::move(extra)}});
        }
        shifted(std::move(g.events));
        clock += ticks_of(g.ops);
        state = std::move(g.state);
        break;
      }
      case GateKind::Measure: {
        auto r = readout(state, q, fixture, c.durations);
        ++readouts;
        steps += r.steps;
        shifted(std::move(r.events));
        clock += ticks_of(r.ops);
        break;
      }
      case GateKind::TwoQubit:
        ++skipped;
        events.push_back({clock, layout.site_of(op.cells[0]), q, "skipped_2q", 0.0});
        break;
    }
  }

  double worst = 0.0;
  for (const auto& [q, _] : state.positions()) {
    worst = std::max(worst, phase_error(state.net_phase(q)));
  }
  Json report{{"ops", circuit.ops.size()},
              {"addressed_gates", gates},
              {"addressed_exactly", exact},
              {"unintended", std::move(unintended)},
              {"readouts", readouts},
              {"readout_steps", steps},
              {"skipped_2q", skipped},
              {"ticks", clock},
              {"max_net_phase", worst},
              {"occupancy_restored", state.occupancy() == initial}};
  if (format_of(o, "json") == "csv") {
    emit(o, events_to_csv(events), out);
  } else {
    emit(o, events_to_json_lines(events) + Json{{"report", std::move(report)}}.dump() + "\n", out);
  }
}

std::vector<SweepSpec> parse_variants(const std::vector<std::string>& names) {
  std::vector<SweepSpec> out;
  for (const auto& name : names) {
    const auto colon = name.find(':');
    SweepSpec s{variant_from_string(name.substr(0, colon)), 1};
    if (colon != std::string::npos) {
      try {
        s.m = std::stoi(name.substr(colon + 1));
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, "bad M in variant '" + name + "'");
      }
    }
    out.push_back(s);
  }
  return out;
}

void cmd_sweep(const Options& o, std::ostream& out) {
  const auto c = load_config(o);
  const auto ns = o.ns.empty() ? std::vector<long long>{100, 10000, 1000000} : o.ns;
  const auto variants = parse_variants(o.variants.empty() ? std::vector<std::string>{"trilinear"}
                                                          : o.variants);
  const auto points = sweep_curve(ns, variants, c.pitch, {}, Exec::Parallel);
  if (format_of(o, "csv") == "json") {
    emit(o, scaling_to_json(points).dump(2) + "\n", out);
  } else {
    emit(o, scaling_to_csv(points), out);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Trilinear quantum-dot array compiler", "trilinear"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--config", o.config_path, "run configuration (JSON)");
  app.add_option("--out", o.out_path, "write the result here instead of stdout");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  auto* seed = app.add_option("--seed", o.seed, "seed for randomized circuits");

  auto* map = app.add_subcommand("map", "grid to trilinear layout");
  auto* route = app.add_subcommand("route", "plan one two-qubit gate");
  route->add_option("--gate", o.gate, "cells as r,c:r,c")->required();
  route->add_option("--defects", o.defects_path, "extra defect file (JSON)");
  auto* schedule = app.add_subcommand("schedule", "compile a circuit into ticks");
  auto* simulate = app.add_subcommand("simulate", "replay a circuit on the half-filled array");
  for (auto* sub : {schedule, simulate}) {
    auto* circ = sub->add_option("--circuit", o.circuit_path, "circuit file (JSON)");
    auto* rnd = sub->add_option("--random-ops", o.random_ops, "generate a seeded random circuit");
    circ->excludes(rnd);
    sub->add_option("--defects", o.defects_path, "extra defect file (JSON)");
  }
  schedule->add_flag("--serial", o.serial, "one logical op at a time");
  auto* sweep = app.add_subcommand("sweep", "shuttle length against array size");
  sweep->add_option("--n", o.ns, "qubit counts")->delimiter(',');
  sweep->add_option("--variants", o.variants, "trilinear, semi2d, mrow:M")->delimiter(',');

  std::vector<std::string> argv{"trilinear"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> ptrs;
  for (const auto& a : argv) ptrs.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(ptrs.size()), ptrs.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << error_document("Usage", e.what()).dump() << '\n';
    return 1;
  }
  o.seed_set = seed->count() > 0;

  try {
    if (map->parsed()) cmd_map(o, out);
    if (route->parsed()) cmd_route(o, out);
    if (schedule->parsed()) cmd_schedule(o, out);
    if (simulate->parsed()) cmd_simulate(o, out);
    if (sweep->parsed()) cmd_sweep(o, out);
  } catch (const Error& e) {
    err << error_document(std::string(to_string(e.code())), e.what()).dump() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace trilinear::cli
