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

#include "trilinear/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "trilinear/error.hpp"

namespace trilinear {

namespace {

constexpr std::array<std::string_view, kWaveformCount> kWaveformNames = {
    "shuttle_p1", "shuttle_p2", "shuttle_p3", "shuttle_p4", "shuttle_r1",
    "shuttle_r2", "shuttle_r3", "shuttle_r4", "hop",        "drive_1q",
    "pulse_2q",   "readout",    "compensation"};

bool has_shuttle(const WaveformSet& set) {
  for (std::size_t w = 0; w < 8; ++w) {
    if (set.test(w)) return true;
  }
  return false;
}

bool mixes_readout(const WaveformSet& set) {
  return set.test(static_cast<std::size_t>(Waveform::ReadoutPulse)) && has_shuttle(set);
}

}  // namespace

std::string_view to_string(Waveform w) { return kWaveformNames[static_cast<std::size_t>(w)]; }

Waveform waveform_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kWaveformCount; ++i) {
    if (kWaveformNames[i] == name) return static_cast<Waveform>(i);
  }
  throw Error(ErrorCode::ParseError, "unknown waveform class '" + std::string(name) + "'");
}

WaveformSet waveform_set(std::initializer_list<Waveform> ws) {
  WaveformSet set;
  for (auto w : ws) set.set(static_cast<std::size_t>(w));
  return set;
}

std::vector<Waveform> members(const WaveformSet& set) {
  std::vector<Waveform> out;
  for (std::size_t i = 0; i < kWaveformCount; ++i) {
    if (set.test(i)) out.push_back(static_cast<Waveform>(i));
  }
  return out;
}

WaveformSet waveforms_for(const MicroOp& op) {
  switch (op.kind) {
    case OpKind::HorizontalStep: {
      const int diff = op.to.axis - op.from.axis;
      const bool forward = diff == 1 || diff < -1;
      if (forward) {
        return waveform_set({Waveform::ShuttlePhase1, Waveform::ShuttlePhase2,
                             Waveform::ShuttlePhase3, Waveform::ShuttlePhase4});
      }
      return waveform_set({Waveform::ShuttleReversePhase1, Waveform::ShuttleReversePhase2,
                           Waveform::ShuttleReversePhase3, Waveform::ShuttleReversePhase4});
    }
    case OpKind::VerticalTransfer: return waveform_set({Waveform::HopPulse});
    case OpKind::TwoQubitGate: return waveform_set({Waveform::TwoQubitPulse});
    case OpKind::SingleQubitPulse: return waveform_set({Waveform::OneQubitDrive});
    case OpKind::Readout: return waveform_set({Waveform::ReadoutPulse});
    case OpKind::Idle: return {};
  }
  return {};
}

void MuxConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (n_ac_inputs < 1) fail("mux.n_ac_inputs must be positive");
  if (n_dc_inputs < 1) fail("mux.n_dc_inputs must be positive");
  if (gates_per_dc_input < 1) fail("mux.gates_per_dc_input must be positive");
  if (!(dc_refresh_interval_s > 0.0)) fail("mux.dc_refresh_interval_s must be positive");
  if (!(dc_hold_time_s > dc_refresh_interval_s)) {
    fail("mux.dc_hold_time_s must exceed mux.dc_refresh_interval_s");
  }
}

int Schedule::total_shuttle_steps() const {
  int steps = 0;
  for (const auto& tick : ticks) {
    for (const auto& e : tick.entries) {
      if (e.offset == 0 && e.op.kind == OpKind::HorizontalStep) ++steps;
    }
  }
  return steps;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Occupancy: return "occupancy";
    case ViolationKind::SwapThrough: return "swap_through";
    case ViolationKind::DeadSite: return "dead_site";
    case ViolationKind::Ordering: return "ordering";
    case ViolationKind::Mux: return "mux";
    case ViolationKind::ChainBreak: return "chain_break";
  }
  return "unknown";
}

namespace {

struct TimedOp {
  int qubit;
  MicroOp op;
  int start;
};

struct Presence {
  int qubit;
  SiteCoord host;
  std::optional<std::pair<SiteCoord, SiteCoord>> move;
};

struct TaskTick {
  std::vector<Presence> present;
  std::vector<int> busy;
  WaveformSet classes;
};

struct Task {
  std::vector<int> qubits;
  std::vector<TimedOp> ops;
  std::vector<TaskTick> ticks;
  int duration() const { return static_cast<int>(ticks.size()); }
};

void append(Task& task, int qubit, const MicroOp& op) {
  const int start = task.duration();
  task.ops.push_back({qubit, op, start});
  for (int k = 0; k < op.duration_ticks; ++k) {
    TaskTick tt;
    Presence p{qubit, op.is_move() ? op.to : op.from, std::nullopt};
    if (op.is_move()) p.move = std::make_pair(op.from, op.to);
    tt.present.push_back(p);
    tt.busy.push_back(qubit);
    if (op.kind == OpKind::TwoQubitGate) tt.busy.push_back(op.partner);
    tt.classes = waveforms_for(op);
    task.ticks.push_back(std::move(tt));
  }
}

/// Space-time reservation table shared by the greedy and exhaustive placers.
class Reservations {
 public:
  explicit Reservations(const MuxConfig& mux) : mux_(mux) {}

  bool fits(const Task& task, int t0) const {
    for (int k = 0; k < task.duration(); ++k) {
      const std::size_t t = static_cast<std::size_t>(t0 + k);
      if (t >= slots_.size()) return true;
      const Slot& slot = slots_[t];
      const TaskTick& tt = task.ticks[static_cast<std::size_t>(k)];
      for (const auto& p : tt.present) {
        for (const auto& h : slot.hosted) {
          if (h.site == p.host && h.qubit != p.qubit) return false;
        }
        if (p.move) {
          for (const auto& m : slot.moves) {
            if (m.from == p.move->second && m.to == p.move->first) return false;
          }
        }
      }
      for (int q : tt.busy) {
        for (const auto& b : slot.busy) {
          if (b.qubit == q) return false;
        }
      }
      WaveformSet merged = tt.classes;
      for (std::size_t w = 0; w < kWaveformCount; ++w) {
        if (slot.drive[w] > 0) merged.set(w);
      }
      if (merged.count() > mux_.n_ac_inputs) return false;
      if (mux_.readout_exclusive && mixes_readout(merged)) return false;
    }
    return true;
  }

  void place(int id, const Task& task, int t0) {
    const std::size_t end = static_cast<std::size_t>(t0 + task.duration());
    if (slots_.size() < end) slots_.resize(end);
    for (int k = 0; k < task.duration(); ++k) {
      Slot& slot = slots_[static_cast<std::size_t>(t0 + k)];
      const TaskTick& tt = task.ticks[static_cast<std::size_t>(k)];
      for (const auto& p : tt.present) {
        slot.hosted.push_back({id, p.qubit, p.host});
        if (p.move) slot.moves.push_back({id, p.move->first, p.move->second});
      }
      for (int q : tt.busy) slot.busy.push_back({id, q});
      for (std::size_t w = 0; w < kWaveformCount; ++w) {
        if (tt.classes.test(w)) ++slot.drive[w];
      }
    }
  }

  void remove(int id, const Task& task, int t0) {
    for (int k = 0; k < task.duration(); ++k) {
      Slot& slot = slots_[static_cast<std::size_t>(t0 + k)];
      std::erase_if(slot.hosted, [id](const auto& h) { return h.task == id; });
      std::erase_if(slot.moves, [id](const auto& m) { return m.task == id; });
      std::erase_if(slot.busy, [id](const auto& b) { return b.task == id; });
      const TaskTick& tt = task.ticks[static_cast<std::size_t>(k)];
      for (std::size_t w = 0; w < kWaveformCount; ++w) {
        if (tt.classes.test(w)) --slot.drive[w];
      }
    }
  }

 private:
  struct Hosted {
    int task;
    int qubit;
    SiteCoord site;
  };
  struct Move {
    int task;
    SiteCoord from;
    SiteCoord to;
  };
  struct Busy {
    int task;
    int qubit;
  };
  struct Slot {
    std::vector<Hosted> hosted;
    std::vector<Move> moves;
    std::vector<Busy> busy;
    std::array<int, kWaveformCount> drive{};
  };

  const MuxConfig& mux_;
  std::vector<Slot> slots_;
};

struct Prepared {
  std::vector<Task> tasks;
  std::map<int, SiteCoord> homes;
  std::vector<std::vector<int>> task_qubits;
  /// Tasks that must finish before each task may start.
  std::vector<std::vector<std::size_t>> preds;
};

Prepared prepare(const Circuit& circuit, const TrilinearLayout& layout, const DefectMap& defects,
                 const MuxConfig& mux, const CompileOptions& options) {
  mux.validate();
  const auto reconfig = reconfigure_for_defects(layout, defects);
  const auto blocked = live_qubit_sites(layout, reconfig);
  const auto& grid = layout.grid();
  const auto& d = options.durations;

  Prepared out;
  for (const auto& cell : layout.cells()) {
    if (!reconfig.sacrificed_qubits.contains(cell)) {
      out.homes[grid.qubit_id(cell)] = layout.site_of(cell);
    }
  }

  std::set<Cell> measured;
  std::map<int, std::size_t> last_task;
  const std::size_t n = circuit.ops.size();
  out.preds.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& lop = circuit.ops[i];
    const std::string where = "op " + std::to_string(i);
    const std::size_t want = lop.kind == GateKind::TwoQubit ? 2 : 1;
    if (lop.cells.size() != want) {
      throw Error(ErrorCode::InvalidCircuit, where + ": expected " + std::to_string(want) +
                                                 " cells, got " +
                                                 std::to_string(lop.cells.size()));
    }
    for (const auto& c : lop.cells) {
      if (!grid.contains(c)) {
        throw Error(ErrorCode::InvalidCircuit, where + ": cell " + to_string(c) + " outside grid");
      }
      if (reconfig.sacrificed_qubits.contains(c)) {
        throw Error(ErrorCode::DeadQubit,
                    where + ": cell " + to_string(c) + " was sacrificed to defects");
      }
      if (measured.contains(c)) {
        throw Error(ErrorCode::InvalidCircuit,
                    where + ": cell " + to_string(c) + " was already measured");
      }
    }

    Task task;
    switch (lop.kind) {
      case GateKind::OneQubit: {
        const SiteCoord s = layout.site_of(lop.cells[0]);
        MicroOp op{OpKind::SingleQubitPulse, s, s, d.one_qubit,
                   s.axis % 2 == 0 ? FreqClass::Nu1 : FreqClass::Nu2, -1};
        append(task, grid.qubit_id(lop.cells[0]), op);
        break;
      }
      case GateKind::Measure: {
        const SiteCoord s = layout.site_of(lop.cells[0]);
        append(task, grid.qubit_id(lop.cells[0]), MicroOp{OpKind::Readout, s, s, d.readout});
        measured.insert(lop.cells[0]);
        break;
      }
      case GateKind::TwoQubit: {
        const auto& [a, b] = std::pair(lop.cells[0], lop.cells[1]);
        if (a == b) throw Error(ErrorCode::InvalidCircuit, where + ": 2q op on a single cell");
        const auto plan = two_qubit_plan(layout, a, b, defects, blocked, d);
        for (const auto& op : plan.ops) append(task, plan.qubit, op);
        break;
      }
    }
    for (const auto& c : lop.cells) task.qubits.push_back(grid.qubit_id(c));
    for (const auto& tt : task.ticks) {
      if (tt.classes.count() > mux.n_ac_inputs) {
        throw Error(ErrorCode::MuxInfeasible,
                    where + ": a micro-op needs " + std::to_string(tt.classes.count()) +
                        " waveform classes but only " + std::to_string(mux.n_ac_inputs) +
                        " AC inputs exist");
      }
    }
    for (int q : task.qubits) {
      auto it = last_task.find(q);
      if (it != last_task.end()) out.preds[i].push_back(it->second);
      last_task[q] = i;
    }
    out.task_qubits.push_back(task.qubits);
    out.tasks.push_back(std::move(task));
  }
  for (const auto& [before, after] : circuit.deps) {
    if (before >= n || after >= n || before >= after) {
      throw Error(ErrorCode::InvalidCircuit, "dependency " + std::to_string(before) + "->" +
                                                 std::to_string(after) + " is invalid");
    }
    out.preds[after].push_back(before);
  }
  return out;
}

Schedule assemble(const Prepared& prep, const std::vector<int>& starts,
                  const std::vector<std::pair<std::size_t, std::size_t>>& deps) {
  Schedule s;
  s.homes = prep.homes;
  s.task_qubits = prep.task_qubits;
  s.deps = deps;
  std::size_t makespan = 0;
  for (std::size_t i = 0; i < prep.tasks.size(); ++i) {
    makespan = std::max(makespan,
                        static_cast<std::size_t>(starts[i] + prep.tasks[i].duration()));
  }
  s.ticks.resize(makespan);
  for (std::size_t i = 0; i < prep.tasks.size(); ++i) {
    for (const auto& top : prep.tasks[i].ops) {
      const WaveformSet drive = waveforms_for(top.op);
      for (int k = 0; k < top.op.duration_ticks; ++k) {
        Tick& tick = s.ticks[static_cast<std::size_t>(starts[i] + top.start + k)];
        tick.entries.push_back({static_cast<int>(i), top.qubit, top.op, k, drive});
        tick.classes |= drive;
      }
    }
  }
  return s;
}

int ready_time(const Prepared& prep, const std::vector<int>& starts, std::size_t i) {
  int ready = 0;
  for (std::size_t p : prep.preds[i]) {
    ready = std::max(ready, starts[p] + prep.tasks[p].duration());
  }
  return ready;
}

std::vector<int> greedy_starts(const Prepared& prep, const MuxConfig& mux) {
  Reservations table(mux);
  std::vector<int> starts(prep.tasks.size(), 0);
  for (std::size_t i = 0; i < prep.tasks.size(); ++i) {
    int t0 = ready_time(prep, starts, i);
    while (!table.fits(prep.tasks[i], t0)) ++t0;
    table.place(static_cast<int>(i), prep.tasks[i], t0);
    starts[i] = t0;
  }
  return starts;
}

std::vector<int> serial_starts(const Prepared& prep) {
  std::vector<int> starts(prep.tasks.size(), 0);
  int clock = 0;
  for (std::size_t i = 0; i < prep.tasks.size(); ++i) {
    starts[i] = clock;
    clock += prep.tasks[i].duration();
  }
  return starts;
}

int span_of(const Prepared& prep, const std::vector<int>& starts) {
  int span = 0;
  for (std::size_t i = 0; i < prep.tasks.size(); ++i) {
    span = std::max(span, starts[i] + prep.tasks[i].duration());
  }
  return span;
}

}  // namespace

Schedule compile(const Circuit& circuit, const TrilinearLayout& layout, const DefectMap& defects,
                 const MuxConfig& mux, const CompileOptions& options) {
  const Prepared prep = prepare(circuit, layout, defects, mux, options);
  // A schedule that fits k inputs fits any budget above k, so keep the best
  // greedy run over every budget up to the real one.
  std::size_t floor = 1;
  for (const auto& task : prep.tasks) {
    for (const auto& tt : task.ticks) floor = std::max(floor, tt.classes.count());
  }
  const std::size_t cap = std::min(mux.n_ac_inputs, kWaveformCount);
  std::vector<int> best = greedy_starts(prep, mux);
  int best_span = span_of(prep, best);
  MuxConfig trial = mux;
  for (std::size_t k = cap; k-- > floor;) {
    trial.n_ac_inputs = k;
    auto starts = greedy_starts(prep, trial);
    const int span = span_of(prep, starts);
    if (span < best_span) {
      best_span = span;
      best = std::move(starts);
    }
  }
  auto serial = serial_starts(prep);
  if (span_of(prep, serial) < best_span) best = std::move(serial);
  return assemble(prep, best, circuit.deps);
}

Schedule compile_serial(const Circuit& circuit, const TrilinearLayout& layout,
                        const DefectMap& defects, const MuxConfig& mux,
                        const CompileOptions& options) {
  const Prepared prep = prepare(circuit, layout, defects, mux, options);
  return assemble(prep, serial_starts(prep), circuit.deps);
}

std::size_t optimal_makespan(const Circuit& circuit, const TrilinearLayout& layout,
                             const DefectMap& defects, const MuxConfig& mux,
                             const CompileOptions& options) {
  if (circuit.ops.size() > 4 || layout.length() > 12) {
    throw Error(ErrorCode::InvalidCircuit,
                "exhaustive search is limited to 4 ops on layouts up to 12 dots long");
  }
  const Prepared prep = prepare(circuit, layout, defects, mux, options);
  const std::size_t n = prep.tasks.size();
  if (n == 0) return 0;

  int best = static_cast<int>(compile(circuit, layout, defects, mux, options).makespan());
  Reservations table(mux);
  std::vector<int> starts(n, 0);

  std::function<void(std::size_t, int)> search = [&](std::size_t i, int span) {
    if (i == n) {
      best = std::min(best, span);
      return;
    }
    const Task& task = prep.tasks[i];
    for (int t0 = ready_time(prep, starts, i); t0 + task.duration() < best; ++t0) {
      if (!table.fits(task, t0)) continue;
      table.place(static_cast<int>(i), task, t0);
      starts[i] = t0;
      search(i + 1, std::max(span, t0 + task.duration()));
      table.remove(static_cast<int>(i), task, t0);
    }
  };
  search(0, 0);
  return static_cast<std::size_t>(best);
}

std::vector<Violation> validate_schedule(const Schedule& schedule, const TrilinearLayout& layout,
                                         const DefectMap& defects, const MuxConfig& mux) {
  std::vector<Violation> out;
  auto report = [&](ViolationKind kind, int tick, const std::string& detail) {
    out.push_back({kind, tick, detail});
  };

  std::map<int, SiteCoord> pos = schedule.homes;
  std::map<int, std::pair<int, int>> task_span;

  for (std::size_t ti = 0; ti < schedule.ticks.size(); ++ti) {
    const int t = static_cast<int>(ti);
    const Tick& tick = schedule.ticks[ti];

    std::map<int, int> engaged;
    for (const auto& e : tick.entries) {
      ++engaged[e.qubit];
      if (e.op.kind == OpKind::TwoQubitGate) ++engaged[e.op.partner];
      auto [it, fresh] = task_span.try_emplace(e.task, t, t);
      if (!fresh) it->second.second = t;
      if (e.task < 0 || static_cast<std::size_t>(e.task) >= schedule.task_qubits.size()) {
        report(ViolationKind::Ordering, t, "entry names unknown task");
      } else {
        const auto& tq = schedule.task_qubits[static_cast<std::size_t>(e.task)];
        if (std::find(tq.begin(), tq.end(), e.qubit) == tq.end()) {
          report(ViolationKind::Ordering, t, "qubit " + std::to_string(e.qubit) +
                                                 " acts outside its task");
        }
      }
    }
    for (const auto& [q, count] : engaged) {
      if (count > 1) {
        report(ViolationKind::Ordering, t, "qubit " + std::to_string(q) + " has " +
                                               std::to_string(count) + " ops in one tick");
      }
    }

    std::map<int, SiteCoord> host = pos;
    WaveformSet classes;
    std::vector<const TickEntry*> moves;
    for (const auto& e : tick.entries) {
      classes |= waveforms_for(e.op);
      auto it = pos.find(e.qubit);
      if (it == pos.end()) {
        report(ViolationKind::ChainBreak, t, "qubit " + std::to_string(e.qubit) + " is not resident");
        continue;
      }
      if (it->second != e.op.from) {
        report(ViolationKind::ChainBreak, t,
               "qubit " + std::to_string(e.qubit) + " acts at " + to_string(e.op.from) +
                   " but sits at " + to_string(it->second));
      }
      if (e.op.kind == OpKind::TwoQubitGate) {
        auto pit = pos.find(e.op.partner);
        if (pit == pos.end() || pit->second != e.op.to) {
          report(ViolationKind::ChainBreak, t,
                 "partner " + std::to_string(e.op.partner) + " is not at " + to_string(e.op.to));
        }
      }
      if (e.op.is_move()) {
        if (!lattice_adjacent(layout, e.op.from, e.op.to) &&
            !(e.op.kind == OpKind::VerticalTransfer && e.op.from.axis == e.op.to.axis &&
              (e.op.from.row == Row::Middle) != (e.op.to.row == Row::Middle))) {
          report(ViolationKind::ChainBreak, t, "move " + to_string(e.op.from) + "->" +
                                                   to_string(e.op.to) + " skips dots");
        }
        if (defects.barrier_dead(e.op.from, e.op.to)) {
          report(ViolationKind::DeadSite, t, "move crosses a dead barrier");
        }
        host[e.qubit] = e.op.to;
        moves.push_back(&e);
      }
    }

    std::map<SiteCoord, std::vector<int>> by_site;
    for (const auto& [q, s] : host) by_site[s].push_back(q);
    for (const auto& [s, qs] : by_site) {
      if (qs.size() > 1) {
        std::ostringstream os;
        os << qs.size() << " qubits on " << to_string(s);
        report(ViolationKind::Occupancy, t, os.str());
      }
      if (defects.site_dead(s)) {
        report(ViolationKind::DeadSite, t, "qubit on dead dot " + to_string(s));
      }
    }
    for (std::size_t i = 0; i < moves.size(); ++i) {
      for (std::size_t j = i + 1; j < moves.size(); ++j) {
        if (moves[i]->op.from == moves[j]->op.to && moves[i]->op.to == moves[j]->op.from) {
          report(ViolationKind::SwapThrough, t, "qubits " + std::to_string(moves[i]->qubit) +
                                                    " and " + std::to_string(moves[j]->qubit) +
                                                    " swap dots");
        }
      }
    }
    if (classes.count() > mux.n_ac_inputs) {
      report(ViolationKind::Mux, t, std::to_string(classes.count()) +
                                        " waveform classes exceed " +
                                        std::to_string(mux.n_ac_inputs) + " AC inputs");
    }
    if (mux.readout_exclusive && mixes_readout(classes)) {
      report(ViolationKind::Mux, t, "readout shares a tick with shuttling");
    }

    for (const auto& e : tick.entries) {
      if (e.op.is_move() && e.offset == e.op.duration_ticks - 1 && pos.contains(e.qubit)) {
        pos[e.qubit] = e.op.to;
      }
    }
  }

  // Per-qubit program order and explicit dependencies.
  std::map<int, std::vector<std::size_t>> per_qubit;
  for (std::size_t i = 0; i < schedule.task_qubits.size(); ++i) {
    for (int q : schedule.task_qubits[i]) per_qubit[q].push_back(i);
  }
  auto check_before = [&](std::size_t a, std::size_t b, const std::string& why) {
    auto ia = task_span.find(static_cast<int>(a));
    auto ib = task_span.find(static_cast<int>(b));
    if (ia == task_span.end() || ib == task_span.end()) return;
    if (ia->second.second >= ib->second.first) {
      report(ViolationKind::Ordering, ib->second.first,
             "op " + std::to_string(b) + " starts before op " + std::to_string(a) +
                 " finishes (" + why + ")");
    }
  };
  for (const auto& [q, tasks] : per_qubit) {
    for (std::size_t k = 1; k < tasks.size(); ++k) {
      check_before(tasks[k - 1], tasks[k], "qubit " + std::to_string(q));
    }
  }
  for (const auto& [a, b] : schedule.deps) check_before(a, b, "dependency");
  return out;
}

Circuit random_circuit(const TrilinearLayout& layout, const DefectMap& defects,
                       std::size_t n_ops, std::uint64_t seed) {
  const auto reconfig = reconfigure_for_defects(layout, defects);
  const auto& grid = layout.grid();
  std::set<Cell> alive;
  for (const auto& c : layout.cells()) {
    if (!reconfig.sacrificed_qubits.contains(c)) alive.insert(c);
  }
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) {
    return static_cast<std::size_t>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
  };
  Circuit circuit;
  while (circuit.ops.size() < n_ops && !alive.empty()) {
    std::vector<Cell> pool(alive.begin(), alive.end());
    const Cell a = pool[pick(pool.size())];
    const auto roll = pick(10);
    if (roll < 5) {
      std::vector<Cell> partners;
      if (roll < 2) {
        for (const auto& b : alive) {
          if (supported_pair(layout, a, b)) partners.push_back(b);
        }
      } else {
        for (const auto& b : neighbors_2d(grid, a)) {
          if (alive.contains(b)) partners.push_back(b);
        }
      }
      if (!partners.empty()) {
        circuit.ops.push_back({GateKind::TwoQubit, {a, partners[pick(partners.size())]}});
        continue;
      }
    }
    if (roll == 9) {
      circuit.ops.push_back({GateKind::Measure, {a}});
      alive.erase(a);
    } else {
      circuit.ops.push_back({GateKind::OneQubit, {a}, 0.5});
    }
  }
  return circuit;
}

DcRefreshReport dc_refresh_plan(const MuxConfig& mux, long long n_gates) {
  if (n_gates < 1) throw Error(ErrorCode::InvalidConfig, "n_gates must be at least 1");
  mux.validate();
  DcRefreshReport r;
  r.gates_per_input = (n_gates + mux.n_dc_inputs - 1) / mux.n_dc_inputs;
  r.cycle_time_s = static_cast<double>(r.gates_per_input) * mux.dc_refresh_interval_s;
  r.feasible = r.cycle_time_s <= mux.dc_hold_time_s;
  r.max_gates_per_input =
      static_cast<long long>(std::floor(mux.dc_hold_time_s / mux.dc_refresh_interval_s));
  return r;
}

WaveformUsage waveform_usage(const Schedule& schedule) {
  WaveformUsage u;
  for (const auto& tick : schedule.ticks) {
    std::array<int, kWaveformCount> h{};
    for (const auto& e : tick.entries) {
      for (std::size_t w = 0; w < kWaveformCount; ++w) {
        if (e.drive.test(w)) ++h[w];
      }
    }
    const auto distinct = static_cast<std::size_t>(
        std::count_if(h.begin(), h.end(), [](int c) { return c > 0; }));
    u.histogram.push_back(h);
    u.distinct.push_back(distinct);
    u.max_distinct = std::max(u.max_distinct, distinct);
  }
  return u;
}

}  // namespace trilinear
