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

#include "trilinear/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "trilinear/error.hpp"

namespace trilinear {

namespace {

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::InvalidConfig, path + ": " + what);
}

/// Strict object reader: every key must be consumed, and type mismatches name
/// the full field path.
class Fields {
 public:
  Fields(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) bad_field(path_.empty() ? "<root>" : path_, "expected an object");
  }
  ~Fields() = default;

  bool has(const std::string& key) const { return j_.contains(key); }

  const Json& at(const std::string& key) {
    seen_.insert(key);
    if (!j_.contains(key)) bad_field(name(key), "missing");
    return j_.at(key);
  }

  template <typename T>
  T get(const std::string& key, T fallback) {
    if (!j_.contains(key)) return fallback;
    return as<T>(at(key), name(key));
  }

  template <typename T>
  T require(const std::string& key) {
    return as<T>(at(key), name(key));
  }

  std::string name(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.contains(key)) bad_field(name(key), "unknown field");
    }
  }

  template <typename T>
  static T as(const Json& v, const std::string& path) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) bad_field(path, "expected a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) bad_field(path, "expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_integer() && !v.is_number_unsigned() && v.get<long long>() < 0) {
          bad_field(path, "expected a non-negative integer");
        }
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) bad_field(path, "expected a number");
    } else {
      if (!v.is_string()) bad_field(path, "expected a string");
    }
    return v.get<T>();
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

void check_schema(Fields& f) {
  const int v = f.require<int>("schema_version");
  if (v != kSchemaVersion) {
    bad_field(f.name("schema_version"), "unsupported version " + std::to_string(v));
  }
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string site_text(SiteCoord s) {
  std::string out(1, row_letter(s.row));
  out += std::to_string(s.axis);
  if (s.depth != 0) out += "." + std::to_string(s.depth);
  return out;
}

GateKind gate_kind_from_string(const std::string& name, const std::string& path) {
  if (name == "1q") return GateKind::OneQubit;
  if (name == "2q") return GateKind::TwoQubit;
  if (name == "meas") return GateKind::Measure;
  throw Error(ErrorCode::InvalidCircuit, path + ": unknown gate '" + name + "'");
}

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::OneQubit: return "1q";
    case GateKind::TwoQubit: return "2q";
    case GateKind::Measure: return "meas";
  }
  return "1q";
}

}  // namespace

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ParseError, source + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

void RunConfig::validate() const {
  const TrilinearLayout built = layout();
  if (!(tsv_pitch.nm() > 0.0)) bad_field("tsv_pitch_um", "must be positive");
  if (set_spacing < 0) bad_field("protocol.set_spacing", "must be non-negative");
  for (const auto& [name, v] :
       {std::pair{"horizontal", durations.horizontal}, std::pair{"vertical", durations.vertical},
        std::pair{"two_qubit", durations.two_qubit}, std::pair{"one_qubit", durations.one_qubit},
        std::pair{"readout", durations.readout}}) {
    if (v < 1) bad_field(std::string("durations.") + name, "must be at least 1 tick");
  }
  if (durations.intra_block < 0) bad_field("durations.intra_block", "must be non-negative");
  mux.validate();
  fidelity.validate();
  defects.validate(built);
}

RunConfig config_from_json(const Json& j) {
  RunConfig c;
  Fields f(j, "");
  check_schema(f);
  if (f.has("grid")) {
    Fields g(f.at("grid"), "grid");
    c.grid.rows = g.require<int>("rows");
    c.grid.cols = g.require<int>("cols");
    g.finish();
  }
  c.pitch = Length::nm(f.get<double>("pitch_nm", c.pitch.nm()));
  c.loop = f.get<bool>("loop", c.loop);
  c.m_rows = f.get<int>("m_rows", c.m_rows);
  c.tsv_pitch = Length::um(f.get<double>("tsv_pitch_um", c.tsv_pitch.um()));
  c.seed = f.get<std::uint64_t>("seed", c.seed);
  if (f.has("mux")) {
    Fields m(f.at("mux"), "mux");
    c.mux.n_ac_inputs = m.get<std::size_t>("n_ac_inputs", c.mux.n_ac_inputs);
    c.mux.n_dc_inputs = m.get<int>("n_dc_inputs", c.mux.n_dc_inputs);
    c.mux.gates_per_dc_input = m.get<int>("gates_per_dc_input", c.mux.gates_per_dc_input);
    c.mux.dc_refresh_interval_s = m.get<double>("dc_refresh_interval_s", c.mux.dc_refresh_interval_s);
    c.mux.dc_hold_time_s = m.get<double>("dc_hold_time_s", c.mux.dc_hold_time_s);
    c.mux.readout_exclusive = m.get<bool>("readout_exclusive", c.mux.readout_exclusive);
    m.finish();
  }
  if (f.has("fidelity")) {
    Fields m(f.at("fidelity"), "fidelity");
    c.fidelity.f_step = m.get<double>("f_step", c.fidelity.f_step);
    c.fidelity.f_transfer = m.get<double>("f_transfer", c.fidelity.f_transfer);
    c.fidelity.f_1q = m.get<double>("f_1q", c.fidelity.f_1q);
    c.fidelity.f_2q = m.get<double>("f_2q", c.fidelity.f_2q);
    c.fidelity.f_readout = m.get<double>("f_readout", c.fidelity.f_readout);
    m.finish();
  }
  if (f.has("protocol")) {
    Fields m(f.at("protocol"), "protocol");
    c.protocol.hop_phase_nu1 = m.get<double>("hop_phase_nu1", c.protocol.hop_phase_nu1);
    c.protocol.hop_phase_nu2 = m.get<double>("hop_phase_nu2", c.protocol.hop_phase_nu2);
    c.set_spacing = m.get<int>("set_spacing", c.set_spacing);
    m.finish();
  }
  if (f.has("durations")) {
    Fields m(f.at("durations"), "durations");
    c.durations.horizontal = m.get<int>("horizontal", c.durations.horizontal);
    c.durations.vertical = m.get<int>("vertical", c.durations.vertical);
    c.durations.two_qubit = m.get<int>("two_qubit", c.durations.two_qubit);
    c.durations.one_qubit = m.get<int>("one_qubit", c.durations.one_qubit);
    c.durations.readout = m.get<int>("readout", c.durations.readout);
    c.durations.intra_block = m.get<int>("intra_block", c.durations.intra_block);
    m.finish();
  }
  if (f.has("defects")) c.defects = defects_from_json(f.at("defects"));
  f.finish();
  c.validate();
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["grid"] = {{"rows", c.grid.rows}, {"cols", c.grid.cols}};
  j["pitch_nm"] = c.pitch.nm();
  j["loop"] = c.loop;
  j["m_rows"] = c.m_rows;
  j["tsv_pitch_um"] = c.tsv_pitch.um();
  j["seed"] = c.seed;
  j["mux"] = {{"n_ac_inputs", c.mux.n_ac_inputs},
              {"n_dc_inputs", c.mux.n_dc_inputs},
              {"gates_per_dc_input", c.mux.gates_per_dc_input},
              {"dc_refresh_interval_s", c.mux.dc_refresh_interval_s},
              {"dc_hold_time_s", c.mux.dc_hold_time_s},
              {"readout_exclusive", c.mux.readout_exclusive}};
  j["fidelity"] = {{"f_step", c.fidelity.f_step},
                   {"f_transfer", c.fidelity.f_transfer},
                   {"f_1q", c.fidelity.f_1q},
                   {"f_2q", c.fidelity.f_2q},
                   {"f_readout", c.fidelity.f_readout}};
  j["protocol"] = {{"hop_phase_nu1", c.protocol.hop_phase_nu1},
                   {"hop_phase_nu2", c.protocol.hop_phase_nu2},
                   {"set_spacing", c.set_spacing}};
  j["durations"] = {{"horizontal", c.durations.horizontal},
                    {"vertical", c.durations.vertical},
                    {"two_qubit", c.durations.two_qubit},
                    {"one_qubit", c.durations.one_qubit},
                    {"readout", c.durations.readout},
                    {"intra_block", c.durations.intra_block}};
  j["defects"] = defects_to_json(c.defects);
  return j;
}

Json site_to_json(SiteCoord site) {
  Json j = Json::array({std::string(1, row_letter(site.row)), site.axis});
  if (site.depth != 0) j.push_back(site.depth);
  return j;
}

SiteCoord site_from_json(const Json& j) {
  if (!j.is_array() || j.size() < 2 || j.size() > 3 || !j[0].is_string() ||
      j[0].get<std::string>().size() != 1 || !j[1].is_number_integer() ||
      (j.size() == 3 && !j[2].is_number_integer())) {
    throw Error(ErrorCode::ParseError, "site must look like [\"U\", axis] or [\"U\", axis, depth], got " + j.dump());
  }
  SiteCoord s;
  try {
    s.row = row_from_letter(j[0].get<std::string>()[0]);
  } catch (const Error&) {
    throw Error(ErrorCode::ParseError, "bad row letter in site " + j.dump());
  }
  s.axis = j[1].get<int>();
  s.depth = j.size() == 3 ? j[2].get<int>() : 0;
  return s;
}

Json cell_to_json(Cell cell) { return Json::array({cell.row, cell.col}); }

Cell cell_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw Error(ErrorCode::ParseError, "cell must look like [row, col], got " + j.dump());
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

Json layout_to_json(const TrilinearLayout& layout) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "layout";
  j["grid"] = {{"rows", layout.grid().rows}, {"cols", layout.grid().cols}};
  j["pitch_nm"] = layout.pitch().nm();
  j["loop"] = layout.loop();
  j["m_rows"] = layout.m_rows();
  j["length"] = layout.length();
  j["shift"] = layout.shift();
  Json sites = Json::array();
  for (const auto& cell : layout.cells()) {
    sites.push_back({{"cell", cell_to_json(cell)}, {"site", site_to_json(layout.site_of(cell))}});
  }
  j["sites"] = std::move(sites);
  return j;
}

TrilinearLayout layout_from_json(const Json& j) {
  Fields f(j, "");
  check_schema(f);
  if (f.get<std::string>("kind", "layout") != "layout") bad_field("kind", "expected \"layout\"");
  Fields g(f.at("grid"), "grid");
  const GridSpec grid{g.require<int>("rows"), g.require<int>("cols")};
  g.finish();
  const auto layout = map_to_trilinear(grid, Length::nm(f.get<double>("pitch_nm", 100.0)),
                                       f.get<bool>("loop", false), f.get<int>("m_rows", 1));
  if (f.has("length") && f.require<int>("length") != layout.length()) {
    bad_field("length", "disagrees with the grid");
  }
  if (f.has("shift") && f.require<int>("shift") != layout.shift()) {
    bad_field("shift", "disagrees with the grid");
  }
  if (f.has("sites")) {
    for (const auto& entry : f.at("sites")) {
      Fields e(entry, "sites[]");
      const Cell cell = cell_from_json(e.at("cell"));
      const SiteCoord site = site_from_json(e.at("site"));
      e.finish();
      if (!grid.contains(cell) || layout.site_of(cell) != site) {
        bad_field("sites", "cell " + to_string(cell) + " is not at " + to_string(site));
      }
    }
  }
  f.finish();
  return layout;
}

std::string layout_to_csv(const TrilinearLayout& layout) {
  std::ostringstream os;
  os << "row,col,site_row,axis,depth\n";
  for (const auto& cell : layout.cells()) {
    const auto s = layout.site_of(cell);
    os << cell.row << ',' << cell.col << ',' << row_letter(s.row) << ',' << s.axis << ','
       << s.depth << '\n';
  }
  return os.str();
}

Json defects_to_json(const DefectMap& defects) {
  Json sites = Json::array();
  for (const auto& s : defects.sites()) sites.push_back(site_to_json(s));
  Json barriers = Json::array();
  for (const auto& [a, b] : defects.barriers()) {
    barriers.push_back(Json::array({site_to_json(a), site_to_json(b)}));
  }
  return {{"sites", std::move(sites)}, {"barriers", std::move(barriers)}};
}

DefectMap defects_from_json(const Json& j) {
  DefectMap d;
  Fields f(j, "defects");
  if (f.has("schema_version")) check_schema(f);
  if (f.has("sites")) {
    for (const auto& s : f.at("sites")) d.add_site(site_from_json(s));
  }
  if (f.has("barriers")) {
    for (const auto& b : f.at("barriers")) {
      if (!b.is_array() || b.size() != 2) {
        throw Error(ErrorCode::ParseError, "barrier must be a pair of sites, got " + b.dump());
      }
      d.add_barrier(site_from_json(b[0]), site_from_json(b[1]));
    }
  }
  f.finish();
  return d;
}

Json micro_op_to_json(const MicroOp& op) {
  Json j;
  j["kind"] = std::string(to_string(op.kind));
  j["from"] = site_to_json(op.from);
  j["to"] = site_to_json(op.to);
  j["ticks"] = op.duration_ticks;
  j["freq"] = std::string(to_string(op.freq));
  if (op.partner >= 0) j["partner"] = op.partner;
  return j;
}

MicroOp micro_op_from_json(const Json& j) {
  Fields f(j, "op");
  MicroOp op;
  op.kind = op_kind_from_string(f.require<std::string>("kind"));
  op.from = site_from_json(f.at("from"));
  op.to = site_from_json(f.at("to"));
  op.duration_ticks = f.require<int>("ticks");
  const auto freq = f.get<std::string>("freq", "nu1");
  if (freq != "nu1" && freq != "nu2") bad_field("op.freq", "expected nu1 or nu2");
  op.freq = freq == "nu1" ? FreqClass::Nu1 : FreqClass::Nu2;
  op.partner = f.get<int>("partner", -1);
  f.finish();
  return op;
}

Json plan_to_json(const ShuttlePlan& plan) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "plan";
  j["qubit"] = plan.qubit;
  j["partner"] = plan.partner ? Json(*plan.partner) : Json(nullptr);
  j["horizontal_steps"] = plan.horizontal_steps;
  j["vertical_transfers"] = plan.vertical_transfers;
  j["one_way"] = plan.one_way;
  j["total_ticks"] = plan.total_ticks();
  Json ops = Json::array();
  for (const auto& op : plan.ops) ops.push_back(micro_op_to_json(op));
  j["ops"] = std::move(ops);
  return j;
}

ShuttlePlan plan_from_json(const Json& j) {
  Fields f(j, "");
  check_schema(f);
  if (f.get<std::string>("kind", "plan") != "plan") bad_field("kind", "expected \"plan\"");
  ShuttlePlan p;
  p.qubit = f.require<int>("qubit");
  const Json& partner = f.at("partner");
  if (!partner.is_null()) p.partner = Fields::as<int>(partner, "partner");
  p.horizontal_steps = f.require<int>("horizontal_steps");
  p.vertical_transfers = f.require<int>("vertical_transfers");
  p.one_way = f.get<bool>("one_way", false);
  f.get<int>("total_ticks", 0);
  for (const auto& op : f.at("ops")) p.ops.push_back(micro_op_from_json(op));
  f.finish();
  return p;
}

std::string plan_to_csv(const ShuttlePlan& plan) {
  std::ostringstream os;
  os << "step,kind,from,to,ticks\n";
  for (std::size_t i = 0; i < plan.ops.size(); ++i) {
    const auto& op = plan.ops[i];
    os << i << ',' << to_string(op.kind) << ',' << site_text(op.from) << ','
       << site_text(op.to) << ',' << op.duration_ticks << '\n';
  }
  return os.str();
}

Json circuit_to_json(const Circuit& circuit) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "circuit";
  Json ops = Json::array();
  for (const auto& op : circuit.ops) {
    Json cells = Json::array();
    for (const auto& c : op.cells) cells.push_back(cell_to_json(c));
    Json o{{"op", to_string(op.kind)}, {"cells", std::move(cells)}};
    if (op.param != 0.0) o["param"] = op.param;
    ops.push_back(std::move(o));
  }
  j["ops"] = std::move(ops);
  Json deps = Json::array();
  for (const auto& [a, b] : circuit.deps) deps.push_back(Json::array({a, b}));
  j["deps"] = std::move(deps);
  return j;
}

Circuit circuit_from_json(const Json& j) {
  Fields f(j, "");
  check_schema(f);
  if (f.get<std::string>("kind", "circuit") != "circuit") bad_field("kind", "expected \"circuit\"");
  Circuit c;
  const Json& ops = f.at("ops");
  if (!ops.is_array()) bad_field("ops", "expected an array");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string path = "ops[" + std::to_string(i) + "]";
    Fields o(ops[i], path);
    LogicalOp op;
    op.kind = gate_kind_from_string(o.require<std::string>("op"), path);
    const Json& cells = o.at("cells");
    if (!cells.is_array()) bad_field(path + ".cells", "expected an array");
    for (const auto& cell : cells) op.cells.push_back(cell_from_json(cell));
    op.param = o.get<double>("param", 0.0);
    o.finish();
    c.ops.push_back(std::move(op));
  }
  if (f.has("deps")) {
    for (const auto& d : f.at("deps")) {
      if (!d.is_array() || d.size() != 2 || !d[0].is_number_unsigned() ||
          !d[1].is_number_unsigned()) {
        bad_field("deps", "each dependency is [before, after], got " + d.dump());
      }
      c.deps.emplace_back(d[0].get<std::size_t>(), d[1].get<std::size_t>());
    }
  }
  f.finish();
  return c;
}

ScheduleSummary summarize(const Circuit& circuit, const Schedule& schedule,
                          const TrilinearLayout& layout, const DefectMap& defects,
                          const MuxConfig& mux, const FidelityModel& fidelity) {
  ScheduleSummary s;
  s.ops = circuit.ops.size();
  s.makespan = schedule.makespan();
  s.shuttle_steps = schedule.total_shuttle_steps();
  s.max_waveforms = waveform_usage(schedule).max_distinct;
  s.violations = validate_schedule(schedule, layout, defects, mux).size();
  s.fidelity = fidelity_budget(schedule, fidelity).aggregate;
  return s;
}

Json schedule_to_json(const Schedule& schedule, const ScheduleSummary& summary) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "schedule";
  j["summary"] = {{"ops", summary.ops},
                  {"makespan", summary.makespan},
                  {"shuttle_steps", summary.shuttle_steps},
                  {"max_waveforms", summary.max_waveforms},
                  {"violations", summary.violations},
                  {"fidelity", summary.fidelity}};
  Json homes = Json::array();
  for (const auto& [q, s] : schedule.homes) homes.push_back({{"qubit", q}, {"site", site_to_json(s)}});
  j["homes"] = std::move(homes);
  Json ticks = Json::array();
  for (std::size_t t = 0; t < schedule.ticks.size(); ++t) {
    const auto& tick = schedule.ticks[t];
    Json classes = Json::array();
    for (auto w : members(tick.classes)) classes.push_back(std::string(to_string(w)));
    Json entries = Json::array();
    for (const auto& e : tick.entries) {
      Json je = micro_op_to_json(e.op);
      je["task"] = e.task;
      je["qubit"] = e.qubit;
      je["offset"] = e.offset;
      entries.push_back(std::move(je));
    }
    ticks.push_back({{"tick", t}, {"classes", std::move(classes)}, {"entries", std::move(entries)}});
  }
  j["ticks"] = std::move(ticks);
  return j;
}

std::string summary_to_csv(const ScheduleSummary& s) {
  std::ostringstream os;
  os << "ops,makespan,shuttle_steps,max_waveforms,violations,fidelity\n"
     << s.ops << ',' << s.makespan << ',' << s.shuttle_steps << ',' << s.max_waveforms << ','
     << s.violations << ',' << fmt_double(s.fidelity) << '\n';
  return os.str();
}

Json event_to_json(const ProtocolEvent& e) {
  return {{"tick", e.tick},
          {"site", site_to_json(e.site)},
          {"qubit", e.qubit},
          {"event", e.kind},
          {"value", e.value}};
}

std::string events_to_json_lines(std::span<const ProtocolEvent> events) {
  std::string out;
  for (const auto& e : events) {
    out += event_to_json(e).dump();
    out += '\n';
  }
  return out;
}

std::string events_to_csv(std::span<const ProtocolEvent> events) {
  std::ostringstream os;
  os << "tick,site,qubit,event,value\n";
  for (const auto& e : events) {
    os << e.tick << ',' << site_text(e.site) << ',' << e.qubit << ',' << e.kind << ','
       << fmt_double(e.value) << '\n';
  }
  return os.str();
}

Json scaling_to_json(std::span<const ScalingPoint> points) {
  Json rows = Json::array();
  for (const auto& p : points) {
    rows.push_back({{"N", p.n},
                    {"variant", std::string(to_string(p.variant))},
                    {"m", p.m},
                    {"effective_N", p.effective_n},
                    {"rounded", p.rounded},
                    {"steps_one_way", p.steps_one_way},
                    {"steps_round_trip", p.steps_round_trip},
                    {"vertical_one_way", p.vertical_one_way},
                    {"vertical_round_trip", p.vertical_round_trip},
                    {"length_um", p.length_one_way.um()},
                    {"length_round_trip_um", p.length_round_trip.um()}});
  }
  return {{"schema_version", kSchemaVersion}, {"kind", "sweep"}, {"points", std::move(rows)}};
}

std::string scaling_to_csv(std::span<const ScalingPoint> points) {
  std::ostringstream os;
  os << "N,variant,steps_one_way,steps_round_trip,length_um,m,vertical_one_way,"
        "vertical_round_trip,length_round_trip_um,effective_N,rounded\n";
  for (const auto& p : points) {
    os << p.n << ',' << to_string(p.variant) << ',' << p.steps_one_way << ','
       << p.steps_round_trip << ',' << fmt_double(p.length_one_way.um()) << ',' << p.m << ','
       << p.vertical_one_way << ',' << p.vertical_round_trip << ','
       << fmt_double(p.length_round_trip.um()) << ',' << p.effective_n << ','
       << (p.rounded ? 1 : 0) << '\n';
  }
  return os.str();
}

Json error_document(const std::string& code, const std::string& message) {
  return {{"error", code}, {"message", message}};
}

}  // namespace trilinear
