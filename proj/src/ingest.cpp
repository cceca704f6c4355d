#include "decisive/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "decisive/csv.hpp"
#include "decisive/error.hpp"

namespace decisive::ingest {

using json = nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------------------
// JSON helpers

json parse_json(std::string_view text, const std::string& source) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    throw Error(ErrorCode::MalformedInput, "invalid JSON", line, source);
  }
}

class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void schema(const std::string& path, const std::string& msg) const {
    throw Error(ErrorCode::SchemaMismatch, path + ": " + msg, std::nullopt, source_);
  }
  [[noreturn]] void raise(ErrorCode code, const std::string& path, const std::string& msg) const {
    throw Error(code, path + ": " + msg, std::nullopt, source_);
  }

  const json* opt(const json& obj, const char* key) const {
    const auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return nullptr;
    return &*it;
  }
  const json& req(const json& obj, const char* key, const std::string& path) const {
    const json* j = opt(obj, key);
    if (!j) schema(path, std::string("missing key '") + key + "'");
    return *j;
  }
  const json& object(const json& j, const std::string& path) const {
    if (!j.is_object()) schema(path, "expected an object");
    return j;
  }
  const json& array(const json& j, const std::string& path) const {
    if (!j.is_array()) schema(path, "expected an array");
    return j;
  }
  double number(const json& j, const std::string& path) const {
    if (!j.is_number()) schema(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) schema(path, "number is not finite");
    return v;
  }
  int integer(const json& j, const std::string& path) const {
    if (j.is_number_integer()) return j.get<int>();
    if (j.is_number_float()) {
      const double v = j.get<double>();
      if (std::floor(v) == v && std::abs(v) < 1e9) return static_cast<int>(v);
    }
    schema(path, "expected an integer");
  }
  int count(const json& j, const std::string& path) const {
    const int v = integer(j, path);
    if (v < 0) schema(path, "count must be non-negative");
    return v;
  }
  std::string string(const json& j, const std::string& path) const {
    if (!j.is_string()) schema(path, "expected a string");
    return j.get<std::string>();
  }
  bool boolean(const json& j, const std::string& path) const {
    if (!j.is_boolean()) schema(path, "expected true or false");
    return j.get<bool>();
  }
  std::vector<double> numbers(const json& j, const std::string& path) const {
    array(j, path);
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
  }
  Vec3 vec3(const json& j, const std::string& path) const {
    const auto v = numbers(j, path);
    if (v.size() != 3) schema(path, "expected [x, y, z]");
    return {v[0], v[1], v[2]};
  }
  Vec2 vec2(const json& j, const std::string& path) const {
    const auto v = numbers(j, path);
    if (v.size() != 2) schema(path, "expected [x, y]");
    return {v[0], v[1]};
  }
  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }
std::string dot(const std::string& path, const std::string& key) { return path + "." + key; }

json to_json(Vec3 v) { return json::array({v.x, v.y, v.z}); }
json to_json(Vec2 v) { return json::array({v.x, v.y}); }

json value_json(const field::FieldValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::string>(v);
}

field::FieldValue field_value(const Reader& r, const json& j, const std::string& path) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number()) return r.number(j, path);
  if (j.is_string()) return j.get<std::string>();
  r.schema(path, "expected a number, string or boolean");
}

field::ChecklistCriteria criteria_from_json(const Reader& r, const json& j, const std::string& path) {
  r.object(j, path);
  field::ChecklistCriteria out;
  for (const auto& [name, spec] : j.items()) {
    const auto p = dot(path, name);
    r.object(spec, p);
    const auto op_name = r.string(r.req(spec, "op", p), dot(p, "op"));
    const auto op = field::parse_criterion_op(op_name);
    if (!op) r.raise(ErrorCode::UnknownCategory, dot(p, "op"), "unknown criterion op '" + op_name + "'");
    out[name] = {*op, field_value(r, r.req(spec, "value", p), dot(p, "value"))};
  }
  return out;
}

json criteria_to_json(const field::ChecklistCriteria& c) {
  json j = json::object();
  for (const auto& [name, crit] : c) j[name] = {{"op", std::string(field::to_string(crit.op))}, {"value", value_json(crit.value)}};
  return j;
}

std::vector<Obstruction> obstructions_from_json(const Reader& r, const json& j, const std::string& path) {
  std::vector<Obstruction> out;
  r.array(j, path);
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto p = at(path, i);
    r.object(j[i], p);
    out.push_back({r.count(r.req(j[i], "count", p), dot(p, "count")), r.string(r.req(j[i], "material", p), dot(p, "material"))});
  }
  return out;
}

json obstructions_to_json(const std::vector<Obstruction>& v) {
  json a = json::array();
  for (const auto& o : v) a.push_back({{"count", o.count}, {"material", o.material}});
  return a;
}

// ---------------------------------------------------------------------------
// CSV helpers

struct Columns {
  const csv::Table& table;
  std::string source;

  std::size_t require(const std::string& name) const {
    const auto c = table.column(name);
    if (!c) throw Error(ErrorCode::MissingColumn, "missing column '" + name + "'", 1, source);
    return *c;
  }
  std::optional<std::size_t> optional(const std::string& name) const { return table.column(name); }

  double number(const csv::Row& row, std::size_t col) const {
    const auto v = csv::parse_double(row.fields[col]);
    if (!v) {
      throw Error(ErrorCode::NonNumericField,
                  "column '" + table.header[col] + "' value '" + row.fields[col] + "' is not a number", row.line, source);
    }
    return *v;
  }
  long long integer(const csv::Row& row, std::size_t col) const {
    const auto v = csv::parse_int(row.fields[col]);
    if (!v) {
      throw Error(ErrorCode::NonNumericField,
                  "column '" + table.header[col] + "' value '" + row.fields[col] + "' is not an integer", row.line,
                  source);
    }
    return *v;
  }
  bool boolean(const csv::Row& row, std::size_t col) const {
    const auto v = csv::parse_bool(row.fields[col]);
    if (!v) {
      throw Error(ErrorCode::MalformedInput,
                  "column '" + table.header[col] + "' value '" + row.fields[col] + "' is not a boolean", row.line,
                  source);
    }
    return *v;
  }
  const std::string& text(const csv::Row& row, std::size_t col) const { return row.fields[col]; }
  std::string nonempty(const csv::Row& row, std::size_t col) const {
    if (row.fields[col].empty()) {
      throw Error(ErrorCode::MalformedInput, "column '" + table.header[col] + "' is empty", row.line, source);
    }
    return row.fields[col];
  }

  void warn_unknown(ParseReport& rep, const std::set<std::string>& known) const {
    for (const auto& h : table.header)
      if (!known.count(h)) rep.warn("line 1", "unknown column '" + h + "' ignored");
  }
};

std::string line_of(std::size_t line) { return "line " + std::to_string(line); }

std::string bool_text(bool b) { return b ? "true" : "false"; }

template <class T, class F>
Parsed<T> from_file(const fs::path& path, F&& parse_text) {
  const auto text = csv::read_file(path);
  return parse_text(text, path.string());
}

}  // namespace

// ---------------------------------------------------------------------------
// Telemetry

Parsed<Trajectory> parse_telemetry_text(std::string_view text, const std::string& source) {
  const auto table = csv::parse(text, source);
  const Columns cols{table, source};
  ParseReport rep;
  rep.source = source;

  std::set<std::string> seen;
  for (const auto& h : table.header) {
    if (!seen.insert(h).second) throw Error(ErrorCode::MalformedInput, "duplicate column '" + h + "'", 1, source);
  }
  const std::size_t ct = cols.require("t"), cx = cols.require("x"), cy = cols.require("y"), cz = cols.require("z");
  auto group = [&](const char* a, const char* b, const char* c) -> std::optional<std::array<std::size_t, 3>> {
    const auto ia = table.column(a), ib = table.column(b), ic = table.column(c);
    const int present = int(bool(ia)) + int(bool(ib)) + int(bool(ic));
    if (present == 0) return std::nullopt;
    if (present != 3) {
      throw Error(ErrorCode::MissingColumn,
                  std::string("columns ") + a + "," + b + "," + c + " must appear together", 1, source);
    }
    return std::array<std::size_t, 3>{*ia, *ib, *ic};
  };
  const auto vel = group("vx", "vy", "vz");
  const auto acc = group("ax", "ay", "az");
  cols.warn_unknown(rep, {"t", "x", "y", "z", "vx", "vy", "vz", "ax", "ay", "az"});

  std::vector<PoseSample> samples;
  samples.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    PoseSample s;
    s.t = cols.number(row, ct);
    s.pos = {cols.number(row, cx), cols.number(row, cy), cols.number(row, cz)};
    if (vel) s.vel = Vec3{cols.number(row, (*vel)[0]), cols.number(row, (*vel)[1]), cols.number(row, (*vel)[2])};
    if (acc) s.acc = Vec3{cols.number(row, (*acc)[0]), cols.number(row, (*acc)[1]), cols.number(row, (*acc)[2])};
    if (!samples.empty() && !(s.t > samples.back().t)) {
      throw Error(ErrorCode::NonMonotonicTime, "timestamp does not increase", row.line, source);
    }
    samples.push_back(s);
  }
  if (samples.size() < 2) throw Error(ErrorCode::MalformedInput, "telemetry needs at least 2 samples", std::nullopt, source);
  rep.counts["samples"] = samples.size();
  return {Trajectory(std::move(samples)), rep};
}

Parsed<Trajectory> parse_telemetry(const fs::path& path) {
  return from_file<Trajectory>(path, [](std::string_view t, const std::string& s) { return parse_telemetry_text(t, s); });
}

std::string write_telemetry(const Trajectory& traj) {
  const bool v = traj.has_velocity();
  const bool a = traj.has_acceleration();
  std::string out = "t,x,y,z";
  if (v) out += ",vx,vy,vz";
  if (a) out += ",ax,ay,az";
  out += '\n';
  auto put3 = [&](Vec3 p) {
    out += ',' + csv::format_double(p.x) + ',' + csv::format_double(p.y) + ',' + csv::format_double(p.z);
  };
  for (const auto& s : traj.samples()) {
    out += csv::format_double(s.t);
    put3(s.pos);
    if (v) put3(*s.vel);
    if (a) put3(*s.acc);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Campaign

namespace {

TrialMeasurements measurements_from_json(const Reader& r, const json& j, const std::string& path, ParseReport& rep) {
  r.object(j, path);
  TrialMeasurements m;
  static const std::set<std::string> known = {"final_position", "tape_error_m", "aperture",    "acuity",
                                              "noise_db",       "nlos",         "latency",     "dimensions",
                                              "fov",            "shapes",       "acuity_mm",   "fiducials_csv",
                                              "responses"};
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) rep.warn(path, "unknown measurement '" + k + "' ignored");
  }
  if (const auto* v = r.opt(j, "final_position")) m.final_position = r.vec3(*v, dot(path, "final_position"));
  if (const auto* v = r.opt(j, "tape_error_m")) m.tape_error_m = r.number(*v, dot(path, "tape_error_m"));
  if (const auto* v = r.opt(j, "aperture")) {
    const auto p = dot(path, "aperture");
    r.object(*v, p);
    m.aperture = ApertureFlags{r.boolean(r.req(*v, "passed", p), dot(p, "passed")),
                               r.boolean(r.req(*v, "contact", p), dot(p, "contact")),
                               r.boolean(r.req(*v, "ripped", p), dot(p, "ripped"))};
  }
  if (const auto* v = r.opt(j, "acuity")) {
    const auto p = dot(path, "acuity");
    r.array(*v, p);
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto& o = (*v)[i];
      const auto pi = at(p, i);
      r.object(o, pi);
      field::AcuityObservation a;
      a.target_id = r.string(r.req(o, "target_id", pi), dot(pi, "target_id"));
      const auto surf = r.string(r.req(o, "surface", pi), dot(pi, "surface"));
      const auto s = field::parse_surface(surf);
      if (!s) r.raise(ErrorCode::UnknownCategory, dot(pi, "surface"), "unknown surface '" + surf + "'");
      a.surface = *s;
      if (const auto* mm = r.opt(o, "resolved_mm")) {
        a.resolved_mm = r.number(*mm, dot(pi, "resolved_mm"));
        if (!field::is_acuity_level(*a.resolved_mm)) {
          r.raise(ErrorCode::UnknownCategory, dot(pi, "resolved_mm"), "not one of 20, 8, 3, 1.3, 0.5 mm");
        }
      }
      m.acuity.push_back(a);
    }
  }
  if (const auto* v = r.opt(j, "noise_db")) {
    const auto p = dot(path, "noise_db");
    r.object(*v, p);
    for (const auto& [k, arr] : v->items()) m.noise_db[k] = r.numbers(arr, dot(p, k));
  }
  if (const auto* v = r.opt(j, "nlos")) {
    const auto p = dot(path, "nlos");
    r.array(*v, p);
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto& o = (*v)[i];
      const auto pi = at(p, i);
      r.object(o, pi);
      field::NlosPosition pos;
      pos.label = r.string(r.req(o, "label", pi), dot(pi, "label"));
      pos.distance_m = r.number(r.req(o, "distance_m", pi), dot(pi, "distance_m"));
      if (!(pos.distance_m > 0.0)) r.schema(dot(pi, "distance_m"), "distance must be positive");
      if (const auto* ob = r.opt(o, "obstructions")) pos.obstructions = obstructions_from_json(r, *ob, dot(pi, "obstructions"));
      const auto conn = r.string(r.req(o, "connect", pi), dot(pi, "connect"));
      const auto q = field::parse_link_quality(conn);
      if (!q) r.raise(ErrorCode::UnknownCategory, dot(pi, "connect"), "unknown link quality '" + conn + "'");
      pos.connect = *q;
      const auto fly = r.string(r.req(o, "fly", pi), dot(pi, "fly"));
      if (fly == "possible") pos.fly = field::Flyability::possible;
      else if (fly == "not_possible") pos.fly = field::Flyability::not_possible;
      else r.raise(ErrorCode::UnknownCategory, dot(pi, "fly"), "unknown fly value '" + fly + "'");
      if (const auto* l = r.opt(o, "latency_ms")) pos.latency_ms = r.number(*l, dot(pi, "latency_ms"));
      m.nlos.push_back(pos);
    }
  }
  if (const auto* v = r.opt(j, "latency")) {
    const auto p = dot(path, "latency");
    r.object(*v, p);
    m.latency = LatencyFrames{r.numbers(r.req(*v, "frames", p), dot(p, "frames")),
                              r.number(r.req(*v, "fps", p), dot(p, "fps"))};
  }
  if (const auto* v = r.opt(j, "dimensions")) {
    const auto p = dot(path, "dimensions");
    r.object(*v, p);
    m.dimensions = DimensionSet{r.numbers(r.req(*v, "reported", p), dot(p, "reported")),
                                r.numbers(r.req(*v, "truth", p), dot(p, "truth"))};
  }
  if (const auto* v = r.opt(j, "fov")) {
    const auto p = dot(path, "fov");
    r.object(*v, p);
    m.fov = FovCount{r.count(r.req(*v, "visible", p), dot(p, "visible")), r.count(r.req(*v, "total", p), dot(p, "total"))};
  }
  if (const auto* v = r.opt(j, "shapes")) {
    const auto p = dot(path, "shapes");
    r.array(*v, p);
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto s = r.string((*v)[i], at(p, i));
      const auto c = mapping::parse_shape_class(s);
      if (!c) r.raise(ErrorCode::UnknownCategory, at(p, i), "unknown shape class '" + s + "'");
      m.shapes.push_back(*c);
    }
  }
  if (const auto* v = r.opt(j, "acuity_mm")) m.acuity_mm = r.numbers(*v, dot(path, "acuity_mm"));
  if (const auto* v = r.opt(j, "fiducials_csv")) m.fiducials_csv = r.string(*v, dot(path, "fiducials_csv"));
  if (const auto* v = r.opt(j, "responses")) {
    const auto p = dot(path, "responses");
    r.object(*v, p);
    for (const auto& [k, val] : v->items()) m.responses[k] = field_value(r, val, dot(p, k));
  }
  return m;
}

json measurements_to_json(const TrialMeasurements& m) {
  json j = json::object();
  if (m.final_position) j["final_position"] = to_json(*m.final_position);
  if (m.tape_error_m) j["tape_error_m"] = *m.tape_error_m;
  if (m.aperture) j["aperture"] = {{"passed", m.aperture->passed}, {"contact", m.aperture->contact}, {"ripped", m.aperture->ripped}};
  if (!m.acuity.empty()) {
    json a = json::array();
    for (const auto& o : m.acuity) {
      json e = {{"target_id", o.target_id}, {"surface", std::string(field::to_string(o.surface))}};
      if (o.resolved_mm) e["resolved_mm"] = *o.resolved_mm;
      a.push_back(e);
    }
    j["acuity"] = a;
  }
  if (!m.noise_db.empty()) {
    json n = json::object();
    for (const auto& [k, v] : m.noise_db) n[k] = v;
    j["noise_db"] = n;
  }
  if (!m.nlos.empty()) {
    json a = json::array();
    for (const auto& p : m.nlos) {
      json e = {{"label", p.label},
                {"distance_m", p.distance_m},
                {"obstructions", obstructions_to_json(p.obstructions)},
                {"connect", std::string(field::to_string(p.connect))},
                {"fly", p.fly == field::Flyability::possible ? "possible" : "not_possible"}};
      if (p.latency_ms) e["latency_ms"] = *p.latency_ms;
      a.push_back(e);
    }
    j["nlos"] = a;
  }
  if (m.latency) j["latency"] = {{"frames", m.latency->frames}, {"fps", m.latency->fps}};
  if (m.dimensions) j["dimensions"] = {{"reported", m.dimensions->reported}, {"truth", m.dimensions->truth}};
  if (m.fov) j["fov"] = {{"visible", m.fov->visible}, {"total", m.fov->total}};
  if (!m.shapes.empty()) {
    json a = json::array();
    for (auto s : m.shapes) a.push_back(s == mapping::ShapeClass::complete ? "C" : s == mapping::ShapeClass::incomplete ? "I" : "S");
    j["shapes"] = a;
  }
  if (!m.acuity_mm.empty()) j["acuity_mm"] = m.acuity_mm;
  if (m.fiducials_csv) j["fiducials_csv"] = *m.fiducials_csv;
  if (!m.responses.empty()) {
    json o = json::object();
    for (const auto& [k, v] : m.responses) o[k] = value_json(v);
    j["responses"] = o;
  }
  return j;
}

template <class Enum, class ParseFn>
Enum category(const Reader& r, const json& j, const std::string& path, ParseFn parse) {
  const auto s = r.string(j, path);
  const auto v = parse(s);
  if (!v) r.raise(ErrorCode::UnknownCategory, path, "unknown value '" + s + "'");
  return *v;
}

}  // namespace


Parsed<Campaign> parse_campaign_text(std::string_view text, const fs::path& base_dir, const std::string& source,
                                     bool check_files) {
  const Reader r(source);
  ParseReport rep;
  rep.source = source;
  const json root = parse_json(text, source);
  r.object(root, "$");

  const json* sv = r.opt(root, "schema_version");
  if (!sv || !sv->is_number_integer() || sv->get<long long>() != 1) {
    throw Error(ErrorCode::SchemaVersionUnsupported, "schema_version must be 1", std::nullopt, source);
  }
  for (const auto& [k, v] : root.items()) {
    static const std::set<std::string> known = {"schema_version", "suas", "tests", "environments", "trials"};
    if (!known.count(k)) rep.warn("$", "unknown key '" + k + "' ignored");
  }

  Campaign c;
  c.base_dir = base_dir;
  auto unique = [&](std::set<std::string>& ids, const std::string& id, const std::string& path) {
    if (!ids.insert(id).second) r.raise(ErrorCode::DuplicateId, path, "duplicate id '" + id + "'");
  };

  std::set<std::string> suas_ids;
  if (const auto* a = r.opt(root, "suas")) {
    r.array(*a, "suas");
    for (std::size_t i = 0; i < a->size(); ++i) {
      const auto p = at("suas", i);
      const auto& o = r.object((*a)[i], p);
      SuasDescriptor d;
      d.id = r.string(r.req(o, "id", p), dot(p, "id"));
      d.name = r.opt(o, "name") ? r.string(o["name"], dot(p, "name")) : d.id;
      unique(suas_ids, d.id, p);
      c.suas.push_back(d);
    }
  }

  std::set<std::string> env_ids;
  if (const auto* a = r.opt(root, "environments")) {
    r.array(*a, "environments");
    for (std::size_t i = 0; i < a->size(); ++i) {
      const auto p = at("environments", i);
      const auto& o = r.object((*a)[i], p);
      EnvironmentProfile e;
      e.id = r.string(r.req(o, "id", p), dot(p, "id"));
      unique(env_ids, e.id, p);
      e.lighting = category<Lighting>(r, r.req(o, "lighting", p), dot(p, "lighting"), parse_lighting);
      if (const auto* v = r.opt(o, "lux")) e.lux = r.number(*v, dot(p, "lux"));
      if (const auto* v = r.opt(o, "dims")) e.dims = r.vec3(*v, dot(p, "dims"));
      if (const auto* v = r.opt(o, "surfaces")) {
        r.array(*v, dot(p, "surfaces"));
        for (std::size_t k = 0; k < v->size(); ++k) e.surfaces.push_back(r.string((*v)[k], at(dot(p, "surfaces"), k)));
      }
      if (const auto* v = r.opt(o, "obstructions")) e.obstructions = obstructions_from_json(r, *v, dot(p, "obstructions"));
      if (const auto* v = r.opt(o, "indoor")) e.indoor = r.boolean(*v, dot(p, "indoor"));
      try {
        e.validate();
      } catch (const Error& err) {
        r.schema(p, err.detail());
      }
      c.environments.push_back(e);
    }
  }

  std::set<std::string> test_ids;
  if (const auto* a = r.opt(root, "tests")) {
    r.array(*a, "tests");
    for (std::size_t i = 0; i < a->size(); ++i) {
      const auto p = at("tests", i);
      const auto& o = r.object((*a)[i], p);
      TestDefinition t;
      t.id = r.string(r.req(o, "id", p), dot(p, "id"));
      unique(test_ids, t.id, p);
      t.type = category<TestType>(r, r.req(o, "type", p), dot(p, "type"), parse_test_type);
      if (const auto* v = r.opt(o, "environment")) {
        t.environment = r.string(*v, dot(p, "environment"));
        if (!env_ids.count(*t.environment)) {
          r.raise(ErrorCode::DanglingReference, dot(p, "environment"), "unknown environment '" + *t.environment + "'");
        }
      }
      if (const auto* v = r.opt(o, "reference_path")) {
        const auto pp = dot(p, "reference_path");
        r.object(*v, pp);
        const auto& verts = r.array(r.req(*v, "vertices", pp), dot(pp, "vertices"));
        std::vector<Vec3> vs;
        for (std::size_t k = 0; k < verts.size(); ++k) vs.push_back(r.vec3(verts[k], at(dot(pp, "vertices"), k)));
        const bool closed = r.opt(*v, "closed") ? r.boolean((*v)["closed"], dot(pp, "closed")) : false;
        try {
          t.reference_path = nav::ReferencePath(std::move(vs), closed);
        } catch (const Error& err) {
          r.schema(pp, err.detail());
        }
      }
      if (const auto* v = r.opt(o, "obstacle")) {
        const auto op = dot(p, "obstacle");
        r.object(*v, op);
        ObstacleGeometry g;
        g.kind = category<ObstacleKind>(r, r.req(*v, "kind", op), dot(op, "kind"), parse_obstacle_kind);
        g.p0 = r.vec2(r.req(*v, "p0", op), dot(op, "p0"));
        g.p1 = r.vec2(r.req(*v, "p1", op), dot(op, "p1"));
        g.height = r.number(r.req(*v, "height", op), dot(op, "height"));
        g.material = category<ObstacleMaterial>(r, r.req(*v, "material", op), dot(op, "material"), parse_obstacle_material);
        try {
          g.validate();
        } catch (const Error& err) {
          r.schema(op, err.detail());
        }
        t.obstacle = g;
      }
      if (const auto* v = r.opt(o, "waypoint")) t.waypoint = r.vec3(*v, dot(p, "waypoint"));
      if (const auto* v = r.opt(o, "path_length_m")) t.path_length_m = r.number(*v, dot(p, "path_length_m"));
      if (const auto* v = r.opt(o, "fiducials")) {
        const auto fp = dot(p, "fiducials");
        r.array(*v, fp);
        std::set<std::string> fids;
        for (std::size_t k = 0; k < v->size(); ++k) {
          const auto pk = at(fp, k);
          const auto& f = r.object((*v)[k], pk);
          mapping::FiducialGroundTruth g;
          g.fiducial_id = r.string(r.req(f, "id", pk), dot(pk, "id"));
          unique(fids, g.fiducial_id, pk);
          g.gt_xy = {r.number(r.req(f, "x", pk), dot(pk, "x")), r.number(r.req(f, "y", pk), dot(pk, "y"))};
          g.min_traversal = r.number(r.req(f, "min_traversal", pk), dot(pk, "min_traversal"));
          if (!(g.min_traversal > 0.0)) r.schema(dot(pk, "min_traversal"), "must be positive");
          g.min_turns = r.count(r.req(f, "min_turns", pk), dot(pk, "min_turns"));
          t.fiducials.push_back(g);
        }
      }
      if (const auto* v = r.opt(o, "criteria")) t.criteria = criteria_from_json(r, *v, dot(p, "criteria"));
      c.tests.push_back(std::move(t));
    }
  }

  std::set<std::string> trial_ids;
  if (const auto* a = r.opt(root, "trials")) {
    r.array(*a, "trials");
    for (std::size_t i = 0; i < a->size(); ++i) {
      const auto p = at("trials", i);
      const auto& o = r.object((*a)[i], p);
      TrialRecord t;
      t.trial_id = r.string(r.req(o, "trial_id", p), dot(p, "trial_id"));
      unique(trial_ids, t.trial_id, p);
      t.test_id = r.string(r.req(o, "test_id", p), dot(p, "test_id"));
      if (!test_ids.count(t.test_id)) {
        r.raise(ErrorCode::DanglingReference, p, "trial '" + t.trial_id + "' references unknown test '" + t.test_id + "'");
      }
      t.suas_id = r.string(r.req(o, "suas_id", p), dot(p, "suas_id"));
      if (!suas_ids.count(t.suas_id)) {
        r.raise(ErrorCode::DanglingReference, p, "trial '" + t.trial_id + "' references unknown sUAS '" + t.suas_id + "'");
      }
      t.outcome = category<Outcome>(r, r.req(o, "outcome", p), dot(p, "outcome"), parse_outcome);
      if (const auto* v = r.opt(o, "collisions")) t.collisions = r.count(*v, dot(p, "collisions"));
      if (const auto* v = r.opt(o, "rollovers")) t.rollovers = r.count(*v, dot(p, "rollovers"));
      if (const auto* v = r.opt(o, "oa_category"))
        t.oa_category = category<OaCategory>(r, *v, dot(p, "oa_category"), parse_oa_category);
      if (const auto* v = r.opt(o, "cr_category"))
        t.cr_category = category<CrCategory>(r, *v, dot(p, "cr_category"), parse_cr_category);
      if (const auto* v = r.opt(o, "aperture_tier"))
        t.aperture_tier = category<ApertureTier>(r, *v, dot(p, "aperture_tier"), parse_aperture_tier);
      if (const auto* v = r.opt(o, "t_collision_s")) t.t_collision_s = r.number(*v, dot(p, "t_collision_s"));
      if (const auto* v = r.opt(o, "duration_min")) {
        t.duration_min = r.number(*v, dot(p, "duration_min"));
        if (*t.duration_min < 0.0) r.schema(dot(p, "duration_min"), "duration must be non-negative");
      }
      if (const auto* v = r.opt(o, "laps")) t.laps = r.count(*v, dot(p, "laps"));
      if (const auto* v = r.opt(o, "telemetry")) {
        t.telemetry = r.string(*v, dot(p, "telemetry"));
        if (check_files && !fs::exists(c.resolve(*t.telemetry))) {
          r.raise(ErrorCode::Io, dot(p, "telemetry"), "telemetry file '" + *t.telemetry + "' not found");
        }
      }
      if (const auto* v = r.opt(o, "notes")) t.notes = r.string(*v, dot(p, "notes"));
      if (const auto* v = r.opt(o, "measurements")) {
        t.measurements = measurements_from_json(r, *v, dot(p, "measurements"), rep);
        const auto& f = t.measurements.fiducials_csv;
        if (f && check_files && !fs::exists(c.resolve(*f))) {
          r.raise(ErrorCode::Io, dot(p, "measurements.fiducials_csv"), "fiducial file '" + *f + "' not found");
        }
      }
      c.trials.push_back(std::move(t));
    }
  }
  if (c.trials.empty()) rep.warn("trials", "no trials");
  rep.counts["suas"] = c.suas.size();
  rep.counts["environments"] = c.environments.size();
  rep.counts["tests"] = c.tests.size();
  rep.counts["trials"] = c.trials.size();
  return {std::move(c), rep};
}

Parsed<Campaign> parse_campaign(const fs::path& path) {
  const auto text = csv::read_file(path);
  return parse_campaign_text(text, path.parent_path(), path.string());
}

std::string write_campaign(const Campaign& c) {
  json root = json::object();
  root["schema_version"] = c.schema_version;
  json suas = json::array();
  for (const auto& s : c.suas) suas.push_back({{"id", s.id}, {"name", s.name}});
  root["suas"] = suas;
  json envs = json::array();
  for (const auto& e : c.environments) {
    json j = {{"id", e.id}, {"lighting", std::string(to_string(e.lighting))}};
    if (e.lux) j["lux"] = *e.lux;
    if (e.dims) j["dims"] = to_json(*e.dims);
    if (!e.surfaces.empty()) j["surfaces"] = e.surfaces;
    if (!e.obstructions.empty()) j["obstructions"] = obstructions_to_json(e.obstructions);
    j["indoor"] = e.indoor;
    envs.push_back(j);
  }
  root["environments"] = envs;
  json tests = json::array();
  for (const auto& t : c.tests) {
    json j = {{"id", t.id}, {"type", std::string(to_string(t.type))}};
    if (t.environment) j["environment"] = *t.environment;
    if (t.reference_path) {
      json verts = json::array();
      for (const auto& v : t.reference_path->vertices()) verts.push_back(to_json(v));
      j["reference_path"] = {{"vertices", verts}, {"closed", t.reference_path->closed()}};
    }
    if (t.obstacle) {
      const auto& g = *t.obstacle;
      j["obstacle"] = {{"kind", std::string(to_string(g.kind))},
                       {"p0", to_json(g.p0)},
                       {"p1", to_json(g.p1)},
                       {"height", g.height},
                       {"material", std::string(to_string(g.material))}};
    }
    if (t.waypoint) j["waypoint"] = to_json(*t.waypoint);
    if (t.path_length_m) j["path_length_m"] = *t.path_length_m;
    if (!t.fiducials.empty()) {
      json f = json::array();
      for (const auto& g : t.fiducials) {
        f.push_back({{"id", g.fiducial_id},
                     {"x", g.gt_xy.x},
                     {"y", g.gt_xy.y},
                     {"min_traversal", g.min_traversal},
                     {"min_turns", g.min_turns}});
      }
      j["fiducials"] = f;
    }
    if (!t.criteria.empty()) j["criteria"] = criteria_to_json(t.criteria);
    tests.push_back(j);
  }
  root["tests"] = tests;
  json trials = json::array();
  for (const auto& t : c.trials) {
    json j = {{"trial_id", t.trial_id},
              {"test_id", t.test_id},
              {"suas_id", t.suas_id},
              {"outcome", std::string(to_string(t.outcome))},
              {"collisions", t.collisions},
              {"rollovers", t.rollovers}};
    if (t.oa_category) j["oa_category"] = std::string(to_string(*t.oa_category));
    if (t.cr_category) j["cr_category"] = std::string(to_string(*t.cr_category));
    if (t.aperture_tier) j["aperture_tier"] = std::string(to_string(*t.aperture_tier));
    if (t.t_collision_s) j["t_collision_s"] = *t.t_collision_s;
    if (t.duration_min) j["duration_min"] = *t.duration_min;
    if (t.laps) j["laps"] = *t.laps;
    if (t.telemetry) j["telemetry"] = *t.telemetry;
    if (!t.notes.empty()) j["notes"] = t.notes;
    const auto m = measurements_to_json(t.measurements);
    if (!m.empty()) j["measurements"] = m;
    trials.push_back(j);
  }
  root["trials"] = trials;
  return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Survey

Parsed<hf::SurveyDataset> parse_survey_text(std::string_view text, const std::string& source) {
  const auto table = csv::parse(text, source);
  const Columns cols{table, source};
  ParseReport rep;
  rep.source = source;
  const auto cp = cols.require("participant_id"), ci = cols.require("instrument"), cit = cols.require("item_id"),
             cs = cols.require("score"), cm = cols.require("manip_pass"), cc = cols.require("condition");
  cols.warn_unknown(rep, {"participant_id", "instrument", "item_id", "score", "manip_pass", "condition"});

  hf::SurveyDataset d;
  std::map<std::tuple<std::string, hf::Instrument, std::string>, std::size_t> index;
  for (const auto& row : table.rows) {
    hf::SurveyRow s;
    s.participant_id = cols.nonempty(row, cp);
    const auto inst = hf::parse_instrument(cols.text(row, ci));
    if (!inst) {
      throw Error(ErrorCode::UnknownInstrument, "unknown instrument '" + cols.text(row, ci) + "'", row.line, source);
    }
    s.instrument = *inst;
    s.item_id = cols.nonempty(row, cit);
    const auto score = cols.integer(row, cs);
    if (score < 1 || score > 7) {
      throw Error(ErrorCode::ScoreOutOfRange, "score " + std::to_string(score) + " outside 1..7", row.line, source);
    }
    s.score = static_cast<int>(score);
    s.manip_pass = cols.boolean(row, cm);
    s.condition = cols.nonempty(row, cc);
    const auto key = std::make_tuple(s.participant_id, s.instrument, s.item_id);
    const auto it = index.find(key);
    if (it != index.end()) {
      rep.warn(line_of(row.line), "duplicate response for participant '" + s.participant_id + "' item '" +
                                      s.item_id + "': later row wins");
      d.rows[it->second] = s;
    } else {
      index[key] = d.rows.size();
      d.rows.push_back(s);
    }
  }
  std::map<std::pair<std::string, hf::Instrument>, std::size_t> items;
  for (const auto& r : d.rows) ++items[{r.participant_id, r.instrument}];
  for (const auto& [key, n] : items) {
    const std::size_t expected = key.second == hf::Instrument::ctpa ? hf::kCtpaItems : hf::kHctmItems;
    if (n != expected) {
      rep.warn("participant " + key.first, std::string(hf::to_string(key.second)) + " has " + std::to_string(n) +
                                               " items, expected " + std::to_string(expected));
    }
  }
  std::set<std::string> participants;
  for (const auto& r : d.rows) participants.insert(r.participant_id);
  rep.counts["rows"] = d.rows.size();
  rep.counts["participants"] = participants.size();
  return {std::move(d), rep};
}

Parsed<hf::SurveyDataset> parse_survey(const fs::path& path) {
  return from_file<hf::SurveyDataset>(path, [](std::string_view t, const std::string& s) { return parse_survey_text(t, s); });
}

std::string write_survey(const hf::SurveyDataset& d) {
  std::string out = "participant_id,instrument,item_id,score,manip_pass,condition\n";
  for (const auto& r : d.rows) {
    out += csv::escape(r.participant_id) + ',' + std::string(hf::to_string(r.instrument)) + ',' + csv::escape(r.item_id) +
           ',' + std::to_string(r.score) + ',' + bool_text(r.manip_pass) + ',' + csv::escape(r.condition) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// SAGAT

Parsed<std::vector<hf::SagatResponse>> parse_sagat_text(std::string_view text, const std::string& source) {
  const auto table = csv::parse(text, source);
  const Columns cols{table, source};
  ParseReport rep;
  rep.source = source;
  const auto cp = cols.require("participant_id"), cq = cols.require("question_id"), cs = cols.require("se_id"),
             cl = cols.require("sa_level"), cc = cols.require("correct");
  const auto cper = cols.optional("perception");
  cols.warn_unknown(rep, {"participant_id", "question_id", "se_id", "sa_level", "correct", "perception"});

  std::vector<hf::SagatResponse> out;
  for (const auto& row : table.rows) {
    hf::SagatResponse s;
    s.participant = cols.nonempty(row, cp);
    s.question_id = cols.nonempty(row, cq);
    s.se_id = cols.nonempty(row, cs);
    const auto lvl = cols.integer(row, cl);
    if (lvl != 1 && lvl != 2) throw Error(ErrorCode::MalformedInput, "sa_level must be 1 or 2", row.line, source);
    s.sa_level = static_cast<int>(lvl);
    s.correct = cols.boolean(row, cc);
    if (cper) {
      const auto p = hf::parse_perception(cols.text(row, *cper));
      if (!p) {
        throw Error(ErrorCode::UnknownCategory, "unknown perception '" + cols.text(row, *cper) + "'", row.line, source);
      }
      s.perception = *p;
    }
    out.push_back(s);
  }
  if (!cper) {
    // Level-2 (comprehension) correct => comprehended; level-1 correct => detected.
    std::map<std::pair<std::string, std::string>, hf::Perception> level;
    for (const auto& s : out) {
      auto& l = level.try_emplace({s.participant, s.se_id}, hf::Perception::undetected).first->second;
      if (!s.correct) continue;
      const auto p = s.sa_level == 2 ? hf::Perception::comprehended : hf::Perception::detected;
      if (p > l) l = p;
    }
    for (auto& s : out) s.perception = level.at({s.participant, s.se_id});
    rep.warn("line 1", "no perception column: perception derived from correct answers by SA level");
  }
  rep.counts["responses"] = out.size();
  return {std::move(out), rep};
}

Parsed<std::vector<hf::SagatResponse>> parse_sagat(const fs::path& path) {
  return from_file<std::vector<hf::SagatResponse>>(
      path, [](std::string_view t, const std::string& s) { return parse_sagat_text(t, s); });
}

std::string write_sagat(const std::vector<hf::SagatResponse>& rows) {
  std::string out = "participant_id,question_id,se_id,sa_level,correct,perception\n";
  for (const auto& r : rows) {
    out += csv::escape(r.participant) + ',' + csv::escape(r.question_id) + ',' + csv::escape(r.se_id) + ',' +
           std::to_string(r.sa_level) + ',' + bool_text(r.correct) + ',' + std::string(hf::to_string(r.perception)) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Preferences, SEEV parameters, SE groups

Parsed<std::vector<hf::Preference>> parse_preferences_text(std::string_view text, const std::string& source) {
  const auto table = csv::parse(text, source);
  const Columns cols{table, source};
  ParseReport rep;
  rep.source = source;
  const auto cp = cols.require("participant_id"), cpr = cols.require("preferred");
  const auto cr = cols.optional("reason");
  std::vector<hf::Preference> out;
  for (const auto& row : table.rows) {
    out.push_back({cols.nonempty(row, cp), cols.nonempty(row, cpr), cr ? cols.text(row, *cr) : std::string()});
  }
  rep.counts["preferences"] = out.size();
  return {std::move(out), rep};
}

Parsed<std::vector<hf::Preference>> parse_preferences(const fs::path& path) {
  return from_file<std::vector<hf::Preference>>(
      path, [](std::string_view t, const std::string& s) { return parse_preferences_text(t, s); });
}

Parsed<std::vector<SeevEntry>> parse_seev_text(std::string_view text, const std::string& source) {
  const auto table = csv::parse(text, source);
  const Columns cols{table, source};
  ParseReport rep;
  rep.source = source;
  const auto cid = cols.require("se_id"), csa = cols.require("saliency"), cef = cols.require("effort"),
             cex = cols.require("expectancy"), cv = cols.require("value");
  const auto cname = cols.optional("name");
  const auto cpres = cols.optional("present");
  std::vector<SeevEntry> out;
  std::set<std::string> ids;
  for (const auto& row : table.rows) {
    SeevEntry e;
    e.params.se_id = cols.nonempty(row, cid);
    if (!ids.insert(e.params.se_id).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate SE '" + e.params.se_id + "'", row.line, source);
    }
    e.params.saliency = cols.number(row, csa);
    e.params.effort = cols.number(row, cef);
    e.params.expectancy = cols.number(row, cex);
    e.params.value = cols.number(row, cv);
    e.name = cname ? cols.text(row, *cname) : e.params.se_id;
    e.present = cpres ? cols.boolean(row, *cpres) : true;
    out.push_back(e);
  }
  rep.counts["ses"] = out.size();
  return {std::move(out), rep};
}

Parsed<std::vector<SeevEntry>> parse_seev(const fs::path& path) {
  return from_file<std::vector<SeevEntry>>(path, [](std::string_view t, const std::string& s) { return parse_seev_text(t, s); });
}

Parsed<SeGroups> parse_groups_text(std::string_view text, const std::string& source) {
  const auto table = csv::parse(text, source);
  const Columns cols{table, source};
  ParseReport rep;
  rep.source = source;
  const auto cg = cols.require("group"), cs = cols.require("se_id");
  SeGroups out;
  for (const auto& row : table.rows) {
    const auto g = cols.nonempty(row, cg);
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == g; });
    if (it == out.end()) {
      out.push_back({g, {}});
      it = out.end() - 1;
    }
    it->second.push_back(cols.nonempty(row, cs));
  }
  rep.counts["groups"] = out.size();
  return {std::move(out), rep};
}

Parsed<SeGroups> parse_groups(const fs::path& path) {
  return from_file<SeGroups>(path, [](std::string_view t, const std::string& s) { return parse_groups_text(t, s); });
}

// ---------------------------------------------------------------------------
// Feature sheet

Parsed<ncap::FeatureTable> parse_feature_sheet_text(std::string_view text, const std::string& source) {
  const Reader r(source);
  ParseReport rep;
  rep.source = source;
  const json root = parse_json(text, source);
  r.object(root, "$");
  ncap::FeatureTable t;
  const auto& feats = r.array(r.req(root, "features", "$"), "features");
  std::set<std::string> names;
  for (std::size_t i = 0; i < feats.size(); ++i) {
    const auto p = at("features", i);
    const auto& o = r.object(feats[i], p);
    ncap::Feature f;
    f.name = r.string(r.req(o, "name", p), dot(p, "name"));
    if (!names.insert(f.name).second) r.raise(ErrorCode::DuplicateId, p, "duplicate feature '" + f.name + "'");
    const auto* d = r.opt(o, "direction");
    if (!d) r.raise(ErrorCode::MissingDirection, p, "feature '" + f.name + "' has no direction");
    const auto ds = r.string(*d, dot(p, "direction"));
    const auto dir = ncap::parse_direction(ds);
    if (!dir) r.raise(ErrorCode::MissingDirection, dot(p, "direction"), "direction must be 'higher' or 'lower'");
    f.direction = *dir;
    if (const auto* m = r.opt(o, "ordinal_map")) {
      const auto mp = dot(p, "ordinal_map");
      r.object(*m, mp);
      std::map<std::string, double> om;
      for (const auto& [tok, rank] : m->items()) {
        om[tok] = r.number(rank, dot(mp, tok));
        if (!(om[tok] > 0.0)) r.raise(ErrorCode::NonPositiveValue, dot(mp, tok), "ordinal rank must be positive");
      }
      f.ordinal_map = std::move(om);
    }
    if (const auto* v = r.opt(o, "degree")) f.degree = r.number(*v, dot(p, "degree"));
    if (const auto* v = r.opt(o, "weight")) f.weight = r.number(*v, dot(p, "weight"));
    t.features.push_back(std::move(f));
  }
  const auto& systems = r.array(r.req(root, "systems", "$"), "systems");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto p = at("systems", i);
    const auto& o = r.object(systems[i], p);
    ncap::SystemFeatures s;
    s.id = r.string(r.req(o, "id", p), dot(p, "id"));
    if (!ids.insert(s.id).second) r.raise(ErrorCode::DuplicateId, p, "duplicate system '" + s.id + "'");
    const auto vp = dot(p, "values");
    const auto& vals = r.object(r.req(o, "values", p), vp);
    for (const auto& [k, v] : vals.items()) {
      if (!names.count(k)) {
        rep.warn(dot(vp, k), "value for undeclared feature ignored");
        continue;
      }
      if (v.is_null()) s.values[k] = ncap::Absent{};
      else if (v.is_number()) s.values[k] = r.number(v, dot(vp, k));
      else if (v.is_string()) {
        const auto str = v.get<std::string>();
        if (str == "N/A" || str == "n/a" || str == "NA") s.values[k] = ncap::Absent{};
        else s.values[k] = str;
      } else {
        r.schema(dot(vp, k), "expected a number, a token or \"N/A\"");
      }
    }
    for (const auto& f : t.features) {
      if (!s.values.count(f.name)) {
        rep.warn(vp, "feature '" + f.name + "' missing, treated as N/A");
        s.values[f.name] = ncap::Absent{};
      }
    }
    if (const auto* c = r.opt(o, "capabilities")) {
      const auto cp = dot(p, "capabilities");
      r.object(*c, cp);
      ncap::AutonomyCapabilities caps;
      auto flag = [&](const char* key) { return r.opt(*c, key) ? r.boolean((*c)[key], dot(cp, key)) : false; };
      caps.perception = flag("perception");
      caps.modeling = flag("modeling");
      caps.planning = flag("planning");
      caps.execution = flag("execution");
      s.capabilities = caps;
    }
    if (const auto* v = r.opt(o, "n_al")) {
      s.n_al = r.integer(*v, dot(p, "n_al"));
      if (*s.n_al < 0 || *s.n_al > 4) r.schema(dot(p, "n_al"), "N_AL must lie in 0..4");
    }
    t.systems.push_back(std::move(s));
  }
  rep.counts["features"] = t.features.size();
  rep.counts["systems"] = t.systems.size();
  return {std::move(t), rep};
}

Parsed<ncap::FeatureTable> parse_feature_sheet(const fs::path& path) {
  return from_file<ncap::FeatureTable>(path,
                                       [](std::string_view t, const std::string& s) { return parse_feature_sheet_text(t, s); });
}

std::string write_feature_sheet(const ncap::FeatureTable& t) {
  json root = json::object();
  json feats = json::array();
  for (const auto& f : t.features) {
    json j = {{"name", f.name}, {"direction", std::string(ncap::to_string(f.direction))}};
    if (f.ordinal_map) {
      json m = json::object();
      for (const auto& [k, v] : *f.ordinal_map) m[k] = v;
      j["ordinal_map"] = m;
    }
    if (f.degree) j["degree"] = *f.degree;
    if (f.weight) j["weight"] = *f.weight;
    feats.push_back(j);
  }
  root["features"] = feats;
  json systems = json::array();
  for (const auto& s : t.systems) {
    json vals = json::object();
    for (const auto& f : t.features) {
      const auto it = s.values.find(f.name);
      if (it == s.values.end() || std::holds_alternative<ncap::Absent>(it->second)) vals[f.name] = "N/A";
      else if (const auto* d = std::get_if<double>(&it->second)) vals[f.name] = *d;
      else vals[f.name] = std::get<std::string>(it->second);
    }
    json j = {{"id", s.id}, {"values", vals}};
    if (s.capabilities) {
      j["capabilities"] = {{"perception", s.capabilities->perception},
                           {"modeling", s.capabilities->modeling},
                           {"planning", s.capabilities->planning},
                           {"execution", s.capabilities->execution}};
    }
    if (s.n_al) j["n_al"] = *s.n_al;
    systems.push_back(j);
  }
  root["systems"] = systems;
  return root.dump(2) + "\n";
}

Parsed<std::map<std::string, double>> parse_weights_text(std::string_view text, const std::string& source) {
  const Reader r(source);
  ParseReport rep;
  rep.source = source;
  const json root = parse_json(text, source);
  r.object(root, "$");
  std::map<std::string, double> out;
  for (const auto& [k, v] : root.items()) out[k] = r.number(v, k);
  rep.counts["weights"] = out.size();
  return {std::move(out), rep};
}

Parsed<std::map<std::string, double>> parse_weights(const fs::path& path) {
  return from_file<std::map<std::string, double>>(path,
                                                  [](std::string_view t, const std::string& s) { return parse_weights_text(t, s); });
}

// ---------------------------------------------------------------------------
// FIS config

Parsed<FisBundle> parse_fis_config_text(std::string_view text, const std::string& source) {
  const Reader r(source);
  ParseReport rep;
  rep.source = source;
  const json root = parse_json(text, source);
  r.object(root, "$");
  FisBundle b;
  auto& cfg = b.config;
  cfg.test_id = r.opt(root, "test_id") ? r.string(root["test_id"], "test_id") : std::string();
  if (const auto* o = r.opt(root, "outputs")) {
    r.array(*o, "outputs");
    cfg.outputs.clear();
    for (std::size_t i = 0; i < o->size(); ++i) {
      const auto p = at("outputs", i);
      const auto& e = r.object((*o)[i], p);
      cfg.outputs.emplace_back(r.string(r.req(e, "name", p), dot(p, "name")), r.number(r.req(e, "value", p), dot(p, "value")));
    }
  }
  if (const auto* h = r.opt(root, "hedges")) {
    r.object(*h, "hedges");
    for (const auto& [label, spec] : h->items()) {
      const auto p = dot("hedges", label);
      r.object(spec, p);
      cfg.hedges[label] = {r.opt(spec, "not") ? r.boolean(spec["not"], dot(p, "not")) : false,
                           r.string(r.req(spec, "term", p), dot(p, "term"))};
    }
  }
  cfg.combined = r.string(r.req(root, "combined", "$"), "combined");
  const auto& systems = r.array(r.req(root, "systems", "$"), "systems");
  for (std::size_t i = 0; i < systems.size(); ++i) {
    const auto p = at("systems", i);
    const auto& so = r.object(systems[i], p);
    cfis::Fis fis;
    fis.id = r.string(r.req(so, "id", p), dot(p, "id"));
    const auto ip = dot(p, "inputs");
    const auto& inputs = r.array(r.req(so, "inputs", p), ip);
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      const auto vp = at(ip, k);
      const auto& vo = r.object(inputs[k], vp);
      cfis::LinguisticVariable v;
      v.name = r.string(r.req(vo, "name", vp), dot(vp, "name"));
      const auto range = r.numbers(r.req(vo, "range", vp), dot(vp, "range"));
      if (range.size() != 2) r.raise(ErrorCode::MalformedTuple, dot(vp, "range"), "range must be [lo, hi]");
      v.lo = range[0];
      v.hi = range[1];
      if (const auto* s = r.opt(vo, "source")) v.source = r.string(*s, dot(vp, "source"));
      const auto tp = dot(vp, "terms");
      const auto& terms = r.object(r.req(vo, "terms", vp), tp);
      for (const auto& [tname, tv] : terms.items()) {
        const auto tpp = dot(tp, tname);
        const json& tuple = tv.is_object() ? r.req(tv, "mf", tpp) : tv;
        if (!tuple.is_array() || tuple.size() != 3) {
          r.raise(ErrorCode::MalformedTuple, tpp, "membership function must be a three point tuple (a, b, c)");
        }
        std::array<double, 3> abc{};
        for (std::size_t q = 0; q < 3; ++q) {
          if (!tuple[q].is_number()) r.raise(ErrorCode::MalformedTuple, tpp, "tuple entries must be numbers");
          abc[q] = tuple[q].get<double>();
        }
        v.terms.push_back({tname, {abc[0], abc[1], abc[2]}});
      }
      fis.inputs.push_back(std::move(v));
    }
    fis.rules.clear();
    const auto rp = dot(p, "rules");
    const auto& rules = r.array(r.req(so, "rules", p), rp);
    for (std::size_t k = 0; k < rules.size(); ++k) {
      const auto rk = at(rp, k);
      const auto& ro = r.object(rules[k], rk);
      cfis::Rule rule;
      const auto& cond = r.object(r.req(ro, "if", rk), dot(rk, "if"));
      for (const auto& [var, label] : cond.items()) {
        const auto it = std::find_if(fis.inputs.begin(), fis.inputs.end(), [&](const auto& v) { return v.name == var; });
        if (it == fis.inputs.end()) r.raise(ErrorCode::UnknownTerm, rk, "unknown variable '" + var + "'");
        const auto lbl = r.string(label, dot(dot(rk, "if"), var));
        try {
          rule.antecedents.push_back(cfis::resolve_label(cfg, *it, lbl));
        } catch (const Error& e) {
          r.raise(ErrorCode::UnknownTerm, rk, e.detail());
        }
      }
      rule.consequent = r.string(r.req(ro, "then", rk), dot(rk, "then"));
      if (!cfg.output_value(rule.consequent)) {
        r.raise(ErrorCode::UnknownTerm, rk, "unknown output level '" + rule.consequent + "'");
      }
      fis.rules.push_back(std::move(rule));
    }
    cfg.systems.push_back(std::move(fis));
  }
  if (const auto* ideal = r.opt(root, "ideal_inputs")) {
    r.object(*ideal, "ideal_inputs");
    for (const auto& [sys, vars] : ideal->items()) {
      const auto p = dot("ideal_inputs", sys);
      r.object(vars, p);
      for (const auto& [var, val] : vars.items()) b.ideal[sys][var] = r.number(val, dot(p, var));
    }
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw Error(e.code(), e.detail(), std::nullopt, source);
  }
  for (const auto& s : cfg.systems) {
    for (const auto& v : s.inputs) {
      if (cfis::min_coverage(v) <= 0.0) rep.warn(s.id + "." + v.name, "terms leave part of the range uncovered");
    }
    const auto sw = cfis::sweep(cfg, s);
    if (sw.no_rule > 0) {
      rep.warn(s.id, "no rule fires on " + std::to_string(sw.no_rule) + " of " + std::to_string(sw.points) +
                         " sweep points");
    }
  }
  rep.counts["systems"] = cfg.systems.size();
  return {std::move(b), rep};
}

Parsed<FisBundle> parse_fis_config(const fs::path& path) {
  return from_file<FisBundle>(path, [](std::string_view t, const std::string& s) { return parse_fis_config_text(t, s); });
}

std::string write_fis_config(const FisBundle& b) {
  const auto& cfg = b.config;
  json root = json::object();
  root["test_id"] = cfg.test_id;
  json outs = json::array();
  for (const auto& [n, v] : cfg.outputs) outs.push_back({{"name", n}, {"value", v}});
  root["outputs"] = outs;
  json hedges = json::object();
  for (const auto& [label, h] : cfg.hedges) hedges[label] = {{"not", h.negated}, {"term", h.term}};
  root["hedges"] = hedges;
  root["combined"] = cfg.combined;
  json systems = json::array();
  for (const auto& s : cfg.systems) {
    json inputs = json::array();
    for (const auto& v : s.inputs) {
      json terms = json::object();
      for (const auto& t : v.terms) terms[t.name] = json::array({t.mf.a, t.mf.b, t.mf.c});
      json j = {{"name", v.name}, {"range", json::array({v.lo, v.hi})}, {"terms", terms}};
      if (v.source) j["source"] = *v.source;
      inputs.push_back(j);
    }
    json rules = json::array();
    for (const auto& r : s.rules) {
      json cond = json::object();
      for (const auto& a : r.antecedents) cond[a.variable] = (a.negated ? "Not " : "") + a.term;
      rules.push_back({{"if", cond}, {"then", r.consequent}});
    }
    systems.push_back({{"id", s.id}, {"inputs", inputs}, {"rules", rules}});
  }
  root["systems"] = systems;
  if (!b.ideal.empty()) {
    json ideal = json::object();
    for (const auto& [sys, vars] : b.ideal) {
      json v = json::object();
      for (const auto& [k, x] : vars) v[k] = x;
      ideal[sys] = v;
    }
    root["ideal_inputs"] = ideal;
  }
  return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Fiducial observations

Parsed<std::vector<mapping::FiducialObservation>> parse_fiducials_text(std::string_view text, const std::string& source) {
  const auto table = csv::parse(text, source);
  const Columns cols{table, source};
  ParseReport rep;
  rep.source = source;
  const auto cid = cols.require("fiducial_id"), ch = cols.require("half"), cx = cols.require("x"), cy = cols.require("y"),
             cm = cols.require("mapped");
  std::vector<mapping::FiducialObservation> out;
  std::set<std::pair<std::string, int>> seen;
  for (const auto& row : table.rows) {
    mapping::FiducialObservation o;
    o.fiducial_id = cols.nonempty(row, cid);
    const auto half = cols.integer(row, ch);
    if (half != 1 && half != 2) throw Error(ErrorCode::MalformedInput, "half must be 1 or 2", row.line, source);
    o.half = static_cast<int>(half);
    if (!seen.insert({o.fiducial_id, o.half}).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate fiducial half '" + o.fiducial_id + "'", row.line, source);
    }
    const auto m = mapping::parse_mapped_state(cols.text(row, cm));
    if (!m) throw Error(ErrorCode::UnknownCategory, "unknown mapped state '" + cols.text(row, cm) + "'", row.line, source);
    o.mapped = *m;
    const bool has_xy = !cols.text(row, cx).empty() || !cols.text(row, cy).empty();
    if (has_xy) o.map_xy = Vec2{cols.number(row, cx), cols.number(row, cy)};
    if (o.mapped != mapping::MappedState::missing && !o.map_xy) {
      throw Error(ErrorCode::MalformedInput, "mapped fiducial half needs x and y", row.line, source);
    }
    out.push_back(o);
  }
  rep.counts["halves"] = out.size();
  return {std::move(out), rep};
}

Parsed<std::vector<mapping::FiducialObservation>> parse_fiducials(const fs::path& path) {
  return from_file<std::vector<mapping::FiducialObservation>>(
      path, [](std::string_view t, const std::string& s) { return parse_fiducials_text(t, s); });
}

std::string write_fiducials(const std::vector<mapping::FiducialObservation>& obs) {
  std::string out = "fiducial_id,half,x,y,mapped\n";
  for (const auto& o : obs) {
    out += csv::escape(o.fiducial_id) + ',' + std::to_string(o.half) + ',';
    if (o.map_xy) out += csv::format_double(o.map_xy->x) + ',' + csv::format_double(o.map_xy->y);
    else out += ',';
    out += ',' + std::string(mapping::to_string(o.mapped)) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Criteria

Parsed<field::ChecklistCriteria> parse_criteria_text(std::string_view text, const std::string& source) {
  const Reader r(source);
  ParseReport rep;
  rep.source = source;
  const json root = parse_json(text, source);
  auto c = criteria_from_json(r, root, "$");
  rep.counts["criteria"] = c.size();
  return {std::move(c), rep};
}

Parsed<field::ChecklistCriteria> parse_criteria(const fs::path& path) {
  return from_file<field::ChecklistCriteria>(path,
                                             [](std::string_view t, const std::string& s) { return parse_criteria_text(t, s); });
}

std::string write_criteria(const field::ChecklistCriteria& c) { return criteria_to_json(c).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// cFIS scores

Parsed<std::vector<ScoreRow>> parse_scores_text(std::string_view text, const std::string& source) {
  const auto table = csv::parse(text, source);
  const Columns cols{table, source};
  ParseReport rep;
  rep.source = source;
  const auto cs = cols.require("suas_id"), ct = cols.require("test_id");
  const auto cscore = cols.optional("score");
  std::vector<std::tuple<std::size_t, std::string, std::string>> inputs;  // col, fis, var
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    const auto& h = table.header[i];
    if (h == "suas_id" || h == "test_id" || h == "score") continue;
    const auto d = h.find('.');
    if (d == std::string::npos || d == 0 || d + 1 == h.size()) {
      rep.warn("line 1", "column '" + h + "' is not <fis>.<variable>, ignored");
      continue;
    }
    inputs.emplace_back(i, h.substr(0, d), h.substr(d + 1));
  }
  std::vector<ScoreRow> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& row : table.rows) {
    ScoreRow s;
    s.suas_id = cols.nonempty(row, cs);
    s.test_id = cols.nonempty(row, ct);
    if (!seen.insert({s.suas_id, s.test_id}).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate row for " + s.suas_id + "/" + s.test_id, row.line, source);
    }
    if (cscore && !cols.text(row, *cscore).empty()) {
      s.score = cols.number(row, *cscore);
      if (*s.score < 0.0 || *s.score > 1.0) {
        throw Error(ErrorCode::ScoreOutOfRange, "test score must lie in [0, 1]", row.line, source);
      }
    }
    for (const auto& [col, fis, var] : inputs) {
      if (cols.text(row, col).empty()) continue;
      s.inputs[fis][var] = cols.number(row, col);
    }
    out.push_back(std::move(s));
  }
  rep.counts["rows"] = out.size();
  return {std::move(out), rep};
}

Parsed<std::vector<ScoreRow>> parse_scores(const fs::path& path) {
  return from_file<std::vector<ScoreRow>>(path, [](std::string_view t, const std::string& s) { return parse_scores_text(t, s); });
}

}  // namespace decisive::ingest

// ---------------------------------------------------------------------------
// Campaign model helpers

namespace decisive {

namespace {
constexpr std::pair<TestType, std::string_view> kTestTypes[] = {
    {TestType::position_accuracy, "position_accuracy"},
    {TestType::wall_following, "wall_following"},
    {TestType::waypoint, "waypoint"},
    {TestType::aperture, "aperture"},
    {TestType::corridor, "corridor"},
    {TestType::obstacle_avoidance, "obstacle_avoidance"},
    {TestType::collision_resilience, "collision_resilience"},
    {TestType::endurance, "endurance"},
    {TestType::takeoff, "takeoff"},
    {TestType::landing, "landing"},
    {TestType::room_clearing, "room_clearing"},
    {TestType::noise, "noise"},
    {TestType::nlos_comms, "nlos_comms"},
    {TestType::nlos_latency, "nlos_latency"},
    {TestType::logistics, "logistics"},
    {TestType::ocu, "ocu"},
    {TestType::mapping_resolution, "mapping_resolution"},
    {TestType::mapping_accuracy, "mapping_accuracy"},
};
}  // namespace

std::string_view to_string(TestType t) {
  for (const auto& [v, s] : kTestTypes)
    if (v == t) return s;
  return "?";
}

std::optional<TestType> parse_test_type(std::string_view s) {
  for (const auto& [v, name] : kTestTypes)
    if (name == s) return v;
  return std::nullopt;
}

const TestDefinition* Campaign::find_test(std::string_view id) const {
  for (const auto& t : tests)
    if (t.id == id) return &t;
  return nullptr;
}

const SuasDescriptor* Campaign::find_suas(std::string_view id) const {
  for (const auto& s : suas)
    if (s.id == id) return &s;
  return nullptr;
}

std::filesystem::path Campaign::resolve(const std::string& relative) const {
  const std::filesystem::path p(relative);
  return p.is_absolute() ? p : base_dir / p;
}

}  // namespace decisive
