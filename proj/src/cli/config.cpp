#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fracsum {

using nlohmann::ordered_json;

namespace {

struct TaskInfo {
  Task task;
  const char* name;
  bool needs_ifs;
  std::set<std::string> required;
  std::set<std::string> optional;
};

const std::vector<TaskInfo>& tasks() {
  static const std::vector<TaskInfo> t{
      {Task::Attractor, "attractor", true, {"depth"}, {"budget", "dedup", "delta", "max_bytes"}},
      {Task::Sumset, "sumset", true, {"depth", "n", "delta"}, {"budget", "max_bytes"}},
      {Task::Thickness, "thickness", true, {"depth"},
       {"budget", "seed", "radii_per_decade", "sampled_centers", "c", "witness_trials"}},
      {Task::VerifyThm71, "verify-thm71", true, {"n", "depth", "delta"}, {"budget", "max_bytes", "force"}},
      {Task::VerifyEx73, "verify-ex73", false, {"n", "depth"}, {}},
      {Task::LemmaCheck, "lemma-check", false, {}, {"trials", "samples", "dims", "seed"}},
      {Task::Thm12Probe, "thm12-probe", true, {"depth", "c", "n"}, {"budget", "max_bytes", "max_cells_per_axis"}},
  };
  return t;
}

[[noreturn]] void bad(const std::string& field, const std::string& msg) {
  fail(ErrorCode::ConfigInvalid, field + ": " + msg);
}

void only_keys(const ordered_json& obj, const std::string& where, const std::set<std::string>& allowed) {
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      bad(where.empty() ? k : where + "." + k, "unknown key (allowed: " + list + ")");
    }
}

const ordered_json& need(const ordered_json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) bad(where + "." + key, "missing");
  return obj.at(key);
}

std::int64_t as_int(const ordered_json& v, const std::string& field, std::int64_t lo, std::int64_t hi) {
  if (!v.is_number_integer()) bad(field, "expected an integer");
  const std::int64_t x = v.get<std::int64_t>();
  if (x < lo || x > hi) bad(field, "value " + std::to_string(x) + " outside [" + std::to_string(lo) + ", " +
                                       std::to_string(hi) + "]");
  return x;
}

std::uint64_t as_count(const ordered_json& v, const std::string& field, std::uint64_t lo) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    bad(field, "expected a non-negative integer");
  const std::uint64_t x = v.get<std::uint64_t>();
  if (x < lo) bad(field, "must be at least " + std::to_string(lo));
  return x;
}

double as_double(const ordered_json& v, const std::string& field) {
  if (!v.is_number()) bad(field, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) bad(field, "not finite");
  return x;
}

// A number, or a string "p/q", integer or decimal (kept exact).
ExactReal as_real(const ordered_json& v, const std::string& field) {
  if (v.is_string()) {
    const auto r = parse_rational(v.get<std::string>());
    if (!r) bad(field, "cannot parse '" + v.get<std::string>() + "' as a rational");
    return ExactReal::from_rational(*r);
  }
  return ExactReal::from_double(as_double(v, field));
}

Point as_point(const ordered_json& v, const std::string& field, int dim) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim)
    bad(field, "expected an array of " + std::to_string(dim) + " numbers");
  Point p(dim);
  for (int i = 0; i < dim; ++i) p[i] = as_real(v[static_cast<std::size_t>(i)], field + "[" + std::to_string(i) + "]").value;
  return p;
}

AffineMap parse_map(const ordered_json& m, const std::string& where, int dim) {
  if (!m.is_object()) bad(where, "expected an object");
  const auto& type = need(m, "type", where);
  if (!type.is_string()) bad(where + ".type", "expected \"similitude\" or \"affine\"");
  const std::string t = type.get<std::string>();
  const std::string label = "map " + where.substr(where.find('[') + 1, where.find(']') - where.find('[') - 1);
  if (t == "similitude") {
    only_keys(m, where, dim == 2   ? std::set<std::string>{"type", "ratio", "angle_deg", "translation"}
                        : dim == 3 ? std::set<std::string>{"type", "ratio", "angles_deg", "translation"}
                                   : std::set<std::string>{"type", "ratio", "translation"});
    const ExactReal ratio = as_real(need(m, "ratio", where), where + ".ratio");
    if (!(ratio.value > 0.0 && ratio.value < 1.0))
      bad(where + ".ratio", label + " has ratio " + ordered_json(ratio.value).dump() +
                                ", which is not in (0, 1): the map does not contract");
    Matrix q = Matrix::identity(dim);
    if (dim == 2 && m.contains("angle_deg")) q = rotation_2d(as_double(m["angle_deg"], where + ".angle_deg"));
    if (dim == 3 && m.contains("angles_deg")) {
      const auto& a = m["angles_deg"];
      if (!a.is_array() || a.size() != 3) bad(where + ".angles_deg", "expected [z, y, x] in degrees");
      q = rotation_3d(as_double(a[0], where + ".angles_deg[0]"), as_double(a[1], where + ".angles_deg[1]"),
                      as_double(a[2], where + ".angles_deg[2]"));
    }
    return AffineMap::similitude(ratio, q, as_point(need(m, "translation", where), where + ".translation", dim));
  }
  if (t == "affine") {
    only_keys(m, where, {"type", "matrix", "translation"});
    const auto& rows = need(m, "matrix", where);
    if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
      bad(where + ".matrix", "expected " + std::to_string(dim) + " rows");
    Matrix a = Matrix::identity(dim);
    for (int i = 0; i < dim; ++i) {
      const Point row = as_point(rows[static_cast<std::size_t>(i)], where + ".matrix[" + std::to_string(i) + "]", dim);
      for (int j = 0; j < dim; ++j) a.a[i][j] = row[j];
    }
    const Point tr = as_point(need(m, "translation", where), where + ".translation", dim);
    try {
      AffineMap f = AffineMap::affine(a, tr);
      if (!(f.contraction_ub() < 1.0))
        bad(where + ".matrix", label + " has contraction bound " + ordered_json(f.contraction_ub()).dump() +
                                   " >= 1: the map does not contract");
      return f;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ConfigInvalid) throw;
      bad(where, e.what());
    }
  }
  bad(where + ".type", "unknown map type '" + t + "'");
}

Ifs parse_ifs(const ordered_json& j) {
  if (!j.is_object()) bad("ifs", "expected an object");
  only_keys(j, "ifs", {"dim", "maps"});
  const int dim = static_cast<int>(as_int(need(j, "dim", "ifs"), "ifs.dim", 1, kMaxDim));
  const auto& maps = need(j, "maps", "ifs");
  if (!maps.is_array() || maps.empty()) bad("ifs.maps", "expected a non-empty array");
  std::vector<AffineMap> out;
  for (std::size_t i = 0; i < maps.size(); ++i)
    out.push_back(parse_map(maps[i], "ifs.maps[" + std::to_string(i + 1) + "]", dim));
  try {
    return Ifs(std::move(out));
  } catch (const Error& e) {
    bad("ifs", e.what());
  }
}

Params parse_params(const ordered_json& j, const TaskInfo& info) {
  if (!j.is_object()) bad("params", "expected an object");
  std::set<std::string> allowed = info.required;
  allowed.insert(info.optional.begin(), info.optional.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      bad("params." + k, std::string("not used by task ") + info.name + " (allowed: " + list + ")");
    }
  for (const auto& r : info.required)
    if (!j.contains(r)) bad("params." + r, std::string("required by task ") + info.name);

  Params p;
  const auto f = [](const std::string& k) { return "params." + k; };
  if (j.contains("depth")) p.depth = static_cast<int>(as_int(j["depth"], f("depth"), 0, 64));
  if (j.contains("n")) p.n = as_count(j["n"], f("n"), 1);
  if (j.contains("delta")) {
    p.delta = as_real(j["delta"], f("delta"));
    if (!(p.delta->value > 0.0)) bad(f("delta"), "cell size must be positive");
  }
  if (j.contains("c")) {
    p.c = as_real(j["c"], f("c"));
    if (!(p.c->value > 0.0 && p.c->value <= 1.0)) bad(f("c"), "c must satisfy 0 < c <= 1");
  }
  if (j.contains("seed")) p.seed = as_count(j["seed"], f("seed"), 0);
  if (j.contains("budget")) p.budget = as_count(j["budget"], f("budget"), 1);
  if (j.contains("max_bytes")) p.max_bytes = as_count(j["max_bytes"], f("max_bytes"), 1);
  if (j.contains("force")) {
    if (!j["force"].is_boolean()) bad(f("force"), "expected true or false");
    p.force = j["force"].get<bool>();
  }
  if (j.contains("dedup")) {
    if (!j["dedup"].is_boolean()) bad(f("dedup"), "expected true or false");
    p.dedup = j["dedup"].get<bool>();
  }
  if (j.contains("trials")) p.trials = static_cast<int>(as_int(j["trials"], f("trials"), 1, 1'000'000));
  if (j.contains("samples")) p.samples = static_cast<int>(as_int(j["samples"], f("samples"), 1, 1'000'000));
  if (j.contains("dims")) {
    const auto& d = j["dims"];
    if (!d.is_array() || d.empty()) bad(f("dims"), "expected a non-empty array of dimensions");
    std::vector<int> dims;
    for (std::size_t i = 0; i < d.size(); ++i)
      dims.push_back(static_cast<int>(as_int(d[i], f("dims") + "[" + std::to_string(i) + "]", 1, kMaxDim)));
    p.dims = dims;
  }
  if (j.contains("radii_per_decade"))
    p.radii_per_decade = static_cast<int>(as_int(j["radii_per_decade"], f("radii_per_decade"), 1, 1000));
  if (j.contains("sampled_centers")) p.sampled_centers = as_count(j["sampled_centers"], f("sampled_centers"), 0);
  if (j.contains("witness_trials"))
    p.witness_trials = static_cast<int>(as_int(j["witness_trials"], f("witness_trials"), 0, 1'000'000));
  if (j.contains("max_cells_per_axis"))
    p.max_cells_per_axis = as_int(j["max_cells_per_axis"], f("max_cells_per_axis"), 2, 1 << 20);
  return p;
}

OutputSpec parse_output(const ordered_json& j) {
  if (!j.is_object()) bad("output", "expected an object");
  only_keys(j, "output", {"dir", "points_csv", "pbm"});
  OutputSpec o;
  if (j.contains("dir")) {
    if (!j["dir"].is_string() || j["dir"].get<std::string>().empty()) bad("output.dir", "expected a path");
    o.dir = j["dir"].get<std::string>();
  }
  for (const char* k : {"points_csv", "pbm"})
    if (j.contains(k)) {
      if (!j[k].is_boolean()) bad(std::string("output.") + k, "expected true or false");
      (std::string(k) == "pbm" ? o.pbm : o.points_csv) = j[k].get<bool>();
    }
  return o;
}

std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

const char* task_name(Task t) noexcept {
  for (const auto& i : tasks())
    if (i.task == t) return i.name;
  return "?";
}

ExperimentConfig parse_config(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is one past the offending character.
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string what = e.what();
    const auto pos = what.find("parse error");
    fail(ErrorCode::ConfigInvalid, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                                       (pos == std::string::npos ? what : what.substr(pos)));
  }
  if (!doc.is_object()) bad("(document)", "expected a JSON object");
  only_keys(doc, "", {"task", "ifs", "params", "output"});

  const auto& task = need(doc, "task", "(document)");
  if (!task.is_string()) bad("task", "expected a string");
  const std::string name = task.get<std::string>();
  const auto it = std::find_if(tasks().begin(), tasks().end(), [&](const TaskInfo& i) { return name == i.name; });
  if (it == tasks().end()) {
    std::string list;
    for (const auto& i : tasks()) list += (list.empty() ? "" : ", ") + std::string(i.name);
    bad("task", "unknown task '" + name + "' (one of: " + list + ")");
  }

  ExperimentConfig cfg;
  cfg.task = it->task;
  cfg.source = doc;
  if (doc.contains("ifs")) {
    if (cfg.task == Task::LemmaCheck) bad("ifs", "not used by task lemma-check");
    cfg.ifs = parse_ifs(doc["ifs"]);
  } else if (it->needs_ifs) {
    bad("ifs", std::string("required by task ") + it->name);
  }
  cfg.params = parse_params(doc.contains("params") ? doc["params"] : ordered_json::object(), *it);
  if (doc.contains("output")) cfg.output = parse_output(doc["output"]);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace fracsum
