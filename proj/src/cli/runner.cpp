#include "runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "geom.hpp"
#include "lemma_suite.hpp"
#include "point_index.hpp"
#include "random.hpp"
#include "raster.hpp"
#include "sums.hpp"
#include "thickness.hpp"

namespace fracsum {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

ordered_json point_json(const Point& p) {
  ordered_json a = ordered_json::array();
  for (int i = 0; i < p.dim(); ++i) a.push_back(p[i]);
  return a;
}

ordered_json check(const std::string& name, double measured, const char* relation, double bound, bool pass) {
  return ordered_json{{"name", name}, {"measured", measured}, {"relation", relation}, {"bound", bound}, {"pass", pass}};
}

ordered_json flag_check(const std::string& name, bool pass) {
  return ordered_json{{"name", name}, {"pass", pass}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

// Per-run context shared by the task bodies.
struct Ctx {
  const ExperimentConfig& cfg;
  unsigned workers;
  std::uint64_t seed;
  bool force;
  fs::path dir;
  ordered_json values = ordered_json::object();
  ordered_json checks = ordered_json::array();
  std::vector<std::string> files;
  bool informational = false;

  const Params& p() const { return cfg.params; }
  const Ifs& ifs() const { return *cfg.ifs; }
  CoverOptions cover_opts(bool dedup = false) const {
    return {p().budget.value_or(CoverOptions{}.budget), workers, dedup};
  }
  std::uint64_t max_bytes() const { return p().max_bytes.value_or(RasterOptions{}.max_bytes); }

  void file(const std::string& name, const std::string& text) {
    write_text(dir / name, text);
    files.push_back(name);
  }
  void raster(const std::string& name, const Raster& r) {
    for (const fs::path& f : write_pbm(r, dir / name)) files.push_back(f.filename().string());
  }
  void points(const std::vector<Point>& pts) {
    if (cfg.output.points_csv) file("points.csv", points_csv(pts));
  }
};

// Counts come through as doubles; print whole values as integers.
void copy_details(Ctx& c, const SumIdentityReport& rep) {
  for (const auto& [k, v] : rep.details) {
    if (v == std::floor(v) && std::abs(v) < 0x1p53 && k.find("slack") == std::string::npos &&
        k.find("margin") == std::string::npos)
      c.values[k] = static_cast<std::int64_t>(v);
    else
      c.values[k] = v;
  }
}

void describe_ifs(Ctx& c) {
  const Ifs& ifs = c.ifs();
  c.values["dim"] = ifs.dim();
  c.values["maps"] = ifs.size();
  c.values["max_contraction"] = ifs.max_contraction();
}

void describe_cover(Ctx& c, const CylinderCover& cover) {
  c.values["depth"] = cover.depth;
  c.values["inner_points"] = cover.inner_points.size();
  c.values["eps"] = cover.eps;
  c.values["root_center"] = point_json(cover.root.center);
  c.values["root_radius"] = cover.root.radius;
}

void task_attractor(Ctx& c) {
  describe_ifs(c);
  const CylinderCover cover = expand_cover(c.ifs(), *c.p().depth, c.cover_opts(c.p().dedup.value_or(false)));
  describe_cover(c, cover);
  c.values["anchor"] = point_json(cover.anchor);
  c.values["dedup_removed"] = cover.dedup_removed;
  c.points(cover.inner_points);
  if (c.p().delta) {
    const Raster r = rasterize_inner(cover.inner_points,
                                     grid_for_box(bounding_box(cover.inner_points), c.p().delta->value));
    c.values["delta"] = c.p().delta->value;
    c.values["raster_cells"] = r.count();
    c.values["raster_slack"] = r.slack();
    if (c.cfg.output.pbm) c.raster("attractor.pbm", r);
  }
}

void task_sumset(Ctx& c) {
  describe_ifs(c);
  const CylinderCover cover = expand_cover(c.ifs(), *c.p().depth, c.cover_opts());
  describe_cover(c, cover);
  const double delta = c.p().delta->value;
  const std::uint64_t n = *c.p().n;
  const RasterOptions ropts{c.workers, c.max_bytes()};
  const Raster summand = rasterize_inner(cover.inner_points, grid_for_box(bounding_box(cover.inner_points), delta));
  const Raster sum = n_fold_sum(summand, n, ropts);
  c.values["n"] = n;
  c.values["delta"] = delta;
  c.values["summand_cells"] = summand.count();
  c.values["summand_slack"] = summand.slack();
  c.values["sum_cells"] = sum.count();
  c.values["sum_slack"] = sum.slack();
  c.values["sum_origin"] = point_json(sum.origin());
  ordered_json dims = ordered_json::array();
  for (int a = 0; a < sum.dim(); ++a) dims.push_back(sum.dims()[a]);
  c.values["sum_dims"] = dims;
  // Every sum cell centre is within n eps + slack of the n-fold sum of E.
  c.values["hausdorff_bound"] = static_cast<double>(n) * cover.eps + sum.slack();
  c.points(cover.inner_points);
  if (c.cfg.output.pbm) {
    c.raster("summand.pbm", summand);
    c.raster("sumset.pbm", sum);
  }
}

void task_thickness(Ctx& c) {
  describe_ifs(c);
  const CylinderCover cover = expand_cover(c.ifs(), *c.p().depth, c.cover_opts());
  describe_cover(c, cover);
  const int d = cover.dim;

  EstimateOptions eo;
  eo.seed = c.seed;
  eo.workers = c.workers;
  if (c.p().radii_per_decade) eo.radii_per_decade = *c.p().radii_per_decade;
  if (c.p().sampled_centers) eo.sampled_centers = *c.p().sampled_centers;
  const ThicknessBound est = estimate_thickness(cover, eo);
  ordered_json e;
  e["kind"] = bound_kind_name(est.kind);
  e["value"] = est.value;
  e["centers"] = est.centers;
  e["radii"] = est.radii;
  e["r_max"] = est.r_max;
  e["r_min"] = est.r_min;
  e["argmin_x"] = point_json(est.argmin_x);
  e["argmin_r"] = est.argmin_r;
  c.values["estimate"] = e;

  if (c.ifs().similitude()) {
    const ThicknessBound cb = certified_self_similar_bound(c.ifs(), cover);
    ordered_json b;
    b["kind"] = bound_kind_name(cb.kind);
    b["value"] = cb.value;
    b["rho_min"] = cb.rho_min;
    b["r0"] = cb.r0;
    b["diam_ub"] = cb.diam_ub;
    b["flat_sample"] = cb.flat_sample;
    c.values["certified"] = b;
  }

  if (!c.p().c) return;
  const ExactReal cval = *c.p().c;
  c.values["c"] = cval.value;
  c.values["sum_threshold"] = sum_threshold(cval);
  const std::uint64_t N = packing_count(cval, d);
  c.values["packing_count"] = N;

  const int trials = c.p().witness_trials.value_or(0);
  if (trials == 0) return;
  const PointIndex index(cover.inner_points);
  const double diam = diameter(convex_hull(cover.inner_points, d).vertices());
  Rng rng(c.seed);
  int failed = 0, oversize = 0, unsampled = 0;
  std::size_t largest = 0;
  for (int t = 0; t < trials; ++t) {
    const Point x = cover.inner_points[rng.index(cover.inner_points.size())];
    const double r = diam * rng.uniform(0.05, 1.0);
    try {
      const PackingWitness w = extract_packing_witness(index, d, cover.eps, x, r, cval.value);
      largest = std::max(largest, w.selection.size());
      if (w.selection.size() > N) ++oversize;
      if (!witness_ball_sampled(w, cval.value * r / 2.0 - 2.0 * cover.eps, rng.engine()())) ++unsampled;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::WitnessFailed) throw;
      ++failed;
    }
  }
  c.values["witness_trials"] = trials;
  c.values["largest_selection"] = largest;
  c.checks.push_back(check("witness_failures", failed, "<=", 0, failed == 0));
  c.checks.push_back(check("selections_over_packing_count", oversize, "<=", 0, oversize == 0));
  c.checks.push_back(check("ball_samples_outside_hull", unsampled, "<=", 0, unsampled == 0));
}

void task_thm71(Ctx& c) {
  describe_ifs(c);
  Theorem71Options o;
  o.force = c.force || c.p().force.value_or(false);
  o.workers = c.workers;
  o.max_bytes = c.max_bytes();
  o.budget = c.p().budget.value_or(CoverOptions{}.budget);
  const SumIdentityReport rep = verify_theorem71(c.ifs(), *c.p().n, *c.p().depth, c.p().delta->value, o);
  c.informational = rep.informational;
  c.values["n"] = rep.n;
  c.values["depth"] = rep.depth;
  copy_details(c, rep);
  c.checks.push_back(check("hausdorff_distance", rep.d_H_measured, "<=", rep.tolerance, rep.pass));
  c.checks.push_back(flag_check("sum_inside_outer_target", rep.containment));
}

bool same_system(const Ifs& a, const Ifs& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const AffineMap &f = a.map(i), &g = b.map(i);
    for (int r = 0; r < a.dim(); ++r) {
      if (std::abs(f.translation()[r] - g.translation()[r]) > 1e-15) return false;
      for (int s = 0; s < a.dim(); ++s)
        if (std::abs(f.linear().a[r][s] - g.linear().a[r][s]) > 1e-15) return false;
    }
  }
  return true;
}

void task_ex73(Ctx& c) {
  const Ifs ifs = example73_ifs();
  if (c.cfg.ifs && !same_system(*c.cfg.ifs, ifs))
    fail(ErrorCode::ConfigInvalid, "ifs: verify-ex73 needs the rotation example system (ratios 1/4, "
                                   "fixed points (1,0), (0,1), third map rotated by -90 degrees)");
  const std::uint64_t n = *c.p().n;
  const int depth = *c.p().depth;
  const Polytope tri = example73_triangle();
  c.values["n"] = n;
  c.values["depth"] = depth;

  const double region = invariant_region_margin(ifs, tri);
  c.values["invariant_region_margin"] = region;
  c.checks.push_back(flag_check("images_inside_triangle", verify_invariant_region(ifs, tri)));

  const NonMembershipCertificate cert = build_certificate_ex73(n, depth, c.workers);
  ordered_json cj;
  cj["point"] = point_json(cert.point);
  cj["n"] = cert.n;
  cj["depth"] = cert.depth;
  cj["eta"] = cert.eta;
  cj["eta_prime"] = cert.eta_prime;
  cj["slice_balls"] = cert.slice_balls;
  cj["steps"] = ordered_json::array();
  for (const CertificateStep& s : cert.steps)
    cj["steps"].push_back({{"name", s.name}, {"margin", s.margin}, {"detail", s.detail}});
  cj["valid"] = cert.valid();
  c.values["certificate"] = cj;
  c.file("certificate.json", cj.dump(2) + "\n");
  for (const CertificateStep& s : cert.steps)
    c.checks.push_back(check("certificate_" + s.name, s.margin, ">", 0.0, s.margin > 0.0));

  const CylinderCover cover = expand_cover(ifs, depth, {CoverOptions{}.budget, c.workers, false});
  const double dh = hausdorff_distance(convex_hull(cover.inner_points, 2), tri);
  const double bound = 2.0 * std::pow(4.0, -depth) * diameter(tri.vertices());
  c.checks.push_back(check("hull_to_triangle_distance", dh, "<=", bound, dh <= bound));
  c.points(cover.inner_points);
}

void task_lemmas(Ctx& c) {
  const int trials = c.p().trials.value_or(1000);
  const int samples = c.p().samples.value_or(32);
  const std::vector<int> dims = c.p().dims.value_or(std::vector<int>{1, 2, 3});
  c.values["trials"] = trials;
  c.values["samples_per_trial"] = samples;
  c.values["seed"] = c.seed;
  for (int l = 0; l < static_cast<int>(kLemmaNames.size()); ++l)
    for (int d : dims) {
      const LemmaTally t = run_lemma_trials(l, d, trials, c.seed, samples);
      const int bad = t.failures + t.errors;
      c.checks.push_back(check(t.name + "_d" + std::to_string(d), bad, "<=", 0, bad == 0));
    }
}

void task_thm12(Ctx& c) {
  describe_ifs(c);
  const CylinderCover cover = expand_cover(c.ifs(), *c.p().depth, c.cover_opts());
  describe_cover(c, cover);
  Theorem12Options o;
  o.workers = c.workers;
  o.max_bytes = c.max_bytes();
  if (c.p().max_cells_per_axis) o.max_cells_per_axis = *c.p().max_cells_per_axis;
  const SumIdentityReport rep = theorem12_smallcase({cover}, c.p().c->value, *c.p().n, o);
  c.informational = rep.informational;
  c.values["n"] = rep.n;
  c.values["sum_threshold"] = sum_threshold(*c.p().c);
  copy_details(c, rep);
  c.checks.push_back(check("uncovered_fraction", rep.d_H_measured, "<=", rep.tolerance, rep.pass));
}

void render(std::string& out, const ordered_json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  const auto scalar = [](const ordered_json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
  if (v.is_object()) {
    for (const auto& [k, x] : v.items()) {
      const bool flat = !x.is_structured() ||
                        (x.is_array() && std::all_of(x.begin(), x.end(), [](const ordered_json& e) {
                           return !e.is_structured();
                         }));
      if (flat) {
        out += pad + k + ": " + (x.is_array() ? x.dump() : scalar(x)) + "\n";
      } else {
        out += pad + k + ":\n";
        render(out, x, indent + 2);
      }
    }
  } else if (v.is_array()) {
    for (const auto& x : v) {
      if (x.is_object()) {
        std::string item;
        render(item, x, indent + 2);
        item.replace(static_cast<std::size_t>(indent), 2, "- ");
        out += item;
      } else {
        out += pad + "- " + scalar(x) + "\n";
      }
    }
  } else {
    out += pad + scalar(v) + "\n";
  }
}

}  // namespace

std::string points_csv(const std::vector<Point>& pts) {
  std::string out;
  char buf[32];
  for (const Point& p : pts) {
    for (int i = 0; i < p.dim(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", p[i]);
      if (i) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string render_report(const ordered_json& record) {
  std::string out = "fracsum report\n";
  render(out, record, 0);
  return out;
}

RunResult run_config(const ExperimentConfig& cfg, const RunRequest& req) {
  Ctx c{cfg, req.workers, req.seed.value_or(cfg.params.seed.value_or(0)), req.force,
        req.out_dir.value_or(cfg.output.dir), ordered_json::object(), ordered_json::array(), {}, false};
  std::error_code ec;
  fs::create_directories(c.dir, ec);
  if (ec) fail(ErrorCode::IoError, "cannot create output directory " + c.dir.string() + ": " + ec.message());

  std::optional<Error> error;
  try {
    switch (cfg.task) {
      case Task::Attractor: task_attractor(c); break;
      case Task::Sumset: task_sumset(c); break;
      case Task::Thickness: task_thickness(c); break;
      case Task::VerifyThm71: task_thm71(c); break;
      case Task::VerifyEx73: task_ex73(c); break;
      case Task::LemmaCheck: task_lemmas(c); break;
      case Task::Thm12Probe: task_thm12(c); break;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigInvalid) throw;
    error = e;
  }

  bool pass = !error;
  for (const auto& ch : c.checks) pass = pass && ch["pass"].get<bool>();
  const std::string status = error ? "ERROR" : c.checks.empty() ? "OK" : pass ? "PASS" : "FAIL";

  RunResult res;
  res.exit_code = pass ? 0 : 1;
  res.out_dir = c.dir;
  ordered_json& r = res.record;
  r["task"] = task_name(cfg.task);
  r["status"] = status;
  r["exit_code"] = res.exit_code;
  if (c.informational) r["label"] = "INFORMATIONAL";
  if (error) r["error"] = {{"code", error_code_name(error->code())}, {"message", error->what()}};
  r["values"] = c.values;
  r["checks"] = c.checks;
  c.files.push_back("results.json");
  c.files.push_back("report.txt");
  r["files"] = c.files;
  r["config"] = cfg.source;

  res.report = render_report(r);
  write_text(c.dir / "results.json", r.dump(2) + "\n");
  write_text(c.dir / "report.txt", res.report);
  res.files = c.files;
  return res;
}

RunResult run_experiment(const RunRequest& req) { return run_config(load_config(req.config), req); }

}  // namespace fracsum
