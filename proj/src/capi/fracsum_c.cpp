#include "fracsum/fracsum.h"

#include <cstring>
#include <new>
#include <string>

#include "error.hpp"
#include "ifs.hpp"
#include "raster.hpp"
#include "runner.hpp"
#include "sums.hpp"
#include "thickness.hpp"

struct fsum_ifs {
  fracsum::Ifs value;
};
struct fsum_cover {
  fracsum::CylinderCover value;
};
struct fsum_raster {
  fracsum::Raster value;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_report;

fsum_status set_error(fsum_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

template <class F>
fsum_status guarded(F&& body) {
  try {
    body();
    return FSUM_OK;
  } catch (const fracsum::Error& e) {
    return set_error(static_cast<fsum_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(FSUM_ALLOCATION_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return set_error(FSUM_INTERNAL, e.what());
  } catch (...) {
    return set_error(FSUM_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) fracsum::fail(fracsum::ErrorCode::InvalidArgument, what);
}

fracsum::Point point_at(const double* p, int dim) {
  return fracsum::Point::from_span({p, static_cast<std::size_t>(dim)});
}

void require_dim(int dim) { require(dim >= 1 && dim <= fracsum::kMaxDim, "dimension must be 1, 2 or 3"); }

fracsum::Matrix matrix_at(const double* a, int dim) {
  fracsum::Matrix m = fracsum::Matrix::identity(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m.a[i][j] = a[i * dim + j];
  return m;
}

fracsum::ExactReal fraction(int64_t num, int64_t den) {
  require(den != 0, "zero denominator");
  return fracsum::ExactReal::from_rational(fracsum::Rational::make(num, den));
}

}  // namespace

extern "C" {

const char* fsum_version(void) { return "1.0.0"; }

const char* fsum_status_name(fsum_status s) {
  if (s == FSUM_OK) return "Ok";
  if (s < FSUM_INVALID_ARGUMENT || s > FSUM_INTERNAL) return "Unknown";
  return fracsum::error_code_name(static_cast<fracsum::ErrorCode>(s));
}

const char* fsum_last_error(void) { return last_error.c_str(); }

fsum_status fsum_ifs_create_similitudes(int dim, size_t n, const int64_t* num, const int64_t* den, const double* q,
                                        const double* t, fsum_ifs** out) {
  return guarded([&] {
    require(out && num && den && t && n > 0, "null argument or empty map list");
    require_dim(dim);
    std::vector<fracsum::AffineMap> maps;
    const auto dd = static_cast<std::size_t>(dim);
    for (std::size_t i = 0; i < n; ++i) {
      const fracsum::Matrix m = q ? matrix_at(q + i * dd * dd, dim) : fracsum::Matrix::identity(dim);
      maps.push_back(fracsum::AffineMap::similitude(fraction(num[i], den[i]), m, point_at(t + i * dd, dim)));
    }
    *out = new fsum_ifs{fracsum::Ifs(std::move(maps))};
  });
}

fsum_status fsum_ifs_create_affine(int dim, size_t n, const double* a, const double* t, fsum_ifs** out) {
  return guarded([&] {
    require(out && a && t && n > 0, "null argument or empty map list");
    require_dim(dim);
    std::vector<fracsum::AffineMap> maps;
    const auto dd = static_cast<std::size_t>(dim);
    for (std::size_t i = 0; i < n; ++i)
      maps.push_back(fracsum::AffineMap::affine(matrix_at(a + i * dd * dd, dim), point_at(t + i * dd, dim)));
    *out = new fsum_ifs{fracsum::Ifs(std::move(maps))};
  });
}

void fsum_ifs_destroy(fsum_ifs* ifs) { delete ifs; }

fsum_status fsum_ifs_dim(const fsum_ifs* ifs, int* out) {
  return guarded([&] {
    require(ifs && out, "null argument");
    *out = ifs->value.dim();
  });
}

fsum_status fsum_ifs_size(const fsum_ifs* ifs, size_t* out) {
  return guarded([&] {
    require(ifs && out, "null argument");
    *out = ifs->value.size();
  });
}

fsum_status fsum_ifs_fixed_points(const fsum_ifs* ifs, double* out, size_t capacity) {
  return guarded([&] {
    require(ifs && out, "null argument");
    const auto fp = fracsum::fixed_points(ifs->value);
    const int d = ifs->value.dim();
    require(capacity >= fp.size() * static_cast<std::size_t>(d), "buffer too small");
    for (std::size_t i = 0; i < fp.size(); ++i)
      for (int a = 0; a < d; ++a) out[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(a)] = fp[i][a];
  });
}

fsum_status fsum_ifs_sum_threshold(const fsum_ifs* ifs, uint64_t* out) {
  return guarded([&] {
    require(ifs && out, "null argument");
    *out = fracsum::theorem71_threshold(ifs->value);
  });
}

fsum_status fsum_cover_expand(const fsum_ifs* ifs, int depth, uint64_t budget, unsigned workers, fsum_cover** out) {
  return guarded([&] {
    require(ifs && out, "null argument");
    require(depth >= 0, "depth must be non-negative");
    fracsum::CoverOptions o;
    if (budget) o.budget = budget;
    o.workers = workers;
    *out = new fsum_cover{fracsum::expand_cover(ifs->value, depth, o)};
  });
}

void fsum_cover_destroy(fsum_cover* cover) { delete cover; }

fsum_status fsum_cover_size(const fsum_cover* cover, size_t* out) {
  return guarded([&] {
    require(cover && out, "null argument");
    *out = cover->value.inner_points.size();
  });
}

fsum_status fsum_cover_eps(const fsum_cover* cover, double* out) {
  return guarded([&] {
    require(cover && out, "null argument");
    *out = cover->value.eps;
  });
}

fsum_status fsum_cover_points(const fsum_cover* cover, double* out, size_t capacity) {
  return guarded([&] {
    require(cover && out, "null argument");
    const auto& pts = cover->value.inner_points;
    const auto d = static_cast<std::size_t>(cover->value.dim);
    require(capacity >= pts.size() * d, "buffer too small");
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t a = 0; a < d; ++a) out[i * d + a] = pts[i][static_cast<int>(a)];
  });
}

fsum_status fsum_thickness_estimate(const fsum_cover* cover, uint64_t seed, unsigned workers, double* out) {
  return guarded([&] {
    require(cover && out, "null argument");
    fracsum::EstimateOptions o;
    o.seed = seed;
    o.workers = workers;
    *out = fracsum::estimate_thickness(cover->value, o).value;
  });
}

fsum_status fsum_thickness_certified(const fsum_ifs* ifs, const fsum_cover* cover, double* out) {
  return guarded([&] {
    require(ifs && cover && out, "null argument");
    *out = fracsum::certified_self_similar_bound(ifs->value, cover->value).value;
  });
}

fsum_status fsum_sum_threshold(int64_t num, int64_t den, uint64_t* out) {
  return guarded([&] {
    require(out, "null argument");
    *out = fracsum::sum_threshold(fraction(num, den));
  });
}

fsum_status fsum_packing_count(int64_t num, int64_t den, int dim, uint64_t* out) {
  return guarded([&] {
    require(out, "null argument");
    require_dim(dim);
    *out = fracsum::packing_count(fraction(num, den), dim);
  });
}

fsum_status fsum_raster_from_cover(const fsum_cover* cover, double delta, fsum_raster** out) {
  return guarded([&] {
    require(cover && out, "null argument");
    require(delta > 0.0, "cell size must be positive");
    const auto& pts = cover->value.inner_points;
    *out = new fsum_raster{
        fracsum::rasterize_inner(pts, fracsum::grid_for_box(fracsum::bounding_box(pts), delta))};
  });
}

fsum_status fsum_raster_create(int dim, const double* origin, double cell, const int64_t* dims, fsum_raster_mode mode,
                               fsum_raster** out) {
  return guarded([&] {
    require(origin && dims && out, "null argument");
    require_dim(dim);
    require(cell > 0.0, "cell size must be positive");
    fracsum::GridSpec g;
    g.dim = dim;
    g.origin = point_at(origin, dim);
    g.cell = cell;
    for (int a = 0; a < dim; ++a) {
      require(dims[a] >= 1, "grid extents must be positive");
      g.dims[static_cast<std::size_t>(a)] = dims[a];
    }
    *out = new fsum_raster{
        fracsum::Raster(g, mode == FSUM_OUTER ? fracsum::RasterMode::Outer : fracsum::RasterMode::Inner)};
  });
}

void fsum_raster_destroy(fsum_raster* r) { delete r; }

namespace {
fracsum::Index3 index_at(const fsum_raster* r, const int64_t* index) {
  fracsum::Index3 i{0, 0, 0};
  for (int a = 0; a < r->value.dim(); ++a) i[static_cast<std::size_t>(a)] = index[a];
  require(r->value.grid().in_range(i), "cell index outside the grid");
  return i;
}
}  // namespace

fsum_status fsum_raster_set(fsum_raster* r, const int64_t* index) {
  return guarded([&] {
    require(r && index, "null argument");
    r->value.set(index_at(r, index));
  });
}

fsum_status fsum_raster_test(const fsum_raster* r, const int64_t* index, int* out) {
  return guarded([&] {
    require(r && index && out, "null argument");
    *out = r->value.test(index_at(r, index)) ? 1 : 0;
  });
}

fsum_status fsum_raster_count(const fsum_raster* r, uint64_t* out) {
  return guarded([&] {
    require(r && out, "null argument");
    *out = r->value.count();
  });
}

fsum_status fsum_raster_shape(const fsum_raster* r, int64_t* dims, double* origin) {
  return guarded([&] {
    require(r && dims && origin, "null argument");
    for (int a = 0; a < 3; ++a) {
      dims[a] = r->value.dims()[static_cast<std::size_t>(a)];
      origin[a] = a < r->value.dim() ? r->value.origin()[a] : 0.0;
    }
  });
}

fsum_status fsum_raster_sum(const fsum_raster* a, const fsum_raster* b, unsigned workers, fsum_raster** out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = new fsum_raster{fracsum::minkowski_sum(a->value, b->value, {workers})};
  });
}

fsum_status fsum_raster_n_fold(const fsum_raster* a, uint64_t n, unsigned workers, fsum_raster** out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = new fsum_raster{fracsum::n_fold_sum(a->value, n, {workers})};
  });
}

fsum_status fsum_raster_hausdorff(const fsum_raster* a, const fsum_raster* b, unsigned workers, double* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = fracsum::hausdorff_distance(a->value, b->value, {workers});
  });
}

fsum_status fsum_raster_write_pbm(const fsum_raster* r, const char* path) {
  return guarded([&] {
    require(r && path, "null argument");
    fracsum::write_pbm(r->value, path);
  });
}

fsum_status fsum_verify_sum_identity(const fsum_ifs* ifs, uint64_t n, int depth, double delta, int force,
                                     unsigned workers, fsum_identity_result* out) {
  return guarded([&] {
    require(ifs && out, "null argument");
    fracsum::Theorem71Options o;
    o.force = force != 0;
    o.workers = workers;
    const auto rep = fracsum::verify_theorem71(ifs->value, n, depth, delta, o);
    out->d_H = rep.d_H_measured;
    out->tolerance = rep.tolerance;
    out->pass = rep.pass;
    out->containment = rep.containment;
    out->informational = rep.informational;
  });
}

fsum_status fsum_certify_rotation_example(uint64_t n, int depth, unsigned workers, double margins[4], int* valid) {
  return guarded([&] {
    require(margins && valid, "null argument");
    const auto cert = fracsum::build_certificate_ex73(n, depth, workers);
    for (std::size_t i = 0; i < 4; ++i) margins[i] = cert.steps[i].margin;
    *valid = cert.valid() ? 1 : 0;
  });
}

fsum_status fsum_run(const fsum_run_options* opts, int* exit_code) {
  int code = 2;
  const fsum_status s = guarded([&] {
    require(opts && opts->config_path, "null argument");
    fracsum::RunRequest req;
    req.config = opts->config_path;
    if (opts->out_dir) req.out_dir = opts->out_dir;
    req.workers = opts->workers;
    if (opts->has_seed) req.seed = opts->seed;
    req.force = opts->force != 0;
    last_report.clear();
    const fracsum::RunResult res = fracsum::run_experiment(req);
    last_report = res.report;
    code = res.exit_code;
  });
  if (exit_code) *exit_code = s == FSUM_OK ? code : (s == FSUM_CONFIG_INVALID || s == FSUM_IO_ERROR) ? 2 : 1;
  return s;
}

const char* fsum_last_report(void) { return last_report.c_str(); }

}  // extern "C"
