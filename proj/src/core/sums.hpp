#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "geom.hpp"
#include "ifs.hpp"
#include "raster.hpp"

namespace fracsum {

/// Smallest integer n >= 1 + l / rho_min; exact for rational ratios.
/// NotSimilitude for systems without exact ratios.
std::uint64_t theorem71_threshold(const Ifs& ifs);

/// n word families after `step` greedy expansions: each step replaces the
/// word of largest ratio (ties: smallest word, then smallest family) by its
/// l one-letter extensions.
struct WordFamilyTuple {
  std::vector<std::vector<Word>> families;
  std::size_t step = 0;
  double min_ratio = 1.0;
  double max_ratio = 1.0;

  std::size_t total_words() const noexcept;
};

/// Throws InvariantViolated if min ratio < rho_min * max ratio at any step.
WordFamilyTuple expand_word_families(const Ifs& ifs, std::size_t n, std::size_t steps);

/// Outcome of a raster check of a set identity. `details` lists every derived
/// number in a fixed order for reporting.
struct SumIdentityReport {
  std::uint64_t n = 0;
  int depth = 0;
  double d_H_measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool informational = false;
  bool containment = true;
  std::vector<std::pair<std::string, double>> details;
};

struct Theorem71Options {
  bool force = false;
  unsigned workers = 0;
  std::uint64_t max_bytes = RasterOptions{}.max_bytes;
  std::uint64_t budget = CoverOptions{}.budget;
};

/// Rasterizes the depth-k inner points at cell delta, sums n copies and
/// compares with n conv(F): PASS iff d_H <= n eps + n delta sqrt(d) + delta
/// sqrt(d); containment in the OUTER raster of n conv(F) is reported apart.
/// ThresholdNotMet below the threshold unless forced (then INFORMATIONAL).
SumIdentityReport verify_theorem71(const Ifs& ifs, std::uint64_t n, int depth, double delta,
                                   const Theorem71Options& opts = {});

/// tol_geo minus the worst facet violation of an image vertex phi_i(v).
double invariant_region_margin(const Ifs& ifs, const Polytope& p);

/// Every image vertex phi_i(v) lies in p.
bool verify_invariant_region(const Ifs& ifs, const Polytope& p);

/// The rotation example: phi_1, phi_2 homotheties of ratio 1/4 fixing (1,0)
/// and (0,1); phi_3(x) = R_{-90} (x - (1,0)) / 4.
Ifs example73_ifs();
Polytope example73_triangle();

struct CertificateStep {
  std::string name;
  double margin = 0.0;
  std::string detail;
};

/// Proof that (1/2, 0) is not in the n-fold sum of the example attractor.
struct NonMembershipCertificate {
  Point point;
  std::uint64_t n = 0;
  int depth = 0;
  double eta = 0.0;        // strip half-width eps(k)
  double eta_prime = 0.0;  // slack of the x-axis slice
  std::size_t slice_balls = 0;
  std::vector<CertificateStep> steps;

  bool valid() const noexcept;
};

/// All four steps with their margins, valid or not.
NonMembershipCertificate build_certificate_ex73(std::uint64_t n, int depth, unsigned workers = 0);

/// As above; throws CertificateFailed naming the first step with margin <= 0.
NonMembershipCertificate certify_nonmembership_ex73(std::uint64_t n, int depth, unsigned workers = 0);

struct Theorem12Options {
  std::int64_t max_cells_per_axis = 4096;
  unsigned workers = 0;
  std::uint64_t max_bytes = RasterOptions{}.max_bytes;
};

/// One refinement step of the ball-family hierarchy for sets of thickness
/// >= c: checks H_2 contains H_1 on a raster. `sets` holds n covers, or a
/// single cover used n times. WitnessFailed propagates from the witnesses.
SumIdentityReport theorem12_smallcase(const std::vector<CylinderCover>& sets, double c, std::uint64_t n,
                                      const Theorem12Options& opts = {});

}  // namespace fracsum
