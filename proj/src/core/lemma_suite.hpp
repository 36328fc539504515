#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace fracsum {

inline constexpr std::array<const char*, 4> kLemmaNames{
    "sum_absorption", "distance_bound", "perturbation", "ball_sum_cover"};

struct LemmaTally {
  std::string name;
  int dim = 0;
  int trials = 0;
  int failures = 0;
  int errors = 0;  // a checker threw on a generated instance
};

/// Runs `trials` random instances of one checker in dimension `dim`. Each
/// instance satisfies the checker's preconditions by construction; trial t
/// uses the seed derived from (seed, lemma, dim, t).
LemmaTally run_lemma_trials(int lemma, int dim, int trials, std::uint64_t seed, int samples = 32);

}  // namespace fracsum
