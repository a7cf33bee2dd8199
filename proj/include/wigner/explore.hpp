#pragma once

// Desk-scale search harnesses for two open questions: does the two-norm set
// equation force phase equivalence to a linear isometry on l^p spaces (P1),
// and what solves the roots-of-unity version on complex spaces (P2)?
// Reports are empirical evidence at a fixed sample size, never proofs.

#include "wigner/maps.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace wigner {

enum class Problem { kP1, kP2 };

enum class CandidateKind {
  kSignedPermutationPhase,  // P1: signed coordinate permutation, Seeded eps
  kOrthogonalPhase,         // P1: random orthogonal Q, Seeded eps
  kOrthogonalLinear,        // P1: random orthogonal Q
  kRotation45,              // P1: 45 degree rotation of the first two coordinates
  kUnitaryRootPhase,        // P2: random unitary, eps in the n-th roots of unity
  kUnitaryLinear,           // P2: random unitary
  kConjugation,             // P2: coordinate-wise conjugation
  kRatz,                    // P2: (x1, x2) -> (x1, conj x2), dim 2 only
  kScaled,                  // both: 1.1 * identity, a violator
};

std::string to_string(CandidateKind kind);
CandidateKind parse_candidate_kind(const std::string& name);

struct ExploreConfig {
  Problem problem = Problem::kP1;
  std::size_t dim = 2;
  double p = 2.0;  // P1
  int n = 2;       // P2
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::vector<CandidateKind> family;  // empty: every kind valid for the problem
  double tol = 1e-9;
  std::size_t pairs = 200;  // random pairs per trial, on top of the basis pairs
  // Defaults to real for P1 and complex for P2; P1 must be real, P2 complex.
  std::optional<Field> field;

  // Throws InvalidArgument / RealFieldUnsupported on an inconsistent config.
  void validate() const;
};

enum class Classification { kSolution, kNearMiss, kNonSolution };
enum class Verdict { kSolutionsFound, kNearMiss, kNone };

std::string to_string(Classification c);
std::string to_string(Verdict v);

struct CandidateResult {
  std::string name;  // kind plus trial, e.g. "orthogonal_phase#2"
  CandidateKind kind;
  std::size_t trial = 0;
  double max_residual = 0.0;
  Classification classification = Classification::kNonSolution;
};

struct ExploreReport {
  ExploreConfig config;
  std::vector<CandidateResult> candidates;
  std::size_t best = 0;  // index of the smallest residual (first on ties)
  std::vector<double> sorted_residuals;
  // Counts per decade: bin k holds residuals r with floor(log10 r) == k - 20,
  // clamped to [-20, 5]; exact zeros land in bin 0.
  std::vector<std::size_t> histogram;
  Verdict verdict = Verdict::kNone;
  std::string label;  // "empirical at N samples, dim d"
};

// Seed of trial t: split_seed(config.seed, t).
std::uint64_t trial_seed(const ExploreConfig& config, std::size_t trial);

// The candidate map for one trial, on the spaces the problem uses.
MapSpec make_candidate(const ExploreConfig& config, CandidateKind kind, std::size_t trial);

// Evaluation pairs of one trial: all pairs of realified basis vectors
// (including (e_k, e_k)) followed by config.pairs random gaussian pairs.
std::vector<std::pair<Vector, Vector>> explore_pairs(const ExploreConfig& config,
                                                     std::size_t trial);

Classification classify(double residual, double tol);

ExploreReport explore_p1(const ExploreConfig& config);
ExploreReport explore_p2(const ExploreConfig& config);
ExploreReport explore(const ExploreConfig& config);

}  // namespace wigner
