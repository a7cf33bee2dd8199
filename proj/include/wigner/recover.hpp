#pragma once

// Reconstruction of the phase function eps and the norm-preserving real
// linear map G = eps * f from samples of a map solving the Wigner-type
// equations.
//
// Pipeline: build_sign_graph -> propagate_signs -> align_components ->
// fit_linear -> certify. Relative signs eps_i eps_j come from
// sign(<<x_i,x_j>> <<f_i,f_j>>) on well-conditioned pairs, are spread over
// each connected component from its lowest-index node, and the resulting
// eps * f is fitted by unconstrained least squares. Orthogonality of G is
// certified afterwards, never imposed.

#include "wigner/maps.hpp"
#include "wigner/space.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace wigner {

struct SignEdge {
  std::size_t i;  // sample indices, i < j
  std::size_t j;
  int sign;       // eps_i * eps_j
  double ratio_error;  // | |<<x_i,x_j>>| - |<<f_i,f_j>>| |
};

enum class EdgeRule {
  // <<x_i,x_j>> >= delta |x_i||x_j|: only pairs within the same open
  // half-space, the neighbourhood on which the continuity argument runs.
  // On a line this separates the two rays.
  kLocal,
  // |<<x_i,x_j>>| >= delta |x_i||x_j|: every pair whose sign ratio is defined.
  kGlobal,
};

struct GraphOptions {
  double delta = 1e-6;
  double edge_tol = 1e-9;  // MagnitudeMismatch above this ratio_error
  EdgeRule rule = EdgeRule::kLocal;
};

struct SignGraph {
  std::size_t sample_count = 0;
  std::vector<std::size_t> nodes;  // nonzero samples, ascending
  std::vector<SignEdge> edges;     // sorted by (i, j)
  std::vector<int> component;      // per sample; -1 for dropped zero vectors
  std::size_t component_count = 0;
};

struct SignAssignment {
  std::vector<int> signs;  // per sample; dropped zero vectors get +1
  std::vector<std::size_t> anchors;  // lowest node of each component, by component label
  std::vector<int> component;  // copy of the graph labels
};

struct BruteForceResult {
  std::size_t min_violations = 0;
  std::vector<std::vector<int>> optimal;  // per-sample sign vectors, in enumeration order
};

struct RecoveryResult {
  SignAssignment assignment;         // canonical: every anchor has sign +1
  std::vector<int> component_flips;  // per component, applied before fitting
  std::vector<int> fit_signs;        // assignment.signs times the component flip
  std::size_t components = 0;
  Eigen::MatrixXd g;
  double gram_residual = 0.0;  // ||G^T G - I||_max
  double fit_residual = 0.0;   // max_i ||s_i f_i - G x_i||
  double tol = 0.0;
  bool certified = false;
};

struct RecoveryOptions {
  double tol = 1e-9;
  double delta = 1e-6;
  EdgeRule rule = EdgeRule::kLocal;
};

SignGraph build_sign_graph(std::span<const Vector> samples, std::span<const Vector> images,
                           const GraphOptions& options = {});

// Breadth-first from each component's lowest node (sign +1). Throws
// InconsistentCycle for the first edge, in (i, j) order, the result violates.
SignAssignment propagate_signs(const SignGraph& graph);

// Exhaustive search over all 2^nodes assignments; returns those with the
// fewest edge violations. Test oracle for propagate_signs.
BruteForceResult brute_force_signs(const SignGraph& graph, std::size_t max_nodes = 16);

// Least-squares G minimizing sum_i ||signs[i] f_i - G x_i||^2 over realified
// coordinates. Throws RankDeficient unless the samples span the domain.
Eigen::MatrixXd fit_linear(std::span<const Vector> samples, std::span<const Vector> images,
                           std::span<const int> signs);

double fit_residual(std::span<const Vector> samples, std::span<const Vector> images,
                    std::span<const int> signs, const Eigen::MatrixXd& g);

// Per-component sign flips minimizing the fit residual (component 0 fixed).
// Exhaustive up to 12 components, coordinate descent beyond.
std::vector<int> align_components(std::span<const Vector> samples, std::span<const Vector> images,
                                  const SignAssignment& assignment);

RecoveryResult certify(std::span<const Vector> samples, std::span<const Vector> images,
                       const SignAssignment& assignment, const Eigen::MatrixXd& g, double tol);

// Polar factor U V^T of G. Offered for callers who want a strict isometry;
// recover() never applies it.
Eigen::MatrixXd nearest_isometry(const Eigen::MatrixXd& g);

// Full pipeline on a Tabulated map. Checks T2_IV first (MagnitudeMismatch on
// failure); an inconsistent sign cycle surfaces as NotPhaseEquivalent.
RecoveryResult recover(const MapSpec& table, const RecoveryOptions& options = {});

}  // namespace wigner
