#include "wigner/recover.hpp"

#include "wigner/checker.hpp"
#include "wigner/error.hpp"
#include "wigner/union_find.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

namespace wigner {

namespace {

constexpr double kRankTolerance = 1e-8;
constexpr std::size_t kExhaustiveComponents = 12;

void require_same_length(std::span<const Vector> samples, std::span<const Vector> images) {
  if (samples.size() != images.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "samples and images differ in length");
  }
}

std::vector<int> apply_flips(const SignAssignment& a, std::span<const int> flips) {
  std::vector<int> out = a.signs;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (a.component[i] >= 0) out[i] *= flips[static_cast<std::size_t>(a.component[i])];
  }
  return out;
}

double flipped_fit_residual(std::span<const Vector> samples, std::span<const Vector> images,
                            const SignAssignment& a, std::span<const int> flips) {
  const std::vector<int> signs = apply_flips(a, flips);
  return fit_residual(samples, images, signs, fit_linear(samples, images, signs));
}

}  // namespace

SignGraph build_sign_graph(std::span<const Vector> samples, std::span<const Vector> images,
                           const GraphOptions& options) {
  require_same_length(samples, images);
  if (!(options.delta > 0.0)) throw Error(ErrorCode::kInvalidArgument, "delta must be > 0");

  SignGraph graph;
  graph.sample_count = samples.size();
  graph.component.assign(samples.size(), -1);

  std::vector<double> x_norm(samples.size());
  std::vector<double> f_norm(samples.size());
  const double zero_tol = Tolerance{}.atol;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    x_norm[i] = norm(samples[i]);
    f_norm[i] = norm(images[i]);
    if (x_norm[i] > zero_tol) graph.nodes.push_back(i);
  }

  UnionFind sets(samples.size());
  for (std::size_t a = 0; a < graph.nodes.size(); ++a) {
    for (std::size_t b = a + 1; b < graph.nodes.size(); ++b) {
      const std::size_t i = graph.nodes[a];
      const std::size_t j = graph.nodes[b];
      const double ip_x = real_inner(samples[i], samples[j]);
      const double ip_f = real_inner(images[i], images[j]);
      const double x_floor = options.delta * x_norm[i] * x_norm[j];
      const bool x_ok = options.rule == EdgeRule::kLocal ? ip_x >= x_floor
                                                         : std::abs(ip_x) >= x_floor;
      if (!x_ok || std::abs(ip_f) < options.delta * f_norm[i] * f_norm[j]) continue;

      const double ratio_error = std::abs(std::abs(ip_x) - std::abs(ip_f));
      if (ratio_error > options.edge_tol) {
        throw Error(ErrorCode::kMagnitudeMismatch,
                    "edge (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") has | |<<x,y>>| - |<<fx,fy>>| | = " + std::to_string(ratio_error));
      }
      graph.edges.push_back({i, j, ip_x * ip_f > 0.0 ? 1 : -1, ratio_error});
      sets.unite(i, j);
    }
  }

  std::map<std::size_t, int> label_of_root;
  for (std::size_t i : graph.nodes) {
    const auto [it, inserted] =
        label_of_root.try_emplace(sets.find(i), static_cast<int>(label_of_root.size()));
    graph.component[i] = it->second;
  }
  graph.component_count = label_of_root.size();
  return graph;
}

SignAssignment propagate_signs(const SignGraph& graph) {
  std::vector<std::vector<std::pair<std::size_t, int>>> adjacent(graph.sample_count);
  for (const auto& e : graph.edges) {
    adjacent[e.i].emplace_back(e.j, e.sign);
    adjacent[e.j].emplace_back(e.i, e.sign);
  }

  SignAssignment out;
  out.signs.assign(graph.sample_count, 1);
  out.component = graph.component;
  std::vector<bool> seen(graph.sample_count, false);

  for (std::size_t anchor : graph.nodes) {
    if (seen[anchor]) continue;
    out.anchors.push_back(anchor);
    seen[anchor] = true;
    std::deque<std::size_t> queue{anchor};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (const auto& [v, s] : adjacent[u]) {
        if (seen[v]) continue;
        seen[v] = true;
        out.signs[v] = out.signs[u] * s;
        queue.push_back(v);
      }
    }
  }

  for (const auto& e : graph.edges) {
    if (out.signs[e.i] * out.signs[e.j] != e.sign) throw InconsistentCycle(e.i, e.j);
  }
  return out;
}

BruteForceResult brute_force_signs(const SignGraph& graph, std::size_t max_nodes) {
  const std::size_t k = graph.nodes.size();
  if (k > max_nodes || k >= 63) {
    throw Error(ErrorCode::kTooManyNodes,
                std::to_string(k) + " nodes exceed the limit of " + std::to_string(max_nodes));
  }
  std::vector<std::size_t> position(graph.sample_count, 0);
  for (std::size_t t = 0; t < k; ++t) position[graph.nodes[t]] = t;

  BruteForceResult out;
  out.min_violations = std::numeric_limits<std::size_t>::max();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    auto sign_at = [&](std::size_t sample) {
      return ((mask >> position[sample]) & 1U) != 0 ? -1 : 1;
    };
    std::size_t violations = 0;
    for (const auto& e : graph.edges) {
      if (sign_at(e.i) * sign_at(e.j) != e.sign) ++violations;
    }
    if (violations > out.min_violations) continue;
    if (violations < out.min_violations) {
      out.min_violations = violations;
      out.optimal.clear();
    }
    std::vector<int> signs(graph.sample_count, 1);
    for (std::size_t i : graph.nodes) signs[i] = sign_at(i);
    out.optimal.push_back(std::move(signs));
  }
  return out;
}

Eigen::MatrixXd fit_linear(std::span<const Vector> samples, std::span<const Vector> images,
                           std::span<const int> signs) {
  require_same_length(samples, images);
  if (signs.size() != samples.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "one sign per sample is required");
  }
  if (samples.empty()) throw Error(ErrorCode::kRankDeficient, "no samples");
  const auto d_in = static_cast<Eigen::Index>(samples.front().real_dim());
  const auto d_out = static_cast<Eigen::Index>(images.front().real_dim());
  const auto n = static_cast<Eigen::Index>(samples.size());

  Eigen::MatrixXd x(n, d_in);
  Eigen::MatrixXd y(n, d_out);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& xi = samples[static_cast<std::size_t>(i)];
    const auto& fi = images[static_cast<std::size_t>(i)];
    if (xi.real_dim() != static_cast<std::size_t>(d_in) ||
        fi.real_dim() != static_cast<std::size_t>(d_out)) {
      throw Error(ErrorCode::kDimensionMismatch, "samples of mixed dimension");
    }
    x.row(i) = xi.coords().transpose();
    y.row(i) = static_cast<double>(signs[static_cast<std::size_t>(i)]) * fi.coords().transpose();
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(kRankTolerance);
  if (qr.rank() < d_in) {
    throw Error(ErrorCode::kRankDeficient,
                "samples span " + std::to_string(qr.rank()) + " of " + std::to_string(d_in) +
                    " real dimensions; enlarge the sample plan");
  }
  return qr.solve(y).transpose();
}

double fit_residual(std::span<const Vector> samples, std::span<const Vector> images,
                    std::span<const int> signs, const Eigen::MatrixXd& g) {
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Eigen::VectorXd r = signs[i] * images[i].coords() - g * samples[i].coords();
    worst = std::max(worst, r.norm());
  }
  return worst;
}

std::vector<int> align_components(std::span<const Vector> samples, std::span<const Vector> images,
                                  const SignAssignment& assignment) {
  const std::size_t c = assignment.anchors.size();
  std::vector<int> flips(c, 1);
  if (c <= 1) return flips;

  if (c <= kExhaustiveComponents) {
    std::vector<int> best = flips;
    double best_residual = std::numeric_limits<double>::infinity();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (c - 1)); ++mask) {
      for (std::size_t k = 1; k < c; ++k) flips[k] = ((mask >> (k - 1)) & 1U) != 0 ? -1 : 1;
      const double r = flipped_fit_residual(samples, images, assignment, flips);
      if (r < best_residual) {
        best_residual = r;
        best = flips;
      }
    }
    return best;
  }

  double current = flipped_fit_residual(samples, images, assignment, flips);
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t k = 1; k < c; ++k) {
      flips[k] = -flips[k];
      const double r = flipped_fit_residual(samples, images, assignment, flips);
      if (r < current) {
        current = r;
        improved = true;
      } else {
        flips[k] = -flips[k];
      }
    }
  }
  return flips;
}

RecoveryResult certify(std::span<const Vector> samples, std::span<const Vector> images,
                       const SignAssignment& assignment, const Eigen::MatrixXd& g, double tol) {
  require_same_length(samples, images);
  RecoveryResult out;
  out.assignment = assignment;
  out.components = assignment.anchors.size();
  out.component_flips.assign(out.components, 1);
  out.fit_signs = assignment.signs;
  out.g = g;
  out.tol = tol;
  out.gram_residual =
      (g.transpose() * g - Eigen::MatrixXd::Identity(g.cols(), g.cols())).cwiseAbs().maxCoeff();
  out.fit_residual = fit_residual(samples, images, assignment.signs, g);
  out.certified = out.gram_residual <= tol && out.fit_residual <= tol;
  return out;
}

Eigen::MatrixXd nearest_isometry(const Eigen::MatrixXd& g) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

RecoveryResult recover(const MapSpec& table, const RecoveryOptions& options) {
  const auto* tab = std::get_if<Tabulated>(&table.variant());
  if (!tab) throw Error(ErrorCode::kInvalidArgument, "recover works on Tabulated maps");

  const ConditionReport wigner = check_condition(kT2IV, table, options.tol);
  if (!wigner.pass) {
    throw Error(ErrorCode::kMagnitudeMismatch,
                "T2_IV fails with residual " + std::to_string(wigner.max_residual) +
                    " at pair (" + std::to_string(wigner.argmax.first) + ", " +
                    std::to_string(wigner.argmax.second) + ")");
  }

  std::vector<Vector> samples;
  std::vector<Vector> images;
  for (const auto& [x, fx] : tab->pairs) {
    samples.push_back(x);
    images.push_back(fx);
  }

  const SignGraph graph =
      build_sign_graph(samples, images, {options.delta, options.tol, options.rule});
  SignAssignment canonical;
  try {
    canonical = propagate_signs(graph);
  } catch (const InconsistentCycle& e) {
    throw Error(ErrorCode::kNotPhaseEquivalent, e.what());
  }

  const std::vector<int> flips = align_components(samples, images, canonical);
  SignAssignment aligned = canonical;
  aligned.signs = apply_flips(canonical, flips);

  const Eigen::MatrixXd g = fit_linear(samples, images, aligned.signs);
  RecoveryResult out = certify(samples, images, aligned, g, options.tol);
  out.assignment = std::move(canonical);
  out.component_flips = flips;
  return out;
}

}  // namespace wigner
