#pragma once

// Hilbert bundle over a finite time grid with fibers C^d.

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace explab {

using cplx = std::complex<double>;

class TimeGrid {
 public:
  TimeGrid(std::vector<double> nodes, std::vector<double> weights) : nodes_(std::move(nodes)), weights_(std::move(weights)) {
    if (nodes_.size() < 2) throw std::invalid_argument("time grid needs at least two nodes");
    if (weights_.size() != nodes_.size()) throw std::invalid_argument("one weight per node required");
    for (std::size_t k = 1; k < nodes_.size(); ++k)
      if (!(nodes_[k] > nodes_[k - 1])) throw std::invalid_argument("time grid nodes must be strictly increasing");
    for (double w : weights_)
      if (!(w > 0)) throw std::invalid_argument("time grid weights must be positive");
  }

  /// n equally spaced nodes on [a, b] with equal weights summing to b - a.
  static TimeGrid uniform(double a, double b, std::size_t n) {
    std::vector<double> nodes(n), weights(n, (b - a) / static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) nodes[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
    return {nodes, weights};
  }

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
    return a.nodes_ == b.nodes_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

class Section {
 public:
  Section(TimeGrid grid, std::vector<Eigen::VectorXcd> fibers) : grid_(std::move(grid)), fibers_(std::move(fibers)) {
    if (fibers_.size() != grid_.size()) throw std::invalid_argument("one fiber vector per node required");
    if (fibers_.front().size() < 1) throw std::invalid_argument("fiber dimension must be >= 1");
    for (const auto& f : fibers_)
      if (f.size() != fibers_.front().size()) throw std::invalid_argument("fibers must share one dimension");
  }

  const TimeGrid& grid() const noexcept { return grid_; }
  std::size_t fiber_dim() const noexcept { return static_cast<std::size_t>(fibers_.front().size()); }
  const Eigen::VectorXcd& operator[](std::size_t k) const { return fibers_.at(k); }
  const std::vector<Eigen::VectorXcd>& fibers() const noexcept { return fibers_; }

  /// Per-node phase factor exp(i phase[k]).
  Section with_phases(const std::vector<double>& phase) const {
    if (phase.size() != fibers_.size()) throw std::invalid_argument("one phase per node required");
    auto f = fibers_;
    for (std::size_t k = 0; k < f.size(); ++k) f[k] *= std::polar(1.0, phase[k]);
    return {grid_, f};
  }

  friend Section operator*(cplx s, Section a) {
    for (auto& f : a.fibers_) f *= s;
    return a;
  }

 private:
  TimeGrid grid_;
  std::vector<Eigen::VectorXcd> fibers_;
};

class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline void require_compatible(const Section& a, const Section& b) {
  if (!(a.grid() == b.grid())) throw GridMismatch("sections live on different grids");
  if (a.fiber_dim() != b.fiber_dim()) throw GridMismatch("sections have different fiber dimensions");
}

/// (s1_k, s2_k), conjugate-linear in s1.
inline cplx fiber_inner(const Section& s1, const Section& s2, std::size_t node) {
  require_compatible(s1, s2);
  return s1[node].dot(s2[node]);
}

inline double direct_integral_norm(const Section& s) {
  double acc = 0.0;
  for (std::size_t k = 0; k < s.grid().size(); ++k) acc += s.grid().weights()[k] * s[k].squaredNorm();
  return std::sqrt(acc);
}

/// Node k is carried to base_map[k] with fiber map unitaries[k].
class BundleMap {
 public:
  BundleMap(std::vector<std::size_t> base_map, std::vector<Eigen::MatrixXcd> unitaries)
      : base_(std::move(base_map)), u_(std::move(unitaries)) {
    if (base_.size() != u_.size()) throw std::invalid_argument("one unitary per node required");
    std::vector<bool> hit(base_.size(), false);
    for (auto k : base_) {
      if (k >= base_.size() || hit[k]) throw std::invalid_argument("base map must be a permutation of the nodes");
      hit[k] = true;
    }
    for (const auto& U : u_) {
      if (U.rows() != U.cols() || U.rows() != u_.front().rows())
        throw std::invalid_argument("fiber maps must be square and of one size");
      const auto I = Eigen::MatrixXcd::Identity(U.rows(), U.cols());
      if ((U.adjoint() * U - I).norm() > 1e-12) throw std::invalid_argument("fiber map is not unitary");
    }
  }

  static BundleMap identity(std::size_t nodes, std::size_t dim) {
    std::vector<std::size_t> base(nodes);
    for (std::size_t k = 0; k < nodes; ++k) base[k] = k;
    return {base, std::vector<Eigen::MatrixXcd>(nodes, Eigen::MatrixXcd::Identity(dim, dim))};
  }

  /// U_k = exp(i xi_k) I
  static BundleMap phase(const std::vector<double>& xi, std::size_t dim) {
    std::vector<std::size_t> base(xi.size());
    std::vector<Eigen::MatrixXcd> u;
    for (std::size_t k = 0; k < xi.size(); ++k) {
      base[k] = k;
      u.push_back(std::polar(1.0, xi[k]) * Eigen::MatrixXcd::Identity(dim, dim));
    }
    return {base, u};
  }

  const std::vector<std::size_t>& base_map() const noexcept { return base_; }
  const std::vector<Eigen::MatrixXcd>& unitaries() const noexcept { return u_; }

 private:
  std::vector<std::size_t> base_;
  std::vector<Eigen::MatrixXcd> u_;
};

/// (T s)_{pi(k)} = U_k s_k
inline Section apply_bundle_map(const BundleMap& T, const Section& s) {
  if (T.base_map().size() != s.grid().size()) throw std::invalid_argument("bundle map and section node counts differ");
  if (static_cast<std::size_t>(T.unitaries().front().rows()) != s.fiber_dim())
    throw std::invalid_argument("bundle map and section fiber dimensions differ");
  std::vector<Eigen::VectorXcd> out(s.grid().size());
  for (std::size_t k = 0; k < s.grid().size(); ++k) out[T.base_map()[k]] = T.unitaries()[k] * s[k];
  return {s.grid(), out};
}

class DegenerateSection : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RayResult {
  bool equivalent = false;
  std::vector<double> phases;  ///< xi_k with s2_k = exp(i xi_k) s1_k; empty when not equivalent
  std::string reason;
};

/// Decides s2_k = exp(i xi_k) s1_k at every node, within tol relative to the fiber norm.
inline RayResult ray_equivalent(const Section& s1, const Section& s2, double tol = 1e-9) {
  require_compatible(s1, s2);
  RayResult out;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t k = 0; k < s1.grid().size(); ++k) {
    const auto& a = s1[k];
    const auto& b = s2[k];
    Eigen::Index ref = 0;
    const double amax = a.cwiseAbs().maxCoeff(&ref);
    if (amax == 0.0) throw DegenerateSection("first section vanishes at node " + std::to_string(k));
    double phi = std::arg(b(ref) / a(ref));
    const double scale = std::max(a.norm(), b.norm());
    if ((b - std::polar(1.0, phi) * a).norm() > tol * scale) {
      out.reason = "fibers not proportional by a unimodular factor at node " + std::to_string(k);
      out.phases.clear();
      return out;
    }
    if (k == 0) {
      phi = std::fmod(phi, two_pi);
      if (phi < 0) phi += two_pi;
    } else {
      // continuous unwrap against the previous node
      phi += two_pi * std::round((out.phases.back() - phi) / two_pi);
    }
    out.phases.push_back(phi);
  }
  out.equivalent = true;
  return out;
}

inline nlohmann::json to_json(const Section& s) {
  nlohmann::json fibers = nlohmann::json::array();
  for (const auto& f : s.fibers()) {
    auto arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < f.size(); ++i) arr.push_back({f(i).real(), f(i).imag()});
    fibers.push_back(arr);
  }
  return {{"nodes", s.grid().nodes()}, {"weights", s.grid().weights()}, {"fibers", fibers}};
}

inline Section section_from_json(const nlohmann::json& j) {
  TimeGrid grid(j.at("nodes").get<std::vector<double>>(), j.at("weights").get<std::vector<double>>());
  std::vector<Eigen::VectorXcd> fibers;
  for (const auto& f : j.at("fibers")) {
    Eigen::VectorXcd v(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) v(i) = cplx(f[i].at(0).get<double>(), f[i].at(1).get<double>());
    fibers.push_back(v);
  }
  return {grid, fibers};
}

}  // namespace explab
