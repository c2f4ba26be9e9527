#pragma once

// One-dimensional free Schrodinger packets, their transformation into an
// accelerated frame by the Milne phase, and finite-difference residuals of
//   i d_t psi + (1/2m) d_xx psi - m_grav phi psi = 0      (hbar = 1).

#include "explab/group.hpp"
#include "explab/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace explab {

using cplx = std::complex<double>;
using WaveFunction = std::function<cplx(double x, double t)>;

/// Uniform space-time grid x_j = x0 + j h, t_k = t0 + k dt with values(k, j) = psi(x_j, t_k).
struct WaveField {
  double x0 = 0.0, h = 0.0;
  double t0 = 0.0, dt = 0.0;
  double mass = 1.0;
  Eigen::MatrixXcd values;

  std::size_t nx() const { return static_cast<std::size_t>(values.cols()); }
  std::size_t nt() const { return static_cast<std::size_t>(values.rows()); }
  double x(std::size_t j) const { return x0 + static_cast<double>(j) * h; }
  double t(std::size_t k) const { return t0 + static_cast<double>(k) * dt; }
};

struct GridSpec {
  double x_min = -12.0, x_max = 12.0;
  std::size_t nx = 121;
  double t0 = 0.0, dt = 0.05;
  std::size_t nt = 21;
};

inline WaveField sample(const WaveFunction& f, double mass, const GridSpec& g) {
  if (g.nx < 2 || g.nt < 1) throw std::invalid_argument("grid too small");
  if (!(mass > 0)) throw std::invalid_argument("mass must be positive");
  WaveField w;
  w.x0 = g.x_min;
  w.h = (g.x_max - g.x_min) / static_cast<double>(g.nx - 1);
  w.t0 = g.t0;
  w.dt = g.dt;
  w.mass = mass;
  w.values.resize(g.nt, g.nx);
  for (std::size_t k = 0; k < g.nt; ++k)
    for (std::size_t j = 0; j < g.nx; ++j) w.values(k, j) = f(w.x(j), w.t(k));
  return w;
}

/// Spreading Gaussian solving i d_t psi = -(1/2m) d_xx psi, normalized in L^2.
inline WaveFunction gaussian_packet(double m, double x0, double k0, double width) {
  if (!(width > 0)) throw std::invalid_argument("packet width must be positive");
  if (!(m > 0)) throw std::invalid_argument("mass must be positive");
  const double s2 = width * width;
  const double norm = std::pow(2.0 * std::numbers::pi * s2, -0.25);
  const double v = k0 / m;
  return [=](double x, double t) {
    const cplx st(1.0, t / (2.0 * m * s2));
    const double y = x - x0 - v * t;
    const cplx e = -y * y / (4.0 * s2 * st) + cplx(0.0, k0 * (x - x0 - 0.5 * v * t));
    return norm / std::sqrt(st) * std::exp(e);
  };
}

/// Milne element with R = 1, b = 0 and first displacement component A(t).
inline MilneElement milne_element_1d(const RationalPoly& A) {
  const int order = std::max(A.degree(), 1);
  Coefficients V = Coefficients::Zero(3, order + 1);
  double fact = 1.0;
  for (int n = 0; n <= A.degree(); ++n) {
    if (n > 0) fact *= n;
    V(0, n) = A.coeff(n).get_d() * fact;
  }
  return {Eigen::Matrix3d::Identity(), V, 0.0};
}

/// theta(x, t) = (m/2) int_0^t Adot^2 + m Adot(t) x, the closed form shared with theta_milne.
inline std::function<double(double, double)> milne_phase(double m, const RationalPoly& A) {
  const MilneElement r = milne_element_1d(A);
  return [m, r](double x, double t) { return theta_milne_source(m, r, Event{Eigen::Vector3d(x, 0.0, 0.0), t}); };
}

/// psi'(x', t) = exp(i theta(x, t)) psi(x, t) with x = x' - A(t).
inline WaveFunction transform_function(const WaveFunction& psi, const RationalPoly& A, double m) {
  const auto theta = milne_phase(m, A);
  const RealPoly a = to_real(A);
  return [=](double xp, double t) {
    const double x = xp - a(t);
    return std::polar(1.0, theta(x, t)) * psi(x, t);
  };
}

class SupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Six-point Lagrange interpolation of row k at position x.
inline cplx interpolate_row(const WaveField& w, std::size_t k, double x) {
  const double s = (x - w.x0) / w.h;
  const auto n = static_cast<long>(w.nx());
  long j0 = static_cast<long>(std::floor(s)) - 2;
  j0 = std::clamp(j0, 0L, n - 6);
  cplx acc = 0.0;
  for (long a = j0; a < j0 + 6; ++a) {
    double l = 1.0;
    for (long b = j0; b < j0 + 6; ++b)
      if (b != a) l *= (s - static_cast<double>(b)) / static_cast<double>(a - b);
    acc += l * w.values(static_cast<Eigen::Index>(k), a);
  }
  return acc;
}

}  // namespace detail

/// Grid version of transform_function. Preimages that leave the grid read as
/// zero when the field is negligible at the boundary, otherwise SupportError.
inline WaveField transform_wave(const WaveField& psi, const RationalPoly& A, double m, double negligible = 1e-10) {
  if (psi.nx() < 6) throw std::invalid_argument("transform_wave needs at least six spatial nodes");
  const auto theta = milne_phase(m, A);
  const RealPoly a = to_real(A);
  const double peak = psi.values.cwiseAbs().maxCoeff();
  const double x_last = psi.x(psi.nx() - 1);
  WaveField out = psi;
  for (std::size_t k = 0; k < psi.nt(); ++k) {
    const double t = psi.t(k);
    const double edge = std::max(std::abs(psi.values(k, 0)), std::abs(psi.values(k, psi.nx() - 1)));
    for (std::size_t j = 0; j < psi.nx(); ++j) {
      const double x = psi.x(j) - a(t);
      if (x < psi.x0 - 1e-12 * psi.h || x > x_last + 1e-12 * psi.h) {
        if (edge > negligible * peak) throw SupportError("transformed support leaves the spatial grid");
        out.values(k, j) = 0.0;
        continue;
      }
      out.values(k, j) = std::polar(1.0, theta(x, t)) * detail::interpolate_row(psi, k, x);
    }
  }
  return out;
}

using Potential = std::function<double(double x, double t)>;

/// phi(x', t) = -Addot(t) (x' - A(t)): the uniform field seen from the frame
/// x' = x + A(t), in the gauge matched by the Milne phase.
inline Potential frame_potential(const RationalPoly& A) {
  const RealPoly a = to_real(A);
  const RealPoly acc = differentiate(differentiate(a));
  return [a, acc](double x, double t) { return -acc(t) * (x - a(t)); };
}

struct ResidualReport {
  std::vector<double> per_slice;  ///< discrete L^2 norm over interior nodes, one per interior time slice
  double max = 0.0;
};

/// i d_t psi + (1/2 m_inertial) d_xx psi - m_grav phi psi with a five-point
/// stencil in x and a central difference in t.
inline ResidualReport schrodinger_residual(const WaveField& psi, double m_inertial, double m_grav, const Potential& phi) {
  if (psi.nx() < 5 || psi.nt() < 3) throw std::invalid_argument("grid too small for the residual stencil");
  const cplx I(0.0, 1.0);
  const double h2 = psi.h * psi.h;
  ResidualReport rep;
  for (std::size_t k = 1; k + 1 < psi.nt(); ++k) {
    const double t = psi.t(k);
    double acc = 0.0;
    for (std::size_t j = 2; j + 2 < psi.nx(); ++j) {
      const auto& v = psi.values;
      const auto K = static_cast<Eigen::Index>(k), J = static_cast<Eigen::Index>(j);
      const cplx dt = (v(K + 1, J) - v(K - 1, J)) / (2.0 * psi.dt);
      const cplx dxx =
          (-v(K, J - 2) + 16.0 * v(K, J - 1) - 30.0 * v(K, J) + 16.0 * v(K, J + 1) - v(K, J + 2)) / (12.0 * h2);
      const cplx r = I * dt + dxx / (2.0 * m_inertial) - m_grav * phi(psi.x(j), t) * v(K, J);
      acc += std::norm(r) * psi.h;
    }
    rep.per_slice.push_back(std::sqrt(acc));
    rep.max = std::max(rep.max, rep.per_slice.back());
  }
  return rep;
}

struct ConvergenceStudy {
  std::vector<double> h, dt, residual;
  std::vector<double> orders;  ///< log2 of successive residual ratios
  double final_order() const { return orders.empty() ? std::nan("") : orders.back(); }
};

/// Residual of a sampled wave function as h and dt are halved together.
inline ConvergenceStudy residual_convergence(const WaveFunction& f, double m_inertial, double m_grav,
                                             const Potential& phi, GridSpec base, int levels) {
  ConvergenceStudy s;
  for (int l = 0; l < levels; ++l) {
    const auto w = sample(f, m_inertial, base);
    s.h.push_back(w.h);
    s.dt.push_back(w.dt);
    s.residual.push_back(schrodinger_residual(w, m_inertial, m_grav, phi).max);
    if (l > 0) s.orders.push_back(std::log2(s.residual[l - 1] / s.residual[l]));
    base.nx = 2 * base.nx - 1;
    base.dt /= 2.0;
    base.nt = 2 * base.nt - 1;
  }
  return s;
}

struct SweepRow {
  double ratio = 0.0;
  double residual = 0.0;  ///< finest-level residual
  std::vector<double> levels;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool degenerate = false;  ///< Addot vanishes identically: no potential, nothing to score
  double best_ratio = std::numeric_limits<double>::quiet_NaN();
  double margin = 0.0;  ///< nearest competitor residual / best residual
};

struct SweepConfig {
  double x0 = 0.0, k0 = 0.5, width = 1.0;
  GridSpec grid{-12.0, 12.0, 61, 0.0, 0.1, 11};
  int levels = 3;
};

/// Residual of the transformed free packet against the frame equation with
/// m_grav = ratio * m_inertial.
inline SweepResult mass_equality_sweep(const RationalPoly& A, double m_inertial, const std::vector<double>& ratios,
                                       const SweepConfig& cfg = {}) {
  if (std::find(ratios.begin(), ratios.end(), 1.0) == ratios.end())
    throw std::invalid_argument("mass_equality_sweep needs ratio 1 among the ratios");
  SweepResult out;
  out.degenerate = differentiate(differentiate(A)).is_zero();
  const auto field = transform_function(gaussian_packet(m_inertial, cfg.x0, cfg.k0, cfg.width), A, m_inertial);
  const auto phi = frame_potential(A);
  for (double rho : ratios) {
    const auto study = residual_convergence(field, m_inertial, rho * m_inertial, phi, cfg.grid, cfg.levels);
    out.rows.push_back({rho, study.residual.back(), study.residual});
  }
  if (out.degenerate) return out;
  std::vector<SweepRow> sorted = out.rows;
  std::sort(sorted.begin(), sorted.end(), [](const SweepRow& a, const SweepRow& b) { return a.residual < b.residual; });
  out.best_ratio = sorted.front().ratio;
  out.margin = sorted.size() > 1 ? sorted[1].residual / sorted.front().residual : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace explab
