#pragma once

// Galilean and Milne G(m) group elements, phase functions, finite exponents
// and their identities, the extension group H, and numerical extraction of
// infinitesimal exponents.
//
// Conventions: (T_r psi)(p) = exp(i theta(r,p)) psi(r^-1 p) with p the image
// event, and T_r T_s = exp(i xi(r,s,.)) T_rs, so
//   xi(r,s,p) = theta(r,p) + theta(s,r^-1 p) - theta(rs,p).

#include "explab/lie.hpp"
#include "explab/polynomial.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace explab {

struct Event {
  Eigen::Vector3d x = Eigen::Vector3d::Zero();
  double t = 0.0;
};

using Coefficients = Eigen::Matrix<double, 3, Eigen::Dynamic>;

namespace detail {

/// exp(bN) on (m+1)-jets: entry (k,n) = b^(k-n)/(k-n)! for k >= n.
inline Eigen::MatrixXd jet_shift(int m, double b) {
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (int n = 0; n <= m; ++n) {
    double term = 1.0;
    for (int k = n; k <= m; ++k) {
      s(k, n) = term;
      term *= b / (k - n + 1);
    }
  }
  return s;
}

/// (1, t, t^2/2!, ..., t^m/m!)
inline Eigen::VectorXd jet(int m, double t) {
  Eigen::VectorXd u(m + 1);
  u(0) = 1.0;
  for (int n = 1; n <= m; ++n) u(n) = u(n - 1) * t / n;
  return u;
}

}  // namespace detail

/// (x,t) -> (R x + A(t), t + b) with A(t) = sum_n t^n/n! V.col(n).
class MilneElement {
 public:
  MilneElement(Eigen::Matrix3d R, Coefficients V, double b) : R_(std::move(R)), V_(std::move(V)), b_(b) {
    if (V_.cols() < 1) throw std::invalid_argument("Milne element needs at least the translation column");
    if ((R_.transpose() * R_ - Eigen::Matrix3d::Identity()).norm() > 1e-12)
      throw std::invalid_argument("rotation part is not orthogonal");
  }

  static MilneElement identity(int order) {
    return {Eigen::Matrix3d::Identity(), Coefficients::Zero(3, order + 1), 0.0};
  }

  int order() const noexcept { return static_cast<int>(V_.cols()) - 1; }
  const Eigen::Matrix3d& R() const noexcept { return R_; }
  const Coefficients& V() const noexcept { return V_; }
  double b() const noexcept { return b_; }

  Eigen::Vector3d A(double t) const { return V_ * detail::jet(order(), t); }
  Eigen::Vector3d Adot(double t) const {
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    const auto u = detail::jet(order(), t);
    for (int n = 1; n <= order(); ++n) acc += V_.col(n) * u(n - 1);
    return acc;
  }

  Event act(const Event& p) const { return {R_ * p.x + A(p.t), p.t + b_}; }

  /// Block matrix [[R, V], [0, exp(bN)]] acting on (x, jet(t)).
  Eigen::MatrixXd matrix() const {
    const int m = order();
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4 + m, 4 + m);
    M.topLeftCorner(3, 3) = R_;
    M.topRightCorner(3, m + 1) = V_;
    M.bottomRightCorner(m + 1, m + 1) = detail::jet_shift(m, b_);
    return M;
  }

  static MilneElement from_matrix(const Eigen::MatrixXd& M) {
    const int m = static_cast<int>(M.rows()) - 4;
    Eigen::Matrix3d R = M.topLeftCorner(3, 3);
    // re-orthogonalize away rounding from matrix functions
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
    R = svd.matrixU() * svd.matrixV().transpose();
    return {R, M.topRightCorner(3, m + 1), M(4, 3)};
  }

 private:
  Eigen::Matrix3d R_;
  Coefficients V_;
  double b_;
};

inline void require_same_order(const MilneElement& r, const MilneElement& s) {
  if (r.order() != s.order()) throw std::invalid_argument("Milne elements of different order");
}

/// r after s.
inline MilneElement compose(const MilneElement& r, const MilneElement& s) {
  require_same_order(r, s);
  Coefficients V = r.R() * s.V() + r.V() * detail::jet_shift(r.order(), s.b());
  return {r.R() * s.R(), std::move(V), r.b() + s.b()};
}

inline MilneElement inverse(const MilneElement& r) {
  Eigen::Matrix3d Rt = r.R().transpose();
  Coefficients V = -Rt * r.V() * detail::jet_shift(r.order(), -r.b());
  return {Rt, std::move(V), -r.b()};
}

inline Event act(const MilneElement& r, const Event& p) { return r.act(p); }

/// (x,t) -> (R x + v t + a, t + b); the order-1 case of MilneElement.
struct GalileanElement {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  double b = 0.0;

  MilneElement lift() const {
    Coefficients V(3, 2);
    V.col(0) = a;
    V.col(1) = v;
    return {R, V, b};
  }
  static GalileanElement from(const MilneElement& g) {
    if (g.order() != 1) throw std::invalid_argument("not a Galilean element");
    return {g.R(), g.V().col(1), g.V().col(0), g.b()};
  }
};

inline GalileanElement compose(const GalileanElement& r, const GalileanElement& s) {
  return GalileanElement::from(compose(r.lift(), s.lift()));
}
inline GalileanElement inverse(const GalileanElement& r) { return GalileanElement::from(inverse(r.lift())); }
inline Event act(const GalileanElement& r, const Event& p) { return r.lift().act(p); }

// ---------------------------------------------------------------------------
// Lie algebra to one-parameter subgroups

/// Order of the jet group matching a built-in algebra: 1 for galilean, m for milne(m).
inline int group_order(const LieAlgebra& alg) {
  if (alg.family() == AlgebraFamily::galilean) return 1;
  if (alg.family() == AlgebraFamily::milne) return alg.family_param();
  throw std::invalid_argument("no group realization for algebra family");
}

/// Matrix of an algebra vector in the jet representation. Rotation a_ij maps
/// to E_ij - E_ji, d_k^(n) to the unit entry (k, 3+n), tau to the jet shift N.
inline Eigen::MatrixXd generator_matrix(const LieAlgebra& alg, const AlgebraVector& X) {
  const int m = group_order(alg);
  if (X.size() != alg.dim()) throw std::invalid_argument("algebra vector dimension mismatch");
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(4 + m, 4 + m);
  const int rot[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int r = 0; r < 3; ++r) {
    const double c = X[r].get_d();
    M(rot[r][0], rot[r][1]) += c;
    M(rot[r][1], rot[r][0]) -= c;
  }
  for (int n = 0; n <= m; ++n)
    for (int i = 1; i <= 3; ++i) M(i - 1, 3 + n) = X[milne_index(i, n)].get_d();
  const double tau = X[*alg.time_index()].get_d();
  for (int n = 1; n <= m; ++n) M(3 + n, 3 + n - 1) = tau;
  return M;
}

/// exp(s X) as a group element.
inline MilneElement exp_element(const LieAlgebra& alg, const AlgebraVector& X, double s) {
  Eigen::MatrixXd M = (s * generator_matrix(alg, X)).exp();
  return MilneElement::from_matrix(M);
}

// ---------------------------------------------------------------------------
// Phase functions

struct PhaseFunction {
  std::string tag;
  std::function<double(const MilneElement&, const Event&)> theta;
  /// Lambda(X, p) = d/ds theta(exp(sX), p) at s = 0, X a jet-representation
  /// matrix. Optional; required for canonicalization.
  std::function<double(const Eigen::MatrixXd&, const Event&)> generator;
  /// theta vanishes on one-parameter subgroups, so the commutator limit applies directly.
  bool canonical = false;

  double operator()(const MilneElement& r, const Event& p) const { return theta(r, p); }
};

/// -m v.x + (m/2)|v|^2 t
inline PhaseFunction theta_galilean(double m) {
  PhaseFunction f;
  f.tag = "galilean-mass:" + std::to_string(m);
  f.theta = [m](const MilneElement& r, const Event& p) {
    if (r.order() != 1) throw std::invalid_argument("theta_galilean needs a Galilean element");
    const Eigen::Vector3d v = r.V().col(1);
    return -m * v.dot(p.x) + 0.5 * m * v.squaredNorm() * p.t;
  };
  f.generator = [m](const Eigen::MatrixXd& X, const Event& p) { return -m * X.block(0, 4, 3, 1).col(0).dot(p.x); };
  f.canonical = true;
  return f;
}

/// (m/2) int_0^t |Adot|^2 + m Adot(t).R x, at a source event (x,t).
inline double theta_milne_source(double m, const MilneElement& r, const Event& src) {
  const int order = r.order();
  RealPoly speed2;
  for (int c = 0; c < 3; ++c) {
    std::vector<double> coeffs(std::max(order, 1), 0.0);
    double fact = 1.0;
    for (int n = 1; n <= order; ++n) {
      coeffs[n - 1] = r.V()(c, n) / fact;
      fact *= n;
    }
    RealPoly adot(std::move(coeffs));
    speed2 += adot * adot;
  }
  const double integral = evaluate(antiderivative(speed2, 0.0), src.t);
  return 0.5 * m * integral + m * r.Adot(src.t).dot(r.R() * src.x);
}

/// Schrodinger-derived Milne phase; theta(r,p) is the closed form at r^-1 p.
inline PhaseFunction theta_milne(double m) {
  PhaseFunction f;
  f.tag = "milne-schrodinger:" + std::to_string(m);
  f.theta = [m](const MilneElement& r, const Event& p) { return theta_milne_source(m, r, inverse(r).act(p)); };
  f.generator = [m](const Eigen::MatrixXd& X, const Event& p) {
    const int order = static_cast<int>(X.rows()) - 4;
    const auto u = detail::jet(order, p.t);
    Eigen::Vector3d adot = Eigen::Vector3d::Zero();
    for (int n = 1; n <= order; ++n) adot += X.block(0, 3 + n, 3, 1).col(0) * u(n - 1);
    return m * adot.dot(p.x);
  };
  return f;
}

/// theta + zeta
inline PhaseFunction equivalence_transform(const PhaseFunction& theta,
                                           std::function<double(const MilneElement&, const Event&)> zeta) {
  PhaseFunction f;
  f.tag = theta.tag + "+zeta";
  f.theta = [theta, zeta = std::move(zeta)](const MilneElement& r, const Event& p) { return theta(r, p) + zeta(r, p); };
  return f;
}

/// theta_can(exp X, p) = int_0^1 Lambda(X, exp(-sX) p) ds: the representative of
/// theta's class that vanishes on one-parameter subgroups.
inline PhaseFunction canonical_phase(const PhaseFunction& theta) {
  if (theta.canonical) return theta;
  if (!theta.generator) throw std::invalid_argument("canonicalization needs the phase generator");
  PhaseFunction f;
  f.tag = theta.tag + ":canonical";
  f.generator = theta.generator;
  f.canonical = true;
  f.theta = [lam = theta.generator](const MilneElement& g, const Event& p) {
    const Eigen::MatrixXd X = g.matrix().log();
    const int order = g.order();
    Eigen::VectorXd w(4 + order);
    w.head(3) = p.x;
    w.tail(order + 1) = detail::jet(order, p.t);
    auto integrand = [&](double s) {
      const Eigen::VectorXd q = (-s * X).exp() * w;
      return lam(X, Event{q.head(3), q(4) / q(3)});
    };
    return boost::math::quadrature::gauss<double, 20>::integrate(integrand, 0.0, 1.0);
  };
  return f;
}

// ---------------------------------------------------------------------------
// Finite exponents

using ExponentFn = std::function<double(const MilneElement&, const MilneElement&, const Event&)>;

inline double finite_exponent(const PhaseFunction& theta, const MilneElement& r, const MilneElement& s,
                              const Event& p) {
  return theta(r, p) + theta(s, inverse(r).act(p)) - theta(compose(r, s), p);
}

inline ExponentFn exponent_of(PhaseFunction theta) {
  return [theta = std::move(theta)](const MilneElement& r, const MilneElement& s, const Event& p) {
    return finite_exponent(theta, r, s, p);
  };
}

// ---------------------------------------------------------------------------
// Sampling

inline Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Quaterniond q(g(rng), g(rng), g(rng), g(rng));
  q.normalize();
  return q.toRotationMatrix();
}

/// Rotation uniform, V and b uniform in [-scale, scale].
inline MilneElement random_element(int order, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Coefficients V(3, order + 1);
  for (int c = 0; c < V.cols(); ++c)
    for (int r = 0; r < 3; ++r) V(r, c) = u(rng);
  const Eigen::Matrix3d R = random_rotation(rng);
  return {R, V, u(rng)};
}

inline Event random_event(std::mt19937_64& rng, double scale = 2.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {Eigen::Vector3d(u(rng), u(rng), u(rng)), u(rng)};
}

struct IdentityReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::map<std::string, double> max_violation;

  double worst() const {
    double w = 0.0;
    for (const auto& [k, v] : max_violation) w = std::max(w, v);
    return w;
  }
};

/// Cocycle, unit and inverse identities on seeded random (r, s, g, p).
inline IdentityReport check_cocycle_identities(const ExponentFn& xi, int order, std::size_t samples,
                                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  IdentityReport rep{seed, samples, {{"associativity", 0.0}, {"unit_ee", 0.0}, {"unit_left_right", 0.0},
                                     {"inverse", 0.0}}};
  auto bump = [&](const char* k, double v) { rep.max_violation[k] = std::max(rep.max_violation[k], std::abs(v)); };
  const auto e = MilneElement::identity(order);
  for (std::size_t n = 0; n < samples; ++n) {
    const auto r = random_element(order, rng);
    const auto s = random_element(order, rng);
    const auto g = random_element(order, rng);
    const auto p = random_event(rng);
    const auto rinv = inverse(r);
    const Event q = rinv.act(p);
    bump("associativity", xi(r, s, p) + xi(compose(r, s), g, p) - xi(s, g, q) - xi(r, compose(s, g), p));
    bump("unit_ee", xi(e, e, p));
    bump("unit_left_right", xi(r, e, p));
    bump("unit_left_right", xi(e, g, p));
    bump("inverse", xi(r, rinv, p) - xi(rinv, r, q));
  }
  return rep;
}

/// Largest sample variance of t -> xi(r, s, (x, t)) over t in [-10, 10].
inline double max_time_variance(const ExponentFn& xi, int order, std::size_t samples, std::uint64_t seed,
                                int times = 16) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ut(-10.0, 10.0);
  double worst = 0.0;
  for (std::size_t n = 0; n < samples; ++n) {
    const auto r = random_element(order, rng);
    const auto s = random_element(order, rng);
    const auto x = random_event(rng).x;
    std::vector<double> vals;
    for (int k = 0; k < times; ++k) vals.push_back(xi(r, s, Event{x, ut(rng)}));
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= vals.size();
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    worst = std::max(worst, var / (vals.size() - 1));
  }
  return worst;
}

/// max |xi'(r,s,p) - xi(r,s,p) - (zeta(r,p) + zeta(s,r^-1 p) - zeta(rs,p))| for theta' = theta + zeta.
inline double exponent_shift_violation(const PhaseFunction& theta,
                                       const std::function<double(const MilneElement&, const Event&)>& zeta,
                                       int order, std::size_t samples, std::uint64_t seed) {
  const auto shifted = equivalence_transform(theta, zeta);
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (std::size_t n = 0; n < samples; ++n) {
    const auto r = random_element(order, rng);
    const auto s = random_element(order, rng);
    const auto p = random_event(rng);
    const Event q = inverse(r).act(p);
    const double delta = zeta(r, p) + zeta(s, q) - zeta(compose(r, s), p);
    worst = std::max(worst, std::abs(finite_exponent(shifted, r, s, p) - finite_exponent(theta, r, s, p) - delta));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Extension group H

struct HElement {
  std::function<double(const Event&)> theta;
  MilneElement r;
};

inline HElement h_identity(int order) {
  return {[](const Event&) { return 0.0; }, MilneElement::identity(order)};
}

/// {theta, r}{theta', r'} = {theta(p) + theta'(r^-1 p) + xi(r, r', p), r r'}
inline HElement h_multiply(const HElement& h1, const HElement& h2, const ExponentFn& xi) {
  const MilneElement rinv = inverse(h1.r);
  auto theta = [t1 = h1.theta, t2 = h2.theta, r1 = h1.r, r2 = h2.r, rinv, xi](const Event& p) {
    return t1(p) + t2(rinv.act(p)) + xi(r1, r2, p);
  };
  return {theta, compose(h1.r, h2.r)};
}

/// {-theta(r p) - xi(r, r^-1, r p), r^-1}
inline HElement h_inverse(const HElement& h, const ExponentFn& xi) {
  const MilneElement rinv = inverse(h.r);
  auto theta = [t = h.theta, r = h.r, rinv, xi](const Event& p) {
    const Event rp = r.act(p);
    return -t(rp) - xi(r, rinv, rp);
  };
  return {theta, rinv};
}

struct HGroupReport {
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  double max_associativity = 0.0;        ///< |((h1 h2) h3 - h1 (h2 h3)).theta|
  double max_cocycle = 0.0;              ///< cocycle identity violation on the same samples
  double max_assoc_minus_cocycle = 0.0;  ///< the two agree sample by sample
  double max_inverse = 0.0;              ///< |(h^-1 h).theta| and group-part defect
  double max_unit = 0.0;
};

inline HGroupReport check_h_group(const ExponentFn& xi, int order, std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_h = [&] {
    const double c0 = u(rng), c1 = u(rng), c2 = u(rng), c3 = u(rng), c4 = u(rng);
    auto theta = [=](const Event& p) { return c0 + c1 * p.x(0) + c2 * p.x(1) * p.x(2) + c3 * p.t + c4 * p.t * p.x(0); };
    return HElement{theta, random_element(order, rng)};
  };
  HGroupReport rep{seed, samples};
  const auto e = h_identity(order);
  for (std::size_t n = 0; n < samples; ++n) {
    const auto h1 = random_h(), h2 = random_h(), h3 = random_h();
    const auto p = random_event(rng);
    const auto left = h_multiply(h_multiply(h1, h2, xi), h3, xi);
    const auto right = h_multiply(h1, h_multiply(h2, h3, xi), xi);
    const double assoc = left.theta(p) - right.theta(p);
    const Event q = inverse(h1.r).act(p);
    const double cocycle =
        xi(h1.r, h2.r, p) + xi(compose(h1.r, h2.r), h3.r, p) - xi(h2.r, h3.r, q) - xi(h1.r, compose(h2.r, h3.r), p);
    const double group_defect = (left.r.matrix() - right.r.matrix()).cwiseAbs().maxCoeff();
    rep.max_associativity = std::max(rep.max_associativity, std::abs(assoc));
    rep.max_cocycle = std::max(rep.max_cocycle, std::abs(cocycle));
    rep.max_assoc_minus_cocycle = std::max({rep.max_assoc_minus_cocycle, std::abs(assoc - cocycle), group_defect});
    const auto prod = h_multiply(h_inverse(h1, xi), h1, xi);
    const double inv_group = (prod.r.matrix() - e.r.matrix()).cwiseAbs().maxCoeff();
    rep.max_inverse = std::max({rep.max_inverse, std::abs(prod.theta(p)), inv_group});
    const auto el = h_multiply(e, h1, xi), er = h_multiply(h1, e, xi);
    rep.max_unit = std::max({rep.max_unit, std::abs(el.theta(p) - h1.theta(p)), std::abs(er.theta(p) - h1.theta(p))});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Infinitesimal exponents from finite ones

class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExtrapolationOptions {
  double tau0 = 0.1;
  int levels = 6;
};

struct Extrapolation {
  double value = 0.0;
  double error_estimate = 0.0;
  double order_estimate = 0.0;  ///< empirical leading order of F(tau) - limit; NaN when F is flat
  std::vector<double> samples;  ///< F(tau0 2^-k), k = 0..levels
};

/// Richardson extrapolation of F(tau_k), tau_k = tau0 2^-k, assuming an
/// expansion in integer powers of tau.
inline Extrapolation richardson(const std::vector<double>& f) {
  const std::size_t L = f.size();
  if (L < 3) throw std::invalid_argument("richardson needs at least three samples");
  std::vector<std::vector<double>> T(L);
  for (std::size_t k = 0; k < L; ++k) {
    T[k].push_back(f[k]);
    for (std::size_t j = 1; j <= k; ++j) {
      const double factor = std::ldexp(1.0, static_cast<int>(j)) - 1.0;
      T[k].push_back(T[k][j - 1] + (T[k][j - 1] - T[k - 1][j - 1]) / factor);
    }
  }
  Extrapolation out;
  out.samples = f;
  out.value = T[L - 1][L - 1];
  out.error_estimate = std::abs(T[L - 1][L - 1] - T[L - 2][L - 2]);
  const double d1 = std::abs(f[0] - f[1]), d2 = std::abs(f[1] - f[2]);
  out.order_estimate = (d1 > 0 && d2 > 0) ? std::log2(d1 / d2) : std::nan("");
  const double scale = std::max(1.0, std::abs(out.value));
  const double first = std::abs(T[1][1] - T[0][0]);
  if (out.error_estimate > 1e-9 * scale && out.error_estimate > first)
    throw NonConvergence("extrapolation error estimate did not decrease (" + std::to_string(first) + " -> " +
                         std::to_string(out.error_estimate) + ")");
  return out;
}

/// tau^-2 { xi(AB, A^-1 B^-1, p) + xi(A, B, p) + xi(A^-1, B^-1, B^-1 A^-1 p) }
/// with A = exp(tau a), B = exp(tau b), extrapolated to tau -> 0. Phases
/// that are not canonical are first replaced by their canonical representative.
inline Extrapolation infinitesimal_from_finite(const PhaseFunction& theta, const LieAlgebra& alg,
                                               const AlgebraVector& a, const AlgebraVector& b, const Event& p,
                                               const ExtrapolationOptions& opts = {}) {
  const PhaseFunction phase = (theta.canonical || !theta.generator) ? theta : canonical_phase(theta);
  const auto xi = exponent_of(phase);
  std::vector<double> f;
  for (int k = 0; k <= opts.levels; ++k) {
    const double tau = std::ldexp(opts.tau0, -k);
    const auto A = exp_element(alg, a, tau), B = exp_element(alg, b, tau);
    const auto Ai = inverse(A), Bi = inverse(B);
    const double sum = xi(compose(A, B), compose(Ai, Bi), p) + xi(A, B, p) + xi(Ai, Bi, Bi.act(Ai.act(p)));
    f.push_back(sum / (tau * tau));
  }
  return richardson(f);
}

/// Extracted Xi(a_i, a_j) at p for all i < j, entry-lexicographic.
inline std::vector<double> extract_exponent_matrix(const PhaseFunction& theta, const LieAlgebra& alg, const Event& p,
                                                   const ExtrapolationOptions& opts = {}) {
  std::vector<double> out;
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = i + 1; j < alg.dim(); ++j)
      out.push_back(infinitesimal_from_finite(theta, alg, AlgebraVector::basis(alg.dim(), i),
                                              AlgebraVector::basis(alg.dim(), j), p, opts)
                        .value);
  return out;
}

}  // namespace explab
