#pragma once

// Report-producing entry points behind the explab command line tool.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 bad input (parse or
// validation), 3 computation aborted (degree cap, non-convergence).

#include "explab/bundle.hpp"
#include "explab/classify.hpp"
#include "explab/group.hpp"
#include "explab/schrod.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace explab::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { ok = 0, check_failed = 1, bad_input = 2, aborted = 3 };

struct RunConfig {
  std::string command;
  std::string algebra = "galilean";
  std::string degree = "auto";
  std::string suite;
  std::string group = "galilean";
  std::string theta = "galilean-mass:1";
  std::string pair;
  bool all_pairs = false;
  std::string event = "0.3,-0.2,0.5,0.7";
  std::size_t samples = 1000;
  std::uint64_t seed = 42;
  std::string format = "json";
  bool timing = false;
};

struct Report {
  int exit_code = ok;
  nlohmann::json body;
  std::string text;
};

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// EXPLAB_THREADS, default 1.
inline unsigned thread_count() {
  if (const char* s = std::getenv("EXPLAB_THREADS")) {
    try {
      const long n = std::stol(s);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw InputError("EXPLAB_THREADS must be a positive integer");
  }
  return 1;
}

namespace detail {

/// "name:k" -> k, or nullopt when the prefix does not match.
inline std::optional<int> suffix_int(const std::string& spec, const std::string& prefix) {
  if (spec.rfind(prefix + ":", 0) != 0) return std::nullopt;
  try {
    std::size_t used = 0;
    const std::string rest = spec.substr(prefix.size() + 1);
    const int v = std::stoi(rest, &used);
    if (used != rest.size()) throw InputError("bad integer in '" + spec + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InputError("bad integer in '" + spec + "'");
  }
}

inline std::optional<double> suffix_double(const std::string& spec, const std::string& prefix) {
  if (spec.rfind(prefix + ":", 0) != 0) return std::nullopt;
  try {
    std::size_t used = 0;
    const std::string rest = spec.substr(prefix.size() + 1);
    const double v = std::stod(rest, &used);
    if (used != rest.size()) throw InputError("bad number in '" + spec + "'");
    return v;
  } catch (const std::logic_error&) {
    throw InputError("bad number in '" + spec + "'");
  }
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

struct Check {
  std::string name;
  bool passed;
  double value;
  double tolerance;
};

inline nlohmann::json checks_json(const std::vector<Check>& checks) {
  auto arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"check", c.name}, {"passed", c.passed}, {"value", c.value}, {"tolerance", c.tolerance}});
  return arr;
}

inline bool all_passed(const std::vector<Check>& checks) {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

inline std::string checks_text(const std::vector<Check>& checks) {
  std::ostringstream os;
  for (const auto& c : checks)
    os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.value << " (tol " << c.tolerance << ")\n";
  return os.str();
}

}  // namespace detail

/// galilean | milne:m | phase-space:n | path to a spec file.
inline AlgebraPtr load_algebra(const std::string& spec) {
  if (spec == "galilean") return galilean();
  if (auto m = detail::suffix_int(spec, "milne")) {
    if (*m < 1) throw InputError("milne:m requires m >= 1");
    return milne(*m);
  }
  if (auto n = detail::suffix_int(spec, "phase-space")) {
    if (*n < 1) throw InputError("phase-space:n requires n >= 1");
    return phase_space(*n);
  }
  return load_algebra_file(spec);
}

/// galilean-mass:m | milne-schrodinger:m
inline PhaseFunction load_theta(const std::string& spec) {
  if (auto m = detail::suffix_double(spec, "galilean-mass")) return theta_galilean(*m);
  if (auto m = detail::suffix_double(spec, "milne-schrodinger")) return theta_milne(*m);
  throw InputError("unknown theta '" + spec + "' (expected galilean-mass:m or milne-schrodinger:m)");
}

inline Event parse_event(const std::string& s) {
  const auto parts = detail::split(s, ',');
  if (parts.size() != 4) throw InputError("event must be x,y,z,t");
  try {
    return {Eigen::Vector3d(std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2])), std::stod(parts[3])};
  } catch (const std::logic_error&) {
    throw InputError("event must be four numbers x,y,z,t");
  }
}

inline nlohmann::json envelope(const RunConfig& cfg, nlohmann::json input, nlohmann::json result) {
  return {{"schema_version", kSchemaVersion},
          {"tool", "explab"},
          {"version", kToolVersion},
          {"command", cfg.command},
          {"input", std::move(input)},
          {"result", std::move(result)}};
}

inline Report cmd_classify(const RunConfig& cfg) {
  ClassifyOptions opts;
  if (cfg.degree != "auto") {
    try {
      std::size_t used = 0;
      const int d = std::stoi(cfg.degree, &used);
      if (used != cfg.degree.size() || d < 0) throw InputError("");
      opts.degree = d;
    } catch (const std::logic_error&) {
      throw InputError("--degree must be 'auto' or a non-negative integer");
    }
  }
  opts.threads = thread_count();
  const auto alg = load_algebra(cfg.algebra);
  const auto c = classify(alg, opts);
  auto result = to_json(c);
  if (alg->family() == AlgebraFamily::milne) {
    result["structure"] = to_json(verify_milne_structure(c, alg->family_param()));
    result["realizable_dim"] = realizable_subspace(c, alg->family_param()).quotient_dim;
  }
  Report r;
  r.body = envelope(cfg, {{"algebra", cfg.algebra}, {"degree", cfg.degree}}, result);
  std::ostringstream os;
  os << "algebra " << cfg.algebra << " (dim " << alg->dim() << ")\n"
     << "degree used " << c.degree_used << "\n"
     << "cocycle dim " << c.cocycle_dim << ", coboundary dim " << c.coboundary_dim << ", quotient dim "
     << c.quotient_dim << "\n";
  for (std::size_t k = 0; k < c.representatives.size(); ++k) {
    os << "class " << k << ":\n";
    const auto& xi = c.representatives[k];
    for (std::size_t i = 0; i < alg->dim(); ++i)
      for (std::size_t j = i + 1; j < alg->dim(); ++j)
        if (!xi(i, j).is_zero()) os << "  Xi(" << alg->label(i) << ", " << alg->label(j) << ") = " << xi(i, j) << "\n";
  }
  r.text = os.str();
  return r;
}

// ---------------------------------------------------------------------------
// verify suites

namespace detail {

inline std::vector<Check> identity_checks(const std::string& prefix, const IdentityReport& rep) {
  std::vector<Check> out;
  for (const auto& [k, v] : rep.max_violation) out.push_back({prefix + "." + k, v <= 1e-12, v, 1e-12});
  return out;
}

inline std::vector<Check> suite_galilean(const RunConfig& cfg) {
  const double m = 1.75;
  const auto theta = theta_galilean(m);
  const auto xi = exponent_of(theta);
  auto checks = identity_checks("identities", check_cocycle_identities(xi, 1, cfg.samples, cfg.seed));
  const double var = max_time_variance(xi, 1, std::max<std::size_t>(1, cfg.samples / 10), cfg.seed + 1);
  checks.push_back({"time_independence.variance", var <= 1e-24, var, 1e-24});
  const auto alg = galilean();
  const auto c = classify(alg);
  checks.push_back({"classify.quotient_dim", c.quotient_dim == 1, static_cast<double>(c.quotient_dim), 0});
  const auto M = extract_exponent_matrix(theta, *alg, Event{Eigen::Vector3d(0.3, -0.2, 0.5), 0.7});
  double worst = 0.0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < alg->dim(); ++i)
    for (std::size_t j = i + 1; j < alg->dim(); ++j, ++k) {
      const double expect = m * c.representatives.front()(i, j).coeff(0).get_d();
      worst = std::max(worst, std::abs(M[k] - expect) / m);
    }
  checks.push_back({"extraction.relative_error", worst <= 1e-6, worst, 1e-6});
  return checks;
}

inline std::vector<Check> suite_milne(const RunConfig& cfg, int m) {
  const auto alg = milne(m);
  ClassifyOptions opts;
  opts.threads = thread_count();
  const auto c = classify(alg, opts);
  std::vector<Check> checks;
  const double expect = m * (m + 1) / 2.0;
  checks.push_back({"classify.quotient_dim", c.quotient_dim == expect, static_cast<double>(c.quotient_dim), 0});
  for (const auto& s : verify_milne_structure(c, m).checks)
    checks.push_back({"structure." + s.name, s.passed, static_cast<double>(s.failures.size()), 0});
  const auto real = realizable_subspace(c, m);
  checks.push_back({"realizable_dim", real.quotient_dim == static_cast<std::size_t>(m),
                    static_cast<double>(real.quotient_dim), 0});
  const auto xi = exponent_of(theta_milne(1.0));
  auto ids = identity_checks("identities", check_cocycle_identities(xi, m, cfg.samples, cfg.seed));
  checks.insert(checks.end(), ids.begin(), ids.end());
  return checks;
}

inline std::vector<Check> suite_h_group(const RunConfig& cfg) {
  std::vector<Check> checks;
  const std::pair<const char*, PhaseFunction> cases[] = {{"galilean", theta_galilean(1.0)}, {"milne2", theta_milne(1.0)}};
  for (const auto& [name, theta] : cases) {
    const int order = std::string(name) == "galilean" ? 1 : 2;
    const auto rep = check_h_group(exponent_of(theta), order, std::max<std::size_t>(1, cfg.samples / 4), cfg.seed);
    const std::string p = std::string("h.") + name;
    checks.push_back({p + ".assoc_equals_cocycle", rep.max_assoc_minus_cocycle <= 1e-12, rep.max_assoc_minus_cocycle, 1e-12});
    checks.push_back({p + ".associativity", rep.max_associativity <= 1e-12, rep.max_associativity, 1e-12});
    checks.push_back({p + ".inverse", rep.max_inverse <= 1e-12, rep.max_inverse, 1e-12});
    checks.push_back({p + ".unit", rep.max_unit <= 1e-12, rep.max_unit, 1e-12});
  }
  return checks;
}

inline std::vector<Check> suite_bundle(const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> g;
  const std::size_t nodes = 32, dim = 4;
  const auto grid = TimeGrid::uniform(0.0, 3.0, nodes);
  auto random_section = [&] {
    std::vector<Eigen::VectorXcd> f(nodes);
    for (auto& v : f) {
      v.resize(dim);
      for (std::size_t i = 0; i < dim; ++i) v(i) = cplx(g(rng), g(rng));
    }
    return Section(grid, f);
  };
  std::vector<Check> checks;
  const auto s1 = random_section();
  std::vector<double> planted;
  for (double t : grid.nodes()) planted.push_back(std::sin(t));
  const auto eq = ray_equivalent(s1, s1.with_phases(planted));
  double worst = eq.equivalent ? 0.0 : 1.0;
  for (std::size_t k = 0; eq.equivalent && k < nodes; ++k) {
    const double d = std::remainder(eq.phases[k] - planted[k], 2.0 * std::numbers::pi);
    worst = std::max(worst, std::abs(d));
  }
  checks.push_back({"ray.planted_phase_recovery", worst <= 1e-12, worst, 1e-12});
  checks.push_back({"ray.scaled_rejected", !ray_equivalent(s1, cplx(2.0) * s1).equivalent, 0, 0});
  checks.push_back({"ray.independent_rejected", !ray_equivalent(s1, random_section()).equivalent, 0, 0});
  std::vector<std::size_t> perm(nodes);
  for (std::size_t k = 0; k < nodes; ++k) perm[k] = (k + 5) % nodes;
  std::vector<Eigen::MatrixXcd> us;
  for (std::size_t k = 0; k < nodes; ++k) {
    Eigen::MatrixXcd a(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    us.push_back(qr.householderQ() * Eigen::MatrixXcd::Identity(dim, dim));
  }
  const BundleMap T(perm, us);
  const auto s2 = random_section();
  const auto t1 = apply_bundle_map(T, s1), t2 = apply_bundle_map(T, s2);
  double iso = 0.0;
  for (std::size_t k = 0; k < nodes; ++k)
    iso = std::max(iso, std::abs(fiber_inner(t1, t2, perm[k]) - fiber_inner(s1, s2, k)));
  checks.push_back({"isometry.fiber_inner", iso <= 1e-12, iso, 1e-12});
  return checks;
}

inline std::vector<Check> suite_schrodinger() {
  const double m = 1.0;
  const RationalPoly A{Rational(0), Rational(0), Rational(1, 2)};
  const auto field = transform_function(gaussian_packet(m, 0.0, 0.5, 1.0), A, m);
  const auto study = residual_convergence(field, m, m, frame_potential(A), GridSpec{}, 4);
  std::vector<Check> checks;
  checks.push_back({"convergence.order", study.final_order() >= 1.8, study.final_order(), 1.8});
  const auto sweep = mass_equality_sweep(A, m, {0.5, 0.9, 1.0, 1.1, 2.0});
  checks.push_back({"sweep.minimum_at_ratio_1", sweep.best_ratio == 1.0, sweep.best_ratio, 0});
  checks.push_back({"sweep.margin", sweep.margin >= 10.0, sweep.margin, 10.0});
  return checks;
}

}  // namespace detail

inline Report cmd_verify(const RunConfig& cfg) {
  if (cfg.samples < 1) throw InputError("--samples must be >= 1");
  std::vector<detail::Check> checks;
  if (cfg.suite == "galilean") {
    checks = detail::suite_galilean(cfg);
  } else if (auto m = detail::suffix_int(cfg.suite, "milne")) {
    if (*m < 1) throw InputError("milne:m requires m >= 1");
    checks = detail::suite_milne(cfg, *m);
  } else if (cfg.suite == "h-group") {
    checks = detail::suite_h_group(cfg);
  } else if (cfg.suite == "bundle") {
    checks = detail::suite_bundle(cfg);
  } else if (cfg.suite == "schrodinger") {
    checks = detail::suite_schrodinger();
  } else {
    throw InputError("unknown suite '" + cfg.suite + "' (galilean, milne:m, bundle, schrodinger, h-group)");
  }
  Report r;
  r.exit_code = detail::all_passed(checks) ? ok : check_failed;
  r.body = envelope(cfg, {{"suite", cfg.suite}, {"seed", cfg.seed}, {"samples", cfg.samples}},
                    {{"checks", detail::checks_json(checks)}, {"all_passed", r.exit_code == ok}});
  r.text = "suite " + cfg.suite + " (seed " + std::to_string(cfg.seed) + ", samples " + std::to_string(cfg.samples) +
           ")\n" + detail::checks_text(checks);
  return r;
}

// ---------------------------------------------------------------------------
// exponent

inline Report cmd_exponent(const RunConfig& cfg) {
  const auto alg = load_algebra(cfg.group);
  if (alg->family() != AlgebraFamily::galilean && alg->family() != AlgebraFamily::milne)
    throw InputError("--group must be galilean or milne:m");
  const auto theta = load_theta(cfg.theta);
  if (cfg.theta.rfind("galilean-mass", 0) == 0 && alg->family() != AlgebraFamily::galilean)
    throw InputError("galilean-mass phases need --group galilean");
  const Event p = parse_event(cfg.event);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (cfg.all_pairs) {
    for (std::size_t i = 0; i < alg->dim(); ++i)
      for (std::size_t j = i + 1; j < alg->dim(); ++j) pairs.emplace_back(i, j);
  } else {
    const auto parts = detail::split(cfg.pair, ',');
    if (parts.size() != 2) throw InputError("--pair must be two generator labels a,b");
    const auto i = alg->index_of(parts[0]), j = alg->index_of(parts[1]);
    if (!i || !j) throw InputError("unknown generator in --pair '" + cfg.pair + "'");
    pairs.emplace_back(*i, *j);
  }

  // reference values from the classification, where one is pinned down
  std::optional<std::vector<double>> reference;
  const double mass = detail::suffix_double(cfg.theta, cfg.theta.substr(0, cfg.theta.find(':'))).value();
  if (alg->family() == AlgebraFamily::galilean && cfg.theta.rfind("galilean-mass", 0) == 0) {
    const auto c = classify(alg);
    std::vector<double> ref;
    for (const auto& [i, j] : pairs) ref.push_back(mass * c.representatives.front()(i, j).coeff(0).get_d());
    reference = ref;
  }

  auto rows = nlohmann::json::array();
  std::vector<double> values;
  std::ostringstream os;
  double worst_rel = 0.0;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto [i, j] = pairs[k];
    const auto ex = infinitesimal_from_finite(theta, *alg, AlgebraVector::basis(alg->dim(), i),
                                              AlgebraVector::basis(alg->dim(), j), p);
    values.push_back(ex.value);
    nlohmann::json row = {{"a", alg->label(i)}, {"b", alg->label(j)}, {"value", ex.value},
                          {"error_estimate", ex.error_estimate}};
    if (reference) {
      row["reference"] = (*reference)[k];
      worst_rel = std::max(worst_rel, std::abs(ex.value - (*reference)[k]) / std::max(1.0, std::abs(mass)));
    }
    if (cfg.all_pairs && std::abs(ex.value) < 1e-9) continue;
    rows.push_back(row);
    os << "Xi(" << alg->label(i) << ", " << alg->label(j) << ") = " << ex.value << " +- " << ex.error_estimate << "\n";
  }

  nlohmann::json result = {{"event", {p.x(0), p.x(1), p.x(2), p.t}}, {"values", rows}};
  bool passed = true;
  if (reference) {
    result["max_relative_error"] = worst_rel;
    passed = worst_rel <= 1e-6;
    os << "max relative error vs classification: " << worst_rel << "\n";
  }
  if (alg->family() == AlgebraFamily::milne && cfg.all_pairs) {
    // least-squares fit by the realizable classes evaluated at p.t
    const int m = alg->family_param();
    const auto real = realizable_subspace(classify(alg), m);
    Eigen::MatrixXd B(values.size(), real.representatives.size());
    Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    for (std::size_t r = 0; r < real.representatives.size(); ++r)
      for (std::size_t k = 0; k < pairs.size(); ++k)
        B(k, r) = to_real(real.representatives[r](pairs[k].first, pairs[k].second))(p.t);
    const Eigen::VectorXd w = B.colPivHouseholderQr().solve(y);
    const double resid = (B * w - y).cwiseAbs().maxCoeff();
    const double tol = 1e-6 * std::max(1.0, y.cwiseAbs().maxCoeff());
    result["realizable_fit_residual"] = resid;
    passed = resid <= tol;
    os << "realizable-class fit residual: " << resid << "\n";
  }
  Report r;
  r.exit_code = passed ? ok : check_failed;
  r.body = envelope(cfg,
                    {{"group", cfg.group}, {"theta", cfg.theta}, {"pair", cfg.all_pairs ? "all" : cfg.pair},
                     {"event", cfg.event}},
                    result);
  r.text = os.str();
  return r;
}

/// Dispatches and maps exceptions onto exit codes.
inline Report run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  Report r;
  try {
    if (cfg.command == "classify") r = cmd_classify(cfg);
    else if (cfg.command == "verify") r = cmd_verify(cfg);
    else if (cfg.command == "exponent") r = cmd_exponent(cfg);
    else throw InputError("unknown command '" + cfg.command + "'");
  } catch (const DegreeCapExceeded& e) {
    r = {aborted, envelope(cfg, nullptr, {{"error", e.what()}, {"kind", "degree_cap"}}), std::string(e.what()) + "\n"};
  } catch (const NonConvergence& e) {
    r = {aborted, envelope(cfg, nullptr, {{"error", e.what()}, {"kind", "non_convergence"}}),
         std::string(e.what()) + "\n"};
  } catch (const AlgebraParseError& e) {
    r = {bad_input, envelope(cfg, nullptr, {{"error", e.what()}, {"kind", "parse"}}), std::string(e.what()) + "\n"};
  } catch (const InvalidAlgebra& e) {
    r = {bad_input, envelope(cfg, nullptr, {{"error", e.what()}, {"kind", "validation"}}), std::string(e.what()) + "\n"};
  } catch (const InputError& e) {
    r = {bad_input, envelope(cfg, nullptr, {{"error", e.what()}, {"kind", "input"}}), std::string(e.what()) + "\n"};
  }
  if (cfg.timing) {
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.body["timing_ms"] = ms;
    r.text += "elapsed " + std::to_string(ms) + " ms\n";
  }
  return r;
}

inline std::string render(const Report& r, const std::string& format) {
  if (format == "text") return r.text;
  return r.body.dump(2) + "\n";
}

}  // namespace explab::cli
