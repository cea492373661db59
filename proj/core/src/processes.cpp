#include "qdephase/processes.hpp"

#include <cmath>
#include <stdexcept>

#include "qdephase/numerics.hpp"

namespace qdephase {

namespace {

void require_nonnegative_time(double t, const char* who) {
  if (!(t >= 0.0)) throw std::domain_error(std::string(who) + ": negative time");
}

std::string trimmed_number(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

// Plain lower-triangular Cholesky, row-major full storage. Returns false
// on a non-positive pivot.
bool cholesky_in_place(std::vector<double>& a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0.0)) return false;
    const double root = std::sqrt(d);
    a[j * n + j] = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = v / root;
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) a[i * n + j] = 0.0;
  return true;
}

}  // namespace

ProcessSpec ProcessSpec::ou(double gamma) {
  if (!(gamma > 0.0)) throw std::domain_error("ou: gamma must be > 0");
  return {Kind::OrnsteinUhlenbeck, gamma};
}

ProcessSpec ProcessSpec::fgn(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw std::domain_error("fgn: Hurst parameter must lie in (0, 1)");
  }
  return {Kind::FractionalGaussianNoise, hurst};
}

// Wiener keeps hurst = 1/2 and rides the fgn code path everywhere below.
ProcessSpec ProcessSpec::wiener() { return {Kind::Wiener, 0.5}; }

ProcessSpec ProcessSpec::white_noise() { return {Kind::WhiteNoise, 0.0}; }

double ProcessSpec::gamma() const {
  if (kind_ != Kind::OrnsteinUhlenbeck) {
    throw std::logic_error("ProcessSpec::gamma: not an OU process");
  }
  return param_;
}

double ProcessSpec::hurst() const {
  if (kind_ != Kind::FractionalGaussianNoise && kind_ != Kind::Wiener) {
    throw std::logic_error("ProcessSpec::hurst: process has no Hurst parameter");
  }
  return param_;
}

std::string ProcessSpec::name() const {
  switch (kind_) {
    case Kind::OrnsteinUhlenbeck: return "ou:gamma=" + trimmed_number(param_);
    case Kind::FractionalGaussianNoise: return "fgn:h=" + trimmed_number(param_);
    case Kind::Wiener: return "wiener";
    case Kind::WhiteNoise: return "white";
  }
  return "?";
}

TimeGrid::TimeGrid(double t_max_, int n_steps_) : t_max(t_max_), n_steps(n_steps_) {
  if (!(t_max > 0.0)) throw std::domain_error("TimeGrid: t_max must be > 0");
  if (n_steps < 1) throw std::domain_error("TimeGrid: n_steps must be >= 1");
}

double covariance(const ProcessSpec& spec, double t, double s) {
  require_nonnegative_time(t, "covariance");
  require_nonnegative_time(s, "covariance");
  switch (spec.kind()) {
    case ProcessSpec::Kind::OrnsteinUhlenbeck:
      return 0.5 * spec.gamma() * std::exp(-spec.gamma() * std::abs(t - s));
    case ProcessSpec::Kind::FractionalGaussianNoise:
    case ProcessSpec::Kind::Wiener: {
      const double e = 2.0 * spec.hurst();
      return 0.5 * (std::pow(t, e) + std::pow(s, e) - std::pow(std::abs(t - s), e));
    }
    case ProcessSpec::Kind::WhiteNoise:
      throw std::invalid_argument(
          "covariance: white noise has a distributional kernel; use beta()");
  }
  throw std::logic_error("covariance: unreachable");
}

double beta(const ProcessSpec& spec, double t) {
  require_nonnegative_time(t, "beta");
  switch (spec.kind()) {
    case ProcessSpec::Kind::OrnsteinUhlenbeck:
      // (exp(-g t) + g t - 1)/g; expm1 keeps the small-t cancellation exact
      return t + std::expm1(-spec.gamma() * t) / spec.gamma();
    case ProcessSpec::Kind::FractionalGaussianNoise:
    case ProcessSpec::Kind::Wiener: {
      const double e = 2.0 * spec.hurst() + 2.0;
      return std::pow(t, e) / e;
    }
    case ProcessSpec::Kind::WhiteNoise:
      return t;
  }
  throw std::logic_error("beta: unreachable");
}

double beta_inverse(const ProcessSpec& spec, double b) {
  if (!(b >= 0.0)) throw std::domain_error("beta_inverse: negative value");
  if (b == 0.0) return 0.0;
  switch (spec.kind()) {
    case ProcessSpec::Kind::OrnsteinUhlenbeck: {
      // beta(t) > t - 1/gamma, so [0, b + 1/gamma] brackets the root.
      const double hi = b + 1.0 / spec.gamma();
      return find_root([&](double t) { return beta(spec, t) - b; }, 0.0, hi);
    }
    case ProcessSpec::Kind::FractionalGaussianNoise:
    case ProcessSpec::Kind::Wiener: {
      const double e = 2.0 * spec.hurst() + 2.0;
      return std::pow(e * b, 1.0 / e);
    }
    case ProcessSpec::Kind::WhiteNoise:
      return b;
  }
  throw std::logic_error("beta_inverse: unreachable");
}

PathSampler::PathSampler(const ProcessSpec& spec, const TimeGrid& grid)
    : spec_(spec), grid_(grid) {
  switch (spec_.kind()) {
    case ProcessSpec::Kind::OrnsteinUhlenbeck: {
      const double g = spec_.gamma();
      ar_coeff_ = std::exp(-g * grid_.dt());
      stationary_sd_ = std::sqrt(0.5 * g);
      innovation_sd_ = stationary_sd_ * std::sqrt(1.0 - ar_coeff_ * ar_coeff_);
      return;
    }
    case ProcessSpec::Kind::FractionalGaussianNoise:
    case ProcessSpec::Kind::Wiener: {
      // Covariance of the nodes t_1 .. t_n; t_0 = 0 is pinned at B = 0.
      dim_ = static_cast<std::size_t>(grid_.n_steps);
      chol_.assign(dim_ * dim_, 0.0);
      auto fill = [&](double jitter) {
        for (std::size_t i = 0; i < dim_; ++i) {
          for (std::size_t j = 0; j <= i; ++j) {
            const double v = covariance(spec_, grid_.node(i + 1), grid_.node(j + 1));
            chol_[i * dim_ + j] = v;
            chol_[j * dim_ + i] = v;
          }
          chol_[i * dim_ + i] += jitter;
        }
      };
      fill(0.0);
      if (cholesky_in_place(chol_, dim_)) return;
      double max_diag = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) {
        max_diag = std::max(max_diag, covariance(spec_, grid_.node(i + 1), grid_.node(i + 1)));
      }
      fill(1e-12 * max_diag);
      if (cholesky_in_place(chol_, dim_)) return;
      throw std::runtime_error(
          "PathSampler: covariance matrix numerically non-positive even after "
          "the documented 1e-12 jitter (" + spec_.name() + ")");
    }
    case ProcessSpec::Kind::WhiteNoise:
      throw std::invalid_argument(
          "PathSampler: white noise has no pathwise representation");
  }
}

std::size_t PathSampler::deviate_count() const {
  return spec_.kind() == ProcessSpec::Kind::OrnsteinUhlenbeck ? grid_.n_nodes() : dim_;
}

void PathSampler::path_from_deviates(std::span<const double> z,
                                     std::span<double> out) const {
  if (z.size() != deviate_count() || out.size() != grid_.n_nodes()) {
    throw std::invalid_argument("path_from_deviates: size mismatch");
  }
  if (spec_.kind() == ProcessSpec::Kind::OrnsteinUhlenbeck) {
    // stationary AR(1): exact OU law on the grid
    out[0] = stationary_sd_ * z[0];
    for (std::size_t k = 1; k < out.size(); ++k) {
      out[k] = ar_coeff_ * out[k - 1] + innovation_sd_ * z[k];
    }
    return;
  }
  out[0] = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j <= i; ++j) acc += chol_[i * dim_ + j] * z[j];
    out[i + 1] = acc;
  }
}

std::vector<double> PathSampler::sample(SeededRng& rng) const {
  std::vector<double> z(deviate_count());
  for (double& v : z) v = rng.normal();
  std::vector<double> path(grid_.n_nodes());
  path_from_deviates(z, path);
  return path;
}

double PathSampler::phase_from_path(std::span<const double> path) const {
  if (path.size() != grid_.n_nodes()) {
    throw std::invalid_argument("phase_from_path: size mismatch");
  }
  double acc = 0.5 * (path.front() + path.back());
  for (std::size_t k = 1; k + 1 < path.size(); ++k) acc += path[k];
  return acc * grid_.dt();
}

double PathSampler::sample_phase(SeededRng& rng) const {
  const std::vector<double> path = sample(rng);
  return phase_from_path(path);
}

std::vector<double> sample_path(const ProcessSpec& spec, const TimeGrid& grid,
                                SeededRng& rng) {
  return PathSampler(spec, grid).sample(rng);
}

double sample_phase(const ProcessSpec& spec, double t, const TimeGrid& grid,
                    SeededRng& rng) {
  require_nonnegative_time(t, "sample_phase");
  if (spec.kind() == ProcessSpec::Kind::WhiteNoise) {
    return std::sqrt(t) * rng.normal();  // beta(t) = t, exact in law
  }
  if (std::abs(grid.t_max - t) > 1e-12 * std::max(1.0, t)) {
    throw std::domain_error("sample_phase: grid does not span [0, t]");
  }
  return PathSampler(spec, grid).sample_phase(rng);
}

}  // namespace qdephase
