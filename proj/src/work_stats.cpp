// Copyright 2026 The entwit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "entwit/work_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <sstream>

#include "entwit/parallel.hpp"

namespace entwit {

int default_workers() {
  if (const char *env = std::getenv("ENTWIT_WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------

OperatorPath::OperatorPath(HermitianOperator start, HermitianOperator end,
                           double t_f, int steps, Interpolation interpolation)
    : start_(std::move(start)),
      end_(std::move(end)),
      t_f_(t_f),
      steps_(steps),
      interpolation_(interpolation) {
  require_same_register(start_.reg(), end_.reg(), "OperatorPath");
  if (steps_ < 1) throw InvalidArgument("operator path needs at least one step");
  if (!std::isfinite(t_f_) || t_f_ < 0.0) {
    throw InvalidArgument("operator path duration must be finite and non-negative");
  }
}

OperatorPath OperatorPath::from_schedule(const DrivingSchedule &s) {
  return {build_xxz(s.initial()), build_xxz(s.final()), s.t_f(), s.steps(),
          s.interpolation()};
}

HermitianOperator OperatorPath::at_time(double t) const {
  if (interpolation_ == Interpolation::quench_at_start) {
    return t > 0.0 ? end_ : start_;
  }
  const double s = t_f_ > 0.0 ? t / t_f_ : 0.0;
  return start_ + s * (end_ - start_);
}

HermitianOperator OperatorPath::integral() const {
  if (interpolation_ == Interpolation::quench_at_start) return t_f_ * end_;
  return (0.5 * t_f_) * (start_ + end_);
}

double OperatorPath::commutator_norm() const {
  return max_abs(commutator(start_.matrix(), end_.matrix()));
}

UnitaryOperator exact_evolution(const OperatorPath &path) {
  const double c = path.commutator_norm();
  if (c > kCommutationTolerance) {
    std::ostringstream os;
    os << "exact_evolution: path Hamiltonians do not commute (max |[H(a),H(b)]| = "
       << c << "); use trotter_evolution";
    throw InvalidArgument(os.str());
  }
  return evolution_operator(path.integral(), 1.0);
}

UnitaryOperator exact_evolution(const DrivingSchedule &s) {
  return exact_evolution(OperatorPath::from_schedule(s));
}

UnitaryOperator trotter_evolution(const OperatorPath &path, SamplePoint point) {
  const double dt = path.dt();
  const double offset = point == SamplePoint::midpoint ? 0.5 * dt : 0.0;
  UnitaryOperator u = UnitaryOperator::identity(path.reg());
  for (int k = 0; k < path.steps(); ++k) {
    u = evolution_operator(path.at_time(k * dt + offset), dt) * u;
  }
  const double err = u.unitarity_error();
  if (err > UnitaryOperator::kDefaultTolerance) {
    std::ostringstream os;
    os << "trotter_evolution: accumulated unitarity error " << err;
    throw NumericalError("unitarity", os.str());
  }
  return u;
}

UnitaryOperator trotter_evolution(const DrivingSchedule &s, SamplePoint point) {
  return trotter_evolution(OperatorPath::from_schedule(s), point);
}

UnitaryOperator protocol_unitary(const HermitianOperator &from,
                                 const HermitianOperator &to,
                                 const WorkProtocol &protocol) {
  const OperatorPath path(from, to, protocol.t_f, protocol.steps,
                          protocol.interpolation);
  switch (protocol.method) {
    case EvolutionMethod::exact:
      return exact_evolution(path);
    case EvolutionMethod::trotter:
      return trotter_evolution(path, protocol.sample_point);
    case EvolutionMethod::automatic:
      break;
  }
  if (path.commutator_norm() <= kCommutationTolerance) return exact_evolution(path);
  return trotter_evolution(path, protocol.sample_point);
}

// ---------------------------------------------------------------------------

TransitionMatrix::TransitionMatrix(SpectralDecomposition initial,
                                   SpectralDecomposition final,
                                   const UnitaryOperator &u)
    : initial_(std::move(initial)), final_(std::move(final)) {
  if (initial_.dim() != u.reg().dim() || final_.dim() != u.reg().dim()) {
    throw InvalidArgument("transition_matrix: dimension mismatch");
  }
  const Matrix amplitudes =
      final_.eigenvectors.adjoint() * u.matrix() * initial_.eigenvectors;
  q_ = amplitudes.cwiseAbs2();
}

double TransitionMatrix::stochasticity_error() const {
  const double rows = (q_.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (q_.colwise().sum().array() - 1.0).abs().maxCoeff();
  return std::max(rows, cols);
}

TransitionMatrix transition_matrix(const HermitianOperator &h_i,
                                   const HermitianOperator &h_f,
                                   const UnitaryOperator &u) {
  require_same_register(h_i.reg(), h_f.reg(), "transition_matrix");
  require_same_register(h_i.reg(), u.reg(), "transition_matrix");
  return {spectral_decompose(h_i), spectral_decompose(h_f), u};
}

double log_tasaki_average(double beta_i, double beta_f,
                          const TransitionMatrix &t) {
  if (!(beta_i > 0.0) || !(beta_f > 0.0) || !std::isfinite(beta_i) ||
      !std::isfinite(beta_f)) {
    throw InvalidArgument("tasaki_average: inverse temperatures must be positive and finite");
  }
  const RealVector &e_i = t.initial_spectrum().eigenvalues;
  const RealVector &e_f = t.final_spectrum().eigenvalues;
  const Eigen::Index d = e_i.size();

  // ln p_n with the ground-energy shift applied before exponentiating.
  const double e0 = e_i.minCoeff();
  double z_shifted = 0.0;
  for (Eigen::Index n = 0; n < d; ++n) z_shifted += std::exp(-beta_i * (e_i(n) - e0));
  const double log_z_shifted = std::log(z_shifted);

  // exponent(n, m) = ln p_n - (beta_f E_m^f - beta_i E_n^i)
  RealMatrix exponent(d, d);
  double peak = -std::numeric_limits<double>::infinity();
  for (Eigen::Index n = 0; n < d; ++n) {
    const double log_p = -beta_i * (e_i(n) - e0) - log_z_shifted;
    for (Eigen::Index m = 0; m < d; ++m) {
      exponent(m, n) = log_p - (beta_f * e_f(m) - beta_i * e_i(n));
      if (t.q()(m, n) > 0.0) peak = std::max(peak, exponent(m, n));
    }
  }
  double acc = 0.0;
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = 0; m < d; ++m) {
      acc += t.q()(m, n) * std::exp(exponent(m, n) - peak);
    }
  }
  return peak + std::log(acc);
}

double tasaki_average(double beta_i, double beta_f, const HermitianOperator &h_i,
                      const HermitianOperator &h_f, const UnitaryOperator &u) {
  return std::exp(log_tasaki_average(beta_i, beta_f, transition_matrix(h_i, h_f, u)));
}

double jarzynski_average(double beta, const HermitianOperator &h_i,
                         const HermitianOperator &h_f, const UnitaryOperator &u) {
  return tasaki_average(beta, beta, h_i, h_f, u);
}

double relative_entropy_via_work(const ThermalSpec &initial,
                                 const ThermalSpec &final,
                                 const UnitaryOperator &u) {
  require_same_register(initial.reg(), final.reg(), "relative_entropy_via_work");
  require_same_register(initial.reg(), u.reg(), "relative_entropy_via_work");
  const TransitionMatrix t(initial.spectrum(), final.spectrum(), u);
  const DensityMatrix rho = final.state();
  const double delta_beta_h = final.beta() * expectation(rho, final.hamiltonian()) -
                              initial.beta() * expectation(rho, initial.hamiltonian());
  // clamped like the direct route: rounding can land just below zero
  return std::max(0.0, -delta_beta_h - log_tasaki_average(initial.beta(), final.beta(), t));
}

// ---------------------------------------------------------------------------

double WorkDistribution::total_probability() const {
  double acc = 0.0;
  for (const auto &o : outcomes) acc += o.probability;
  return acc;
}

double WorkDistribution::mean_work() const {
  double acc = 0.0;
  for (const auto &o : outcomes) acc += o.probability * o.work;
  return acc;
}

double WorkDistribution::exponential_average() const {
  double acc = 0.0;
  for (const auto &o : outcomes) {
    if (o.probability > 0.0) {
      acc += o.probability * std::exp(-(beta_f * o.E_f - beta_i * o.E_i));
    }
  }
  return acc;
}

std::vector<std::pair<double, double>> WorkDistribution::by_work(double tolerance,
                                                                double floor) const {
  std::vector<std::pair<double, double>> raw;
  raw.reserve(outcomes.size());
  for (const auto &o : outcomes) {
    if (o.probability > floor) raw.emplace_back(o.work, o.probability);
  }
  std::sort(raw.begin(), raw.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto &[w, p] : raw) {
    if (!merged.empty() && w - merged.back().first <= tolerance) {
      merged.back().second += p;
    } else {
      merged.emplace_back(w, p);
    }
  }
  return merged;
}

WorkDistribution work_distribution(const ThermalSpec &initial,
                                   const ThermalSpec &final,
                                   const UnitaryOperator &u) {
  require_same_register(initial.reg(), final.reg(), "work_distribution");
  const TransitionMatrix t(initial.spectrum(), final.spectrum(), u);
  const RealVector p = initial.populations();
  const RealVector &e_i = initial.spectrum().eigenvalues;
  const RealVector &e_f = final.spectrum().eigenvalues;
  WorkDistribution dist;
  dist.beta_i = initial.beta();
  dist.beta_f = final.beta();
  dist.outcomes.reserve(static_cast<std::size_t>(p.size() * p.size()));
  for (Eigen::Index n = 0; n < p.size(); ++n) {
    for (Eigen::Index m = 0; m < p.size(); ++m) {
      dist.outcomes.push_back({n, m, e_i(n), e_f(m), e_f(m) - e_i(n), p(n) * t.q()(m, n)});
    }
  }
  return dist;
}

// ---------------------------------------------------------------------------

namespace {

double uniform01(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Eigen::Index draw(const std::vector<double> &cdf, double u) {
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u * cdf.back());
  return std::min<Eigen::Index>(static_cast<Eigen::Index>(it - cdf.begin()),
                                static_cast<Eigen::Index>(cdf.size()) - 1);
}

struct BlockStats {
  double sum = 0.0;
  double sum_sq = 0.0;
};

}  // namespace

SampleResult sample_tpm(const ThermalSpec &initial, const ThermalSpec &final,
                        const UnitaryOperator &u, std::uint64_t count,
                        std::uint64_t seed, int workers, bool keep_samples) {
  if (count < 1) throw InvalidArgument("sample_tpm: count must be at least 1");
  require_same_register(initial.reg(), final.reg(), "sample_tpm");
  const TransitionMatrix t(initial.spectrum(), final.spectrum(), u);
  const Eigen::Index d = t.q().rows();
  const RealVector &e_i = initial.spectrum().eigenvalues;
  const RealVector &e_f = final.spectrum().eigenvalues;
  const double beta_i = initial.beta();
  const double beta_f = final.beta();

  std::vector<double> initial_cdf(static_cast<std::size_t>(d));
  {
    const RealVector p = initial.populations();
    double acc = 0.0;
    for (Eigen::Index n = 0; n < d; ++n) initial_cdf[n] = acc += p(n);
  }
  std::vector<std::vector<double>> column_cdf(static_cast<std::size_t>(d));
  for (Eigen::Index n = 0; n < d; ++n) {
    auto &cdf = column_cdf[n];
    cdf.resize(static_cast<std::size_t>(d));
    double acc = 0.0;
    for (Eigen::Index m = 0; m < d; ++m) cdf[m] = acc += t.q()(m, n);
  }

  // Values are accumulated relative to the exact average so that
  // exp(-(beta_f E_f - beta_i E_i)) stays representable.
  const double log_exact = log_tasaki_average(beta_i, beta_f, t);

  const std::uint64_t blocks = (count + kSampleBlock - 1) / kSampleBlock;
  std::vector<BlockStats> stats(blocks);
  SampleResult result;
  if (keep_samples) result.samples.resize(count);

  parallel_for(blocks, workers, [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    const std::uint64_t first = b * kSampleBlock;
    const std::uint64_t last = std::min(count, first + kSampleBlock);
    BlockStats s;
    for (std::uint64_t k = first; k < last; ++k) {
      const Eigen::Index n = draw(initial_cdf, uniform01(rng));
      const Eigen::Index m = draw(column_cdf[n], uniform01(rng));
      const double x = beta_f * e_f(m) - beta_i * e_i(n);
      const double v = std::exp(-x - log_exact);
      s.sum += v;
      s.sum_sq += v * v;
      if (keep_samples) result.samples[k] = {n, m, e_i(n), e_f(m), e_f(m) - e_i(n), x};
    }
    stats[b] = s;
  });

  BlockStats total;
  for (const auto &s : stats) {
    total.sum += s.sum;
    total.sum_sq += s.sum_sq;
  }
  const double nc = static_cast<double>(count);
  const double mean_scaled = total.sum / nc;
  double stderr_scaled = 0.0;
  if (count > 1) {
    const double var = std::max(0.0, (total.sum_sq - nc * mean_scaled * mean_scaled) / (nc - 1.0));
    stderr_scaled = std::sqrt(var / nc);
  }
  const double scale = std::exp(log_exact);
  EstimatorSummary &sum = result.summary;
  sum.count = count;
  sum.mean = scale * mean_scaled;
  sum.std_error = scale * stderr_scaled;
  sum.exact = scale;
  const double dev = mean_scaled - 1.0;
  if (stderr_scaled > 0.0) {
    sum.z_score = dev / stderr_scaled;
  } else {
    sum.z_score = std::abs(dev) <= 1e-12 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), dev);
  }
  return result;
}

}  // namespace entwit
