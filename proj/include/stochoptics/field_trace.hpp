#ifndef STOCHOPTICS_FIELD_TRACE_HPP
#define STOCHOPTICS_FIELD_TRACE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "stochoptics/rng.hpp"

namespace stochoptics {

enum class BeamFamily { thermal, laser, jittered_laser, kspace_product, periodic_thermal };

std::string_view to_string(BeamFamily family);
BeamFamily parse_family(std::string_view name);

/// Model family and its parameters.  nu is photons per coherence time, gamma
/// the linewidth (1/s), jitter_band the detuning band Delta omega (rad/s) and
/// jitter_corr_time the correlation time of the detuning wander (s).
struct BeamModelSpec {
  BeamFamily family = BeamFamily::thermal;
  double nu = 0.0;
  double gamma = 1.0;
  double jitter_band = 0.0;
  double jitter_corr_time = 0.0;

  /// Throws DomainError on invalid parameters.  A jittered laser needs
  /// jitter_band > gamma and jitter_corr_time > 1 / gamma, except that
  /// jitter_band == 0 is accepted as the jitter-free limit.
  void validate() const;

  /// Stationary photon flux E|alpha|^2 = nu gamma / 4.
  double mean_flux() const { return nu * gamma / 4.0; }
};

/// nu = kappa mu (4 / gamma) for a cavity of mean photon number mu and output
/// coupling rate kappa.
double nu_from_cavity(double kappa, double mu, double gamma);

/// One sampled realisation of the rotating-frame amplitude alpha(t_j),
/// t_j = j dt, in units of sqrt(photons / s).
struct FieldTrace {
  Eigen::VectorXcd samples;
  double dt = 0.0;
  BeamModelSpec model;
  std::uint64_t master_seed = 0;
  std::uint64_t trace_index = 0;
  /// First sample that time-domain estimators may use.  Filters raise it past
  /// their start-up transient; the spectrum always uses the whole record.
  std::size_t analysis_start = 0;

  std::size_t size() const { return static_cast<std::size_t>(samples.size()); }
  double duration() const { return dt * static_cast<double>(size()); }
  std::size_t analysis_size() const { return size() - analysis_start; }
  RngStream stream() const { return RngStream::for_trace(master_seed, trace_index); }

  /// Throws DomainError unless dt > 0, n >= 2, every sample is finite and
  /// analysis_start leaves at least two samples.
  void validate() const;
};

/// A lazily generated, indexable collection of traces.  Members are produced
/// on demand so that ensembles larger than memory can be folded over.
class TraceEnsemble {
 public:
  using Maker = std::function<FieldTrace(std::size_t)>;

  TraceEnsemble() = default;
  TraceEnsemble(std::size_t count, Maker maker) : count_(count), maker_(std::move(maker)) {}

  static TraceEnsemble from_traces(std::vector<FieldTrace> traces);

  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  FieldTrace operator[](std::size_t i) const { return maker_(i); }

  /// Lazily applies `f` to every member.
  TraceEnsemble transformed(std::function<FieldTrace(FieldTrace)> f) const;

 private:
  std::size_t count_ = 0;
  Maker maker_;
};

}  // namespace stochoptics

#endif  // STOCHOPTICS_FIELD_TRACE_HPP
