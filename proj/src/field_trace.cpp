#include "stochoptics/field_trace.hpp"

#include <cmath>
#include <string>

#include "stochoptics/errors.hpp"

namespace stochoptics {

std::string_view to_string(BeamFamily family) {
  switch (family) {
    case BeamFamily::thermal: return "thermal";
    case BeamFamily::laser: return "laser";
    case BeamFamily::jittered_laser: return "jittered_laser";
    case BeamFamily::kspace_product: return "kspace_product";
    case BeamFamily::periodic_thermal: return "periodic_thermal";
  }
  return "unknown";
}

BeamFamily parse_family(std::string_view name) {
  for (auto f : {BeamFamily::thermal, BeamFamily::laser, BeamFamily::jittered_laser,
                 BeamFamily::kspace_product, BeamFamily::periodic_thermal}) {
    if (name == to_string(f)) return f;
  }
  if (name == "jittered-laser") return BeamFamily::jittered_laser;
  if (name == "kspace-product") return BeamFamily::kspace_product;
  if (name == "periodic-thermal") return BeamFamily::periodic_thermal;
  throw ConfigError("unknown model family '" + std::string(name) + "'");
}

void BeamModelSpec::validate() const {
  detail::require_non_negative(nu, "nu");
  detail::require_positive(gamma, "gamma");
  if (family != BeamFamily::jittered_laser) return;
  detail::require_non_negative(jitter_band, "jitter_band");
  if (jitter_band == 0.0) return;
  if (!(jitter_band > gamma)) {
    throw DomainError("jittered laser needs jitter_band > gamma (got " + std::to_string(jitter_band) +
                      " vs " + std::to_string(gamma) + ")");
  }
  detail::require_positive(jitter_corr_time, "jitter_corr_time");
  if (!(jitter_corr_time > 1.0 / gamma)) {
    throw DomainError("jittered laser needs jitter_corr_time > 1/gamma");
  }
}

double nu_from_cavity(double kappa, double mu, double gamma) {
  detail::require_non_negative(kappa, "kappa");
  detail::require_non_negative(mu, "mu");
  detail::require_positive(gamma, "gamma");
  return kappa * mu * 4.0 / gamma;
}

void FieldTrace::validate() const {
  detail::require_positive(dt, "dt");
  if (samples.size() < 2) throw DomainError("a trace needs at least two samples");
  if (analysis_start + 2 > size()) throw DomainError("analysis window of the trace is shorter than two samples");
  if (!samples.allFinite()) throw DomainError("trace contains non-finite samples");
}

TraceEnsemble TraceEnsemble::from_traces(std::vector<FieldTrace> traces) {
  auto shared = std::make_shared<const std::vector<FieldTrace>>(std::move(traces));
  return TraceEnsemble(shared->size(), [shared](std::size_t i) { return (*shared)[i]; });
}

TraceEnsemble TraceEnsemble::transformed(std::function<FieldTrace(FieldTrace)> f) const {
  return TraceEnsemble(count_, [maker = maker_, f = std::move(f)](std::size_t i) { return f(maker(i)); });
}

}  // namespace stochoptics
