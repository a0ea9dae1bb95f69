#include "otto/cycle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "otto/error.hpp"

namespace otto {

namespace {

// cosh(R1/T) e^{-Jz/T}, sinh(R1/T) e^{-Jz/T}, cosh(R2/T) e^{Jz/T},
// sinh(R2/T) e^{Jz/T}, all multiplied by a common factor e^{-m}. Every
// closed form below is a ratio of these, so the factor cancels.
struct HyperbolicWeights {
  double c1, s1, c2, s2;
};

HyperbolicWeights weights(const Spectrum& spec, double t) {
  const double a = -spec.jz() / t + log_cosh(spec.r1() / t);
  const double b = spec.jz() / t + log_cosh(spec.r2() / t);
  const double m = std::max(a, b);
  HyperbolicWeights w{};
  w.c1 = std::exp(a - m);
  w.s1 = w.c1 * std::tanh(spec.r1() / t);
  w.c2 = std::exp(b - m);
  w.s2 = w.c2 * std::tanh(spec.r2() / t);
  return w;
}

// Mean energy of the levels of `levels` under populations described by w.
double mean_energy(const Spectrum& levels, const HyperbolicWeights& w) {
  const double jz = levels.jz();
  return ((jz * w.c1 - levels.r1() * w.s1) - (jz * w.c2 + levels.r2() * w.s2)) / (w.c1 + w.c2);
}

// Work of an adiabat from `from` to `to` with populations frozen at w.
double adiabat_work(const Spectrum& from, const Spectrum& to, const HyperbolicWeights& w) {
  return ((to.jz() - from.jz()) * (w.c1 - w.c2) - (to.r1() - from.r1()) * w.s1 -
          (to.r2() - from.r2()) * w.s2) /
         (w.c1 + w.c2);
}

int sign_of(double x, double tol) {
  if (std::abs(x) <= tol) return 0;
  return x > 0.0 ? 1 : -1;
}

}  // namespace

void validate(const CycleSpec& cycle) {
  require_positive_temperature(cycle.tc, "tc");
  require_positive_temperature(cycle.th, "th");
  if (cycle.tc > cycle.th) {
    std::ostringstream msg;
    msg << "require tc <= th, got tc=" << cycle.tc << " th=" << cycle.th;
    throw Error(ErrorCode::BadTemperatures, msg.str());
  }
}

std::string_view to_string(OperatingMode mode) {
  switch (mode) {
    case OperatingMode::Engine: return "engine";
    case OperatingMode::Refrigerator: return "refrigerator";
    case OperatingMode::Heater: return "heater";
    case OperatingMode::Accelerator: return "accelerator";
    case OperatingMode::Idle: return "idle";
  }
  return "idle";
}

std::optional<OperatingMode> parse_mode(std::string_view name) {
  for (auto m : {OperatingMode::Engine, OperatingMode::Refrigerator, OperatingMode::Heater,
                 OperatingMode::Accelerator, OperatingMode::Idle}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

double stroke_work_general(std::span<const double> probs, std::span<const double> e_from,
                           std::span<const double> e_to) {
  if (probs.size() != e_from.size() || probs.size() != e_to.size()) {
    throw Error(ErrorCode::LengthMismatch, "occupation and level lists differ in length");
  }
  double w = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) w += probs[n] * (e_to[n] - e_from[n]);
  return w;
}

double stroke_heat_general(std::span<const double> levels, std::span<const double> p_from,
                           std::span<const double> p_to) {
  if (levels.size() != p_from.size() || levels.size() != p_to.size()) {
    throw Error(ErrorCode::LengthMismatch, "level and occupation lists differ in length");
  }
  double q = 0.0;
  for (std::size_t n = 0; n < levels.size(); ++n) q += levels[n] * (p_to[n] - p_from[n]);
  return q;
}

double w_in(const CycleSpec& cycle) {
  validate(cycle);
  return adiabat_work(cycle.spec_i, cycle.spec_f, weights(cycle.spec_i, cycle.tc));
}

double w_out(const CycleSpec& cycle) {
  validate(cycle);
  return adiabat_work(cycle.spec_f, cycle.spec_i, weights(cycle.spec_f, cycle.th));
}

double q_h(const CycleSpec& cycle) {
  validate(cycle);
  return mean_energy(cycle.spec_f, weights(cycle.spec_f, cycle.th)) -
         mean_energy(cycle.spec_f, weights(cycle.spec_i, cycle.tc));
}

double q_c(const CycleSpec& cycle) {
  validate(cycle);
  return mean_energy(cycle.spec_i, weights(cycle.spec_i, cycle.tc)) -
         mean_energy(cycle.spec_i, weights(cycle.spec_f, cycle.th));
}

OperatingMode classify(double q_c, double w, double q_h, double zero_tol) {
  const int sc = sign_of(q_c, zero_tol);
  const int sw = sign_of(w, zero_tol);
  const int sh = sign_of(q_h, zero_tol);
  if (sc == 0 || sw == 0 || sh == 0) return OperatingMode::Idle;
  if (sc < 0 && sw < 0 && sh > 0) return OperatingMode::Engine;
  if (sc > 0 && sw > 0 && sh < 0) return OperatingMode::Refrigerator;
  if (sc < 0 && sw > 0 && sh < 0) return OperatingMode::Heater;
  if (sc < 0 && sw > 0 && sh > 0) return OperatingMode::Accelerator;
  std::ostringstream msg;
  msg << "sign pattern (q_c, w, q_h) = (" << q_c << ", " << w << ", " << q_h
      << ") violates the first or second law";
  throw Error(ErrorCode::ForbiddenModePattern, msg.str());
}

namespace {

CycleResult finish(CycleResult r, double zero_tol) {
  r.mode = classify(r.q_c, r.w, r.q_h, zero_tol);
  if (r.mode == OperatingMode::Engine) r.efficiency = std::abs(r.w) / r.q_h;
  if (r.mode == OperatingMode::Refrigerator) r.cop = r.q_c / r.w;
  return r;
}

}  // namespace

CycleResult analyze(const CycleSpec& cycle, double zero_tol) {
  validate(cycle);
  if (!(zero_tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "zero_tol must be >= 0");
  CycleResult r;
  r.w_in = w_in(cycle);
  r.w_out = w_out(cycle);
  r.w = r.w_in + r.w_out;
  r.q_h = q_h(cycle);
  r.q_c = q_c(cycle);
  return finish(r, zero_tol);
}

CycleResult reversed(const CycleResult& forward, double zero_tol) {
  CycleResult r;
  r.w_in = -forward.w_out;
  r.w_out = -forward.w_in;
  r.w = r.w_in + r.w_out;
  r.q_h = -forward.q_h;
  r.q_c = -forward.q_c;
  return finish(r, zero_tol);
}

CycleResult analyze_reversed(const CycleSpec& cycle, double zero_tol) {
  return reversed(analyze(cycle, zero_tol), zero_tol);
}

namespace {

void check_bath_pair(double tc, double th) {
  if (!(tc > 0.0) || !(th > 0.0) || tc > th || !std::isfinite(tc) || !std::isfinite(th)) {
    std::ostringstream msg;
    msg << "require 0 < tc <= th, got tc=" << tc << " th=" << th;
    throw Error(ErrorCode::BadTemperatures, msg.str());
  }
}

}  // namespace

double carnot_efficiency(double tc, double th) {
  check_bath_pair(tc, th);
  return 1.0 - tc / th;
}

double novikov_efficiency(double tc, double th) {
  check_bath_pair(tc, th);
  return 1.0 - std::sqrt(tc / th);
}

}  // namespace otto
