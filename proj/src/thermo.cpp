#include "otto/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "otto/error.hpp"

namespace otto {

bool SpinParams::finite() const {
  for (double v : {b1, b2, jx, jy, jz, dz, gz}) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Spectrum::Spectrum(double jz, double r1, double r2) : jz_(jz), r1_(r1), r2_(r2) {
  if (!std::isfinite(jz) || !std::isfinite(r1) || !std::isfinite(r2)) {
    throw Error(ErrorCode::InvalidArgument, "spectrum parameters must be finite");
  }
  if (r1 < 0.0 || r2 < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "level shifts r1, r2 must be >= 0");
  }
}

Levels Spectrum::energies() const {
  return {jz_ + r1_, jz_ - r1_, -jz_ + r2_, -jz_ - r2_};
}

Spectrum reduce(const SpinParams& p) {
  if (!p.finite()) throw Error(ErrorCode::InvalidArgument, "spin parameters must be finite");
  const double r1 = std::sqrt((p.b1 + p.b2) * (p.b1 + p.b2) + (p.jx - p.jy) * (p.jx - p.jy) +
                              4.0 * p.gz * p.gz);
  const double r2 = std::sqrt((p.b1 - p.b2) * (p.b1 - p.b2) + (p.jx + p.jy) * (p.jx + p.jy) +
                              4.0 * p.dz * p.dz);
  return Spectrum(p.jz, r1, r2);
}

void require_positive_temperature(double t, const char* what) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw Error(ErrorCode::NonPositiveTemperature,
                std::string(what) + " must be a positive finite temperature, got " +
                    std::to_string(t));
  }
}

double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - std::numbers::ln2;
}

double ThermalState::z() const { return std::exp(log_z_); }

ThermalState thermal_state(const Spectrum& spec, double t) {
  require_positive_temperature(t, "temperature");
  ThermalState st;
  st.spectrum_ = spec;
  st.t_ = t;

  const Levels e = spec.energies();
  const double e_min = *std::min_element(e.begin(), e.end());
  Levels shifted{};
  double sum = 0.0;
  for (std::size_t n = 0; n < e.size(); ++n) {
    shifted[n] = (e[n] - e_min) / t;
    st.p_[n] = std::exp(-shifted[n]);
    sum += st.p_[n];
  }
  const double log_sum = std::log(sum);
  st.log_z_ = -e_min / t + log_sum;

  double u = 0.0;
  double s = 0.0;
  for (std::size_t n = 0; n < e.size(); ++n) {
    st.p_[n] /= sum;
    u += st.p_[n] * e[n];
    // -p ln p with ln p = -shifted - log_sum; exact zero weights contribute 0
    if (st.p_[n] > 0.0) s += st.p_[n] * (shifted[n] + log_sum);
  }
  st.u_ = u;
  st.s_ = s;
  return st;
}

double log_partition_closed_form(const Spectrum& spec, double t) {
  require_positive_temperature(t, "temperature");
  const double a = -spec.jz() / t + log_cosh(spec.r1() / t);
  const double b = spec.jz() / t + log_cosh(spec.r2() / t);
  const double hi = std::max(a, b);
  return std::numbers::ln2 + hi + std::log(std::exp(a - hi) + std::exp(b - hi));
}

double entropy_gibbs(const Spectrum& spec, double t) {
  require_positive_temperature(t, "temperature");
  const double jz = spec.jz();
  const double xa = (spec.r1() - jz) / t;
  const double xb = (spec.r1() + jz) / t;
  const double xc = (spec.r2() + jz) / t;
  const double xd = (spec.r2() - jz) / t;
  const double m = std::max({xa, -xb, xc, -xd});

  const double ea = std::exp(xa - m);
  const double eb = std::exp(-xb - m);
  const double ec = std::exp(xc - m);
  const double ed = std::exp(-xd - m);
  const double z_scaled = ea + eb + ec + ed;
  const double bracket = xa * ea - xb * eb + xc * ec - xd * ed;
  return -bracket / z_scaled + log_partition_closed_form(spec, t);
}

double entropy_three_level(double r1_over_t) {
  const double h = 0.5 * r1_over_t;
  return 2.0 * (std::numbers::ln2 + log_cosh(h) - h * std::tanh(h));
}

}  // namespace otto
