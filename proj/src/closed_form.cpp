#include "spinfp/closed_form.hpp"

#include <cmath>
#include <stdexcept>

namespace spinfp::closed_form {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx phase_minus_one(const DimensionlessParams& p) { return std::exp(2.0 * kI * p.theta()) - 1.0; }

}  // namespace

cplx t_quartet(const DimensionlessParams& p) {
  const double g = p.g();
  const cplx den = 64.0 + g * (16.0 * kI + phase_minus_one(p) * g);
  if (std::abs(den) == 0.0) throw std::logic_error("vanishing quartet denominator");
  return 64.0 / den;
}

cplx doublet_denominator(const DimensionlessParams& p) {
  const double g = p.g();
  const cplx w = phase_minus_one(p);
  return 4096.0 + g * (-2048.0 * kI + w * g * (-128.0 + 96.0 * kI * g + 9.0 * w * g * g));
}

Mat2 t_doublet(const DimensionlessParams& p) {
  const double g = p.g();
  const double s3 = std::sqrt(3.0);
  const cplx e = std::exp(2.0 * kI * p.theta());
  const cplx delta = doublet_denominator(p);
  if (std::abs(delta) == 0.0) throw std::logic_error("vanishing doublet denominator");

  Mat2 t;
  for (int incident = 0; incident < 2; ++incident) {
    const double a = 1.0 - incident;  // 1 when the incident channel is s_e2' = 0
    const double b = incident;
    t(0, incident) = (-64.0 * e * g * g * (2.0 * a + s3 * b) +
                      64.0 * (g - 8.0 * kI) * (2.0 * (4.0 * kI + g) * a + s3 * g * b)) /
                     delta;
    t(1, incident) = 64.0 / delta * (s3 * g * (-8.0 * kI + 3.0 * (e - 1.0) * g) * a + 8.0 * b * (8.0 - 3.0 * kI * g));
  }
  return t;
}

cplx det_t_minus_identity(const DimensionlessParams& p) { return (t_doublet(p) - Mat2::Identity()).determinant(); }

cplx det_t_minus_identity_factored(const DimensionlessParams& p) {
  const double g = p.g();
  const cplx w = phase_minus_one(p);
  return 3.0 / doublet_denominator(p) * w * g * g * g * (3.0 * g * w + 32.0 * kI);
}

ChannelAmplitudes transmission(const DimensionlessParams& p) {
  ChannelAmplitudes out;
  out.t_quartet = t_quartet(p);
  out.t_doublet = t_doublet(p);
  return out;
}

}  // namespace spinfp::closed_form
