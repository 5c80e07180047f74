#pragma once

#include "spinfp/params.hpp"
#include "spinfp/spin_algebra.hpp"

namespace spinfp {

/// Transmission and reflection amplitudes per total-spin sector.
/// Doublet matrices are indexed (outgoing s_e2 row, incident s_e2' column).
struct ChannelAmplitudes {
  cplx t_quartet{1.0, 0.0};
  Mat2 t_doublet = Mat2::Identity();
  cplx r_quartet{0.0, 0.0};
  Mat2 r_doublet = Mat2::Zero();
};

namespace closed_form {

/// s = 3/2 amplitude: 64 / (64 + g [16i + (e^{2i theta} - 1) g]).
cplx t_quartet(const DimensionlessParams& p);

/// Common denominator of the s = 1/2 amplitudes.
cplx doublet_denominator(const DimensionlessParams& p);

/// s = 1/2 transmission matrix t(s_e2, s_e2').
Mat2 t_doublet(const DimensionlessParams& p);

/// det(t_doublet - I), evaluated from the matrix.
cplx det_t_minus_identity(const DimensionlessParams& p);

/// (3/delta)(e^{2i theta} - 1) g^3 [3 g (e^{2i theta} - 1) + 32 i], the factored form.
cplx det_t_minus_identity_factored(const DimensionlessParams& p);

/// Transmission amplitudes only; reflections are left at zero.
ChannelAmplitudes transmission(const DimensionlessParams& p);

}  // namespace closed_form
}  // namespace spinfp
