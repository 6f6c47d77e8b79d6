#pragma once

#include <complex>
#include <vector>

namespace skdv {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Thin wrapper over FFTW with a process-wide plan cache.
///
/// Plans are created once per (size, direction) under a mutex and executed
/// through the new-array interface, so concurrent calls are safe.
namespace fft {

/// Unnormalized forward transform: F_k = sum_j f_j exp(-2 pi i jk/n).
void forward(const cplx* in, cplx* out, int n);
/// Inverse transform including the 1/n factor.
void inverse(const cplx* in, cplx* out, int n);

CVec forward(const CVec& in);
CVec inverse(const CVec& in);

}  // namespace fft
}  // namespace skdv
