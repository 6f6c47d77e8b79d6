#include "skdv/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace skdv::fft {
namespace {

std::mutex g_plan_mutex;

fftw_plan plan_for(int n, int sign) {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    fftw_complex* a = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_complex* b = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(n, a, b, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    cache.emplace(key, p);
    return p;
}

void execute(const cplx* in, cplx* out, int n, int sign) {
    fftw_plan p = plan_for(n, sign);
    if (in == out) {
        std::vector<cplx> tmp(in, in + n);
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                         reinterpret_cast<fftw_complex*>(out));
        return;
    }
    // fftw never writes to the input of an out-of-place complex transform.
    auto* i = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in));
    auto* o = reinterpret_cast<fftw_complex*>(out);
    fftw_execute_dft(p, i, o);
}

}  // namespace

void forward(const cplx* in, cplx* out, int n) { execute(in, out, n, FFTW_FORWARD); }

void inverse(const cplx* in, cplx* out, int n) {
    execute(in, out, n, FFTW_BACKWARD);
    const double s = 1.0 / n;
    for (int k = 0; k < n; ++k) out[k] *= s;
}

CVec forward(const CVec& in) {
    CVec out(in.size());
    forward(in.data(), out.data(), static_cast<int>(in.size()));
    return out;
}

CVec inverse(const CVec& in) {
    CVec out(in.size());
    inverse(in.data(), out.data(), static_cast<int>(in.size()));
    return out;
}

}  // namespace skdv::fft
