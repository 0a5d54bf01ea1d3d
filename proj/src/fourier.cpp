#include "heavenly/fourier.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace heavenly::fft {

namespace {

struct Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

std::mutex plan_mutex;

// Plans are created once per size and reused; execution goes through the
// new-array interface, which is safe from multiple threads.
Plans plans_for(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  std::vector<double> r(n);
  std::vector<std::complex<double>> z(n / 2 + 1);
  Plans p;
  p.fwd = fftw_plan_dft_r2c_1d(n, r.data(), reinterpret_cast<fftw_complex*>(z.data()),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(z.data()), r.data(),
                               FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache[n] = p;
  return p;
}

}  // namespace

void forward(const double* in, std::complex<double>* out, int n) {
  Plans p = plans_for(n);
  std::vector<double> tmp(in, in + n);
  fftw_execute_dft_r2c(p.fwd, tmp.data(), reinterpret_cast<fftw_complex*>(out));
}

void backward(const std::complex<double>* in, double* out, int n) {
  Plans p = plans_for(n);
  std::vector<std::complex<double>> tmp(in, in + n / 2 + 1);  // c2r clobbers its input
  fftw_execute_dft_c2r(p.bwd, reinterpret_cast<fftw_complex*>(tmp.data()), out);
  const double scale = 1.0 / n;
  for (int j = 0; j < n; ++j) out[j] *= scale;
}

}  // namespace heavenly::fft
