#include "wga/fft.hpp"

#include <fftw3.h>

#include <cstddef>
#include <mutex>
#include <stdexcept>

namespace wga {

void dft_nd(std::vector<std::complex<double>>& data, const std::vector<int>& dims, int sign) {
    std::size_t total = 1;
    for (int d : dims) {
        if (d <= 0) throw std::invalid_argument("dft_nd: dimensions must be positive");
        total *= static_cast<std::size_t>(d);
    }
    if (data.size() != total) throw std::invalid_argument("dft_nd: data size does not match dims");
    if (total == 1) return;

    // FFTW planning is not thread-safe; execution is.
    static std::mutex plan_mutex;
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), ptr, ptr,
                             sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    if (!plan) throw std::runtime_error("dft_nd: FFTW plan creation failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex);
        fftw_destroy_plan(plan);
    }
}

} // namespace wga
