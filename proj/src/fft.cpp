#include "loclab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace loclab::detail {

namespace {

std::mutex plan_mutex;
std::map<std::pair<int, int>, fftw_plan> plan_cache;

fftw_plan get_plan(int n, int sign) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = plan_cache.find(key);
    if (it != plan_cache.end()) return it->second;
    // FFTW_ESTIMATE keeps the algorithm choice deterministic across runs.
    // FFTW_UNALIGNED lets us execute on arbitrary caller buffers.
    std::vector<std::complex<double>> scratch(static_cast<size_t>(n));
    auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
    fftw_plan plan = fftw_plan_dft_1d(n, p, p, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_cache.emplace(key, plan);
    return plan;
}

}  // namespace

void raw_dft(std::vector<std::complex<double>>& data, int sign) {
    const int n = static_cast<int>(data.size());
    fftw_plan plan = get_plan(n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, p, p);
}

}  // namespace loclab::detail
