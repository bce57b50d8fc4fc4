#include "dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace qconic::detail
{

namespace
{

struct PlanDeleter {
    void operator()(fftw_plan_s *p) const
    {
        fftw_destroy_plan(p);
    }
};
using PlanHandle = std::unique_ptr<fftw_plan_s, PlanDeleter>;

fftw_plan plan_for(int n, DftSign sign)
{
    static std::mutex mutex;
    static std::map<std::pair<int, int>, PlanHandle> plans;

    std::lock_guard lock(mutex);
    const auto key = std::make_pair(n, static_cast<int>(sign));
    if (auto it = plans.find(key); it != plans.end()) {
        return it->second.get();
    }
    auto *buf = fftw_alloc_complex(static_cast<std::size_t>(n));
    fftw_plan p = fftw_plan_dft_1d(n, buf, buf, static_cast<int>(sign), FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (p == nullptr) {
        throw std::runtime_error("FFTW could not build a plan");
    }
    return plans.emplace(key, PlanHandle(p)).first->second.get();
}

} // namespace

void dft_inplace(std::span<cplx> data, DftSign sign)
{
    if (data.empty()) {
        return;
    }
    auto *ptr = reinterpret_cast<fftw_complex *>(data.data());
    fftw_execute_dft(plan_for(static_cast<int>(data.size()), sign), ptr, ptr);
}

std::vector<cplx> eval_on_circle(std::span<const cplx> coeffs, double r, int n)
{
    if (n < 1) {
        throw std::invalid_argument("circle sample count must be positive");
    }
    std::vector<cplx> buf(static_cast<std::size_t>(n), cplx{});
    double rp = 1.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        buf[k % buf.size()] += coeffs[k] * rp;
        rp *= r;
    }
    dft_inplace(buf, DftSign::backward);
    return buf;
}

} // namespace qconic::detail
