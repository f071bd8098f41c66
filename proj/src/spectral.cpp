#include "geomphase/spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace geomphase::spectral {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
};

// Plans are created once per size under a lock (the FFTW planner is not
// thread-safe) and executed through the new-array interface, which is.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.inverse);
    }
  }

  const PlanPair& get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;

    const int size = static_cast<int>(n);
    auto* in = fftw_alloc_complex(n);
    auto* out = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair plans;
    plans.forward = fftw_plan_dft_1d(size, in, out, FFTW_FORWARD, flags);
    plans.inverse = fftw_plan_dft_1d(size, in, out, FFTW_BACKWARD, flags);
    fftw_free(in);
    fftw_free(out);
    if (plans.forward == nullptr || plans.inverse == nullptr) {
      throw std::runtime_error("FFTW failed to create a plan");
    }
    return plans_.emplace(n, plans).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(fftw_plan plan, std::span<const cplx> in, std::span<cplx> out) {
  if (in.size() != out.size()) {
    throw std::invalid_argument("spectral transform: input and output sizes differ");
  }
  // Plans are out-of-place, so aliased calls go through a scratch copy.
  // FFTW does not modify the input of an out-of-place complex transform.
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  if (in.data() == out.data()) {
    CVector scratch(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(scratch.data()), dst);
    return;
  }
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  fftw_execute_dft(plan, src, dst);
}

}  // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) {
  execute(cache().get(in.size()).forward, in, out);
}

void inverse(std::span<const cplx> in, std::span<cplx> out) {
  execute(cache().get(in.size()).inverse, in, out);
}

}  // namespace geomphase::spectral
