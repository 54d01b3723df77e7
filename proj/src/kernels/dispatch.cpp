#include "dematel/kernels.hpp"

#include <atomic>

namespace dematel::kernels {
namespace {

const Backend* detect() {
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) return &avx2_backend();
#endif
  return &scalar_backend();
}

std::atomic<const Backend*> g_override{nullptr};

}  // namespace

const Backend& active() {
  if (const Backend* forced = g_override.load(std::memory_order_acquire)) return *forced;
  static const Backend* detected = detect();
  return *detected;
}

std::vector<const Backend*> available_backends() {
  std::vector<const Backend*> backends{&scalar_backend()};
#if defined(__x86_64__) || defined(_M_X64)
  if (avx2_supported()) backends.push_back(&avx2_backend());
#endif
  return backends;
}

void set_active_for_testing(const Backend* backend) {
  g_override.store(backend, std::memory_order_release);
}

}  // namespace dematel::kernels
