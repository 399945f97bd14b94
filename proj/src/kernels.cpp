#include "singheat/kernels.hpp"

#include <atomic>

#include "singheat/error.hpp"

namespace singheat {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::domain_too_small: return "domain-too-small";
    case ErrorKind::under_resolved: return "under-resolved";
    case ErrorKind::placement: return "placement";
    case ErrorKind::positivity: return "positivity-violation";
    case ErrorKind::invalid_sweep: return "invalid-sweep";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::inadmissible_input: return "inadmissible-input";
    case ErrorKind::singular_system: return "singular-system";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace singheat

namespace singheat::kernels {
namespace {

bool cpu_has(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(SINGHEAT_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(SINGHEAT_HAVE_NEON)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

const Table* lookup(Isa isa) {
  switch (isa) {
    case Isa::scalar: return &detail::scalar_table;
#if defined(SINGHEAT_HAVE_AVX2)
    case Isa::avx2: return &detail::avx2_table;
#endif
#if defined(SINGHEAT_HAVE_NEON)
    case Isa::neon: return &detail::neon_table;
#endif
    default: return nullptr;
  }
}

std::atomic<const Table*>& current() {
  static std::atomic<const Table*> ptr{lookup(best_available())};
  return ptr;
}

}  // namespace

std::string_view name(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool supported(Isa isa) { return lookup(isa) != nullptr && cpu_has(isa); }

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
    if (supported(isa)) out.push_back(isa);
  return out;
}

Isa best_available() {
  if (supported(Isa::avx2)) return Isa::avx2;
  if (supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

const Table& table(Isa isa) {
  if (!supported(isa))
    throw Error(ErrorKind::invalid_parameter,
                "kernel variant '" + std::string(name(isa)) + "' is not available on this CPU");
  return *lookup(isa);
}

const Table& active() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) { current().store(&table(isa), std::memory_order_release); }

}  // namespace singheat::kernels
