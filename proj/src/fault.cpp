#include "qolct/fault.hpp"

#include <atomic>

namespace qolct::fault {

namespace {
std::atomic<Fault> g_active{Fault::none};
}

void inject(Fault f) { g_active.store(f); }
Fault active() { return g_active.load(); }
bool is_active(Fault f) { return f != Fault::none && g_active.load() == f; }

std::string_view name(Fault f) {
  switch (f) {
    case Fault::none: return "none";
    case Fault::right_kernel_sign: return "right-kernel-sign";
    case Fault::drop_normalization: return "drop-normalization";
    case Fault::kernel_order: return "kernel-order";
  }
  return "none";
}

std::optional<Fault> parse(std::string_view text) {
  for (Fault f : {Fault::none, Fault::right_kernel_sign, Fault::drop_normalization, Fault::kernel_order}) {
    if (text == name(f)) return f;
  }
  return std::nullopt;
}

}  // namespace qolct::fault
