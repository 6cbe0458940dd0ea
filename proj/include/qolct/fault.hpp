#pragma once

#include <optional>
#include <string_view>

// Deliberate defects for mutation testing of the verification suite.
namespace qolct::fault {

enum class Fault {
  none,
  right_kernel_sign,   // conjugates the right-hand chirp factors of the QOLCT
  drop_normalization,  // omits the 1/sqrt(2 pi b) kernel normalization
  kernel_order,        // applies the left output chirp on the right
};

void inject(Fault f);
Fault active();
bool is_active(Fault f);

std::string_view name(Fault f);
std::optional<Fault> parse(std::string_view text);

class Scoped {
 public:
  explicit Scoped(Fault f) : previous_(active()) { inject(f); }
  ~Scoped() { inject(previous_); }
  Scoped(const Scoped&) = delete;
  Scoped& operator=(const Scoped&) = delete;

 private:
  Fault previous_;
};

}  // namespace qolct::fault
