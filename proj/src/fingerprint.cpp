#include "pclone/fingerprint.hpp"

namespace pclone {

CloneFingerprint CloneFingerprint::total_part() const {
  CloneFingerprint r(max_arity_);
  for (int n = 1; n <= max_arity_; ++n) {
    std::uint32_t points = std::uint32_t(1) << n;
    std::uint64_t base = 0;
    for (std::uint32_t x = 0; x < points; ++x) base += pow3(int(x));
    std::uint64_t masks = std::uint64_t(1) << points;
    for (std::uint64_t v = 0; v < masks; ++v) {
      std::uint64_t code = base;
      for (std::uint32_t x = 0; x < points; ++x)
        if ((v >> x) & 1) code += pow3(int(x));
      if (test_code(n, code)) r.insert_code(n, code);
    }
  }
  return r;
}

}  // namespace pclone
