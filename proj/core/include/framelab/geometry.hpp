#pragma once

#include <cstdint>
#include <string>

namespace framelab {

// Distance convention on the finite index set. Circular geometry models
// systems indexed by the cyclic group of the given period.
class IndexGeometry {
 public:
  enum class Kind { kLinear, kCircular };

  static IndexGeometry linear() { return IndexGeometry(Kind::kLinear, 0); }
  static IndexGeometry circular(std::int64_t period);

  Kind kind() const noexcept { return kind_; }
  std::int64_t period() const noexcept { return period_; }
  std::uint64_t distance(std::int64_t k, std::int64_t l) const noexcept;

  std::string describe() const;

  friend bool operator==(const IndexGeometry&, const IndexGeometry&) = default;

 private:
  IndexGeometry(Kind kind, std::int64_t period) : kind_(kind), period_(period) {}

  Kind kind_;
  std::int64_t period_;
};

}  // namespace framelab
