//
// tuckerplan : mode subsets as bitmasks
//
// Modes are 0-based indices below 16. A ModeSet is a value type over a
// 32-bit mask; iteration yields members in ascending order.
//

#pragma once

#include <bit>
#include <cstdint>

namespace tuckerplan {

inline constexpr int kMaxModes = 16;

class ModeSet {
public:
  constexpr ModeSet() = default;
  constexpr explicit ModeSet(std::uint32_t bits) : bits_(bits) {}

  static constexpr ModeSet full(int n) {
    return ModeSet(n >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1);
  }
  static constexpr ModeSet single(int m) { return ModeSet(std::uint32_t{1} << m); }

  constexpr bool contains(int m) const { return (bits_ >> m) & 1u; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int count() const { return std::popcount(bits_); }
  constexpr int lowest() const { return std::countr_zero(bits_); }

  constexpr ModeSet with(int m) const { return ModeSet(bits_ | (std::uint32_t{1} << m)); }
  constexpr ModeSet without(int m) const { return ModeSet(bits_ & ~(std::uint32_t{1} << m)); }

  constexpr ModeSet operator|(ModeSet o) const { return ModeSet(bits_ | o.bits_); }
  constexpr ModeSet operator&(ModeSet o) const { return ModeSet(bits_ & o.bits_); }
  constexpr ModeSet operator-(ModeSet o) const { return ModeSet(bits_ & ~o.bits_); }
  constexpr bool operator==(const ModeSet&) const = default;

  constexpr std::uint32_t bits() const { return bits_; }

  class iterator {
  public:
    constexpr explicit iterator(std::uint32_t bits) : bits_(bits) {}
    constexpr int operator*() const { return std::countr_zero(bits_); }
    constexpr iterator& operator++() {
      bits_ &= bits_ - 1;
      return *this;
    }
    constexpr bool operator!=(const iterator& o) const { return bits_ != o.bits_; }

  private:
    std::uint32_t bits_;
  };

  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

private:
  std::uint32_t bits_ = 0;
};

} // namespace tuckerplan
