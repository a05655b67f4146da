#ifndef ZDFLP_COMMON_HPP
#define ZDFLP_COMMON_HPP

#include <array>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zdflp {

// Axis directions R = {x, y}.
enum class Axis : int { X = 0, Y = 1 };

inline constexpr std::array<Axis, 2> kAxes{Axis::X, Axis::Y};

inline const char* axis_name(Axis a) { return a == Axis::X ? "x" : "y"; }

// Cardinal zone-bound directions S = {e, w, s, n}.
enum class Side : int { East = 0, West = 1, South = 2, North = 3 };

inline constexpr std::array<Side, 4> kSides{Side::East, Side::West, Side::South,
                                            Side::North};

inline const char* side_name(Side s) {
  switch (s) {
    case Side::East: return "e";
    case Side::West: return "w";
    case Side::South: return "s";
    default: return "n";
  }
}

// East/west bounds are x coordinates, south/north bounds are y coordinates.
inline Axis side_axis(Side s) {
  return (s == Side::East || s == Side::West) ? Axis::X : Axis::Y;
}

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationIssue {
  std::string code;
  std::string message;
};

struct ValidationError : std::runtime_error {
  std::vector<ValidationIssue> issues;

  explicit ValidationError(std::vector<ValidationIssue> list)
      : std::runtime_error(join(list)), issues(std::move(list)) {}

 private:
  static std::string join(const std::vector<ValidationIssue>& list) {
    std::string msg = "instance validation failed:";
    for (const auto& v : list) msg += "\n  [" + v.code + "] " + v.message;
    return msg;
  }
};

// Shortest round-trip decimal formatting. Used for every serialized number so
// identical inputs produce identical bytes.
inline std::string format_double(double v) {
  std::array<char, 40> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "0";
  return std::string(buf.data(), ptr);
}

// Unbiased uniform draw in [0, n). Uses the raw mt19937_64 stream so the
// sequence is identical on every platform.
template <typename Rng>
std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  if (n == 0) throw std::logic_error("uniform_index: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

}  // namespace zdflp

#endif  // ZDFLP_COMMON_HPP
