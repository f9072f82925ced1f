#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "souvlaki/graph.hpp"
#include "souvlaki/numeric.hpp"

// Coordinates of a single meatball: a window of the binary tiling W (width doubling per row)
// fibered with the rooted ternary tree, truncated at height k over a base path.
namespace souvlaki::topology {

/// Vertex of the rooted ternary tree, as a digit string over '0'..'2'.
struct TAddress {
  std::string digits;

  int height() const noexcept { return static_cast<int>(digits.size()); }
  TAddress parent() const;
  TAddress child(int c) const;

  /// Base-3 value with the first digit most significant; exactly 3^height values per height.
  std::int64_t index() const;
  static TAddress from_index(std::int64_t index, int height);

  auto operator<=>(const TAddress&) const = default;
};

/// Vertex of the binary tiling: row i holds positions [0, base_len * 2^i).
struct WVertex {
  int row = 0;
  BigInt pos = 0;

  WVertex parent() const;
  WVertex child(int b) const;
  /// Base position below this vertex: pos / 2^row.
  BigInt base() const { return pos >> row; }

  std::strong_ordering operator<=>(const WVertex&) const = default;
  bool operator==(const WVertex&) const = default;
};

/// Vertex of the height-matched product; height(t) == row(w).
struct H3Vertex {
  TAddress t;
  WVertex w;

  int row() const noexcept { return w.row; }
  H3Vertex parent() const;
  H3Vertex child(int t_digit, int w_bit) const;
  H3Vertex shifted(const BigInt& delta) const;

  std::strong_ordering operator<=>(const H3Vertex&) const = default;
  bool operator==(const H3Vertex&) const = default;
};

/// Shape of the meatball M_k: base path L (k^2) | A (k^4) | R ((k-1)^2), height cap k.
struct MeatballSpec {
  int k = 1;
  int d = 7;

  MeatballSpec() = default;
  MeatballSpec(int k_, int d_ = 7);

  std::int64_t len_left() const noexcept { return std::int64_t{k} * k; }
  std::int64_t len_middle() const noexcept { return std::int64_t{k} * k * k * k; }
  std::int64_t len_right() const noexcept { return std::int64_t{k - 1} * (k - 1); }
  /// Width of L + A, i.e. the base of the left piece.
  std::int64_t left_width() const noexcept { return len_left() + len_middle(); }
  std::int64_t base_len() const noexcept { return left_width() + len_right(); }
  int height_cap() const noexcept { return k; }

  Segment segment_of_base(const BigInt& base) const;
  Segment segment_of_base(std::int64_t base) const noexcept {
    return base < len_left() ? Segment::L : base < left_width() ? Segment::A : Segment::R;
  }
};

enum class Side { Left, Right };
enum class Part { Full, LeftOnly };

/// Throws CoordinateError unless v is a vertex of M_k.
void validate(const MeatballSpec& spec, const H3Vertex& v);
bool is_valid(const MeatballSpec& spec, const H3Vertex& v);

std::vector<H3Vertex> neighbors_in_meatball(const MeatballSpec& spec, const H3Vertex& v);
Side side_of(const MeatballSpec& spec, const H3Vertex& v);
Segment segment_of(const MeatballSpec& spec, const H3Vertex& v);

/// Left endpoints of the edges between the left and right pieces: one per row and t.
std::vector<H3Vertex> boundary_Bk(const MeatballSpec& spec);

/// Vertex count of the full meatball or its left piece, without materializing.
BigInt meatball_size(const MeatballSpec& spec, Part part);

/// Explicit graph. Vertex ids enumerate rows, then t in index order, then position.
Graph materialize_meatball(const MeatballSpec& spec, Part part, const Budget& budget = Budget::from_env());

/// Dense id <-> coordinate arithmetic for a materialized meatball.
class MeatballIndex {
 public:
  MeatballIndex(const MeatballSpec& spec, Part part);

  std::int64_t size() const noexcept { return row_offset_.back(); }
  std::int64_t width(int row) const { return base_width_ << row; }
  std::int64_t rank(int row, std::int64_t t, std::int64_t pos) const;
  std::int64_t rank(const H3Vertex& v) const;
  H3Vertex unrank(std::int64_t id) const;

 private:
  std::int64_t base_width_;
  int rows_;
  std::vector<std::int64_t> row_offset_;
};

std::string format(const TAddress& t);
std::string format(const WVertex& w);
/// `t:<digits>/w:<row>,<pos>`, with `t:-` for the empty string.
std::string format(const H3Vertex& v);
H3Vertex parse_h3(std::string_view text);

}  // namespace souvlaki::topology
