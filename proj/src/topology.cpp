#include "souvlaki/topology.hpp"

#include <algorithm>
#include <charconv>

#include "souvlaki/errors.hpp"

namespace souvlaki::topology {

TAddress TAddress::parent() const {
  if (digits.empty()) throw CoordinateError("root of the ternary tree has no parent");
  return TAddress{digits.substr(0, digits.size() - 1)};
}

TAddress TAddress::child(int c) const {
  if (c < 0 || c > 2) throw CoordinateError("ternary child index out of range");
  return TAddress{digits + static_cast<char>('0' + c)};
}

std::int64_t TAddress::index() const {
  std::int64_t value = 0;
  for (char ch : digits) value = value * 3 + (ch - '0');
  return value;
}

TAddress TAddress::from_index(std::int64_t index, int height) {
  std::string digits(static_cast<std::size_t>(height), '0');
  for (int i = height - 1; i >= 0; --i) {
    digits[i] = static_cast<char>('0' + index % 3);
    index /= 3;
  }
  return TAddress{std::move(digits)};
}

WVertex WVertex::parent() const {
  if (row == 0) throw CoordinateError("base row has no parent in W");
  return WVertex{row - 1, pos >> 1};
}

WVertex WVertex::child(int b) const { return WVertex{row + 1, (pos << 1) + b}; }

H3Vertex H3Vertex::parent() const { return H3Vertex{t.parent(), w.parent()}; }

H3Vertex H3Vertex::child(int t_digit, int w_bit) const {
  return H3Vertex{t.child(t_digit), w.child(w_bit)};
}

H3Vertex H3Vertex::shifted(const BigInt& delta) const {
  return H3Vertex{t, WVertex{w.row, w.pos + delta}};
}

MeatballSpec::MeatballSpec(int k_, int d_) : k(k_), d(d_) {
  if (k < 1) throw InvalidArgument("meatball level k must be >= 1");
  if (d <= 6) throw InvalidArgument("branching d must exceed 6");
}

Segment MeatballSpec::segment_of_base(const BigInt& base) const {
  if (base < len_left()) return Segment::L;
  if (base < left_width()) return Segment::A;
  return Segment::R;
}

bool is_valid(const MeatballSpec& spec, const H3Vertex& v) {
  if (v.w.row < 0 || v.w.row > spec.height_cap()) return false;
  if (v.t.height() != v.w.row) return false;
  if (!std::all_of(v.t.digits.begin(), v.t.digits.end(), [](char c) { return c >= '0' && c <= '2'; })) {
    return false;
  }
  return v.w.pos >= 0 && v.w.base() < spec.base_len();
}

void validate(const MeatballSpec& spec, const H3Vertex& v) {
  if (!is_valid(spec, v)) {
    throw CoordinateError("coordinate out of range for M_" + std::to_string(spec.k) + ": " + format(v));
  }
}

std::vector<H3Vertex> neighbors_in_meatball(const MeatballSpec& spec, const H3Vertex& v) {
  validate(spec, v);
  std::vector<H3Vertex> out;
  const BigInt row_width = BigInt(spec.base_len()) << v.w.row;
  if (v.w.pos > 0) out.push_back(v.shifted(-1));
  if (v.w.pos + 1 < row_width) out.push_back(v.shifted(1));
  if (v.w.row > 0) out.push_back(v.parent());
  if (v.w.row < spec.height_cap()) {
    for (int c = 0; c < 3; ++c) {
      for (int b = 0; b < 2; ++b) out.push_back(v.child(c, b));
    }
  }
  return out;
}

Side side_of(const MeatballSpec& spec, const H3Vertex& v) {
  validate(spec, v);
  return v.w.base() < spec.left_width() ? Side::Left : Side::Right;
}

Segment segment_of(const MeatballSpec& spec, const H3Vertex& v) {
  validate(spec, v);
  return spec.segment_of_base(v.w.base());
}

std::vector<H3Vertex> boundary_Bk(const MeatballSpec& spec) {
  std::vector<H3Vertex> out;
  for (int row = 0; row <= spec.height_cap(); ++row) {
    const BigInt pos = (BigInt(spec.left_width()) << row) - 1;
    const std::int64_t count = to_int64(ipow(3, static_cast<unsigned>(row)));
    for (std::int64_t t = 0; t < count; ++t) {
      out.push_back(H3Vertex{TAddress::from_index(t, row), WVertex{row, pos}});
    }
  }
  return out;
}

BigInt meatball_size(const MeatballSpec& spec, Part part) {
  const std::int64_t base = part == Part::Full ? spec.base_len() : spec.left_width();
  return (ipow(6, static_cast<unsigned>(spec.k + 1)) - 1) / 5 * base;
}

MeatballIndex::MeatballIndex(const MeatballSpec& spec, Part part)
    : base_width_(part == Part::Full ? spec.base_len() : spec.left_width()), rows_(spec.height_cap()) {
  row_offset_.push_back(0);
  std::int64_t threes = 1;
  for (int row = 0; row <= rows_; ++row) {
    row_offset_.push_back(row_offset_.back() + threes * width(row));
    threes *= 3;
  }
}

std::int64_t MeatballIndex::rank(int row, std::int64_t t, std::int64_t pos) const {
  return row_offset_[row] + t * width(row) + pos;
}

std::int64_t MeatballIndex::rank(const H3Vertex& v) const {
  const std::int64_t pos = to_int64(v.w.pos);
  if (v.w.row < 0 || v.w.row > rows_ || pos < 0 || pos >= width(v.w.row)) {
    throw CoordinateError("vertex outside indexed meatball: " + format(v));
  }
  return rank(v.w.row, v.t.index(), pos);
}

H3Vertex MeatballIndex::unrank(std::int64_t id) const {
  if (id < 0 || id >= size()) throw CoordinateError("meatball vertex id out of range");
  const auto it = std::upper_bound(row_offset_.begin(), row_offset_.end(), id);
  const int row = static_cast<int>(it - row_offset_.begin()) - 1;
  const std::int64_t local = id - row_offset_[row];
  return H3Vertex{TAddress::from_index(local / width(row), row), WVertex{row, local % width(row)}};
}

namespace {

class MeatballNaming final : public VertexNaming {
 public:
  explicit MeatballNaming(MeatballIndex index) : index_(std::move(index)) {}
  std::string name(VertexId v) const override { return format(index_.unrank(v)); }

 private:
  MeatballIndex index_;
};

}  // namespace

Graph materialize_meatball(const MeatballSpec& spec, Part part, const Budget& budget) {
  const BigInt estimate = meatball_size(spec, part);
  budget.check(estimate.convert_to<double>(), "materialize M_" + std::to_string(spec.k));

  const MeatballIndex index(spec, part);
  const std::int64_t n = index.size();
  std::vector<Edge> edges;
  std::vector<VertexLabel> labels(static_cast<std::size_t>(n));
  edges.reserve(static_cast<std::size_t>(n) * 2);
  std::int64_t threes = 1;
  for (int row = 0; row <= spec.height_cap(); ++row, threes *= 3) {
    const std::int64_t width = index.width(row);
    for (std::int64_t t = 0; t < threes; ++t) {
      for (std::int64_t pos = 0; pos < width; ++pos) {
        const auto id = static_cast<VertexId>(index.rank(row, t, pos));
        auto& label = labels[id];
        label.row = static_cast<std::int16_t>(row);
        label.level = static_cast<std::int16_t>(spec.k);
        label.segment = spec.segment_of_base(pos >> row);
        if (pos + 1 < width) edges.emplace_back(id, static_cast<VertexId>(id + 1));
        if (row < spec.height_cap()) {
          for (int c = 0; c < 3; ++c) {
            for (int b = 0; b < 2; ++b) {
              edges.emplace_back(id, static_cast<VertexId>(index.rank(row + 1, 3 * t + c, 2 * pos + b)));
            }
          }
        }
      }
    }
  }
  Graph g = Graph::from_edges(static_cast<std::size_t>(n), std::move(edges));
  g.set_labels(std::move(labels));
  g.set_naming(std::make_shared<MeatballNaming>(index));
  return g;
}

std::string format(const TAddress& t) { return t.digits.empty() ? "t:-" : "t:" + t.digits; }

std::string format(const WVertex& w) { return "w:" + std::to_string(w.row) + "," + w.pos.str(); }

std::string format(const H3Vertex& v) { return format(v.t) + "/" + format(v.w); }

namespace {

int parse_int(std::string_view text, std::string_view whole) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw CoordinateError("malformed coordinate '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

H3Vertex parse_h3(std::string_view text) {
  const auto bad = [&] { return CoordinateError("malformed coordinate '" + std::string(text) + "'"); };
  if (!text.starts_with("t:")) throw bad();
  const auto slash = text.find("/w:");
  if (slash == std::string_view::npos) throw bad();
  std::string_view digits = text.substr(2, slash - 2);
  H3Vertex v;
  if (digits != "-") {
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '2'; })) {
      throw bad();
    }
    v.t.digits = std::string(digits);
  }
  const std::string_view rest = text.substr(slash + 3);
  const auto comma = rest.find(',');
  if (comma == std::string_view::npos) throw bad();
  v.w.row = parse_int(rest.substr(0, comma), text);
  const std::string_view pos = rest.substr(comma + 1);
  if (pos.empty() || !std::all_of(pos.begin(), pos.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw bad();
  }
  v.w.pos = BigInt(std::string(pos));
  if (v.t.height() != v.w.row) throw CoordinateError("t height differs from w row in '" + std::string(text) + "'");
  return v;
}

}  // namespace souvlaki::topology
