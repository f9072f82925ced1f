#include "souvlaki/assembly.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <unordered_map>

#include "souvlaki/census.hpp"
#include "souvlaki/errors.hpp"

namespace souvlaki::assembly {

using topology::H3Vertex;
using topology::MeatballSpec;
using topology::TAddress;
using topology::WVertex;

std::string format(const CanonicalVertex& v) {
  std::string out = "e:" + v.owner.path + "/" + topology::format(v.local);
  if (v.copy != 0) out += "/c:" + std::to_string(v.copy);
  return out;
}

CanonicalVertex parse_canonical(std::string_view text) {
  const auto bad = [&] { return CoordinateError("malformed canonical address '" + std::string(text) + "'"); };
  if (!text.starts_with("e:")) throw bad();
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) throw bad();
  CanonicalVertex v;
  v.owner.path = std::string(text.substr(2, slash - 2));
  if (v.owner.path.empty() ||
      !std::all_of(v.owner.path.begin(), v.owner.path.end(), [](char c) { return c >= '1' && c <= '9'; })) {
    throw bad();
  }
  std::string_view rest = text.substr(slash + 1);
  if (const auto c = rest.find("/c:"); c != std::string_view::npos) {
    const std::string_view copy = rest.substr(c + 3);
    const auto [ptr, ec] = std::from_chars(copy.data(), copy.data() + copy.size(), v.copy);
    if (ec != std::errc{} || ptr != copy.data() + copy.size() || v.copy < 1) throw bad();
    rest = rest.substr(0, c);
  }
  v.local = topology::parse_h3(rest);
  return v;
}

std::size_t CanonicalVertexHash::operator()(const CanonicalVertex& v) const {
  std::size_t h = std::hash<std::string>{}(v.owner.path);
  const auto mix = [&h](std::size_t x) { h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6U) + (h >> 2U); };
  mix(std::hash<std::string>{}(v.local.t.digits));
  mix(static_cast<std::size_t>(v.local.w.row));
  mix(boost::multiprecision::hash_value(v.local.w.pos));
  mix(static_cast<std::size_t>(v.copy));
  return h;
}

namespace {

BigInt six_pow(int i) { return ipow(6, static_cast<unsigned>(i)); }

// Vertices of one copy layer owned by the parent edge.
BigInt copy_layer_size(const MeatballSpec& spec, GlueMode mode) {
  if (spec.k < 2) return 0;
  const BigInt r = spec.len_right();
  if (mode == GlueMode::TowerSharing) return six_pow(spec.k) * r;
  return r * (six_pow(spec.k + 1) - 6) / 5;
}

// First owned row of a copy layer.
int first_copy_row(const MeatballSpec& spec, GlueMode mode) {
  return mode == GlueMode::TowerSharing ? spec.k : 1;
}

}  // namespace

Souvlaki::Souvlaki(int top_level, int d, Layout layout, GlueMode mode)
    : top_level_(top_level), d_(d), layout_(layout), mode_(mode) {
  if (top_level < 1) throw InvalidArgument("assembly height must be >= 1");
  if (d <= 6) throw InvalidArgument("branching d must exceed 6");
  if (d > 9) throw InvalidArgument("skeleton addresses use one digit per step; d must be <= 9");
}

bool Souvlaki::has_edge(const SkeletonAddress& e) const {
  if (e.height() < 1 || e.height() > top_level_) return false;
  const char max_digit = layout_ == Layout::Tree ? static_cast<char>('0' + d_) : '1';
  return std::all_of(e.path.begin(), e.path.end(), [&](char c) { return c >= '1' && c <= max_digit; });
}

CanonicalVertex Souvlaki::canonicalize(const CanonicalVertex& raw) const {
  if (!has_edge(raw.owner)) throw CoordinateError("no skeleton edge '" + raw.owner.path + "'");
  const MeatballSpec spec = spec_of(raw.owner);
  topology::validate(spec, raw.local);
  const int row = raw.local.row();
  if (raw.local.w.base() < spec.left_width()) {
    if (raw.copy != 0) throw CoordinateError("copy tag on a left-piece vertex: " + format(raw));
    return raw;
  }
  if (raw.copy < 1 || raw.copy > copies()) {
    throw CoordinateError("right-piece vertex needs a copy tag in [1, " + std::to_string(copies()) + "]: " + format(raw));
  }
  if (row < first_copy_row(spec, mode_)) {
    const BigInt shift = BigInt(spec.left_width()) << row;
    return CanonicalVertex{raw.owner.child(raw.copy), raw.local.shifted(-shift), 0};
  }
  return raw;
}

bool Souvlaki::is_canonical(const CanonicalVertex& v) const {
  try {
    return canonicalize(v) == v;
  } catch (const CoordinateError&) {
    return false;
  }
}

void Souvlaki::check_owned(const CanonicalVertex& v) const {
  if (!is_canonical(v)) throw CoordinateError("not a canonical address: " + format(v));
}

std::vector<CanonicalVertex> Souvlaki::neighbors(const CanonicalVertex& v) const {
  check_owned(v);
  auto out = v.copy == 0 ? neighbors_left_piece(v) : neighbors_copy_layer(v);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CanonicalVertex> Souvlaki::neighbors_left_piece(const CanonicalVertex& v) const {
  const SkeletonAddress& e = v.owner;
  const MeatballSpec spec = spec_of(e);
  const int k = spec.k;
  const H3Vertex& x = v.local;
  const int row = x.row();
  const BigInt row_left_width = BigInt(spec.left_width()) << row;
  const bool has_parent = e.height() >= 2;
  std::vector<CanonicalVertex> out;

  // Horizontal, leftwards: inside this piece or across into the parent's B_{k+1}.
  if (x.w.pos > 0) {
    out.push_back({e, x.shifted(-1), 0});
  } else if (has_parent && (mode_ == GlueMode::TowerSharing || row == 0)) {
    const MeatballSpec up(k + 1, d_);
    out.push_back({e.parent(), H3Vertex{x.t, WVertex{row, (BigInt(up.left_width()) << row) - 1}}, 0});
  }
  // Horizontal, rightwards: inside, or from B_k into every copy of the right piece.
  if (x.w.pos + 1 < row_left_width) {
    out.push_back({e, x.shifted(1), 0});
  } else if (k >= 2) {
    for (int c = 1; c <= copies(); ++c) {
      out.push_back(canonicalize({e, H3Vertex{x.t, WVertex{row, row_left_width}}, c}));
    }
  }
  if (row > 0) out.push_back({e, x.parent(), 0});
  if (row < k) {
    for (int c = 0; c < 3; ++c) {
      for (int b = 0; b < 2; ++b) out.push_back({e, x.child(c, b), 0});
    }
  }
  // The top of a shared L_k column continues into the parent's copy layer.
  if (has_parent && x.w.base() < spec.len_left()) {
    const int top_shared = mode_ == GlueMode::TowerSharing ? k : 0;
    if (row == top_shared) {
      const MeatballSpec up(k + 1, d_);
      const H3Vertex in_parent = x.shifted(BigInt(up.left_width()) << row);
      for (int c = 0; c < 3; ++c) {
        for (int b = 0; b < 2; ++b) out.push_back({e.parent(), in_parent.child(c, b), e.last()});
      }
    }
  }
  return out;
}

std::vector<CanonicalVertex> Souvlaki::neighbors_copy_layer(const CanonicalVertex& v) const {
  const SkeletonAddress& e = v.owner;
  const MeatballSpec spec = spec_of(e);
  const H3Vertex& x = v.local;
  const int row = x.row();
  std::vector<CanonicalVertex> out;
  const H3Vertex left = x.shifted(-1);
  if (left.w.base() >= spec.left_width()) {
    out.push_back(canonicalize({e, left, v.copy}));
  } else {
    out.push_back({e, left, 0});
  }
  if (x.w.pos + 1 < (BigInt(spec.base_len()) << row)) out.push_back({e, x.shifted(1), v.copy});
  out.push_back(canonicalize({e, x.parent(), v.copy}));
  if (row < spec.k) {
    for (int c = 0; c < 3; ++c) {
      for (int b = 0; b < 2; ++b) out.push_back({e, x.child(c, b), v.copy});
    }
  }
  return out;
}

bool Souvlaki::on_spine(const CanonicalVertex& v) const {
  return v.copy <= 1 && std::all_of(v.owner.path.begin(), v.owner.path.end(), [](char c) { return c == '1'; });
}

BigInt Souvlaki::owned_count(int k) const {
  const MeatballSpec spec(k, d_);
  return census::volume_vk(k) + copies() * copy_layer_size(spec, mode_);
}

BigInt Souvlaki::edges_at_height(int h) const {
  return layout_ == Layout::Tree ? ipow(d_, static_cast<unsigned>(h)) : BigInt(1);
}

BigInt Souvlaki::height_offset(int h) const {
  BigInt total = 0;
  for (int hh = 1; hh < h; ++hh) total += edges_at_height(hh) * owned_count(top_level_ - hh + 1);
  return total;
}

BigInt Souvlaki::vertex_count() const { return height_offset(top_level_ + 1); }

BigInt Souvlaki::edge_lexrank(const SkeletonAddress& e) const {
  BigInt r = 0;
  for (char c : e.path) r = r * d_ + (c - '1');
  return r;
}

SkeletonAddress Souvlaki::edge_from_lexrank(int height, BigInt lexrank) const {
  std::string path(static_cast<std::size_t>(height), '1');
  for (int i = height - 1; i >= 0; --i) {
    path[i] = static_cast<char>('1' + static_cast<int>(lexrank % d_));
    lexrank /= d_;
  }
  return SkeletonAddress{std::move(path)};
}

BigInt Souvlaki::rank(const CanonicalVertex& v) const {
  check_owned(v);
  const MeatballSpec spec = spec_of(v.owner);
  const int k = spec.k;
  const int row = v.local.row();
  const BigInt t = v.local.t.index();
  BigInt local;
  if (v.copy == 0) {
    const BigInt width = BigInt(spec.left_width()) << row;
    local = BigInt(spec.left_width()) * (six_pow(row) - 1) / 5 + t * width + v.local.w.pos;
  } else {
    const BigInt r = spec.len_right();
    const BigInt width = r << row;
    const BigInt in_row = v.local.w.pos - (BigInt(spec.left_width()) << row);
    const BigInt row_offset = mode_ == GlueMode::TowerSharing ? BigInt(0) : r * (six_pow(row) - 6) / 5;
    const int slot = layout_ == Layout::Tree ? v.copy - 1 : 0;
    local = census::volume_vk(k) + slot * copy_layer_size(spec, mode_) + row_offset + t * width + in_row;
  }
  return height_offset(v.owner.height()) + edge_lexrank(v.owner) * owned_count(k) + local;
}

CanonicalVertex Souvlaki::owned_vertex(const SkeletonAddress& e, const BigInt& local_index) const {
  if (!has_edge(e)) throw CoordinateError("no skeleton edge '" + e.path + "'");
  const MeatballSpec spec = spec_of(e);
  const int k = spec.k;
  if (local_index < 0 || local_index >= owned_count(k)) throw CoordinateError("owned index out of range");
  const BigInt vk = census::volume_vk(k);
  if (local_index < vk) {
    for (int row = 0; row <= k; ++row) {
      const BigInt width = BigInt(spec.left_width()) << row;
      const BigInt start = BigInt(spec.left_width()) * (six_pow(row) - 1) / 5;
      const BigInt end = start + ipow(3, static_cast<unsigned>(row)) * width;
      if (local_index < end) {
        const BigInt rem = local_index - start;
        const BigInt t = rem / width;
        return {e, H3Vertex{TAddress::from_index(t.convert_to<std::int64_t>(), row), WVertex{row, rem % width}}, 0};
      }
    }
  }
  const BigInt layer = copy_layer_size(spec, mode_);
  BigInt rem = local_index - vk;
  const int copy = static_cast<int>(rem / layer) + 1;
  rem %= layer;
  const BigInt r = spec.len_right();
  for (int row = first_copy_row(spec, mode_); row <= k; ++row) {
    const BigInt width = r << row;
    const BigInt count = ipow(3, static_cast<unsigned>(row)) * width;
    if (rem < count) {
      const BigInt t = rem / width;
      const BigInt pos = (BigInt(spec.left_width()) << row) + rem % width;
      return {e, H3Vertex{TAddress::from_index(t.convert_to<std::int64_t>(), row), WVertex{row, pos}}, copy};
    }
    rem -= count;
  }
  throw CoordinateError("owned index decoding failed");
}

CanonicalVertex Souvlaki::unrank(const BigInt& index) const {
  if (index < 0) throw CoordinateError("negative vertex index");
  BigInt start = 0;
  for (int h = 1; h <= top_level_; ++h) {
    const BigInt owned = owned_count(top_level_ - h + 1);
    const BigInt span = edges_at_height(h) * owned;
    if (index < start + span) {
      const BigInt rem = index - start;
      return owned_vertex(edge_from_lexrank(h, rem / owned), rem % owned);
    }
    start += span;
  }
  throw CoordinateError("vertex index out of range");
}

CanonicalVertex Souvlaki::source() const {
  return {SkeletonAddress{std::string(static_cast<std::size_t>(top_level_), '1')}, H3Vertex{}, 0};
}

std::vector<CanonicalVertex> Souvlaki::junction(int k) const {
  if (k < 1 || k > top_level_) throw InvalidArgument("junction level out of range");
  std::vector<CanonicalVertex> out;
  const SkeletonAddress e{std::string(static_cast<std::size_t>(height_of_level(k)), '1')};
  for (std::int64_t p = 0; p < std::int64_t{k} * k; ++p) out.push_back({e, H3Vertex{{}, WVertex{0, p}}, 0});
  return out;
}

std::vector<CanonicalVertex> Souvlaki::frontier() const { return junction(top_level_); }

std::string Souvlaki::header() const {
  const std::string size = layout_ == Layout::Tree ? "n=" : "K=";
  std::string h = "# souvlaki v1 " + size + std::to_string(top_level_) + " d=" + std::to_string(d_);
  if (mode_ != GlueMode::TowerSharing) h += " glue=" + to_string(mode_);
  return h;
}

namespace {

class AssemblyNaming final : public VertexNaming {
 public:
  explicit AssemblyNaming(std::shared_ptr<const Souvlaki> s) : s_(std::move(s)) {}
  std::string name(VertexId v) const override { return format(s_->unrank(v)); }

 private:
  std::shared_ptr<const Souvlaki> s_;
};

// Per-level int64 layout mirroring Souvlaki::rank, used by the materializer's hot loops.
struct LevelLayout {
  int k = 0;
  std::int64_t left_width = 0;
  std::int64_t base_len = 0;
  std::int64_t right = 0;
  std::int64_t left_piece = 0;
  std::int64_t copy_layer = 0;
  std::int64_t owned = 0;
  int first_copy_row = 0;
  GlueMode mode = GlueMode::TowerSharing;

  std::int64_t left_rank(int row, std::int64_t t, std::int64_t pos) const {
    std::int64_t six = 1;
    for (int i = 0; i < row; ++i) six *= 6;
    return left_width * (six - 1) / 5 + t * (left_width << row) + pos;
  }
  std::int64_t copy_rank(int slot, int row, std::int64_t t, std::int64_t pos) const {
    std::int64_t six = 1;
    for (int i = 0; i < row; ++i) six *= 6;
    const std::int64_t row_offset = mode == GlueMode::TowerSharing ? 0 : right * (six - 6) / 5;
    return left_piece + slot * copy_layer + row_offset + t * (right << row) + (pos - (left_width << row));
  }
};

}  // namespace

Assembled materialize(const Souvlaki& s, const Budget& budget) {
  const BigInt total = s.vertex_count();
  budget.check(total.convert_to<double>(), s.header().substr(2));
  if (total > std::numeric_limits<VertexId>::max()) throw BudgetExceeded("vertex ids overflow", total.convert_to<double>(), budget.max_vertices());

  const int n = s.top_level();
  const int d = s.d();
  const bool tree = s.layout() == Layout::Tree;
  std::vector<LevelLayout> levels(static_cast<std::size_t>(n + 1));
  for (int k = 1; k <= n; ++k) {
    const MeatballSpec spec(k, d);
    LevelLayout& L = levels[k];
    L.k = k;
    L.left_width = spec.left_width();
    L.base_len = spec.base_len();
    L.right = spec.len_right();
    L.left_piece = to_int64(census::volume_vk(k));
    L.copy_layer = to_int64(copy_layer_size(spec, s.mode()));
    L.owned = to_int64(s.owned_count(k));
    L.first_copy_row = first_copy_row(spec, s.mode());
    L.mode = s.mode();
  }
  std::vector<std::int64_t> height_offset(static_cast<std::size_t>(n + 2), 0);
  std::vector<std::int64_t> edges_at(static_cast<std::size_t>(n + 1), 1);
  for (int h = 1; h <= n; ++h) {
    edges_at[h] = tree ? to_int64(ipow(d, static_cast<unsigned>(h))) : 1;
    height_offset[h + 1] = height_offset[h] + edges_at[h] * levels[n - h + 1].owned;
  }
  const auto num_vertices = static_cast<std::size_t>(height_offset[n + 1]);

  std::vector<Edge> edges;
  edges.reserve(num_vertices * 2);
  std::vector<VertexLabel> labels(num_vertices);
  const auto vid = [](std::int64_t x) { return static_cast<VertexId>(x); };

  for (int h = 1; h <= n; ++h) {
    const int k = n - h + 1;
    const LevelLayout& L = levels[k];
    for (std::int64_t lex = 0; lex < edges_at[h]; ++lex) {
      const std::int64_t base_id = height_offset[h] + lex * L.owned;
      const bool spine_edge = lex == 0;
      const auto left_id = [&](int row, std::int64_t t, std::int64_t pos) {
        return vid(base_id + L.left_rank(row, t, pos));
      };
      // Gluing map for a raw vertex of copy c over the right segment.
      const auto right_id = [&](int c, int row, std::int64_t t, std::int64_t pos) {
        if (row < L.first_copy_row) {
          const LevelLayout& C = levels[k - 1];
          const std::int64_t child_lex = tree ? lex * d + (c - 1) : 0;
          const std::int64_t child_base = height_offset[h + 1] + child_lex * C.owned;
          return vid(child_base + C.left_rank(row, t, pos - (L.left_width << row)));
        }
        return vid(base_id + L.copy_rank(tree ? c - 1 : 0, row, t, pos));
      };

      std::int64_t threes = 1;
      for (int row = 0; row <= k; ++row, threes *= 3) {
        const std::int64_t width = L.left_width << row;
        for (std::int64_t t = 0; t < threes; ++t) {
          for (std::int64_t pos = 0; pos < width; ++pos) {
            const VertexId u = left_id(row, t, pos);
            VertexLabel& lab = labels[u];
            lab.row = static_cast<std::int16_t>(row);
            lab.level = static_cast<std::int16_t>(k);
            lab.segment = (pos >> row) < std::int64_t{k} * k ? Segment::L : Segment::A;
            lab.spine = spine_edge;
            if (pos + 1 < width) edges.emplace_back(u, left_id(row, t, pos + 1));
            if (row < k) {
              for (int c = 0; c < 3; ++c) {
                for (int b = 0; b < 2; ++b) edges.emplace_back(u, left_id(row + 1, 3 * t + c, 2 * pos + b));
              }
            }
          }
        }
      }
      if (k < 2) continue;
      for (int c = 1; c <= s.copies(); ++c) {
        threes = 1;
        for (int row = 0; row <= k; ++row, threes *= 3) {
          const std::int64_t start = L.left_width << row;
          const std::int64_t end = L.base_len << row;
          for (std::int64_t t = 0; t < threes; ++t) {
            edges.emplace_back(left_id(row, t, start - 1), right_id(c, row, t, start));
            for (std::int64_t pos = start; pos < end; ++pos) {
              const VertexId u = right_id(c, row, t, pos);
              if (row >= L.first_copy_row) {
                VertexLabel& lab = labels[u];
                lab.row = static_cast<std::int16_t>(row);
                lab.level = static_cast<std::int16_t>(k);
                lab.segment = Segment::R;
                lab.spine = spine_edge && c == 1;
                lab.copy_layer = true;
              }
              if (pos + 1 < end) edges.emplace_back(u, right_id(c, row, t, pos + 1));
              if (row < k) {
                for (int tc = 0; tc < 3; ++tc) {
                  for (int b = 0; b < 2; ++b) edges.emplace_back(u, right_id(c, row + 1, 3 * t + tc, 2 * pos + b));
                }
              }
            }
          }
        }
      }
    }
  }

  Assembled out;
  out.souvlaki = std::make_shared<const Souvlaki>(s);
  out.graph = Graph::from_edges(num_vertices, std::move(edges));
  out.graph.set_labels(std::move(labels));
  out.graph.set_naming(std::make_shared<AssemblyNaming>(out.souvlaki));
  connected_components(out.graph, &out.components);
  return out;
}

VertexId Assembled::id_of(const CanonicalVertex& v) const {
  return static_cast<VertexId>(to_int64(souvlaki->rank(v)));
}

CanonicalVertex Assembled::vertex(VertexId id) const { return souvlaki->unrank(id); }

std::vector<VertexId> Assembled::junction(int k) const {
  std::vector<VertexId> out;
  for (const auto& v : souvlaki->junction(k)) out.push_back(id_of(v));
  return out;
}

std::vector<VertexId> Assembled::frontier() const { return junction(souvlaki->top_level()); }

std::vector<VertexId> Assembled::spine_vertices() const {
  std::vector<VertexId> out;
  const auto& labels = graph.labels();
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v].spine) out.push_back(static_cast<VertexId>(v));
  }
  return out;
}

Assembled assemble_Tn(int n, int d, GlueMode mode, const Budget& budget) {
  return materialize(Souvlaki::tree(n, d, mode), budget);
}

Assembled spine_truncation(int K, int d, GlueMode mode, const Budget& budget) {
  if (K < 2) throw InvalidArgument("spine truncation needs K >= 2");
  return materialize(Souvlaki::spine(K, d, mode), budget);
}

namespace {

class GadgetNaming final : public VertexNaming {
 public:
  GadgetNaming(MeatballSpec spec) : spec_(spec), left_(spec, topology::Part::LeftOnly) {
    right_size_ = to_int64(census::right_piece_size(spec.k));
  }
  std::string name(VertexId v) const override {
    if (v < left_.size()) return "e:1/" + topology::format(left_.unrank(v));
    const std::int64_t rem = v - left_.size();
    const int copy = static_cast<int>(rem / right_size_) + 1;
    std::int64_t local = rem % right_size_;
    const std::int64_t r = spec_.len_right();
    std::int64_t threes = 1;
    for (int row = 0; row <= spec_.k; ++row, threes *= 3) {
      const std::int64_t count = threes * (r << row);
      if (local < count) {
        const H3Vertex x{TAddress::from_index(local / (r << row), row),
                         WVertex{row, (spec_.left_width() << row) + local % (r << row)}};
        return "e:1/" + topology::format(x) + "/c:" + std::to_string(copy);
      }
      local -= count;
    }
    return std::to_string(v);
  }

 private:
  MeatballSpec spec_;
  topology::MeatballIndex left_;
  std::int64_t right_size_;
};

}  // namespace

Graph build_gadget(const MeatballSpec& spec, const Budget& budget) {
  if (spec.k < 2) throw InvalidArgument("leaf edges carry M^L_1 without branching; no gadget for k = 1");
  const BigInt total = census::volume_vk(spec.k) + spec.d * census::right_piece_size(spec.k);
  budget.check(total.convert_to<double>(), "gadget M'_" + std::to_string(spec.k));
  const topology::MeatballIndex left(spec, topology::Part::LeftOnly);
  const std::int64_t right_size = to_int64(census::right_piece_size(spec.k));
  const std::int64_t r = spec.len_right();
  std::vector<std::int64_t> right_row_offset{0};
  {
    std::int64_t threes = 1;
    for (int row = 0; row <= spec.k; ++row, threes *= 3) right_row_offset.push_back(right_row_offset.back() + threes * (r << row));
  }
  const auto right_id = [&](int c, int row, std::int64_t t, std::int64_t pos) {
    return static_cast<VertexId>(left.size() + (c - 1) * right_size + right_row_offset[row] + t * (r << row) +
                                 (pos - (spec.left_width() << row)));
  };
  const auto num = static_cast<std::size_t>(to_int64(total));
  std::vector<Edge> edges;
  std::vector<VertexLabel> labels(num);
  std::int64_t threes = 1;
  for (int row = 0; row <= spec.k; ++row, threes *= 3) {
    const std::int64_t lw = spec.left_width() << row;
    const std::int64_t bw = spec.base_len() << row;
    for (std::int64_t t = 0; t < threes; ++t) {
      for (std::int64_t pos = 0; pos < lw; ++pos) {
        const auto u = static_cast<VertexId>(left.rank(row, t, pos));
        labels[u] = VertexLabel{static_cast<std::int16_t>(row), static_cast<std::int16_t>(spec.k),
                                spec.segment_of_base(pos >> row), false, false};
        if (pos + 1 < lw) edges.emplace_back(u, u + 1);
        if (row < spec.k) {
          for (int c = 0; c < 3; ++c) {
            for (int b = 0; b < 2; ++b) edges.emplace_back(u, static_cast<VertexId>(left.rank(row + 1, 3 * t + c, 2 * pos + b)));
          }
        }
      }
      for (int copy = 1; copy <= spec.d; ++copy) {
        edges.emplace_back(static_cast<VertexId>(left.rank(row, t, lw - 1)), right_id(copy, row, t, lw));
        for (std::int64_t pos = lw; pos < bw; ++pos) {
          const VertexId u = right_id(copy, row, t, pos);
          labels[u] = VertexLabel{static_cast<std::int16_t>(row), static_cast<std::int16_t>(spec.k), Segment::R, false, true};
          if (pos + 1 < bw) edges.emplace_back(u, right_id(copy, row, t, pos + 1));
          if (row < spec.k) {
            for (int c = 0; c < 3; ++c) {
              for (int b = 0; b < 2; ++b) edges.emplace_back(u, right_id(copy, row + 1, 3 * t + c, 2 * pos + b));
            }
          }
        }
      }
    }
  }
  Graph g = Graph::from_edges(num, std::move(edges));
  g.set_labels(std::move(labels));
  g.set_naming(std::make_shared<GadgetNaming>(spec));
  return g;
}

namespace {

class ListNaming final : public VertexNaming {
 public:
  explicit ListNaming(std::vector<CanonicalVertex> vertices) : vertices_(std::move(vertices)) {}
  std::string name(VertexId v) const override { return format(vertices_.at(v)); }

 private:
  std::vector<CanonicalVertex> vertices_;
};

VertexLabel label_of(const Souvlaki& s, const CanonicalVertex& v) {
  const MeatballSpec spec = s.spec_of(v.owner);
  VertexLabel lab;
  lab.row = static_cast<std::int16_t>(v.local.row());
  lab.level = static_cast<std::int16_t>(spec.k);
  lab.segment = spec.segment_of_base(v.local.w.base());
  lab.spine = s.on_spine(v);
  lab.copy_layer = v.copy != 0;
  return lab;
}

}  // namespace

RootedSample rooted_ball(const Souvlaki& s, const CanonicalVertex& root, int radius, const Budget& budget) {
  if (radius < 0) throw InvalidArgument("ball radius must be >= 0");
  std::unordered_map<CanonicalVertex, VertexId, CanonicalVertexHash> index;
  std::vector<CanonicalVertex> order{root};
  std::vector<int> dist{0};
  std::vector<std::vector<CanonicalVertex>> adjacency;
  index.emplace(root, 0);
  s.neighbors(root);  // validates the root
  for (std::size_t head = 0; head < order.size(); ++head) {
    adjacency.push_back(s.neighbors(order[head]));
    if (dist[head] == radius) continue;
    for (const auto& w : adjacency.back()) {
      if (index.contains(w)) continue;
      index.emplace(w, static_cast<VertexId>(order.size()));
      order.push_back(w);
      dist.push_back(dist[head] + 1);
      budget.check(static_cast<double>(order.size()), "ball of radius " + std::to_string(radius));
    }
  }
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < order.size(); ++u) {
    for (const auto& w : adjacency[u]) {
      if (const auto it = index.find(w); it != index.end()) edges.emplace_back(static_cast<VertexId>(u), it->second);
    }
  }
  RootedSample out;
  out.graph = Graph::from_edges(order.size(), std::move(edges));
  std::vector<VertexLabel> labels;
  labels.reserve(order.size());
  for (const auto& v : order) labels.push_back(label_of(s, v));
  out.graph.set_labels(std::move(labels));
  out.graph.set_naming(std::make_shared<ListNaming>(order));
  out.root = 0;
  out.meta.level = s.level_of(root.owner);
  out.meta.radius = radius;
  out.meta.d = s.d();
  out.meta.embedding_level = s.top_level();
  out.meta.root_address = root;
  return out;
}

CanonicalVertex sample_uniform_vertex(const Souvlaki& s, Engine& rng) {
  return s.unrank(uniform_below(rng, s.vertex_count()));
}

int limit_embedding_level(int root_level, int radius) { return root_level + radius + 2; }

namespace {

const census::LevelSampler& cached_sampler(int d, GlueMode mode) {
  static std::mutex mutex;
  static std::map<std::pair<int, GlueMode>, std::unique_ptr<census::LevelSampler>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[{d, mode}];
  if (!slot) slot = std::make_unique<census::LevelSampler>(d, mode);
  return *slot;
}

}  // namespace

RootedSample sample_limit_ball(int r, int d, std::uint64_t seed, GlueMode mode, const Budget& budget) {
  if (r < 0) throw InvalidArgument("ball radius must be >= 0");
  Engine rng = substream(seed, 0);
  const int k = cached_sampler(d, mode).sample(rng);
  const int top = limit_embedding_level(k, r);
  const Souvlaki s = Souvlaki::tree(top, d, mode);
  const SkeletonAddress e{std::string(static_cast<std::size_t>(s.height_of_level(k)), '1')};
  const CanonicalVertex root = s.owned_vertex(e, uniform_below(rng, s.owned_count(k)));
  RootedSample out = rooted_ball(s, root, r, budget);
  out.meta.seed = seed;
  return out;
}

std::string export_edges(const Graph& g, const std::string& header) {
  std::vector<std::string> lines;
  lines.reserve(g.num_edges());
  for (const auto& [u, v] : g.edge_list()) {
    std::string a = g.name(u);
    std::string b = g.name(v);
    if (b < a) std::swap(a, b);
    lines.push_back(a + " " + b);
  }
  std::sort(lines.begin(), lines.end());
  std::string out = header + "\n";
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace souvlaki::assembly
