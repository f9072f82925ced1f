#pragma once

#include <string>
#include <string_view>

namespace souvlaki {

/// How a copy of the right piece of M_k is identified with the left segment of a child M_{k-1}.
enum class GlueMode {
  /// Rows 0..k-1 above the shared base segment coincide; the copy keeps only its row-k layer.
  TowerSharing,
  /// Only the base segments coincide; the copy keeps its own tower over rows 1..k.
  BaseOnly,
};

std::string to_string(GlueMode mode);
GlueMode parse_glue_mode(std::string_view text);

}  // namespace souvlaki
