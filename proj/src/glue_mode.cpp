#include "souvlaki/glue_mode.hpp"

#include "souvlaki/errors.hpp"

namespace souvlaki {

std::string to_string(GlueMode mode) { return mode == GlueMode::TowerSharing ? "tower" : "base"; }

GlueMode parse_glue_mode(std::string_view text) {
  if (text == "tower") return GlueMode::TowerSharing;
  if (text == "base") return GlueMode::BaseOnly;
  throw InvalidArgument("glue mode must be 'tower' or 'base'");
}

}  // namespace souvlaki
