#pragma once

#include <string>

#include "effdiag/diagram.hpp"

namespace effdiag {

struct RenderOptions {
  enum class Mode { text, svg };

  Mode mode = Mode::text;
  bool show_runtime = false;  // encode before drawing
  int cell_width = 48;
  int cell_height = 40;
  std::string runtime_color = "#bf616a";
  std::string wire_color = "#000000";
  std::string pure_color = "#000000";
  std::string effectful_color = "#bf616a";
};

// One row per slice between the two boundary rows; wire i sits at column
// 4*i, boxes print as [id], the runtime wire as '!'.
std::string render_text(const Diagram& d, bool show_runtime = false);

// Layered SVG 1.1. With show_runtime the runtime wire is a single path that
// runs through every effectful box in order. Throws IllTyped on bad options.
std::string render_svg(const Diagram& d, const RenderOptions& opts = {});

std::string render(const Diagram& d, const RenderOptions& opts);

}  // namespace effdiag
