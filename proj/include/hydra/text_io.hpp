#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hydra/kripke.hpp"

namespace hydra {

// Line-oriented frame text: "frame <name>", "states <N>", "edge <u> <v>".
// Blank lines and '#' comments are ignored.
std::vector<Frame> parse_frames(std::string_view text);
std::string format_frame(const Frame& f);

// A frame block followed by "val p<k> <states...>" lines and an optional
// "point <s>" line (default 0).
PointedModel parse_pointed_model(std::string_view text);
std::string format_pointed_model(const PointedModel& pm);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Whitespace-separated tokens of one line, with comments stripped.
std::vector<std::string> tokenize_line(std::string_view line);
std::vector<std::string> split_lines(std::string_view text);

}  // namespace hydra
