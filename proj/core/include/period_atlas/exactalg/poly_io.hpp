#pragma once

#include <string>
#include <string_view>

#include "period_atlas/exactalg/mpoly.hpp"

namespace period_atlas::exactalg {

// Text form: one term per line, "<num>/<den> <e_u> <e_w> <e_D>\n", ascending
// lexicographic exponent order. The zero polynomial is the empty string.
std::string to_text(const MPoly& p);
/// Accepts terms in any order and merges duplicates; throws ParseError with the line number.
MPoly parse_text(std::string_view text);

// JSON form: {"vars":["u","w","D"],"terms":[[num,den,e_u,e_w,e_D],...]}.
// num/den are JSON integers when they fit in 64 bits and decimal strings otherwise.
std::string to_json(const MPoly& p);
MPoly parse_json(std::string_view text);

}  // namespace period_atlas::exactalg
