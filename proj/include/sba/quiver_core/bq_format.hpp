#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sba/quiver_core/quiver.hpp"

namespace sba::quiver_core {

// `newarrow <label> := <path>` lines written next to a trivial extension.
using NewArrowLines = std::vector<std::pair<std::string, std::string>>;

// Lines: `vertex <label> [special]`, `arrow <label>: <src> -> <tgt> [special-loop]`,
// `rel <path>`, `rel <path> - <path>`; '#' starts a comment. A file with a special
// loop is a non-admissible presentation. Throws ParseError citing the line.
BoundQuiver parse_bq(std::string_view text, const std::string& file = "<input>",
                     NewArrowLines* newarrows = nullptr);
BoundQuiver read_bq_file(const std::string& path, NewArrowLines* newarrows = nullptr);

// Vertices, arrows, relations, each sorted lexicographically.
std::string serialize_bq(const BoundQuiver& a);

std::string read_text_file(const std::string& path);

}  // namespace sba::quiver_core
