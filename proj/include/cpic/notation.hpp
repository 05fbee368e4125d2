#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "cpic/cluster.hpp"

namespace cpic {

// Textual cluster-picture notation:
//   picture  := cluster
//   cluster  := '(' item (' ' item)* ')' '_' rational
//   item     := '*' | cluster
//   rational := int | int '/' posint
// The top subscript is the absolute depth; nested subscripts are relative
// depths and must be positive.
ClusterPicture parse_picture(std::string_view text, Rational vcf);

// Canonical form: children ordered by size descending, then relative depth
// descending, then text ascending.
std::string print_picture(const ClusterPicture& pic);

// Structural equality: same tree with the same depths and the same vcf.
bool picture_equal(const ClusterPicture& a, const ClusterPicture& b);

// {"vcf": "<rational>", "picture": "<canonical text>"}
nlohmann::ordered_json picture_to_json(const ClusterPicture& pic);

// Accepts any of:
//   {"picture": "<text>", "vcf"?}                       abstract, notation form
//   {"tree": {"depth": ..., "children": [...]}, "vcf"?} abstract, expanded form
//   {"p": <int>, "leading_coeff": "<pexpr>", "roots": ["<pexpr>", ...]}
// Root entries are expressions in p; all numbers may be decimal strings.
ClusterPicture picture_from_json(const nlohmann::json& j);

} // namespace cpic
