#ifndef TROPFAN_JSON_IO_HPP
#define TROPFAN_JSON_IO_HPP

// JSON interchange for fans and tropical functions.
//
// Fan objects: {"n": int, "rays": [[int,...],...], "cones": [[idx,...],...],
// "weights": [int,...]}.  Cones hold ray indices, one per cone in dimension 1
// and two in dimension 2; faces are implied.  Weights run parallel to the
// cone list.  A fan with no cones needs an explicit "dim" of 1 or 2; the
// serializer adds it exactly in that case.
//
// Function objects: {"functionals": [[int,...],...]}.
//
// Serialization is canonical: keys sorted, no insignificant whitespace, so
// serialize(parse(x)) == x whenever x is itself serializer output.

#include <string>

#include "tropfan/fan.hpp"
#include "tropfan/trfunction.hpp"

namespace tropfan {

/**
 * Parse a fan object.  Invalid JSON raises ParseError; structural
 * violations raise SchemaError naming the constraint.  A zero ray is always
 * rejected; a non-primitive ray is rejected unless normalize_rays is set,
 * in which case it is divided by its content.
 */
WeightedFan parse_fan(const std::string& text, bool normalize_rays = false);

TRFunction parse_function(const std::string& text);

std::string serialize(const WeightedFan& f);
std::string serialize(const TRFunction& t);

/** File variants; an unreadable file raises ParseError. */
WeightedFan load_fan(const std::string& path, bool normalize_rays = false);
TRFunction load_function(const std::string& path);

}  // namespace tropfan

#endif
