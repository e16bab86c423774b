#pragma once

#include <cstdint>
#include <vector>

namespace erlab {

/// Values of the pairs of a complete m-vertex structure in column order
/// (0,1),(0,2),(1,2),(0,3),...; value 0 is reserved for "undecided".
using Code = std::vector<std::uint16_t>;

/// A group of value permutations; maps[g][v] is the image of value v.
/// maps[0] must be the identity.
using ValueMaps = std::vector<std::vector<std::uint16_t>>;

/// True iff no vertex relabelling combined with a value map produces a
/// lexicographically larger code.
bool is_canonical(const Code& code, int m, const ValueMaps& maps);

struct CanonicalLabel {
  Code code;                 // the lexicographic maximum
  std::vector<int> vertices; // new vertex p is old vertex vertices[p]
  int map = 0;               // index of the value map used
};

CanonicalLabel canonical_label(const Code& code, int m, const ValueMaps& maps);

}  // namespace erlab
