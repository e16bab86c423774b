#include "erlab/canon.hpp"

#include <algorithm>

namespace erlab {

namespace {

inline int pidx(int a, int b) {
  if (a > b) std::swap(a, b);
  return b * (b - 1) / 2 + a;
}

struct Relabeller {
  const Code& code;
  int m;
  const std::vector<std::uint16_t>* map = nullptr;
  std::vector<int> image;  // image[p] = old vertex placed at p
  std::uint64_t used = 0;

  Relabeller(const Code& c, int n) : code(c), m(n), image(static_cast<std::size_t>(n)) {}

  std::uint16_t value(int a, int b) const { return (*map)[code[pidx(image[a], image[b])]]; }

  // Canonicity test: false when a strictly larger relabelling exists.
  bool check(int b) {
    if (b == m) return true;
    for (int v = 0; v < m; ++v) {
      if ((used >> v) & 1U) continue;
      image[b] = v;
      int cmp = 0;
      const int base = b * (b - 1) / 2;
      for (int a = 0; a < b && cmp == 0; ++a) {
        std::uint16_t x = value(a, b), y = code[base + a];
        cmp = x < y ? -1 : (x > y ? 1 : 0);
      }
      if (cmp > 0) return false;
      if (cmp < 0) continue;
      used |= std::uint64_t{1} << v;
      bool ok = check(b + 1);
      used &= ~(std::uint64_t{1} << v);
      if (!ok) return false;
    }
    return true;
  }

  // Maximisation against a running best.
  void best_search(int b, Code& best, std::vector<int>& best_image, bool& improved, bool& found) {
    if (b == m) {
      if (improved) {
        best_image = image;
        improved = false;
        found = true;
      }
      return;
    }
    for (int v = 0; v < m; ++v) {
      if ((used >> v) & 1U) continue;
      image[b] = v;
      const int base = b * (b - 1) / 2;
      int cmp = 0;
      for (int a = 0; a < b && cmp == 0; ++a) {
        std::uint16_t x = value(a, b), y = best[base + a];
        cmp = x < y ? -1 : (x > y ? 1 : 0);
      }
      if (cmp < 0) continue;
      if (cmp > 0) {
        for (int a = 0; a < b; ++a) best[base + a] = value(a, b);
        std::fill(best.begin() + base + b, best.end(), std::uint16_t{0});
        improved = true;
      }
      used |= std::uint64_t{1} << v;
      best_search(b + 1, best, best_image, improved, found);
      used &= ~(std::uint64_t{1} << v);
    }
  }
};

}  // namespace

bool is_canonical(const Code& code, int m, const ValueMaps& maps) {
  if (m <= 1) return true;
  Relabeller rl(code, m);
  for (const auto& map : maps) {
    rl.map = &map;
    rl.used = 0;
    if (!rl.check(0)) return false;
  }
  return true;
}

CanonicalLabel canonical_label(const Code& code, int m, const ValueMaps& maps) {
  CanonicalLabel out;
  out.code = code;
  out.vertices.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) out.vertices[i] = i;
  if (m <= 1) return out;
  Relabeller rl(code, m);
  for (std::size_t g = 0; g < maps.size(); ++g) {
    rl.map = &maps[g];
    rl.used = 0;
    bool improved = false, found = false;
    rl.best_search(0, out.code, out.vertices, improved, found);
    if (found) out.map = static_cast<int>(g);
  }
  return out;
}

}  // namespace erlab
