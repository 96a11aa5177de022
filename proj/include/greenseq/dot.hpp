#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "greenseq/framed.hpp"
#include "greenseq/layering.hpp"
#include "greenseq/quiver.hpp"

namespace greenseq {

namespace detail {

inline std::string dot_id(int v) {
  return is_primed(v) ? "v" + std::to_string(unprimed(v)) + "p"
                      : "v" + std::to_string(v);
}

inline std::string dot_name(int v) {
  return is_primed(v) ? std::to_string(unprimed(v)) + "'" : std::to_string(v);
}

}  // namespace detail

/// Deterministic DOT text. Frozen vertices render as boxes; labels print as
/// "(a,b)" when not (1,1). With a layering, nodes are ordered by
/// (level, label) and grouped into per-level ranks.
inline std::string export_dot(const ValuedIceQuiver& Q,
                              const std::optional<Layering>& layout = std::nullopt) {
  auto level_of = [&](int v) -> long {
    if (!layout) return 0;
    int base = unprimed(v);
    return layout->contains(base) ? layout->level(base) : 0;
  };
  std::vector<int> nodes = Q.ex();
  nodes.insert(nodes.end(), Q.fr().begin(), Q.fr().end());
  std::sort(nodes.begin(), nodes.end(), [&](int a, int b) {
    return std::make_tuple(level_of(a), unprimed(a), is_primed(a)) <
           std::make_tuple(level_of(b), unprimed(b), is_primed(b));
  });
  std::ostringstream os;
  os << "digraph quiver {\n";
  os << "  rankdir=BT;\n";
  for (int v : nodes) {
    os << "  " << detail::dot_id(v) << " [label=\"" << detail::dot_name(v)
       << "\", shape=" << (Q.is_frozen(v) ? "box" : "circle") << "];\n";
  }
  if (layout) {
    for (long t : layout->levels()) {
      os << "  { rank=same;";
      for (int v : nodes) {
        if (!is_primed(v) && level_of(v) == t) os << " " << detail::dot_id(v) << ";";
      }
      os << " }\n";
    }
  }
  std::vector<ValuedArrow> arrows = Q.arrows();
  std::sort(arrows.begin(), arrows.end(), [&](const auto& a, const auto& b) {
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
  });
  for (const ValuedArrow& a : arrows) {
    os << "  " << detail::dot_id(a.src) << " -> " << detail::dot_id(a.dst);
    if (!a.simple()) {
      os << " [label=\"(" << a.v_fwd.str() << "," << a.v_back.str() << ")\"]";
    }
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace greenseq
