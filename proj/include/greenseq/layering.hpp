#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "greenseq/errors.hpp"
#include "greenseq/quiver.hpp"

namespace greenseq {

enum class LayeringMode { ExchangeOnly, Full };

/// Level function η on an ordered vertex set. In Full mode the maximum of
/// each level is frozen and the rest are exchangeable; in ExchangeOnly mode
/// every domain element is exchangeable.
class Layering {
 public:
  Layering() = default;
  Layering(std::map<int, long> eta, LayeringMode mode)
      : eta_(std::move(eta)), mode_(mode) {}

  LayeringMode mode() const { return mode_; }
  const std::map<int, long>& eta() const { return eta_; }

  std::vector<int> domain() const {
    std::vector<int> d;
    for (const auto& [k, t] : eta_) d.push_back(k);
    return d;
  }

  bool contains(int k) const { return eta_.count(k) > 0; }

  long level(int k) const {
    auto it = eta_.find(k);
    if (it == eta_.end()) {
      throw InvalidIndex("label " + std::to_string(k) + " has no level");
    }
    return it->second;
  }

  /// η⁻¹(t), ascending.
  std::vector<int> level_members(long t) const {
    std::vector<int> m;
    for (const auto& [k, lvl] : eta_) {
      if (lvl == t) m.push_back(k);
    }
    if (m.empty()) throw UnknownLevel("no vertex at level " + std::to_string(t));
    return m;
  }

  std::vector<long> levels() const {
    std::set<long> s;
    for (const auto& [k, t] : eta_) s.insert(t);
    return {s.begin(), s.end()};
  }

  /// k[-1]: the largest same-level label below k, if any.
  std::optional<int> pred(int k) const {
    long t = level(k);
    std::optional<int> best;
    for (const auto& [j, lvl] : eta_) {
      if (j < k && lvl == t) best = j;
    }
    return best;
  }

  /// k[1]: the smallest same-level label above k, if any.
  std::optional<int> succ(int k) const {
    long t = level(k);
    for (const auto& [j, lvl] : eta_) {
      if (j > k && lvl == t) return j;
    }
    return std::nullopt;
  }

  int order_plus(int k) const {
    int m = 0;
    for (auto cur = succ(k); cur; cur = succ(*cur)) ++m;
    return m;
  }

  int order_minus(int k) const {
    int m = 0;
    for (auto cur = pred(k); cur; cur = pred(*cur)) ++m;
    return m;
  }

  /// Full mode only: the per-level maxima, i.e. {k : k[1] = +∞}.
  std::vector<int> frozen_set() const {
    if (mode_ != LayeringMode::Full) {
      throw WrongMode("frozen_set requires a Full-mode layering");
    }
    std::vector<int> fr;
    for (const auto& [k, t] : eta_) {
      if (!succ(k)) fr.push_back(k);
    }
    return fr;
  }

  std::vector<int> exchangeable_set() const {
    if (mode_ == LayeringMode::ExchangeOnly) return domain();
    std::vector<int> ex;
    for (const auto& [k, t] : eta_) {
      if (succ(k)) ex.push_back(k);
    }
    return ex;
  }

  /// Drops the level maxima of a Full-mode layering.
  Layering exchange_restriction() const {
    if (mode_ == LayeringMode::ExchangeOnly) return *this;
    std::map<int, long> eta;
    for (int k : exchangeable_set()) eta[k] = level(k);
    return Layering(std::move(eta), LayeringMode::ExchangeOnly);
  }

  /// Exchangeable members of level t, ascending.
  std::vector<int> exchange_level_members(long t) const {
    std::vector<int> m = level_members(t);
    if (mode_ == LayeringMode::Full && !m.empty()) m.pop_back();
    return m;
  }

  bool operator==(const Layering&) const = default;

  nlohmann::json to_json() const {
    nlohmann::json eta = nlohmann::json::object();
    for (const auto& [k, t] : eta_) eta[std::to_string(k)] = t;
    return {{"mode", mode_ == LayeringMode::Full ? "full" : "exchange"},
            {"eta", std::move(eta)}};
  }

  static Layering from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("eta")) {
      throw ParseError("layering document must have \"eta\"");
    }
    LayeringMode mode = LayeringMode::ExchangeOnly;
    if (j.contains("mode")) {
      std::string m = j.at("mode").get<std::string>();
      if (m == "full") {
        mode = LayeringMode::Full;
      } else if (m != "exchange") {
        throw ParseError("unknown layering mode: " + m);
      }
    }
    std::map<int, long> eta;
    for (const auto& [key, val] : j.at("eta").items()) {
      try {
        eta[std::stoi(key)] = val.get<long>();
      } catch (const std::exception&) {
        throw ParseError("bad eta entry: " + key);
      }
    }
    return Layering(std::move(eta), mode);
  }

 private:
  std::map<int, long> eta_;
  LayeringMode mode_ = LayeringMode::ExchangeOnly;
};

enum class ViolationKind {
  BadIncomingSource,
  NonSimpleIncoming,
  SameLevelOutgoing,
  MissingIncoming,  // strict reading: a finite k[±1] contributed no arrow
};

inline std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::BadIncomingSource: return "BadIncomingSource";
    case ViolationKind::NonSimpleIncoming: return "NonSimpleIncoming";
    case ViolationKind::SameLevelOutgoing: return "SameLevelOutgoing";
    case ViolationKind::MissingIncoming: return "MissingIncoming";
  }
  return "?";
}

struct LayeredViolation {
  int step = 0;  // filled by the harness; 0 for standalone checks
  int vertex = 0;
  ViolationKind kind;
  std::optional<ValuedArrow> arrow;

  nlohmann::json to_json() const {
    nlohmann::json j{{"step", step}, {"vertex", vertex}, {"kind", to_string(kind)}};
    if (arrow) {
      j["arrow"] = {{"src", arrow->src},
                    {"dst", arrow->dst},
                    {"v", {int_to_json(arrow->v_fwd), int_to_json(arrow->v_back)}}};
    }
    return j;
  }
};

/// Conditions on the mutation vertex k of an unframed quiver: incoming
/// arrows are exactly one simple arrow from each finite same-level
/// neighbour k[-1], k[1]; outgoing arrows leave the level.
inline std::optional<LayeredViolation> check_layered_step(
    const ValuedIceQuiver& Q, int k, const Layering& eta) {
  std::optional<int> lo = eta.pred(k), hi = eta.succ(k);
  bool saw_lo = false, saw_hi = false;
  for (const ValuedArrow& a : Q.arrows()) {
    if (a.dst == k) {
      if (!eta.contains(a.src)) continue;  // arrows from primed copies etc.
      bool from_lo = lo && a.src == *lo;
      bool from_hi = hi && a.src == *hi;
      if (!from_lo && !from_hi) {
        return LayeredViolation{0, k, ViolationKind::BadIncomingSource, a};
      }
      if (!a.simple()) {
        return LayeredViolation{0, k, ViolationKind::NonSimpleIncoming, a};
      }
      saw_lo = saw_lo || from_lo;
      saw_hi = saw_hi || from_hi;
    } else if (a.src == k) {
      if (!eta.contains(a.dst)) continue;
      if (eta.level(a.dst) == eta.level(k)) {
        return LayeredViolation{0, k, ViolationKind::SameLevelOutgoing, a};
      }
    }
  }
  if ((lo && !saw_lo) || (hi && !saw_hi)) {
    return LayeredViolation{0, k, ViolationKind::MissingIncoming, std::nullopt};
  }
  return std::nullopt;
}

struct FullnessViolation {
  long level = 0;
  std::string reason;
  int position = 0;  // 1-based index into the sequence when applicable
};

namespace detail {

// Checks one level's subsequence against the staircase shuffle rule: the
// n-th occurrence profile plus the cross-row and row-internal orderings.
inline std::optional<FullnessViolation> check_level_shuffle(
    const std::vector<int>& members, const std::vector<int>& sub,
    const std::vector<int>& positions, long t) {
  const int l = static_cast<int>(members.size());
  std::map<int, std::vector<int>> occ;  // vertex -> positions of occurrences
  for (std::size_t i = 0; i < sub.size(); ++i) occ[sub[i]].push_back(positions[i]);
  for (int i = 0; i < l; ++i) {
    int expected = l - i;
    int got = occ.count(members[i]) ? static_cast<int>(occ[members[i]].size()) : 0;
    if (got != expected) {
      return FullnessViolation{
          t,
          "vertex " + std::to_string(members[i]) + " occurs " +
              std::to_string(got) + " times, expected " + std::to_string(expected),
          0};
    }
  }
  for (int v : sub) {
    if (std::find(members.begin(), members.end(), v) == members.end()) {
      return FullnessViolation{t, "unexpected vertex " + std::to_string(v), 0};
    }
  }
  for (int n = 2; n <= l; ++n) {
    for (int i = 0; i + n - 1 < l; ++i) {
      // row n's j_{t,i+1} must come after row (n-1)'s j_{t,i+2}
      int a = occ[members[i]][n - 1];
      int b = occ[members[i + 1]][n - 2];
      if (a < b) {
        return FullnessViolation{
            t,
            "occurrence " + std::to_string(n) + " of " +
                std::to_string(members[i]) + " precedes occurrence " +
                std::to_string(n - 1) + " of " + std::to_string(members[i + 1]),
            a};
      }
    }
  }
  // row-internal order, asserted independently of the cross-row rule
  for (int n = 1; n <= l; ++n) {
    for (int i = 0; i + n < l; ++i) {
      int a = occ[members[i]][n - 1];
      int b = occ[members[i + 1]][n - 1];
      if (a > b) {
        return FullnessViolation{
            t,
            "row " + std::to_string(n) + " out of order at " +
                std::to_string(members[i]),
            b};
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Fullness of a mutation sequence: per level, the staircase occurrence
/// profile with the cross-row ordering rule.
inline std::optional<FullnessViolation> is_full(const std::vector<int>& seq,
                                                const Layering& eta) {
  std::vector<int> exset = eta.exchangeable_set();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (std::find(exset.begin(), exset.end(), seq[i]) == exset.end()) {
      return FullnessViolation{0,
                               "vertex " + std::to_string(seq[i]) +
                                   " is not exchangeable",
                               static_cast<int>(i) + 1};
    }
  }
  for (long t : eta.levels()) {
    std::vector<int> members = eta.exchange_level_members(t);
    std::vector<int> sub, positions;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (std::find(members.begin(), members.end(), seq[i]) != members.end()) {
        sub.push_back(seq[i]);
        positions.push_back(static_cast<int>(i) + 1);
      }
    }
    if (auto v = detail::check_level_shuffle(members, sub, positions, t)) return v;
  }
  return std::nullopt;
}

/// Σ_t ℓ_ex(t)·(ℓ_ex(t)+1)/2. The per-level counts force a sum over levels,
/// not a product; the hand-checked small cases pin this down.
inline long expected_length(const Layering& eta) {
  long total = 0;
  for (long t : eta.levels()) {
    long l = static_cast<long>(eta.exchange_level_members(t).size());
    total += l * (l + 1) / 2;
  }
  return total;
}

namespace detail {

// All full shuffles of a single level, as sequences over `members`, in
// lexicographic order. Row n (1-based) is members[0..l-n].
inline void level_shuffles(const std::vector<int>& members,
                           std::vector<int>& rowpos, std::vector<int>& cur,
                           std::set<std::vector<int>>& out) {
  const int l = static_cast<int>(members.size());
  if (static_cast<int>(cur.size()) == l * (l + 1) / 2) {
    out.insert(cur);
    return;
  }
  for (int n = 1; n <= l; ++n) {
    int i = rowpos[n - 1];            // next index within row n
    if (i >= l + 1 - n) continue;     // row exhausted
    // cross rule: element i of row n needs row n-1 past element i+1
    if (n >= 2 && rowpos[n - 2] < i + 2) continue;
    rowpos[n - 1] = i + 1;
    cur.push_back(members[i]);
    level_shuffles(members, rowpos, cur, out);
    cur.pop_back();
    rowpos[n - 1] = i;
  }
}

}  // namespace detail

/// Deterministic enumeration of full shuffles, lexicographic on labels.
/// Exhaustive when the total count does not exceed `limit`.
inline std::vector<std::vector<int>> enumerate_full_shuffles(
    const Layering& eta, std::size_t limit) {
  std::vector<long> levels = eta.levels();
  std::vector<std::vector<std::vector<int>>> per_level;  // sorted sets
  long total_len = 0;
  for (long t : levels) {
    std::vector<int> members = eta.exchange_level_members(t);
    std::set<std::vector<int>> shuffles;
    std::vector<int> rowpos(members.size(), 0), cur;
    detail::level_shuffles(members, rowpos, cur, shuffles);
    if (members.empty()) shuffles.insert({});
    per_level.push_back({shuffles.begin(), shuffles.end()});
    long l = static_cast<long>(members.size());
    total_len += l * (l + 1) / 2;
  }
  // Interleave across levels by DFS, trying the smallest next label first.
  // A per-level prefix is viable if some full shuffle of that level extends it.
  std::vector<std::vector<int>> result;
  std::vector<std::vector<int>> prefix(levels.size());
  std::vector<int> cur;
  auto viable = [&](std::size_t li) {
    const std::vector<int>& p = prefix[li];
    for (const auto& s : per_level[li]) {
      if (p.size() <= s.size() && std::equal(p.begin(), p.end(), s.begin())) {
        return true;
      }
    }
    return false;
  };
  std::function<void()> dfs = [&]() {
    if (result.size() >= limit) return;
    if (static_cast<long>(cur.size()) == total_len) {
      result.push_back(cur);
      return;
    }
    // candidate next vertices: one per level, sorted by label
    std::vector<std::pair<int, std::size_t>> cands;
    for (std::size_t li = 0; li < levels.size(); ++li) {
      std::set<int> seen;
      for (const auto& s : per_level[li]) {
        const std::vector<int>& p = prefix[li];
        if (p.size() < s.size() && std::equal(p.begin(), p.end(), s.begin())) {
          seen.insert(s[p.size()]);
        }
      }
      for (int v : seen) cands.push_back({v, li});
    }
    std::sort(cands.begin(), cands.end());
    for (auto [v, li] : cands) {
      prefix[li].push_back(v);
      if (viable(li)) {
        cur.push_back(v);
        dfs();
        cur.pop_back();
      }
      prefix[li].pop_back();
      if (result.size() >= limit) return;
    }
  };
  dfs();
  return result;
}

/// The chain quiver s_1 ← s_2 ← … ← s_n on an ordered label set.
inline ValuedIceQuiver chain_quiver(const std::vector<int>& labels) {
  std::vector<ValuedArrow> arrows;
  for (std::size_t i = 0; i + 1 < labels.size(); ++i) {
    arrows.push_back({labels[i + 1], labels[i], 1, 1});
  }
  return ValuedIceQuiver(labels, {}, std::move(arrows));
}

/// Full sub-quiver on η⁻¹(t); for framed quivers the primed copies of
/// level-t vertices are kept as well.
inline ValuedIceQuiver truncate(const ValuedIceQuiver& Q, const Layering& eta,
                                long t) {
  std::vector<int> keep_ex, keep_fr;
  std::set<int> keep;
  bool found = false;
  for (const auto& [k, lvl] : eta.eta()) {
    if (lvl == t) found = true;
  }
  if (!found) throw UnknownLevel("no vertex at level " + std::to_string(t));
  for (int v : Q.ex()) {
    if (eta.contains(v) && eta.level(v) == t) {
      keep_ex.push_back(v);
      keep.insert(v);
    }
  }
  for (int v : Q.fr()) {
    int base = unprimed(v);
    bool keep_this = is_primed(v) ? (eta.contains(base) && eta.level(base) == t)
                                  : (eta.contains(v) && eta.level(v) == t);
    if (keep_this) {
      keep_fr.push_back(v);
      keep.insert(v);
    }
  }
  std::vector<ValuedArrow> arrows;
  for (const ValuedArrow& a : Q.arrows()) {
    if (keep.count(a.src) && keep.count(a.dst)) arrows.push_back(a);
  }
  return ValuedIceQuiver(std::move(keep_ex), std::move(keep_fr), std::move(arrows));
}

}  // namespace greenseq
