#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "greenseq/errors.hpp"
#include "greenseq/layering.hpp"

namespace greenseq {

/// Element of S_N in one-line notation. Composition is right-to-left:
/// (σ·π)(i) = σ(π(i)), so right-multiplying by s_p swaps positions p, p+1.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<int> oneline) : line_(std::move(oneline)) {
    std::vector<bool> seen(line_.size(), false);
    for (int v : line_) {
      if (v < 1 || v > static_cast<int>(line_.size()) || seen[v - 1]) {
        throw ParseError("not a permutation of [1,N]");
      }
      seen[v - 1] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> l(n);
    std::iota(l.begin(), l.end(), 1);
    return Permutation(std::move(l));
  }

  static Permutation longest(int n) {
    std::vector<int> l(n);
    for (int i = 0; i < n; ++i) l[i] = n - i;
    return Permutation(std::move(l));
  }

  int size() const { return static_cast<int>(line_.size()); }
  int operator()(int i) const { return line_.at(i - 1); }
  const std::vector<int>& oneline() const { return line_; }

  Permutation compose(const Permutation& rhs) const {
    std::vector<int> l(line_.size());
    for (std::size_t i = 0; i < line_.size(); ++i) l[i] = line_[rhs.line_[i] - 1];
    return Permutation(std::move(l));
  }

  Permutation inverse() const {
    std::vector<int> l(line_.size());
    for (std::size_t i = 0; i < line_.size(); ++i) l[line_[i] - 1] = i + 1;
    return Permutation(std::move(l));
  }

  /// Right multiplication by the adjacent transposition s_p (1-based position).
  Permutation swap_positions(int p) const {
    std::vector<int> l = line_;
    std::swap(l.at(p - 1), l.at(p));
    return Permutation(std::move(l));
  }

  auto operator<=>(const Permutation&) const = default;

  nlohmann::json to_json() const { return line_; }

 private:
  std::vector<int> line_;
};

/// Membership in Ξ_N: every prefix image σ([1,k]) is an integer interval.
inline bool xi_contains(const Permutation& sigma) {
  int lo = sigma(1), hi = sigma(1);
  for (int k = 2; k <= sigma.size(); ++k) {
    int v = sigma(k);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    if (hi - lo != k - 1) return false;
  }
  return true;
}

/// All of Ξ_N, lexicographic on one-line notation. Generated by the
/// max+1 / min−1 growth rule, one binary choice per position past the first.
inline std::vector<Permutation> enumerate_xi(int n) {
  std::vector<Permutation> out;
  const int choices = n >= 1 ? (1 << (n - 1)) : 0;
  for (int mask = 0; mask < choices; ++mask) {
    int downs = 0;
    for (int b = 0; b < n - 1; ++b) {
      if (mask & (1 << b)) ++downs;
    }
    std::vector<int> line{downs + 1};
    int lo = downs + 1, hi = downs + 1;
    for (int b = 0; b < n - 1; ++b) {
      line.push_back((mask & (1 << b)) ? --lo : ++hi);
    }
    out.push_back(Permutation(std::move(line)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// τ_{(j_k,…,j_1)} with k < j_k ≤ … ≤ j_1 ≤ N; empty js is the identity.
struct TauPresentation {
  int k = 0;
  std::vector<int> js;  // j_k, …, j_1 (weakly increasing when read reversed)

  bool operator==(const TauPresentation&) const = default;
};

/// Product of the cycles (k … j_k) ⋯ (1 2 … j_1), rightmost applied first.
inline Permutation tau_from_presentation(const TauPresentation& tp, int n) {
  Permutation result = Permutation::identity(n);
  // js is stored as (j_k, …, j_1); apply (i … j_i) for i = 1 … k in turn.
  for (int i = 1; i <= tp.k; ++i) {
    int ji = tp.js.at(tp.k - i);
    std::vector<int> line(n);
    std::iota(line.begin(), line.end(), 1);
    for (int v = i; v < ji; ++v) line[v - 1] = v + 1;
    line[ji - 1] = i;
    result = Permutation(std::move(line)).compose(result);
  }
  return result;
}

/// Unique presentation of an element of Ξ_N: the values 1..k appear in
/// decreasing order, the values above k in increasing order, and value k
/// sits strictly right of position 1.
inline TauPresentation tau_to_presentation(const Permutation& sigma) {
  const int n = sigma.size();
  std::vector<int> pos(n + 1);
  for (int i = 1; i <= n; ++i) pos[sigma(i)] = i;
  for (int k = 0; k < n; ++k) {
    bool ok = true;
    for (int v = 2; v <= k && ok; ++v) ok = pos[v] < pos[v - 1];
    for (int v = k + 2; v <= n && ok; ++v) ok = pos[v] > pos[v - 1];
    if (ok && k >= 1 && pos[k] == 1) ok = false;  // needs j_k > k
    if (!ok) continue;
    TauPresentation tp;
    tp.k = k;
    for (int v = k; v >= 1; --v) tp.js.push_back(pos[v] + v - 1);
    return tp;
  }
  throw NotInXi("permutation has no tau presentation");
}

/// The level-preserving relabeling attached to τ and η: within each level,
/// τ_• sends the i-th value (in τ-preimage order) to the i-th smallest member.
inline Permutation tau_bullet(const Permutation& tau, const Layering& eta) {
  const int n = tau.size();
  std::vector<int> line(n);
  for (long t : eta.levels()) {
    std::vector<int> members = eta.level_members(t);  // ascending
    std::vector<std::pair<int, int>> by_preimage;     // (k, tau(k))
    for (int k = 1; k <= n; ++k) {
      if (eta.level(tau(k)) == t) by_preimage.push_back({k, tau(k)});
    }
    for (std::size_t i = 0; i < by_preimage.size(); ++i) {
      line[by_preimage[i].second - 1] = members[i];
    }
  }
  return Permutation(std::move(line));
}

struct ReducedWord {
  std::vector<int> positions;

  bool operator==(const ReducedWord&) const = default;
};

/// Walk id → w_◦ in which each step swaps adjacent entries m < n with m
/// moving right, and k starts moving only once 1..k−1 have passed it.
/// Equivalently: a reduced word of w_◦ with all prefixes in Ξ_N.
struct ContiguousPath {
  struct Step {
    int p;  // position swapped with p+1
    int m;  // smaller value, moves right
    int n;  // larger value
    bool operator==(const Step&) const = default;
  };
  std::vector<Permutation> perms;  // ν_1 = id … ν_{M+1} = w_◦
  std::vector<Step> steps;

  bool operator==(const ContiguousPath&) const = default;

  nlohmann::json to_json() const {
    nlohmann::json words = nlohmann::json::array(), perms_j = nlohmann::json::array();
    for (const Step& s : steps) words.push_back(s.p);
    for (const Permutation& p : perms) perms_j.push_back(p.to_json());
    return {{"words", std::move(words)}, {"perms", std::move(perms_j)}};
  }
};

inline ReducedWord path_to_word(const ContiguousPath& path) {
  ReducedWord w;
  for (const auto& s : path.steps) w.positions.push_back(s.p);
  return w;
}

/// Inverse of path_to_word on its stated domain.
inline ContiguousPath word_to_path(const ReducedWord& word, int n) {
  const int M = n * (n - 1) / 2;
  if (static_cast<int>(word.positions.size()) != M) {
    throw NotContiguous("word has length " +
                            std::to_string(word.positions.size()) +
                            ", expected " + std::to_string(M),
                        0);
  }
  ContiguousPath path;
  path.perms.push_back(Permutation::identity(n));
  for (std::size_t i = 0; i < word.positions.size(); ++i) {
    int p = word.positions[i];
    if (p < 1 || p >= n) {
      throw NotContiguous("position out of range: " + std::to_string(p),
                          static_cast<int>(i) + 1);
    }
    const Permutation& nu = path.perms.back();
    if (nu(p) > nu(p + 1)) {
      throw NotContiguous("word is not reduced at step " + std::to_string(i + 1),
                          static_cast<int>(i) + 1);
    }
    Permutation next = nu.swap_positions(p);
    if (!xi_contains(next)) {
      throw NotContiguous("prefix of length " + std::to_string(i + 1) +
                              " leaves Xi_N",
                          static_cast<int>(i) + 1);
    }
    path.steps.push_back({p, nu(p), nu(p + 1)});
    path.perms.push_back(std::move(next));
  }
  if (path.perms.back() != Permutation::longest(n)) {
    throw NotContiguous("word does not end at the longest element", M);
  }
  return path;
}

/// All contiguous paths for N, lexicographic on the reduced-word positions.
/// Exhaustive when the total count is at most `limit`.
inline std::vector<ContiguousPath> enumerate_contiguous_paths(int n,
                                                              std::size_t limit) {
  const int M = n * (n - 1) / 2;
  std::vector<ContiguousPath> out;
  ContiguousPath cur;
  cur.perms.push_back(Permutation::identity(n));
  std::function<void()> dfs = [&]() {
    if (out.size() >= limit) return;
    if (static_cast<int>(cur.steps.size()) == M) {
      out.push_back(cur);
      return;
    }
    const Permutation nu = cur.perms.back();
    for (int p = 1; p < n; ++p) {
      if (nu(p) > nu(p + 1)) continue;
      Permutation next = nu.swap_positions(p);
      if (!xi_contains(next)) continue;
      cur.steps.push_back({p, nu(p), nu(p + 1)});
      cur.perms.push_back(std::move(next));
      dfs();
      cur.perms.pop_back();
      cur.steps.pop_back();
      if (out.size() >= limit) return;
    }
  };
  dfs();
  return out;
}

/// seq(ν): at each same-level swap emit the relabeled index, computed on the
/// later permutation of the step; the earlier-permutation convention must
/// agree and is asserted at every step.
inline std::vector<int> seq_from_path(const ContiguousPath& path,
                                      const Layering& eta) {
  if (eta.mode() != LayeringMode::Full) {
    throw WrongMode("seq_from_path requires a Full-mode layering");
  }
  std::vector<int> seq;
  std::vector<int> frozen = eta.frozen_set();
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const auto& step = path.steps[i];
    if (eta.level(step.m) != eta.level(step.n)) continue;
    const Permutation& later = path.perms[i + 1];
    const Permutation& earlier = path.perms[i];
    int k_later = tau_bullet(later, eta)(later(step.p));
    int k_earlier = tau_bullet(earlier, eta)(earlier(step.p));
    if (k_later != k_earlier) {
      throw SignIncoherent("index conventions disagree at path step " +
                           std::to_string(i + 1));
    }
    if (std::find(frozen.begin(), frozen.end(), k_later) != frozen.end()) {
      throw SignIncoherent("seq emitted a frozen index " +
                           std::to_string(k_later));
    }
    seq.push_back(k_later);
  }
  return seq;
}

}  // namespace greenseq
