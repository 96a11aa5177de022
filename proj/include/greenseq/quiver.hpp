#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "greenseq/errors.hpp"
#include "greenseq/matrix.hpp"

namespace greenseq {

class Layering;  // layering.hpp

/// Arrow src -> dst carrying the positive label pair (v_{src,dst}, v_{dst,src}).
struct ValuedArrow {
  int src = 0;
  int dst = 0;
  Int v_fwd = 1;
  Int v_back = 1;

  bool simple() const { return v_fwd == 1 && v_back == 1; }
  bool operator==(const ValuedArrow&) const = default;
};

/// Directed-graph encoding of an exchange matrix: at most one arrow per
/// vertex pair, no arrows between frozen vertices, labels d-consistent.
class ValuedIceQuiver {
 public:
  ValuedIceQuiver() = default;

  ValuedIceQuiver(std::vector<int> ex, std::vector<int> fr,
                  std::vector<ValuedArrow> arrows, bool* dropped_frozen = nullptr)
      : ex_(std::move(ex)), fr_(std::move(fr)) {
    for (ValuedArrow& a : arrows) {
      if (a.src == a.dst) throw InvalidQuiver("loop at " + std::to_string(a.src));
      if (!has_vertex(a.src) || !has_vertex(a.dst)) {
        throw InvalidQuiver("arrow endpoint is not a vertex");
      }
      if (a.v_fwd <= 0 || a.v_back <= 0) {
        throw InvalidQuiver("arrow labels must be positive");
      }
      if (is_frozen(a.src) && is_frozen(a.dst)) {
        // Transient frozen-frozen arrows are dropped, not rejected.
        if (dropped_frozen) *dropped_frozen = true;
        continue;
      }
      if ((is_frozen(a.src) || is_frozen(a.dst)) && a.v_fwd != a.v_back) {
        throw InvalidQuiver("frozen-endpoint arrow with unequal labels");
      }
      arrows_.push_back(a);
    }
    std::sort(arrows_.begin(), arrows_.end(), [](const auto& a, const auto& b) {
      return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
    });
    for (std::size_t i = 1; i < arrows_.size(); ++i) {
      std::pair<int, int> p{arrows_[i - 1].src, arrows_[i - 1].dst};
      std::pair<int, int> q{arrows_[i].src, arrows_[i].dst};
      if (p == q || (p.first == q.second && p.second == q.first)) {
        throw InvalidQuiver("more than one arrow between a vertex pair");
      }
    }
  }

  const std::vector<int>& ex() const { return ex_; }
  const std::vector<int>& fr() const { return fr_; }
  const std::vector<ValuedArrow>& arrows() const { return arrows_; }

  bool has_vertex(int v) const {
    return std::find(ex_.begin(), ex_.end(), v) != ex_.end() ||
           std::find(fr_.begin(), fr_.end(), v) != fr_.end();
  }
  bool is_frozen(int v) const {
    return std::find(fr_.begin(), fr_.end(), v) != fr_.end();
  }

  const ValuedArrow* arrow_between(int a, int b) const {
    for (const ValuedArrow& ar : arrows_) {
      if ((ar.src == a && ar.dst == b) || (ar.src == b && ar.dst == a)) return &ar;
    }
    return nullptr;
  }

  bool operator==(const ValuedIceQuiver& o) const {
    return ex_ == o.ex_ && fr_ == o.fr_ && arrows_ == o.arrows_;
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const ValuedArrow& a : arrows_) {
      arr.push_back({{"src", a.src},
                     {"dst", a.dst},
                     {"v", {int_to_json(a.v_fwd), int_to_json(a.v_back)}}});
    }
    return {{"ex", ex_}, {"fr", fr_}, {"arrows", std::move(arr)}};
  }

  static ValuedIceQuiver from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("ex") || !j.contains("arrows")) {
      throw ParseError("quiver document must have \"ex\" and \"arrows\"");
    }
    std::vector<int> ex, fr;
    std::vector<ValuedArrow> arrows;
    try {
      ex = j.at("ex").get<std::vector<int>>();
      if (j.contains("fr")) fr = j.at("fr").get<std::vector<int>>();
      for (const auto& a : j.at("arrows")) {
        ValuedArrow arrow;
        arrow.src = a.at("src").get<int>();
        arrow.dst = a.at("dst").get<int>();
        arrow.v_fwd = int_from_json(a.at("v").at(0));
        arrow.v_back = int_from_json(a.at("v").at(1));
        arrows.push_back(arrow);
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad quiver document: ") + e.what());
    }
    return ValuedIceQuiver(std::move(ex), std::move(fr), std::move(arrows));
  }

 private:
  std::vector<int> ex_;
  std::vector<int> fr_;
  std::vector<ValuedArrow> arrows_;
};

/// Arrow i -> j with labels (b_ij, -b_ji) exactly when b_ij > 0.
/// For frozen i, b_ji is read as -b_ij.
inline ValuedIceQuiver to_quiver(const ExchangeMatrix& B) {
  std::vector<int> all = B.row_labels();
  std::vector<ValuedArrow> arrows;
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      int i = all[a], j = all[b];
      if (B.is_frozen(i) && B.is_frozen(j)) continue;
      Int bij, bji;
      if (B.is_exchangeable(j)) {
        bij = B.entry(i, j);
      } else {
        bij = -B.entry(j, i);  // b_ij := -b_ji for frozen column j
      }
      if (B.is_exchangeable(i)) {
        bji = B.entry(j, i);
      } else {
        bji = -B.entry(i, j);
      }
      if (bij > 0) {
        arrows.push_back({i, j, bij, -bji});
      } else if (bji > 0) {
        arrows.push_back({j, i, bji, -bij});
      }
    }
  }
  return ValuedIceQuiver(B.ex(), B.fr(), std::move(arrows));
}

/// Left inverse of to_quiver.
inline ExchangeMatrix to_matrix(const ValuedIceQuiver& Q) {
  std::map<int, std::vector<Int>> rows;
  std::vector<int> all = Q.ex();
  all.insert(all.end(), Q.fr().begin(), Q.fr().end());
  for (int r : all) rows[r] = std::vector<Int>(Q.ex().size(), Int(0));
  auto col_of = [&](int label) -> std::optional<std::size_t> {
    for (std::size_t j = 0; j < Q.ex().size(); ++j) {
      if (Q.ex()[j] == label) return j;
    }
    return std::nullopt;
  };
  for (const ValuedArrow& a : Q.arrows()) {
    if (auto jc = col_of(a.dst)) rows[a.src][*jc] = a.v_fwd;
    if (auto jc = col_of(a.src)) rows[a.dst][*jc] = -a.v_back;
  }
  ExchangeMatrix B(Q.ex(), Q.fr(), std::move(rows));
  try {
    B.symmetrizer();
  } catch (const NotSkewSymmetrizable& e) {
    throw InvalidQuiver(std::string("labels admit no symmetrizer: ") + e.what());
  }
  return B;
}

/// Native 3-step mutation: reverse arrows at k, complete 2-paths through k
/// (skipping frozen-frozen pairs), cancel opposite arrows. Works on signed
/// label pairs per vertex pair; never builds the full matrix.
inline ValuedIceQuiver mutate_quiver(const ValuedIceQuiver& Q, int k) {
  if (!Q.has_vertex(k)) throw InvalidIndex("unknown vertex " + std::to_string(k));
  if (Q.is_frozen(k)) {
    throw FrozenMutation("mutation at frozen vertex " + std::to_string(k));
  }
  // signed[(i,j)] = (x_ij, x_ji) meaning an arrow i->j with labels
  // (x_ij, x_ji) when both positive; negatives encode the reverse arrow.
  std::map<std::pair<int, int>, std::pair<Int, Int>> signed_pairs;
  auto add = [&](int i, int j, Int fwd, Int back) {
    if (i > j) {
      std::swap(i, j);
      Int nf = -back, nb = -fwd;
      fwd = std::move(nf);
      back = std::move(nb);
    }
    auto& slot = signed_pairs[{i, j}];
    slot.first += fwd;
    slot.second += back;
  };
  struct Incident {
    int other;
    Int in_label;   // v_{other,k} if arrow other->k, else 0
    Int out_label;  // v_{k,other} if arrow k->other, else 0
    Int in_back, out_back;
  };
  std::vector<Incident> at_k;
  for (const ValuedArrow& a : Q.arrows()) {
    if (a.src == k) {
      // step 1: reverse
      add(a.dst, k, a.v_back, a.v_fwd);
      at_k.push_back({a.dst, Int(0), a.v_fwd, Int(0), a.v_back});
    } else if (a.dst == k) {
      add(k, a.src, a.v_back, a.v_fwd);
      at_k.push_back({a.src, a.v_fwd, Int(0), a.v_back, Int(0)});
    } else {
      add(a.src, a.dst, a.v_fwd, a.v_back);
    }
  }
  // step 2: for each 2-path i -> k -> j add the composed arrow i -> j
  for (const Incident& in : at_k) {
    if (in.in_label == 0) continue;
    for (const Incident& out : at_k) {
      if (out.out_label == 0) continue;
      if (Q.is_frozen(in.other) && Q.is_frozen(out.other)) continue;
      Int fwd = in.in_label * out.out_label;
      Int back = out.out_back * in.in_back;
      // A frozen endpoint has a single underlying entry, so its label pair
      // stays tied: the frozen-source row mutates via the forward entries,
      // the frozen-destination row via the back ones.
      if (Q.is_frozen(in.other)) back = fwd;
      if (Q.is_frozen(out.other)) fwd = back;
      add(in.other, out.other, std::move(fwd), std::move(back));
    }
  }
  // step 3: read off the net arrows; opposite pairs have cancelled in the sums
  std::vector<ValuedArrow> arrows;
  for (const auto& [pair, val] : signed_pairs) {
    const auto& [fwd, back] = val;
    if ((fwd > 0) != (back > 0) || (fwd == 0) != (back == 0)) {
      throw SignIncoherent("inconsistent arrow labels after mutation between " +
                           std::to_string(pair.first) + " and " +
                           std::to_string(pair.second));
    }
    if (fwd > 0) {
      arrows.push_back({pair.first, pair.second, fwd, back});
    } else if (fwd < 0) {
      arrows.push_back({pair.second, pair.first, -back, -fwd});
    }
  }
  return ValuedIceQuiver(Q.ex(), Q.fr(), std::move(arrows));
}

}  // namespace greenseq
