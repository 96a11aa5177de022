#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "greenseq/bigint.hpp"
#include "greenseq/errors.hpp"
#include "json.hpp"

namespace greenseq {

using Rational = boost::multiprecision::cpp_rational;

/// Positive integer diagonal d with d_i * b_ij = -d_j * b_ji on the
/// exchangeable part, reduced so that the entries are relatively prime.
struct Symmetrizer {
  std::map<int, Int> d;

  bool operator==(const Symmetrizer&) const = default;
};

/// Integer matrix over (ex ⊔ fr) × ex with skew-symmetrizable principal
/// part. Vertex labels are external 1-based integers and are preserved
/// verbatim through every operation; frozen rows mutate by the same formula
/// as exchangeable ones.
class ExchangeMatrix {
 public:
  ExchangeMatrix() = default;

  /// rows: one entry vector per row label, aligned with the ex order.
  ExchangeMatrix(std::vector<int> ex, std::vector<int> fr,
                 std::map<int, std::vector<Int>> rows)
      : ex_(std::move(ex)), fr_(std::move(fr)) {
    std::vector<int> all = ex_;
    all.insert(all.end(), fr_.begin(), fr_.end());
    std::vector<int> sorted = all;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ParseError("duplicate vertex label");
    }
    entries_.reserve(all.size());
    for (int r : all) {
      auto it = rows.find(r);
      if (it == rows.end()) {
        throw ParseError("missing row for label " + std::to_string(r));
      }
      if (it->second.size() != ex_.size()) {
        throw ParseError("row " + std::to_string(r) + " has wrong width");
      }
      entries_.push_back(it->second);
    }
    if (rows.size() != all.size()) {
      throw ParseError("extra rows in matrix document");
    }
  }

  const std::vector<int>& ex() const { return ex_; }
  const std::vector<int>& fr() const { return fr_; }

  std::vector<int> row_labels() const {
    std::vector<int> all = ex_;
    all.insert(all.end(), fr_.begin(), fr_.end());
    return all;
  }

  bool is_exchangeable(int label) const {
    return std::find(ex_.begin(), ex_.end(), label) != ex_.end();
  }
  bool is_frozen(int label) const {
    return std::find(fr_.begin(), fr_.end(), label) != fr_.end();
  }

  const Int& entry(int row, int col) const {
    return entries_[row_index(row)][col_index(col)];
  }

  bool operator==(const ExchangeMatrix& o) const {
    return ex_ == o.ex_ && fr_ == o.fr_ && entries_ == o.entries_;
  }

  /// μ_k applied to every row i ∈ ex ⊔ fr and column j ∈ ex.
  ExchangeMatrix mutate(int k) const {
    if (is_frozen(k)) {
      throw FrozenMutation("mutation at frozen label " + std::to_string(k));
    }
    std::size_t kr = row_index(k);
    std::size_t kc = col_index(k);
    ExchangeMatrix out = *this;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      for (std::size_t j = 0; j < ex_.size(); ++j) {
        const Int& bij = entries_[i][j];
        if (i == kr || j == kc) {
          out.entries_[i][j] = -bij;
        } else {
          const Int& bik = entries_[i][kc];
          const Int& bkj = entries_[kr][j];
          out.entries_[i][j] = bij + (abs(bik) * bkj + bik * abs(bkj)) / 2;
        }
      }
    }
    return out;
  }

  ExchangeMatrix mutate_sequence(const std::vector<int>& seq) const {
    ExchangeMatrix cur = *this;
    for (int k : seq) cur = cur.mutate(k);
    return cur;
  }

  /// Principal part as a standalone matrix (frozen rows dropped).
  ExchangeMatrix principal() const {
    std::map<int, std::vector<Int>> rows;
    for (int i : ex_) rows[i] = entries_[row_index(i)];
    return ExchangeMatrix(ex_, {}, std::move(rows));
  }

  /// Minimal positive symmetrizer with gcd 1, computed per connected
  /// component of the principal part.
  Symmetrizer symmetrizer() const {
    const std::size_t n = ex_.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (entries_[i][i] != 0) {
        throw NotSkewSymmetrizable("nonzero diagonal at label " +
                                   std::to_string(ex_[i]));
      }
      for (std::size_t j = 0; j < n; ++j) {
        const Int& bij = entries_[i][j];
        const Int& bji = entries_[j][i];
        if ((bij == 0) != (bji == 0) || bij * bji > 0) {
          throw NotSkewSymmetrizable(
              "entries (" + std::to_string(ex_[i]) + "," +
              std::to_string(ex_[j]) + ") admit no positive symmetrizer");
        }
      }
    }
    // BFS ratio propagation within each component, then clear denominators.
    std::vector<Rational> ratio(n, Rational(0));
    std::vector<int> comp(n, -1);
    Symmetrizer result;
    int ncomp = 0;
    for (std::size_t root = 0; root < n; ++root) {
      if (comp[root] != -1) continue;
      std::vector<std::size_t> queue{root}, members;
      ratio[root] = 1;
      comp[root] = ncomp;
      while (!queue.empty()) {
        std::size_t i = queue.back();
        queue.pop_back();
        members.push_back(i);
        for (std::size_t j = 0; j < n; ++j) {
          if (entries_[i][j] == 0) continue;
          // d_i * b_ij = -d_j * b_ji  =>  d_j = d_i * b_ij / (-b_ji)
          Rational rj =
              ratio[i] * Rational(entries_[i][j]) / Rational(-entries_[j][i]);
          if (comp[j] == -1) {
            comp[j] = ncomp;
            ratio[j] = rj;
            queue.push_back(j);
          } else if (ratio[j] != rj) {
            throw NotSkewSymmetrizable("inconsistent ratio cycle through " +
                                       std::to_string(ex_[j]));
          }
        }
      }
      Int lcm_den = 1;
      for (std::size_t m : members) {
        lcm_den = lcm(lcm_den, Int(denominator(ratio[m])));
      }
      Int g = 0;
      std::vector<Int> scaled(members.size());
      for (std::size_t mi = 0; mi < members.size(); ++mi) {
        scaled[mi] = Int(numerator(ratio[members[mi]])) * lcm_den /
                     Int(denominator(ratio[members[mi]]));
        g = gcd(g, scaled[mi]);
      }
      for (std::size_t mi = 0; mi < members.size(); ++mi) {
        result.d[ex_[members[mi]]] = scaled[mi] / g;
      }
      ++ncomp;
    }
    return result;
  }

  nlohmann::json to_json() const {
    nlohmann::json rows = nlohmann::json::object();
    for (int r : row_labels()) {
      nlohmann::json row = nlohmann::json::array();
      for (const Int& v : entries_[row_index(r)]) row.push_back(int_to_json(v));
      rows[std::to_string(r)] = std::move(row);
    }
    return {{"ex", ex_}, {"fr", fr_}, {"rows", std::move(rows)}};
  }

  static ExchangeMatrix from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("ex") || !j.contains("rows")) {
      throw ParseError("matrix document must have \"ex\" and \"rows\"");
    }
    std::vector<int> ex, fr;
    try {
      ex = j.at("ex").get<std::vector<int>>();
      if (j.contains("fr")) fr = j.at("fr").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad label list: ") + e.what());
    }
    std::map<int, std::vector<Int>> rows;
    for (const auto& [key, val] : j.at("rows").items()) {
      int label;
      try {
        label = std::stoi(key);
      } catch (const std::exception&) {
        throw ParseError("bad row label: " + key);
      }
      std::vector<Int> row;
      if (!val.is_array()) throw ParseError("row " + key + " is not an array");
      for (const auto& cell : val) row.push_back(int_from_json(cell));
      rows[label] = std::move(row);
    }
    return ExchangeMatrix(std::move(ex), std::move(fr), std::move(rows));
  }

 private:
  std::size_t row_index(int label) const {
    for (std::size_t i = 0; i < ex_.size(); ++i) {
      if (ex_[i] == label) return i;
    }
    for (std::size_t i = 0; i < fr_.size(); ++i) {
      if (fr_[i] == label) return ex_.size() + i;
    }
    throw InvalidIndex("unknown row label " + std::to_string(label));
  }
  std::size_t col_index(int label) const {
    for (std::size_t j = 0; j < ex_.size(); ++j) {
      if (ex_[j] == label) return j;
    }
    throw InvalidIndex("unknown column label " + std::to_string(label));
  }

  std::vector<int> ex_;
  std::vector<int> fr_;
  std::vector<std::vector<Int>> entries_;  // rows in ex_ then fr_ order
};

/// Dense square principal-part constructor: labels 1..n in order.
inline ExchangeMatrix square_matrix(const std::vector<std::vector<long>>& b) {
  std::vector<int> ex(b.size());
  std::iota(ex.begin(), ex.end(), 1);
  std::map<int, std::vector<Int>> rows;
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::vector<Int> row(b[i].begin(), b[i].end());
    rows[ex[i]] = std::move(row);
  }
  return ExchangeMatrix(ex, {}, std::move(rows));
}

}  // namespace greenseq
