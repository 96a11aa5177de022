#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greenseq/errors.hpp"
#include "greenseq/matrix.hpp"

namespace greenseq {

// Primed copies of exchangeable vertices carry the negated label. External
// inputs always use positive labels, so the encoding is collision-free.
inline int primed(int v) { return -v; }
inline bool is_primed(int v) { return v < 0; }
inline int unprimed(int v) { return v < 0 ? -v : v; }

enum class Color { Green, Red };

/// c-vector of one exchangeable index: the primed-row part of its column.
struct CVector {
  std::map<int, Int> coords;  // keyed by the base label of the primed row

  bool operator==(const CVector&) const = default;
};

/// Exchange matrix with principal coefficients plus the mutation history
/// that produced it. The primed rows start as the negated identity, which
/// is what puts the framing arrows i -> i' into the quiver encoding; the
/// c-vector of j is the negated primed-row part of column j, so every
/// vertex starts green and full shuffles on chains mutate sinks.
class FramedState {
 public:
  const ExchangeMatrix& bhat() const { return bhat_; }
  const std::vector<int>& history() const { return history_; }
  const ExchangeMatrix& origin() const { return origin_; }

  FramedState mutate(int k) const {
    FramedState next = *this;
    next.bhat_ = bhat_.mutate(k);
    next.history_.push_back(k);
    next.assert_sign_coherence();
    return next;
  }

  CVector c_vector(int j) const {
    if (!bhat_.is_exchangeable(j)) {
      throw InvalidIndex("not an exchangeable label: " + std::to_string(j));
    }
    CVector c;
    for (int i : bhat_.ex()) c.coords[i] = -bhat_.entry(primed(i), j);
    return c;
  }

  Color classify(int j) const {
    CVector c = c_vector(j);
    bool nonneg = true, nonpos = true, zero = true;
    for (const auto& [base, v] : c.coords) {
      if (v > 0) nonpos = false;
      if (v < 0) nonneg = false;
      if (v != 0) zero = false;
    }
    if (zero) {
      throw SignIncoherent("zero c-vector at label " + std::to_string(j) +
                           "; the C-matrix must stay invertible");
    }
    if (nonneg) return Color::Green;
    if (nonpos) return Color::Red;
    throw SignIncoherent("mixed-sign c-vector at label " + std::to_string(j));
  }

  bool operator==(const FramedState&) const = default;

  friend FramedState frame(const ExchangeMatrix& B);

 private:
  void assert_sign_coherence() const {
    for (int j : bhat_.ex()) classify(j);
  }

  ExchangeMatrix bhat_;
  std::vector<int> history_;
  ExchangeMatrix origin_;
};

/// B stacked over the negated identity block on the primed copies of ex.
inline FramedState frame(const ExchangeMatrix& B) {
  if (!B.fr().empty()) {
    throw HasFrozen("only matrices without frozen rows can be framed");
  }
  std::map<int, std::vector<Int>> rows;
  const std::vector<int>& ex = B.ex();
  std::vector<int> fr;
  for (std::size_t i = 0; i < ex.size(); ++i) {
    std::vector<Int> top, id(ex.size(), Int(0));
    for (int j : ex) top.push_back(B.entry(ex[i], j));
    id[i] = -1;
    rows[ex[i]] = std::move(top);
    rows[primed(ex[i])] = std::move(id);
    fr.push_back(primed(ex[i]));
  }
  FramedState s;
  s.bhat_ = ExchangeMatrix(ex, fr, std::move(rows));
  s.origin_ = B;
  return s;
}

/// Error from a failed mutation step, carrying the step index.
struct StepError : Error {
  StepError(const std::string& msg, int step_index)
      : Error(msg + " (at step " + std::to_string(step_index) + ")"),
        step(step_index) {}
  int step;
};

inline std::vector<FramedState> run_sequence(const ExchangeMatrix& B,
                                             const std::vector<int>& seq) {
  std::vector<FramedState> traj{frame(B)};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    try {
      traj.push_back(traj.back().mutate(seq[i]));
    } catch (const SignIncoherent&) {
      throw;
    } catch (const Error& e) {
      throw StepError(e.what(), static_cast<int>(i) + 1);
    }
  }
  return traj;
}

enum class Verdict { GreenSeq, MaximalGreen, Reddening, NotGreen, NotReddening };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::GreenSeq: return "GREEN_SEQ";
    case Verdict::MaximalGreen: return "MAXIMAL_GREEN";
    case Verdict::Reddening: return "REDDENING";
    case Verdict::NotGreen: return "NOT_GREEN";
    case Verdict::NotReddening: return "NOT_REDDENING";
  }
  return "?";
}

struct VerdictResult {
  Verdict verdict;
  int length = 0;
  // first violation witness: 1-based step for NotGreen, vertex for NotReddening
  std::optional<int> step;
  std::optional<int> vertex;
};

/// Classifies a sequence. A green run that ends all-red is MaximalGreen; an
/// all-red ending with a red step in the middle is merely Reddening; a green
/// run that leaves some vertex green is NotReddening (witness: that vertex);
/// otherwise NotGreen (witness: the first step mutating a non-green vertex).
inline VerdictResult verdict(const ExchangeMatrix& B,
                             const std::vector<int>& seq) {
  std::vector<FramedState> traj = run_sequence(B, seq);
  VerdictResult r;
  r.length = static_cast<int>(seq.size());
  std::optional<int> first_red_step;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (traj[i].classify(seq[i]) != Color::Green && !first_red_step) {
      first_red_step = static_cast<int>(i) + 1;
    }
  }
  const FramedState& last = traj.back();
  std::optional<int> green_vertex;
  for (int j : B.ex()) {
    if (last.classify(j) == Color::Green) {
      green_vertex = j;
      break;
    }
  }
  if (!green_vertex) {
    if (!first_red_step) {
      r.verdict = Verdict::MaximalGreen;
    } else {
      r.verdict = Verdict::Reddening;
      r.step = first_red_step;
    }
  } else if (!first_red_step) {
    r.verdict = Verdict::NotReddening;
    r.vertex = green_vertex;
  } else {
    r.verdict = Verdict::NotGreen;
    r.step = first_red_step;
    r.vertex = seq[*first_red_step - 1];
  }
  return r;
}

}  // namespace greenseq
